#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "loopforge/cayley_table.hpp"
#include "loopforge/loop_analysis.hpp"

namespace loopforge {

inline constexpr int kSchemaVersion = 1;

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

// Text format: line 1 holds n, then n lines of n space-separated values.
CayleyTable parse_table_text(std::string_view text);
std::string format_table_text(const CayleyTable& t);

CayleyTable read_table_file(const std::filesystem::path& path);
void write_table_file(const std::filesystem::path& path, const CayleyTable& t);

nlohmann::json table_to_json(const CayleyTable& t);
CayleyTable table_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const LoopReport& r);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace loopforge
