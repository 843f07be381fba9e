#include "loopforge/table_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace loopforge {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + what),
      line_(line), column_(column)
{}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> split_line(std::string_view line)
{
  std::vector<Token> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r'))
      ++pos;
    if (pos >= line.size())
      break;
    std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r')
      ++pos;
    out.push_back({line.substr(start, pos - start), start + 1});
  }
  return out;
}

std::size_t parse_number(const Token& tok, std::size_t line_no)
{
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
  if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size())
    throw ParseError(line_no, tok.column, "expected a nonnegative integer, got '" +
                                              std::string(tok.text) + "'");
  return v;
}

}  // namespace

CayleyTable parse_table_text(std::string_view text)
{
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  while (!lines.empty() && split_line(lines.back()).empty())
    lines.pop_back();
  if (lines.empty())
    throw ParseError(1, 1, "empty input");

  auto header = split_line(lines[0]);
  if (header.size() != 1)
    throw ParseError(1, header.empty() ? 1 : header[std::min<std::size_t>(1, header.size() - 1)].column,
                     "first line must hold the order n alone");
  std::size_t n = parse_number(header[0], 1);
  if (n == 0)
    throw ParseError(1, header[0].column, "order must be positive");
  if (lines.size() != n + 1)
    throw ParseError(std::min(lines.size(), n + 1) + (lines.size() < n + 1 ? 1 : 0), 1,
                     "expected " + std::to_string(n) + " table rows, found " +
                         std::to_string(lines.size() - 1));
  std::vector<Point> cells;
  cells.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t line_no = r + 2;
    auto toks = split_line(lines[r + 1]);
    if (toks.size() != n)
      throw ParseError(line_no, toks.size() > n ? toks[n].column : lines[r + 1].size() + 1,
                       "expected " + std::to_string(n) + " values, found " +
                           std::to_string(toks.size()));
    for (const auto& tok : toks) {
      std::size_t v = parse_number(tok, line_no);
      if (v >= n)
        throw ParseError(line_no, tok.column,
                         "value " + std::to_string(v) + " outside {0.." + std::to_string(n - 1) + "}");
      cells.push_back(static_cast<Point>(v));
    }
  }
  return CayleyTable(n, std::move(cells));
}

std::string format_table_text(const CayleyTable& t)
{
  std::string out = std::to_string(t.order()) + "\n";
  for (Point a = 0; a < t.order(); ++a) {
    for (Point b = 0; b < t.order(); ++b) {
      if (b)
        out += ' ';
      out += std::to_string(t(a, b));
    }
    out += '\n';
  }
  return out;
}

std::string read_file(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  out << contents;
}

CayleyTable read_table_file(const std::filesystem::path& path)
{
  return parse_table_text(read_file(path));
}

void write_table_file(const std::filesystem::path& path, const CayleyTable& t)
{
  write_file(path, format_table_text(t));
}

nlohmann::json table_to_json(const CayleyTable& t)
{
  nlohmann::json rows = nlohmann::json::array();
  for (Point a = 0; a < t.order(); ++a) {
    auto r = t.row(a);
    rows.push_back(std::vector<Point>(r.begin(), r.end()));
  }
  return {{"schema", kSchemaVersion}, {"order", t.order()}, {"cells", rows}};
}

CayleyTable table_from_json(const nlohmann::json& j)
{
  const std::size_t n = j.at("order").get<std::size_t>();
  const auto& rows = j.at("cells");
  if (!rows.is_array() || rows.size() != n)
    throw std::invalid_argument("JSON table: 'cells' must hold n rows");
  std::vector<Point> cells;
  cells.reserve(n * n);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != n)
      throw std::invalid_argument("JSON table: every row must hold n values");
    for (const auto& v : row)
      cells.push_back(v.get<Point>());
  }
  return CayleyTable(n, std::move(cells));
}

nlohmann::json report_to_json(const LoopReport& r)
{
  auto parities = [](const std::vector<Parity>& ps) {
    nlohmann::json a = nlohmann::json::array();
    for (Parity p : ps)
      a.push_back(std::string(to_string(p)));
    return a;
  };
  nlohmann::json j;
  j["schema"] = kSchemaVersion;
  j["order"] = r.order;
  j["is_latin"] = r.is_latin;
  j["is_loop"] = r.is_loop;
  j["identity"] = r.identity ? nlohmann::json(*r.identity) : nlohmann::json(nullptr);
  j["commutative"] = r.commutative;
  j["associative"] = r.associative;
  j["unbreakable"] = r.unbreakable;
  if (r.group) {
    j["group_class"] = std::string(to_string(r.group->kind));
    j["group_order"] = r.group->order.str();
  } else {
    j["group_class"] = nullptr;
    j["group_order"] = nullptr;
  }
  j["left_parities"] = parities(r.left_parities);
  if (!r.right_parities.empty())
    j["right_parities"] = parities(r.right_parities);
  if (r.witness)
    j["latin_witness"] = {{"line", r.witness->in_row ? "row" : "column"},
                          {"index", r.witness->index},
                          {"value", r.witness->value}};
  return j;
}

}  // namespace loopforge
