// Command-line front end: construct, verify, search, convert.
//
// Exit codes: 0 ok, 1 verification negative, 2 user error, 3 internal error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "loopforge/construct_even.hpp"
#include "loopforge/construct_odd.hpp"
#include "loopforge/loop_analysis.hpp"
#include "loopforge/search.hpp"
#include "loopforge/table_io.hpp"

namespace fs = std::filesystem;
using namespace loopforge;
using nlohmann::json;

namespace {

enum Exit : int { kOk = 0, kNegative = 1, kUserError = 2, kInternal = 3 };

// Raised for bad input; main turns it into exit code 2.
struct UserError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void print_json(const json& j)
{
  std::cout << j.dump(2) << '\n';
}

bool looks_like_json(std::string_view text)
{
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string_view::npos && text[pos] == '{';
}

CayleyTable load_table(const fs::path& path)
{
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::runtime_error& e) {
    throw UserError(e.what());
  }
  try {
    if (looks_like_json(text))
      return table_from_json(json::parse(text));
    return parse_table_text(text);
  } catch (const ParseError& e) {
    throw UserError(path.string() + ": " + e.what());
  } catch (const json::exception& e) {
    throw UserError(path.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UserError(path.string() + ": " + e.what());
  } catch (const std::out_of_range& e) {
    throw UserError(path.string() + ": " + e.what());
  }
}

void save(const fs::path& path, std::string_view contents)
{
  try {
    write_file(path, contents);
  } catch (const std::runtime_error& e) {
    throw UserError(e.what());
  }
}

// construct ------------------------------------------------------------------

struct ConstructArgs {
  std::size_t order = 0;
  std::string group = "auto";
  fs::path out;
  std::optional<fs::path> report;
};

int run_construct(const ConstructArgs& a)
{
  const std::size_t n = a.order;
  const bool alternating = a.group == "alt";
  if (n < 5)
    throw UserError("no nonassociative unbreakable loop has order " + std::to_string(n) +
                    "; orders start at 5");
  if (n % 2 == 0 && alternating)
    throw UserError("even orders are only constructed with M(G) = S_n (use --group sym)");

  CayleyTable t;
  std::optional<EvenCertificate> cert;
  try {
    if (n % 2 == 0) {
      t = construct_even_loop(n);
      if (n >= 10)
        cert = certify_even_generators(t);
    } else {
      t = construct_odd_loop(n, alternating ? TargetGroup::Alternating : TargetGroup::Symmetric,
                             cache_from_environment());
    }
  } catch (const InfeasibleTarget& e) {
    throw UserError(e.what());
  }

  const LoopReport r = analyze(t);
  const GroupKind want = alternating ? GroupKind::Alternating : GroupKind::Symmetric;
  bool ok = r.is_loop && r.unbreakable && !r.associative && r.group && r.group->kind == want;
  if (n % 2 == 1 && n >= 7)
    ok = ok && r.commutative;
  if (cert)
    ok = ok && cert->all_hold();

  json report = report_to_json(r);
  report["construction"] = {{"target", alternating ? "Alternating" : "Symmetric"},
                            {"verified", ok}};
  if (cert)
    report["construction"]["certificate"] = certificate_to_json(*cert);

  save(a.out, format_table_text(t));
  save(a.report ? *a.report : fs::path(a.out.string() + ".json"), report.dump(2) + "\n");
  print_json(report);
  if (!ok)
    std::cerr << "error: the constructed table failed verification\n";
  return ok ? kOk : kNegative;
}

// verify ---------------------------------------------------------------------

int run_verify(const fs::path& in, bool with_certificate)
{
  const CayleyTable t = load_table(in);
  const LoopReport r = analyze(t);
  json report = report_to_json(r);
  if (with_certificate) {
    if (r.is_loop && t.order() % 2 == 0 && t.order() >= 10)
      report["certificate"] = certificate_to_json(certify_even_generators(t));
    else
      report["certificate"] = nullptr;
  }
  print_json(report);
  return r.is_loop ? kOk : kNegative;
}

// search ---------------------------------------------------------------------

struct SearchArgs {
  std::size_t order = 0;
  bool count_only = false;
  std::optional<fs::path> emit_dir;
  unsigned jobs = 1;
  std::optional<fs::path> cursor;
  bool allow_long = false;
};

std::string class_file_name(std::size_t n, std::uint64_t index)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "loop-%zu-%06llu.txt", n, static_cast<unsigned long long>(index));
  return buf;
}

int run_search(const SearchArgs& a)
{
  EnumerationOptions opts;
  opts.allow_long = a.allow_long;
  opts.jobs = a.jobs;
  opts.cursor = a.cursor;
  if (a.order == 0 || a.order > 8 || (a.order == 8 && !a.allow_long))
    throw UserError("search covers orders 1..7 (order 8 needs --long)");
  if (a.cursor && (a.emit_dir || a.count_only))
    throw UserError("--cursor applies to the full census only");

  if (!a.emit_dir && !a.count_only) {
    print_json(census_to_json(census(a.order, opts)));
    return kOk;
  }

  if (a.emit_dir) {
    std::error_code ec;
    fs::create_directories(*a.emit_dir, ec);
    if (ec)
      throw UserError("cannot create " + a.emit_dir->string() + ": " + ec.message());
  }
  Census total;
  total.order = a.order;
  enumerate_loops(
      a.order,
      [&](const CayleyTable& t) {
        if (a.emit_dir)
          save(*a.emit_dir / class_file_name(a.order, total.classes), format_table_text(t));
        if (a.count_only)
          ++total.classes;
        else
          total.add(analyze(t));
        return true;
      },
      opts);
  if (a.count_only)
    print_json({{"schema", kSchemaVersion}, {"order", a.order}, {"classes", total.classes}});
  else
    print_json(census_to_json(total));
  return kOk;
}

// convert --------------------------------------------------------------------

int run_convert(const fs::path& in, const fs::path& out, std::string to)
{
  const CayleyTable t = load_table(in);
  if (to == "auto")
    to = out.extension() == ".json" ? "json" : "text";
  save(out, to == "json" ? table_to_json(t).dump(2) + "\n" : format_table_text(t));
  return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Construct and verify unbreakable loops"};
  app.set_version_flag("--version", "loopforge 0.1.0");
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build an unbreakable loop of a given order");
  construct->add_option("--order,-n", ca.order, "Order n >= 5")->required();
  construct->add_option("--group,-g", ca.group, "Target multiplication group")
      ->check(CLI::IsMember({"sym", "alt", "auto"}));
  construct->add_option("--out,-o", ca.out, "Cayley table output (text format)")->required();
  construct->add_option("--report", ca.report, "JSON report output (default: <out>.json)");

  fs::path verify_in;
  bool with_certificate = false;
  auto* verify = app.add_subcommand("verify", "Analyse a Cayley table; prints a JSON report");
  verify->add_option("input", verify_in, "Table file (text or JSON)")->required();
  verify->add_flag("--certificate", with_certificate,
                   "Also check the generator certificate (even orders >= 10)");

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Enumerate loops of small order; prints a census");
  search->add_option("--order,-n", sa.order, "Order, at most 7")->required();
  search->add_flag("--count-only", sa.count_only, "Only count isomorphism classes");
  search->add_option("--emit-dir", sa.emit_dir, "Write one table per class into this directory");
  search->add_option("--jobs,-j", sa.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  search->add_option("--cursor", sa.cursor, "Checkpoint file for resumable census runs");
  search->add_flag("--long", sa.allow_long, "Allow order 8 (very long)");

  fs::path convert_in, convert_out;
  std::string convert_to = "auto";
  auto* convert = app.add_subcommand("convert", "Convert between text and JSON table formats");
  convert->add_option("input", convert_in, "Input table")->required();
  convert->add_option("output", convert_out, "Output file")->required();
  convert->add_option("--to", convert_to, "Output format (default: from the output extension)")
      ->check(CLI::IsMember({"text", "json", "auto"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUserError;
  }

  try {
    if (*construct)
      return run_construct(ca);
    if (*verify)
      return run_verify(verify_in, with_certificate);
    if (*search)
      return run_search(sa);
    if (*convert)
      return run_convert(convert_in, convert_out, convert_to);
  } catch (const UserError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUserError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
