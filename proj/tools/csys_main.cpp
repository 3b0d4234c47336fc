// csys: parse, print and check DSL documents.
//   csys check <file> [--suite NAME ...] [--n INT] [--depth INT]
//                     [--truncation INT] [--format json|text] [--strict]
//   csys print <file>
//   csys list
// Exit codes: 0 all selected checks pass, 1 a check failed (or was skipped
// under --strict), 2 usage or parse error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "csys/spec_doc.hpp"
#include "csys/suite.hpp"
#include "csys/workspace.hpp"

namespace {

constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Check finite categorical structures described in a spec document"};
  app.require_subcommand(1);

  std::string file;
  std::vector<std::string> suites;
  std::optional<int> n, depth, truncation;
  std::string format = "text";
  bool strict = false;

  auto* check = app.add_subcommand("check", "Run checks on a document");
  check->add_option("file", file, "Spec document")->required();
  check->add_option("--suite", suites, "Check or group name (repeatable); default from [suite], else all");
  check->add_option("--n", n, "Depth n of the iterated families");
  check->add_option("--depth", depth, "Depth cap for D_p^n element checks");
  check->add_option("--truncation", truncation, "Truncation N of the C-system");
  check->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  check->add_flag("--strict", strict, "Skipped checks also make the exit status nonzero");

  auto* print_cmd = app.add_subcommand("print", "Print the normalized document");
  print_cmd->add_option("file", file, "Spec document")->required();

  app.add_subcommand("list", "List checks and groups");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (app.got_subcommand("list")) {
    for (const auto& c : csys::check_catalog()) std::cout << c.group << "\t" << c.name << "\t" << c.summary << "\n";
    return 0;
  }

  csys::SpecDocument doc;
  try {
    doc = csys::parse(read_file(file));
  } catch (const csys::DslError& e) {
    std::cerr << file << ":" << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << file << ": " << e.what() << "\n";
    return kUsage;
  }

  if (app.got_subcommand("print")) {
    std::cout << csys::print(doc);
    return 0;
  }

  try {
    csys::Workspace ws(doc);
    csys::SuiteParams p = ws.params();
    if (n) p.n = *n;
    if (depth) p.depth = *depth;
    if (truncation) p.N = *truncation;
    std::vector<std::string> sel = suites.empty() ? ws.selection() : suites;
    csys::resolve_selection(sel);
    csys::SuiteReport rep = csys::run_suite(ws, sel, p);
    std::cout << (format == "json" ? csys::to_json_lines(rep) : csys::to_text(rep));
    return rep.exit_code(strict);
  } catch (const csys::UsageError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << file << ": " << e.what() << "\n";
    return kUsage;
  }
}
