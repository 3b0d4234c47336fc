// Acceptance run: one PASS/FAIL line per criterion. Exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>

#include "csys/cc.hpp"
#include "csys/finset.hpp"
#include "csys/spec_doc.hpp"
#include "csys/suite.hpp"
#include "csys/universe.hpp"
#include "csys/workspace.hpp"

using namespace csys;
namespace fs = std::filesystem;

namespace {

constexpr double kLimitsBudgetSeconds = 120.0;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fixture(const std::string& name) { return fs::path(CSYS_FIXTURE_DIR) / name; }

std::string strip_times(const std::string& s) {
  return std::regex_replace(s, std::regex(",\"time_ms\":[^,}]+"), "");
}

struct Outcome {
  bool ok = true;
  std::vector<std::string> lines;
  void fail(const std::string& why) {
    ok = false;
    lines.push_back(why);
  }
  void info(const std::string& s) { lines.push_back(s); }
};

// Every named check must run and pass; skips count as failures here.
void require_pass(Outcome& o, const SuiteReport& r, const std::vector<std::string>& names) {
  for (const std::string& n : names) {
    auto it = std::find_if(r.results.begin(), r.results.end(), [&](const CheckResult& c) { return c.name == n; });
    if (it == r.results.end()) {
      o.fail(n + " did not run");
      continue;
    }
    std::ostringstream s;
    s << n << ": " << status_name(it->status) << ", " << it->instances << " instances";
    if (it->params.n != 0 || it->params.N != 0) s << " (n=" << it->params.n << ", N=" << it->params.N << ")";
    if (it->status == CheckStatus::kPass)
      o.info(s.str());
    else
      o.fail(s.str() + (it->witness.empty() ? " " + it->reason : "; " + it->witness));
  }
}

SuiteReport run(const std::string& file, const std::vector<std::string>& sel, SuiteParams p) {
  Workspace ws(parse(slurp(fixture(file))));
  return run_suite(ws, sel, p);
}

Outcome limit_laws() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> names = resolve_selection({"limits"});
  for (const char* file : {"fs2_limits.spec", "finset_u3.spec"}) {
    SuiteReport r = run(file, names, {});
    o.info(std::string("on ") + file + ":");
    require_pass(o, r, names);
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream t;
  t << "total " << s << " s (budget " << kLimitsBudgetSeconds << " s)";
  if (s < kLimitsBudgetSeconds)
    o.info(t.str());
  else
    o.fail(t.str());
  return o;
}

Outcome pullback_choices() {
  Outcome o;
  require_pass(o, run("pullback_choices.spec", {"pullback-choices"}, {}), {"pullback-choices"});
  return o;
}

Outcome cc_construction() {
  Outcome o;
  SuiteParams p{2, 3, 2};
  require_pass(o, run("finset_u3.spec", {"csystem-axioms"}, p), {"csystem-axioms"});
  // |Ob_1(pt)| = |hom(1, U)| = 3^1 (U has one element per code)
  FinSetModel M = make_finset(2);
  CodingUniverse U(*M.S, {0, 1, 2});
  CCSystem cc(U, 3);
  size_t ob1 = cc.presheaves().ob(1)->at(cc.pt()).size();
  size_t homs = M.S->hom(M.S->standard(1), U.U()).size();
  std::ostringstream s;
  s << "|Ob_1(pt)| = " << ob1 << ", |hom(1,U)| = " << homs << ", expected 3";
  if (ob1 == 3 && homs == 3)
    o.info(s.str());
  else
    o.fail(s.str());
  return o;
}

Outcome csystem_families() {
  Outcome o;
  std::vector<std::string> names = {"ob-presheaves", "sig-functor", "sob-iso", "sob-tilde-iso", "sob-iter"};
  require_pass(o, run("finset_u3.spec", names, {2, 3, 2}), names);
  return o;
}

Outcome universe_actions() {
  Outcome o;
  std::vector<std::string> names = {"circ-laws", "circ-oracle", "dp-presheaf", "universe-squares", "q-identities",
                                    "section-count"};
  require_pass(o, run("finset_u3.spec", names, {2, 3, 2}), names);
  return o;
}

Outcome almost_representations() {
  Outcome o;
  std::vector<std::string> names = resolve_selection({"cc"});
  require_pass(o, run("finset_u3.spec", names, {3, 3, 2}), names);
  return o;
}

Outcome representation() {
  Outcome o;
  std::vector<std::string> names = resolve_selection({"representation"});
  require_pass(o, run("finset_u3.spec", names, {2, 3, 2}), names);
  // |D_p(X,Y)| = |hom(X, I_p(Y))| = (sum over codes of |Y|^size)^|X|
  Workspace ws(parse(slurp(fixture("finset_u3.spec"))));
  const FinSet& S = *ws.finset();
  size_t pairs = 0;
  for (ObjId X : S.objects())
    for (ObjId Y : S.objects()) {
      size_t per_point = 0;
      for (int s : {0, 1, 2}) per_point += static_cast<size_t>(std::llround(std::pow(S.size(Y), s)));
      size_t want = static_cast<size_t>(std::llround(std::pow(per_point, S.size(X))));
      size_t d = d_elements(*ws.universe(), 1, X, Y).size();
      size_t h = S.hom(X, ws.ip()->on_object(Y)).size();
      ++pairs;
      if (d != want || h != want) {
        std::ostringstream s;
        s << "|X|=" << S.size(X) << " |Y|=" << S.size(Y) << ": |D_p|=" << d << " |hom(X,I_p Y)|=" << h
          << " expected " << want;
        o.fail(s.str());
      }
    }
  o.info("cardinalities agree on " + std::to_string(pairs) + " pairs (X,Y)");
  return o;
}

Outcome functoriality() {
  Outcome o;
  std::vector<std::string> names = resolve_selection({"functoriality"});
  require_pass(o, run("inc.spec", names, {2, 2, 2}), names);
  return o;
}

Outcome faults() {
  Outcome o;
  for (const char* file : {"fault_unit_law.spec", "fault_q_square.spec", "fault_phi_tilde_pullback.spec",
                           "fault_sig_naturality.spec", "fault_u1_naturality.spec"}) {
    SpecDocument doc = parse(slurp(fixture(file)));
    Workspace ws(doc);
    std::string target = fault_target(*ws.fault());
    SuiteReport r = run_suite(ws, {target}, ws.params());
    const CheckResult& c = r.results.at(0);
    bool failed = c.status == CheckStatus::kFail && !c.witness.empty() && r.exit_code(false) == 1;
    // the same document without the fault passes
    std::erase_if(doc.blocks, [](const Block& b) { return b.name == "mutate"; });
    Workspace clean(doc);
    SuiteReport rc = run_suite(clean, {target}, clean.params());
    bool clean_ok = rc.results.at(0).status == CheckStatus::kPass;
    std::string line = std::string(file) + ": " + target + " " + status_name(c.status) + ", exit " +
                       std::to_string(r.exit_code(false)) + ", witness " + c.witness + "; without fault " +
                       status_name(rc.results.at(0).status);
    if (failed && clean_ok)
      o.info(line);
    else
      o.fail(line);
  }
  return o;
}

Outcome dsl() {
  Outcome o;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(CSYS_FIXTURE_DIR))
    if (e.path().extension() == ".spec") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    std::string text = slurp(p);
    std::string once = print(parse(text));
    if (once != normalize(text)) o.fail(p.filename().string() + ": print(parse(t)) != normalize(t)");
    if (print(parse(once)) != once) o.fail(p.filename().string() + ": not a fixpoint after one cycle");
  }
  o.info("round trip on " + std::to_string(files.size()) + " fixtures");
  for (const char* file : {"fs2_limits.spec", "inc.spec", "one_type.spec", "point_universe.spec",
                           "pullback_choices.spec", "fault_u1_naturality.spec"}) {
    std::string text = slurp(fixture(file));
    Workspace a(parse(text)), b(parse(text));
    std::string ja = strip_times(to_json_lines(run_suite(a, a.selection(), a.params())));
    std::string jb = strip_times(to_json_lines(run_suite(b, b.selection(), b.params())));
    if (ja != jb) o.fail(std::string(file) + ": reports differ between runs");
  }
  o.info("reports byte-identical across two runs on 6 documents");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  bool verbose = argc > 1 && std::string(argv[1]) == "-v";
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all = {
      {"limit structure laws on FS fixtures", limit_laws},
      {"pullback choices on F", pullback_choices},
      {"CC(FS2,U3) at N=3 and the length-1 count", cc_construction},
      {"Sig, SOb and SOb-tilde families at n<=2, N=3", csystem_families},
      {"two-sided actions on D_p^n at depth<=2 with oracle", universe_actions},
      {"u_1, u_n and SD_p at n<=3, N=3", almost_representations},
      {"eta, I_p and mu at n<=2", representation},
      {"universe category functor on INC at n<=2, N=2", functoriality},
      {"five seeded faults fail their checks", faults},
      {"DSL round trip and report determinism", dsl},
  };
  int failed = 0;
  for (size_t i = 0; i < all.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = all[i].run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2zu  %s  (%.1f s)\n", o.ok ? "PASS" : "FAIL", i + 1, all[i].name, s);
    for (const auto& l : o.lines)
      if (verbose || !o.ok) std::printf("        %s\n", l.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failed;
  }
  std::printf("%zu/%zu criteria passed\n", all.size() - failed, all.size());
  return failed ? 1 : 0;
}
