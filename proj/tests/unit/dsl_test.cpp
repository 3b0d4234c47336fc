#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include "csys/spec_doc.hpp"
#include "csys/suite.hpp"
#include "csys/workspace.hpp"

using namespace csys;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> fixtures() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(CSYS_FIXTURE_DIR))
    if (e.path().extension() == ".spec") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

// Runs parse and returns the DslError message, or "" when it parses.
std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const DslError& e) {
    return e.what();
  }
  return "";
}

std::string strip_times(std::string s) { return std::regex_replace(s, std::regex(",\"time_ms\":[^,}]+"), ""); }

const char* kPoint = R"(
[category]
objects = 1

[universe]
p = id_1
pt = 1
comprehension id_1 = 1 id_1 id_1

[csystem]
kind = cc
N = 2
)";

}  // namespace

TEST(Dsl, EmptyDocument) {
  SpecDocument d = parse("");
  EXPECT_TRUE(d.blocks.empty());
  EXPECT_EQ(print(d), "");
  EXPECT_EQ(normalize("  # only a comment\n\n"), "");
}

TEST(Dsl, CanonicalFormOfASmallDocument) {
  std::string text = "[category]   # base\n objects = a  b\nf:a->b\n\n\n[suite]\nrun=category-laws\n";
  EXPECT_EQ(print(parse(text)), "[category]\nobjects = a b\nf : a -> b\n\n[suite]\nrun = category-laws\n");
}

TEST(Dsl, RoundTripOnFixtures) {
  auto files = fixtures();
  ASSERT_GE(files.size(), 10u);
  for (const auto& p : files) {
    SCOPED_TRACE(p.filename().string());
    std::string text = slurp(p);
    std::string printed = print(parse(text));
    EXPECT_EQ(printed, normalize(text));
    EXPECT_EQ(print(parse(printed)), printed);
  }
}

// Extra blanks, comments and blank lines never change the printed form.
TEST(Dsl, LayoutNoiseIsInvisible) {
  std::mt19937 rng(20261016);
  for (const auto& p : fixtures()) {
    std::string text = slurp(p), want = print(parse(text));
    for (int trial = 0; trial < 20; ++trial) {
      std::string noisy;
      std::istringstream in(text);
      std::string line;
      while (std::getline(in, line)) {
        if (rng() % 4 == 0) noisy += "   # noise\n\n";
        std::string out;
        for (char c : line) {
          if (c == ' ' && rng() % 2) out += "\t ";
          out += c;
        }
        noisy += std::string(rng() % 3, ' ') + out + std::string(rng() % 3, ' ') + "\n";
      }
      ASSERT_EQ(print(parse(noisy)), want) << p << "\n" << noisy;
    }
  }
}

TEST(Dsl, DuplicateObjectIdNamesBothLocations) {
  // objects lines accumulate, so the repeat may sit on a later line
  std::string msg = error_of("[category]\nobjects = a b\nobjects = c a\n");
  std::string msg2 = error_of("[category]\nobjects = a b a\n");
  EXPECT_EQ(msg.rfind("3:13:", 0), 0u) << msg;
  EXPECT_NE(msg.find("first declared at 2:11"), std::string::npos) << msg;
  EXPECT_EQ(msg2.rfind("2:15:", 0), 0u) << msg2;
  EXPECT_NE(msg2.find("first declared at 2:11"), std::string::npos) << msg2;
}

TEST(Dsl, DuplicateMorphismAndBlock) {
  std::string m = error_of("[category]\nobjects = a\nf : a -> a\nf : a -> a\nf ; f = f\n");
  EXPECT_EQ(m.rfind("4:1:", 0), 0u) << m;
  EXPECT_NE(m.find("first declared at 3:1"), std::string::npos) << m;
  std::string b = error_of("[finset]\nK = 1\n\n[finset]\nK = 2\n");
  EXPECT_EQ(b.rfind("4:1:", 0), 0u) << b;
  EXPECT_NE(b.find("first at 1:1"), std::string::npos) << b;
}

TEST(Dsl, UnresolvedAndNonTotal) {
  std::string u = error_of("[category]\nobjects = a\nf : a -> b\n");
  EXPECT_EQ(u.rfind("3:10:", 0), 0u) << u;
  EXPECT_NE(u.find("unknown object 'b'"), std::string::npos);
  std::string t = error_of("[category]\nobjects = a\nf : a -> a\n");
  EXPECT_NE(t.find("composition table is not total"), std::string::npos) << t;
  std::string c = error_of(std::string(kPoint) + "\n[products]\n");
  EXPECT_NE(c.find("product table is not total"), std::string::npos) << c;
  std::string k = error_of("[finset]\nK = 9\n");
  EXPECT_EQ(k.rfind("2:5:", 0), 0u) << k;
}

TEST(Dsl, SyntaxErrors) {
  EXPECT_EQ(error_of("K = 1\n").rfind("1:1:", 0), 0u);
  EXPECT_EQ(error_of("[nope]\n").rfind("1:1:", 0), 0u);
  EXPECT_EQ(error_of("[finset]\nK = 1 = 2\n").rfind("2:7:", 0), 0u);
  EXPECT_EQ(error_of("[finset]\nK =\n").rfind("2:3:", 0), 0u);
  EXPECT_EQ(error_of("[finset]\nK = {1}\n").rfind("2:5:", 0), 0u);
  EXPECT_EQ(error_of("[finset\n").rfind("1:1:", 0), 0u);
}

TEST(Dsl, PointUniverseTablesBuildACSystem) {
  Workspace ws(parse(kPoint));
  ASSERT_NE(ws.universe(), nullptr);
  ASSERT_TRUE(ws.csystem_is_cc());
  SuiteParams p;
  SuiteReport r = run_suite(ws, {"universe", "csystem", "cc"}, p);
  for (const auto& c : r.results) EXPECT_NE(c.status, CheckStatus::kFail) << c.name << ": " << c.witness;
  EXPECT_EQ(r.count(CheckStatus::kFail), 0u);
  // every context is 1, one context per length
  EXPECT_EQ(ws.cc(2)->objects().size(), 3u);
}

TEST(Dsl, TableFunctorMustBeTotal) {
  std::string t = error_of(std::string(kPoint) + "\n[ucf]\nkind = table\nphi = id_1\nphi-tilde = id_1\n");
  EXPECT_NE(t.find("functor table is not total"), std::string::npos) << t;
}

TEST(Dsl, SuiteOutputIsDeterministic) {
  for (const char* name : {"one_type.spec", "point_universe.spec", "fault_unit_law.spec"}) {
    std::string text = slurp(fs::path(CSYS_FIXTURE_DIR) / name);
    Workspace a(parse(text)), b(parse(text));
    auto ra = run_suite(a, a.selection(), a.params());
    auto rb = run_suite(b, b.selection(), b.params());
    EXPECT_EQ(strip_times(to_json_lines(ra)), strip_times(to_json_lines(rb))) << name;
  }
}

TEST(Dsl, UnknownCheckIsAUsageError) {
  EXPECT_THROW(resolve_selection({"no-such-check"}), UsageError);
  EXPECT_EQ(resolve_selection({}).size(), check_catalog().size());
  EXPECT_EQ(resolve_selection({"all"}).size(), check_catalog().size());
  auto lim = resolve_selection({"limits", "products"});
  EXPECT_TRUE(std::is_sorted(lim.begin(), lim.end()));
  EXPECT_EQ(std::adjacent_find(lim.begin(), lim.end()), lim.end());
}

TEST(Dsl, FaultsFailTheirTargets) {
  for (const char* name : {"fault_unit_law.spec", "fault_q_square.spec", "fault_phi_tilde_pullback.spec",
                           "fault_u1_naturality.spec"}) {
    SCOPED_TRACE(name);
    Workspace ws(parse(slurp(fs::path(CSYS_FIXTURE_DIR) / name)));
    ASSERT_TRUE(ws.fault().has_value());
    auto r = run_check(ws, fault_target(*ws.fault()), ws.params());
    EXPECT_EQ(r.status, CheckStatus::kFail);
    EXPECT_FALSE(r.witness.empty());
    // same seed, same site
    auto again = run_check(ws, fault_target(*ws.fault()), ws.params());
    EXPECT_EQ(r.notes, again.notes);
  }
}

// Reports frozen under fixtures/golden, regenerated with
//   csys check fixtures/X.spec --format json | sed -E 's/,"time_ms":[^,}]+//'
TEST(Dsl, ReportsMatchGoldenFiles) {
  fs::path dir = fs::path(CSYS_FIXTURE_DIR) / "golden";
  size_t seen = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() != ".jsonl") continue;
    ++seen;
    fs::path doc = fs::path(CSYS_FIXTURE_DIR) / (e.path().stem().string() + ".spec");
    SCOPED_TRACE(doc.filename().string());
    Workspace ws(parse(slurp(doc)));
    EXPECT_EQ(strip_times(to_json_lines(run_suite(ws, ws.selection(), ws.params()))), slurp(e.path()));
  }
  EXPECT_GE(seen, 9u);
}
