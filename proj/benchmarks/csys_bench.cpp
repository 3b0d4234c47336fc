#include <benchmark/benchmark.h>

#include "csys/cc.hpp"
#include "csys/finset.hpp"
#include "csys/spec_doc.hpp"
#include "csys/suite.hpp"
#include "csys/universe.hpp"
#include "csys/workspace.hpp"

using namespace csys;

namespace {

struct U3 {
  FinSetModel M = make_finset(2);
  CodingUniverse U{*M.S, {0, 1, 2}};
};

U3& shared() {
  static U3 u;
  return u;
}

}  // namespace

// Building CC(FS(2), U3) and enumerating its objects up to length N.
static void BM_BuildCC(benchmark::State& st) {
  const int N = static_cast<int>(st.range(0));
  for (auto _ : st) {
    CCSystem cc(shared().U, N);
    benchmark::DoNotOptimize(cc.objects().size());
  }
}
BENCHMARK(BM_BuildCC)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_CSystemAxiomsN2(benchmark::State& st) {
  CCSystem cc(shared().U, 2);
  for (auto _ : st) benchmark::DoNotOptimize(check_csystem(cc).instances());
}
BENCHMARK(BM_CSystemAxiomsN2)->Unit(benchmark::kMillisecond);

// Nested D_p^n elements between the two-element set and itself.
static void BM_DElements(benchmark::State& st) {
  const FinSet& S = *shared().M.S;
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(d_elements(shared().U, n, S.standard(2), S.standard(2)).size());
}
BENCHMARK(BM_DElements)->DenseRange(0, 2);

static void BM_CircLaws(benchmark::State& st) {
  const FinSet& S = *shared().M.S;
  std::vector<ObjId> objs = {S.standard(0), S.standard(1), S.standard(2)};
  for (auto _ : st) benchmark::DoNotOptimize(check_circ_laws(shared().U, objs, 1).instances());
}
BENCHMARK(BM_CircLaws)->Unit(benchmark::kMillisecond);

static void BM_ParseAndPrint(benchmark::State& st) {
  const std::string text =
      "[category]\nobjects = pt A\npA : A -> pt\ns : pt -> A\ne : A -> A\ns ; pA = id_pt\npA ; s = e\n"
      "e ; e = e\ne ; pA = pA\ns ; e = s\n\n[csystem]\nkind = table\nN = 1\npt = pt\nlength pt = 0\n"
      "length A = 1\nft pt = pt\nft A = pt\nproj A = pA\nbase-change id_pt A = A id_A\n";
  for (auto _ : st) benchmark::DoNotOptimize(print(parse(text)).size());
}
BENCHMARK(BM_ParseAndPrint);

static void BM_LimitsSuiteFS2(benchmark::State& st) {
  Workspace ws(parse("[finset]\nK = 2\n[products]\nkind = pairs\n[pullbacks]\nkind = subsets\n"
                     "[ccc]\nkind = functions\n[lcc]\nkind = canonical\n"));
  for (auto _ : st) benchmark::DoNotOptimize(run_suite(ws, {"limits"}, ws.params()).results.size());
}
BENCHMARK(BM_LimitsSuiteFS2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
