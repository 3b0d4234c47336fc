#include <gtest/gtest.h>

#include <chrono>
#include <iostream>

#include "csys/finset.hpp"
#include "csys/universe.hpp"

using namespace csys;

namespace {

struct Fx {
  FinSetModel M = make_finset(2);
  CodingUniverse U{*M.S, {0, 1, 2}};
  std::vector<ObjId> objs() const { return M.S->objects(); }
};

template <class Fn>
LawReport timed(Fn&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  LawReport r = fn();
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << r.summary() << " (" << s << " s)\n";
  return r;
}

// Σ over codes c of base^|El c|
size_t code_sum(const std::vector<int>& sizes, size_t base) {
  size_t s = 0;
  for (int k : sizes) {
    size_t p = 1;
    for (int i = 0; i < k; ++i) p *= base;
    s += p;
  }
  return s;
}

}  // namespace

TEST(DpElements, CountsMatchTheSumOverCodes) {
  Fx f;
  const FinSet& S = *f.M.S;
  std::vector<int> sizes = {0, 1, 2};
  // D_p(X, Y) = Σ_{F : X -> U} |Y|^|(X;F)|, and (X;F) splits over the points of X
  EXPECT_EQ(d_elements(f.U, 1, S.standard(1), S.standard(2)).size(), code_sum(sizes, 2));
  EXPECT_EQ(d_elements(f.U, 1, S.standard(2), S.standard(2)).size(), code_sum(sizes, 2) * code_sum(sizes, 2));
  EXPECT_EQ(d_elements(f.U, 1, S.standard(0), S.standard(2)).size(), 1u);
  // depth 2 into 1: one bottom map, so it counts pairs (F, G : (1;F) -> U)
  EXPECT_EQ(d_elements(f.U, 2, S.standard(1), S.standard(1)).size(), code_sum(sizes, 3));
  for (const DElement& d : d_elements(f.U, 2, S.standard(1), S.standard(2))) EXPECT_TRUE(well_formed(f.U, d));
}

TEST(DpElements, IdentityActionsAreTrivial) {
  Fx f;
  const FinSet& S = *f.M.S;
  for (int n = 0; n <= 2; ++n)
    for (const DElement& d : d_elements(f.U, n, S.standard(2), S.standard(1))) {
      EXPECT_EQ(circ_left(f.U, S.identity(d.X), d), d);
      EXPECT_EQ(circ_right(f.U, d, S.identity(d.Y)), d);
    }
}

TEST(DpElements, CircLawsOracleAndPresheafAtDepthTwo) {
  Fx f;
  for (auto r : {timed([&] { return check_circ_laws(f.U, f.objs(), 2); }),
                 timed([&] { return check_circ_oracle(f.U, f.objs(), 2); }),
                 timed([&] { return check_dp_presheaf(f.U, f.objs(), 2); })}) {
    EXPECT_TRUE(r.ok()) << r.check() << ": " << r.first_witness();
    EXPECT_GT(r.instances(), 0u);
  }
}
