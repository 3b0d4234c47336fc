#include <gtest/gtest.h>

#include <chrono>
#include <iostream>

#include "csys/finset.hpp"
#include "csys/structures.hpp"

using namespace csys;

namespace {

template <class Fn>
LawReport timed(Fn&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  LawReport r = fn();
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << r.summary() << " (" << s << " s)\n";
  return r;
}

#define EXPECT_LAWS(expr)                                             \
  do {                                                                \
    LawReport r_ = timed([&] { return expr; });                       \
    EXPECT_TRUE(r_.ok()) << r_.check() << ": " << r_.first_witness(); \
    EXPECT_GT(r_.instances(), 0u) << r_.check();                      \
  } while (0)

}  // namespace

TEST(Limits, ProductCompareIsoIdentityAndSwap) {
  auto m = make_finset(2);
  const FinSet& S = *m.S;
  ObjId two = S.standard(2);
  ProductDiagram d = m.products->product(two, two);
  auto [a, b] = product_compare_iso(S, d, d);
  EXPECT_EQ(a, S.identity(d.apex));
  EXPECT_EQ(b, S.identity(d.apex));
  // (x, y) in x-major order against (y, x) in y-major order: the middle
  // two positions trade places
  ProductDiagram e = m.swapped->product(two, two);
  auto [c, c_inv] = product_compare_iso(S, d, e);
  // c : d.apex -> e.apex with c o pr_e = pr_d; searched in the hom set
  std::vector<MorId> found = mediators(S, d.apex, e.apex, e.pr1, e.pr2, d.pr1, d.pr2);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(c, found[0]);
  EXPECT_EQ(S.compose(c, c_inv), S.identity(d.apex));
  EXPECT_EQ(S.table(c), (FinSet::Table{0, 2, 1, 3}));
}

TEST(Limits, AllStructureChecksOnFS2) {
  auto m = make_finset(2);
  std::vector<ObjId> objs = m.S->objects();
  EXPECT_LAWS(check_products(*m.products, objs, objs));
  EXPECT_LAWS(check_pullbacks(*m.pullbacks, objs, objs));
  EXPECT_LAWS(check_ccc(*m.ccc, objs, objs));
  EXPECT_LAWS(check_product_compare_natural(*m.products, *m.swapped, objs));
  EXPECT_LAWS(check_hom_contravariant(*m.ccc, objs));
  EXPECT_LAWS(check_hom_eval_square(*m.ccc, objs));
  EXPECT_LAWS(check_adj_laws(*m.ccc, objs, objs));
  EXPECT_LAWS(check_pullback_slice_equiv(*m.S, objs, objs, m.pullbacks.get()));
  for (ObjId Z : objs) EXPECT_LAWS(check_slice_product_functor(*m.lcc, Z));
  EXPECT_LAWS(check_lcc(*m.lcc, objs));
}

TEST(Limits, HomPrecompositionBySwap) {
  auto m = make_finset(2);
  const FinSet& S = *m.S;
  ObjId two = S.standard(2);
  MorId swap = S.function(two, two, {1, 0});
  MorId h = m.ccc->hom_pre(swap, two);
  ObjId H = m.ccc->hom_object(two, two);
  ASSERT_EQ(S.size(H), 4u);
  // element i of Hom(2,2) is a table t; Hom(swap, 2) sends it to swap then t
  for (uint32_t i = 0; i < 4; ++i) {
    std::vector<Term> t = S.elements(H)[i].items();
    std::vector<Term> expect = {t[1], t[0]};
    EXPECT_EQ(S.elements(H)[S.apply(h, i)].items(), expect) << i;
  }
  EXPECT_EQ(m.ccc->hom_pre(S.identity(two), two), S.identity(H));
}

TEST(Limits, StrVariantsOnF) {
  auto F = functions_category(3);
  StrVariants v = make_str_variants(*F);
  std::vector<ObjId> objs = F->objects();
  EXPECT_LAWS(check_pullbacks(*v.str1, objs, objs));
  EXPECT_LAWS(check_pullbacks(*v.str_sigma, objs, objs));
  auto diff = pullback_differences(*v.str1, *v.str_sigma);
  ASSERT_EQ(diff.size(), 1u);
  EXPECT_EQ(diff[0], std::make_pair(v.id_x, v.id_x));
  auto d1 = v.str1->pullback(v.id_x, v.id_x).value();
  auto ds = v.str_sigma->pullback(v.id_x, v.id_x).value();
  EXPECT_EQ(d1.apex, v.x);
  EXPECT_EQ(d1.pr1, v.id_x);
  EXPECT_EQ(d1.pr2, v.id_x);
  EXPECT_EQ(ds.apex, v.x);
  EXPECT_EQ(ds.pr1, v.sigma);
  EXPECT_EQ(ds.pr2, v.sigma);
  auto autos = automorphisms(*F);
  EXPECT_FALSE(autos.empty());
  for (const auto& phi : autos) EXPECT_FALSE(transports(*F, phi, *v.str1, *v.str_sigma));
  // the σ square is a product in F/X as well as a pullback
  SquareVerdict sv = pullback_slice_equiv(*F, ds.pr1, ds.pr2, v.id_x, v.id_x, objs);
  EXPECT_TRUE(sv.pullback_in_base);
  EXPECT_TRUE(sv.product_in_slice);
}
