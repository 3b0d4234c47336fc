#include <gtest/gtest.h>

#include <set>

#include "csys/finset.hpp"

namespace csys {
namespace {

TEST(FinSet, HomCountsAreExponentials) {
  auto m = make_finset(2);
  const FinSet& S = *m.S;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) {
      size_t want = 1;
      for (int i = 0; i < a; ++i) want *= static_cast<size_t>(b);
      EXPECT_EQ(S.hom(S.standard(a), S.standard(b)).size(), want);
    }
  EXPECT_EQ(S.hom(S.standard(2), S.standard(2)).size(), 4u);
}

TEST(FinSet, CategoryLaws) {
  auto m = make_finset(3);
  EXPECT_TRUE(check_category(*m.S).ok());
}

TEST(FinSet, YonedaValues) {
  auto m = make_finset(2);
  const FinSet& S = *m.S;
  auto Y = yoneda(S, S.standard(2));
  EXPECT_EQ(Y->at(S.standard(1)).size(), 2u);
  auto one = yoneda(S, S.standard(1));
  for (ObjId X : S.objects()) EXPECT_EQ(one->at(X).size(), 1u);
  auto empty = yoneda(S, S.standard(0));
  EXPECT_TRUE(empty->at(S.standard(2)).empty());
}

TEST(FinSet, CollapseActsOnYoneda) {
  auto m = make_finset(2);
  const FinSet& S = *m.S;
  MorId collapse = S.function(S.standard(2), S.standard(1), {0, 0});
  auto r = yoneda_on_morphism(S, collapse);
  ObjId X = S.standard(1);
  std::set<Term> images;
  for (const auto& h : r->source()->at(X)) images.insert(r->apply(X, h));
  EXPECT_EQ(images.size(), 1u);
}

TEST(CodingUniverse, Cardinalities) {
  auto m = make_finset(2);
  const FinSet& S = *m.S;
  CodingUniverse u(S, {0, 1, 2});
  EXPECT_EQ(S.size(u.U()), 3u);
  EXPECT_EQ(S.size(u.U_tilde()), 3u);
  MorId F2 = S.function(S.standard(1), u.U(), {2});
  EXPECT_EQ(S.size(u.ext(F2)), 2u);
  MorId F0 = S.function(S.standard(2), u.U(), {0, 0});
  EXPECT_EQ(S.size(u.ext(F0)), 0u);
}

TEST(CodingUniverse, ComprehensionIsPullbackAndQIdentities) {
  auto m = make_finset(2);
  const FinSet& S = *m.S;
  CodingUniverse u(S, {0, 1, 2});
  auto objs = S.objects();
  auto r1 = check_universe(u, objs, objs);
  EXPECT_TRUE(r1.ok()) << r1.summary();
  auto r2 = check_q_identities(u, objs);
  EXPECT_TRUE(r2.ok()) << r2.summary();
  auto r3 = check_section_count(u, objs);
  EXPECT_TRUE(r3.ok()) << r3.summary();
  EXPECT_GT(r1.instances(), 0u);
}

TEST(FinSetStructures, ProductsPullbacksCcc) {
  auto m = make_finset(2);
  const FinSet& S = *m.S;
  auto objs = S.objects();
  auto a = check_products(*m.products, objs, objs);
  EXPECT_TRUE(a.ok()) << a.summary();
  auto b = check_products(*m.swapped, objs, objs);
  EXPECT_TRUE(b.ok()) << b.summary();
  auto c = check_pullbacks(*m.pullbacks, objs, objs);
  EXPECT_TRUE(c.ok()) << c.summary();
  auto d = check_ccc(*m.ccc, objs, objs);
  EXPECT_TRUE(d.ok()) << d.summary();
}

TEST(FinSetStructures, Lcc) {
  auto m = make_finset(2);
  const FinSet& S = *m.S;
  auto r = check_lcc(*m.lcc, S.objects());
  EXPECT_TRUE(r.ok()) << r.summary();
}

}  // namespace
}  // namespace csys
