#include <gtest/gtest.h>

#include <chrono>
#include <iostream>
#include <set>

#include "csys/functoriality.hpp"

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

#define EXPECT_LAWS(expr)                                    \
  do {                                                       \
    LawReport r_ = timed([&] { return expr; });              \
    EXPECT_TRUE(r_.ok()) << r_.check() << ": " << r_.first_witness(); \
    EXPECT_GT(r_.instances(), 0u) << r_.check();             \
  } while (0)

struct Inc {
  std::unique_ptr<InclusionFixture> fx = make_inclusion_fixture(2, {0, 1, 2}, 3, {0, 1, 2, 3});
  const FinSet& S() const { return *fx->source.S; }
  const FinSet& T() const { return *fx->target.S; }
  const UnivCatFunctor& F() const { return *fx->F; }
  std::vector<ObjId> small() const { return {S().standard(0), S().standard(1), S().standard(2)}; }
  std::vector<ObjId> probes() const { return {T().standard(0), T().standard(1), T().standard(2)}; }
};

}  // namespace

TEST(Ucf, IdentityFunctorIsTrivial) {
  FinSetModel M = make_finset(2);
  CodingUniverse U(*M.S, {0, 1, 2});
  IdentityFunctor Id(*M.S);
  UnivCatFunctor F(U, U, Id, M.S->identity(U.U()), M.S->identity(U.U_tilde()));
  std::vector<ObjId> objs = {M.S->standard(0), M.S->standard(1), M.S->standard(2)};
  EXPECT_LAWS(check_ucf(F, objs, objs));
  EXPECT_LAWS(check_iota_phi(F, objs));
  // ι is the identity of the comprehension
  for (ObjId X : objs)
    for (MorId f : M.S->hom(X, U.U())) EXPECT_EQ(F.iota(f), M.S->identity(U.ext(f)));
  CCSystem cc(U, 2);
  HHomomorphism H(F, cc, cc);
  for (ObjId G : cc.objects()) {
    EXPECT_EQ(H.on_object(G), G);
    EXPECT_EQ(H.psi(G), M.S->identity(cc.int_object(G)));
  }
  EXPECT_LAWS(check_h(H));
  EXPECT_LAWS(check_u_transport(H, 1));
}

TEST(Ucf, InclusionAxiomsAndIota) {
  Inc f;
  EXPECT_LAWS(check_ucf(f.F(), f.small(), f.probes()));
  EXPECT_LAWS(check_iota_phi(f.F(), f.small()));
  // φ is the code inclusion 0,1,2 -> 0,1,2,3
  const FinSet& T = f.T();
  EXPECT_EQ(T.size(T.dom(f.F().phi())), 3u);
  EXPECT_EQ(T.table(f.F().phi()), (FinSet::Table{0, 1, 2}));
}

TEST(Ucf, BrokenPhiTildeFailsThePullbackClause) {
  Inc f;
  const FinSet& T = f.T();
  // both elements of the size-2 code land on its first element
  FinSet::Table t = T.table(f.F().phi_tilde());
  ASSERT_EQ(t.size(), 3u);
  t[2] = t[1];
  MorId bad = T.function(T.dom(f.F().phi_tilde()), T.cod(f.F().phi_tilde()), t);
  UnivCatFunctor G(*f.fx->U, *f.fx->V, *f.fx->Phi, f.F().phi(), bad);
  LawReport r = check_ucf(G, f.small(), f.probes());
  EXPECT_FALSE(r.ok());
  EXPECT_NE(r.first_witness().find("universe-square"), std::string::npos) << r.first_witness();
}

TEST(Ucf, PhiDSquaresAndCounts) {
  Inc f;
  const FinSet& T = f.T();
  // Yo(Φ g) : Yo(1) -> Yo(2) for the first map 1 -> 2 in the target
  MorId g = T.hom(T.standard(1), T.standard(2)).front();
  EXPECT_LAWS(check_phi_d(f.F(), yoneda_on_morphism(T, g), f.small()));
  // ΦD is not onto: the extra code 3 of U4 is never reached
  PshMorPtr m = phi_d(f.F(), f.fx->V->yo(T.standard(1)));
  size_t src = m->source()->at(f.S().standard(1)).size();
  size_t dst = m->target()->at(f.S().standard(1)).size();
  EXPECT_EQ(src, 1u + 1u + 1u);           // codes 0, 1, 2 with 1, 1, 1 maps from El into 1
  EXPECT_EQ(dst, 1u + 1u + 1u + 1u);      // plus code 3
  EXPECT_LT(src, dst);
}

TEST(Ucf, YoPhiDPhiNAndPhiN) {
  Inc f;
  EXPECT_LAWS(check_yo_phi(f.F(), f.small()));
  EXPECT_LAWS(check_d_phi_n(f.F(), f.small(), 2));
  EXPECT_LAWS(check_phi_n_natural(f.F(), f.small(), 2));
}

TEST(Ucf, HomomorphismAndUTransport) {
  Inc f;
  CCSystem cc(*f.fx->U, 2), dd(*f.fx->V, 2);
  HHomomorphism H(f.F(), cc, dd);
  std::set<ObjId> images;
  auto objs = cc.objects();
  for (ObjId G : objs) images.insert(H.on_object(G));
  EXPECT_EQ(images.size(), objs.size());
  EXPECT_LAWS(check_h(H));
  EXPECT_LAWS(check_u_transport(H, 2));
}

TEST(Ucf, ChiXiAndMuTransport) {
  Inc f;
  IpFunctor I(*f.fx->U, *f.fx->source.products, *f.fx->source.lcc);
  IpFunctor J(*f.fx->V, *f.fx->target.products, *f.fx->target.lcc);
  EXPECT_LAWS(check_chi(f.F(), I, J, f.small(), 1));
  CCSystem cc(*f.fx->U, 2), dd(*f.fx->V, 2);
  HHomomorphism H(f.F(), cc, dd);
  EXPECT_LAWS(check_mu_transport(H, I, J, 2));
}
