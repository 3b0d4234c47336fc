#include <gtest/gtest.h>

#include <chrono>
#include <iostream>

#include "csys/cc.hpp"
#include "csys/finset.hpp"

using namespace csys;

namespace {

struct Fixture {
  FinSetModel M = make_finset(2);
  CodingUniverse U{*M.S, {0, 1, 2}};
};

template <class Fn>
LawReport timed(const char* what, Fn&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  LawReport r = fn();
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << what << ": " << r.summary() << " in " << s << "s\n";
  return r;
}

}  // namespace

TEST(CC, ObjectCountsPerLength) {
  Fixture f;
  CCSystem cc(f.U, 3);
  std::vector<size_t> counts(4);
  for (ObjId X : cc.objects()) ++counts[cc.length(X)];
  // length 1: hom(1, U); length 2: Σ_F 3^|El F|
  EXPECT_EQ(counts[0], 1u);
  EXPECT_EQ(counts[1], 3u);
  EXPECT_EQ(counts[2], 1u + 3u + 9u);
  EXPECT_EQ(cc.presheaves().ob(1)->at(cc.pt()).size(), 3u);
}

TEST(CC, TruncatedAtZeroIsJustPt) {
  Fixture f;
  CCSystem cc(f.U, 0);
  EXPECT_EQ(cc.objects().size(), 1u);
  EXPECT_EQ(cc.int_object(cc.pt()), f.M.S->standard(1));
  EXPECT_TRUE(check_csystem(cc).ok());
}

// Depth three runs in the acceptance binary; unit tests stay at two.
TEST(CC, AxiomsHoldAtDepthTwo) {
  Fixture f;
  CCSystem cc(f.U, 2);
  auto r = timed("csystem-axioms", [&] { return check_csystem(cc); });
  EXPECT_TRUE(r.ok()) << r.first_witness();
}

TEST(CC, PresheafFamilies) {
  Fixture f;
  CCSystem cc(f.U, 2);
  for (auto r : {timed("ob", [&] { return check_ob_presheaves(cc, 2); }),
                 timed("sig", [&] { return check_sig_functor(cc, 1); }),
                 timed("sob", [&] { return check_sob_iso(cc, 1); }),
                 timed("sobt", [&] { return check_sob_tilde_iso(cc, 1); }),
                 timed("iter", [&] { return check_sob_iter(cc, 2); })})
    EXPECT_TRUE(r.ok()) << r.check() << " " << r.first_witness();
}

TEST(CC, IntAndU1) {
  Fixture f;
  CCSystem cc(f.U, 2);
  for (auto r : {timed("int", [&] { return check_cc_int(cc); }), timed("u1", [&] { return check_u1_iso(cc); }),
                 timed("u1t", [&] { return check_u1_tilde_iso(cc); }),
                 timed("square", [&] { return check_u1_boundary_square(cc); })})
    EXPECT_TRUE(r.ok()) << r.check() << " " << r.first_witness();
}

TEST(CC, SdpAndUn) {
  Fixture f;
  CCSystem cc(f.U, 3);
  const FinSet& S = *f.M.S;
  for (auto r : {timed("sdp", [&] { return check_sdp_natural(cc, {S.standard(0), S.standard(1), S.standard(2)}); }),
                 timed("un", [&] { return check_un_iso(cc, 3); })})
    EXPECT_TRUE(r.ok()) << r.check() << " " << r.first_witness();
}

TEST(CSystem, TrivialSystemPasses) {
  auto cs = trivial_csystem();
  EXPECT_TRUE(check_csystem(*cs).ok());
  EXPECT_TRUE(check_ob_presheaves(*cs, 0).ok());
}

TEST(CSystem, MutatedQIsCaught) {
  Fixture f;
  CCSystem cc(f.U, 2);
  PatchedCSystem bad(cc);
  // over the length-1 object coded 2, replace q(Id, T) by a non-identity map
  const FinSet& S = *f.M.S;
  MorId code2 = S.function(S.standard(1), f.U.U(), {2});
  ObjId G = cc.find_child(cc.pt(), code2).value();
  MorId F = S.function(cc.int_object(G), f.U.U(), {2, 2});
  ObjId T = cc.find_child(G, F).value();
  MorId other;
  for (MorId m : cc.hom(T, T))
    if (m != cc.identity(T)) other = m;
  bad.override_q(cc.identity(G), T, other);
  auto r = check_csystem(bad);
  EXPECT_FALSE(r.ok());
  EXPECT_NE(r.first_witness().find("identity-q"), std::string::npos) << r.first_witness();
}
