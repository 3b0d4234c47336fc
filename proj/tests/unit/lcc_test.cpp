#include <gtest/gtest.h>

#include "csys/finset.hpp"
#include "csys/lcc_rep.hpp"

using namespace csys;

namespace {

struct Fixture {
  FinSetModel M = make_finset(2);
  CodingUniverse U{*M.S, {0, 1, 2}};
  IpFunctor I{U, *M.products, *M.lcc};
  std::vector<ObjId> small() const { return {M.S->standard(0), M.S->standard(1), M.S->standard(2)}; }
};

}  // namespace

TEST(Ip, CardinalitiesByCounting) {
  Fixture f;
  const FinSet& S = *f.M.S;
  // maps El(c) -> Y summed over codes of sizes 0, 1, 2
  for (int y = 0; y <= 2; ++y) EXPECT_EQ(S.size(f.I.on_object(S.standard(y))), size_t(1 + y + y * y));
  EXPECT_EQ(S.size(f.I.on_object(f.U.U())), 13u);
  EXPECT_EQ(S.size(f.I.iterate(2, S.standard(2))), 57u);
  EXPECT_EQ(S.size(f.I.iterate(2, f.U.U())), 183u);
}

TEST(Ip, StMatchesElementChase) {
  Fixture f;
  const FinSet& S = *f.M.S;
  for (ObjId Y : f.small()) {
    MorId st = f.I.st(Y);
    ObjId dom = S.dom(st);
    for (uint32_t i = 0; i < S.size(dom); ++i) {
      // (slice-hom element (code, values over the fiber), e) |-> value at e
      Term label = S.elements(dom)[i];
      Term values = label.first().second();
      int e = label.second().as_int();
      Term entry = values.items().at(e);
      EXPECT_EQ(S.elements(Y)[S.apply(st, i)], entry.second()) << label.str();
    }
  }
}

TEST(Ip, FunctorAndSquares) {
  Fixture f;
  auto objs = f.small();
  objs.push_back(f.U.U());
  for (auto r : {check_ip_functor(f.I, objs), check_st_square(f.I, objs), check_eta_iso(f.I, f.small(), f.small()),
                 check_eta_n_natural(f.I, f.small(), f.small(), 2), check_id_n_laws(f.I, f.small(), f.small(), 2)})
    EXPECT_TRUE(r.ok()) << r.check() << " " << r.first_witness();
}

TEST(Ip, MuSquares) {
  Fixture f;
  CCSystem cc(f.U, 2);
  auto r = check_mu_boundary_square(cc, f.I, 2);
  EXPECT_TRUE(r.ok()) << r.first_witness();
}
