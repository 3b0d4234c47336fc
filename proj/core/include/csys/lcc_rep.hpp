#pragma once

#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "csys/cc.hpp"
#include "csys/structures.hpp"
#include "csys/universe.hpp"

namespace csys {

// I_p(Y) = Hom_U((Ũ,p), (U x Y, pr1)) over a universe in an lcc category
// with binary products, with prI, evI, ι_F, st and the representations
// η_n : D_p^n(Yo Y) -> Yo(I_p^n Y) and their inverses η_n^!.
class IpFunctor : public Functor {
 public:
  IpFunctor(const Universe& u, const BinaryProducts& bp, const LocallyCartesianClosed& lcc);

  const Universe& universe() const { return u_; }
  const BinaryProducts& products() const { return bp_; }

  ObjId on_object(ObjId Y) const override;
  MorId on_morphism(MorId f) const override;
  ObjId iterate(int n, ObjId Y) const;
  MorId iterate(int n, MorId f) const;

  // prI(Y) : I_p(Y) -> U
  MorId pr(ObjId Y) const;
  // evI(Y) underlying: (I_p(Y), prI) x_U (Ũ, p) -> U x Y
  MorId ev(ObjId Y) const;
  // ι_F : (X;F) -> (X,F) x_U (Ũ,p) and its inverse (as a comprehension
  // mediator, never by search).
  MorId iota(MorId F) const;
  MorId iota_inverse(MorId F) const;
  // st(Y) = ι_{prI Y} o evI(Y) o pr2 : (I_p(Y); prI(Y)) -> Y
  MorId st(ObjId Y) const;

  // η^!(g) = (g o prI, Q(g, prI) o st) for g : X -> I_p(Y), as a D_p(Yo Y)
  // element pair(mor F, mor a).
  Term eta_bang(ObjId Y, MorId g) const;
  // η(F, a): the unique g with η^!(g) = (F, a), by the slice adjunction.
  MorId eta(ObjId Y, ObjId X, const Term& d) const;
  // η_n : D_p^n(X, Y) -> hom(X, I_p^n Y), η_0 = Id
  MorId eta_n(int n, ObjId Y, ObjId X, const Term& d) const;
  Term eta_bang_n(int n, ObjId Y, MorId g) const;
  // Id^n_Y = η_n^!(Id_{I_p^n Y}) in D_p^n(I_p^n Y, Y)
  DElement id_n(int n, ObjId Y) const;

  PshMorPtr eta_morphism(int n, ObjId Y) const;
  PshMorPtr eta_bang_morphism(int n, ObjId Y) const;

 private:
  struct Data {
    ObjId H;          // slice object Hom_U(A, B(Y))
    ObjId I;          // its underlying object
    MorId pr, ev, st;
    MorId pr2;        // U x Y -> Y
  };
  const Data& data(ObjId Y) const;
  const Universe& u_;
  const BinaryProducts& bp_;
  const LocallyCartesianClosed& lcc_;
  const SliceCategory& S_;
  const CartesianClosed& ccc_;
  ObjId A_;  // (Ũ, p)
  mutable std::mutex mu_;
  mutable std::unordered_map<ObjId, std::unique_ptr<Data>> data_;
  mutable std::unordered_map<MorId, MorId> iota_, iota_inv_, on_mor_;
};

// μ_n : Ob_n -> int°(Yo(I_p^{n-1} U)), T |-> η_{n-1,U}(u_n T); μ̃_n likewise.
PshMorPtr mu_n(const CCSystem& cc, const IpFunctor& I, int n);
PshMorPtr mu_tilde_n(const CCSystem& cc, const IpFunctor& I, int n);

// I_p preserves identities and composition; prI is natural; ι_F inverts.
LawReport check_ip_functor(const IpFunctor& I, const std::vector<ObjId>& objs);
// Q(I_p f, prI Y') o st(Y') = st(Y) o f for f : Y -> Y' among `objs`.
LawReport check_st_square(const IpFunctor& I, const std::vector<ObjId>& objs);
// η_Y, η^!_Y mutually inverse with |D_p(X,Y)| = |hom(X, I_p Y)|, natural in
// X and Y, for X in `xs`, Y in `ys`.
LawReport check_eta_iso(const IpFunctor& I, const std::vector<ObjId>& xs, const std::vector<ObjId>& ys);
// η_n bijective; η_n(f o d) = f o η_n(d); η_n(d o g) = η_n(d) o I^n(g).
LawReport check_eta_n_natural(const IpFunctor& I, const std::vector<ObjId>& xs, const std::vector<ObjId>& ys,
                              int max_n);
// m o Id^n = η_n^!(m); Id^n o g = η_n^!(I^n g); η_n(d) o Id^n = d.
LawReport check_id_n_laws(const IpFunctor& I, const std::vector<ObjId>& xs, const std::vector<ObjId>& ys, int max_n);
// μ_n, μ̃_n bijective and natural, μ_1 = u_1, μ_n(∂o) = μ̃_n(o) o I^{n-1}(p).
LawReport check_mu_boundary_square(const CCSystem& cc, const IpFunctor& I, int max_n);

}  // namespace csys
