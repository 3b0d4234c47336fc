#pragma once

#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "csys/cc.hpp"
#include "csys/finset.hpp"
#include "csys/lcc_rep.hpp"
#include "csys/universe.hpp"

namespace csys {

// (Φ, φ, φ̃) between universe categories (C, p) and (C', p').
class UnivCatFunctor {
 public:
  UnivCatFunctor(const Universe& source, const Universe& target, const Functor& Phi, MorId phi, MorId phi_tilde);

  const Universe& source() const { return u_; }
  const Universe& target() const { return v_; }
  const Functor& functor() const { return Phi_; }
  MorId phi() const { return phi_; }
  MorId phi_tilde() const { return phit_; }

  // Φ(F) o φ : Φ(X) -> U'
  MorId transport_type(MorId F) const;
  // ι^{X,F} : (Φ X; Φ(F) o φ) -> Φ((X;F)), the mediator with
  // ι o Φ(p_F) = p and ι o Φ(Q F) o φ̃ = Q. Found by search; throws
  // StructureError unless exactly one exists.
  MorId iota(MorId F) const;
  // Number of mediators found for ι^{X,F}.
  size_t iota_candidates(MorId F) const;
  // D^n_Φ(yo^{Φ,Y}), shared.
  PshMorPtr phi_n_morphism(int n, ObjId Y) const;

 private:
  const Universe& u_;
  const Universe& v_;
  const Functor& Phi_;
  MorId phi_, phit_;
  mutable std::mutex mu_;
  mutable std::unordered_map<MorId, std::vector<MorId>> iota_;
  mutable std::unordered_map<uint64_t, PshMorPtr> phin_;
};

// Φ takes pt to a final object, the comprehension squares to pullbacks, and
// the (φ̃, φ) square is a pullback; universality against target `probes`.
LawReport check_ucf(const UnivCatFunctor& F, const std::vector<ObjId>& objs, const std::vector<ObjId>& probes);
// ι^{X,F} unique, satisfies both equations, invertible.
LawReport check_iota_phi(const UnivCatFunctor& F, const std::vector<ObjId>& objs);

// ΦD_{G'} : D_p(Φ° G') -> Φ°(D_{p'} G'), (F, γ) |-> (Φ(F) o φ, G'(ι)(γ)).
PshMorPtr phi_d(const UnivCatFunctor& F, PresheafPtr G);
// ΦD naturality in X, in G' along `r` : G1 -> G2, the identity
// Q(Φa, Φ(F) o φ) o ι = ι o Φ(Q(a, F)), injectivity, and the count of
// |D_p(Φ° G')(X)| against target elements whose type factors through φ.
LawReport check_phi_d(const UnivCatFunctor& F, PshMorPtr r, const std::vector<ObjId>& objs);

// yo^{Φ,Y} : Yo(Y) -> Φ°(Yo(Φ Y)), f |-> Φ(f)
PshMorPtr yo_phi(const UnivCatFunctor& F, ObjId Y);
LawReport check_yo_phi(const UnivCatFunctor& F, const std::vector<ObjId>& objs);

// D^n_Φ(m) : D_p^n(S) -> Φ°(D_{p'}^n(T')) for m : S -> Φ°(T'), by the
// recursion D^{n+1}_Φ(m) = D_p(D^n_Φ(m)) ; ΦD. `target_inner` is T'.
PshMorPtr d_phi_n(const UnivCatFunctor& F, PshMorPtr m, PresheafPtr target_inner, int n);
// The same morphism by the nested formula
// (F, a) |-> (Φ(F) o φ, D^{n-1}_{p'}(T')(ι)(D^{n-1}_Φ(m)(a))).
PshMorPtr d_phi_n_unfolded(const UnivCatFunctor& F, PshMorPtr m, PresheafPtr target_inner, int n);

// Φ^n_{X,Y} on D_p^n(X, Y), through D^n_Φ(yo^{Φ,Y}), and by the nested
// formula (F, a) |-> (Φ(F) o φ, ι o Φ^{n-1}(a)).
DElement phi_n(const UnivCatFunctor& F, const DElement& d);
DElement phi_n_unfolded(const UnivCatFunctor& F, const DElement& d);

// Recursion = nested formula for D^n_Φ(yo^{Φ,Y}) and its squares against
// Yo(g); Φ^0 = Φ; Φ^n generic = nested. Depth <= max_n, objects `objs`.
LawReport check_d_phi_n(const UnivCatFunctor& F, const std::vector<ObjId>& objs, int max_n);
// Φ(f) o Φ^n(d) = Φ^n(f o d) and Φ^n(d) o Φ(g) = Φ^n(d o g).
LawReport check_phi_n_natural(const UnivCatFunctor& F, const std::vector<ObjId>& objs, int max_n);

// The C-system homomorphism H : CC(C,p) -> CC(C',p') with
// ψ(Γ) : int(H Γ) -> Φ(int Γ); both systems truncated at the same N.
class HHomomorphism : public Functor {
 public:
  HHomomorphism(const UnivCatFunctor& F, const CCSystem& source, const CCSystem& target);
  const UnivCatFunctor& ucf() const { return F_; }
  const CCSystem& source_cc() const { return cc_; }
  const CCSystem& target_cc() const { return dd_; }

  ObjId on_object(ObjId G) const override;
  MorId on_morphism(MorId f) const override;
  MorId psi(ObjId G) const;
  MorId psi_inverse(ObjId G) const;
  size_t psi_candidates(ObjId G) const;

 private:
  struct Entry {
    ObjId image;
    MorId psi, psi_inv;
    size_t candidates;
  };
  const Entry& entry(ObjId G) const;
  const UnivCatFunctor& F_;
  const CCSystem& cc_;
  const CCSystem& dd_;
  mutable std::recursive_mutex mu_;
  mutable std::unordered_map<ObjId, Entry> entries_;
};

// Functor laws; H preserves length, ft, pt, p, f*, q; ψ unique, invertible,
// and int(H f) o ψ(Γ) = ψ(Γ') o Φ(int f) for f : Γ' -> Γ.
LawReport check_h(const HHomomorphism& H);

// u'_n(H T) = ψ(Γ) o (Φ^{n-1}(u_n T) o φ), the ũ analogue with φ̃, the
// inverse forms, and at n = 1 the composed presheaf-morphism diagrams.
LawReport check_u_transport(const HHomomorphism& H, int max_n);

// χ_n(Y) = η'_n(Φ^n(Id^n_Y)) : Φ(I^n Y) -> I'^n(Φ Y)
MorId chi(const UnivCatFunctor& F, const IpFunctor& I, const IpFunctor& J, int n, ObjId Y);
// ξ_n = χ_n(U) o I'^n(φ), ξ̃_n = χ_n(Ũ) o I'^n(φ̃)
MorId xi(const UnivCatFunctor& F, const IpFunctor& I, const IpFunctor& J, int n);
MorId xi_tilde(const UnivCatFunctor& F, const IpFunctor& I, const IpFunctor& J, int n);

// χ_0 = Id, ξ_0 = φ, ξ̃_0 = φ̃ exactly; χ_n natural in Y; η'_n(Φ^n d) =
// Φ(η_n d) o χ_n(Y); ξ̃_n o I'^n(p') = Φ(I^n p) o ξ_n. n <= max_n.
LawReport check_chi(const UnivCatFunctor& F, const IpFunctor& I, const IpFunctor& J, const std::vector<ObjId>& objs,
                    int max_n);
// μ'_n(H T) = ψ(Γ) o Φ(μ_n T) o ξ_{n-1}, the μ̃ analogue, inverse forms.
LawReport check_mu_transport(const HHomomorphism& H, const IpFunctor& I, const IpFunctor& J, int max_n);

// Φ between finite-set models: standard sets go to standard sets of the same
// size, every other carrier is imported with its labels; tables are kept.
class FinSetImport : public Functor {
 public:
  FinSetImport(const FinSet& source, const FinSet& target) : Functor(source, target), S_(source), T_(target) {}
  ObjId on_object(ObjId X) const override;
  MorId on_morphism(MorId f) const override;
  // The target map Φ(X) -> Y sending each label to the same label.
  MorId by_label(ObjId X, ObjId Y) const;

 private:
  const FinSet& S_;
  const FinSet& T_;
};

// Two coding universes with the label inclusion between them: FS(K) with
// `sizes` into FS(K') with `sizes2`, where `sizes` is a prefix of `sizes2`.
struct InclusionFixture {
  FinSetModel source, target;
  std::unique_ptr<CodingUniverse> U, V;
  std::unique_ptr<FinSetImport> Phi;
  std::unique_ptr<UnivCatFunctor> F;
};
std::unique_ptr<InclusionFixture> make_inclusion_fixture(int K, std::vector<int> sizes, int K2,
                                                         std::vector<int> sizes2, size_t element_limit = 1 << 16);

}  // namespace csys
