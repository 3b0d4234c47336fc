#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "csys/presheaf.hpp"
#include "csys/structures.hpp"

namespace csys {

// A C-system truncated at length `truncation()`. Base change is along
// f : Γ' -> Γ for T with ft(T) = Γ, l(T) = l(Γ) + 1; q(f, T) : f*(T) -> T.
class CSystem : public Category {
 public:
  virtual int length(ObjId X) const = 0;
  virtual ObjId ft(ObjId X) const = 0;
  virtual ObjId pt() const = 0;
  // p_X : X -> ft(X), for l(X) > 0
  virtual MorId proj(ObjId X) const = 0;
  virtual ObjId base_change(MorId f, ObjId T) const = 0;
  virtual MorId q(MorId f, ObjId T) const = 0;
  virtual int truncation() const = 0;

  // Sections of p_T, i.e. s : ft(T) -> T with s o p_T = Id. The default
  // filters hom(ft T, T).
  virtual std::vector<MorId> sections(ObjId T) const;
  // f*(o) for o a section of p_T, T in Ob_n(Γ), f : Γ' -> Γ: the section s
  // of p_{f*T} with s o q_n(f, T) = q_{n-1}(f, ft T) o o. The default
  // searches the sections of p_{f*T}.
  virtual MorId section_base_change(MorId f, MorId o, int n) const;

  std::vector<ObjId> objects_of_length(int n) const;
  // objects X with l(X) <= n
  std::vector<ObjId> objects_up_to(int n) const;
  ObjId ft_n(ObjId X, int n) const;
  // f*(T) and q_n(f, T) for T in Ob_n(Γ), f : Γ' -> Γ, n >= 0
  ObjId base_change_n(MorId f, ObjId T, int n) const;
  MorId q_n(MorId f, ObjId T, int n) const;
};

// Options for the axiom checker. Cones for the pullback clause come from
// objects of length <= probe_length; morphisms are quantified among objects
// of length <= morphism_length (default truncation - 1).
struct CSystemCheckOptions {
  int probe_length = 0;
  int morphism_length = -1;
};

LawReport check_csystem(const CSystem& cs, const CSystemCheckOptions& opt = {});

// C-system given by tables; the DSL [csystem] block.
class TableCSystem : public CSystem {
 public:
  TableCSystem(std::unique_ptr<TableCategory> C, int truncation);
  TableCategory& table() { return *C_; }
  const TableCategory& table() const { return *C_; }
  void set_length(ObjId X, int n) { len_[X] = n; }
  void set_ft(ObjId X, ObjId Y) { ft_[X] = Y; }
  void set_pt(ObjId X) { pt_ = X; }
  void set_proj(ObjId X, MorId p) { proj_[X] = p; }
  void set_base_change(MorId f, ObjId T, ObjId fT, MorId q);

  std::string name() const override { return C_->name(); }
  std::vector<ObjId> objects() const override { return C_->objects(); }
  ObjId dom(MorId f) const override { return C_->dom(f); }
  ObjId cod(MorId f) const override { return C_->cod(f); }
  MorId identity(ObjId X) const override { return C_->identity(X); }
  const std::vector<MorId>& hom(ObjId X, ObjId Y) const override { return C_->hom(X, Y); }
  MorId compose(MorId f, MorId g) const override { return C_->compose(f, g); }
  std::string object_label(ObjId X) const override { return C_->object_label(X); }
  std::string morphism_label(MorId f) const override { return C_->morphism_label(f); }

  int length(ObjId X) const override;
  ObjId ft(ObjId X) const override;
  ObjId pt() const override;
  MorId proj(ObjId X) const override;
  ObjId base_change(MorId f, ObjId T) const override;
  MorId q(MorId f, ObjId T) const override;
  int truncation() const override { return truncation_; }

 private:
  std::unique_ptr<TableCategory> C_;
  int truncation_;
  std::unordered_map<ObjId, int> len_;
  std::unordered_map<ObjId, ObjId> ft_;
  std::unordered_map<ObjId, MorId> proj_;
  std::unordered_map<uint64_t, std::pair<ObjId, MorId>> bc_;
  std::optional<ObjId> pt_;
};

// One-object C-system: pt only, truncation 0.
std::unique_ptr<TableCSystem> trivial_csystem();

// Delegates to another C-system with some q values replaced.
class PatchedCSystem : public CSystem {
 public:
  explicit PatchedCSystem(const CSystem& base) : b_(base) {}
  void override_q(MorId f, ObjId T, MorId value) { q_[pack(f.v, T.v)] = value; }

  std::string name() const override { return b_.name() + "*"; }
  std::vector<ObjId> objects() const override { return b_.objects(); }
  ObjId dom(MorId f) const override { return b_.dom(f); }
  ObjId cod(MorId f) const override { return b_.cod(f); }
  MorId identity(ObjId X) const override { return b_.identity(X); }
  const std::vector<MorId>& hom(ObjId X, ObjId Y) const override { return b_.hom(X, Y); }
  MorId compose(MorId f, MorId g) const override { return b_.compose(f, g); }
  std::string object_label(ObjId X) const override { return b_.object_label(X); }
  std::string morphism_label(MorId f) const override { return b_.morphism_label(f); }
  int length(ObjId X) const override { return b_.length(X); }
  ObjId ft(ObjId X) const override { return b_.ft(X); }
  ObjId pt() const override { return b_.pt(); }
  MorId proj(ObjId X) const override { return b_.proj(X); }
  ObjId base_change(MorId f, ObjId T) const override { return b_.base_change(f, T); }
  MorId q(MorId f, ObjId T) const override;
  int truncation() const override { return b_.truncation(); }
  std::vector<MorId> sections(ObjId T) const override { return b_.sections(T); }

 private:
  const CSystem& b_;
  std::unordered_map<uint64_t, MorId> q_;
};

// ------------------------------------------------------------ presheaves

// Ob_n(Γ) = {T | l(T) = l(Γ) + n, ft^n(T) = Γ}, elements Term::obj(T),
// restriction f*(T). Defined where l(Γ) + n <= truncation.
class ObPresheaf : public Presheaf {
 public:
  ObPresheaf(const CSystem& cs, int n);
  int n() const { return n_; }
  bool defined_at(ObjId X) const override;
  Term restrict(MorId f, const Term& x) const override;

 protected:
  ElementSet compute(ObjId X) const override;

 private:
  const CSystem& cs_;
  int n_;
};

// Õb_n(Γ): sections o of p_T for T in Ob_n(Γ), elements Term::mor(o);
// empty for n = 0.
class ObTildePresheaf : public Presheaf {
 public:
  ObTildePresheaf(const CSystem& cs, int n);
  int n() const { return n_; }
  bool defined_at(ObjId X) const override;
  Term restrict(MorId f, const Term& x) const override;

 protected:
  ElementSet compute(ObjId X) const override;

 private:
  const CSystem& cs_;
  int n_;
};

PresheafPtr ob_n(const CSystem& cs, int n);
PresheafPtr ob_tilde_n(const CSystem& cs, int n);
// ∂ : Õb_n -> Ob_n, o |-> codomain of o.
PshMorPtr boundary(const CSystem& cs, int n);

// Sig(G)(Γ) = pairs (T, g), T in Ob_1(Γ), g in G(T); restriction along f is
// (f*T, G(q(f,T))(g)).
class SigPresheaf : public Presheaf {
 public:
  SigPresheaf(const CSystem& cs, PresheafPtr G);
  const PresheafPtr& inner() const { return G_; }
  bool defined_at(ObjId X) const override;
  Term restrict(MorId f, const Term& x) const override;

 protected:
  ElementSet compute(ObjId X) const override;

 private:
  const CSystem& cs_;
  PresheafPtr G_;
};

PresheafPtr sig(const CSystem& cs, PresheafPtr G);
// Sig(r)(T, g) = (T, r_T(g))
PshMorPtr sig(const CSystem& cs, PshMorPtr r);
PshMorPtr sig(const CSystem& cs, PshMorPtr r, PresheafPtr source, PresheafPtr target);
PresheafPtr sig_iter(const CSystem& cs, int n, PresheafPtr G);

// Shared presheaves, so the same objects (and their cached values) are
// reused across checks.
class CSystemPresheaves {
 public:
  explicit CSystemPresheaves(const CSystem& cs) : cs_(cs) {}
  const CSystem& csystem() const { return cs_; }
  PresheafPtr ob(int n) const;
  PresheafPtr ob_tilde(int n) const;
  // Sig^k(Ob_m), Sig^k(Õb_m)
  PresheafPtr sig_ob(int k, int m) const;
  PresheafPtr sig_ob_tilde(int k, int m) const;

 private:
  const CSystem& cs_;
  mutable std::mutex mu_;
  mutable std::map<std::tuple<int, int, int>, PresheafPtr> cache_;
};

// Sig(Ob_n) -> Ob_{n+1}, (T, X) |-> X, and its inverse X |-> (ft^n X, X).
PshMorPtr s_ob(const CSystemPresheaves& P, int n);
PshMorPtr s_ob_inverse(const CSystemPresheaves& P, int n);
// Sig(Õb_n) -> Õb_{n+1}, (T, o) |-> o, inverse o |-> (ft^n ∂o, o); n >= 1.
PshMorPtr s_ob_tilde(const CSystemPresheaves& P, int n);
PshMorPtr s_ob_tilde_inverse(const CSystemPresheaves& P, int n);
PshMorPtr boundary(const CSystemPresheaves& P, int n);
// Sig^n(Ob_m) -> Ob_{n+m}: identity for n = 0, Sig(previous) then SOb.
PshMorPtr s_ob_iter(const CSystemPresheaves& P, int n, int m);
// Direct inverse X |-> (ft^{n+m-1} X, (..., (ft^m X, X))).
PshMorPtr s_ob_iter_unpack(const CSystemPresheaves& P, int n, int m);

// Scope used by the C-system presheaf checks: objects of length <= N - 1.
CheckScope csystem_scope(const CSystem& cs);

// Ob_n/Õb_n presheaf laws, ∂ natural, Ob_0 singletons, Õb_0 empty.
LawReport check_ob_presheaves(const CSystem& cs, int max_n);
// Sig on presheaves and morphisms: presheaf laws, Sig(Id) = Id,
// Sig(r then s) = Sig(r) then Sig(s), naturality; for G in Ob_n, Õb_n, ∂.
LawReport check_sig_functor(const CSystem& cs, int max_n);
// The same with ∂_n replaced by tamper(n, ∂_n) before Sig is applied.
using BoundaryTamper = std::function<PshMorPtr(int, PshMorPtr)>;
LawReport check_sig_functor(const CSystem& cs, int max_n, const BoundaryTamper& tamper);
// SOb_n round trips and naturality, n <= max_n.
LawReport check_sob_iso(const CSystem& cs, int max_n);
// SÕb_n round trips, naturality and the boundary square, 1 <= n <= max_n.
LawReport check_sob_tilde_iso(const CSystem& cs, int max_n);
// SOb^n_m: identity at n = 0, equals SOb_m at n = 1, bijective and matches
// the direct unpacking, n + m <= max.
LawReport check_sob_iter(const CSystem& cs, int max_total);

}  // namespace csys
