#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "csys/presheaf.hpp"
#include "csys/structures.hpp"

namespace csys {

// Chosen pullback of p along F : X -> U.
//   apex -Q-> Ũ
//    |p       |p
//    X  -F->  U
struct Comprehension {
  ObjId apex;
  MorId p;
  MorId Q;
};

// A universe p : Ũ -> U in C with a chosen final object and a chosen
// comprehension square for every F : X -> U.
class Universe {
 public:
  Universe(const Category& C, MorId p, ObjId pt, std::string name);
  virtual ~Universe() = default;

  const Category& category() const { return C_; }
  const std::string& name() const { return name_; }
  MorId p() const { return p_; }
  ObjId U() const { return U_; }
  ObjId U_tilde() const { return Ut_; }
  ObjId pt() const { return pt_; }

  virtual Comprehension comprehension(MorId F) const = 0;
  ObjId ext(MorId F) const { return comprehension(F).apex; }
  // f *_F g : W -> (X;F) for f : W -> X, g : W -> Ũ with g o p = f o F.
  // The default searches hom(W, (X;F)).
  virtual MorId star(MorId f, MorId g, MorId F) const;
  // Q(f, F) : (X';f o F) -> (X;F), i.e. (p_{f o F} o f) *_F Q(f o F). Memoized.
  MorId q(MorId f, MorId F) const;
  // The unique X -> pt; throws StructureError if there is none or several.
  MorId to_terminal(ObjId X) const;

  // Shared, memoized Yo(Y) and D_p^n(Yo Y).
  PresheafPtr yo(ObjId Y) const;
  PresheafPtr d_yo(int n, ObjId Y) const;

 private:
  const Category& C_;
  MorId p_;
  ObjId U_, Ut_, pt_;
  std::string name_;
  mutable std::mutex mu_;
  mutable std::unordered_map<uint64_t, MorId> q_cache_;
  mutable std::unordered_map<uint64_t, PresheafPtr> d_cache_;
};

// Comprehensions given as a table, for universes on table categories.
class TableUniverse : public Universe {
 public:
  using Universe::Universe;
  void set(MorId F, Comprehension c) { table_[F] = c; }
  Comprehension comprehension(MorId F) const override;
  const std::unordered_map<MorId, Comprehension>& table() const { return table_; }

 private:
  std::unordered_map<MorId, Comprehension> table_;
};

// Comprehension squares commute and are pullbacks against `probes`;
// f *_F g satisfies its two defining equations.
LawReport check_universe(const Universe& u, const std::vector<ObjId>& objs, const std::vector<ObjId>& probes);
// Q(f o F) = Q(f,F) o Q(F); Q(Id,F) = Id; Q(f' o f, F) = Q(f', f o F) o Q(f, F).
LawReport check_q_identities(const Universe& u, const std::vector<ObjId>& objs);

// ---------------------------------------------------------------- D_p

// D_p(G)(X) = pairs (F, g) with F : X -> U and g in G((X;F)), elements
// Term::pair(mor F, g). Restriction along f : X' -> X sends (F, g) to
// (f o F, G(Q(f,F))(g)).
class DPresheaf : public Presheaf {
 public:
  DPresheaf(const Universe& u, PresheafPtr G);
  const PresheafPtr& inner() const { return G_; }
  Term restrict(MorId f, const Term& x) const override;

 protected:
  ElementSet compute(ObjId X) const override;

 private:
  const Universe& u_;
  PresheafPtr G_;
};

PresheafPtr d_on_presheaf(const Universe& u, PresheafPtr G);
// D_p(r)(F, g) = (F, r(g)) between D_p(r.source) and D_p(r.target).
PshMorPtr d_on_morphism(const Universe& u, PshMorPtr r);
PshMorPtr d_on_morphism(const Universe& u, PshMorPtr r, PresheafPtr source, PresheafPtr target);
PresheafPtr d_iter(const Universe& u, int n, PresheafPtr G);
PshMorPtr d_iter(const Universe& u, int n, PshMorPtr r);

// An element of D_p^n(X, Y) = D_p^n(Yo Y)(X). Depth 0 payload is mor(a) for
// a : X -> Y; depth n > 0 payload is pair(mor F, payload') with payload' of
// depth n-1 at ((X;F), Y).
struct DElement {
  int depth = 0;
  ObjId X, Y;
  Term payload;

  friend bool operator==(const DElement& a, const DElement& b) {
    return a.depth == b.depth && a.X == b.X && a.Y == b.Y && a.payload == b.payload;
  }
};

DElement d_element(int depth, ObjId X, ObjId Y, Term payload);
// Well-formedness of the nesting: every F lands in U from the right object,
// the bottom morphism goes into Y.
bool well_formed(const Universe& u, const DElement& d);
// f o (F, a) = (f o F, Q(f,F) o a) for f : X' -> X.
DElement circ_left(const Universe& u, MorId f, const DElement& d);
// (F, a) o g = (F, a o g) for g : Y -> Y'.
DElement circ_right(const Universe& u, const DElement& d, MorId g);
// All of D_p^n(X, Y) in canonical order.
std::vector<DElement> d_elements(const Universe& u, int n, ObjId X, ObjId Y);

// The five o-laws, both recursive clauses, and agreement with the generic
// D_p^n(Yo Y) actions, for X, X', X'', Y, Y', Y'' in `objs`, depth <= max_depth.
LawReport check_circ_laws(const Universe& u, const std::vector<ObjId>& objs, int max_depth);
LawReport check_circ_oracle(const Universe& u, const std::vector<ObjId>& objs, int max_depth);
// D_p presheaf laws and functoriality on morphisms for the fixture family
// Yo(Y), Yo(g), depth <= max_depth.
LawReport check_dp_presheaf(const Universe& u, const std::vector<ObjId>& objs, int max_depth);

}  // namespace csys
