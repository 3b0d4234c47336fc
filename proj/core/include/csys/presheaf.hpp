#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "csys/functor.hpp"

namespace csys {

using ElementSet = std::vector<Term>;  // sorted, duplicate free

// Contravariant set-valued functor. restrict(f, x) is G(f)(x) for
// f : X -> Y and x in G(Y); it lands in G(X).
class Presheaf {
 public:
  Presheaf(const Category& base, std::string name) : base_(base), name_(std::move(name)) {}
  virtual ~Presheaf() = default;

  const Category& base() const { return base_; }
  const std::string& name() const { return name_; }

  // Objects where the value is materialized (truncated C-systems).
  virtual bool defined_at(ObjId) const { return true; }
  const ElementSet& at(ObjId X) const;
  bool contains(ObjId X, const Term& x) const;
  virtual Term restrict(MorId f, const Term& x) const = 0;

 protected:
  virtual ElementSet compute(ObjId X) const = 0;
  void require_defined(ObjId X) const;

 private:
  const Category& base_;
  std::string name_;
  mutable std::mutex mu_;
  mutable std::unordered_map<ObjId, std::unique_ptr<ElementSet>> cache_;
};
using PresheafPtr = std::shared_ptr<const Presheaf>;

class PresheafMorphism {
 public:
  PresheafMorphism(PresheafPtr source, PresheafPtr target, std::string name)
      : source_(std::move(source)), target_(std::move(target)), name_(std::move(name)) {}
  virtual ~PresheafMorphism() = default;
  const PresheafPtr& source() const { return source_; }
  const PresheafPtr& target() const { return target_; }
  const std::string& name() const { return name_; }
  virtual Term apply(ObjId X, const Term& x) const = 0;

 private:
  PresheafPtr source_, target_;
  std::string name_;
};
using PshMorPtr = std::shared_ptr<const PresheafMorphism>;

// ---------------------------------------------------------------- instances

class EmptyPresheaf : public Presheaf {
 public:
  explicit EmptyPresheaf(const Category& C) : Presheaf(C, "empty") {}
  Term restrict(MorId, const Term& x) const override { return x; }

 protected:
  ElementSet compute(ObjId) const override { return {}; }
};

// Yo(Y): hom(-, Y), elements Term::mor.
class YonedaPresheaf : public Presheaf {
 public:
  YonedaPresheaf(const Category& C, ObjId Y);
  ObjId represented() const { return Y_; }
  Term restrict(MorId f, const Term& h) const override;

 protected:
  ElementSet compute(ObjId X) const override;

 private:
  ObjId Y_;
};

PresheafPtr yoneda(const Category& C, ObjId Y);
// Yo(g): h |-> h o g.
PshMorPtr yoneda_on_morphism(const Category& C, MorId g);

// Phi°(G): X |-> G(Phi X).
class PrecomposePresheaf : public Presheaf {
 public:
  PrecomposePresheaf(const Functor& F, PresheafPtr G);
  bool defined_at(ObjId X) const override { return G_->defined_at(F_.on_object(X)); }
  Term restrict(MorId f, const Term& x) const override { return G_->restrict(F_.on_morphism(f), x); }
  const Functor& functor() const { return F_; }
  const PresheafPtr& inner() const { return G_; }

 protected:
  ElementSet compute(ObjId X) const override { return G_->at(F_.on_object(X)); }

 private:
  const Functor& F_;
  PresheafPtr G_;
};

PresheafPtr precompose(const Functor& F, PresheafPtr G);
PshMorPtr precompose(const Functor& F, PshMorPtr r);

PshMorPtr identity_morphism(PresheafPtr G);
// r then s
PshMorPtr compose_morphisms(PshMorPtr r, PshMorPtr s);

// Morphism given by a function on (object, element).
class LambdaMorphism : public PresheafMorphism {
 public:
  using Fn = std::function<Term(ObjId, const Term&)>;
  LambdaMorphism(PresheafPtr s, PresheafPtr t, std::string name, Fn fn)
      : PresheafMorphism(std::move(s), std::move(t), std::move(name)), fn_(std::move(fn)) {}
  Term apply(ObjId X, const Term& x) const override { return fn_(X, x); }

 private:
  Fn fn_;
};

// Componentwise inverse of a bijective morphism, tabulated on demand.
// A non-bijective component raises StructureError naming the object.
class InverseMorphism : public PresheafMorphism {
 public:
  explicit InverseMorphism(PshMorPtr r);
  Term apply(ObjId X, const Term& y) const override;

 private:
  PshMorPtr r_;
  mutable std::mutex mu_;
  mutable std::unordered_map<ObjId, std::map<Term, Term>> tables_;
};

PshMorPtr presheaf_iso_inverse(PshMorPtr r);

// A copy of r whose value at one (object, element) is replaced.
class OverrideMorphism : public PresheafMorphism {
 public:
  OverrideMorphism(PshMorPtr r, ObjId X, Term x, Term value);
  Term apply(ObjId X, const Term& x) const override;

 private:
  PshMorPtr r_;
  ObjId X_;
  Term x_, value_;
};

// ---------------------------------------------------------------- checks

// Scope: the objects quantified over; morphisms are those among them.
// Objects where a presheaf is not defined are skipped.
struct CheckScope {
  std::vector<ObjId> objects;
  bool composition = true;  // also check the two-morphism laws
};

CheckScope full_scope(const Category& C);

LawReport check_presheaf(const Presheaf& G, const CheckScope& scope);
LawReport check_natural(const PresheafMorphism& r, const CheckScope& scope);
LawReport check_inverse_pair(const PresheafMorphism& r, const PresheafMorphism& s, const CheckScope& scope);
// r and s agree valuewise on the source elements.
LawReport check_equal(const PresheafMorphism& r, const PresheafMorphism& s, const CheckScope& scope,
                      const std::string& law = "agree");

}  // namespace csys
