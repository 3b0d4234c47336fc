#include "csys/presheaf.hpp"

#include <algorithm>

namespace csys {

void Presheaf::require_defined(ObjId X) const {
  if (!defined_at(X))
    throw TruncationError(name_ + " is not materialized at " + base_.object_label(X));
}

const ElementSet& Presheaf::at(ObjId X) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = cache_.find(X);
    if (it != cache_.end()) return *it->second;
  }
  require_defined(X);
  auto v = std::make_unique<ElementSet>(compute(X));
  std::sort(v->begin(), v->end());
  v->erase(std::unique(v->begin(), v->end()), v->end());
  std::lock_guard<std::mutex> lk(mu_);
  auto [it, inserted] = cache_.emplace(X, std::move(v));
  return *it->second;
}

bool Presheaf::contains(ObjId X, const Term& x) const {
  const auto& s = at(X);
  return std::binary_search(s.begin(), s.end(), x);
}

YonedaPresheaf::YonedaPresheaf(const Category& C, ObjId Y)
    : Presheaf(C, "Yo(" + C.object_label(Y) + ")"), Y_(Y) {}

Term YonedaPresheaf::restrict(MorId f, const Term& h) const { return Term::mor(base().compose(f, h.as_mor())); }

ElementSet YonedaPresheaf::compute(ObjId X) const {
  ElementSet out;
  for (MorId h : base().hom(X, Y_)) out.push_back(Term::mor(h));
  return out;
}

PresheafPtr yoneda(const Category& C, ObjId Y) { return std::make_shared<YonedaPresheaf>(C, Y); }

PshMorPtr yoneda_on_morphism(const Category& C, MorId g) {
  const Category* Cp = &C;
  return std::make_shared<LambdaMorphism>(yoneda(C, C.dom(g)), yoneda(C, C.cod(g)), "Yo(" + C.morphism_label(g) + ")",
                                          [Cp, g](ObjId, const Term& h) { return Term::mor(Cp->compose(h.as_mor(), g)); });
}

PrecomposePresheaf::PrecomposePresheaf(const Functor& F, PresheafPtr G)
    : Presheaf(F.source(), "pre(" + G->name() + ")"), F_(F), G_(std::move(G)) {}

PresheafPtr precompose(const Functor& F, PresheafPtr G) { return std::make_shared<PrecomposePresheaf>(F, std::move(G)); }

PshMorPtr precompose(const Functor& F, PshMorPtr r) {
  const Functor* Fp = &F;
  auto s = precompose(F, r->source());
  auto t = precompose(F, r->target());
  return std::make_shared<LambdaMorphism>(s, t, "pre(" + r->name() + ")",
                                          [Fp, r](ObjId X, const Term& x) { return r->apply(Fp->on_object(X), x); });
}

PshMorPtr identity_morphism(PresheafPtr G) {
  return std::make_shared<LambdaMorphism>(G, G, "Id(" + G->name() + ")", [](ObjId, const Term& x) { return x; });
}

PshMorPtr compose_morphisms(PshMorPtr r, PshMorPtr s) {
  return std::make_shared<LambdaMorphism>(r->source(), s->target(), r->name() + ";" + s->name(),
                                          [r, s](ObjId X, const Term& x) { return s->apply(X, r->apply(X, x)); });
}

InverseMorphism::InverseMorphism(PshMorPtr r)
    : PresheafMorphism(r->target(), r->source(), "inv(" + r->name() + ")"), r_(std::move(r)) {}

Term InverseMorphism::apply(ObjId X, const Term& y) const {
  std::unique_lock<std::mutex> lk(mu_);
  auto it = tables_.find(X);
  if (it == tables_.end()) {
    lk.unlock();
    std::map<Term, Term> table;
    const auto& src = r_->source()->at(X);
    for (const auto& x : src) {
      Term v = r_->apply(X, x);
      if (!table.emplace(v, x).second)
        throw StructureError(r_->name() + " is not injective at " + r_->source()->base().object_label(X) + " on " + v.str());
    }
    if (table.size() != r_->target()->at(X).size())
      throw StructureError(r_->name() + " is not surjective at " + r_->source()->base().object_label(X));
    lk.lock();
    it = tables_.emplace(X, std::move(table)).first;
  }
  auto jt = it->second.find(y);
  if (jt == it->second.end()) throw StructureError("element " + y.str() + " is not in the image of " + r_->name());
  return jt->second;
}

PshMorPtr presheaf_iso_inverse(PshMorPtr r) { return std::make_shared<InverseMorphism>(std::move(r)); }

OverrideMorphism::OverrideMorphism(PshMorPtr r, ObjId X, Term x, Term value)
    : PresheafMorphism(r->source(), r->target(), r->name() + "*"), r_(std::move(r)), X_(X), x_(std::move(x)),
      value_(std::move(value)) {}

Term OverrideMorphism::apply(ObjId X, const Term& x) const {
  if (X == X_ && x == x_) return value_;
  return r_->apply(X, x);
}

CheckScope full_scope(const Category& C) { return CheckScope{C.objects(), true}; }

namespace {

std::vector<ObjId> defined(const Presheaf& G, const std::vector<ObjId>& objs) {
  std::vector<ObjId> out;
  for (ObjId X : objs)
    if (G.defined_at(X)) out.push_back(X);
  return out;
}

}  // namespace

LawReport check_presheaf(const Presheaf& G, const CheckScope& scope) {
  LawReport rep("presheaf-laws");
  const Category& C = G.base();
  auto objs = defined(G, scope.objects);
  for (ObjId X : objs) {
    MorId id = C.identity(X);
    for (const auto& x : G.at(X))
      rep.expect(G.restrict(id, x) == x, "identity", [&] { return G.name() + " at " + C.object_label(X) + " on " + x.str(); });
  }
  for (ObjId X : objs)
    for (ObjId Y : objs)
      for (MorId f : C.hom(X, Y))
        for (const auto& y : G.at(Y)) {
          Term r = G.restrict(f, y);
          rep.expect(G.contains(X, r), "closure", [&] { return G.name() + " along " + C.describe(f) + " on " + y.str(); });
        }
  if (!scope.composition) return rep;
  for (ObjId X : objs)
    for (ObjId Y : objs)
      for (MorId f : C.hom(X, Y))
        for (ObjId Z : objs)
          for (MorId g : C.hom(Y, Z)) {
            MorId fg = C.compose(f, g);
            for (const auto& z : G.at(Z))
              rep.expect(G.restrict(fg, z) == G.restrict(f, G.restrict(g, z)), "composition", [&] {
                return G.name() + " along " + C.describe(f) + " then " + C.describe(g) + " on " + z.str();
              });
          }
  return rep;
}

LawReport check_natural(const PresheafMorphism& r, const CheckScope& scope) {
  LawReport rep("naturality");
  const Presheaf& S = *r.source();
  const Presheaf& T = *r.target();
  const Category& C = S.base();
  std::vector<ObjId> objs;
  for (ObjId X : scope.objects)
    if (S.defined_at(X) && T.defined_at(X)) objs.push_back(X);
  for (ObjId X : objs)
    for (const auto& x : S.at(X)) {
      Term v = r.apply(X, x);
      rep.expect(T.contains(X, v), "component-lands", [&] { return r.name() + " at " + C.object_label(X) + " on " + x.str(); });
    }
  for (ObjId X : objs)
    for (ObjId Y : objs)
      for (MorId f : C.hom(X, Y))
        for (const auto& y : S.at(Y))
          rep.expect(r.apply(X, S.restrict(f, y)) == T.restrict(f, r.apply(Y, y)), "square",
                     [&] { return r.name() + " along " + C.describe(f) + " on " + y.str(); });
  return rep;
}

LawReport check_inverse_pair(const PresheafMorphism& r, const PresheafMorphism& s, const CheckScope& scope) {
  LawReport rep("round-trip");
  const Presheaf& S = *r.source();
  const Presheaf& T = *r.target();
  const Category& C = S.base();
  for (ObjId X : scope.objects) {
    if (!S.defined_at(X) || !T.defined_at(X)) continue;
    for (const auto& x : S.at(X))
      rep.expect(s.apply(X, r.apply(X, x)) == x, "source-round-trip",
                 [&] { return r.name() + " at " + C.object_label(X) + " on " + x.str(); });
    for (const auto& y : T.at(X))
      rep.expect(r.apply(X, s.apply(X, y)) == y, "target-round-trip",
                 [&] { return s.name() + " at " + C.object_label(X) + " on " + y.str(); });
  }
  return rep;
}

LawReport check_equal(const PresheafMorphism& r, const PresheafMorphism& s, const CheckScope& scope,
                      const std::string& law) {
  LawReport rep(law);
  const Presheaf& S = *r.source();
  const Category& C = S.base();
  for (ObjId X : scope.objects) {
    if (!S.defined_at(X)) continue;
    for (const auto& x : S.at(X)) {
      Term a = r.apply(X, x), b = s.apply(X, x);
      rep.expect(a == b, law.c_str(), [&] {
        return "at " + C.object_label(X) + " on " + x.str() + ": " + a.str() + " vs " + b.str();
      });
    }
  }
  return rep;
}

}  // namespace csys
