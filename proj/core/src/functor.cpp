#include "csys/functor.hpp"

namespace csys {

ObjId TableFunctor::on_object(ObjId X) const {
  auto it = objs_.find(X);
  if (it == objs_.end()) throw UnknownId("functor has no value at object " + source().object_label(X));
  return it->second;
}

MorId TableFunctor::on_morphism(MorId f) const {
  auto it = mors_.find(f);
  if (it == mors_.end()) throw UnknownId("functor has no value at morphism " + source().morphism_label(f));
  return it->second;
}

LawReport check_functor(const Functor& F, const std::vector<ObjId>* scope) {
  LawReport rep("functor-laws");
  const Category& S = F.source();
  const Category& T = F.target();
  std::vector<ObjId> objs = scope ? *scope : S.objects();
  for (ObjId X : objs)
    rep.expect(F.on_morphism(S.identity(X)) == T.identity(F.on_object(X)), "identity",
               [&] { return "at " + S.object_label(X); });
  for (ObjId X : objs)
    for (ObjId Y : objs)
      for (MorId f : S.hom(X, Y)) {
        MorId Ff = F.on_morphism(f);
        rep.expect(T.dom(Ff) == F.on_object(X) && T.cod(Ff) == F.on_object(Y), "dom-cod",
                   [&] { return S.describe(f); });
        for (ObjId Z : objs)
          for (MorId g : S.hom(Y, Z))
            rep.expect(F.on_morphism(S.compose(f, g)) == T.compose(Ff, F.on_morphism(g)), "composition",
                       [&] { return S.describe(f) + " then " + S.describe(g); });
      }
  return rep;
}

MorId TableNatTrans::component(ObjId X) const {
  auto it = comps_.find(X);
  if (it == comps_.end()) throw UnknownId("transformation has no component at o" + std::to_string(X.v));
  return it->second;
}

MorId InverseNatTrans::component(ObjId X) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = cache_.find(X);
    if (it != cache_.end()) return it->second;
  }
  const Category& T = t_.source().target();
  MorId c = t_.component(X);
  auto inv = T.inverse(c);
  if (!inv)
    throw StructureError("component at " + t_.source().source().object_label(X) + " is not invertible: " + T.describe(c));
  std::lock_guard<std::mutex> lk(mu_);
  cache_.emplace(X, *inv);
  return *inv;
}

std::unique_ptr<NatTrans> nat_iso_inverse(const NatTrans& t) { return std::make_unique<InverseNatTrans>(t); }

LawReport check_nat_trans(const NatTrans& t, const std::vector<ObjId>* scope) {
  LawReport rep("naturality");
  const Category& S = t.source().source();
  const Category& T = t.source().target();
  std::vector<ObjId> objs = scope ? *scope : S.objects();
  for (ObjId X : objs) {
    MorId c = t.component(X);
    rep.expect(T.dom(c) == t.source().on_object(X) && T.cod(c) == t.target().on_object(X), "component-endpoints",
               [&] { return "at " + S.object_label(X); });
  }
  for (ObjId X : objs)
    for (ObjId Y : objs)
      for (MorId f : S.hom(X, Y))
        rep.expect(T.compose(t.component(X), t.target().on_morphism(f)) ==
                       T.compose(t.source().on_morphism(f), t.component(Y)),
                   "square", [&] { return S.describe(f); });
  return rep;
}

LawReport check_nat_inverse(const NatTrans& t, const NatTrans& s, const std::vector<ObjId>* scope) {
  LawReport rep("inverse");
  const Category& S = t.source().source();
  const Category& T = t.source().target();
  std::vector<ObjId> objs = scope ? *scope : S.objects();
  for (ObjId X : objs) {
    MorId a = t.component(X), b = s.component(X);
    rep.expect(T.compose(a, b) == T.identity(T.dom(a)), "left", [&] { return "at " + S.object_label(X); });
    rep.expect(T.compose(b, a) == T.identity(T.dom(b)), "right", [&] { return "at " + S.object_label(X); });
  }
  return rep;
}

}  // namespace csys
