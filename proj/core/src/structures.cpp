#include "csys/structures.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace csys {

std::vector<MorId> mediators(const Category& C, ObjId A, ObjId apex, MorId pr1, MorId pr2, MorId a, MorId b) {
  std::vector<MorId> out;
  for (MorId m : C.hom(A, apex))
    if (C.compose(m, pr1) == a && C.compose(m, pr2) == b) out.push_back(m);
  return out;
}

MorId unique_mediator(const Category& C, ObjId A, ObjId apex, MorId pr1, MorId pr2, MorId a, MorId b) {
  auto ms = mediators(C, A, apex, pr1, pr2, a, b);
  if (ms.size() != 1)
    throw StructureError(std::to_string(ms.size()) + " mediators from " + C.object_label(A) + " to " +
                         C.object_label(apex) + " for (" + C.morphism_label(a) + ", " + C.morphism_label(b) + ")");
  return ms.front();
}

std::string pullback_failure(const Category& C, ObjId apex, MorId pr1, MorId pr2, MorId f, MorId g,
                             const std::vector<ObjId>& probes) {
  if (C.compose(pr1, f) != C.compose(pr2, g)) return "square does not commute";
  ObjId X = C.cod(pr1), Y = C.cod(pr2);
  for (ObjId W : probes) {
    std::set<std::pair<uint32_t, uint32_t>> image;
    const auto& h = C.hom(W, apex);
    for (MorId m : h) image.emplace(C.compose(m, pr1).v, C.compose(m, pr2).v);
    if (image.size() != h.size()) return "two mediators from " + C.object_label(W);
    for (MorId d1 : C.hom(W, X))
      for (MorId d2 : C.hom(W, Y))
        if (C.compose(d1, f) == C.compose(d2, g) && !image.count({d1.v, d2.v}))
          return "no mediator from " + C.object_label(W) + " for (" + C.morphism_label(d1) + ", " + C.morphism_label(d2) + ")";
  }
  return {};
}

MorId BinaryProducts::pair(MorId a, MorId b) const {
  const Category& C = category();
  ProductDiagram d = product(C.cod(a), C.cod(b));
  return unique_mediator(C, C.dom(a), d.apex, d.pr1, d.pr2, a, b);
}

MorId BinaryProducts::times(MorId a, MorId b) const {
  const Category& C = category();
  ProductDiagram d = product(C.dom(a), C.dom(b));
  return pair(C.compose(d.pr1, a), C.compose(d.pr2, b));
}

MorId CartesianClosed::adj(MorId u, ObjId X, ObjId Y) const {
  const Category& C = category();
  return C.compose(bp_.times(u, C.identity(X)), eval(X, Y));
}

MorId CartesianClosed::adj_inverse(ObjId W, ObjId X, MorId m) const {
  const Category& C = category();
  ObjId Y = C.cod(m);
  std::optional<MorId> found;
  for (MorId u : C.hom(W, hom_object(X, Y)))
    if (adj(u, X, Y) == m) {
      if (found) throw StructureError("adj is not injective at " + C.describe(m));
      found = u;
    }
  if (!found) throw StructureError("no adjoint preimage of " + C.describe(m));
  return *found;
}

MorId CartesianClosed::hom_pre(MorId a, ObjId Y) const {
  const Category& C = category();
  ObjId X = C.dom(a), X2 = C.cod(a);
  ObjId H2 = hom_object(X2, Y);
  MorId m = C.compose(bp_.times(C.identity(H2), a), eval(X2, Y));
  return adj_inverse(H2, X, m);
}

MorId Pullbacks::mediate(MorId f, MorId g, MorId d1, MorId d2) const {
  auto d = pullback(f, g);
  if (!d) throw StructureError("no chosen pullback for " + C_.describe(f) + ", " + C_.describe(g));
  return unique_mediator(C_, C_.dom(d1), d->apex, d->pr1, d->pr2, d1, d2);
}

std::optional<PullbackDiagram> TablePullbacks::pullback(MorId f, MorId g) const {
  auto it = table_.find(pack(f.v, g.v));
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

// ------------------------------------------------------------------ slice

SliceCategory::SliceCategory(const Category& C, ObjId Z) : C_(C), Z_(Z) {}

ObjId SliceCategory::object_of(ObjId X, MorId f) const {
  if (C_.dom(f) != X || C_.cod(f) != Z_) throw StructureError("not an object over Z: " + C_.describe(f));
  std::lock_guard<std::mutex> lk(mu_);
  uint64_t key = pack(X.v, f.v);
  auto it = obj_index_.find(key);
  if (it != obj_index_.end()) return it->second;
  ObjId id(static_cast<uint32_t>(objs_.size()));
  objs_.push_back({X, f});
  obj_index_.emplace(key, id);
  return id;
}

MorId SliceCategory::morphism_of(MorId a, MorId g) const {
  if (C_.cod(a) != C_.dom(g)) throw CompositionError("slice morphism legs do not compose: " + C_.describe(a) + ", " + C_.describe(g));
  ObjId d = object_of(C_.dom(a), C_.compose(a, g));
  ObjId c = object_of(C_.dom(g), g);
  std::lock_guard<std::mutex> lk(mu_);
  uint64_t key = pack(a.v, g.v);
  auto it = mor_index_.find(key);
  if (it != mor_index_.end()) return it->second;
  MorId id(static_cast<uint32_t>(mors_.size()));
  mors_.push_back({a, g, d, c});
  mor_index_.emplace(key, id);
  return id;
}

ObjId SliceCategory::underlying(ObjId XF) const {
  std::lock_guard<std::mutex> lk(mu_);
  return objs_.at(XF.v).X;
}

MorId SliceCategory::structure(ObjId XF) const {
  std::lock_guard<std::mutex> lk(mu_);
  return objs_.at(XF.v).f;
}

MorId SliceCategory::underlying(MorId ag) const {
  std::lock_guard<std::mutex> lk(mu_);
  return mors_.at(ag.v).a;
}

std::string SliceCategory::name() const { return C_.name() + "/" + C_.object_label(Z_); }

std::vector<ObjId> SliceCategory::objects() const {
  std::vector<ObjId> out;
  for (ObjId X : C_.objects())
    for (MorId f : C_.hom(X, Z_)) out.push_back(object_of(X, f));
  return out;
}

ObjId SliceCategory::dom(MorId f) const {
  std::lock_guard<std::mutex> lk(mu_);
  return mors_.at(f.v).dom;
}

ObjId SliceCategory::cod(MorId f) const {
  std::lock_guard<std::mutex> lk(mu_);
  return mors_.at(f.v).cod;
}

MorId SliceCategory::identity(ObjId X) const {
  ObjId x = underlying(X);
  return morphism_of(C_.identity(x), structure(X));
}

const std::vector<MorId>& SliceCategory::hom(ObjId X, ObjId Y) const {
  uint64_t key = pack(X.v, Y.v);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = homs_.find(key);
    if (it != homs_.end()) return *it->second;
  }
  ObjId x = underlying(X), y = underlying(Y);
  MorId f = structure(X), g = structure(Y);
  auto v = std::make_unique<std::vector<MorId>>();
  for (MorId a : C_.hom(x, y))
    if (C_.compose(a, g) == f) v->push_back(morphism_of(a, g));
  std::lock_guard<std::mutex> lk(mu_);
  auto [it, ins] = homs_.emplace(key, std::move(v));
  return *it->second;
}

MorId SliceCategory::compose(MorId f, MorId g) const {
  if (cod(f) != dom(g))
    throw CompositionError("slice composite undefined: " + morphism_label(f) + " then " + morphism_label(g));
  MorId a = underlying(f), b = underlying(g);
  return morphism_of(C_.compose(a, b), structure(cod(g)));
}

std::string SliceCategory::object_label(ObjId X) const {
  return "(" + C_.object_label(underlying(X)) + "," + C_.morphism_label(structure(X)) + ")";
}

std::string SliceCategory::morphism_label(MorId f) const {
  MorId a = underlying(f);
  return C_.morphism_label(a) + "^" + C_.morphism_label(structure(cod(f)));
}

ProductDiagram SlicePullbackProducts::product(ObjId X, ObjId Y) const {
  const Category& C = S_.base();
  MorId f = S_.structure(X), g = S_.structure(Y);
  auto d = pb_.pullback(f, g);
  if (!d) throw StructureError("no chosen pullback for " + C.describe(f) + ", " + C.describe(g));
  MorId s = C.compose(d->pr1, f);
  ObjId apex = S_.object_of(d->apex, s);
  (void)apex;
  return {apex, S_.morphism_of(d->pr1, f), S_.morphism_of(d->pr2, g)};
}

MorId SlicePullbackProducts::pair(MorId a, MorId b) const {
  ObjId X = S_.cod(a), Y = S_.cod(b);
  MorId m = pb_.mediate(S_.structure(X), S_.structure(Y), S_.underlying(a), S_.underlying(b));
  ProductDiagram d = product(X, Y);
  return S_.morphism_of(m, S_.structure(d.apex));
}

// ------------------------------------------------------------------ checks

LawReport check_products(const BinaryProducts& bp, const std::vector<ObjId>& objs, const std::vector<ObjId>& probes) {
  LawReport rep("product-universal");
  const Category& C = bp.category();
  for (ObjId X : objs)
    for (ObjId Y : objs) {
      ProductDiagram d;
      try {
        d = bp.product(X, Y);
      } catch (const StructureError& e) {
        rep.fail("product-defined", e.what());
        continue;
      }
      bool ends = C.dom(d.pr1) == d.apex && C.dom(d.pr2) == d.apex && C.cod(d.pr1) == X && C.cod(d.pr2) == Y;
      if (!rep.expect(ends, "projection-endpoints", [&] { return C.object_label(X) + " x " + C.object_label(Y); }))
        continue;
      for (ObjId A : probes) {
        std::set<std::pair<uint32_t, uint32_t>> image;
        const auto& h = C.hom(A, d.apex);
        for (MorId m : h) image.emplace(C.compose(m, d.pr1).v, C.compose(m, d.pr2).v);
        size_t want = C.hom(A, X).size() * C.hom(A, Y).size();
        rep.expect(image.size() == h.size(), "uniqueness",
                   [&] { return "two cones agree from " + C.object_label(A) + " into " + C.object_label(d.apex); });
        rep.expect(image.size() == want, "existence", [&] {
          return std::to_string(image.size()) + " of " + std::to_string(want) + " cones from " + C.object_label(A) +
                 " over " + C.object_label(X) + ", " + C.object_label(Y);
        });
        for (MorId a : C.hom(A, X))
          for (MorId b : C.hom(A, Y)) {
            MorId m = bp.pair(a, b);
            rep.expect(C.compose(m, d.pr1) == a && C.compose(m, d.pr2) == b, "pairing",
                       [&] { return C.describe(a) + ", " + C.describe(b); });
          }
      }
    }
  return rep;
}

LawReport check_pullbacks(const Pullbacks& pb, const std::vector<ObjId>& objs, const std::vector<ObjId>& probes) {
  LawReport rep("pullback-universal");
  const Category& C = pb.category();
  uint64_t undefined = 0;
  for (ObjId Z : objs)
    for (ObjId X : objs)
      for (MorId f : C.hom(X, Z))
        for (ObjId Y : objs)
          for (MorId g : C.hom(Y, Z)) {
            auto d = pb.pullback(f, g);
            if (!d) {
              ++undefined;
              continue;
            }
            auto cospan = [&] { return C.describe(f) + ", " + C.describe(g); };
            bool ends = C.dom(d->pr1) == d->apex && C.dom(d->pr2) == d->apex && C.cod(d->pr1) == X && C.cod(d->pr2) == Y;
            if (!rep.expect(ends, "projection-endpoints", cospan)) continue;
            if (!rep.expect(C.compose(d->pr1, f) == C.compose(d->pr2, g), "square-commutes", cospan)) continue;
            for (ObjId W : probes) {
              const auto& h = C.hom(W, d->apex);
              std::set<std::pair<uint32_t, uint32_t>> image;
              for (MorId m : h) image.emplace(C.compose(m, d->pr1).v, C.compose(m, d->pr2).v);
              size_t want = 0;
              for (MorId d1 : C.hom(W, X))
                for (MorId d2 : C.hom(W, Y))
                  if (C.compose(d1, f) == C.compose(d2, g)) ++want;
              rep.expect(image.size() == h.size(), "uniqueness", [&] { return cospan() + " from " + C.object_label(W); });
              rep.expect(image.size() == want, "existence", [&] { return cospan() + " from " + C.object_label(W); });
            }
          }
  if (undefined) rep.note(std::to_string(undefined) + " cospans without a chosen pullback");
  return rep;
}

LawReport check_ccc(const CartesianClosed& ccc, const std::vector<ObjId>& objs, const std::vector<ObjId>& probes) {
  LawReport rep("ccc-laws");
  const Category& C = ccc.category();
  const BinaryProducts& bp = ccc.products();
  for (ObjId X : objs)
    for (ObjId Y : objs) {
      ObjId H = ccc.hom_object(X, Y);
      rep.expect(ccc.hom_post(X, C.identity(Y)) == C.identity(H), "hom-identity",
                 [&] { return C.object_label(X) + ", " + C.object_label(Y); });
      MorId ev = ccc.eval(X, Y);
      rep.expect(C.dom(ev) == bp.product(H, X).apex && C.cod(ev) == Y, "eval-endpoints",
                 [&] { return C.object_label(X) + ", " + C.object_label(Y); });
      for (ObjId Y2 : objs)
        for (MorId b : C.hom(Y, Y2)) {
          MorId hb = ccc.hom_post(X, b);
          rep.expect(C.dom(hb) == H && C.cod(hb) == ccc.hom_object(X, Y2), "hom-endpoints", [&] { return C.describe(b); });
          // (Hom(X,b) x Id) o ev = ev o b
          rep.expect(C.compose(bp.times(hb, C.identity(X)), ccc.eval(X, Y2)) == C.compose(ev, b), "eval-square",
                     [&] { return C.object_label(X) + ", " + C.describe(b); });
          for (ObjId Y3 : objs)
            for (MorId b2 : C.hom(Y2, Y3))
              rep.expect(ccc.hom_post(X, C.compose(b, b2)) == C.compose(hb, ccc.hom_post(X, b2)), "hom-composition",
                         [&] { return C.object_label(X) + ", " + C.describe(b) + " then " + C.describe(b2); });
        }
      for (ObjId W : probes) {
        std::set<uint32_t> image;
        const auto& us = C.hom(W, H);
        ObjId WX = bp.product(W, X).apex;
        for (MorId u : us) {
          MorId m = ccc.adj(u, X, Y);
          image.insert(m.v);
          rep.expect(ccc.adj_inverse(W, X, m) == u, "adj-inverse", [&] { return C.describe(u); });
        }
        size_t want = C.hom(WX, Y).size();
        rep.expect(image.size() == us.size() && image.size() == want, "adj-bijective", [&] {
          return C.object_label(W) + ", " + C.object_label(X) + ", " + C.object_label(Y) + ": " +
                 std::to_string(image.size()) + " adjoints, " + std::to_string(us.size()) + " sources, " +
                 std::to_string(want) + " targets";
        });
      }
    }
  return rep;
}

std::pair<MorId, MorId> product_compare_iso(const Category& C, const ProductDiagram& d1, const ProductDiagram& d2) {
  MorId i12 = unique_mediator(C, d1.apex, d2.apex, d2.pr1, d2.pr2, d1.pr1, d1.pr2);
  MorId i21 = unique_mediator(C, d2.apex, d1.apex, d1.pr1, d1.pr2, d2.pr1, d2.pr2);
  if (C.compose(i12, i21) != C.identity(d1.apex) || C.compose(i21, i12) != C.identity(d2.apex))
    throw StructureError("comparison morphisms are not inverse: " + C.describe(i12));
  return {i12, i21};
}

bool product_compare_square(const BinaryProducts& p1, const BinaryProducts& p2, MorId a, MorId b) {
  const Category& C = p1.category();
  ObjId X2 = C.dom(a), X = C.cod(a), Y2 = C.dom(b), Y = C.cod(b);
  MorId i = product_compare_iso(C, p1.product(X, Y), p2.product(X, Y)).first;
  MorId i2 = product_compare_iso(C, p1.product(X2, Y2), p2.product(X2, Y2)).first;
  return C.compose(p1.times(a, b), i) == C.compose(i2, p2.times(a, b));
}

LawReport check_product_compare_natural(const BinaryProducts& p1, const BinaryProducts& p2,
                                        const std::vector<ObjId>& objs) {
  LawReport rep("product-compare-natural");
  const Category& C = p1.category();
  uint64_t skipped = 0;
  for (ObjId X : objs)
    for (ObjId Y : objs)
      for (ObjId X2 : objs)
        for (ObjId Y2 : objs)
          for (MorId a : C.hom(X2, X))
            for (MorId b : C.hom(Y2, Y)) {
              bool ok;
              try {
                ok = product_compare_square(p1, p2, a, b);
              } catch (const StructureError&) {
                ++skipped;
                continue;
              }
              rep.expect(ok, "square", [&] { return C.describe(a) + ", " + C.describe(b); });
            }
  if (skipped) rep.note(std::to_string(skipped) + " pairs outside the defined products");
  return rep;
}

LawReport check_hom_contravariant(const CartesianClosed& ccc, const std::vector<ObjId>& objs) {
  LawReport rep("hom-contravariant");
  const Category& C = ccc.category();
  for (ObjId X : objs)
    for (ObjId Y : objs)
      rep.expect(ccc.hom_pre(C.identity(X), Y) == C.identity(ccc.hom_object(X, Y)), "identity",
                 [&] { return C.object_label(X) + ", " + C.object_label(Y); });
  for (ObjId Y : objs)
    for (ObjId X : objs)
      for (ObjId X2 : objs)
        for (MorId a : C.hom(X, X2)) {
          MorId ha = ccc.hom_pre(a, Y);
          for (ObjId X3 : objs)
            for (MorId a2 : C.hom(X2, X3))
              rep.expect(ccc.hom_pre(C.compose(a, a2), Y) == C.compose(ccc.hom_pre(a2, Y), ha), "composition",
                         [&] { return C.describe(a) + " then " + C.describe(a2) + " into " + C.object_label(Y); });
          // Hom(X',b) o Hom(a,Y') = Hom(a,Y) o Hom(X,b)
          for (ObjId Y2 : objs)
            for (MorId b : C.hom(Y, Y2)) {
              MorId lhs = C.compose(ccc.hom_post(X2, b), ccc.hom_pre(a, Y2));
              MorId rhs = C.compose(ha, ccc.hom_post(X, b));
              rep.expect(lhs == rhs, "bifunctor-square", [&] { return C.describe(a) + ", " + C.describe(b); });
            }
        }
  return rep;
}

LawReport check_hom_eval_square(const CartesianClosed& ccc, const std::vector<ObjId>& objs) {
  LawReport rep("hom-eval-square");
  const Category& C = ccc.category();
  const BinaryProducts& bp = ccc.products();
  for (ObjId Y : objs)
    for (ObjId X : objs)
      for (ObjId X2 : objs)
        for (MorId a : C.hom(X, X2)) {
          MorId lhs = C.compose(bp.times(C.identity(ccc.hom_object(X2, Y)), a), ccc.eval(X2, Y));
          MorId rhs = C.compose(bp.times(ccc.hom_pre(a, Y), C.identity(X)), ccc.eval(X, Y));
          rep.expect(lhs == rhs, "square", [&] { return C.describe(a) + " into " + C.object_label(Y); });
        }
  return rep;
}

LawReport check_adj_laws(const CartesianClosed& ccc, const std::vector<ObjId>& objs, const std::vector<ObjId>& probes) {
  LawReport rep("adj-laws");
  const Category& C = ccc.category();
  const BinaryProducts& bp = ccc.products();
  for (ObjId W : probes)
    for (ObjId X : objs)
      for (ObjId Y : objs)
        for (MorId r : C.hom(W, ccc.hom_object(X, Y))) {
          MorId ar = ccc.adj(r, X, Y);
          // (1) post-composition
          for (ObjId Y2 : objs)
            for (MorId b : C.hom(Y, Y2))
              rep.expect(ccc.adj(C.compose(r, ccc.hom_post(X, b)), X, Y2) == C.compose(ar, b), "post",
                         [&] { return C.describe(r) + ", " + C.describe(b); });
          // (2) pre-composition on the exponent
          for (ObjId X0 : objs)
            for (MorId a : C.hom(X0, X))
              rep.expect(ccc.adj(C.compose(r, ccc.hom_pre(a, Y)), X0, Y) ==
                             C.compose(bp.times(C.identity(W), a), ar),
                         "pre", [&] { return C.describe(r) + ", " + C.describe(a); });
          // (3) reindexing along c : W' -> W
          for (ObjId W0 : probes)
            for (MorId c : C.hom(W0, W))
              rep.expect(ccc.adj(C.compose(c, r), X, Y) == C.compose(bp.times(c, C.identity(X)), ar), "reindex",
                         [&] { return C.describe(c) + ", " + C.describe(r); });
        }
  return rep;
}

SquareVerdict pullback_slice_equiv(const Category& C, MorId a, MorId a2, MorId g, MorId g2,
                                   const std::vector<ObjId>& probes) {
  if (C.cod(a) != C.dom(g) || C.cod(a2) != C.dom(g2) || C.dom(a) != C.dom(a2) || C.cod(g) != C.cod(g2))
    throw CompositionError("square is not well formed");
  if (C.compose(a, g) != C.compose(a2, g2)) throw StructureError("square does not commute: " + C.describe(a));
  SquareVerdict v;
  ObjId X = C.dom(a), Y = C.cod(a), Y2 = C.cod(a2), Z = C.cod(g);

  v.pullback_in_base = true;
  for (ObjId W : probes) {
    for (MorId d : C.hom(W, Y))
      for (MorId d2 : C.hom(W, Y2)) {
        if (C.compose(d, g) != C.compose(d2, g2)) continue;
        if (mediators(C, W, X, a, a2, d, d2).size() != 1) v.pullback_in_base = false;
      }
  }

  SliceCategory S(C, Z);
  MorId f = C.compose(a, g);
  ObjId sx = S.object_of(X, f);
  (void)sx;
  MorId sa = S.morphism_of(a, g), sa2 = S.morphism_of(a2, g2);
  ObjId sy = S.object_of(Y, g), sy2 = S.object_of(Y2, g2);
  ObjId apex = S.dom(sa);
  v.product_in_slice = true;
  for (ObjId W : probes)
    for (MorId e : C.hom(W, Z)) {
      ObjId sw = S.object_of(W, e);
      for (MorId u : S.hom(sw, sy))
        for (MorId w : S.hom(sw, sy2))
          if (mediators(S, sw, apex, sa, sa2, u, w).size() != 1) v.product_in_slice = false;
    }
  return v;
}

LawReport check_pullback_slice_equiv(const Category& C, const std::vector<ObjId>& objs, const std::vector<ObjId>& probes,
                                     const Pullbacks* canonical) {
  LawReport rep("pullback-slice-equiv");
  for (ObjId Z : objs)
    for (ObjId Y : objs)
      for (MorId g : C.hom(Y, Z))
        for (ObjId Y2 : objs)
          for (MorId g2 : C.hom(Y2, Z))
            for (ObjId X : objs)
              for (MorId a : C.hom(X, Y))
                for (MorId a2 : C.hom(X, Y2)) {
                  if (C.compose(a, g) != C.compose(a2, g2)) continue;
                  SquareVerdict v = pullback_slice_equiv(C, a, a2, g, g2, probes);
                  rep.expect(v.pullback_in_base == v.product_in_slice, "verdicts-agree", [&] {
                    return C.describe(a) + ", " + C.describe(a2) + " over " + C.describe(g) + ", " + C.describe(g2);
                  });
                }
  if (canonical) {
    for (ObjId Z : objs)
      for (ObjId Y : objs)
        for (MorId g : C.hom(Y, Z))
          for (ObjId Y2 : objs)
            for (MorId g2 : C.hom(Y2, Z)) {
              auto d = canonical->pullback(g, g2);
              if (!d) continue;
              SquareVerdict v = pullback_slice_equiv(C, d->pr1, d->pr2, g, g2, probes);
              rep.expect(v.pullback_in_base && v.product_in_slice, "chosen-square-both",
                         [&] { return C.describe(g) + ", " + C.describe(g2); });
            }
  }
  return rep;
}

LawReport check_slice_product_functor(const LocallyCartesianClosed& lcc, ObjId Z) {
  LawReport rep("slice-product-functor");
  const SliceCategory& S = lcc.slice(Z);
  const BinaryProducts& bp = lcc.slice_ccc(Z).products();
  auto objs = S.objects();
  for (ObjId A : objs)
    for (ObjId B : objs)
      rep.expect(bp.times(S.identity(A), S.identity(B)) == S.identity(bp.product(A, B).apex), "identity",
                 [&] { return S.object_label(A) + ", " + S.object_label(B); });
  // (a' o a) x (b' o b) = (a' x b') o (a x b), over composable pairs
  std::vector<std::pair<MorId, MorId>> chains;
  for (ObjId A0 : objs)
    for (ObjId A1 : objs)
      for (MorId a : S.hom(A0, A1))
        for (ObjId A2 : objs)
          for (MorId a2 : S.hom(A1, A2)) chains.emplace_back(a, a2);
  for (const auto& [a, a2] : chains)
    for (const auto& [b, b2] : chains) {
      MorId lhs = bp.times(S.compose(a, a2), S.compose(b, b2));
      MorId rhs = S.compose(bp.times(a, b), bp.times(a2, b2));
      rep.expect(lhs == rhs, "composition", [&] {
        return S.morphism_label(a) + " then " + S.morphism_label(a2) + "; " + S.morphism_label(b) + " then " +
               S.morphism_label(b2);
      });
    }
  return rep;
}

LawReport check_lcc(const LocallyCartesianClosed& lcc, const std::vector<ObjId>& bases) {
  LawReport rep("lcc-laws");
  for (ObjId Z : bases) {
    const SliceCategory& S = lcc.slice(Z);
    auto objs = S.objects();
    rep.merge(check_products(lcc.slice_ccc(Z).products(), objs, objs));
    rep.merge(check_ccc(lcc.slice_ccc(Z), objs, objs));
  }
  return rep;
}

// ------------------------------------------------------------ category F

namespace {

std::vector<int> table_of(const TableCategory& F, MorId f) {
  std::string s = F.morphism_label(f);
  auto pos = s.find(':');
  std::vector<int> t;
  for (size_t i = pos + 1; i < s.size(); ++i) t.push_back(s[i] - '0');
  return t;
}

int size_of(const TableCategory& F, ObjId X) { return std::stoi(F.object_label(X)); }

}  // namespace

StrVariants make_str_variants(const TableCategory& F) {
  StrVariants out;
  out.str1 = std::make_unique<TablePullbacks>(F, "str1");
  out.str_sigma = std::make_unique<TablePullbacks>(F, "str_sigma");
  int max_n = 0;
  for (ObjId X : F.objects()) max_n = std::max(max_n, size_of(F, X));
  for (ObjId Z : F.objects())
    for (ObjId X : F.objects())
      for (MorId f : F.hom(X, Z))
        for (ObjId Y : F.objects())
          for (MorId g : F.hom(Y, Z)) {
            auto tf = table_of(F, f), tg = table_of(F, g);
            std::vector<int> l1, l2;
            for (int i = 0; i < static_cast<int>(tf.size()); ++i)
              for (int j = 0; j < static_cast<int>(tg.size()); ++j)
                if (tf[static_cast<size_t>(i)] == tg[static_cast<size_t>(j)]) {
                  l1.push_back(i);
                  l2.push_back(j);
                }
            int n = static_cast<int>(l1.size());
            if (n > max_n) continue;
            PullbackDiagram d{F.object(std::to_string(n)),
                              F.morphism(function_label(n, size_of(F, X), l1)),
                              F.morphism(function_label(n, size_of(F, Y), l2))};
            out.str1->set(f, g, d);
            out.str_sigma->set(f, g, d);
          }
  out.x = F.object("2");
  out.id_x = F.identity(out.x);
  out.sigma = F.morphism(function_label(2, 2, {1, 0}));
  out.str_sigma->set(out.id_x, out.id_x, {out.x, out.sigma, out.sigma});
  return out;
}

std::vector<std::pair<MorId, MorId>> pullback_differences(const TablePullbacks& a, const TablePullbacks& b) {
  std::set<uint64_t> keys;
  for (const auto& kv : a.table()) keys.insert(kv.first);
  for (const auto& kv : b.table()) keys.insert(kv.first);
  std::vector<std::pair<MorId, MorId>> out;
  for (uint64_t k : keys) {
    auto x = a.table().find(k);
    auto y = b.table().find(k);
    bool same = x != a.table().end() && y != b.table().end() && x->second.apex == y->second.apex &&
                x->second.pr1 == y->second.pr1 && x->second.pr2 == y->second.pr2;
    if (!same) out.emplace_back(MorId(static_cast<uint32_t>(k >> 32)), MorId(static_cast<uint32_t>(k & 0xffffffffu)));
  }
  return out;
}

std::vector<std::vector<MorId>> automorphisms(const TableCategory& C) {
  auto objs = C.objects();
  if (objs.size() > 8) throw BoundExceeded("automorphism search is limited to 8 objects");
  auto mors = C.morphisms();
  const size_t M = mors.size();
  // factorizations h = f o g, indexed by each participant
  struct Fact {
    uint32_t f, g, h;
  };
  std::vector<Fact> facts;
  std::vector<std::vector<size_t>> touching(M);
  for (MorId f : mors)
    for (ObjId Z : objs)
      for (MorId g : C.hom(C.cod(f), Z)) {
        MorId h = C.compose(f, g);
        size_t i = facts.size();
        facts.push_back({f.v, g.v, h.v});
        touching[f.v].push_back(i);
        if (g != f) touching[g.v].push_back(i);
        if (h != f && h != g) touching[h.v].push_back(i);
      }

  std::vector<std::vector<MorId>> result;
  std::vector<size_t> perm(objs.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    auto pi = [&](ObjId X) { return objs[perm[X.v]]; };
    bool sizes_ok = true;
    for (ObjId X : objs)
      for (ObjId Y : objs)
        if (C.hom(X, Y).size() != C.hom(pi(X), pi(Y)).size()) sizes_ok = false;
    if (!sizes_ok) continue;

    std::vector<MorId> phi(M);
    std::vector<char> assigned(M, 0);
    std::set<uint32_t> used;
    for (ObjId X : objs) {
      MorId id = C.identity(X);
      phi[id.v] = C.identity(pi(X));
      assigned[id.v] = 1;
      used.insert(phi[id.v].v);
    }
    std::vector<MorId> order;
    for (MorId m : mors)
      if (!assigned[m.v]) order.push_back(m);
    std::stable_sort(order.begin(), order.end(), [&](MorId a, MorId b) {
      return C.hom(C.dom(a), C.cod(a)).size() < C.hom(C.dom(b), C.cod(b)).size();
    });
    auto consistent = [&](MorId m) {
      for (size_t i : touching[m.v]) {
        const Fact& t = facts[i];
        if (assigned[t.f] && assigned[t.g] && assigned[t.h] && C.compose(phi[t.f], phi[t.g]) != phi[t.h]) return false;
      }
      return true;
    };
    std::function<void(size_t)> go = [&](size_t k) {
      if (k == order.size()) {
        result.push_back(phi);
        return;
      }
      MorId m = order[k];
      for (MorId c : C.hom(pi(C.dom(m)), pi(C.cod(m)))) {
        if (used.count(c.v)) continue;
        phi[m.v] = c;
        assigned[m.v] = 1;
        used.insert(c.v);
        if (consistent(m)) go(k + 1);
        used.erase(c.v);
        assigned[m.v] = 0;
      }
    };
    go(0);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return result;
}

bool transports(const TableCategory& C, const std::vector<MorId>& phi, const TablePullbacks& a, const TablePullbacks& b) {
  if (a.table().size() != b.table().size()) return false;
  auto on_obj = [&](ObjId X) { return C.dom(phi[C.identity(X).v]); };
  for (const auto& [k, d] : a.table()) {
    MorId f(static_cast<uint32_t>(k >> 32)), g(static_cast<uint32_t>(k & 0xffffffffu));
    auto e = b.pullback(phi[f.v], phi[g.v]);
    if (!e || e->apex != on_obj(d.apex) || e->pr1 != phi[d.pr1.v] || e->pr2 != phi[d.pr2.v]) return false;
  }
  return true;
}

}  // namespace csys
