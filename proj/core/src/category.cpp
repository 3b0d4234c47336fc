#include "csys/category.hpp"

#include <algorithm>

namespace csys {

std::optional<MorId> Category::inverse(MorId f) const {
  ObjId X = dom(f), Y = cod(f);
  MorId idX = identity(X), idY = identity(Y);
  for (MorId g : hom(Y, X)) {
    if (compose(f, g) == idX && compose(g, f) == idY) return g;
  }
  return std::nullopt;
}

MorId Category::chain(std::initializer_list<MorId> ms) const {
  auto it = ms.begin();
  MorId acc = *it++;
  for (; it != ms.end(); ++it) acc = compose(acc, *it);
  return acc;
}

std::vector<MorId> Category::morphisms_among(const std::vector<ObjId>& objs) const {
  std::vector<MorId> out;
  for (ObjId X : objs)
    for (ObjId Y : objs) {
      const auto& h = hom(X, Y);
      out.insert(out.end(), h.begin(), h.end());
    }
  return out;
}

std::vector<MorId> Category::morphisms() const { return morphisms_among(objects()); }

std::string Category::describe(MorId f) const {
  return morphism_label(f) + ":" + object_label(dom(f)) + "->" + object_label(cod(f));
}

// ---------------------------------------------------------------- tables

ObjId TableCategory::add_object(const std::string& label) {
  if (obj_index_.count(label)) throw Error("duplicate object '" + label + "'");
  ObjId id(static_cast<uint32_t>(obj_labels_.size()));
  obj_labels_.push_back(label);
  identities_.emplace_back();
  obj_index_.emplace(label, id);
  return id;
}

MorId TableCategory::add_morphism(const std::string& label, ObjId d, ObjId c) {
  if (mor_index_.count(label)) throw Error("duplicate morphism '" + label + "'");
  if (d.v >= obj_labels_.size() || c.v >= obj_labels_.size()) throw UnknownId("morphism '" + label + "' has unknown endpoint");
  MorId id(static_cast<uint32_t>(mors_.size()));
  mors_.push_back({label, d, c});
  mor_index_.emplace(label, id);
  homs_[pack(d.v, c.v)].push_back(id);
  return id;
}

void TableCategory::set_identity(ObjId X, MorId id) {
  if (X.v >= identities_.size()) throw UnknownId("unknown object o" + std::to_string(X.v));
  identities_[X.v] = id;
}

void TableCategory::set_composite(MorId f, MorId g, MorId h) { comp_[pack(f.v, g.v)] = h; }
void TableCategory::clear_composite(MorId f, MorId g) { comp_.erase(pack(f.v, g.v)); }

std::optional<MorId> TableCategory::composite(MorId f, MorId g) const {
  auto it = comp_.find(pack(f.v, g.v));
  if (it == comp_.end()) return std::nullopt;
  return it->second;
}

ObjId TableCategory::object(const std::string& label) const {
  auto it = obj_index_.find(label);
  if (it == obj_index_.end()) throw UnknownId("unknown object '" + label + "'");
  return it->second;
}

MorId TableCategory::morphism(const std::string& label) const {
  auto it = mor_index_.find(label);
  if (it == mor_index_.end()) throw UnknownId("unknown morphism '" + label + "'");
  return it->second;
}

std::vector<ObjId> TableCategory::objects() const {
  std::vector<ObjId> out;
  for (uint32_t i = 0; i < obj_labels_.size(); ++i) out.emplace_back(i);
  return out;
}

ObjId TableCategory::dom(MorId f) const {
  if (f.v >= mors_.size()) throw UnknownId("unknown morphism m" + std::to_string(f.v));
  return mors_[f.v].dom;
}

ObjId TableCategory::cod(MorId f) const {
  if (f.v >= mors_.size()) throw UnknownId("unknown morphism m" + std::to_string(f.v));
  return mors_[f.v].cod;
}

MorId TableCategory::identity(ObjId X) const {
  if (X.v >= identities_.size()) throw UnknownId("unknown object o" + std::to_string(X.v));
  if (!identities_[X.v].valid()) throw CompositionError("no identity declared for " + obj_labels_[X.v]);
  return identities_[X.v];
}

const std::vector<MorId>& TableCategory::hom(ObjId X, ObjId Y) const {
  auto it = homs_.find(pack(X.v, Y.v));
  return it == homs_.end() ? empty_ : it->second;
}

MorId TableCategory::compose(MorId f, MorId g) const {
  if (cod(f) != dom(g)) throw CompositionError("not composable: " + describe(f) + " then " + describe(g));
  auto it = comp_.find(pack(f.v, g.v));
  if (it == comp_.end()) throw CompositionError("composition table has no entry for " + describe(f) + " then " + describe(g));
  return it->second;
}

MorId PatchedCategory::compose(MorId f, MorId g) const {
  auto it = comp_.find(pack(f.v, g.v));
  if (it != comp_.end()) return it->second;
  return b_.compose(f, g);
}

std::string TableCategory::object_label(ObjId X) const {
  if (X.v >= obj_labels_.size()) return Category::object_label(X);
  return obj_labels_[X.v];
}

std::string TableCategory::morphism_label(MorId f) const {
  if (f.v >= mors_.size()) return Category::morphism_label(f);
  return mors_[f.v].label;
}

std::string function_label(int n, int m, const std::vector<int>& table) {
  std::string s = std::to_string(n) + ">" + std::to_string(m) + ":";
  for (int t : table) s += std::to_string(t);
  return s;
}

std::unique_ptr<TableCategory> functions_category(int max_n, const std::string& name) {
  auto C = std::make_unique<TableCategory>(name);
  for (int n = 0; n <= max_n; ++n) C->add_object(std::to_string(n));
  std::vector<std::vector<std::vector<int>>> tables(static_cast<size_t>((max_n + 1) * (max_n + 1)));
  auto slot = [&](int n, int m) -> auto& { return tables[static_cast<size_t>(n * (max_n + 1) + m)]; };
  for (int n = 0; n <= max_n; ++n)
    for (int m = 0; m <= max_n; ++m) {
      // all m^n tables in lexicographic order
      std::vector<int> t(static_cast<size_t>(n), 0);
      if (n > 0 && m == 0) continue;
      while (true) {
        slot(n, m).push_back(t);
        C->add_morphism(function_label(n, m, t), ObjId(static_cast<uint32_t>(n)), ObjId(static_cast<uint32_t>(m)));
        int i = n - 1;
        while (i >= 0 && t[static_cast<size_t>(i)] == m - 1) t[static_cast<size_t>(i--)] = 0;
        if (i < 0) break;
        ++t[static_cast<size_t>(i)];
      }
    }
  for (int n = 0; n <= max_n; ++n) {
    std::vector<int> id(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) id[static_cast<size_t>(i)] = i;
    C->set_identity(ObjId(static_cast<uint32_t>(n)), C->morphism(function_label(n, n, id)));
  }
  for (int a = 0; a <= max_n; ++a)
    for (int b = 0; b <= max_n; ++b)
      for (const auto& f : slot(a, b))
        for (int c = 0; c <= max_n; ++c)
          for (const auto& g : slot(b, c)) {
            std::vector<int> h(f.size());
            for (size_t i = 0; i < f.size(); ++i) h[i] = g[static_cast<size_t>(f[i])];
            C->set_composite(C->morphism(function_label(a, b, f)), C->morphism(function_label(b, c, g)),
                             C->morphism(function_label(a, c, h)));
          }
  return C;
}

LawReport check_category(const Category& C, const std::vector<ObjId>* scope) {
  LawReport rep("category-laws");
  std::vector<ObjId> objs = scope ? *scope : C.objects();
  auto safe_compose = [&](MorId f, MorId g, std::optional<MorId>& out) {
    try {
      out = C.compose(f, g);
      return true;
    } catch (const CompositionError& e) {
      rep.fail("composition-defined", e.what());
      return false;
    }
  };
  for (ObjId X : objs) {
    MorId idX;
    try {
      idX = C.identity(X);
    } catch (const Error& e) {
      rep.fail("identity-defined", e.what());
      continue;
    }
    rep.expect(C.dom(idX) == X && C.cod(idX) == X, "identity-endpoints", [&] { return C.describe(idX); });
  }
  for (ObjId X : objs)
    for (ObjId Y : objs)
      for (MorId f : C.hom(X, Y)) {
        rep.expect(C.dom(f) == X && C.cod(f) == Y, "dom-cod", [&] { return C.describe(f); });
        std::optional<MorId> l, r;
        MorId idX, idY;
        try {
          idX = C.identity(X);
          idY = C.identity(Y);
        } catch (const Error&) {
          continue;
        }
        if (safe_compose(idX, f, l))
          rep.expect(*l == f, "unit-left", [&] { return "compose(id_" + C.object_label(X) + ", " + C.describe(f) + ") = " + C.morphism_label(*l); });
        if (safe_compose(f, idY, r))
          rep.expect(*r == f, "unit-right", [&] { return "compose(" + C.describe(f) + ", id_" + C.object_label(Y) + ") = " + C.morphism_label(*r); });
      }
  for (ObjId X : objs)
    for (ObjId Y : objs)
      for (MorId f : C.hom(X, Y))
        for (ObjId Z : objs)
          for (MorId g : C.hom(Y, Z)) {
            std::optional<MorId> fg;
            if (!safe_compose(f, g, fg)) continue;
            rep.expect(C.dom(*fg) == X && C.cod(*fg) == Z, "composite-endpoints",
                       [&] { return C.describe(f) + " then " + C.describe(g); });
            for (ObjId W : objs)
              for (MorId h : C.hom(Z, W)) {
                std::optional<MorId> gh, a, b;
                if (!safe_compose(g, h, gh)) continue;
                if (!safe_compose(*fg, h, a) || !safe_compose(f, *gh, b)) continue;
                rep.expect(*a == *b, "associativity", [&] {
                  return "(" + C.morphism_label(f) + "," + C.morphism_label(g) + "," + C.morphism_label(h) + ")";
                });
              }
          }
  return rep;
}

}  // namespace csys
