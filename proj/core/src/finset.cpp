#include "csys/finset.hpp"

#include <cstring>

namespace csys {

Term recipe_term(RecipeTag tag, std::vector<Term> args) {
  args.insert(args.begin(), Term::integer(tag));
  return Term::seq(args);
}

namespace {

std::string table_digits(const FinSet::Table& t) {
  std::string s = "[";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(t[i]);
  }
  return s + "]";
}

std::string mor_key(ObjId X, ObjId Y, const FinSet::Table& t) {
  std::string k(8 + 4 * t.size(), '\0');
  std::memcpy(&k[0], &X.v, 4);
  std::memcpy(&k[4], &Y.v, 4);
  if (!t.empty()) std::memcpy(&k[8], t.data(), 4 * t.size());
  return k;
}

// saturating |Y|^|X|
size_t power(size_t base, size_t exp, size_t cap) {
  size_t r = 1;
  for (size_t i = 0; i < exp; ++i) {
    if (base == 0) return 0;
    if (r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

// Lexicographic rank of a table among all tables into a set of size `base`.
uint32_t rank(const FinSet::Table& t, size_t base) {
  uint64_t r = 0;
  for (uint32_t v : t) r = r * base + v;
  return static_cast<uint32_t>(r);
}

}  // namespace

FinSet::FinSet(int K, std::string name, size_t element_limit, size_t hom_limit)
    : K_(K), name_(std::move(name)), element_limit_(element_limit), hom_limit_(hom_limit) {
  if (K < 1) throw BoundExceeded("FinSet bound must be at least 1");
  for (int n = 0; n <= K; ++n) {
    std::vector<Term> labels;
    for (int i = 0; i < n; ++i) labels.push_back(Term::integer(i));
    standard_.push_back(carrier(recipe_term(kRecipeStandard, {Term::integer(n)}), labels, std::to_string(n)));
  }
}

ObjId FinSet::standard(int n) const {
  if (n < 0 || n > K_) throw UnknownId("no standard set of size " + std::to_string(n) + " in " + name_);
  return standard_[n];
}

ObjId FinSet::carrier(const Term& recipe, const std::vector<Term>& labels, const std::string& display) const {
  std::lock_guard<std::mutex> lk(mu_);
  auto it = obj_index_.find(recipe);
  if (it != obj_index_.end()) {
    if (objs_[it->second.v]->labels != labels)
      throw StructureError("carrier " + recipe.str() + " re-created with different elements");
    return it->second;
  }
  if (labels.size() > element_limit_)
    throw BoundExceeded("carrier " + (display.empty() ? recipe.str() : display) + " would have " +
                        std::to_string(labels.size()) + " elements, limit " + std::to_string(element_limit_));
  auto o = std::make_unique<Obj>();
  o->recipe = recipe;
  o->labels = labels;
  o->display = display;
  for (uint32_t i = 0; i < labels.size(); ++i)
    if (!o->index.emplace(labels[i], i).second)
      throw StructureError("carrier " + recipe.str() + " has duplicate element " + labels[i].str());
  ObjId id(static_cast<uint32_t>(objs_.push_back(std::move(o))));
  obj_index_.emplace(recipe, id);
  return id;
}

std::optional<ObjId> FinSet::find_carrier(const Term& recipe) const {
  std::lock_guard<std::mutex> lk(mu_);
  auto it = obj_index_.find(recipe);
  if (it == obj_index_.end()) return std::nullopt;
  return it->second;
}

const FinSet::Obj& FinSet::obj(ObjId X) const {
  if (X.v >= objs_.size()) throw UnknownId("unknown object " + std::to_string(X.v) + " in " + name_);
  return *objs_[X.v];
}

const FinSet::Mor& FinSet::mor(MorId f) const {
  if (f.v >= mors_.size()) throw UnknownId("unknown morphism " + std::to_string(f.v) + " in " + name_);
  return mors_[f.v];
}

const Term& FinSet::recipe(ObjId X) const { return obj(X).recipe; }
const std::vector<Term>& FinSet::elements(ObjId X) const { return obj(X).labels; }

std::optional<uint32_t> FinSet::find_index(ObjId X, const Term& label) const {
  const Obj& o = obj(X);
  auto it = o.index.find(label);
  if (it == o.index.end()) return std::nullopt;
  return it->second;
}

uint32_t FinSet::index_of(ObjId X, const Term& label) const {
  auto i = find_index(X, label);
  if (!i) throw UnknownId("element " + label.str() + " is not in " + object_label(X));
  return *i;
}

MorId FinSet::function(ObjId X, ObjId Y, const Table& t) const {
  size_t nx = size(X), ny = size(Y);
  if (t.size() != nx) throw StructureError("table of length " + std::to_string(t.size()) + " on " + object_label(X));
  for (uint32_t v : t)
    if (v >= ny) throw StructureError("table value " + std::to_string(v) + " outside " + object_label(Y));
  std::string key = mor_key(X, Y, t);
  std::lock_guard<std::mutex> lk(mu_);
  auto it = mor_index_.find(key);
  if (it != mor_index_.end()) return it->second;
  MorId id(static_cast<uint32_t>(mors_.push_back(Mor{X, Y, t})));
  mor_index_.emplace(std::move(key), id);
  return id;
}

const FinSet::Table& FinSet::table(MorId f) const { return mor(f).table; }

std::vector<ObjId> FinSet::objects() const { return standard_; }
ObjId FinSet::dom(MorId f) const { return mor(f).dom; }
ObjId FinSet::cod(MorId f) const { return mor(f).cod; }

MorId FinSet::identity(ObjId X) const {
  const Obj& o = obj(X);
  uint32_t cached = o.identity.load(std::memory_order_acquire);
  if (cached != UINT32_MAX) return MorId(cached);
  Table t(o.labels.size());
  for (uint32_t i = 0; i < t.size(); ++i) t[i] = i;
  MorId id = function(X, X, t);
  o.identity.store(id.v, std::memory_order_release);
  return id;
}

const std::vector<MorId>& FinSet::hom(ObjId X, ObjId Y) const {
  uint64_t key = pack(X.v, Y.v);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = homs_.find(key);
    if (it != homs_.end()) return *it->second;
  }
  size_t nx = size(X), ny = size(Y);
  size_t count = power(ny, nx, hom_limit_);
  if (count > hom_limit_)
    throw BoundExceeded("hom(" + object_label(X) + ", " + object_label(Y) + ") exceeds " + std::to_string(hom_limit_) +
                        " morphisms");
  auto out = std::make_unique<std::vector<MorId>>();
  out->reserve(count);
  Table t(nx, 0);
  for (size_t k = 0; k < count; ++k) {
    out->push_back(function(X, Y, t));
    for (size_t i = nx; i-- > 0;) {
      if (++t[i] < ny) break;
      t[i] = 0;
    }
  }
  std::lock_guard<std::mutex> lk(mu_);
  return *homs_.emplace(key, std::move(out)).first->second;
}

MorId FinSet::compose(MorId f, MorId g) const {
  uint64_t key = pack(f.v, g.v);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = comp_.find(key);
    if (it != comp_.end()) return it->second;
  }
  const Mor& a = mor(f);
  const Mor& b = mor(g);
  if (a.cod != b.dom) throw CompositionError("cannot compose " + describe(f) + " with " + describe(g));
  Table t(a.table.size());
  for (size_t i = 0; i < t.size(); ++i) t[i] = b.table[a.table[i]];
  MorId h = function(a.dom, b.cod, t);
  std::lock_guard<std::mutex> lk(mu_);
  comp_.emplace(key, h);
  return h;
}

std::string FinSet::object_label(ObjId X) const {
  const Obj& o = obj(X);
  return o.display.empty() ? o.recipe.str() : o.display;
}

std::string FinSet::morphism_label(MorId f) const {
  const Mor& m = mor(f);
  return object_label(m.dom) + "->" + object_label(m.cod) + table_digits(m.table);
}

std::optional<MorId> FinSet::inverse(MorId f) const {
  const Mor& m = mor(f);
  size_t n = size(m.cod);
  if (m.table.size() != n) return std::nullopt;
  Table inv(n, UINT32_MAX);
  for (uint32_t i = 0; i < n; ++i) {
    if (inv[m.table[i]] != UINT32_MAX) return std::nullopt;
    inv[m.table[i]] = i;
  }
  return function(m.cod, m.dom, inv);
}

// ---------------------------------------------------------------- products

ProductDiagram FinSetProducts::product(ObjId X, ObjId Y) const {
  const auto& ex = S_.elements(X);
  const auto& ey = S_.elements(Y);
  size_t nx = ex.size(), ny = ey.size();
  std::vector<Term> labels;
  labels.reserve(nx * ny);
  if (!swapped_) {
    for (size_t i = 0; i < nx; ++i)
      for (size_t j = 0; j < ny; ++j) labels.push_back(Term::pair(ex[i], ey[j]));
  } else {
    for (size_t j = 0; j < ny; ++j)
      for (size_t i = 0; i < nx; ++i) labels.push_back(Term::pair(ey[j], ex[i]));
  }
  RecipeTag tag = swapped_ ? kRecipeProductSwapped : kRecipeProduct;
  std::string disp = "(" + S_.object_label(X) + (swapped_ ? " x' " : " x ") + S_.object_label(Y) + ")";
  ObjId P = S_.carrier(recipe_term(tag, {Term::obj(X), Term::obj(Y)}), labels, disp);
  MorId pr1, pr2;
  if (!swapped_) {
    pr1 = S_.function_by(P, X, [&](uint32_t e) { return e / ny; });
    pr2 = S_.function_by(P, Y, [&](uint32_t e) { return e % ny; });
  } else {
    pr1 = S_.function_by(P, X, [&](uint32_t e) { return e % nx; });
    pr2 = S_.function_by(P, Y, [&](uint32_t e) { return e / nx; });
  }
  return {P, pr1, pr2};
}

MorId FinSetProducts::pair(MorId a, MorId b) const {
  if (S_.dom(a) != S_.dom(b)) throw CompositionError("pairing morphisms with different domains");
  ObjId X = S_.cod(a), Y = S_.cod(b);
  size_t nx = S_.size(X), ny = S_.size(Y);
  ProductDiagram d = product(X, Y);
  const auto& ta = S_.table(a);
  const auto& tb = S_.table(b);
  return S_.function_by(S_.dom(a), d.apex, [&](uint32_t w) {
    return swapped_ ? tb[w] * nx + ta[w] : ta[w] * ny + tb[w];
  });
}

std::optional<PullbackDiagram> FinSetPullbacks::pullback(MorId f, MorId g) const {
  if (S_.cod(f) != S_.cod(g)) throw CompositionError("not a cospan: " + S_.describe(f) + ", " + S_.describe(g));
  ObjId X = S_.dom(f), Y = S_.dom(g);
  const auto& tf = S_.table(f);
  const auto& tg = S_.table(g);
  const auto& ex = S_.elements(X);
  const auto& ey = S_.elements(Y);
  std::vector<Term> labels;
  std::vector<uint32_t> l1, l2;
  for (uint32_t i = 0; i < ex.size(); ++i)
    for (uint32_t j = 0; j < ey.size(); ++j)
      if (tf[i] == tg[j]) {
        labels.push_back(Term::pair(ex[i], ey[j]));
        l1.push_back(i);
        l2.push_back(j);
      }
  std::string disp = "pb(" + S_.morphism_label(f) + ", " + S_.morphism_label(g) + ")";
  ObjId P = S_.carrier(recipe_term(kRecipePullback, {Term::mor(f), Term::mor(g)}), labels, disp);
  return PullbackDiagram{P, S_.function(P, X, l1), S_.function(P, Y, l2)};
}

MorId FinSetPullbacks::mediate(MorId f, MorId g, MorId d1, MorId d2) const {
  auto d = pullback(f, g);
  const auto& t1 = S_.table(d1);
  const auto& t2 = S_.table(d2);
  ObjId X = S_.dom(f), Y = S_.dom(g);
  const auto& ex = S_.elements(X);
  const auto& ey = S_.elements(Y);
  return S_.function_by(S_.dom(d1), d->apex, [&](uint32_t w) {
    auto i = S_.find_index(d->apex, Term::pair(ex[t1[w]], ey[t2[w]]));
    if (!i) throw StructureError("cone does not commute over " + S_.describe(f) + ", " + S_.describe(g));
    return *i;
  });
}

// ---------------------------------------------------------------- ccc

ObjId FinSetCCC::hom_object(ObjId X, ObjId Y) const {
  size_t count = power(S_.size(Y), S_.size(X), S_.element_limit());
  if (count > S_.element_limit())
    throw BoundExceeded("Hom(" + S_.object_label(X) + ", " + S_.object_label(Y) + ") exceeds the element limit");
  const auto& ey = S_.elements(Y);
  std::vector<Term> labels;
  for (MorId h : S_.hom(X, Y)) {
    std::vector<Term> vals;
    for (uint32_t v : S_.table(h)) vals.push_back(ey[v]);
    labels.push_back(Term::seq(vals));
  }
  std::string disp = "Hom(" + S_.object_label(X) + ", " + S_.object_label(Y) + ")";
  return S_.carrier(recipe_term(kRecipeHom, {Term::obj(X), Term::obj(Y)}), labels, disp);
}

MorId FinSetCCC::eval(ObjId X, ObjId Y) const {
  ObjId H = hom_object(X, Y);
  ProductDiagram d = products().product(H, X);
  const auto& homs = S_.hom(X, Y);
  const auto& p1 = S_.table(d.pr1);
  const auto& p2 = S_.table(d.pr2);
  return S_.function_by(d.apex, Y, [&](uint32_t e) { return S_.table(homs[p1[e]])[p2[e]]; });
}

MorId FinSetCCC::hom_post(ObjId X, MorId b) const {
  ObjId Y = S_.dom(b), Y2 = S_.cod(b);
  ObjId H = hom_object(X, Y), H2 = hom_object(X, Y2);
  const auto& homs = S_.hom(X, Y);
  size_t n2 = S_.size(Y2);
  return S_.function_by(H, H2, [&](uint32_t h) { return rank(S_.table(S_.compose(homs[h], b)), n2); });
}

MorId FinSetCCC::adj_inverse(ObjId W, ObjId X, MorId m) const {
  ObjId Y = S_.cod(m);
  ObjId H = hom_object(X, Y);
  ProductDiagram d = products().product(W, X);
  size_t nx = S_.size(X), ny = S_.size(Y);
  const auto& p1 = S_.table(d.pr1);
  const auto& p2 = S_.table(d.pr2);
  std::vector<uint32_t> at(S_.size(W) * nx);
  for (uint32_t e = 0; e < p1.size(); ++e) at[p1[e] * nx + p2[e]] = e;
  const auto& tm = S_.table(m);
  return S_.function_by(W, H, [&](uint32_t w) {
    FinSet::Table t(nx);
    for (uint32_t x = 0; x < nx; ++x) t[x] = tm[at[w * nx + x]];
    return rank(t, ny);
  });
}

// ---------------------------------------------------------------- slice ccc

std::vector<std::vector<uint32_t>> FinSetSliceCCC::fibers(MorId f) const {
  std::vector<std::vector<uint32_t>> out(S_.size(S_.cod(f)));
  const auto& t = S_.table(f);
  for (uint32_t i = 0; i < t.size(); ++i) out[t[i]].push_back(i);
  return out;
}

ObjId FinSetSliceCCC::hom_object(ObjId XF, ObjId YG) const {
  MorId f = slice_.structure(XF), g = slice_.structure(YG);
  ObjId Y = slice_.underlying(YG), Z = slice_.base_object();
  auto fx = fibers(f), fy = fibers(g);
  size_t limit = S_.element_limit(), count = 0;
  for (size_t z = 0; z < fx.size(); ++z) {
    count += power(fy[z].size(), fx[z].size(), limit);
    if (count > limit) throw BoundExceeded("slice hom over " + S_.object_label(Z) + " exceeds the element limit");
  }
  const auto& ey = S_.elements(Y);
  const auto& ez = S_.elements(Z);
  std::vector<Term> labels;
  std::vector<uint32_t> over;
  for (uint32_t z = 0; z < fx.size(); ++z) {
    size_t n = fx[z].size(), m = fy[z].size();
    size_t k = power(m, n, limit);
    std::vector<uint32_t> pos(n, 0);
    for (size_t c = 0; c < k; ++c) {
      std::vector<Term> vals;
      for (uint32_t p : pos) vals.push_back(ey[fy[z][p]]);
      labels.push_back(Term::pair(ez[z], Term::seq(vals)));
      over.push_back(z);
      for (size_t i = n; i-- > 0;) {
        if (++pos[i] < m) break;
        pos[i] = 0;
      }
    }
  }
  std::string disp = "Hom_" + S_.object_label(Z) + "(" + S_.morphism_label(f) + ", " + S_.morphism_label(g) + ")";
  ObjId H = S_.carrier(recipe_term(kRecipeSliceHom, {Term::mor(f), Term::mor(g)}), labels, disp);
  return slice_.object_of(H, S_.function(H, Z, over));
}

MorId FinSetSliceCCC::eval(ObjId XF, ObjId YG) const {
  ObjId Hs = hom_object(XF, YG);
  MorId f = slice_.structure(XF), g = slice_.structure(YG);
  ObjId H = slice_.underlying(Hs), Y = slice_.underlying(YG);
  ProductDiagram d = products().product(Hs, XF);
  const auto& p1 = S_.table(slice_.underlying(d.pr1));
  const auto& p2 = S_.table(slice_.underlying(d.pr2));
  auto fx = fibers(f);
  const auto& tf = S_.table(f);
  std::vector<uint32_t> pos_in_fiber(tf.size());
  for (const auto& fib : fx)
    for (uint32_t k = 0; k < fib.size(); ++k) pos_in_fiber[fib[k]] = k;
  const auto& eh = S_.elements(H);
  ObjId P = slice_.underlying(slice_.dom(d.pr1));
  MorId m = S_.function_by(P, Y, [&](uint32_t e) {
    auto vals = eh[p1[e]].second().items();
    return S_.index_of(Y, vals[pos_in_fiber[p2[e]]]);
  });
  return slice_.morphism_of(m, g);
}

MorId FinSetSliceCCC::hom_post(ObjId XF, MorId b) const {
  ObjId YG = slice_.dom(b), YG2 = slice_.cod(b);
  ObjId Hs = hom_object(XF, YG), Hs2 = hom_object(XF, YG2);
  ObjId H = slice_.underlying(Hs), H2 = slice_.underlying(Hs2);
  ObjId Y = slice_.underlying(YG), Y2 = slice_.underlying(YG2);
  const auto& tb = S_.table(slice_.underlying(b));
  const auto& ey2 = S_.elements(Y2);
  const auto& eh = S_.elements(H);
  MorId m = S_.function_by(H, H2, [&](uint32_t h) {
    std::vector<Term> vals;
    for (const auto& v : eh[h].second().items()) vals.push_back(ey2[tb[S_.index_of(Y, v)]]);
    return S_.index_of(H2, Term::pair(eh[h].first(), Term::seq(vals)));
  });
  return slice_.morphism_of(m, slice_.structure(Hs2));
}

MorId FinSetSliceCCC::adj_inverse(ObjId WE, ObjId XF, MorId m) const {
  ObjId YG = slice_.cod(m);
  ObjId Hs = hom_object(XF, YG);
  ObjId H = slice_.underlying(Hs), W = slice_.underlying(WE), X = slice_.underlying(XF);
  ObjId Y = slice_.underlying(YG), Z = slice_.base_object();
  MorId e = slice_.structure(WE), f = slice_.structure(XF);
  ProductDiagram d = products().product(WE, XF);
  const auto& p1 = S_.table(slice_.underlying(d.pr1));
  const auto& p2 = S_.table(slice_.underlying(d.pr2));
  size_t nx = S_.size(X);
  std::vector<uint32_t> at(S_.size(W) * nx, UINT32_MAX);
  for (uint32_t k = 0; k < p1.size(); ++k) at[p1[k] * nx + p2[k]] = k;
  auto fx = fibers(f);
  const auto& te = S_.table(e);
  const auto& tm = S_.table(slice_.underlying(m));
  const auto& ey = S_.elements(Y);
  const auto& ez = S_.elements(Z);
  MorId u = S_.function_by(W, H, [&](uint32_t w) {
    uint32_t z = te[w];
    std::vector<Term> vals;
    for (uint32_t x : fx[z]) vals.push_back(ey[tm[at[w * nx + x]]]);
    return S_.index_of(H, Term::pair(ez[z], Term::seq(vals)));
  });
  return slice_.morphism_of(u, slice_.structure(Hs));
}

const FinSetLCC::Entry& FinSetLCC::entry(ObjId Z) const {
  std::lock_guard<std::mutex> lk(mu_);
  auto it = entries_.find(Z);
  if (it != entries_.end()) return *it->second;
  auto e = std::make_unique<Entry>();
  e->slice = std::make_unique<SliceCategory>(S_, Z);
  e->products = std::make_unique<SlicePullbackProducts>(*e->slice, pb_);
  e->ccc = std::make_unique<FinSetSliceCCC>(S_, *e->slice, *e->products);
  return *entries_.emplace(Z, std::move(e)).first->second;
}

const SliceCategory& FinSetLCC::slice(ObjId Z) const { return *entry(Z).slice; }
const CartesianClosed& FinSetLCC::slice_ccc(ObjId Z) const { return *entry(Z).ccc; }
const SlicePullbackProducts& FinSetLCC::slice_products(ObjId Z) const { return *entry(Z).products; }

// ---------------------------------------------------------------- universe

namespace {

std::vector<Term> int_terms(const std::vector<int>& v) {
  std::vector<Term> out;
  for (int x : v) out.push_back(Term::integer(x));
  return out;
}

}  // namespace

MorId CodingUniverse::make_p(const FinSet& S, const std::vector<int>& sizes, const std::string& name) {
  std::vector<Term> codes, pairs;
  FinSet::Table t;
  for (int c = 0; c < static_cast<int>(sizes.size()); ++c) {
    if (sizes[c] < 0) throw StructureError("negative coded size");
    codes.push_back(Term::integer(c));
    for (int e = 0; e < sizes[c]; ++e) {
      pairs.push_back(Term::pair(Term::integer(c), Term::integer(e)));
      t.push_back(static_cast<uint32_t>(c));
    }
  }
  auto args = int_terms(sizes);
  ObjId U = S.carrier(recipe_term(kRecipeCodes, args), codes, name);
  ObjId Ut = S.carrier(recipe_term(kRecipeCodedElements, args), pairs, name + "~");
  return S.function(Ut, U, t);
}

CodingUniverse::CodingUniverse(const FinSet& S, std::vector<int> sizes, const std::string& name)
    : Universe(S, make_p(S, sizes, name), S.standard(1), name), S_(S), sizes_(std::move(sizes)) {
  uint32_t off = 0;
  for (int s : sizes_) {
    offset_.push_back(off);
    off += static_cast<uint32_t>(s);
  }
}

Comprehension CodingUniverse::comprehension(MorId F) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = cache_.find(F);
    if (it != cache_.end()) return it->second;
  }
  if (S_.cod(F) != U()) throw CompositionError(S_.describe(F) + " does not land in " + name());
  ObjId X = S_.dom(F);
  const auto& ex = S_.elements(X);
  const auto& tf = S_.table(F);
  std::vector<Term> labels;
  FinSet::Table tp, tq;
  for (uint32_t i = 0; i < ex.size(); ++i)
    for (int e = 0; e < sizes_[tf[i]]; ++e) {
      labels.push_back(Term::pair(ex[i], Term::integer(e)));
      tp.push_back(i);
      tq.push_back(offset_[tf[i]] + static_cast<uint32_t>(e));
    }
  std::string disp = "(" + S_.object_label(X) + ";" + S_.morphism_label(F).substr(S_.morphism_label(F).find('[')) + ")";
  ObjId E = S_.carrier(recipe_term(kRecipeComprehension, {Term::mor(F)}), labels, disp);
  Comprehension c{E, S_.function(E, X, tp), S_.function(E, U_tilde(), tq)};
  std::lock_guard<std::mutex> lk(mu_);
  cache_.emplace(F, c);
  return c;
}

MorId CodingUniverse::star(MorId f, MorId g, MorId F) const {
  Comprehension c = comprehension(F);
  const auto& tf = S_.table(f);
  const auto& tg = S_.table(g);
  const auto& tF = S_.table(F);
  std::vector<uint32_t> start(tF.size() + 1, 0);
  for (size_t i = 0; i < tF.size(); ++i) start[i + 1] = start[i] + static_cast<uint32_t>(sizes_[tF[i]]);
  const auto& tp = S_.table(p());
  return S_.function_by(S_.dom(f), c.apex, [&](uint32_t w) {
    uint32_t x = tf[w], code = tp[tg[w]];
    if (code != tF[x]) throw StructureError("f *_F g: the square does not commute at element " + std::to_string(w));
    return start[x] + (tg[w] - offset_[code]);
  });
}

FinSetModel make_finset(int K, const std::string& name, size_t element_limit) {
  FinSetModel m;
  m.S = std::make_unique<FinSet>(K, name, element_limit);
  m.products = std::make_unique<FinSetProducts>(*m.S);
  m.swapped = std::make_unique<FinSetProducts>(*m.S, true);
  m.pullbacks = std::make_unique<FinSetPullbacks>(*m.S);
  m.ccc = std::make_unique<FinSetCCC>(*m.S, *m.products);
  m.lcc = std::make_unique<FinSetLCC>(*m.S, *m.pullbacks);
  return m;
}

LawReport check_section_count(const CodingUniverse& u, const std::vector<ObjId>& objs) {
  LawReport rep("section-count");
  const FinSet& S = u.finset();
  for (ObjId X : objs)
    for (MorId F : S.hom(X, u.U())) {
      Comprehension c = u.comprehension(F);
      size_t got = 0;
      MorId id = S.identity(X);
      for (MorId s : S.hom(X, c.apex))
        if (S.compose(s, c.p) == id) ++got;
      size_t want = 1;
      for (uint32_t code : S.table(F)) want *= static_cast<size_t>(u.sizes()[code]);
      rep.expect(got == want, "count", [&] {
        return S.describe(F) + ": " + std::to_string(got) + " sections, expected " + std::to_string(want);
      });
    }
  return rep;
}

}  // namespace csys
