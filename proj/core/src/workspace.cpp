#include "csys/workspace.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace csys {

std::optional<FaultKind> fault_from_name(const std::string& name) {
  if (name == "unit-law") return FaultKind::kUnitLaw;
  if (name == "q-square") return FaultKind::kQSquare;
  if (name == "phi-tilde-pullback") return FaultKind::kPhiTildePullback;
  if (name == "sig-naturality") return FaultKind::kSigNaturality;
  if (name == "u1-naturality") return FaultKind::kU1Naturality;
  return std::nullopt;
}

std::string fault_name(FaultKind k) {
  switch (k) {
    case FaultKind::kUnitLaw: return "unit-law";
    case FaultKind::kQSquare: return "q-square";
    case FaultKind::kPhiTildePullback: return "phi-tilde-pullback";
    case FaultKind::kSigNaturality: return "sig-naturality";
    case FaultKind::kU1Naturality: return "u1-naturality";
  }
  return "?";
}

std::string fault_target(FaultKind k) {
  switch (k) {
    case FaultKind::kUnitLaw: return "category-laws";
    case FaultKind::kQSquare: return "csystem-axioms";
    case FaultKind::kPhiTildePullback: return "ucf-axioms";
    case FaultKind::kSigNaturality: return "sig-functor";
    case FaultKind::kU1Naturality: return "u1-iso";
  }
  return "?";
}

ProductDiagram TableProducts::product(ObjId X, ObjId Y) const {
  auto it = table_.find(pack(X.v, Y.v));
  if (it == table_.end())
    throw StructureError("no product of " + category().object_label(X) + " and " + category().object_label(Y));
  return it->second;
}

ObjId TableCCC::hom_object(ObjId X, ObjId Y) const {
  auto it = table_.find(pack(X.v, Y.v));
  if (it == table_.end())
    throw StructureError("no internal hom " + category().object_label(X) + " => " + category().object_label(Y));
  return it->second.first;
}

MorId TableCCC::eval(ObjId X, ObjId Y) const {
  hom_object(X, Y);
  return table_.at(pack(X.v, Y.v)).second;
}

MorId TableCCC::hom_post(ObjId X, MorId b) const {
  const Category& C = category();
  ObjId Y = C.dom(b);
  return adj_inverse(hom_object(X, Y), X, C.compose(eval(X, Y), b));
}

namespace {

[[noreturn]] void fail(SourcePos p, const std::string& msg) { throw DslError(p, msg); }

bool is_setting(const Entry& e, const char* key) { return e.assign && e.words.size() == 1 && e.words[0] == key; }

int to_int(const std::string& s, SourcePos p) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) fail(p, "expected an integer, got '" + s + "'");
  return v;
}

int single_int(const Entry& e) {
  if (e.values.size() != 1) fail(e.pos, "'" + e.head() + "' takes one integer");
  return to_int(e.values[0], e.value_pos[0]);
}

const std::string& single_word(const Entry& e) {
  if (e.values.size() != 1) fail(e.pos, "'" + e.head() + "' takes one value");
  return e.values[0];
}

std::vector<int> int_list(const Entry& e) {
  std::vector<int> out;
  for (size_t i = 0; i < e.values.size(); ++i) out.push_back(to_int(e.values[i], e.value_pos[i]));
  return out;
}

[[noreturn]] void unknown_entry(const Block& b, const Entry& e) {
  fail(e.pos, "unexpected entry '" + e.head() + "' in [" + b.name + "]");
}

// Value of `key = v` in block b, if present.
const Entry* setting(const Block& b, const char* key) {
  const Entry* found = nullptr;
  for (const Entry& e : b.entries)
    if (is_setting(e, key)) {
      if (found) fail(e.pos, std::string("'") + key + "' set twice, first at " + found->pos.str());
      found = &e;
    }
  return found;
}

std::string kind_of(const Block& b, const std::vector<std::string>& allowed) {
  const Entry* k = setting(b, "kind");
  if (!k) return "";
  const std::string& v = single_word(*k);
  if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    fail(k->value_pos[0], "unknown kind '" + v + "' in [" + b.name + "] (expected " + list + ")");
  }
  return v;
}

// word pattern check: e.g. {"", ":", "", "->", ""}
bool shape(const Entry& e, std::initializer_list<const char*> pat) {
  if (e.words.size() != pat.size()) return false;
  size_t i = 0;
  for (const char* p : pat) {
    if (*p && e.words[i] != p) return false;
    if (!*p && (e.words[i] == ":" || e.words[i] == "->" || e.words[i] == ";")) return false;
    ++i;
  }
  return true;
}

std::vector<ObjId> standard_objects(const FinSet& S) { return S.objects(); }

}  // namespace

void Workspace::validate(const SpecDocument& doc) { Workspace w(doc); }

Workspace::~Workspace() = default;

Workspace::Workspace(const SpecDocument& doc) {
  const Block* cat = doc.find("category");
  const Block* fin = doc.find("finset");
  if (cat && fin) fail(fin->pos, "[finset] and [category] describe two base categories; use one");
  if (cat) build_category(*cat);
  if (fin) build_finset(*fin);
  auto need_base = [&](const Block& b) {
    if (!C_) fail(b.pos, "[" + b.name + "] needs a [category] or [finset] block");
  };
  for (const char* name : {"universe", "products", "pullbacks", "ccc", "lcc", "csystem", "ucf"}) {
    const Block* b = doc.find(name);
    if (!b) continue;
    need_base(*b);
    std::string n = name;
    if (n == "universe") build_universe(*b);
    if (n == "products") build_products(*b);
    if (n == "pullbacks") build_pullbacks(*b);
    if (n == "ccc") build_ccc(*b);
    if (n == "lcc") build_lcc(*b);
    if (n == "csystem") build_csystem(*b);
    if (n == "ucf") build_ucf(*b);
  }
  if (U_ && fs_ && lcc_) I_ = std::make_unique<IpFunctor>(*U_, *fs_->products, *lcc_);
  params_.N = cs_kind_ == CsKind::kNone ? 2 : cs_N_;
  if (const Block* b = doc.find("suite")) build_suite(*b);
  if (const Block* b = doc.find("mutate")) build_mutate(*b);
}

ObjId Workspace::obj(const Entry&, const std::string& label, SourcePos p) const {
  if (!table_view_ || !table_view_->has_object(label)) fail(p, "unknown object '" + label + "'");
  return table_view_->object(label);
}

MorId Workspace::mor(const Entry&, const std::string& label, SourcePos p) const {
  if (!table_view_ || !table_view_->has_morphism(label)) fail(p, "unknown morphism '" + label + "'");
  return table_view_->morphism(label);
}

void Workspace::build_category(const Block& b) {
  std::string name = "C";
  if (const Entry* e = setting(b, "name")) name = single_word(*e);
  if (kind_of(b, {"table", "functions"}) == "functions") {
    const Entry* m = setting(b, "max");
    if (!m) fail(b.pos, "[category] kind = functions needs 'max'");
    int max = single_int(*m);
    if (max < 0 || max > 3) fail(m->value_pos[0], "functions category supports max 0..3");
    for (const Entry& e : b.entries)
      if (!is_setting(e, "kind") && !is_setting(e, "max") && !is_setting(e, "name")) unknown_entry(b, e);
    table_ = csys::functions_category(max, name);
    table_view_ = table_.get();
    C_ = table_.get();
    functions_ = true;
    return;
  }
  table_ = std::make_unique<TableCategory>(name);
  table_view_ = table_.get();
  C_ = table_.get();
  TableCategory& T = *table_;
  std::map<std::string, SourcePos> obj_at, mor_at;
  // objects
  for (const Entry& e : b.entries) {
    if (!is_setting(e, "objects")) continue;
    for (size_t i = 0; i < e.values.size(); ++i) {
      const std::string& o = e.values[i];
      if (auto it = obj_at.find(o); it != obj_at.end())
        fail(e.value_pos[i], "duplicate object id '" + o + "' at " + e.value_pos[i].str() + ", first declared at " +
                                 it->second.str());
      obj_at[o] = e.value_pos[i];
      T.add_object(o);
    }
  }
  for (ObjId X : T.objects()) {
    std::string id = "id_" + T.object_label(X);
    T.set_identity(X, T.add_morphism(id, X, X));
  }
  // morphisms
  for (const Entry& e : b.entries) {
    if (!shape(e, {"", ":", "", "->", ""}) || e.assign) continue;
    const std::string& f = e.words[0];
    if (f.rfind("id_", 0) == 0) fail(e.word_pos[0], "morphism names starting with id_ are reserved for identities");
    if (auto it = mor_at.find(f); it != mor_at.end())
      fail(e.word_pos[0], "duplicate morphism id '" + f + "' at " + e.word_pos[0].str() + ", first declared at " +
                              it->second.str());
    mor_at[f] = e.word_pos[0];
    T.add_morphism(f, obj(e, e.words[2], e.word_pos[2]), obj(e, e.words[4], e.word_pos[4]));
  }
  for (MorId f : T.morphisms()) {
    T.set_composite(T.identity(T.dom(f)), f, f);
    T.set_composite(f, T.identity(T.cod(f)), f);
  }
  // composites
  std::map<std::pair<uint32_t, uint32_t>, SourcePos> comp_at;
  for (const Entry& e : b.entries) {
    if (is_setting(e, "objects") || is_setting(e, "name") || is_setting(e, "kind")) continue;
    if (shape(e, {"", ":", "", "->", ""}) && !e.assign) continue;
    if (!shape(e, {"", ";", ""}) || !e.assign || e.values.size() != 1) unknown_entry(b, e);
    MorId f = mor(e, e.words[0], e.word_pos[0]);
    MorId g = mor(e, e.words[2], e.word_pos[2]);
    MorId h = mor(e, e.values[0], e.value_pos[0]);
    if (T.cod(f) != T.dom(g)) fail(e.pos, e.words[0] + " ; " + e.words[2] + " is not composable");
    if (T.dom(h) != T.dom(f) || T.cod(h) != T.cod(g))
      fail(e.value_pos[0], "composite " + e.values[0] + " has the wrong domain or codomain");
    auto key = std::make_pair(f.v, g.v);
    if (auto it = comp_at.find(key); it != comp_at.end())
      fail(e.pos, "composite " + e.words[0] + " ; " + e.words[2] + " given twice, first at " + it->second.str());
    if (T.composite(f, g) && *T.composite(f, g) != h)
      fail(e.pos, "composite with an identity is fixed: " + e.words[0] + " ; " + e.words[2]);
    comp_at[key] = e.pos;
    T.set_composite(f, g, h);
  }
  for (MorId f : T.morphisms())
    for (MorId g : T.morphisms())
      if (T.cod(f) == T.dom(g) && !T.composite(f, g))
        fail(b.pos, "composition table is not total: missing " + T.morphism_label(f) + " ; " + T.morphism_label(g));
}

void Workspace::build_finset(const Block& b) {
  const Entry* k = setting(b, "K");
  if (!k) fail(b.pos, "[finset] needs 'K'");
  int K = single_int(*k);
  if (K < 0 || K > 4) fail(k->value_pos[0], "K must be in 0..4");
  size_t limit = 4096;
  if (const Entry* l = setting(b, "element_limit")) {
    int v = single_int(*l);
    if (v < 1) fail(l->value_pos[0], "element_limit must be positive");
    limit = static_cast<size_t>(v);
  }
  std::string name = "FS";
  if (const Entry* e = setting(b, "name")) name = single_word(*e);
  for (const Entry& e : b.entries)
    if (!is_setting(e, "K") && !is_setting(e, "element_limit") && !is_setting(e, "name")) unknown_entry(b, e);
  fs_ = std::make_unique<FinSetModel>(make_finset(K, name, limit));
  C_ = fs_->S.get();
}

void Workspace::build_universe(const Block& b) {
  std::string name = "U";
  if (const Entry* e = setting(b, "name")) name = single_word(*e);
  if (fs_) {
    const Entry* s = setting(b, "sizes");
    if (!s) fail(b.pos, "[universe] over [finset] needs 'sizes'");
    std::vector<int> sizes = int_list(*s);
    for (size_t i = 0; i < sizes.size(); ++i)
      if (sizes[i] < 0 || sizes[i] > fs_->S->bound())
        fail(s->value_pos[i], "code size must be in 0..K");
    for (const Entry& e : b.entries)
      if (!is_setting(e, "sizes") && !is_setting(e, "name")) unknown_entry(b, e);
    own_U_ = std::make_unique<CodingUniverse>(*fs_->S, sizes, name);
    U_ = own_U_.get();
    return;
  }
  const Entry* pe = setting(b, "p");
  const Entry* pte = setting(b, "pt");
  if (!pe || !pte) fail(b.pos, "[universe] over [category] needs 'p' and 'pt'");
  MorId p = mor(*pe, single_word(*pe), pe->value_pos[0]);
  ObjId pt = obj(*pte, single_word(*pte), pte->value_pos[0]);
  auto U = std::make_unique<TableUniverse>(*table_view_, p, pt, name);
  const TableCategory& T = *table_view_;
  std::map<uint32_t, SourcePos> at;
  for (const Entry& e : b.entries) {
    if (is_setting(e, "p") || is_setting(e, "pt") || is_setting(e, "name")) continue;
    if (!shape(e, {"comprehension", ""}) || !e.assign || e.values.size() != 3) unknown_entry(b, e);
    MorId F = mor(e, e.words[1], e.word_pos[1]);
    if (T.cod(F) != U->U()) fail(e.word_pos[1], e.words[1] + " does not land in the universe base");
    ObjId apex = obj(e, e.values[0], e.value_pos[0]);
    MorId pF = mor(e, e.values[1], e.value_pos[1]);
    MorId QF = mor(e, e.values[2], e.value_pos[2]);
    if (T.dom(pF) != apex || T.cod(pF) != T.dom(F)) fail(e.value_pos[1], "projection has the wrong type");
    if (T.dom(QF) != apex || T.cod(QF) != U->U_tilde()) fail(e.value_pos[2], "Q has the wrong type");
    if (auto it = at.find(F.v); it != at.end())
      fail(e.pos, "comprehension of " + e.words[1] + " given twice, first at " + it->second.str());
    at[F.v] = e.pos;
    U->set(F, Comprehension{apex, pF, QF});
  }
  for (ObjId X : T.objects())
    for (MorId F : T.hom(X, U->U()))
      if (!at.count(F.v)) fail(b.pos, "comprehension table is not total: missing " + T.morphism_label(F));
  U_ = U.get();
  own_U_ = std::move(U);
}

void Workspace::build_products(const Block& b) {
  if (fs_) {
    std::string k = kind_of(b, {"pairs", "swapped"});
    for (const Entry& e : b.entries)
      if (!is_setting(e, "kind")) unknown_entry(b, e);
    bool swapped = k == "swapped";
    products_ = swapped ? fs_->swapped.get() : fs_->products.get();
    products_alt_ = swapped ? fs_->products.get() : fs_->swapped.get();
    return;
  }
  if (functions_) fail(b.pos, "[products] tables are not available on the functions category");
  const TableCategory& T = *table_view_;
  own_products_ = std::make_unique<TableProducts>(T, "table");
  std::map<uint64_t, SourcePos> at;
  for (const Entry& e : b.entries) {
    if (!shape(e, {"product", "", ""}) || !e.assign || e.values.size() != 3) unknown_entry(b, e);
    ObjId X = obj(e, e.words[1], e.word_pos[1]), Y = obj(e, e.words[2], e.word_pos[2]);
    ObjId P = obj(e, e.values[0], e.value_pos[0]);
    MorId p1 = mor(e, e.values[1], e.value_pos[1]), p2 = mor(e, e.values[2], e.value_pos[2]);
    if (T.dom(p1) != P || T.cod(p1) != X) fail(e.value_pos[1], "first projection has the wrong type");
    if (T.dom(p2) != P || T.cod(p2) != Y) fail(e.value_pos[2], "second projection has the wrong type");
    if (auto it = at.find(pack(X.v, Y.v)); it != at.end())
      fail(e.pos, "product given twice, first at " + it->second.str());
    at[pack(X.v, Y.v)] = e.pos;
    own_products_->set(X, Y, ProductDiagram{P, p1, p2});
  }
  for (ObjId X : T.objects())
    for (ObjId Y : T.objects())
      if (!at.count(pack(X.v, Y.v)))
        fail(b.pos, "product table is not total: missing " + T.object_label(X) + " " + T.object_label(Y));
  products_ = products_alt_ = own_products_.get();
}

void Workspace::build_pullbacks(const Block& b) {
  if (fs_) {
    kind_of(b, {"subsets"});
    for (const Entry& e : b.entries)
      if (!is_setting(e, "kind")) unknown_entry(b, e);
    pullbacks_ = fs_->pullbacks.get();
    return;
  }
  if (functions_) {
    std::string k = kind_of(b, {"str1", "str-sigma"});
    for (const Entry& e : b.entries)
      if (!is_setting(e, "kind")) unknown_entry(b, e);
    StrVariants v = make_str_variants(*table_view_);
    own_pullbacks_ = std::move(k == "str-sigma" ? v.str_sigma : v.str1);
    own_pullbacks_alt_ = std::move(k == "str-sigma" ? v.str1 : v.str_sigma);
    pullbacks_ = own_pullbacks_.get();
    return;
  }
  const TableCategory& T = *table_view_;
  auto pb = std::make_unique<TablePullbacks>(T, "table");
  std::map<uint64_t, SourcePos> at;
  for (const Entry& e : b.entries) {
    if (!shape(e, {"pullback", "", ""}) || !e.assign || e.values.size() != 3) unknown_entry(b, e);
    MorId f = mor(e, e.words[1], e.word_pos[1]), g = mor(e, e.words[2], e.word_pos[2]);
    if (T.cod(f) != T.cod(g)) fail(e.pos, "not a cospan: codomains differ");
    ObjId P = obj(e, e.values[0], e.value_pos[0]);
    MorId p1 = mor(e, e.values[1], e.value_pos[1]), p2 = mor(e, e.values[2], e.value_pos[2]);
    if (T.dom(p1) != P || T.cod(p1) != T.dom(f)) fail(e.value_pos[1], "first leg has the wrong type");
    if (T.dom(p2) != P || T.cod(p2) != T.dom(g)) fail(e.value_pos[2], "second leg has the wrong type");
    if (auto it = at.find(pack(f.v, g.v)); it != at.end())
      fail(e.pos, "pullback given twice, first at " + it->second.str());
    at[pack(f.v, g.v)] = e.pos;
    pb->set(f, g, PullbackDiagram{P, p1, p2});
  }
  pullbacks_ = pb.get();
  own_pullbacks_ = std::move(pb);
}

void Workspace::build_ccc(const Block& b) {
  if (fs_) {
    kind_of(b, {"functions"});
    for (const Entry& e : b.entries)
      if (!is_setting(e, "kind")) unknown_entry(b, e);
    ccc_ = fs_->ccc.get();
    return;
  }
  if (!own_products_) fail(b.pos, "[ccc] tables need a [products] table");
  const TableCategory& T = *table_view_;
  own_ccc_ = std::make_unique<TableCCC>(*own_products_);
  std::map<uint64_t, SourcePos> at;
  for (const Entry& e : b.entries) {
    if (!shape(e, {"hom", "", ""}) || !e.assign || e.values.size() != 2) unknown_entry(b, e);
    ObjId X = obj(e, e.words[1], e.word_pos[1]), Y = obj(e, e.words[2], e.word_pos[2]);
    ObjId H = obj(e, e.values[0], e.value_pos[0]);
    MorId ev = mor(e, e.values[1], e.value_pos[1]);
    if (T.cod(ev) != Y || T.dom(ev) != own_products_->product(H, X).apex)
      fail(e.value_pos[1], "evaluation has the wrong type");
    if (auto it = at.find(pack(X.v, Y.v)); it != at.end())
      fail(e.pos, "internal hom given twice, first at " + it->second.str());
    at[pack(X.v, Y.v)] = e.pos;
    own_ccc_->set(X, Y, H, ev);
  }
  for (ObjId X : T.objects())
    for (ObjId Y : T.objects())
      if (!at.count(pack(X.v, Y.v)))
        fail(b.pos, "internal hom table is not total: missing " + T.object_label(X) + " " + T.object_label(Y));
  ccc_ = own_ccc_.get();
}

void Workspace::build_lcc(const Block& b) {
  if (!fs_) fail(b.pos, "[lcc] is only available over [finset]");
  kind_of(b, {"canonical"});
  for (const Entry& e : b.entries)
    if (!is_setting(e, "kind")) unknown_entry(b, e);
  lcc_ = fs_->lcc.get();
}

void Workspace::build_csystem(const Block& b) {
  std::string k = kind_of(b, {"cc", "table"});
  if (k.empty()) fail(b.pos, "[csystem] needs 'kind = cc' or 'kind = table'");
  if (const Entry* n = setting(b, "N")) {
    cs_N_ = single_int(*n);
    if (cs_N_ < 0) fail(n->value_pos[0], "N must be non-negative");
  }
  if (k == "cc") {
    if (!U_) fail(b.pos, "[csystem] kind = cc needs a [universe]");
    for (const Entry& e : b.entries)
      if (!is_setting(e, "kind") && !is_setting(e, "N")) unknown_entry(b, e);
    cs_kind_ = CsKind::kCC;
    return;
  }
  if (!table_ || functions_) fail(b.pos, "[csystem] kind = table needs a [category] table");
  auto cs = std::make_unique<TableCSystem>(std::move(table_), cs_N_);
  const TableCategory& T = cs->table();
  std::map<uint32_t, int> len;
  std::map<uint32_t, ObjId> ft;
  std::set<uint32_t> proj;
  std::set<uint64_t> bc;
  bool have_pt = false;
  for (const Entry& e : b.entries) {
    if (is_setting(e, "kind") || is_setting(e, "N")) continue;
    if (is_setting(e, "pt")) {
      cs->set_pt(obj(e, single_word(e), e.value_pos[0]));
      have_pt = true;
    } else if (shape(e, {"length", ""}) && e.assign) {
      ObjId X = obj(e, e.words[1], e.word_pos[1]);
      int n = single_int(e);
      if (n < 0 || n > cs_N_) fail(e.value_pos[0], "length must be in 0..N");
      if (len.count(X.v)) fail(e.pos, "length of " + e.words[1] + " given twice");
      len[X.v] = n;
      cs->set_length(X, n);
    } else if (shape(e, {"ft", ""}) && e.assign) {
      ObjId X = obj(e, e.words[1], e.word_pos[1]);
      if (ft.count(X.v)) fail(e.pos, "ft of " + e.words[1] + " given twice");
      ft[X.v] = obj(e, single_word(e), e.value_pos[0]);
      cs->set_ft(X, ft[X.v]);
    } else if (shape(e, {"proj", ""}) && e.assign) {
      ObjId X = obj(e, e.words[1], e.word_pos[1]);
      MorId p = mor(e, single_word(e), e.value_pos[0]);
      if (T.dom(p) != X) fail(e.value_pos[0], "projection must start at " + e.words[1]);
      if (!proj.insert(X.v).second) fail(e.pos, "projection of " + e.words[1] + " given twice");
      cs->set_proj(X, p);
    } else if (shape(e, {"base-change", "", ""}) && e.assign && e.values.size() == 2) {
      MorId f = mor(e, e.words[1], e.word_pos[1]);
      ObjId X = obj(e, e.words[2], e.word_pos[2]);
      ObjId fX = obj(e, e.values[0], e.value_pos[0]);
      MorId q = mor(e, e.values[1], e.value_pos[1]);
      if (T.dom(q) != fX || T.cod(q) != X) fail(e.value_pos[1], "q must go from the base change to " + e.words[2]);
      if (!bc.insert(pack(f.v, X.v)).second) fail(e.pos, "base change given twice");
      cs->set_base_change(f, X, fX, q);
    } else {
      unknown_entry(b, e);
    }
  }
  if (!have_pt) fail(b.pos, "[csystem] table needs 'pt'");
  for (ObjId X : T.objects()) {
    if (!len.count(X.v)) fail(b.pos, "length table is not total: missing " + T.object_label(X));
    if (!ft.count(X.v)) fail(b.pos, "ft table is not total: missing " + T.object_label(X));
    if (len[X.v] > 0 && !proj.count(X.v)) fail(b.pos, "projection table is not total: missing " + T.object_label(X));
  }
  // base change is needed where f*X stays within the truncation
  for (ObjId X : T.objects()) {
    if (len[X.v] == 0) continue;
    ObjId G = ft[X.v];
    for (ObjId G1 : T.objects())
      for (MorId f : T.hom(G1, G))
        if (len[G1.v] + 1 <= cs_N_ && !bc.count(pack(f.v, X.v)))
          fail(b.pos, "base change table is not total: missing " + T.morphism_label(f) + " " + T.object_label(X));
  }
  table_view_ = &cs->table();
  table_cs_ = std::move(cs);
  cs_kind_ = CsKind::kTable;
}

void Workspace::build_ucf(const Block& b) {
  std::string k = kind_of(b, {"identity", "inclusion", "table"});
  if (k.empty()) fail(b.pos, "[ucf] needs 'kind'");
  if (!U_) fail(b.pos, "[ucf] needs a [universe]");
  const Category& C = *C_;
  if (k == "identity") {
    for (const Entry& e : b.entries)
      if (!is_setting(e, "kind")) unknown_entry(b, e);
    own_Phi_ = std::make_unique<IdentityFunctor>(C);
    own_F_ = std::make_unique<UnivCatFunctor>(*U_, *U_, *own_Phi_, C.identity(U_->U()), C.identity(U_->U_tilde()));
    F_ = own_F_.get();
    return;
  }
  if (k == "inclusion") {
    auto* cu = dynamic_cast<const CodingUniverse*>(U_);
    if (!fs_ || !cu) fail(b.pos, "[ucf] kind = inclusion needs [finset] with a coded [universe]");
    const Entry* ke = setting(b, "K");
    const Entry* se = setting(b, "sizes");
    if (!ke || !se) fail(b.pos, "[ucf] kind = inclusion needs 'K' and 'sizes'");
    for (const Entry& e : b.entries)
      if (!is_setting(e, "kind") && !is_setting(e, "K") && !is_setting(e, "sizes")) unknown_entry(b, e);
    int K2 = single_int(*ke);
    if (K2 < fs_->S->bound() || K2 > 4) fail(ke->value_pos[0], "target K must be in source K..4");
    std::vector<int> sizes2 = int_list(*se);
    const auto& sizes = cu->sizes();
    if (sizes2.size() < sizes.size() || !std::equal(sizes.begin(), sizes.end(), sizes2.begin()))
      fail(se->value_pos.empty() ? se->pos : se->value_pos[0], "target sizes must extend the source sizes");
    for (size_t i = 0; i < sizes2.size(); ++i)
      if (sizes2[i] < 0 || sizes2[i] > K2) fail(se->value_pos[i], "code size must be in 0..K");
    inc_ = make_inclusion_fixture(fs_->S->bound(), sizes, K2, sizes2, std::max<size_t>(fs_->S->element_limit(), 1 << 16));
    F_ = inc_->F.get();
    Isrc_ = std::make_unique<IpFunctor>(*inc_->U, *inc_->source.products, *inc_->source.lcc);
    J_ = std::make_unique<IpFunctor>(*inc_->V, *inc_->target.products, *inc_->target.lcc);
    return;
  }
  if (!table_view_ || functions_) fail(b.pos, "[ucf] kind = table needs a [category] table");
  const TableCategory& T = *table_view_;
  auto Phi = std::make_unique<TableFunctor>(C, C);
  std::set<uint32_t> objs, mors;
  std::optional<MorId> phi, phit;
  for (const Entry& e : b.entries) {
    if (is_setting(e, "kind")) continue;
    if (is_setting(e, "phi")) {
      phi = mor(e, single_word(e), e.value_pos[0]);
    } else if (is_setting(e, "phi-tilde")) {
      phit = mor(e, single_word(e), e.value_pos[0]);
    } else if (shape(e, {"object", ""}) && e.assign) {
      ObjId X = obj(e, e.words[1], e.word_pos[1]);
      if (!objs.insert(X.v).second) fail(e.pos, "image of " + e.words[1] + " given twice");
      Phi->set_object(X, obj(e, single_word(e), e.value_pos[0]));
    } else if (shape(e, {"morphism", ""}) && e.assign) {
      MorId f = mor(e, e.words[1], e.word_pos[1]);
      if (!mors.insert(f.v).second) fail(e.pos, "image of " + e.words[1] + " given twice");
      Phi->set_morphism(f, mor(e, single_word(e), e.value_pos[0]));
    } else {
      unknown_entry(b, e);
    }
  }
  if (!phi || !phit) fail(b.pos, "[ucf] table needs 'phi' and 'phi-tilde'");
  for (ObjId X : T.objects()) {
    if (!objs.count(X.v)) fail(b.pos, "functor table is not total: missing object " + T.object_label(X));
    MorId id = T.identity(X);
    if (!mors.count(id.v)) Phi->set_morphism(id, T.identity(Phi->on_object(X)));
  }
  for (MorId f : T.morphisms())
    if (!mors.count(f.v) && f != T.identity(T.dom(f)))
      fail(b.pos, "functor table is not total: missing morphism " + T.morphism_label(f));
  if (T.dom(*phi) != Phi->on_object(U_->U()) || T.cod(*phi) != U_->U())
    fail(b.pos, "phi must go from the image of U to U");
  if (T.dom(*phit) != Phi->on_object(U_->U_tilde()) || T.cod(*phit) != U_->U_tilde())
    fail(b.pos, "phi-tilde must go from the image of the total object to it");
  own_Phi_ = std::move(Phi);
  own_F_ = std::make_unique<UnivCatFunctor>(*U_, *U_, *own_Phi_, *phi, *phit);
  F_ = own_F_.get();
}

void Workspace::build_suite(const Block& b) {
  for (const Entry& e : b.entries) {
    if (is_setting(e, "run")) {
      selection_.insert(selection_.end(), e.values.begin(), e.values.end());
    } else if (is_setting(e, "n")) {
      params_.n = single_int(e);
    } else if (is_setting(e, "N")) {
      params_.N = single_int(e);
    } else if (is_setting(e, "depth")) {
      params_.depth = single_int(e);
    } else {
      unknown_entry(b, e);
    }
  }
}

void Workspace::build_mutate(const Block& b) {
  const Entry* f = setting(b, "fault");
  if (!f) fail(b.pos, "[mutate] needs 'fault'");
  fault_ = fault_from_name(single_word(*f));
  if (!fault_)
    fail(f->value_pos[0], "unknown fault '" + f->values[0] +
                              "' (expected unit-law, q-square, phi-tilde-pullback, sig-naturality, u1-naturality)");
  if (const Entry* s = setting(b, "seed")) seed_ = single_int(*s);
  for (const Entry& e : b.entries)
    if (!is_setting(e, "fault") && !is_setting(e, "seed")) unknown_entry(b, e);
}

std::vector<ObjId> Workspace::objects() const {
  if (fs_) return standard_objects(*fs_->S);
  return C_->objects();
}

const CSystem& Workspace::csystem(int N) const {
  if (cs_kind_ == CsKind::kTable) return *table_cs_;
  const CCSystem* c = cc(N);
  if (!c) throw StructureError("no C-system in the document");
  return *c;
}

const CCSystem* Workspace::cc(int N) const {
  if (cs_kind_ != CsKind::kCC) return nullptr;
  std::lock_guard<std::mutex> lk(mu_);
  auto& slot = cc_[N];
  if (!slot) slot = std::make_unique<CCSystem>(*U_, N);
  return slot.get();
}

int Workspace::table_truncation() const { return table_cs_ ? table_cs_->truncation() : -1; }

std::vector<ObjId> Workspace::ucf_source_objects() const {
  if (inc_) return standard_objects(*inc_->source.S);
  return objects();
}

std::vector<ObjId> Workspace::ucf_target_objects() const {
  if (inc_) return standard_objects(*inc_->target.S);
  return objects();
}

const CCSystem& Workspace::ucf_source_cc(int N) const {
  std::lock_guard<std::mutex> lk(mu_);
  auto& slot = ucf_src_[N];
  if (!slot) slot = std::make_unique<CCSystem>(F_->source(), N);
  return *slot;
}

const CCSystem& Workspace::ucf_target_cc(int N) const {
  std::lock_guard<std::mutex> lk(mu_);
  auto& slot = ucf_dst_[N];
  if (!slot) slot = std::make_unique<CCSystem>(F_->target(), N);
  return *slot;
}

const HHomomorphism& Workspace::homomorphism(int N) const {
  const CCSystem& a = ucf_source_cc(N);
  const CCSystem& b = ucf_target_cc(N);
  std::lock_guard<std::mutex> lk(mu_);
  auto& slot = H_[N];
  if (!slot) slot = std::make_unique<HHomomorphism>(*F_, a, b);
  return *slot;
}

}  // namespace csys
