#include "csys/csystem.hpp"

#include <algorithm>
#include <unordered_set>

namespace csys {

// ------------------------------------------------------------ CSystem

std::vector<MorId> CSystem::sections(ObjId T) const {
  std::vector<MorId> out;
  if (length(T) == 0) return out;
  MorId p = proj(T), id = identity(ft(T));
  for (MorId s : hom(ft(T), T))
    if (compose(s, p) == id) out.push_back(s);
  return out;
}

MorId CSystem::section_base_change(MorId f, MorId o, int n) const {
  ObjId T = cod(o);
  ObjId fT = base_change_n(f, T, n);
  MorId target = compose(q_n(f, ft(T), n - 1), o);
  MorId qn = q_n(f, T, n);
  std::optional<MorId> found;
  for (MorId s : sections(fT))
    if (compose(s, qn) == target) {
      if (found) throw StructureError("several base changes of section " + describe(o) + " along " + describe(f));
      found = s;
    }
  if (!found) throw StructureError("no base change of section " + describe(o) + " along " + describe(f));
  return *found;
}

std::vector<ObjId> CSystem::objects_of_length(int n) const {
  std::vector<ObjId> out;
  for (ObjId X : objects())
    if (length(X) == n) out.push_back(X);
  return out;
}

std::vector<ObjId> CSystem::objects_up_to(int n) const {
  std::vector<ObjId> out;
  for (ObjId X : objects())
    if (length(X) <= n) out.push_back(X);
  return out;
}

ObjId CSystem::ft_n(ObjId X, int n) const {
  for (int i = 0; i < n; ++i) X = ft(X);
  return X;
}

ObjId CSystem::base_change_n(MorId f, ObjId T, int n) const {
  if (n == 0) return dom(f);
  return base_change(q_n(f, ft(T), n - 1), T);
}

MorId CSystem::q_n(MorId f, ObjId T, int n) const {
  if (n == 0) return f;
  return q(q_n(f, ft(T), n - 1), T);
}

// ------------------------------------------------------------ axioms

LawReport check_csystem(const CSystem& cs, const CSystemCheckOptions& opt) {
  LawReport rep("csystem-axioms");
  const int N = cs.truncation();
  const int ml = opt.morphism_length >= 0 ? opt.morphism_length : std::max(0, N - 1);
  const ObjId pt = cs.pt();
  auto all = cs.objects();

  rep.expect(cs.length(pt) == 0, "pt-length", [&] { return cs.object_label(pt); });
  rep.expect(cs.ft(pt) == pt, "ft-pt", [&] { return cs.object_label(cs.ft(pt)); });
  for (ObjId X : all)
    rep.expect(cs.hom(X, pt).size() == 1, "pt-final",
               [&] { return cs.object_label(X) + " has " + std::to_string(cs.hom(X, pt).size()) + " maps to pt"; });

  // children[Γ] = objects T with ft T = Γ, l(T) = l(Γ) + 1
  std::unordered_map<ObjId, std::vector<ObjId>> children;
  for (ObjId X : all) {
    int l = cs.length(X);
    if (l == 0) {
      rep.expect(X == pt, "single-length-zero", [&] { return cs.object_label(X); });
      continue;
    }
    ObjId F = cs.ft(X);
    rep.expect(cs.length(F) == l - 1, "ft-length", [&] { return cs.object_label(X); });
    MorId p = cs.proj(X);
    rep.expect(cs.dom(p) == X && cs.cod(p) == F, "projection-typing", [&] { return cs.describe(p); });
    children[F].push_back(X);
  }

  std::vector<ObjId> probes = cs.objects_up_to(opt.probe_length);
  std::vector<ObjId> bases = cs.objects_up_to(std::min(ml, N - 1));
  std::vector<ObjId> sources = cs.objects_up_to(ml);

  for (ObjId G : bases)
    for (ObjId T : children[G]) {
      MorId id = cs.identity(G);
      rep.expect(cs.base_change(id, T) == T, "identity-base-change", [&] { return cs.object_label(T); });
      rep.expect(cs.q(id, T) == cs.identity(T), "identity-q", [&] { return cs.object_label(T); });
    }

  for (ObjId G : bases)
    for (ObjId T : children[G])
      for (ObjId G1 : sources)
        for (MorId f : cs.hom(G1, G)) {
          ObjId fT = cs.base_change(f, T);
          MorId q = cs.q(f, T);
          bool typed = cs.length(fT) == cs.length(G1) + 1 && cs.ft(fT) == G1 && cs.dom(q) == fT && cs.cod(q) == T;
          rep.expect(typed, "base-change-typing",
                     [&] { return cs.describe(f) + " on " + cs.object_label(T) + " gives " + cs.describe(q); });
          if (!typed) continue;
          rep.expect(cs.compose(q, cs.proj(T)) == cs.compose(cs.proj(fT), f), "q-square",
                     [&] { return cs.describe(f) + " on " + cs.object_label(T); });
          std::string why = pullback_failure(cs, fT, cs.proj(fT), q, f, cs.proj(T), probes);
          rep.expect(why.empty(), "q-pullback", [&] { return cs.describe(f) + " on " + cs.object_label(T) + ": " + why; });
          for (ObjId G2 : sources)
            for (MorId f1 : cs.hom(G2, G1)) {
              MorId ff = cs.compose(f1, f);
              ObjId lhs = cs.base_change(ff, T);
              ObjId rhs = cs.base_change(f1, fT);
              if (!rep.expect(lhs == rhs, "composite-base-change", [&] {
                    return cs.describe(f1) + " then " + cs.describe(f) + " on " + cs.object_label(T);
                  }))
                continue;
              rep.expect(cs.q(ff, T) == cs.compose(cs.q(f1, fT), q), "composite-q", [&] {
                return cs.describe(f1) + " then " + cs.describe(f) + " on " + cs.object_label(T);
              });
            }
        }
  return rep;
}

// ------------------------------------------------------------ tables

TableCSystem::TableCSystem(std::unique_ptr<TableCategory> C, int truncation)
    : C_(std::move(C)), truncation_(truncation) {}

void TableCSystem::set_base_change(MorId f, ObjId T, ObjId fT, MorId q) { bc_[pack(f.v, T.v)] = {fT, q}; }

int TableCSystem::length(ObjId X) const {
  auto it = len_.find(X);
  if (it == len_.end()) throw UnknownId("no length for " + object_label(X));
  return it->second;
}

ObjId TableCSystem::ft(ObjId X) const {
  if (pt_ && X == *pt_) return X;
  auto it = ft_.find(X);
  if (it == ft_.end()) throw UnknownId("no ft for " + object_label(X));
  return it->second;
}

ObjId TableCSystem::pt() const {
  if (!pt_) throw UnknownId("no pt in " + name());
  return *pt_;
}

MorId TableCSystem::proj(ObjId X) const {
  auto it = proj_.find(X);
  if (it == proj_.end()) throw UnknownId("no projection for " + object_label(X));
  return it->second;
}

ObjId TableCSystem::base_change(MorId f, ObjId T) const {
  auto it = bc_.find(pack(f.v, T.v));
  if (it == bc_.end()) throw UnknownId("no base change of " + object_label(T) + " along " + morphism_label(f));
  return it->second.first;
}

MorId TableCSystem::q(MorId f, ObjId T) const {
  auto it = bc_.find(pack(f.v, T.v));
  if (it == bc_.end()) throw UnknownId("no q for " + object_label(T) + " along " + morphism_label(f));
  return it->second.second;
}

std::unique_ptr<TableCSystem> trivial_csystem() {
  auto C = std::make_unique<TableCategory>("pt-only");
  ObjId pt = C->add_object("pt");
  MorId id = C->add_morphism("id", pt, pt);
  C->set_identity(pt, id);
  C->set_composite(id, id, id);
  auto cs = std::make_unique<TableCSystem>(std::move(C), 0);
  cs->set_length(pt, 0);
  cs->set_pt(pt);
  return cs;
}

MorId PatchedCSystem::q(MorId f, ObjId T) const {
  auto it = q_.find(pack(f.v, T.v));
  return it == q_.end() ? b_.q(f, T) : it->second;
}

// ------------------------------------------------------------ presheaves

namespace {

std::vector<ObjId> children_of(const CSystem& cs, ObjId G, int n) {
  std::vector<ObjId> out;
  int l = cs.length(G) + n;
  if (n == 0) return {G};
  for (ObjId T : cs.objects())
    if (cs.length(T) == l && cs.ft_n(T, n) == G) out.push_back(T);
  return out;
}

std::string ob_name(const char* base, int n) { return std::string(base) + "_" + std::to_string(n); }

}  // namespace

ObPresheaf::ObPresheaf(const CSystem& cs, int n) : Presheaf(cs, ob_name("Ob", n)), cs_(cs), n_(n) {}

bool ObPresheaf::defined_at(ObjId X) const { return cs_.length(X) + n_ <= cs_.truncation(); }

ElementSet ObPresheaf::compute(ObjId X) const {
  require_defined(X);
  ElementSet out;
  for (ObjId T : children_of(cs_, X, n_)) out.push_back(Term::obj(T));
  std::sort(out.begin(), out.end());
  return out;
}

Term ObPresheaf::restrict(MorId f, const Term& x) const {
  return Term::obj(cs_.base_change_n(f, x.as_obj(), n_));
}

ObTildePresheaf::ObTildePresheaf(const CSystem& cs, int n) : Presheaf(cs, ob_name("ObT", n)), cs_(cs), n_(n) {}

bool ObTildePresheaf::defined_at(ObjId X) const { return cs_.length(X) + n_ <= cs_.truncation(); }

ElementSet ObTildePresheaf::compute(ObjId X) const {
  require_defined(X);
  ElementSet out;
  if (n_ == 0) return out;
  for (ObjId T : children_of(cs_, X, n_))
    for (MorId o : cs_.sections(T)) out.push_back(Term::mor(o));
  std::sort(out.begin(), out.end());
  return out;
}

Term ObTildePresheaf::restrict(MorId f, const Term& x) const {
  return Term::mor(cs_.section_base_change(f, x.as_mor(), n_));
}

PresheafPtr ob_n(const CSystem& cs, int n) { return std::make_shared<ObPresheaf>(cs, n); }
PresheafPtr ob_tilde_n(const CSystem& cs, int n) { return std::make_shared<ObTildePresheaf>(cs, n); }

namespace {

PshMorPtr make_boundary(const CSystem& cs, PresheafPtr source, PresheafPtr target, int n) {
  return std::make_shared<LambdaMorphism>(source, target, "d_" + std::to_string(n),
                                          [&cs](ObjId, const Term& o) { return Term::obj(cs.cod(o.as_mor())); });
}

}  // namespace

PshMorPtr boundary(const CSystem& cs, int n) { return make_boundary(cs, ob_tilde_n(cs, n), ob_n(cs, n), n); }

SigPresheaf::SigPresheaf(const CSystem& cs, PresheafPtr G)
    : Presheaf(cs, "Sig(" + G->name() + ")"), cs_(cs), G_(std::move(G)) {}

bool SigPresheaf::defined_at(ObjId X) const {
  if (cs_.length(X) + 1 > cs_.truncation()) return false;
  for (ObjId T : children_of(cs_, X, 1))
    if (!G_->defined_at(T)) return false;
  return true;
}

ElementSet SigPresheaf::compute(ObjId X) const {
  require_defined(X);
  ElementSet out;
  for (ObjId T : children_of(cs_, X, 1))
    for (const Term& g : G_->at(T)) out.push_back(Term::pair(Term::obj(T), g));
  std::sort(out.begin(), out.end());
  return out;
}

Term SigPresheaf::restrict(MorId f, const Term& x) const {
  ObjId T = x.first().as_obj();
  return Term::pair(Term::obj(cs_.base_change(f, T)), G_->restrict(cs_.q(f, T), x.second()));
}

PresheafPtr sig(const CSystem& cs, PresheafPtr G) { return std::make_shared<SigPresheaf>(cs, std::move(G)); }

PshMorPtr sig(const CSystem&, PshMorPtr r, PresheafPtr source, PresheafPtr target) {
  return std::make_shared<LambdaMorphism>(std::move(source), std::move(target), "Sig(" + r->name() + ")",
                                          [r](ObjId, const Term& x) {
                                            return Term::pair(x.first(), r->apply(x.first().as_obj(), x.second()));
                                          });
}

PshMorPtr sig(const CSystem& cs, PshMorPtr r) { return sig(cs, r, sig(cs, r->source()), sig(cs, r->target())); }

PresheafPtr sig_iter(const CSystem& cs, int n, PresheafPtr G) {
  for (int i = 0; i < n; ++i) G = sig(cs, G);
  return G;
}

// ------------------------------------------------------------ SOb

PresheafPtr CSystemPresheaves::ob(int n) const { return sig_ob(0, n); }
PresheafPtr CSystemPresheaves::ob_tilde(int n) const { return sig_ob_tilde(0, n); }

PresheafPtr CSystemPresheaves::sig_ob(int k, int m) const {
  auto key = std::make_tuple(0, k, m);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  PresheafPtr G = k == 0 ? ob_n(cs_, m) : sig(cs_, sig_ob(k - 1, m));
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.emplace(key, G).first->second;
}

PresheafPtr CSystemPresheaves::sig_ob_tilde(int k, int m) const {
  auto key = std::make_tuple(1, k, m);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  PresheafPtr G = k == 0 ? ob_tilde_n(cs_, m) : sig(cs_, sig_ob_tilde(k - 1, m));
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.emplace(key, G).first->second;
}

PshMorPtr boundary(const CSystemPresheaves& P, int n) {
  return make_boundary(P.csystem(), P.ob_tilde(n), P.ob(n), n);
}

PshMorPtr s_ob(const CSystemPresheaves& P, int n) {
  return std::make_shared<LambdaMorphism>(P.sig_ob(1, n), P.ob(n + 1), "SOb_" + std::to_string(n),
                                          [](ObjId, const Term& x) { return x.second(); });
}

PshMorPtr s_ob_inverse(const CSystemPresheaves& P, int n) {
  const CSystem& cs = P.csystem();
  return std::make_shared<LambdaMorphism>(P.ob(n + 1), P.sig_ob(1, n), "SOb_" + std::to_string(n) + "^-1",
                                          [&cs, n](ObjId, const Term& x) {
                                            return Term::pair(Term::obj(cs.ft_n(x.as_obj(), n)), x);
                                          });
}

PshMorPtr s_ob_tilde(const CSystemPresheaves& P, int n) {
  return std::make_shared<LambdaMorphism>(P.sig_ob_tilde(1, n), P.ob_tilde(n + 1), "SObT_" + std::to_string(n),
                                          [](ObjId, const Term& x) { return x.second(); });
}

PshMorPtr s_ob_tilde_inverse(const CSystemPresheaves& P, int n) {
  const CSystem& cs = P.csystem();
  return std::make_shared<LambdaMorphism>(P.ob_tilde(n + 1), P.sig_ob_tilde(1, n),
                                          "SObT_" + std::to_string(n) + "^-1", [&cs, n](ObjId, const Term& o) {
                                            ObjId d = cs.cod(o.as_mor());
                                            return Term::pair(Term::obj(cs.ft_n(d, n)), o);
                                          });
}

PshMorPtr s_ob_iter(const CSystemPresheaves& P, int n, int m) {
  if (n == 0) return identity_morphism(P.ob(m));
  PshMorPtr prev = s_ob_iter(P, n - 1, m);
  PshMorPtr lifted = sig(P.csystem(), prev, P.sig_ob(n, m), P.sig_ob(1, n - 1 + m));
  return compose_morphisms(lifted, s_ob(P, n - 1 + m));
}

PshMorPtr s_ob_iter_unpack(const CSystemPresheaves& P, int n, int m) {
  const CSystem& cs = P.csystem();
  return std::make_shared<LambdaMorphism>(
      P.ob(n + m), P.sig_ob(n, m), "unpack_" + std::to_string(n) + "_" + std::to_string(m),
      [&cs, n, m](ObjId, const Term& x) {
        ObjId X = x.as_obj();
        Term t = x;
        for (int k = 1; k <= n; ++k) t = Term::pair(Term::obj(cs.ft_n(X, m + k - 1)), t);
        return t;
      });
}

// ------------------------------------------------------------ checks

CheckScope csystem_scope(const CSystem& cs) {
  return CheckScope{cs.objects_up_to(std::max(0, cs.truncation() - 1)), true};
}

namespace {

void merge_as(LawReport& into, const LawReport& part, const std::string& prefix) { into.merge(part, prefix); }

}  // namespace

LawReport check_ob_presheaves(const CSystem& cs, int max_n) {
  LawReport rep("ob-presheaf");
  CSystemPresheaves P(cs);
  CheckScope scope = csystem_scope(cs);
  for (int n = 0; n <= max_n; ++n) {
    std::string tag = std::to_string(n);
    merge_as(rep, check_presheaf(*P.ob(n), scope), "Ob_" + tag);
    merge_as(rep, check_presheaf(*P.ob_tilde(n), scope), "ObT_" + tag);
    merge_as(rep, check_natural(*boundary(P, n), scope), "boundary_" + tag);
    for (ObjId G : scope.objects) {
      if (!P.ob(n)->defined_at(G)) continue;
      for (const Term& t : P.ob(n)->at(G)) {
        ObjId T = t.as_obj();
        rep.expect(cs.length(T) == cs.length(G) + n && cs.ft_n(T, n) == G, "ob-membership",
                   [&] { return cs.object_label(T) + " over " + cs.object_label(G); });
      }
      for (const Term& o : P.ob_tilde(n)->at(G)) {
        MorId s = o.as_mor();
        ObjId T = cs.cod(s);
        rep.expect(cs.dom(s) == cs.ft(T) && cs.compose(s, cs.proj(T)) == cs.identity(cs.ft(T)) &&
                       P.ob(n)->contains(G, Term::obj(T)),
                   "section-membership", [&] { return cs.describe(s); });
      }
      if (n == 0) {
        rep.expect(P.ob(0)->at(G) == ElementSet{Term::obj(G)}, "ob0-singleton", [&] { return cs.object_label(G); });
        rep.expect(P.ob_tilde(0)->at(G).empty(), "obt0-empty", [&] { return cs.object_label(G); });
      }
    }
  }
  return rep;
}

LawReport check_sig_functor(const CSystem& cs, int max_n) { return check_sig_functor(cs, max_n, {}); }

LawReport check_sig_functor(const CSystem& cs, int max_n, const BoundaryTamper& tamper) {
  LawReport rep("sig-functor");
  CSystemPresheaves P(cs);
  CheckScope scope = csystem_scope(cs);
  for (int n = 0; n <= max_n; ++n) {
    std::string tag = std::to_string(n);
    merge_as(rep, check_presheaf(*P.sig_ob(1, n), scope), "Sig(Ob_" + tag + ")");
    merge_as(rep, check_presheaf(*P.sig_ob_tilde(1, n), scope), "Sig(ObT_" + tag + ")");
    auto id = identity_morphism(P.ob(n));
    merge_as(rep, check_equal(*sig(cs, id, P.sig_ob(1, n), P.sig_ob(1, n)), *identity_morphism(P.sig_ob(1, n)), scope,
                              "identity"),
             "Sig(Id_Ob_" + tag + ")");
    auto d = boundary(P, n);
    if (tamper) d = tamper(n, d);
    auto sig_d = sig(cs, d, P.sig_ob_tilde(1, n), P.sig_ob(1, n));
    merge_as(rep, check_natural(*sig_d, scope), "Sig(d_" + tag + ")");
    if (n >= 1) {
      // d_n then SOb_{n-1}^-1, a composable pair of non-identity morphisms
      auto r = d;
      auto s = s_ob_inverse(P, n - 1);
      auto lhs = sig(cs, compose_morphisms(r, s), P.sig_ob_tilde(1, n), P.sig_ob(2, n - 1));
      auto rhs = compose_morphisms(sig_d, sig(cs, s, P.sig_ob(1, n), P.sig_ob(2, n - 1)));
      merge_as(rep, check_equal(*lhs, *rhs, scope, "composition"), "Sig(d_" + tag + ";SOb^-1)");
    }
  }
  return rep;
}

LawReport check_sob_iso(const CSystem& cs, int max_n) {
  LawReport rep("sob-iso");
  CSystemPresheaves P(cs);
  CheckScope scope = csystem_scope(cs);
  for (int n = 0; n <= max_n; ++n) {
    std::string tag = "SOb_" + std::to_string(n);
    auto f = s_ob(P, n), g = s_ob_inverse(P, n);
    merge_as(rep, check_inverse_pair(*f, *g, scope), tag);
    merge_as(rep, check_natural(*f, scope), tag);
    merge_as(rep, check_natural(*g, scope), tag + "^-1");
    for (ObjId G : scope.objects)
      if (P.sig_ob(1, n)->defined_at(G) && P.ob(n + 1)->defined_at(G))
        rep.expect(P.sig_ob(1, n)->at(G).size() == P.ob(n + 1)->at(G).size(), "cardinality",
                   [&] { return tag + " at " + cs.object_label(G); });
  }
  return rep;
}

LawReport check_sob_tilde_iso(const CSystem& cs, int max_n) {
  LawReport rep("sob-tilde-iso");
  CSystemPresheaves P(cs);
  CheckScope scope = csystem_scope(cs);
  for (int n = 1; n <= max_n; ++n) {
    std::string tag = "SObT_" + std::to_string(n);
    auto f = s_ob_tilde(P, n), g = s_ob_tilde_inverse(P, n);
    merge_as(rep, check_inverse_pair(*f, *g, scope), tag);
    merge_as(rep, check_natural(*f, scope), tag);
    merge_as(rep, check_natural(*g, scope), tag + "^-1");
    auto lhs = compose_morphisms(f, boundary(P, n + 1));
    auto rhs = compose_morphisms(sig(cs, boundary(P, n), P.sig_ob_tilde(1, n), P.sig_ob(1, n)), s_ob(P, n));
    merge_as(rep, check_equal(*lhs, *rhs, scope, "boundary-square"), tag);
  }
  return rep;
}

LawReport check_sob_iter(const CSystem& cs, int max_total) {
  LawReport rep("sob-iter");
  CSystemPresheaves P(cs);
  CheckScope scope = csystem_scope(cs);
  for (int m = 0; m <= max_total; ++m)
    for (int n = 0; n + m <= max_total; ++n) {
      std::string tag = "SOb^" + std::to_string(n) + "_" + std::to_string(m);
      auto it = s_ob_iter(P, n, m);
      if (n == 0) merge_as(rep, check_equal(*it, *identity_morphism(P.ob(m)), scope, "base"), tag);
      if (n == 1) merge_as(rep, check_equal(*it, *s_ob(P, m), scope, "step"), tag);
      merge_as(rep, check_inverse_pair(*it, *s_ob_iter_unpack(P, n, m), scope), tag);
      merge_as(rep, check_natural(*it, scope), tag);
    }
  return rep;
}

}  // namespace csys
