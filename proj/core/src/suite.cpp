#include "csys/suite.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace csys {

namespace {

struct Skip {
  std::string reason;
};

struct Ctx {
  const Workspace& ws;
  SuiteParams p;
  std::vector<std::string> notes;

  int cap(int value, int limit, const std::string& what) {
    if (value <= limit) return value;
    notes.push_back(what + " capped at " + std::to_string(limit));
    return limit;
  }
};

using Runner = std::function<LawReport(Ctx&)>;

struct CheckDef {
  CheckInfo info;
  Runner run;
};

[[noreturn]] void skip(const std::string& why) { throw Skip{why}; }

const Universe& need_universe(Ctx& c) {
  if (!c.ws.universe()) skip("needs a [universe]");
  return *c.ws.universe();
}
const BinaryProducts& need_products(Ctx& c) {
  if (!c.ws.products()) skip("needs [products]");
  return *c.ws.products();
}
const CartesianClosed& need_ccc(Ctx& c) {
  if (!c.ws.ccc()) skip("needs [ccc]");
  return *c.ws.ccc();
}
const LocallyCartesianClosed& need_lcc(Ctx& c) {
  if (!c.ws.lcc()) skip("needs [lcc]");
  return *c.ws.lcc();
}
const CSystem& need_csystem(Ctx& c) {
  if (!c.ws.has_csystem()) skip("needs a [csystem]");
  if (!c.ws.csystem_is_cc()) {
    if (c.p.N != c.ws.table_truncation()) c.notes.push_back("table C-system keeps its own truncation");
    c.p.N = c.ws.table_truncation();
  }
  return c.ws.csystem(c.p.N);
}
const CCSystem& need_cc(Ctx& c) {
  if (!c.ws.csystem_is_cc()) skip("needs [csystem] kind = cc");
  return *c.ws.cc(c.p.N);
}
const IpFunctor& need_ip(Ctx& c) {
  if (!c.ws.ip()) skip("needs [finset], [universe] and [lcc]");
  return *c.ws.ip();
}
const UnivCatFunctor& need_ucf(Ctx& c) {
  if (!c.ws.ucf()) skip("needs [ucf]");
  return *c.ws.ucf();
}
std::pair<const IpFunctor*, const IpFunctor*> need_ip_pair(Ctx& c) {
  need_ucf(c);
  if (!c.ws.ip_source() || !c.ws.ip_target()) skip("needs the I_p functors on both sides ([finset] with [lcc])");
  return {c.ws.ip_source(), c.ws.ip_target()};
}

// ------------------------------------------------------------- faults

uint32_t pick(std::mt19937& rng, size_t n) { return static_cast<uint32_t>(rng() % n); }

std::string fault_note(const Workspace& ws, const std::string& site) {
  return "fault " + fault_name(*ws.fault()) + " (seed " + std::to_string(ws.fault_seed()) + ") at " + site;
}

bool fault_on(const Workspace& ws, FaultKind k) { return ws.fault() && *ws.fault() == k; }

LawReport category_laws(Ctx& c) {
  const Category& C = c.ws.category();
  std::vector<ObjId> objs = c.ws.objects();
  if (!fault_on(c.ws, FaultKind::kUnitLaw)) return check_category(C, &objs);
  // id ; f replaced by another parallel morphism g
  std::vector<std::pair<MorId, MorId>> sites;
  for (MorId f : C.morphisms_among(objs))
    for (MorId g : C.hom(C.dom(f), C.cod(f)))
      if (g != f) sites.emplace_back(f, g);
  if (sites.empty()) skip("no site for the unit-law fault (every hom set has one element)");
  std::mt19937 rng(static_cast<uint32_t>(c.ws.fault_seed()));
  auto [f, g] = sites[pick(rng, sites.size())];
  PatchedCategory bad(C);
  MorId id = C.identity(C.dom(f));
  bad.override_composite(id, f, g);
  c.notes.push_back(fault_note(c.ws, C.morphism_label(id) + " ; " + C.morphism_label(f) + " := " + C.morphism_label(g)));
  return check_category(bad, &objs);
}

LawReport csystem_axioms(Ctx& c) {
  const CSystem& cs = need_csystem(c);
  if (!fault_on(c.ws, FaultKind::kQSquare)) return check_csystem(cs);
  // q(f, T) replaced by a morphism f*T -> T that breaks the square
  // q o p_T = p_{f*T} o f, for f other than an identity.
  std::vector<std::pair<MorId, ObjId>> sites;
  std::vector<ObjId> low = cs.objects_up_to(std::max(0, cs.truncation() - 1));
  for (ObjId T : cs.objects()) {
    if (cs.length(T) == 0) continue;
    ObjId G = cs.ft(T);
    for (ObjId G1 : low)
      for (MorId f : cs.hom(G1, G))
        if (f != cs.identity(G)) sites.emplace_back(f, T);
  }
  std::mt19937 rng(static_cast<uint32_t>(c.ws.fault_seed()));
  size_t start = sites.empty() ? 0 : pick(rng, sites.size());
  for (size_t k = 0; k < sites.size(); ++k) {
    auto [f, T] = sites[(start + k) % sites.size()];
    ObjId fT = cs.base_change(f, T);
    MorId lhs_p = cs.compose(cs.proj(fT), f);
    for (MorId m : cs.hom(fT, T)) {
      if (cs.compose(m, cs.proj(T)) == lhs_p) continue;
      PatchedCSystem bad(cs);
      bad.override_q(f, T, m);
      c.notes.push_back(fault_note(c.ws, "q(" + cs.morphism_label(f) + ", " + cs.object_label(T) +
                                             ") := " + cs.morphism_label(m)));
      return check_csystem(bad);
    }
  }
  skip("no site for the q-square fault");
}

LawReport ucf_axioms(Ctx& c) {
  const UnivCatFunctor& F = need_ucf(c);
  std::vector<ObjId> objs = c.ws.ucf_source_objects(), probes = c.ws.ucf_target_objects();
  if (!fault_on(c.ws, FaultKind::kPhiTildePullback)) return check_ucf(F, objs, probes);
  // φ̃ replaced by another map over φ whose square is no longer a pullback
  const Category& T = F.target().category();
  const Functor& Phi = F.functor();
  MorId Phi_p = Phi.on_morphism(F.source().p());
  MorId lower = T.compose(Phi_p, F.phi());
  std::vector<MorId> sites;
  for (MorId m : T.hom(T.dom(F.phi_tilde()), F.target().U_tilde())) {
    if (m == F.phi_tilde() || T.compose(m, F.target().p()) != lower) continue;
    if (pullback_failure(T, T.dom(m), Phi_p, m, F.phi(), F.target().p(), probes).empty()) continue;
    sites.push_back(m);
  }
  if (sites.empty()) skip("no site for the phi-tilde-pullback fault");
  std::mt19937 rng(static_cast<uint32_t>(c.ws.fault_seed()));
  MorId m = sites[pick(rng, sites.size())];
  UnivCatFunctor bad(F.source(), F.target(), Phi, F.phi(), m);
  c.notes.push_back(fault_note(c.ws, "phi-tilde := " + T.morphism_label(m)));
  return check_ucf(bad, objs, probes);
}

LawReport sig_functor(Ctx& c) {
  const CSystem& cs = need_csystem(c);
  int n = c.cap(c.p.n, std::max(0, cs.truncation() - 1), "n");
  c.p.n = n;
  if (!fault_on(c.ws, FaultKind::kSigNaturality)) return check_sig_functor(cs, n);
  // ∂_k at one section o over T replaced by another object y of Ob_k(T),
  // chosen so that restriction along some q(f, T) tells them apart.
  struct Site {
    int k;
    ObjId T;
    Term o, y;
  };
  CSystemPresheaves P(cs);
  CheckScope scope = csystem_scope(cs);
  std::vector<Site> sites;
  for (int k = 0; k <= n && sites.size() < 512; ++k)
    for (ObjId G : scope.objects) {
      if (!P.ob(1)->defined_at(G)) continue;
      for (const Term& t : P.ob(1)->at(G)) {
        ObjId T = t.as_obj();
        if (!P.ob_tilde(k)->defined_at(T)) continue;
        for (const Term& o : P.ob_tilde(k)->at(T)) {
          Term d = Term::obj(cs.cod(o.as_mor()));
          for (const Term& y : P.ob(k)->at(T)) {
            if (y == d) continue;
            bool seen = false;
            for (ObjId G1 : scope.objects) {
              if (!P.sig_ob_tilde(1, k)->defined_at(G1) || !P.sig_ob(1, k)->defined_at(G1)) continue;
              for (MorId f : cs.hom(G1, G)) {
                MorId q = cs.q(f, T);
                if (P.ob(k)->restrict(q, y) != P.ob(k)->restrict(q, d)) {
                  seen = true;
                  break;
                }
              }
              if (seen) break;
            }
            if (seen) sites.push_back({k, T, o, y});
          }
        }
      }
    }
  if (sites.empty()) skip("no site for the sig-naturality fault");
  std::mt19937 rng(static_cast<uint32_t>(c.ws.fault_seed()));
  Site s = sites[pick(rng, sites.size())];
  c.notes.push_back(fault_note(c.ws, "boundary_" + std::to_string(s.k) + " at " + cs.object_label(s.T) + ": " +
                                         cs.morphism_label(s.o.as_mor()) + " |-> " +
                                         cs.object_label(s.y.as_obj())));
  BoundaryTamper tamper = [s](int k, PshMorPtr d) -> PshMorPtr {
    if (k != s.k) return d;
    return std::make_shared<OverrideMorphism>(d, s.T, s.o, s.y);
  };
  return check_sig_functor(cs, n, tamper);
}

LawReport u1_iso(Ctx& c) {
  const CCSystem& cc = need_cc(c);
  if (!fault_on(c.ws, FaultKind::kU1Naturality)) return check_u1_iso(cc);
  // u_1 at one T over Γ replaced by another F' : int Γ -> U that some
  // int(f) o - separates from u_1(T)
  const Category& C = cc.base();
  const Universe& u = cc.universe();
  CheckScope scope = csystem_scope(cc);
  struct Site {
    ObjId G, T;
    MorId F;
  };
  std::vector<Site> sites;
  for (ObjId G : scope.objects)
    for (const Term& t : cc.presheaves().ob(1)->at(G)) {
      ObjId T = t.as_obj();
      MorId F0 = cc.type_of(T);
      for (MorId F : C.hom(cc.int_object(G), u.U())) {
        if (F == F0) continue;
        bool seen = false;
        for (ObjId G1 : scope.objects) {
          for (MorId f : cc.hom(G1, G))
            if (C.compose(cc.int_morphism(f), F) != C.compose(cc.int_morphism(f), F0)) {
              seen = true;
              break;
            }
          if (seen) break;
        }
        if (seen) sites.push_back({G, T, F});
      }
    }
  if (sites.empty()) skip("no site for the u1-naturality fault");
  std::mt19937 rng(static_cast<uint32_t>(c.ws.fault_seed()));
  Site s = sites[pick(rng, sites.size())];
  c.notes.push_back(fault_note(c.ws, "u_1(" + cc.object_label(s.T) + ") := " + C.morphism_label(s.F)));
  auto bad = std::make_shared<OverrideMorphism>(u1(cc), s.G, Term::obj(s.T), Term::mor(s.F));
  return check_u1_iso(cc, bad);
}

// ------------------------------------------------------------- limits

LawReport product_compare_iso_check(Ctx& c) {
  const BinaryProducts& p = need_products(c);
  const BinaryProducts& q = *c.ws.products_alt();
  const Category& C = p.category();
  LawReport rep("product-compare-iso");
  auto objs = c.ws.objects();
  for (ObjId X : objs)
    for (ObjId Y : objs) {
      ProductDiagram d1 = p.product(X, Y), d2 = q.product(X, Y);
      auto where = [&] { return C.object_label(X) + " x " + C.object_label(Y); };
      try {
        auto [a, b] = product_compare_iso(C, d1, d2);
        rep.expect(C.compose(a, d2.pr1) == d1.pr1 && C.compose(a, d2.pr2) == d1.pr2, "mediates", where);
        rep.expect(C.compose(a, b) == C.identity(d1.apex) && C.compose(b, a) == C.identity(d2.apex), "inverse",
                   where);
        auto [s, t] = product_compare_iso(C, d1, d1);
        rep.expect(s == C.identity(d1.apex) && t == s, "self-comparison-identity", where);
      } catch (const StructureError& e) {
        rep.fail("comparison", where() + ": " + e.what());
      }
    }
  return rep;
}

LawReport slice_product_functor_check(Ctx& c) {
  const LocallyCartesianClosed& l = need_lcc(c);
  LawReport rep("slice-product-functor");
  for (ObjId Z : c.ws.objects())
    rep.merge(check_slice_product_functor(l, Z), c.ws.category().object_label(Z));
  return rep;
}

LawReport pullback_choices(Ctx& c) {
  if (!c.ws.functions_category()) skip("needs [category] kind = functions");
  const TableCategory& F = *c.ws.table();
  if (F.objects().size() < 4) skip("needs the functions category with max = 3");
  StrVariants v = make_str_variants(F);
  std::vector<ObjId> objs = F.objects();
  LawReport rep("pullback-choices");
  rep.merge(check_pullbacks(*v.str1, objs, objs), "str1");
  rep.merge(check_pullbacks(*v.str_sigma, objs, objs), "str_sigma");
  auto diff = pullback_differences(*v.str1, *v.str_sigma);
  rep.expect(!diff.empty(), "structures-differ", [] { return std::string("tables are equal"); });
  rep.expect(diff.size() == 1 && diff[0] == std::make_pair(v.id_x, v.id_x), "differ-only-at-identity-cospan", [&] {
    std::string s;
    for (auto [f, g] : diff) s += "(" + F.morphism_label(f) + ", " + F.morphism_label(g) + ") ";
    return s;
  });
  auto d1 = v.str1->pullback(v.id_x, v.id_x);
  auto ds = v.str_sigma->pullback(v.id_x, v.id_x);
  rep.expect(d1 && d1->apex == v.x && d1->pr1 == v.id_x && d1->pr2 == v.id_x, "str1-identity-legs",
             [] { return std::string("str1 at (Id, Id)"); });
  rep.expect(ds && ds->apex == v.x && ds->pr1 == v.sigma && ds->pr2 == v.sigma, "str_sigma-swap-legs",
             [] { return std::string("str_sigma at (Id, Id)"); });
  for (const auto& phi : automorphisms(F))
    rep.expect(!transports(F, phi, *v.str1, *v.str_sigma), "no-automorphism-transports",
               [] { return std::string("an automorphism carries str1 to str_sigma"); });
  for (const auto& d : {d1, ds}) {
    if (!d) continue;
    SquareVerdict sv = pullback_slice_equiv(F, d->pr1, d->pr2, v.id_x, v.id_x, objs);
    rep.expect(sv.pullback_in_base && sv.product_in_slice, "square-is-slice-product",
               [&] { return F.morphism_label(d->pr1) + " legs"; });
  }
  return rep;
}

// ------------------------------------------------------------- catalog

std::vector<CheckDef> make_defs() {
  std::vector<CheckDef> d;
  auto add = [&](std::string name, std::string group, std::string summary, Runner r) {
    d.push_back({CheckInfo{std::move(name), std::move(group), std::move(summary)}, std::move(r)});
  };
  // limits
  add("category-laws", "limits", "unit, associativity and typing laws of composition", category_laws);
  add("products", "limits", "binary product universal property", [](Ctx& c) {
    auto o = c.ws.objects();
    return check_products(need_products(c), o, o);
  });
  add("product-compare-iso", "limits", "comparison maps between two product choices are inverse isomorphisms",
      product_compare_iso_check);
  add("product-compare-natural", "limits", "comparison isomorphisms commute with a x b", [](Ctx& c) {
    const BinaryProducts& p = need_products(c);
    return check_product_compare_natural(p, *c.ws.products_alt(), c.ws.objects());
  });
  add("pullbacks", "limits", "pullback universal property on every defined cospan", [](Ctx& c) {
    if (!c.ws.pullbacks()) skip("needs [pullbacks]");
    auto o = c.ws.objects();
    return check_pullbacks(*c.ws.pullbacks(), o, o);
  });
  add("ccc", "limits", "Hom(X,-) functorial, adj bijective, evaluation square", [](Ctx& c) {
    auto o = c.ws.objects();
    return check_ccc(need_ccc(c), o, o);
  });
  add("hom-contravariant", "limits", "Hom(-,Y) preserves identities and reverses composition",
      [](Ctx& c) { return check_hom_contravariant(need_ccc(c), c.ws.objects()); });
  add("hom-eval-square", "limits", "(Id x a) o ev = (Hom(a,Y) x Id) o ev",
      [](Ctx& c) { return check_hom_eval_square(need_ccc(c), c.ws.objects()); });
  add("adj-laws", "limits", "adj against postcomposition, precomposition and reindexing", [](Ctx& c) {
    auto o = c.ws.objects();
    return check_adj_laws(need_ccc(c), o, o);
  });
  add("pullback-slice-equiv", "limits", "a square is a pullback iff it is a product in the slice", [](Ctx& c) {
    auto o = c.ws.objects();
    return check_pullback_slice_equiv(c.ws.category(), o, o, c.ws.pullbacks());
  });
  add("slice-product-functor", "limits", "a^f x_Z b^g preserves identities and composition",
      slice_product_functor_check);
  add("lcc", "limits", "every slice carries a valid cartesian closed structure",
      [](Ctx& c) { return check_lcc(need_lcc(c), c.ws.objects()); });
  add("pullback-choices", "pullback-choices",
      "two pullback structures on the functions category: both valid, different, not related by an automorphism",
      pullback_choices);
  // universe
  add("universe-squares", "universe", "comprehension squares commute and are pullbacks", [](Ctx& c) {
    auto o = c.ws.objects();
    return check_universe(need_universe(c), o, o);
  });
  add("q-identities", "universe", "Q(Id,F) = Id and Q composes", [](Ctx& c) {
    return check_q_identities(need_universe(c), c.ws.objects());
  });
  add("section-count", "universe", "sections of p_F counted against the code sizes", [](Ctx& c) {
    auto* cu = dynamic_cast<const CodingUniverse*>(&need_universe(c));
    if (!cu) skip("needs a coded universe over [finset]");
    return check_section_count(*cu, c.ws.objects());
  });
  add("circ-laws", "universe", "the five two-sided action laws and both recursive clauses on D_p^n", [](Ctx& c) {
    return check_circ_laws(need_universe(c), c.ws.objects(), c.p.depth);
  });
  add("circ-oracle", "universe", "nested-pair formulas agree with the generic presheaf actions", [](Ctx& c) {
    return check_circ_oracle(need_universe(c), c.ws.objects(), c.p.depth);
  });
  add("dp-presheaf", "universe", "D_p^n(Yo Y) presheaf laws and functoriality", [](Ctx& c) {
    return check_dp_presheaf(need_universe(c), c.ws.objects(), c.p.depth);
  });
  // csystem
  add("csystem-axioms", "csystem", "C-system axioms on the truncated system", csystem_axioms);
  add("ob-presheaves", "csystem", "Ob_n and sections presheaves, boundary natural", [](Ctx& c) {
    const CSystem& cs = need_csystem(c);
    c.p.n = c.cap(c.p.n, cs.truncation(), "n");
    return check_ob_presheaves(cs, c.p.n);
  });
  add("sig-functor", "csystem", "Sig on presheaves and morphisms: laws, identity, composition, naturality",
      sig_functor);
  add("sob-iso", "csystem", "Sig(Ob_n) -> Ob_{n+1} round trips and naturality", [](Ctx& c) {
    const CSystem& cs = need_csystem(c);
    c.p.n = c.cap(c.p.n, std::max(0, cs.truncation() - 1), "n");
    return check_sob_iso(cs, c.p.n);
  });
  add("sob-tilde-iso", "csystem", "Sig of sections round trips, naturality, boundary square", [](Ctx& c) {
    const CSystem& cs = need_csystem(c);
    c.p.n = c.cap(c.p.n, std::max(0, cs.truncation() - 1), "n");
    return check_sob_tilde_iso(cs, c.p.n);
  });
  add("sob-iter", "csystem", "iterated Sig(Ob) maps against the direct unpacking",
      [](Ctx& c) {
        const CSystem& cs = need_csystem(c);
        return check_sob_iter(cs, cs.truncation());
      });
  // cc
  add("cc-int", "cc", "int is a functor, bijective on homs, matches the universe data",
      [](Ctx& c) { return check_cc_int(need_cc(c)); });
  add("u1-iso", "cc", "u_1 natural and bijective", u1_iso);
  add("u1-tilde-iso", "cc", "u~_1 natural and bijective with section counts",
      [](Ctx& c) { return check_u1_tilde_iso(need_cc(c)); });
  add("u1-boundary-square", "cc", "u~_1 then Yo(p) equals boundary then u_1",
      [](Ctx& c) { return check_u1_boundary_square(need_cc(c)); });
  add("sdp-natural", "cc", "SD_p natural in both arguments and bijective",
      [](Ctx& c) { return check_sdp_natural(need_cc(c), c.ws.objects()); });
  add("un-iso", "cc", "u_n and u~_n: recursion equals nested form, bijective, natural, boundary square",
      [](Ctx& c) {
        const CCSystem& cc = need_cc(c);
        c.p.n = c.cap(c.p.n, cc.truncation(), "n");
        return check_un_iso(cc, c.p.n);
      });
  // representation
  add("ip-functor", "representation", "I_p functor laws, prI natural, iota inverts", [](Ctx& c) {
    const IpFunctor& I = need_ip(c);
    auto o = c.ws.objects();
    o.push_back(I.universe().U());
    return check_ip_functor(I, o);
  });
  add("st-square", "representation", "st commutes with I_p(f)", [](Ctx& c) {
    const IpFunctor& I = need_ip(c);
    auto o = c.ws.objects();
    o.push_back(I.universe().U());
    return check_st_square(I, o);
  });
  add("eta-iso", "representation", "eta and its inverse, with |D_p(X,Y)| = |hom(X, I_p Y)|", [](Ctx& c) {
    auto o = c.ws.objects();
    return check_eta_iso(need_ip(c), o, o);
  });
  add("eta-n-natural", "representation", "eta_n bijective and natural on both sides", [](Ctx& c) {
    auto o = c.ws.objects();
    c.p.n = c.cap(c.p.n, 2, "n");
    return check_eta_n_natural(need_ip(c), o, o, c.p.n);
  });
  add("id-n-laws", "representation", "the universal elements Id^n against eta_n", [](Ctx& c) {
    auto o = c.ws.objects();
    c.p.n = c.cap(c.p.n, 2, "n");
    return check_id_n_laws(need_ip(c), o, o, c.p.n);
  });
  add("mu-boundary-square", "representation", "mu_n, mu~_n bijective and natural, boundary square",
      [](Ctx& c) {
        const IpFunctor& I = need_ip(c);
        const CCSystem& cc = need_cc(c);
        c.p.n = c.cap(c.p.n, cc.truncation(), "n");
        return check_mu_boundary_square(cc, I, c.p.n);
      });
  // functoriality
  add("ucf-axioms", "functoriality", "final object, comprehension pullbacks and the universe square preserved",
      ucf_axioms);
  add("iota-phi", "functoriality", "iota unique, satisfies both equations, invertible",
      [](Ctx& c) { return check_iota_phi(need_ucf(c), c.ws.ucf_source_objects()); });
  add("phi-d-squares", "functoriality", "PhiD natural in X and G', injective, counted, q-iota identity",
      [](Ctx& c) {
        const UnivCatFunctor& F = need_ucf(c);
        const Category& T = F.target().category();
        auto to = c.ws.ucf_target_objects();
        // Yo(g) for the first g between distinct objects with the largest hom set
        MorId g = T.identity(to.front());
        size_t best = 0;
        for (ObjId X : to)
          for (ObjId Y : to)
            if (X != Y && T.hom(X, Y).size() > best) {
              best = T.hom(X, Y).size();
              g = T.hom(X, Y).front();
            }
        return check_phi_d(F, yoneda_on_morphism(T, g), c.ws.ucf_source_objects());
      });
  add("yo-phi", "functoriality", "yo^Phi natural, agrees with Phi",
      [](Ctx& c) { return check_yo_phi(need_ucf(c), c.ws.ucf_source_objects()); });
  add("d-phi-n", "functoriality", "D^n_Phi recursion against the nested formula, and its squares", [](Ctx& c) {
    c.p.n = c.cap(c.p.n, 2, "n");
    return check_d_phi_n(need_ucf(c), c.ws.ucf_source_objects(), c.p.n);
  });
  add("phi-n-natural", "functoriality", "Phi^n commutes with both actions", [](Ctx& c) {
    c.p.n = c.cap(c.p.n, 2, "n");
    return check_phi_n_natural(need_ucf(c), c.ws.ucf_source_objects(), c.p.n);
  });
  add("h-homomorphism", "functoriality", "H is a C-system homomorphism, psi unique, invertible and natural",
      [](Ctx& c) {
        need_ucf(c);
        return check_h(c.ws.homomorphism(c.p.N));
      });
  add("u-transport", "functoriality", "u_n and u~_n transported along H and psi", [](Ctx& c) {
    need_ucf(c);
    c.p.n = c.cap(c.p.n, c.p.N, "n");
    return check_u_transport(c.ws.homomorphism(c.p.N), c.p.n);
  });
  add("chi-laws", "functoriality", "chi_0 = Id, xi_0 = phi, chi natural, eta transport, xi square", [](Ctx& c) {
    auto [I, J] = need_ip_pair(c);
    int m = c.cap(c.p.n, 1, "n");
    c.p.n = m;
    return check_chi(need_ucf(c), *I, *J, c.ws.ucf_source_objects(), m);
  });
  add("mu-transport", "functoriality", "mu_n and mu~_n transported along H, psi and xi", [](Ctx& c) {
    auto [I, J] = need_ip_pair(c);
    c.p.n = c.cap(c.p.n, c.p.N, "n");
    return check_mu_transport(c.ws.homomorphism(c.p.N), *I, *J, c.p.n);
  });
  std::sort(d.begin(), d.end(), [](const CheckDef& a, const CheckDef& b) { return a.info.name < b.info.name; });
  return d;
}

const std::vector<CheckDef>& defs() {
  static const std::vector<CheckDef> d = make_defs();
  return d;
}

const CheckDef* find_def(const std::string& name) {
  for (const CheckDef& d : defs())
    if (d.info.name == name) return &d;
  return nullptr;
}

}  // namespace

const std::vector<CheckInfo>& check_catalog() {
  static const std::vector<CheckInfo> infos = [] {
    std::vector<CheckInfo> v;
    for (const CheckDef& d : defs()) v.push_back(d.info);
    return v;
  }();
  return infos;
}

std::vector<std::string> check_groups() {
  std::set<std::string> g;
  for (const CheckInfo& i : check_catalog()) g.insert(i.group);
  std::vector<std::string> out(g.begin(), g.end());
  out.push_back("all");
  return out;
}

std::vector<std::string> resolve_selection(const std::vector<std::string>& names) {
  std::set<std::string> out;
  if (names.empty()) return resolve_selection({"all"});
  for (const std::string& n : names) {
    bool matched = false;
    for (const CheckInfo& i : check_catalog())
      if (i.name == n || i.group == n || n == "all") {
        out.insert(i.name);
        matched = true;
      }
    if (!matched) throw UsageError("unknown check or suite '" + n + "'");
  }
  return {out.begin(), out.end()};
}

std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kSkipped: return "skipped";
  }
  return "?";
}

size_t SuiteReport::count(CheckStatus s) const {
  return static_cast<size_t>(
      std::count_if(results.begin(), results.end(), [s](const CheckResult& r) { return r.status == s; }));
}

int SuiteReport::exit_code(bool strict) const {
  if (count(CheckStatus::kFail) > 0) return 1;
  if (strict && count(CheckStatus::kSkipped) > 0) return 1;
  return 0;
}

CheckResult run_check(const Workspace& ws, const std::string& name, const SuiteParams& params) {
  const CheckDef* d = find_def(name);
  if (!d) throw UsageError("unknown check '" + name + "'");
  CheckResult out;
  out.name = d->info.name;
  out.group = d->info.group;
  out.params = params;
  for (auto [v, what] : {std::pair{params.n, "n"}, std::pair{params.N, "N"}, std::pair{params.depth, "depth"}})
    if (v < 0 || v > kMaxSupported) {
      out.reason = std::string(what) + " = " + std::to_string(v) + " is outside the supported range 0.." +
                   std::to_string(kMaxSupported);
      return out;
    }
  Ctx c{ws, params, {}};
  auto t0 = std::chrono::steady_clock::now();
  try {
    LawReport r = d->run(c);
    out.instances = r.instances();
    out.violations = r.violation_count();
    out.kept = r.violations();
    out.witness = r.first_witness();
    out.status = r.ok() ? CheckStatus::kPass : CheckStatus::kFail;
    for (const auto& n : r.notes()) c.notes.push_back(n);
  } catch (const Skip& s) {
    out.status = CheckStatus::kSkipped;
    out.reason = s.reason;
  } catch (const std::exception& e) {
    out.status = CheckStatus::kFail;
    out.violations = 1;
    out.witness = std::string("exception: ") + e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.params = c.p;
  out.notes = std::move(c.notes);
  return out;
}

SuiteReport run_suite(const Workspace& ws, const std::vector<std::string>& selection, const SuiteParams& params) {
  SuiteReport rep;
  for (const std::string& name : resolve_selection(selection)) rep.results.push_back(run_check(ws, name, params));
  return rep;
}

std::string to_json_lines(const SuiteReport& r) {
  std::ostringstream os;
  for (const CheckResult& c : r.results) {
    nlohmann::json j;
    j["check"] = c.name;
    j["group"] = c.group;
    j["status"] = status_name(c.status);
    j["instances"] = c.instances;
    j["violations"] = c.violations;
    j["witness"] = c.witness.empty() ? nlohmann::json(nullptr) : nlohmann::json(c.witness);
    nlohmann::json kept = nlohmann::json::array();
    for (const Violation& v : c.kept) kept.push_back({{"law", v.law}, {"witness", v.witness}});
    j["counterexamples"] = kept;
    j["notes"] = c.notes;
    if (c.status == CheckStatus::kSkipped) j["reason"] = c.reason;
    j["params"] = {{"n", c.params.n}, {"N", c.params.N}, {"depth", c.params.depth}};
    j["time_ms"] = static_cast<int64_t>(c.seconds * 1000.0 + 0.5);
    os << j.dump() << "\n";
  }
  nlohmann::json s;
  s["summary"] = {{"pass", r.count(CheckStatus::kPass)},
                  {"fail", r.count(CheckStatus::kFail)},
                  {"skipped", r.count(CheckStatus::kSkipped)}};
  os << s.dump() << "\n";
  return os.str();
}

std::string to_text(const SuiteReport& r) {
  std::ostringstream os;
  for (const CheckResult& c : r.results) {
    const char* tag = c.status == CheckStatus::kPass ? "PASS" : c.status == CheckStatus::kFail ? "FAIL" : "SKIP";
    os << tag << "  " << c.name;
    if (c.status == CheckStatus::kSkipped) {
      os << "  (" << c.reason << ")\n";
      continue;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", c.seconds);
    os << "  " << c.instances << " instances, " << buf << " s\n";
    for (const auto& n : c.notes) os << "      note: " << n << "\n";
    if (c.status == CheckStatus::kFail) os << "      " << c.violations << " violations; first " << c.witness << "\n";
  }
  os << r.count(CheckStatus::kPass) << " passed, " << r.count(CheckStatus::kFail) << " failed, "
     << r.count(CheckStatus::kSkipped) << " skipped\n";
  return os.str();
}

}  // namespace csys
