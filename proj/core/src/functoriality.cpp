#include "csys/functoriality.hpp"

#include <set>

#include "csys/errors.hpp"

namespace csys {

namespace {

// Mediators into a pullback-like apex. On finite sets the choices are made
// per element, which is the same search without enumerating hom(A, apex).
std::vector<MorId> find_mediators(const Category& C, ObjId A, ObjId apex, MorId pr1, MorId pr2, MorId a, MorId b,
                                  size_t* count = nullptr) {
  const auto* S = dynamic_cast<const FinSet*>(&C);
  if (!S) {
    auto ms = mediators(C, A, apex, pr1, pr2, a, b);
    if (count) *count = ms.size();
    return ms;
  }
  size_t n = S->size(A), m = S->size(apex);
  FinSet::Table t(n);
  size_t total = 1;
  for (uint32_t i = 0; i < n; ++i) {
    size_t hits = 0;
    for (uint32_t j = 0; j < m; ++j)
      if (S->apply(pr1, j) == S->apply(a, i) && S->apply(pr2, j) == S->apply(b, i)) {
        if (!hits) t[i] = j;
        ++hits;
      }
    total = hits == 0 ? 0 : (total > 16 ? total : total * hits);
    if (!total) break;
  }
  if (count) *count = total;
  if (total != 1) return {};
  return {S->function(A, apex, t)};
}

MorId require_inverse(const Category& C, MorId f) {
  auto inv = C.inverse(f);
  if (!inv) throw StructureError("not invertible: " + C.describe(f));
  return *inv;
}

PresheafPtr dn(const Universe& u, int n, PresheafPtr G) {
  if (const auto* y = dynamic_cast<const YonedaPresheaf*>(G.get()); y && u.yo(y->represented()) == G)
    return u.d_yo(n, y->represented());
  return d_iter(u, n, G);
}

std::vector<ObjId> objects_with_length_at_most(const CSystem& cs, int l) {
  std::vector<ObjId> out;
  for (ObjId X : cs.objects())
    if (cs.length(X) <= l) out.push_back(X);
  return out;
}

}  // namespace

// ------------------------------------------------------------ ucf

UnivCatFunctor::UnivCatFunctor(const Universe& source, const Universe& target, const Functor& Phi, MorId phi,
                               MorId phi_tilde)
    : u_(source), v_(target), Phi_(Phi), phi_(phi), phit_(phi_tilde) {
  const Category& D = target.category();
  if (D.dom(phi) != Phi.on_object(source.U()) || D.cod(phi) != target.U())
    throw StructureError("phi must map Phi(U) to U': " + D.describe(phi));
  if (D.dom(phi_tilde) != Phi.on_object(source.U_tilde()) || D.cod(phi_tilde) != target.U_tilde())
    throw StructureError("phi~ must map Phi(U~) to U'~: " + D.describe(phi_tilde));
}

MorId UnivCatFunctor::transport_type(MorId F) const {
  return v_.category().compose(Phi_.on_morphism(F), phi_);
}

size_t UnivCatFunctor::iota_candidates(MorId F) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = iota_.find(F);
    if (it != iota_.end()) return it->second.size();
  }
  const Category& D = v_.category();
  Comprehension c = u_.comprehension(F);
  Comprehension c2 = v_.comprehension(transport_type(F));
  MorId pr1 = Phi_.on_morphism(c.p);
  MorId pr2 = D.compose(Phi_.on_morphism(c.Q), phit_);
  size_t count = 0;
  auto ms = find_mediators(D, c2.apex, Phi_.on_object(c.apex), pr1, pr2, c2.p, c2.Q, &count);
  if (count != 1) ms.assign(count > 16 ? 16 : count, MorId());
  std::lock_guard<std::mutex> lk(mu_);
  return iota_.emplace(F, std::move(ms)).first->second.size();
}

MorId UnivCatFunctor::iota(MorId F) const {
  size_t n = iota_candidates(F);
  if (n != 1)
    throw StructureError(std::to_string(n) + " candidates for iota at " + u_.category().describe(F));
  std::lock_guard<std::mutex> lk(mu_);
  return iota_.at(F).front();
}

LawReport check_ucf(const UnivCatFunctor& F, const std::vector<ObjId>& objs, const std::vector<ObjId>& probes) {
  LawReport rep("ucf-axioms");
  const Universe& u = F.source();
  const Universe& v = F.target();
  const Category& C = u.category();
  const Category& D = v.category();
  const Functor& Phi = F.functor();
  ObjId fpt = Phi.on_object(u.pt());
  for (ObjId W : probes)
    rep.expect(D.hom(W, fpt).size() == 1, "final-object",
               [&] { return std::to_string(D.hom(W, fpt).size()) + " maps from " + D.object_label(W); });
  for (ObjId X : objs)
    for (MorId f : C.hom(X, u.U())) {
      Comprehension c = u.comprehension(f);
      std::string why = pullback_failure(D, Phi.on_object(c.apex), Phi.on_morphism(c.p), Phi.on_morphism(c.Q),
                                         Phi.on_morphism(f), Phi.on_morphism(u.p()), probes);
      rep.expect(why.empty(), "p-pullbacks", [&] { return C.describe(f) + ": " + why; });
    }
  std::string why = pullback_failure(D, Phi.on_object(u.U_tilde()), Phi.on_morphism(u.p()), F.phi_tilde(), F.phi(),
                                     v.p(), probes);
  rep.expect(why.empty(), "universe-square", [&] { return D.describe(F.phi_tilde()) + ": " + why; });
  return rep;
}

LawReport check_iota_phi(const UnivCatFunctor& F, const std::vector<ObjId>& objs) {
  LawReport rep("iota-phi");
  const Universe& u = F.source();
  const Universe& v = F.target();
  const Category& C = u.category();
  const Category& D = v.category();
  const Functor& Phi = F.functor();
  for (ObjId X : objs)
    for (MorId f : C.hom(X, u.U())) {
      size_t n = F.iota_candidates(f);
      if (!rep.expect(n == 1, "unique", [&] { return C.describe(f) + ": " + std::to_string(n) + " mediators"; }))
        continue;
      MorId i = F.iota(f);
      Comprehension c = u.comprehension(f);
      Comprehension c2 = v.comprehension(F.transport_type(f));
      rep.expect(D.compose(i, Phi.on_morphism(c.p)) == c2.p, "projection", [&] { return C.describe(f); });
      rep.expect(D.chain({i, Phi.on_morphism(c.Q), F.phi_tilde()}) == c2.Q, "q-leg", [&] { return C.describe(f); });
      rep.expect(D.inverse(i).has_value(), "invertible", [&] { return D.describe(i); });
    }
  return rep;
}

// ------------------------------------------------------------ ΦD

PshMorPtr phi_d(const UnivCatFunctor& F, PresheafPtr G) {
  const Universe& u = F.source();
  const Universe& v = F.target();
  const Functor& Phi = F.functor();
  PresheafPtr src = d_on_presheaf(u, precompose(Phi, G));
  PresheafPtr dst = precompose(Phi, d_on_presheaf(v, G));
  return std::make_shared<LambdaMorphism>(src, dst, "PhiD", [&F, G](ObjId, const Term& x) {
    MorId f = x.first().as_mor();
    return Term::pair(Term::mor(F.transport_type(f)), G->restrict(F.iota(f), x.second()));
  });
}

LawReport check_phi_d(const UnivCatFunctor& F, PshMorPtr r, const std::vector<ObjId>& objs) {
  LawReport rep("phi-d-squares");
  const Universe& u = F.source();
  const Universe& v = F.target();
  const Category& C = u.category();
  const Category& D = v.category();
  const Functor& Phi = F.functor();
  CheckScope scope{objs, true};

  // square in X, for both ends of r
  for (PresheafPtr G : {r->source(), r->target()}) {
    PshMorPtr m = phi_d(F, G);
    rep.merge(check_natural(*m, scope), "natural-in-X");
    // injective, and hits exactly the pairs whose type factors through φ
    for (ObjId X : objs) {
      const auto& xs = m->source()->at(X);
      std::set<Term> image;
      for (const Term& x : xs) image.insert(m->apply(X, x));
      rep.expect(image.size() == xs.size(), "injective", [&] { return G->name() + " at " + C.object_label(X); });
      std::set<MorId> types;
      for (MorId f : C.hom(X, u.U())) types.insert(F.transport_type(f));
      size_t expected = 0;
      ObjId PX = Phi.on_object(X);
      for (MorId f2 : D.hom(PX, v.U()))
        if (types.count(f2)) expected += G->at(v.ext(f2)).size();
      rep.expect(expected == xs.size(), "count", [&] {
        return G->name() + " at " + C.object_label(X) + ": " + std::to_string(xs.size()) + " vs " +
               std::to_string(expected);
      });
    }
  }
  // square in G' along r
  PshMorPtr a = compose_morphisms(phi_d(F, r->source()), precompose(Phi, d_on_morphism(v, r)));
  PshMorPtr b = compose_morphisms(d_on_morphism(u, precompose(Phi, r)), phi_d(F, r->target()));
  rep.merge(check_equal(*a, *b, scope, "natural-in-G"));

  // Q(Φa, Φ(F) o φ) o ι = ι o Φ(Q(a, F))
  for (ObjId X : objs)
    for (ObjId Y : objs)
      for (MorId a1 : C.hom(X, Y))
        for (MorId f : C.hom(Y, u.U())) {
          MorId lhs = D.compose(v.q(Phi.on_morphism(a1), F.transport_type(f)), F.iota(f));
          MorId rhs = D.compose(F.iota(C.compose(a1, f)), Phi.on_morphism(u.q(a1, f)));
          rep.expect(lhs == rhs, "q-iota", [&] { return C.describe(a1) + " with " + C.describe(f); });
        }
  return rep;
}

// ------------------------------------------------------------ yo^Φ, D^n_Φ, Φ^n

PshMorPtr yo_phi(const UnivCatFunctor& F, ObjId Y) {
  const Universe& u = F.source();
  const Universe& v = F.target();
  const Functor& Phi = F.functor();
  return std::make_shared<LambdaMorphism>(u.yo(Y), precompose(Phi, v.yo(Phi.on_object(Y))), "yoPhi",
                                          [&Phi](ObjId, const Term& f) { return Term::mor(Phi.on_morphism(f.as_mor())); });
}

LawReport check_yo_phi(const UnivCatFunctor& F, const std::vector<ObjId>& objs) {
  LawReport rep("yo-phi");
  const Category& C = F.source().category();
  const Category& D = F.target().category();
  const Functor& Phi = F.functor();
  CheckScope scope{objs, true};
  for (ObjId Y : objs) {
    PshMorPtr m = yo_phi(F, Y);
    rep.merge(check_natural(*m, scope), "natural");
    rep.expect(m->apply(Y, Term::mor(C.identity(Y))) == Term::mor(D.identity(Phi.on_object(Y))), "identity",
               [&] { return C.object_label(Y); });
  }
  for (ObjId Y : objs)
    for (ObjId Y1 : objs)
      for (MorId g : C.hom(Y, Y1)) {
        PshMorPtr a = compose_morphisms(yo_phi(F, Y), precompose(Phi, yoneda_on_morphism(D, Phi.on_morphism(g))));
        PshMorPtr b = compose_morphisms(yoneda_on_morphism(C, g), yo_phi(F, Y1));
        rep.merge(check_equal(*a, *b, scope, "square"));
      }
  return rep;
}

PshMorPtr d_phi_n(const UnivCatFunctor& F, PshMorPtr m, PresheafPtr target_inner, int n) {
  if (n == 0) return m;
  const Universe& u = F.source();
  const Universe& v = F.target();
  PshMorPtr prev = d_phi_n(F, m, target_inner, n - 1);
  PshMorPtr lifted = d_on_morphism(u, prev);
  PshMorPtr step = phi_d(F, dn(v, n - 1, target_inner));
  PshMorPtr both = compose_morphisms(lifted, step);
  return std::make_shared<LambdaMorphism>(dn(u, n, m->source()), precompose(F.functor(), dn(v, n, target_inner)),
                                          "DPhi_" + std::to_string(n),
                                          [both](ObjId X, const Term& x) { return both->apply(X, x); });
}

PshMorPtr d_phi_n_unfolded(const UnivCatFunctor& F, PshMorPtr m, PresheafPtr target_inner, int n) {
  if (n == 0) return m;
  const Universe& u = F.source();
  const Universe& v = F.target();
  PshMorPtr prev = d_phi_n_unfolded(F, m, target_inner, n - 1);
  PresheafPtr inner = dn(v, n - 1, target_inner);
  return std::make_shared<LambdaMorphism>(
      dn(u, n, m->source()), precompose(F.functor(), dn(v, n, target_inner)), "DPhi_" + std::to_string(n) + "-unfolded",
      [&F, &u, prev, inner](ObjId, const Term& x) {
        MorId f = x.first().as_mor();
        Term a = prev->apply(u.ext(f), x.second());
        return Term::pair(Term::mor(F.transport_type(f)), inner->restrict(F.iota(f), a));
      });
}

PshMorPtr UnivCatFunctor::phi_n_morphism(int n, ObjId Y) const {
  uint64_t key = pack(static_cast<uint32_t>(n), Y.v);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = phin_.find(key);
    if (it != phin_.end()) return it->second;
  }
  PshMorPtr m = d_phi_n(*this, yo_phi(*this, Y), v_.yo(Phi_.on_object(Y)), n);
  std::lock_guard<std::mutex> lk(mu_);
  return phin_.emplace(key, m).first->second;
}

DElement phi_n(const UnivCatFunctor& F, const DElement& d) {
  const Functor& Phi = F.functor();
  PshMorPtr m = F.phi_n_morphism(d.depth, d.Y);
  return d_element(d.depth, Phi.on_object(d.X), Phi.on_object(d.Y), m->apply(d.X, d.payload));
}

DElement phi_n_unfolded(const UnivCatFunctor& F, const DElement& d) {
  const Universe& u = F.source();
  const Universe& v = F.target();
  const Functor& Phi = F.functor();
  if (d.depth == 0) return d_element(0, Phi.on_object(d.X), Phi.on_object(d.Y), Term::mor(Phi.on_morphism(d.payload.as_mor())));
  MorId f = d.payload.first().as_mor();
  DElement inner = phi_n_unfolded(F, d_element(d.depth - 1, u.ext(f), d.Y, d.payload.second()));
  DElement moved = circ_left(v, F.iota(f), inner);
  return d_element(d.depth, Phi.on_object(d.X), Phi.on_object(d.Y),
                   Term::pair(Term::mor(F.transport_type(f)), moved.payload));
}

LawReport check_d_phi_n(const UnivCatFunctor& F, const std::vector<ObjId>& objs, int max_n) {
  LawReport rep("d-phi-n");
  const Universe& u = F.source();
  const Universe& v = F.target();
  const Category& C = u.category();
  const Category& D = v.category();
  const Functor& Phi = F.functor();
  for (ObjId Y : objs) {
    ObjId PY = Phi.on_object(Y);
    PshMorPtr m = yo_phi(F, Y);
    for (ObjId X : objs)
      for (MorId f : C.hom(X, Y))
        rep.expect(phi_n(F, d_element(0, X, Y, Term::mor(f))).payload == Term::mor(Phi.on_morphism(f)), "depth-zero",
                   [&] { return C.describe(f); });
    for (int n = 1; n <= max_n; ++n) {
      PshMorPtr gen = F.phi_n_morphism(n, Y);
      PshMorPtr unf = d_phi_n_unfolded(F, m, v.yo(PY), n);
      const Presheaf& S = *gen->source();
      const Presheaf& T = *gen->target();
      for (ObjId X : objs)
        for (const Term& x : S.at(X)) {
          Term a = gen->apply(X, x);
          rep.expect(a == unf->apply(X, x), "recursion-unfolds", [&] { return C.object_label(X) + " on " + x.str(); });
          DElement d = d_element(n, X, Y, x);
          rep.expect(phi_n_unfolded(F, d).payload == a, "phi-n-unfolds", [&] { return x.str(); });
          rep.expect(well_formed(v, d_element(n, Phi.on_object(X), PY, a)), "lands",
                     [&] { return C.object_label(X) + " on " + x.str(); });
        }
      // presheaf morphism in X; target sets are never enumerated
      for (ObjId X : objs)
        for (ObjId X1 : objs)
          for (MorId f : C.hom(X, X1))
            for (const Term& x : S.at(X1))
              rep.expect(gen->apply(X, S.restrict(f, x)) == T.restrict(f, gen->apply(X1, x)), "natural",
                         [&] { return C.describe(f) + " on " + x.str(); });
      // the square of yo^Φ against Yo(g), carried through D^n
      for (ObjId Y1 : objs)
        for (MorId g : C.hom(Y, Y1)) {
          PshMorPtr left = d_iter(u, n, yoneda_on_morphism(C, g));
          PshMorPtr right = d_iter(v, n, yoneda_on_morphism(D, Phi.on_morphism(g)));
          PshMorPtr gen1 = F.phi_n_morphism(n, Y1);
          for (ObjId X : objs)
            for (const Term& x : S.at(X))
              rep.expect(gen1->apply(X, left->apply(X, x)) == right->apply(Phi.on_object(X), gen->apply(X, x)),
                         "square", [&] { return C.describe(g) + " on " + x.str(); });
        }
    }
  }
  return rep;
}

LawReport check_phi_n_natural(const UnivCatFunctor& F, const std::vector<ObjId>& objs, int max_n) {
  LawReport rep("phi-n-natural");
  const Universe& u = F.source();
  const Universe& v = F.target();
  const Category& C = u.category();
  const Functor& Phi = F.functor();
  for (int n = 0; n <= max_n; ++n)
    for (ObjId X : objs)
      for (ObjId Y : objs)
        for (const DElement& d : d_elements(u, n, X, Y)) {
          DElement pd = phi_n(F, d);
          for (ObjId X1 : objs)
            for (MorId f : C.hom(X1, X))
              rep.expect(circ_left(v, Phi.on_morphism(f), pd) == phi_n(F, circ_left(u, f, d)), "left",
                         [&] { return C.describe(f) + " o " + d.payload.str(); });
          for (ObjId Y1 : objs)
            for (MorId g : C.hom(Y, Y1))
              rep.expect(circ_right(v, pd, Phi.on_morphism(g)) == phi_n(F, circ_right(u, d, g)), "right",
                         [&] { return d.payload.str() + " o " + C.describe(g); });
        }
  return rep;
}

// ------------------------------------------------------------ H and ψ

HHomomorphism::HHomomorphism(const UnivCatFunctor& F, const CCSystem& source, const CCSystem& target)
    : Functor(source, target), F_(F), cc_(source), dd_(target) {
  if (&source.universe() != &F.source() || &target.universe() != &F.target())
    throw StructureError("H needs the C-systems of the functor's own universes");
  if (source.truncation() > target.truncation()) throw TruncationError("target C-system is truncated lower");
}

const HHomomorphism::Entry& HHomomorphism::entry(ObjId G) const {
  std::lock_guard<std::recursive_mutex> lk(mu_);
  auto it = entries_.find(G);
  if (it != entries_.end()) return it->second;
  const Category& D = dd_.base();
  const Functor& Phi = F_.functor();
  Entry e;
  if (cc_.length(G) == 0) {
    ObjId Ppt = Phi.on_object(cc_.int_object(G));
    const auto& h = D.hom(dd_.int_object(dd_.pt()), Ppt);
    e.image = dd_.pt();
    e.candidates = h.size();
    if (h.size() != 1) throw StructureError(std::to_string(h.size()) + " maps pt' -> Phi(pt)");
    e.psi = h.front();
  } else {
    const Universe& u = cc_.universe();
    const Universe& v = dd_.universe();
    ObjId A = cc_.ft(G);
    MorId f = cc_.type_of(G);
    const Entry& pa = entry(A);
    MorId f2 = D.chain({pa.psi, Phi.on_morphism(f), F_.phi()});
    e.image = dd_.child(pa.image, f2);
    Comprehension c = u.comprehension(f);
    Comprehension c2 = v.comprehension(f2);
    size_t count = 0;
    auto ms = find_mediators(D, c2.apex, Phi.on_object(c.apex), Phi.on_morphism(c.p),
                             D.compose(Phi.on_morphism(c.Q), F_.phi_tilde()), D.compose(c2.p, pa.psi), c2.Q, &count);
    e.candidates = count;
    if (count != 1) throw StructureError(std::to_string(count) + " candidates for psi at " + cc_.object_label(G));
    e.psi = ms.front();
  }
  e.psi_inv = require_inverse(D, e.psi);
  return entries_.emplace(G, e).first->second;
}

ObjId HHomomorphism::on_object(ObjId G) const { return entry(G).image; }
MorId HHomomorphism::psi(ObjId G) const { return entry(G).psi; }
MorId HHomomorphism::psi_inverse(ObjId G) const { return entry(G).psi_inv; }
size_t HHomomorphism::psi_candidates(ObjId G) const { return entry(G).candidates; }

MorId HHomomorphism::on_morphism(MorId f) const {
  ObjId G1 = cc_.dom(f), G = cc_.cod(f);
  MorId a = dd_.base().chain({psi(G1), F_.functor().on_morphism(cc_.int_morphism(f)), psi_inverse(G)});
  return dd_.morphism(on_object(G1), on_object(G), a);
}

LawReport check_h(const HHomomorphism& H) {
  LawReport rep("h-homomorphism");
  const CCSystem& cc = H.source_cc();
  const CCSystem& dd = H.target_cc();
  const Category& D = dd.base();
  const Functor& Phi = H.ucf().functor();
  int N = cc.truncation();
  std::vector<ObjId> all = cc.objects();
  std::vector<ObjId> lower = objects_with_length_at_most(cc, N - 1);

  rep.merge(check_functor(H, &lower), "functor");
  for (ObjId G : all) {
    rep.expect(H.psi_candidates(G) == 1, "psi-unique", [&] { return cc.object_label(G); });
    ObjId HG = H.on_object(G);
    rep.expect(D.compose(H.psi(G), H.psi_inverse(G)) == D.identity(dd.int_object(HG)) &&
                   D.compose(H.psi_inverse(G), H.psi(G)) == D.identity(Phi.on_object(cc.int_object(G))),
               "psi-iso", [&] { return cc.object_label(G); });
    rep.expect(dd.length(HG) == cc.length(G), "length", [&] { return cc.object_label(G); });
    rep.expect(H.on_morphism(cc.identity(G)) == dd.identity(HG), "identity", [&] { return cc.object_label(G); });
    if (cc.length(G) == 0) {
      rep.expect(HG == dd.pt(), "pt", [&] { return cc.object_label(G); });
      continue;
    }
    rep.expect(H.on_object(cc.ft(G)) == dd.ft(HG), "ft", [&] { return cc.object_label(G); });
    rep.expect(H.on_morphism(cc.proj(G)) == dd.proj(HG), "projection", [&] { return cc.object_label(G); });
  }
  // int(H f) o ψ(Γ) = ψ(Γ') o Φ(int f) for f : Γ' -> Γ
  for (ObjId G1 : all)
    for (ObjId G : all)
      for (MorId f : cc.hom(G1, G)) {
        MorId Hf = H.on_morphism(f);
        rep.expect(D.compose(dd.int_morphism(Hf), H.psi(G)) ==
                       D.compose(H.psi(G1), Phi.on_morphism(cc.int_morphism(f))),
                   "psi-natural", [&] { return cc.describe(f); });
      }
  // f* and q
  for (ObjId T : all) {
    if (cc.length(T) == 0) continue;
    ObjId HT = H.on_object(T);
    for (ObjId G1 : lower)
      for (MorId f : cc.hom(G1, cc.ft(T))) {
        MorId Hf = H.on_morphism(f);
        rep.expect(H.on_object(cc.base_change(f, T)) == dd.base_change(Hf, HT), "base-change",
                   [&] { return cc.describe(f) + " on " + cc.object_label(T); });
        rep.expect(H.on_morphism(cc.q(f, T)) == dd.q(Hf, HT), "q",
                   [&] { return cc.describe(f) + " on " + cc.object_label(T); });
      }
  }
  return rep;
}

// ------------------------------------------------------------ u transport

namespace {

// ψ(Γ) o (Φ^{n-1}(d) o c) for d in D_p^{n-1}(int Γ, Y)
Term transport(const HHomomorphism& H, ObjId G, int depth, ObjId Y, const Term& payload, MorId c) {
  const UnivCatFunctor& F = H.ucf();
  const CCSystem& cc = H.source_cc();
  DElement d = phi_n(F, d_element(depth, cc.int_object(G), Y, payload));
  return circ_left(F.target(), H.psi(G), circ_right(F.target(), d, c)).payload;
}

// u_1 ; int°(yo^{Φ,Y}) ; int°Φ°(Yo c) ; ψ°  and  H(-) ; H°(u'_1)
void check_u1_diagram(const HHomomorphism& H, bool tilde, LawReport& rep) {
  const UnivCatFunctor& F = H.ucf();
  const CCSystem& cc = H.source_cc();
  const CCSystem& dd = H.target_cc();
  const Universe& u = F.source();
  const Universe& v = F.target();
  const Functor& Phi = F.functor();
  const Functor& I = cc.int_functor();
  ObjId Y = tilde ? u.U_tilde() : u.U();
  ObjId Y2 = tilde ? v.U_tilde() : v.U();
  MorId c = tilde ? F.phi_tilde() : F.phi();
  PshMorPtr first = tilde ? u1_tilde(cc) : u1(cc);
  PshMorPtr target_u1 = tilde ? u1_tilde(dd) : u1(dd);
  PresheafPtr ob1 = first->source();

  PshMorPtr yoc = precompose(I, precompose(Phi, yoneda_on_morphism(v.category(), c)));
  PresheafPtr hint = precompose(H, int_pullback(dd, v.yo(Y2)));
  PshMorPtr psi_circ = std::make_shared<LambdaMorphism>(
      yoc->target(), hint, "psi°", [&H, &v, Y2](ObjId G, const Term& x) { return v.yo(Y2)->restrict(H.psi(G), x); });
  PshMorPtr a = compose_morphisms(
      compose_morphisms(compose_morphisms(first, precompose(I, yo_phi(F, Y))), yoc), psi_circ);

  PshMorPtr h_ob = std::make_shared<LambdaMorphism>(ob1, precompose(H, target_u1->source()), "H-ob1",
                                                    [&H, tilde](ObjId, const Term& x) {
                                                      return tilde ? Term::mor(H.on_morphism(x.as_mor()))
                                                                   : Term::obj(H.on_object(x.as_obj()));
                                                    });
  PshMorPtr b = compose_morphisms(h_ob, precompose(H, target_u1));
  CheckScope scope{objects_with_length_at_most(cc, cc.truncation() - 1), false};
  rep.merge(check_equal(*a, *b, scope, tilde ? "diagram-tilde" : "diagram"));
}

}  // namespace

LawReport check_u_transport(const HHomomorphism& H, int max_n) {
  LawReport rep("u-transport");
  const UnivCatFunctor& F = H.ucf();
  const CCSystem& cc = H.source_cc();
  const CCSystem& dd = H.target_cc();
  const Universe& u = F.source();
  CSystemPresheaves& P = cc.presheaves();
  int N = cc.truncation();
  for (int n = 1; n <= max_n && n <= N; ++n)
    for (bool tilde : {false, true}) {
      PshMorPtr un = tilde ? u_tilde_n(cc, n) : u_n(cc, n);
      PshMorPtr vn = tilde ? u_tilde_n(dd, n) : u_n(dd, n);
      PshMorPtr un_inv = presheaf_iso_inverse(un);
      PshMorPtr vn_inv = presheaf_iso_inverse(vn);
      ObjId Y = tilde ? u.U_tilde() : u.U();
      MorId c = tilde ? F.phi_tilde() : F.phi();
      const char* fwd = tilde ? "tilde" : "plain";
      const char* inv = tilde ? "tilde-inverse" : "plain-inverse";
      for (ObjId G : objects_with_length_at_most(cc, N - n)) {
        ObjId HG = H.on_object(G);
        PresheafPtr ob = tilde ? P.ob_tilde(n) : P.ob(n);
        for (const Term& x : ob->at(G)) {
          Term hx = tilde ? Term::mor(H.on_morphism(x.as_mor())) : Term::obj(H.on_object(x.as_obj()));
          Term lhs = vn->apply(HG, hx);
          Term rhs = transport(H, G, n - 1, Y, un->apply(G, x), c);
          rep.expect(lhs == rhs, fwd, [&] { return cc.object_label(G) + " on " + x.str(); });
        }
        for (const DElement& d : d_elements(u, n - 1, cc.int_object(G), Y)) {
          Term x = un_inv->apply(G, d.payload);
          Term hx = tilde ? Term::mor(H.on_morphism(x.as_mor())) : Term::obj(H.on_object(x.as_obj()));
          rep.expect(hx == vn_inv->apply(HG, transport(H, G, n - 1, Y, d.payload, c)), inv,
                     [&] { return cc.object_label(G) + " on " + d.payload.str(); });
        }
      }
      if (n == 1) check_u1_diagram(H, tilde, rep);
    }
  return rep;
}

// ------------------------------------------------------------ χ, ξ

MorId chi(const UnivCatFunctor& F, const IpFunctor& I, const IpFunctor& J, int n, ObjId Y) {
  DElement d = phi_n(F, I.id_n(n, Y));
  return J.eta_n(n, d.Y, d.X, d.payload);
}

MorId xi(const UnivCatFunctor& F, const IpFunctor& I, const IpFunctor& J, int n) {
  return F.target().category().compose(chi(F, I, J, n, F.source().U()), J.iterate(n, F.phi()));
}

MorId xi_tilde(const UnivCatFunctor& F, const IpFunctor& I, const IpFunctor& J, int n) {
  return F.target().category().compose(chi(F, I, J, n, F.source().U_tilde()), J.iterate(n, F.phi_tilde()));
}

LawReport check_chi(const UnivCatFunctor& F, const IpFunctor& I, const IpFunctor& J, const std::vector<ObjId>& objs,
                    int max_n) {
  LawReport rep("chi-laws");
  const Universe& u = F.source();
  const Universe& v = F.target();
  const Category& C = u.category();
  const Category& D = v.category();
  const Functor& Phi = F.functor();
  std::vector<ObjId> ys = objs;
  ys.push_back(u.U());
  ys.push_back(u.U_tilde());
  for (ObjId Y : ys)
    rep.expect(chi(F, I, J, 0, Y) == D.identity(Phi.on_object(Y)), "chi-zero", [&] { return C.object_label(Y); });
  rep.expect(xi(F, I, J, 0) == F.phi(), "xi-zero", [&] { return D.describe(xi(F, I, J, 0)); });
  rep.expect(xi_tilde(F, I, J, 0) == F.phi_tilde(), "xi-tilde-zero", [&] { return D.describe(xi_tilde(F, I, J, 0)); });
  for (int n = 0; n <= max_n; ++n) {
    for (ObjId Y : objs)
      for (ObjId Y1 : objs)
        for (MorId g : C.hom(Y, Y1))
          rep.expect(D.compose(chi(F, I, J, n, Y), J.iterate(n, Phi.on_morphism(g))) ==
                         D.compose(Phi.on_morphism(I.iterate(n, g)), chi(F, I, J, n, Y1)),
                     "chi-natural", [&] { return std::to_string(n) + " " + C.describe(g); });
    for (ObjId X : objs)
      for (ObjId Y : objs) {
        MorId cy = chi(F, I, J, n, Y);
        for (const DElement& d : d_elements(u, n, X, Y)) {
          DElement pd = phi_n(F, d);
          MorId lhs = J.eta_n(n, pd.Y, pd.X, pd.payload);
          MorId rhs = D.compose(Phi.on_morphism(I.eta_n(n, Y, X, d.payload)), cy);
          rep.expect(lhs == rhs, "eta-transport", [&] { return std::to_string(n) + " " + d.payload.str(); });
        }
      }
    rep.expect(D.compose(xi_tilde(F, I, J, n), J.iterate(n, v.p())) ==
                   D.compose(Phi.on_morphism(I.iterate(n, u.p())), xi(F, I, J, n)),
               "xi-square", [&] { return std::to_string(n); });
  }
  return rep;
}

LawReport check_mu_transport(const HHomomorphism& H, const IpFunctor& I, const IpFunctor& J, int max_n) {
  LawReport rep("mu-transport");
  const UnivCatFunctor& F = H.ucf();
  const CCSystem& cc = H.source_cc();
  const CCSystem& dd = H.target_cc();
  const Category& C = cc.base();
  const Category& D = dd.base();
  const Functor& Phi = F.functor();
  CSystemPresheaves& P = cc.presheaves();
  int N = cc.truncation();
  for (int n = 1; n <= max_n && n <= N; ++n)
    for (bool tilde : {false, true}) {
      PshMorPtr mu = tilde ? mu_tilde_n(cc, I, n) : mu_n(cc, I, n);
      PshMorPtr nu = tilde ? mu_tilde_n(dd, J, n) : mu_n(dd, J, n);
      PshMorPtr mu_inv = presheaf_iso_inverse(mu);
      PshMorPtr nu_inv = presheaf_iso_inverse(nu);
      MorId x = tilde ? xi_tilde(F, I, J, n - 1) : xi(F, I, J, n - 1);
      ObjId top = I.iterate(n - 1, tilde ? F.source().U_tilde() : F.source().U());
      const char* fwd = tilde ? "tilde" : "plain";
      const char* inv = tilde ? "tilde-inverse" : "plain-inverse";
      for (ObjId G : objects_with_length_at_most(cc, N - n)) {
        ObjId HG = H.on_object(G);
        PresheafPtr ob = tilde ? P.ob_tilde(n) : P.ob(n);
        for (const Term& t : ob->at(G)) {
          Term ht = tilde ? Term::mor(H.on_morphism(t.as_mor())) : Term::obj(H.on_object(t.as_obj()));
          MorId lhs = nu->apply(HG, ht).as_mor();
          MorId rhs = D.chain({H.psi(G), Phi.on_morphism(mu->apply(G, t).as_mor()), x});
          rep.expect(lhs == rhs, fwd, [&] { return cc.object_label(G) + " on " + t.str(); });
        }
        for (MorId f : C.hom(cc.int_object(G), top)) {
          Term t = mu_inv->apply(G, Term::mor(f));
          Term ht = tilde ? Term::mor(H.on_morphism(t.as_mor())) : Term::obj(H.on_object(t.as_obj()));
          MorId moved = D.chain({H.psi(G), Phi.on_morphism(f), x});
          rep.expect(ht == nu_inv->apply(HG, Term::mor(moved)), inv,
                     [&] { return cc.object_label(G) + " on " + C.describe(f); });
        }
      }
    }
  return rep;
}

// ------------------------------------------------------------ finite-set inclusion

ObjId FinSetImport::on_object(ObjId X) const {
  const Term& r = S_.recipe(X);
  const auto& labels = S_.elements(X);
  if (r.items().at(0).as_int() == kRecipeStandard && static_cast<int>(labels.size()) <= T_.bound())
    return T_.standard(static_cast<int>(labels.size()));
  return T_.carrier(recipe_term(kRecipeImport, {r}), labels, S_.object_label(X));
}

MorId FinSetImport::on_morphism(MorId f) const {
  return T_.function(on_object(S_.dom(f)), on_object(S_.cod(f)), S_.table(f));
}

MorId FinSetImport::by_label(ObjId X, ObjId Y) const {
  ObjId PX = on_object(X);
  const auto& labels = T_.elements(PX);
  return T_.function_by(PX, Y, [&](uint32_t i) { return T_.index_of(Y, labels[i]); });
}

std::unique_ptr<InclusionFixture> make_inclusion_fixture(int K, std::vector<int> sizes, int K2,
                                                         std::vector<int> sizes2, size_t element_limit) {
  if (K2 < K || sizes2.size() < sizes.size() || !std::equal(sizes.begin(), sizes.end(), sizes2.begin()))
    throw StructureError("the inclusion needs K <= K' and the source sizes as a prefix of the target sizes");
  auto fx = std::make_unique<InclusionFixture>();
  fx->source = make_finset(K, "FS" + std::to_string(K), element_limit);
  fx->target = make_finset(K2, "FS" + std::to_string(K2), element_limit);
  fx->U = std::make_unique<CodingUniverse>(*fx->source.S, sizes, "U" + std::to_string(sizes.size()));
  fx->V = std::make_unique<CodingUniverse>(*fx->target.S, sizes2, "U" + std::to_string(sizes2.size()));
  fx->Phi = std::make_unique<FinSetImport>(*fx->source.S, *fx->target.S);
  MorId phi = fx->Phi->by_label(fx->U->U(), fx->V->U());
  MorId phit = fx->Phi->by_label(fx->U->U_tilde(), fx->V->U_tilde());
  fx->F = std::make_unique<UnivCatFunctor>(*fx->U, *fx->V, *fx->Phi, phi, phit);
  return fx;
}

}  // namespace csys
