#include "csys/universe.hpp"

namespace csys {

Universe::Universe(const Category& C, MorId p, ObjId pt, std::string name)
    : C_(C), p_(p), U_(C.cod(p)), Ut_(C.dom(p)), pt_(pt), name_(std::move(name)) {}

MorId Universe::star(MorId f, MorId g, MorId F) const {
  Comprehension c = comprehension(F);
  return unique_mediator(C_, C_.dom(f), c.apex, c.p, c.Q, f, g);
}

MorId Universe::q(MorId f, MorId F) const {
  uint64_t key = pack(f.v, F.v);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = q_cache_.find(key);
    if (it != q_cache_.end()) return it->second;
  }
  MorId fF = C_.compose(f, F);
  Comprehension c = comprehension(fF);
  MorId r = star(C_.compose(c.p, f), c.Q, F);
  std::lock_guard<std::mutex> lk(mu_);
  q_cache_.emplace(key, r);
  return r;
}

MorId Universe::to_terminal(ObjId X) const {
  const auto& h = C_.hom(X, pt_);
  if (h.size() != 1)
    throw StructureError(std::to_string(h.size()) + " morphisms from " + C_.object_label(X) + " to the final object");
  return h.front();
}

PresheafPtr Universe::yo(ObjId Y) const { return d_yo(0, Y); }

PresheafPtr Universe::d_yo(int n, ObjId Y) const {
  uint64_t key = pack(static_cast<uint32_t>(n), Y.v);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = d_cache_.find(key);
    if (it != d_cache_.end()) return it->second;
  }
  PresheafPtr G = n == 0 ? yoneda(C_, Y) : d_on_presheaf(*this, d_yo(n - 1, Y));
  std::lock_guard<std::mutex> lk(mu_);
  return d_cache_.emplace(key, G).first->second;
}

Comprehension TableUniverse::comprehension(MorId F) const {
  auto it = table_.find(F);
  if (it == table_.end()) throw StructureError("no comprehension chosen for " + category().describe(F));
  return it->second;
}

LawReport check_universe(const Universe& u, const std::vector<ObjId>& objs, const std::vector<ObjId>& probes) {
  LawReport rep("universe-pullback");
  const Category& C = u.category();
  for (ObjId X : objs)
    for (MorId F : C.hom(X, u.U())) {
      Comprehension c = u.comprehension(F);
      auto at = [&] { return "F = " + C.describe(F); };
      bool ends = C.dom(c.p) == c.apex && C.cod(c.p) == X && C.dom(c.Q) == c.apex && C.cod(c.Q) == u.U_tilde();
      if (!rep.expect(ends, "endpoints", at)) continue;
      if (!rep.expect(C.compose(c.p, F) == C.compose(c.Q, u.p()), "square-commutes", at)) continue;
      std::string why = pullback_failure(C, c.apex, c.p, c.Q, F, u.p(), probes);
      rep.expect(why.empty(), "pullback", [&] { return at() + ": " + why; });
      for (ObjId W : probes)
        for (MorId f : C.hom(W, X)) {
          MorId fF = C.compose(f, F);
          for (MorId g : C.hom(W, u.U_tilde())) {
            if (C.compose(g, u.p()) != fF) continue;
            MorId s = u.star(f, g, F);
            rep.expect(C.compose(s, c.p) == f && C.compose(s, c.Q) == g, "star-equations",
                       [&] { return at() + ", f = " + C.describe(f) + ", g = " + C.describe(g); });
          }
        }
    }
  return rep;
}

LawReport check_q_identities(const Universe& u, const std::vector<ObjId>& objs) {
  LawReport rep("q-identities");
  const Category& C = u.category();
  for (ObjId X : objs)
    for (MorId F : C.hom(X, u.U())) {
      Comprehension c = u.comprehension(F);
      rep.expect(u.q(C.identity(X), F) == C.identity(c.apex), "q-identity", [&] { return "F = " + C.describe(F); });
      for (ObjId X1 : objs)
        for (MorId f : C.hom(X1, X)) {
          MorId fF = C.compose(f, F);
          Comprehension c1 = u.comprehension(fF);
          MorId qf = u.q(f, F);
          auto at = [&] { return "f = " + C.describe(f) + ", F = " + C.describe(F); };
          rep.expect(C.compose(qf, c.p) == C.compose(c1.p, f), "q-square", at);
          rep.expect(c1.Q == C.compose(qf, c.Q), "q-factor", at);
          for (ObjId X2 : objs)
            for (MorId f2 : C.hom(X2, X1))
              rep.expect(u.q(C.compose(f2, f), F) == C.compose(u.q(f2, fF), qf), "q-composition",
                         [&] { return at() + ", f' = " + C.describe(f2); });
        }
    }
  return rep;
}

// ---------------------------------------------------------------- D_p

DPresheaf::DPresheaf(const Universe& u, PresheafPtr G)
    : Presheaf(u.category(), "D(" + G->name() + ")"), u_(u), G_(std::move(G)) {}

Term DPresheaf::restrict(MorId f, const Term& x) const {
  MorId F = x.first().as_mor();
  return Term::pair(Term::mor(base().compose(f, F)), G_->restrict(u_.q(f, F), x.second()));
}

ElementSet DPresheaf::compute(ObjId X) const {
  ElementSet out;
  for (MorId F : base().hom(X, u_.U())) {
    Term tf = Term::mor(F);
    for (const auto& g : G_->at(u_.ext(F))) out.push_back(Term::pair(tf, g));
  }
  return out;
}

PresheafPtr d_on_presheaf(const Universe& u, PresheafPtr G) { return std::make_shared<DPresheaf>(u, std::move(G)); }

PshMorPtr d_on_morphism(const Universe& u, PshMorPtr r, PresheafPtr source, PresheafPtr target) {
  const Universe* up = &u;
  return std::make_shared<LambdaMorphism>(std::move(source), std::move(target), "D(" + r->name() + ")",
                                          [up, r](ObjId, const Term& x) {
                                            ObjId E = up->ext(x.first().as_mor());
                                            return Term::pair(x.first(), r->apply(E, x.second()));
                                          });
}

PshMorPtr d_on_morphism(const Universe& u, PshMorPtr r) {
  return d_on_morphism(u, r, d_on_presheaf(u, r->source()), d_on_presheaf(u, r->target()));
}

PresheafPtr d_iter(const Universe& u, int n, PresheafPtr G) {
  for (int i = 0; i < n; ++i) G = d_on_presheaf(u, G);
  return G;
}

PshMorPtr d_iter(const Universe& u, int n, PshMorPtr r) {
  for (int i = 0; i < n; ++i) r = d_on_morphism(u, r);
  return r;
}

DElement d_element(int depth, ObjId X, ObjId Y, Term payload) { return DElement{depth, X, Y, std::move(payload)}; }

namespace {

bool well_formed_at(const Universe& u, int n, ObjId X, ObjId Y, const Term& t) {
  const Category& C = u.category();
  if (t.empty()) return false;
  if (n == 0) {
    if (t.kind() != Term::kMor) return false;
    MorId a = t.as_mor();
    return C.dom(a) == X && C.cod(a) == Y;
  }
  if (!t.is_pair() || t.first().kind() != Term::kMor) return false;
  MorId F = t.first().as_mor();
  if (C.dom(F) != X || C.cod(F) != u.U()) return false;
  return well_formed_at(u, n - 1, u.ext(F), Y, t.second());
}

Term left(const Universe& u, MorId f, int n, const Term& t) {
  const Category& C = u.category();
  if (n == 0) return Term::mor(C.compose(f, t.as_mor()));
  MorId F = t.first().as_mor();
  return Term::pair(Term::mor(C.compose(f, F)), left(u, u.q(f, F), n - 1, t.second()));
}

Term right(const Universe& u, int n, const Term& t, MorId g) {
  if (n == 0) return Term::mor(u.category().compose(t.as_mor(), g));
  return Term::pair(t.first(), right(u, n - 1, t.second(), g));
}

}  // namespace

bool well_formed(const Universe& u, const DElement& d) { return well_formed_at(u, d.depth, d.X, d.Y, d.payload); }

DElement circ_left(const Universe& u, MorId f, const DElement& d) {
  const Category& C = u.category();
  if (C.cod(f) != d.X) throw CompositionError("f o d: " + C.describe(f) + " does not end at " + C.object_label(d.X));
  return DElement{d.depth, C.dom(f), d.Y, left(u, f, d.depth, d.payload)};
}

DElement circ_right(const Universe& u, const DElement& d, MorId g) {
  const Category& C = u.category();
  if (C.dom(g) != d.Y) throw CompositionError("d o g: " + C.describe(g) + " does not start at " + C.object_label(d.Y));
  return DElement{d.depth, d.X, C.cod(g), right(u, d.depth, d.payload, g)};
}

std::vector<DElement> d_elements(const Universe& u, int n, ObjId X, ObjId Y) {
  std::vector<DElement> out;
  for (const auto& t : u.d_yo(n, Y)->at(X)) out.push_back(DElement{n, X, Y, t});
  return out;
}

LawReport check_circ_laws(const Universe& u, const std::vector<ObjId>& objs, int max_depth) {
  LawReport rep("circ-laws");
  const Category& C = u.category();
  for (int n = 0; n <= max_depth; ++n)
    for (ObjId X : objs)
      for (ObjId Y : objs)
        for (const DElement& d : d_elements(u, n, X, Y)) {
          auto at = [&] { return "depth " + std::to_string(n) + " d = " + d.payload.str(); };
          rep.expect(circ_left(u, C.identity(X), d) == d, "left-unit", at);
          rep.expect(circ_right(u, d, C.identity(Y)) == d, "right-unit", at);
          for (ObjId X1 : objs)
            for (MorId f : C.hom(X1, X)) {
              DElement fd = circ_left(u, f, d);
              rep.expect(well_formed(u, fd), "left-lands", [&] { return at() + ", f = " + C.describe(f); });
              for (ObjId X2 : objs)
                for (MorId f2 : C.hom(X2, X1))
                  rep.expect(circ_left(u, C.compose(f2, f), d) == circ_left(u, f2, fd), "left-associative",
                             [&] { return at() + ", f = " + C.describe(f) + ", f' = " + C.describe(f2); });
              for (ObjId Y1 : objs)
                for (MorId g : C.hom(Y, Y1))
                  rep.expect(circ_left(u, f, circ_right(u, d, g)) == circ_right(u, fd, g), "middle-associative",
                             [&] { return at() + ", f = " + C.describe(f) + ", g = " + C.describe(g); });
            }
          for (ObjId Y1 : objs)
            for (MorId g : C.hom(Y, Y1)) {
              DElement dg = circ_right(u, d, g);
              rep.expect(well_formed(u, dg), "right-lands", [&] { return at() + ", g = " + C.describe(g); });
              for (ObjId Y2 : objs)
                for (MorId g2 : C.hom(Y1, Y2))
                  rep.expect(circ_right(u, d, C.compose(g, g2)) == circ_right(u, dg, g2), "right-associative",
                             [&] { return at() + ", g = " + C.describe(g) + ", g' = " + C.describe(g2); });
            }
        }
  return rep;
}

LawReport check_circ_oracle(const Universe& u, const std::vector<ObjId>& objs, int max_depth) {
  LawReport rep("circ-oracle");
  const Category& C = u.category();
  for (int n = 0; n <= max_depth; ++n)
    for (ObjId Y : objs) {
      PresheafPtr G = u.d_yo(n, Y);
      PresheafPtr Gprev = n > 0 ? u.d_yo(n - 1, Y) : nullptr;
      for (ObjId X : objs)
        for (const DElement& d : d_elements(u, n, X, Y)) {
          auto at = [&] { return "depth " + std::to_string(n) + " d = " + d.payload.str(); };
          for (ObjId X1 : objs)
            for (MorId f : C.hom(X1, X)) {
              Term generic = G->restrict(f, d.payload);
              rep.expect(circ_left(u, f, d).payload == generic, "left-action-agrees",
                         [&] { return at() + ", f = " + C.describe(f); });
              if (n > 0) {
                // f o (F, a) = (f o F, Q(f,F) o a), both sides by presheaf actions
                MorId F = d.payload.first().as_mor();
                Term formula = Term::pair(Term::mor(C.compose(f, F)), Gprev->restrict(u.q(f, F), d.payload.second()));
                rep.expect(generic == formula, "left-formula", [&] { return at() + ", f = " + C.describe(f); });
              }
            }
          for (ObjId Y1 : objs)
            for (MorId g : C.hom(Y, Y1)) {
              PshMorPtr Dg = d_iter(u, n, yoneda_on_morphism(C, g));
              Term generic = Dg->apply(X, d.payload);
              rep.expect(circ_right(u, d, g).payload == generic, "right-action-agrees",
                         [&] { return at() + ", g = " + C.describe(g); });
              if (n > 0) {
                PshMorPtr Dg1 = d_iter(u, n - 1, yoneda_on_morphism(C, g));
                MorId F = d.payload.first().as_mor();
                Term formula = Term::pair(d.payload.first(), Dg1->apply(u.ext(F), d.payload.second()));
                rep.expect(generic == formula, "right-formula", [&] { return at() + ", g = " + C.describe(g); });
              }
            }
        }
    }
  return rep;
}

LawReport check_dp_presheaf(const Universe& u, const std::vector<ObjId>& objs, int max_depth) {
  LawReport rep("dp-presheaf");
  const Category& C = u.category();
  CheckScope scope{objs, true};
  for (int n = 1; n <= max_depth; ++n)
    for (ObjId Y : objs) {
      PresheafPtr G = u.d_yo(n, Y);
      rep.merge(check_presheaf(*G, scope));
      PshMorPtr Did = d_iter(u, n, yoneda_on_morphism(C, C.identity(Y)));
      rep.merge(check_equal(*Did, *identity_morphism(G), scope, "identity"));
      for (ObjId Y1 : objs)
        for (MorId g : C.hom(Y, Y1)) {
          PshMorPtr Dg = d_iter(u, n, yoneda_on_morphism(C, g));
          rep.merge(check_natural(*Dg, scope));
          for (ObjId Y2 : objs)
            for (MorId g2 : C.hom(Y1, Y2)) {
              PshMorPtr lhs = d_iter(u, n, yoneda_on_morphism(C, C.compose(g, g2)));
              PshMorPtr rhs = compose_morphisms(Dg, d_iter(u, n, yoneda_on_morphism(C, g2)));
              rep.merge(check_equal(*lhs, *rhs, scope, "composition"));
            }
        }
    }
  // |D_p(Yo Y)(X)| = sum over F : X -> U of |hom((X;F), Y)|
  for (ObjId X : objs)
    for (ObjId Y : objs) {
      size_t want = 0;
      for (MorId F : C.hom(X, u.U())) want += C.hom(u.ext(F), Y).size();
      size_t got = u.d_yo(1, Y)->at(X).size();
      rep.expect(got == want, "count", [&] {
        return C.object_label(X) + ", " + C.object_label(Y) + ": " + std::to_string(got) + " vs " + std::to_string(want);
      });
    }
  return rep;
}

}  // namespace csys
