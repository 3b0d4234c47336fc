#include "csys/lcc_rep.hpp"

namespace csys {

IpFunctor::IpFunctor(const Universe& u, const BinaryProducts& bp, const LocallyCartesianClosed& lcc)
    : Functor(u.category(), u.category()),
      u_(u),
      bp_(bp),
      lcc_(lcc),
      S_(lcc.slice(u.U())),
      ccc_(lcc.slice_ccc(u.U())),
      A_(S_.object_of(u.U_tilde(), u.p())) {}

const IpFunctor::Data& IpFunctor::data(ObjId Y) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = data_.find(Y);
    if (it != data_.end()) return *it->second;
  }
  const Category& C = u_.category();
  auto d = std::make_unique<Data>();
  ProductDiagram P = bp_.product(u_.U(), Y);
  ObjId B = S_.object_of(P.apex, P.pr1);
  d->H = ccc_.hom_object(A_, B);
  d->I = S_.underlying(d->H);
  d->pr = S_.structure(d->H);
  d->ev = S_.underlying(ccc_.eval(A_, B));
  d->pr2 = P.pr2;
  d->st = C.chain({iota(d->pr), d->ev, d->pr2});
  std::lock_guard<std::mutex> lock(mu_);
  return *data_.emplace(Y, std::move(d)).first->second;
}

ObjId IpFunctor::on_object(ObjId Y) const { return data(Y).I; }

MorId IpFunctor::on_morphism(MorId f) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = on_mor_.find(f);
    if (it != on_mor_.end()) return it->second;
  }
  const Category& C = u_.category();
  ObjId Y1 = C.cod(f);
  MorId t = bp_.times(C.identity(u_.U()), f);
  MorId b = S_.morphism_of(t, bp_.product(u_.U(), Y1).pr1);
  MorId r = S_.underlying(ccc_.hom_post(A_, b));
  std::lock_guard<std::mutex> lock(mu_);
  return on_mor_.emplace(f, r).first->second;
}

ObjId IpFunctor::iterate(int n, ObjId Y) const {
  for (int i = 0; i < n; ++i) Y = on_object(Y);
  return Y;
}

MorId IpFunctor::iterate(int n, MorId f) const {
  for (int i = 0; i < n; ++i) f = on_morphism(f);
  return f;
}

MorId IpFunctor::pr(ObjId Y) const { return data(Y).pr; }
MorId IpFunctor::ev(ObjId Y) const { return data(Y).ev; }
MorId IpFunctor::st(ObjId Y) const { return data(Y).st; }

MorId IpFunctor::iota(MorId F) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = iota_.find(F);
    if (it != iota_.end()) return it->second;
  }
  Comprehension c = u_.comprehension(F);
  MorId a = S_.morphism_of(c.p, F);
  MorId b = S_.morphism_of(c.Q, u_.p());
  MorId r = S_.underlying(ccc_.products().pair(a, b));
  std::lock_guard<std::mutex> lock(mu_);
  return iota_.emplace(F, r).first->second;
}

MorId IpFunctor::iota_inverse(MorId F) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = iota_inv_.find(F);
    if (it != iota_inv_.end()) return it->second;
  }
  const Category& C = u_.category();
  ProductDiagram D = ccc_.products().product(S_.object_of(C.dom(F), F), A_);
  MorId r = u_.star(S_.underlying(D.pr1), S_.underlying(D.pr2), F);
  std::lock_guard<std::mutex> lock(mu_);
  return iota_inv_.emplace(F, r).first->second;
}

Term IpFunctor::eta_bang(ObjId Y, MorId g) const {
  const Category& C = u_.category();
  MorId p = pr(Y);
  MorId F = C.compose(g, p);
  MorId a = C.compose(u_.q(g, p), st(Y));
  return Term::pair(Term::mor(F), Term::mor(a));
}

MorId IpFunctor::eta(ObjId Y, ObjId X, const Term& d) const {
  const Category& C = u_.category();
  MorId F = d.first().as_mor();
  MorId a = d.second().as_mor();
  if (C.dom(F) != X) throw CompositionError("D_p element is not over " + C.object_label(X));
  ObjId W = S_.object_of(X, F);
  ProductDiagram D = ccc_.products().product(W, A_);
  MorId pr1 = S_.underlying(D.pr1);
  ProductDiagram P = bp_.product(u_.U(), Y);
  MorId m = bp_.pair(C.compose(pr1, F), C.compose(iota_inverse(F), a));
  MorId ms = S_.morphism_of(m, P.pr1);
  return S_.underlying(ccc_.adj_inverse(W, A_, ms));
}

MorId IpFunctor::eta_n(int n, ObjId Y, ObjId X, const Term& d) const {
  if (n == 0) return d.as_mor();
  MorId F = d.first().as_mor();
  MorId inner = eta_n(n - 1, Y, u_.ext(F), d.second());
  return eta(iterate(n - 1, Y), X, Term::pair(d.first(), Term::mor(inner)));
}

Term IpFunctor::eta_bang_n(int n, ObjId Y, MorId g) const {
  if (n == 0) return Term::mor(g);
  Term t = eta_bang(iterate(n - 1, Y), g);
  return Term::pair(t.first(), eta_bang_n(n - 1, Y, t.second().as_mor()));
}

DElement IpFunctor::id_n(int n, ObjId Y) const {
  ObjId In = iterate(n, Y);
  return d_element(n, In, Y, eta_bang_n(n, Y, u_.category().identity(In)));
}

PshMorPtr IpFunctor::eta_morphism(int n, ObjId Y) const {
  return std::make_shared<LambdaMorphism>(u_.d_yo(n, Y), u_.yo(iterate(n, Y)), "eta_" + std::to_string(n),
                                          [this, n, Y](ObjId X, const Term& d) { return Term::mor(eta_n(n, Y, X, d)); });
}

PshMorPtr IpFunctor::eta_bang_morphism(int n, ObjId Y) const {
  return std::make_shared<LambdaMorphism>(u_.yo(iterate(n, Y)), u_.d_yo(n, Y), "eta!_" + std::to_string(n),
                                          [this, n, Y](ObjId, const Term& g) { return eta_bang_n(n, Y, g.as_mor()); });
}

// ------------------------------------------------------------ μ_n

namespace {

PshMorPtr mu_generic(const CCSystem& cc, const IpFunctor& I, int n, bool tilde) {
  const Universe& u = cc.universe();
  ObjId Y = tilde ? u.U_tilde() : u.U();
  PshMorPtr un = tilde ? u_tilde_n_unfolded(cc, n) : u_n_unfolded(cc, n);
  return std::make_shared<LambdaMorphism>(
      un->source(), cc.int_d_yo(0, I.iterate(n - 1, Y)), std::string(tilde ? "muT_" : "mu_") + std::to_string(n),
      [&cc, &I, un, n, Y](ObjId G, const Term& x) {
        return Term::mor(I.eta_n(n - 1, Y, cc.int_object(G), un->apply(G, x)));
      });
}

}  // namespace

PshMorPtr mu_n(const CCSystem& cc, const IpFunctor& I, int n) { return mu_generic(cc, I, n, false); }
PshMorPtr mu_tilde_n(const CCSystem& cc, const IpFunctor& I, int n) { return mu_generic(cc, I, n, true); }

// ------------------------------------------------------------ checks

LawReport check_ip_functor(const IpFunctor& I, const std::vector<ObjId>& objs) {
  LawReport rep("ip-functor");
  const Category& C = I.universe().category();
  rep.merge(check_functor(I, &objs), "functor");
  for (ObjId Y : objs)
    for (ObjId Y1 : objs)
      for (MorId f : C.hom(Y, Y1))
        rep.expect(C.compose(I.on_morphism(f), I.pr(Y1)) == I.pr(Y), "over-U", [&] { return C.describe(f); });
  // ι_F and its inverse for every F into U from the objects
  for (ObjId X : objs)
    for (MorId F : C.hom(X, I.universe().U())) {
      MorId i = I.iota(F), j = I.iota_inverse(F);
      rep.expect(C.compose(i, j) == C.identity(C.dom(i)) && C.compose(j, i) == C.identity(C.cod(i)), "iota-inverse",
                 [&] { return C.describe(F); });
    }
  return rep;
}

LawReport check_st_square(const IpFunctor& I, const std::vector<ObjId>& objs) {
  LawReport rep("st-square");
  const Universe& u = I.universe();
  const Category& C = u.category();
  for (ObjId Y : objs)
    for (ObjId Y1 : objs)
      for (MorId f : C.hom(Y, Y1)) {
        MorId lhs = C.compose(u.q(I.on_morphism(f), I.pr(Y1)), I.st(Y1));
        MorId rhs = C.compose(I.st(Y), f);
        rep.expect(lhs == rhs, "square", [&] { return C.describe(f); });
      }
  return rep;
}

LawReport check_eta_iso(const IpFunctor& I, const std::vector<ObjId>& xs, const std::vector<ObjId>& ys) {
  LawReport rep("eta-iso");
  const Universe& u = I.universe();
  const Category& C = u.category();
  CheckScope scope{xs, false};
  for (ObjId Y : ys) {
    std::string tag = "eta(" + C.object_label(Y) + ")";
    auto e = I.eta_morphism(1, Y), b = I.eta_bang_morphism(1, Y);
    rep.merge(check_inverse_pair(*e, *b, scope), tag);
    rep.merge(check_natural(*e, scope), tag);
    rep.merge(check_natural(*b, scope), tag + "^!");
    for (ObjId X : xs)
      rep.expect(u.d_yo(1, Y)->at(X).size() == C.hom(X, I.on_object(Y)).size(), "count",
                 [&] { return tag + " at " + C.object_label(X); });
    for (ObjId Y1 : ys)
      for (MorId f : C.hom(Y, Y1))
        for (ObjId X : xs)
          for (MorId g : C.hom(X, I.on_object(Y))) {
            DElement d = d_element(1, X, Y, I.eta_bang(Y, g));
            DElement lhs = circ_right(u, d, f);
            rep.expect(lhs.payload == I.eta_bang(Y1, C.compose(g, I.on_morphism(f))), "natural-in-Y",
                       [&] { return C.describe(g) + " then " + C.describe(f); });
            rep.expect(I.eta(Y1, X, lhs.payload) == C.compose(I.eta(Y, X, d.payload), I.on_morphism(f)),
                       "eta-natural-in-Y", [&] { return C.describe(g) + " then " + C.describe(f); });
          }
  }
  return rep;
}

LawReport check_eta_n_natural(const IpFunctor& I, const std::vector<ObjId>& xs, const std::vector<ObjId>& ys,
                              int max_n) {
  LawReport rep("eta-n-natural");
  const Universe& u = I.universe();
  const Category& C = u.category();
  CheckScope scope{xs, false};
  for (int n = 0; n <= max_n; ++n)
    for (ObjId Y : ys) {
      std::string tag = "eta_" + std::to_string(n) + "(" + C.object_label(Y) + ")";
      auto e = I.eta_morphism(n, Y), b = I.eta_bang_morphism(n, Y);
      rep.merge(check_inverse_pair(*e, *b, scope), tag);
      for (ObjId X : xs)
        for (const DElement& d : d_elements(u, n, X, Y)) {
          MorId ed = I.eta_n(n, Y, X, d.payload);
          for (ObjId X1 : xs)
            for (MorId f : C.hom(X1, X)) {
              DElement fd = circ_left(u, f, d);
              rep.expect(I.eta_n(n, Y, X1, fd.payload) == C.compose(f, ed), "left",
                         [&] { return tag + " " + C.describe(f) + " on " + d.payload.str(); });
            }
          for (ObjId Y1 : ys)
            for (MorId g : C.hom(Y, Y1)) {
              DElement dg = circ_right(u, d, g);
              rep.expect(I.eta_n(n, Y1, X, dg.payload) == C.compose(ed, I.iterate(n, g)), "right",
                         [&] { return tag + " " + C.describe(g) + " on " + d.payload.str(); });
            }
        }
    }
  return rep;
}

LawReport check_id_n_laws(const IpFunctor& I, const std::vector<ObjId>& xs, const std::vector<ObjId>& ys, int max_n) {
  LawReport rep("id-n-laws");
  const Universe& u = I.universe();
  const Category& C = u.category();
  for (int n = 0; n <= max_n; ++n)
    for (ObjId Y : ys) {
      std::string tag = "Id^" + std::to_string(n) + "_" + C.object_label(Y);
      DElement id = I.id_n(n, Y);
      ObjId In = id.X;
      rep.expect(well_formed(u, id), "well-formed", [&] { return tag; });
      if (n == 0) rep.expect(id.payload == Term::mor(C.identity(Y)), "zero", [&] { return tag; });
      for (ObjId X : xs)
        for (MorId m : C.hom(X, In))
          rep.expect(circ_left(u, m, id).payload == I.eta_bang_n(n, Y, m), "left",
                     [&] { return tag + " " + C.describe(m); });
      for (ObjId Y1 : ys)
        for (MorId g : C.hom(Y, Y1))
          rep.expect(circ_right(u, id, g).payload == I.eta_bang_n(n, Y1, I.iterate(n, g)), "right",
                     [&] { return tag + " " + C.describe(g); });
      for (ObjId X : xs)
        for (const DElement& d : d_elements(u, n, X, Y))
          rep.expect(circ_left(u, I.eta_n(n, Y, X, d.payload), id) == d, "recover",
                     [&] { return tag + " " + d.payload.str(); });
    }
  return rep;
}

LawReport check_mu_boundary_square(const CCSystem& cc, const IpFunctor& I, int max_n) {
  LawReport rep("mu-boundary-square");
  const Universe& u = cc.universe();
  const Category& C = u.category();
  CheckScope scope = csystem_scope(cc);
  for (int n = 1; n <= std::min(max_n, cc.truncation()); ++n) {
    std::string k = std::to_string(n);
    auto mu = mu_n(cc, I, n), mut = mu_tilde_n(cc, I, n);
    rep.merge(check_inverse_pair(*mu, *presheaf_iso_inverse(mu), scope), "mu_" + k);
    rep.merge(check_inverse_pair(*mut, *presheaf_iso_inverse(mut), scope), "muT_" + k);
    rep.merge(check_natural(*mu, scope), "mu_" + k);
    rep.merge(check_natural(*mut, scope), "muT_" + k);
    if (n == 1) {
      rep.merge(check_equal(*mu, *u1(cc), scope, "base"), "mu_1");
      rep.merge(check_equal(*mut, *u1_tilde(cc), scope, "base"), "muT_1");
    }
    MorId Ip = I.iterate(n - 1, u.p());
    for (ObjId G : scope.objects) {
      if (!mut->source()->defined_at(G)) continue;
      for (const Term& o : mut->source()->at(G)) {
        Term lhs = mu->apply(G, Term::obj(cc.cod(o.as_mor())));
        MorId rhs = C.compose(mut->apply(G, o).as_mor(), Ip);
        rep.expect(lhs == Term::mor(rhs), "square", [&] { return "n=" + k + " " + cc.describe(o.as_mor()); });
      }
    }
  }
  return rep;
}

}  // namespace csys
