#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "csys/category.hpp"

namespace csys {

struct ProductDiagram {
  ObjId apex;
  MorId pr1, pr2;
};

// Chosen binary products. pair() and times() default to mediator search.
class BinaryProducts {
 public:
  explicit BinaryProducts(const Category& C) : C_(C) {}
  virtual ~BinaryProducts() = default;
  const Category& category() const { return C_; }
  virtual std::string name() const = 0;
  virtual ProductDiagram product(ObjId X, ObjId Y) const = 0;
  // a : A -> X, b : A -> Y gives the unique A -> X x Y.
  virtual MorId pair(MorId a, MorId b) const;
  // a x b : X x Y -> X' x Y'
  virtual MorId times(MorId a, MorId b) const;

 private:
  const Category& C_;
};

// All m : A -> d.apex with m o pr1 = a and m o pr2 = b.
std::vector<MorId> mediators(const Category& C, ObjId A, ObjId apex, MorId pr1, MorId pr2, MorId a, MorId b);
MorId unique_mediator(const Category& C, ObjId A, ObjId apex, MorId pr1, MorId pr2, MorId a, MorId b);

// Universal property of the commuting square apex -pr1-> X -f-> Z,
// apex -pr2-> Y -g-> Z against cones from `probes`. Empty when it holds,
// otherwise a witness.
std::string pullback_failure(const Category& C, ObjId apex, MorId pr1, MorId pr2, MorId f, MorId g,
                             const std::vector<ObjId>& probes);

class CartesianClosed {
 public:
  explicit CartesianClosed(const BinaryProducts& bp) : bp_(bp) {}
  virtual ~CartesianClosed() = default;
  const BinaryProducts& products() const { return bp_; }
  const Category& category() const { return bp_.category(); }
  virtual ObjId hom_object(ObjId X, ObjId Y) const = 0;
  // Hom(X, b) : Hom(X, Y) -> Hom(X, Y')
  virtual MorId hom_post(ObjId X, MorId b) const = 0;
  // ev : Hom(X, Y) x X -> Y
  virtual MorId eval(ObjId X, ObjId Y) const = 0;
  // adj(u) = (u x Id_X) o ev for u : W -> Hom(X, Y)
  MorId adj(MorId u, ObjId X, ObjId Y) const;
  // inverse of adj on m : W x X -> Y; default searches hom(W, Hom(X, Y)).
  virtual MorId adj_inverse(ObjId W, ObjId X, MorId m) const;
  // Hom(a, Y) : Hom(X', Y) -> Hom(X, Y) for a : X -> X', the unique
  // morphism whose adjoint is (Id x a) o ev.
  virtual MorId hom_pre(MorId a, ObjId Y) const;

 private:
  const BinaryProducts& bp_;
};

struct PullbackDiagram {
  ObjId apex;
  MorId pr1, pr2;  // pr1 o f = pr2 o g
};

class Pullbacks {
 public:
  explicit Pullbacks(const Category& C) : C_(C) {}
  virtual ~Pullbacks() = default;
  const Category& category() const { return C_; }
  virtual std::string name() const = 0;
  // nullopt when the structure has no entry (partial structures).
  virtual std::optional<PullbackDiagram> pullback(MorId f, MorId g) const = 0;
  // unique W -> apex with m o pr1 = d1, m o pr2 = d2
  virtual MorId mediate(MorId f, MorId g, MorId d1, MorId d2) const;

 private:
  const Category& C_;
};

// Explicit pullback table, e.g. the two structures on F.
class TablePullbacks : public Pullbacks {
 public:
  TablePullbacks(const Category& C, std::string name) : Pullbacks(C), name_(std::move(name)) {}
  std::string name() const override { return name_; }
  void set(MorId f, MorId g, PullbackDiagram d) { table_[pack(f.v, g.v)] = d; }
  std::optional<PullbackDiagram> pullback(MorId f, MorId g) const override;
  const std::unordered_map<uint64_t, PullbackDiagram>& table() const { return table_; }

 private:
  std::string name_;
  std::unordered_map<uint64_t, PullbackDiagram> table_;
};

// C/Z: objects (X, f : X -> Z); morphisms a^g = (a, g) with a o g the
// domain's structure map.
class SliceCategory : public Category {
 public:
  SliceCategory(const Category& C, ObjId Z);
  const Category& base() const { return C_; }
  ObjId base_object() const { return Z_; }

  ObjId object_of(ObjId X, MorId f) const;
  // a^g : (dom a, a o g) -> (dom g, g)
  MorId morphism_of(MorId a, MorId g) const;
  ObjId underlying(ObjId XF) const;
  MorId structure(ObjId XF) const;
  MorId underlying(MorId ag) const;

  std::string name() const override;
  // (X, f) for X in base().objects(), f : X -> Z
  std::vector<ObjId> objects() const override;
  ObjId dom(MorId f) const override;
  ObjId cod(MorId f) const override;
  MorId identity(ObjId X) const override;
  const std::vector<MorId>& hom(ObjId X, ObjId Y) const override;
  MorId compose(MorId f, MorId g) const override;
  std::string object_label(ObjId X) const override;
  std::string morphism_label(MorId f) const override;

 private:
  struct Obj {
    ObjId X;
    MorId f;
  };
  struct Mor {
    MorId a, g;
    ObjId dom, cod;
  };
  const Category& C_;
  ObjId Z_;
  mutable std::mutex mu_;
  mutable std::vector<Obj> objs_;
  mutable std::vector<Mor> mors_;
  mutable std::unordered_map<uint64_t, ObjId> obj_index_;
  mutable std::unordered_map<uint64_t, MorId> mor_index_;
  mutable std::unordered_map<uint64_t, std::unique_ptr<std::vector<MorId>>> homs_;
};

// Products in C/Z read off a pullback structure on C: (X,f) x (Y,g) is the
// apex of the pullback of (f, g) with structure pr1 o f. Throws
// StructureError where the pullback structure has no entry.
class SlicePullbackProducts : public BinaryProducts {
 public:
  SlicePullbackProducts(const SliceCategory& S, const Pullbacks& pb) : BinaryProducts(S), S_(S), pb_(pb) {}
  std::string name() const override { return pb_.name() + "/" + S_.base().object_label(S_.base_object()); }
  ProductDiagram product(ObjId X, ObjId Y) const override;
  MorId pair(MorId a, MorId b) const override;

 private:
  const SliceCategory& S_;
  const Pullbacks& pb_;
};

class LocallyCartesianClosed {
 public:
  explicit LocallyCartesianClosed(const Category& C) : C_(C) {}
  virtual ~LocallyCartesianClosed() = default;
  const Category& category() const { return C_; }
  virtual const SliceCategory& slice(ObjId Z) const = 0;
  virtual const CartesianClosed& slice_ccc(ObjId Z) const = 0;

 private:
  const Category& C_;
};

// ------------------------------------------------------------------ checks

// Product universal property for X, Y in `objs` against cones from `probes`.
LawReport check_products(const BinaryProducts& bp, const std::vector<ObjId>& objs, const std::vector<ObjId>& probes);

// Pullback universal property for every defined cospan with legs among
// the morphisms between `objs`, cones from `probes`.
LawReport check_pullbacks(const Pullbacks& pb, const std::vector<ObjId>& objs, const std::vector<ObjId>& probes);

// Cartesian closed structure: Hom(X,-) functorial, adj bijective for every
// W in `probes`, the evaluation square commutes.
LawReport check_ccc(const CartesianClosed& ccc, const std::vector<ObjId>& objs, const std::vector<ObjId>& probes);

// The mutually inverse comparison isomorphisms between two product
// diagrams on the same pair. Throws StructureError if a mediator is not
// unique or the composites are not identities.
std::pair<MorId, MorId> product_compare_iso(const Category& C, const ProductDiagram& d1, const ProductDiagram& d2);

// c_1(a,b) o iota = iota' o c_2(a,b) for all a : X'->X, b : Y'->Y over
// `objs`, where c_i come from products p_i and iota, iota' compare them.
LawReport check_product_compare_natural(const BinaryProducts& p1, const BinaryProducts& p2,
                                        const std::vector<ObjId>& objs);
bool product_compare_square(const BinaryProducts& p1, const BinaryProducts& p2, MorId a, MorId b);

// Hom(-, Y) functor laws and the bifunctor square.
LawReport check_hom_contravariant(const CartesianClosed& ccc, const std::vector<ObjId>& objs);
// (Id x a) o ev^{X'} = (Hom(a,Y) x Id_X) o ev^X for a : X -> X'.
LawReport check_hom_eval_square(const CartesianClosed& ccc, const std::vector<ObjId>& objs);
// adj(r o Hom(X,b)) = adj(r) o b; adj(r o Hom(a,Y)) = (Id x a) o adj(r);
// adj(c o r) = (c x Id) o adj(r).
LawReport check_adj_laws(const CartesianClosed& ccc, const std::vector<ObjId>& objs, const std::vector<ObjId>& probes);

struct SquareVerdict {
  bool pullback_in_base = false;
  bool product_in_slice = false;
};
// Square X -a-> Y -g-> Z, X -a2-> Y2 -g2-> Z (commuting). Pullback-ness in
// C is tested against cones from `probes`; the slice product property
// against slice objects (W, e) with W in `probes`.
SquareVerdict pullback_slice_equiv(const Category& C, MorId a, MorId a2, MorId g, MorId g2,
                                   const std::vector<ObjId>& probes);
LawReport check_pullback_slice_equiv(const Category& C, const std::vector<ObjId>& objs, const std::vector<ObjId>& probes,
                                     const Pullbacks* canonical);

// a^f x_Z b^g functor laws in the slice over Z.
LawReport check_slice_product_functor(const LocallyCartesianClosed& lcc, ObjId Z);
// every slice over Z in `bases` passes check_ccc on its enumerated objects
LawReport check_lcc(const LocallyCartesianClosed& lcc, const std::vector<ObjId>& bases);

// ------------------------------------------------------ the category F

struct StrVariants {
  std::unique_ptr<TablePullbacks> str1, str_sigma;
  MorId id_x, sigma;
  ObjId x;
};
// Two pullback structures on functions_category(3): canonical pair-set
// pullbacks (where they fit in objects 0..3), differing only at (Id_2, Id_2)
// where str_sigma has both legs the swap.
StrVariants make_str_variants(const TableCategory& F);
// Cospans where the two tables differ.
std::vector<std::pair<MorId, MorId>> pullback_differences(const TablePullbacks& a, const TablePullbacks& b);

// All automorphisms of a finite category (object bijection + morphism
// bijection preserving dom/cod, identities and composition), as maps on
// morphism ids. Backtracking with forward checking.
std::vector<std::vector<MorId>> automorphisms(const TableCategory& C);
// Whether the automorphism (morphism map) transports pullback structure a
// onto b at every cospan.
bool transports(const TableCategory& C, const std::vector<MorId>& phi, const TablePullbacks& a, const TablePullbacks& b);

}  // namespace csys
