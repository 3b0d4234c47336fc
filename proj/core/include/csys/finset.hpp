#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "csys/stable_vector.hpp"
#include "csys/structures.hpp"
#include "csys/universe.hpp"

namespace csys {

// First item of every carrier recipe.
enum RecipeTag : int32_t {
  kRecipeStandard = 1,
  kRecipeProduct,
  kRecipeProductSwapped,
  kRecipePullback,
  kRecipeHom,
  kRecipeSliceHom,
  kRecipeCodes,
  kRecipeCodedElements,
  kRecipeComprehension,
  kRecipeImport,
  kRecipeUser,
};
Term recipe_term(RecipeTag tag, std::vector<Term> args);

// Finite sets and total functions. Every carrier is an ordered list of
// distinct element labels, interned by a recipe term, so rebuilding a
// derived object (product, hom, comprehension) yields the same id.
//
// objects() enumerates the standard sets {0..n-1} for n <= K; derived
// carriers exist alongside them up to `element_limit` elements.
class FinSet : public Category {
 public:
  explicit FinSet(int K, std::string name = "FS", size_t element_limit = 4096, size_t hom_limit = size_t{1} << 20);

  int bound() const { return K_; }
  size_t element_limit() const { return element_limit_; }

  ObjId standard(int n) const;
  // Interned by recipe; a second call with the same recipe must pass the
  // same labels. Throws BoundExceeded above the element limit.
  ObjId carrier(const Term& recipe, const std::vector<Term>& labels, const std::string& display = "") const;
  std::optional<ObjId> find_carrier(const Term& recipe) const;
  const Term& recipe(ObjId X) const;
  const std::vector<Term>& elements(ObjId X) const;
  size_t size(ObjId X) const { return elements(X).size(); }
  // Position of a label; throws UnknownId.
  uint32_t index_of(ObjId X, const Term& label) const;
  std::optional<uint32_t> find_index(ObjId X, const Term& label) const;

  using Table = std::vector<uint32_t>;
  MorId function(ObjId X, ObjId Y, const Table& table) const;
  template <class Fn>
  MorId function_by(ObjId X, ObjId Y, Fn&& fn) const {
    Table t(size(X));
    for (uint32_t i = 0; i < t.size(); ++i) t[i] = static_cast<uint32_t>(fn(i));
    return function(X, Y, t);
  }
  const Table& table(MorId f) const;
  uint32_t apply(MorId f, uint32_t i) const { return table(f)[i]; }
  size_t morphism_count() const { return mors_.size(); }

  std::string name() const override { return name_; }
  std::vector<ObjId> objects() const override;
  ObjId dom(MorId f) const override;
  ObjId cod(MorId f) const override;
  MorId identity(ObjId X) const override;
  // All |Y|^|X| tables in lexicographic order; BoundExceeded above hom_limit.
  const std::vector<MorId>& hom(ObjId X, ObjId Y) const override;
  MorId compose(MorId f, MorId g) const override;
  std::string object_label(ObjId X) const override;
  std::string morphism_label(MorId f) const override;
  std::optional<MorId> inverse(MorId f) const override;

 private:
  struct Obj {
    Term recipe;
    std::vector<Term> labels;
    std::string display;
    std::unordered_map<Term, uint32_t, TermHash> index;
    mutable std::atomic<uint32_t> identity{UINT32_MAX};
  };
  struct Mor {
    ObjId dom, cod;
    Table table;
  };
  const Obj& obj(ObjId X) const;
  const Mor& mor(MorId f) const;

  int K_;
  std::string name_;
  size_t element_limit_, hom_limit_;
  mutable std::mutex mu_;
  mutable StableVector<std::unique_ptr<Obj>> objs_;
  mutable StableVector<Mor, 14> mors_;
  mutable std::unordered_map<Term, ObjId, TermHash> obj_index_;
  mutable std::unordered_map<std::string, MorId> mor_index_;
  mutable std::unordered_map<uint64_t, MorId> comp_;
  mutable std::unordered_map<uint64_t, std::unique_ptr<std::vector<MorId>>> homs_;
  std::vector<ObjId> standard_;
};

// Tagged pair sets. The canonical variant labels (x, y) in x-major order;
// the swapped variant labels (y, x) in y-major order.
class FinSetProducts : public BinaryProducts {
 public:
  explicit FinSetProducts(const FinSet& S, bool swapped = false) : BinaryProducts(S), S_(S), swapped_(swapped) {}
  std::string name() const override { return swapped_ ? "pairs-swapped" : "pairs"; }
  ProductDiagram product(ObjId X, ObjId Y) const override;
  MorId pair(MorId a, MorId b) const override;

 private:
  const FinSet& S_;
  bool swapped_;
};

// Pullback of (f, g) as the subset {(x, y) | f x = g y} of the pair set.
class FinSetPullbacks : public Pullbacks {
 public:
  explicit FinSetPullbacks(const FinSet& S) : Pullbacks(S), S_(S) {}
  std::string name() const override { return "subsets"; }
  std::optional<PullbackDiagram> pullback(MorId f, MorId g) const override;
  MorId mediate(MorId f, MorId g, MorId d1, MorId d2) const override;

 private:
  const FinSet& S_;
};

// Hom(X, Y) is the set of tables, labelled by the sequence of values.
class FinSetCCC : public CartesianClosed {
 public:
  FinSetCCC(const FinSet& S, const FinSetProducts& bp) : CartesianClosed(bp), S_(S) {}
  ObjId hom_object(ObjId X, ObjId Y) const override;
  MorId hom_post(ObjId X, MorId b) const override;
  MorId eval(ObjId X, ObjId Y) const override;
  MorId adj_inverse(ObjId W, ObjId X, MorId m) const override;

 private:
  const FinSet& S_;
};

// Cartesian closed structure on FS/Z: products are chosen pullbacks, and
// Hom_Z((X,f),(Y,g)) has elements (z, table of a map f^-1(z) -> g^-1(z)).
class FinSetSliceCCC : public CartesianClosed {
 public:
  FinSetSliceCCC(const FinSet& S, const SliceCategory& slice, const SlicePullbackProducts& bp)
      : CartesianClosed(bp), S_(S), slice_(slice) {}
  ObjId hom_object(ObjId X, ObjId Y) const override;
  MorId hom_post(ObjId X, MorId b) const override;
  MorId eval(ObjId X, ObjId Y) const override;
  MorId adj_inverse(ObjId W, ObjId X, MorId m) const override;

 private:
  // indices of X's elements over each z, in order
  std::vector<std::vector<uint32_t>> fibers(MorId f) const;
  const FinSet& S_;
  const SliceCategory& slice_;
};

class FinSetLCC : public LocallyCartesianClosed {
 public:
  FinSetLCC(const FinSet& S, const FinSetPullbacks& pb) : LocallyCartesianClosed(S), S_(S), pb_(pb) {}
  const SliceCategory& slice(ObjId Z) const override;
  const CartesianClosed& slice_ccc(ObjId Z) const override;
  const SlicePullbackProducts& slice_products(ObjId Z) const;

 private:
  struct Entry {
    std::unique_ptr<SliceCategory> slice;
    std::unique_ptr<SlicePullbackProducts> products;
    std::unique_ptr<FinSetSliceCCC> ccc;
  };
  const Entry& entry(ObjId Z) const;
  const FinSet& S_;
  const FinSetPullbacks& pb_;
  mutable std::mutex mu_;
  mutable std::unordered_map<ObjId, std::unique_ptr<Entry>> entries_;
};

// U = codes {0..k-1}, code c has El(c) = {0..sizes[c]-1}; Ũ = {(c, e)};
// p the first projection; (X;F) = {(x, e) | e in El(F x)}.
class CodingUniverse : public Universe {
 public:
  CodingUniverse(const FinSet& S, std::vector<int> sizes, const std::string& name = "U");
  const FinSet& finset() const { return S_; }
  const std::vector<int>& sizes() const { return sizes_; }
  Comprehension comprehension(MorId F) const override;
  MorId star(MorId f, MorId g, MorId F) const override;

 private:
  static MorId make_p(const FinSet& S, const std::vector<int>& sizes, const std::string& name);
  const FinSet& S_;
  std::vector<int> sizes_;
  std::vector<uint32_t> offset_;  // position of (c, 0) in Ũ
  mutable std::mutex mu_;
  mutable std::unordered_map<MorId, Comprehension> cache_;
};

// Everything the finite-sets model provides, built together.
struct FinSetModel {
  std::unique_ptr<FinSet> S;
  std::unique_ptr<FinSetProducts> products, swapped;
  std::unique_ptr<FinSetPullbacks> pullbacks;
  std::unique_ptr<FinSetCCC> ccc;
  std::unique_ptr<FinSetLCC> lcc;
};
FinSetModel make_finset(int K, const std::string& name = "FS", size_t element_limit = 4096);

// |sec(p_F)| equals the product of |El(F x)|, for F : X -> U, X in objs.
LawReport check_section_count(const CodingUniverse& u, const std::vector<ObjId>& objs);

}  // namespace csys
