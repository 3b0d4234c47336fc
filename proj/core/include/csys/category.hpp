#pragma once

#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "csys/errors.hpp"
#include "csys/report.hpp"
#include "csys/term.hpp"

namespace csys {

// A computable finite category. Composition is diagrammatic: compose(f, g)
// is "f, then g" and requires cod(f) == dom(g).
//
// objects() is the bounded enumerator that law checks quantify over; a
// category may hold more objects than it enumerates (derived carriers).
class Category {
 public:
  virtual ~Category() = default;

  virtual std::string name() const = 0;
  virtual std::vector<ObjId> objects() const = 0;
  virtual ObjId dom(MorId f) const = 0;
  virtual ObjId cod(MorId f) const = 0;
  virtual MorId identity(ObjId X) const = 0;
  virtual const std::vector<MorId>& hom(ObjId X, ObjId Y) const = 0;
  virtual MorId compose(MorId f, MorId g) const = 0;

  virtual std::string object_label(ObjId X) const { return "o" + std::to_string(X.v); }
  virtual std::string morphism_label(MorId f) const { return "m" + std::to_string(f.v); }

  // Two-sided inverse, if any. The default searches hom(cod f, dom f).
  virtual std::optional<MorId> inverse(MorId f) const;

  MorId chain(std::initializer_list<MorId> ms) const;
  std::vector<MorId> morphisms() const;
  std::vector<MorId> morphisms_among(const std::vector<ObjId>& objs) const;
  std::string describe(MorId f) const;
};

// Object/morphism tables given explicitly. Used for the category F, DSL
// [category] blocks and fault injection (tables can be edited before use).
class TableCategory : public Category {
 public:
  explicit TableCategory(std::string name) : name_(std::move(name)) {}

  ObjId add_object(const std::string& label);
  MorId add_morphism(const std::string& label, ObjId dom, ObjId cod);
  void set_identity(ObjId X, MorId id);
  void set_composite(MorId f, MorId g, MorId h);
  void clear_composite(MorId f, MorId g);

  ObjId object(const std::string& label) const;
  MorId morphism(const std::string& label) const;
  bool has_object(const std::string& label) const { return obj_index_.count(label) > 0; }
  bool has_morphism(const std::string& label) const { return mor_index_.count(label) > 0; }
  size_t object_count() const { return obj_labels_.size(); }
  size_t morphism_count() const { return mors_.size(); }
  std::optional<MorId> composite(MorId f, MorId g) const;

  std::string name() const override { return name_; }
  std::vector<ObjId> objects() const override;
  ObjId dom(MorId f) const override;
  ObjId cod(MorId f) const override;
  MorId identity(ObjId X) const override;
  const std::vector<MorId>& hom(ObjId X, ObjId Y) const override;
  MorId compose(MorId f, MorId g) const override;
  std::string object_label(ObjId X) const override;
  std::string morphism_label(MorId f) const override;

 private:
  struct Mor {
    std::string label;
    ObjId dom, cod;
  };
  std::string name_;
  std::vector<std::string> obj_labels_;
  std::vector<MorId> identities_;
  std::vector<Mor> mors_;
  std::unordered_map<std::string, ObjId> obj_index_;
  std::unordered_map<std::string, MorId> mor_index_;
  std::unordered_map<uint64_t, std::vector<MorId>> homs_;
  std::unordered_map<uint64_t, MorId> comp_;
  std::vector<MorId> empty_;
};

// Delegates to another category with some composites replaced.
class PatchedCategory : public Category {
 public:
  explicit PatchedCategory(const Category& base) : b_(base) {}
  void override_composite(MorId f, MorId g, MorId h) { comp_[pack(f.v, g.v)] = h; }

  std::string name() const override { return b_.name() + "*"; }
  std::vector<ObjId> objects() const override { return b_.objects(); }
  ObjId dom(MorId f) const override { return b_.dom(f); }
  ObjId cod(MorId f) const override { return b_.cod(f); }
  MorId identity(ObjId X) const override { return b_.identity(X); }
  const std::vector<MorId>& hom(ObjId X, ObjId Y) const override { return b_.hom(X, Y); }
  MorId compose(MorId f, MorId g) const override;
  std::string object_label(ObjId X) const override { return b_.object_label(X); }
  std::string morphism_label(MorId f) const override { return b_.morphism_label(f); }

 private:
  const Category& b_;
  std::unordered_map<uint64_t, MorId> comp_;
};

// The category of functions between the standard sets {0..n-1}, n <= max_n.
// Morphism labels are "n>m:t0t1..." listing the table.
std::unique_ptr<TableCategory> functions_category(int max_n, const std::string& name = "F");
std::string function_label(int n, int m, const std::vector<int>& table);

// Unit, associativity and dom/cod laws over all composable triples of
// objects() (or of `scope` when given).
LawReport check_category(const Category& C, const std::vector<ObjId>* scope = nullptr);

}  // namespace csys
