#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "csys/cc.hpp"
#include "csys/finset.hpp"
#include "csys/functoriality.hpp"
#include "csys/lcc_rep.hpp"
#include "csys/spec_doc.hpp"

namespace csys {

struct SuiteParams {
  int n = 2;
  int N = 2;
  int depth = 2;
};

enum class FaultKind { kUnitLaw, kQSquare, kPhiTildePullback, kSigNaturality, kU1Naturality };
std::optional<FaultKind> fault_from_name(const std::string& name);
std::string fault_name(FaultKind k);
// The check that a fault of this kind is aimed at.
std::string fault_target(FaultKind k);

// Products given as a table, one diagram per object pair.
class TableProducts : public BinaryProducts {
 public:
  TableProducts(const Category& C, std::string name) : BinaryProducts(C), name_(std::move(name)) {}
  std::string name() const override { return name_; }
  void set(ObjId X, ObjId Y, ProductDiagram d) { table_[pack(X.v, Y.v)] = d; }
  ProductDiagram product(ObjId X, ObjId Y) const override;

 private:
  std::string name_;
  std::unordered_map<uint64_t, ProductDiagram> table_;
};

// Hom objects and evaluations given as a table; Hom(X, b) is recovered
// from the adjunction.
class TableCCC : public CartesianClosed {
 public:
  using CartesianClosed::CartesianClosed;
  void set(ObjId X, ObjId Y, ObjId H, MorId ev) { table_[pack(X.v, Y.v)] = {H, ev}; }
  ObjId hom_object(ObjId X, ObjId Y) const override;
  MorId hom_post(ObjId X, MorId b) const override;
  MorId eval(ObjId X, ObjId Y) const override;

 private:
  std::unordered_map<uint64_t, std::pair<ObjId, MorId>> table_;
};

// Everything a document describes, built and resolved. Construction throws
// DslError at the offending position for unresolved ids, non-total tables,
// ill-typed entries and unsupported block combinations.
class Workspace {
 public:
  explicit Workspace(const SpecDocument& doc);
  ~Workspace();
  static void validate(const SpecDocument& doc);

  const Category& category() const { return *C_; }
  const FinSet* finset() const { return fs_ ? fs_->S.get() : nullptr; }
  const TableCategory* table() const { return table_view_; }
  // functions_category(max) from `[category] kind = functions`
  bool functions_category() const { return functions_; }
  // objects checks quantify over
  std::vector<ObjId> objects() const;

  const Universe* universe() const { return U_; }
  const BinaryProducts* products() const { return products_; }
  // a second product structure for the comparison checks (the swapped pairs
  // over [finset], otherwise the same table)
  const BinaryProducts* products_alt() const { return products_alt_; }
  const Pullbacks* pullbacks() const { return pullbacks_; }
  const CartesianClosed* ccc() const { return ccc_; }
  const LocallyCartesianClosed* lcc() const { return lcc_; }
  const IpFunctor* ip() const { return I_.get(); }

  bool has_csystem() const { return cs_kind_ != CsKind::kNone; }
  bool csystem_is_cc() const { return cs_kind_ == CsKind::kCC; }
  // The C-system at truncation N (tables have their own fixed truncation).
  const CSystem& csystem(int N) const;
  const CCSystem* cc(int N) const;
  int table_truncation() const;

  const UnivCatFunctor* ucf() const { return F_; }
  std::vector<ObjId> ucf_source_objects() const;
  std::vector<ObjId> ucf_target_objects() const;
  const IpFunctor* ip_source() const { return Isrc_ ? Isrc_.get() : I_.get(); }
  const IpFunctor* ip_target() const { return J_ ? J_.get() : I_.get(); }
  const CCSystem& ucf_source_cc(int N) const;
  const CCSystem& ucf_target_cc(int N) const;
  const HHomomorphism& homomorphism(int N) const;

  const std::vector<std::string>& selection() const { return selection_; }
  const SuiteParams& params() const { return params_; }
  std::optional<FaultKind> fault() const { return fault_; }
  int fault_seed() const { return seed_; }

 private:
  enum class CsKind { kNone, kCC, kTable };
  void build_category(const Block& b);
  void build_finset(const Block& b);
  void build_universe(const Block& b);
  void build_products(const Block& b);
  void build_pullbacks(const Block& b);
  void build_ccc(const Block& b);
  void build_lcc(const Block& b);
  void build_csystem(const Block& b);
  void build_ucf(const Block& b);
  void build_suite(const Block& b);
  void build_mutate(const Block& b);

  ObjId obj(const Entry& e, const std::string& label, SourcePos p) const;
  MorId mor(const Entry& e, const std::string& label, SourcePos p) const;

  const Category* C_ = nullptr;
  std::unique_ptr<FinSetModel> fs_;
  std::unique_ptr<TableCategory> table_;
  const TableCategory* table_view_ = nullptr;
  bool functions_ = false;

  std::unique_ptr<Universe> own_U_;
  const Universe* U_ = nullptr;
  const BinaryProducts* products_ = nullptr;
  const BinaryProducts* products_alt_ = nullptr;
  const Pullbacks* pullbacks_ = nullptr;
  const CartesianClosed* ccc_ = nullptr;
  const LocallyCartesianClosed* lcc_ = nullptr;
  std::unique_ptr<TableProducts> own_products_;
  std::unique_ptr<Pullbacks> own_pullbacks_, own_pullbacks_alt_;
  std::unique_ptr<TableCCC> own_ccc_;
  std::unique_ptr<IpFunctor> I_;

  CsKind cs_kind_ = CsKind::kNone;
  int cs_N_ = 2;
  std::unique_ptr<TableCSystem> table_cs_;

  std::unique_ptr<InclusionFixture> inc_;
  std::unique_ptr<Functor> own_Phi_;
  std::unique_ptr<UnivCatFunctor> own_F_;
  const UnivCatFunctor* F_ = nullptr;
  std::unique_ptr<IpFunctor> Isrc_, J_;

  std::vector<std::string> selection_;
  SuiteParams params_;
  std::optional<FaultKind> fault_;
  int seed_ = 0;

  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<CCSystem>> cc_, ucf_src_, ucf_dst_;
  mutable std::map<int, std::unique_ptr<HHomomorphism>> H_;
};

}  // namespace csys
