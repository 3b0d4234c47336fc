#pragma once

#include <memory>
#include <mutex>
#include <unordered_map>

#include "csys/category.hpp"

namespace csys {

class Functor {
 public:
  Functor(const Category& source, const Category& target) : source_(source), target_(target) {}
  virtual ~Functor() = default;
  const Category& source() const { return source_; }
  const Category& target() const { return target_; }
  virtual ObjId on_object(ObjId X) const = 0;
  virtual MorId on_morphism(MorId f) const = 0;

 private:
  const Category& source_;
  const Category& target_;
};

class IdentityFunctor : public Functor {
 public:
  explicit IdentityFunctor(const Category& C) : Functor(C, C) {}
  ObjId on_object(ObjId X) const override { return X; }
  MorId on_morphism(MorId f) const override { return f; }
};

class ConstantFunctor : public Functor {
 public:
  ConstantFunctor(const Category& s, const Category& t, ObjId value) : Functor(s, t), value_(value) {}
  ObjId on_object(ObjId) const override { return value_; }
  MorId on_morphism(MorId) const override { return target().identity(value_); }

 private:
  ObjId value_;
};

// first, then second
class ComposedFunctor : public Functor {
 public:
  ComposedFunctor(const Functor& first, const Functor& second)
      : Functor(first.source(), second.target()), a_(first), b_(second) {}
  ObjId on_object(ObjId X) const override { return b_.on_object(a_.on_object(X)); }
  MorId on_morphism(MorId f) const override { return b_.on_morphism(a_.on_morphism(f)); }

 private:
  const Functor& a_;
  const Functor& b_;
};

class TableFunctor : public Functor {
 public:
  using Functor::Functor;
  void set_object(ObjId X, ObjId Y) { objs_[X] = Y; }
  void set_morphism(MorId f, MorId g) { mors_[f] = g; }
  ObjId on_object(ObjId X) const override;
  MorId on_morphism(MorId f) const override;

 private:
  std::unordered_map<ObjId, ObjId> objs_;
  std::unordered_map<MorId, MorId> mors_;
};

// Identity, composition and dom/cod preservation over the morphisms among
// `scope` (default: source().objects()).
LawReport check_functor(const Functor& F, const std::vector<ObjId>* scope = nullptr);

class NatTrans {
 public:
  NatTrans(const Functor& source, const Functor& target) : source_(source), target_(target) {}
  virtual ~NatTrans() = default;
  const Functor& source() const { return source_; }
  const Functor& target() const { return target_; }
  virtual MorId component(ObjId X) const = 0;

 private:
  const Functor& source_;
  const Functor& target_;
};

class IdentityNatTrans : public NatTrans {
 public:
  explicit IdentityNatTrans(const Functor& F) : NatTrans(F, F) {}
  MorId component(ObjId X) const override { return source().target().identity(source().on_object(X)); }
};

class TableNatTrans : public NatTrans {
 public:
  using NatTrans::NatTrans;
  void set(ObjId X, MorId m) { comps_[X] = m; }
  MorId component(ObjId X) const override;

 private:
  std::unordered_map<ObjId, MorId> comps_;
};

// Componentwise inverse, computed on demand. A component without inverse
// raises StructureError naming the object.
class InverseNatTrans : public NatTrans {
 public:
  explicit InverseNatTrans(const NatTrans& t) : NatTrans(t.target(), t.source()), t_(t) {}
  MorId component(ObjId X) const override;

 private:
  const NatTrans& t_;
  mutable std::mutex mu_;
  mutable std::unordered_map<ObjId, MorId> cache_;
};

std::unique_ptr<NatTrans> nat_iso_inverse(const NatTrans& t);

// Naturality squares and component endpoints.
LawReport check_nat_trans(const NatTrans& t, const std::vector<ObjId>* scope = nullptr);
// t then s, and s then t, are identities componentwise.
LawReport check_nat_inverse(const NatTrans& t, const NatTrans& s, const std::vector<ObjId>* scope = nullptr);

}  // namespace csys
