#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace csys {

// Opaque interned ids. Equality is id equality.
template <class Tag>
struct Id {
  uint32_t v = UINT32_MAX;
  constexpr Id() = default;
  constexpr explicit Id(uint32_t x) : v(x) {}
  constexpr bool valid() const { return v != UINT32_MAX; }
  friend constexpr bool operator==(Id a, Id b) { return a.v == b.v; }
  friend constexpr bool operator!=(Id a, Id b) { return a.v != b.v; }
  friend constexpr bool operator<(Id a, Id b) { return a.v < b.v; }
};

struct ObjTag {};
struct MorTag {};
using ObjId = Id<ObjTag>;
using MorId = Id<MorTag>;

// Structured value used for presheaf elements, carrier labels and recipes.
// Every node is encoded as [kind, payload length, payload...] in one flat
// vector, so lexicographic comparison of the vectors is a total order.
class Term {
 public:
  enum Kind : int32_t { kMor = 1, kObj = 2, kInt = 3, kPair = 4, kSeq = 5 };

  Term() = default;

  static Term mor(MorId m) { return atom(kMor, static_cast<int32_t>(m.v)); }
  static Term obj(ObjId o) { return atom(kObj, static_cast<int32_t>(o.v)); }
  static Term integer(int32_t i) { return atom(kInt, i); }
  static Term pair(const Term& a, const Term& b);
  static Term seq(const std::vector<Term>& items);

  bool empty() const { return data_.empty(); }
  Kind kind() const { return static_cast<Kind>(data_.at(0)); }
  bool is_pair() const { return !empty() && kind() == kPair; }

  // Atom accessors; throw std::logic_error on kind mismatch.
  MorId as_mor() const;
  ObjId as_obj() const;
  int32_t as_int() const;

  Term first() const;
  Term second() const;
  std::vector<Term> items() const;

  const std::vector<int32_t>& raw() const { return data_; }
  std::string str() const;

  friend bool operator==(const Term& a, const Term& b) { return a.data_ == b.data_; }
  friend bool operator!=(const Term& a, const Term& b) { return a.data_ != b.data_; }
  friend bool operator<(const Term& a, const Term& b) { return a.data_ < b.data_; }

  size_t hash() const;

 private:
  static Term atom(Kind k, int32_t v) {
    Term t;
    t.data_ = {k, 1, v};
    return t;
  }
  Term sub(size_t pos) const;
  static void append_str(const int32_t* p, std::string& out);

  std::vector<int32_t> data_;
};

struct TermHash {
  size_t operator()(const Term& t) const { return t.hash(); }
};

inline uint64_t pack(uint32_t a, uint32_t b) { return (static_cast<uint64_t>(a) << 32) | b; }

}  // namespace csys

template <class Tag>
struct std::hash<csys::Id<Tag>> {
  size_t operator()(csys::Id<Tag> i) const noexcept { return std::hash<uint32_t>{}(i.v); }
};
