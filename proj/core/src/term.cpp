#include "csys/term.hpp"

#include <stdexcept>

namespace csys {

Term Term::pair(const Term& a, const Term& b) {
  Term t;
  t.data_.reserve(2 + a.data_.size() + b.data_.size());
  t.data_.push_back(kPair);
  t.data_.push_back(static_cast<int32_t>(a.data_.size() + b.data_.size()));
  t.data_.insert(t.data_.end(), a.data_.begin(), a.data_.end());
  t.data_.insert(t.data_.end(), b.data_.begin(), b.data_.end());
  return t;
}

Term Term::seq(const std::vector<Term>& items) {
  size_t n = 0;
  for (const auto& i : items) n += i.data_.size();
  Term t;
  t.data_.reserve(2 + n);
  t.data_.push_back(kSeq);
  t.data_.push_back(static_cast<int32_t>(n));
  for (const auto& i : items) t.data_.insert(t.data_.end(), i.data_.begin(), i.data_.end());
  return t;
}

MorId Term::as_mor() const {
  if (empty() || kind() != kMor) throw std::logic_error("term is not a morphism: " + str());
  return MorId(static_cast<uint32_t>(data_[2]));
}

ObjId Term::as_obj() const {
  if (empty() || kind() != kObj) throw std::logic_error("term is not an object: " + str());
  return ObjId(static_cast<uint32_t>(data_[2]));
}

int32_t Term::as_int() const {
  if (empty() || kind() != kInt) throw std::logic_error("term is not an integer: " + str());
  return data_[2];
}

Term Term::sub(size_t pos) const {
  size_t len = 2 + static_cast<size_t>(data_.at(pos + 1));
  Term t;
  t.data_.assign(data_.begin() + static_cast<long>(pos), data_.begin() + static_cast<long>(pos + len));
  return t;
}

Term Term::first() const {
  if (!is_pair()) throw std::logic_error("term is not a pair: " + str());
  return sub(2);
}

Term Term::second() const {
  if (!is_pair()) throw std::logic_error("term is not a pair: " + str());
  return sub(2 + 2 + static_cast<size_t>(data_[3]));
}

std::vector<Term> Term::items() const {
  if (empty() || kind() != kSeq) throw std::logic_error("term is not a sequence: " + str());
  std::vector<Term> out;
  size_t end = 2 + static_cast<size_t>(data_[1]);
  for (size_t pos = 2; pos < end; pos += 2 + static_cast<size_t>(data_[pos + 1])) out.push_back(sub(pos));
  return out;
}

void Term::append_str(const int32_t* p, std::string& out) {
  switch (p[0]) {
    case kMor: out += "m" + std::to_string(p[2]); return;
    case kObj: out += "o" + std::to_string(p[2]); return;
    case kInt: out += std::to_string(p[2]); return;
    case kPair: {
      out += '(';
      append_str(p + 2, out);
      out += ',';
      append_str(p + 2 + 2 + p[3], out);
      out += ')';
      return;
    }
    case kSeq: {
      out += '[';
      const int32_t* q = p + 2;
      const int32_t* end = p + 2 + p[1];
      bool firstItem = true;
      while (q < end) {
        if (!firstItem) out += ' ';
        firstItem = false;
        append_str(q, out);
        q += 2 + q[1];
      }
      out += ']';
      return;
    }
    default: out += '?';
  }
}

std::string Term::str() const {
  if (empty()) return "<empty>";
  std::string s;
  append_str(data_.data(), s);
  return s;
}

size_t Term::hash() const {
  // FNV-1a over the encoded words.
  uint64_t h = 1469598103934665603ull;
  for (int32_t w : data_) {
    h ^= static_cast<uint32_t>(w);
    h *= 1099511628211ull;
  }
  return static_cast<size_t>(h);
}

}  // namespace csys
