#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace csys {

struct Violation {
  std::string law;
  std::string witness;
};

// Result of one law check. Violations are data, never exceptions.
class LawReport {
 public:
  static constexpr size_t kKeptViolations = 8;

  LawReport() = default;
  explicit LawReport(std::string check) : check_(std::move(check)) {}

  const std::string& check() const { return check_; }
  bool ok() const { return violation_count_ == 0; }
  uint64_t instances() const { return instances_; }
  uint64_t violation_count() const { return violation_count_; }
  const std::vector<Violation>& violations() const { return violations_; }
  const std::vector<std::string>& notes() const { return notes_; }

  // Records one checked instance; `witness` is only evaluated on failure.
  template <class W>
  bool expect(bool holds, const char* law, W&& witness) {
    ++instances_;
    if (!holds) fail(law, witness());
    return holds;
  }

  void fail(const std::string& law, const std::string& witness);
  void count(uint64_t n = 1) { instances_ += n; }
  void note(std::string s) { notes_.push_back(std::move(s)); }
  void merge(const LawReport& other);
  // As merge, with each law name prefixed by "prefix/".
  void merge(const LawReport& other, const std::string& prefix);

  // First violation as "law: witness", or empty.
  std::string first_witness() const;
  std::string summary() const;

 private:
  std::string check_;
  uint64_t instances_ = 0;
  uint64_t violation_count_ = 0;
  std::vector<Violation> violations_;
  std::vector<std::string> notes_;
};

}  // namespace csys
