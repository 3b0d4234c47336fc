#include "csys/report.hpp"

#include <algorithm>

namespace csys {

void LawReport::fail(const std::string& law, const std::string& witness) {
  ++violation_count_;
  if (violations_.size() < kKeptViolations) violations_.push_back({law, witness});
}

void LawReport::merge(const LawReport& other) {
  instances_ += other.instances_;
  violation_count_ += other.violation_count_;
  for (const auto& v : other.violations_) {
    if (violations_.size() >= kKeptViolations) break;
    violations_.push_back(v);
  }
  for (const auto& n : other.notes_)
    if (std::find(notes_.begin(), notes_.end(), n) == notes_.end()) notes_.push_back(n);
}

void LawReport::merge(const LawReport& other, const std::string& prefix) {
  instances_ += other.instances_;
  violation_count_ += other.violation_count_;
  for (const auto& v : other.violations_) {
    if (violations_.size() >= kKeptViolations) break;
    violations_.push_back({prefix + "/" + v.law, v.witness});
  }
  for (const auto& n : other.notes_)
    if (std::find(notes_.begin(), notes_.end(), n) == notes_.end()) notes_.push_back(n);
}

std::string LawReport::first_witness() const {
  if (violations_.empty()) return {};
  return violations_.front().law + ": " + violations_.front().witness;
}

std::string LawReport::summary() const {
  std::string s = check_ + (ok() ? " ok" : " FAILED") + " (" + std::to_string(instances_) + " instances";
  if (!ok()) s += ", " + std::to_string(violation_count_) + " violations; first " + first_witness();
  return s + ")";
}

}  // namespace csys
