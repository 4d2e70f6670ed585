#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpdkit {

/// Outcome of a single named check. `auto_pass_finite` marks hypotheses of
/// the theory (properness, openness of source maps, USC topology) that hold
/// for every finite discrete model and are recorded rather than computed.
enum class CheckStatus { pass, fail, auto_pass_finite, skipped };

const char* to_string(CheckStatus s);

struct CheckResult {
  std::string check;
  CheckStatus status = CheckStatus::pass;
  std::vector<long long> witness;  // element ids; empty unless status == fail
  std::string note;
  long long count = 0;  // tuples enumerated
};

class ValidationReport {
 public:
  void add(CheckResult r) { checks_.push_back(std::move(r)); }

  void add_pass(std::string check, long long count = 0) {
    add({std::move(check), CheckStatus::pass, {}, {}, count});
  }
  void add_fail(std::string check, std::vector<long long> witness,
                std::string note = {}, long long count = 0) {
    add({std::move(check), CheckStatus::fail, std::move(witness),
         std::move(note), count});
  }
  void add_auto(std::string check, std::string note = "finite discrete") {
    add({std::move(check), CheckStatus::auto_pass_finite, {}, std::move(note), 0});
  }
  void add_skipped(std::string check, std::string note = {}) {
    add({std::move(check), CheckStatus::skipped, {}, std::move(note), 0});
  }

  bool ok() const {
    for (const auto& c : checks_)
      if (c.status == CheckStatus::fail) return false;
    return true;
  }

  const CheckResult* find(const std::string& check) const {
    for (const auto& c : checks_)
      if (c.check == check) return &c;
    return nullptr;
  }

  const CheckResult* first_failure() const {
    for (const auto& c : checks_)
      if (c.status == CheckStatus::fail) return &c;
    return nullptr;
  }

  void merge(const ValidationReport& other) {
    for (const auto& c : other.checks_) checks_.push_back(c);
  }

  /// Prefix every check id, e.g. "left." for the left half of a pair.
  void merge_prefixed(const ValidationReport& other, const std::string& prefix) {
    for (auto c : other.checks_) {
      c.check = prefix + c.check;
      checks_.push_back(std::move(c));
    }
  }

  const std::vector<CheckResult>& checks() const { return checks_; }

 private:
  std::vector<CheckResult> checks_;
};

/// Ill-formed tables (ids out of range, missing entries, shape mismatches).
/// Distinct from groupoid-law violations, which are reported, not thrown.
class StructureError : public std::runtime_error {
 public:
  explicit StructureError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gpdkit
