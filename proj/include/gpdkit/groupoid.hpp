#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gpdkit/validation.hpp"

namespace gpdkit {

using ElemId = int;

/// A finite groupoid given by tables: a dense element set {0..n-1}, a unit
/// subset, total source/range/inverse maps, and a partial multiplication
/// defined exactly on composable pairs. Immutable after construction; all
/// accessors are O(1).
class FiniteGroupoid {
 public:
  FiniteGroupoid() = default;

  int size() const { return static_cast<int>(src_.size()); }
  bool is_unit(ElemId e) const { return is_unit_[e]; }
  const std::vector<ElemId>& units() const { return units_; }

  ElemId src(ElemId e) const { return src_[e]; }
  ElemId rng(ElemId e) const { return rng_[e]; }
  ElemId inv(ElemId e) const { return inv_[e]; }

  bool composable(ElemId a, ElemId b) const { return src_[a] == rng_[b]; }

  /// Partial multiplication; disengaged when the pair has no table entry.
  std::optional<ElemId> mul(ElemId a, ElemId b) const {
    auto it = mul_.find(key(a, b));
    if (it == mul_.end()) return std::nullopt;
    return it->second;
  }

  /// Multiplication that must succeed; throws StructureError otherwise.
  ElemId mul_req(ElemId a, ElemId b) const;

  /// Product of several elements, left to right.
  ElemId mul_req(std::initializer_list<ElemId> chain) const;

  const std::string& label(ElemId e) const { return labels_[e]; }
  std::optional<ElemId> find_label(const std::string& lbl) const;

  /// Arrows with range u (the fiber X^u) in ascending id order.
  const std::vector<ElemId>& arrows_into(ElemId u) const;
  /// Arrows with source u (the fiber X_u) in ascending id order.
  const std::vector<ElemId>& arrows_out_of(ElemId u) const;

  long long mul_table_size() const { return static_cast<long long>(mul_.size()); }

  friend class GroupoidBuilder;

 private:
  int64_t key(ElemId a, ElemId b) const {
    return static_cast<int64_t>(a) * size() + b;
  }

  std::vector<ElemId> src_, rng_, inv_;
  std::vector<bool> is_unit_;
  std::vector<ElemId> units_;
  std::unordered_map<int64_t, ElemId> mul_;
  std::vector<std::string> labels_;
  std::vector<std::vector<ElemId>> into_, out_of_;  // indexed by element id, empty for non-units
};

using GpdPtr = std::shared_ptr<const FiniteGroupoid>;

/// Accumulates tables and performs the structural (not law-level) checks:
/// ids in range, no redefinitions, totality of src/rng/inv, units flagged.
class GroupoidBuilder {
 public:
  explicit GroupoidBuilder(int n);

  GroupoidBuilder& label(ElemId e, std::string lbl);
  GroupoidBuilder& unit(ElemId u);
  GroupoidBuilder& src(ElemId e, ElemId u);
  GroupoidBuilder& rng(ElemId e, ElemId u);
  GroupoidBuilder& inv(ElemId e, ElemId f);
  GroupoidBuilder& mul(ElemId a, ElemId b, ElemId c);

  /// For an element already known to be a unit: src = rng = inv = self.
  GroupoidBuilder& self_unit(ElemId u) {
    unit(u); src(u, u); rng(u, u); inv(u, u);
    return *this;
  }

  GpdPtr build();

 private:
  void check_id(ElemId e, const char* what) const;

  int n_;
  std::vector<ElemId> src_, rng_, inv_;
  std::vector<bool> is_unit_;
  std::unordered_map<int64_t, ElemId> mul_;
  std::vector<std::string> labels_;
};

/// Checks every groupoid law by enumeration. Each violated law is reported
/// once with the lexicographically minimal witness tuple.
ValidationReport validate_groupoid(const FiniteGroupoid& g);

/// Like validate_groupoid, but composable pairs listed in `excluded` may lack
/// a product without being reported (degree-truncated objects declare their
/// missing compositions up front).
ValidationReport validate_groupoid_partial(
    const FiniteGroupoid& g,
    const std::vector<std::pair<ElemId, ElemId>>& excluded);

}  // namespace gpdkit
