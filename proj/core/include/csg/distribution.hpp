#pragma once

#include <utility>
#include <vector>

#include "csg/rational.hpp"

namespace csg {

/// Probability distribution over integer-identified outcomes (states or
/// actions). Entries are sorted by outcome id and strictly positive; a valid
/// distribution sums to exactly 1. Loaders may build unchecked instances so
/// that validation can report bad sums as data instead of failing.
class Distribution {
 public:
  using Entry = std::pair<int, Rational>;

  Distribution() = default;

  static Distribution pure(int outcome);
  /// U(a, b): the two-point uniform; collapses to pure when a == b.
  static Distribution two_point_uniform(int a, int b);
  /// Sorts, merges duplicate ids, drops exact zeros, and requires the result
  /// to be a probability distribution.
  static Distribution make(std::vector<Entry> entries);
  /// Same normalization but no positivity/sum requirement.
  static Distribution make_unchecked(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }
  Rational prob(int outcome) const;
  Rational sum() const;
  bool is_valid() const;
  bool is_pure() const { return entries_.size() == 1 && entries_[0].second == Rational(1); }
  int pure_outcome() const;

  /// Inverse of the smallest probability in the support.
  Rational patience() const;
  /// Greatest denominator across the support (lowest-terms representation).
  Integer roundedness() const;

  friend bool operator==(const Distribution& a, const Distribution& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<Entry> entries_;
};

/// Half L1 distance between two distributions over the same outcome universe.
Rational variation_distance(const Distribution& a, const Distribution& b);

}  // namespace csg
