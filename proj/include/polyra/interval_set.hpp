#pragma once

#include <vector>

namespace polyra {

struct Interval {
  double lo;  // may be -inf
  double hi;  // may be +inf
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Sorted, pairwise disjoint closed intervals with strict gaps between them.
class IntervalSet {
 public:
  IntervalSet() = default;
  // Normalizes: drops empty intervals, sorts, merges overlapping or touching ones.
  explicit IntervalSet(std::vector<Interval> intervals);

  static IntervalSet everything();
  static IntervalSet at_most(double hi);
  static IntervalSet at_least(double lo);

  const std::vector<Interval>& intervals() const { return intervals_; }
  std::size_t size() const { return intervals_.size(); }
  bool empty() const { return intervals_.empty(); }
  bool contains(double x) const;
  double total_length() const;

  IntervalSet unite(const IntervalSet& other) const;
  IntervalSet intersect(const IntervalSet& other) const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> intervals_;
};

}  // namespace polyra
