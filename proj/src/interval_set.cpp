#include "polyra/interval_set.hpp"

#include <algorithm>
#include <cmath>

namespace polyra {

IntervalSet::IntervalSet(std::vector<Interval> intervals) {
  std::erase_if(intervals, [](const Interval& i) { return !(i.lo <= i.hi); });
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& i : intervals) {
    if (!intervals_.empty() && i.lo <= intervals_.back().hi) {
      intervals_.back().hi = std::max(intervals_.back().hi, i.hi);
    } else {
      intervals_.push_back(i);
    }
  }
}

IntervalSet IntervalSet::everything() { return IntervalSet({{-INFINITY, INFINITY}}); }
IntervalSet IntervalSet::at_most(double hi) { return IntervalSet({{-INFINITY, hi}}); }
IntervalSet IntervalSet::at_least(double lo) { return IntervalSet({{lo, INFINITY}}); }

bool IntervalSet::contains(double x) const {
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), x,
                             [](double v, const Interval& i) { return v < i.lo; });
  if (it == intervals_.begin()) return false;
  return x <= std::prev(it)->hi;
}

double IntervalSet::total_length() const {
  double sum = 0.0;
  for (const auto& i : intervals_) sum += i.hi - i.lo;
  return sum;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> all = intervals_;
  all.insert(all.end(), other.intervals_.begin(), other.intervals_.end());
  return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<Interval> out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < intervals_.size() && j < other.intervals_.size()) {
    const Interval& a = intervals_[i];
    const Interval& b = other.intervals_[j];
    const double lo = std::max(a.lo, b.lo);
    const double hi = std::min(a.hi, b.hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (a.hi < b.hi) {
      ++i;
    } else {
      ++j;
    }
  }
  IntervalSet result;
  result.intervals_ = std::move(out);
  return result;
}

}  // namespace polyra
