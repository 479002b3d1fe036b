#pragma once

#include <vector>

namespace windbid {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/// A finite union of disjoint closed intervals on the real line, kept
/// sorted. Subtraction removes a closed interval; the zero-measure
/// boundary points left behind are pruned, so the set tracks the true
/// difference up to sets of measure zero.
class IntervalSet {
 public:
  IntervalSet() = default;
  IntervalSet(double lo, double hi);

  void subtract(double lo, double hi);

  bool empty() const { return parts_.empty(); }
  double total_length() const;
  bool contains(double x) const;

  /// Maps u in [0,1) to a point, uniformly w.r.t. length.
  double sample(double u) const;

  const std::vector<Interval>& parts() const { return parts_; }

 private:
  std::vector<Interval> parts_;
};

}  // namespace windbid
