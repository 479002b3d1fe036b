#include "windbid/interval_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace windbid {

namespace {
constexpr double kMinWidth = 0.0;  // degenerate pieces are dropped
}

IntervalSet::IntervalSet(double lo, double hi) {
  if (hi > lo) parts_.push_back({lo, hi});
}

void IntervalSet::subtract(double lo, double hi) {
  if (hi < lo || parts_.empty()) return;
  std::vector<Interval> out;
  out.reserve(parts_.size() + 1);
  for (const Interval& p : parts_) {
    if (hi <= p.lo || lo >= p.hi) {  // no overlap beyond a boundary point
      if (p.hi - p.lo > kMinWidth) out.push_back(p);
      continue;
    }
    if (p.lo < lo) out.push_back({p.lo, std::min(lo, p.hi)});
    if (p.hi > hi) out.push_back({std::max(hi, p.lo), p.hi});
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const Interval& q) { return q.hi - q.lo <= kMinWidth; }),
            out.end());
  parts_ = std::move(out);
}

double IntervalSet::total_length() const {
  double s = 0.0;
  for (const Interval& p : parts_) s += p.length();
  return s;
}

bool IntervalSet::contains(double x) const {
  for (const Interval& p : parts_) {
    if (x < p.lo) return false;
    if (x <= p.hi) return true;
  }
  return false;
}

double IntervalSet::sample(double u) const {
  if (parts_.empty()) throw std::logic_error("IntervalSet::sample on empty set");
  const double target = u * total_length();
  double acc = 0.0;
  for (const Interval& p : parts_) {
    if (target <= acc + p.length()) return p.lo + (target - acc);
    acc += p.length();
  }
  return parts_.back().hi;
}

}  // namespace windbid
