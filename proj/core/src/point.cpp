#include "windbid/point.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace windbid {

namespace {

void check_unit(double v, std::size_t i) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    throw std::invalid_argument("Point coordinate " + std::to_string(i) +
                                " outside [0,1]: " + std::to_string(v));
  }
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("Point must have dimension >= 1");
  for (std::size_t i = 0; i < coords_.size(); ++i) check_unit(coords_[i], i);
}

Point::Point(double bid, std::span<const double> context) {
  coords_.reserve(1 + context.size());
  coords_.push_back(bid);
  coords_.insert(coords_.end(), context.begin(), context.end());
  for (std::size_t i = 0; i < coords_.size(); ++i) check_unit(coords_[i], i);
}

Point Point::splat(double value, std::size_t dim) {
  return Point(std::vector<double>(dim, value));
}

double metric_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size() || p.empty()) {
    throw std::invalid_argument("metric_distance: dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = p[i] - q[i];
    s += d * d;
  }
  return std::sqrt(s / static_cast<double>(p.size()));
}

double metric_distance(const Point& p, const Point& q) {
  return metric_distance(p.coords(), q.coords());
}

}  // namespace windbid
