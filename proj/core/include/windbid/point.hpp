#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace windbid {

/// A point in the unit bid-context hypercube [0,1]^d. Coordinate 0 is the
/// normalized bid volume; the remaining d-1 coordinates are the context.
class Point {
 public:
  Point() = default;
  /// Throws std::invalid_argument if any coordinate is non-finite or
  /// outside [0,1].
  explicit Point(std::vector<double> coords);
  Point(double bid, std::span<const double> context);

  static Point splat(double value, std::size_t dim);

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double bid() const { return coords_[0]; }
  std::span<const double> coords() const { return coords_; }
  std::span<const double> context() const {
    return std::span<const double>(coords_).subspan(1);
  }

  bool operator==(const Point&) const = default;

 private:
  std::vector<double> coords_;
};

/// Scaled Euclidean distance ||p - q||_2 / sqrt(d). The unit hypercube has
/// diameter exactly 1 under this metric. Throws std::invalid_argument on
/// dimension mismatch.
double metric_distance(std::span<const double> p, std::span<const double> q);
double metric_distance(const Point& p, const Point& q);

}  // namespace windbid
