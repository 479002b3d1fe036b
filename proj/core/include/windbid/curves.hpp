#pragma once

#include <vector>

namespace windbid {

/// One breakpoint of a step curve: cumulative volume up to and including
/// this block, and the block's price.
struct CurvePoint {
  double cum_volume = 0.0;  // MWh, strictly increasing along the curve
  double price = 0.0;       // EUR/MWh
};

enum class CurveSide { kSupply, kDemand };

/// Monotone piecewise-constant price-volume curve for one hourly auction.
/// Supply prices are non-decreasing in volume, demand non-increasing.
struct BidCurve {
  std::vector<CurvePoint> points;

  double total_volume() const { return points.empty() ? 0.0 : points.back().cum_volume; }
  /// Price of the block covering quantity q, with blocks spanning
  /// (prev_cum, cum]. q must lie in (0, total_volume].
  double price_at(double q) const;
  /// Throws std::invalid_argument when the monotonicity invariants fail.
  void validate(CurveSide side) const;
};

/// Outcome of one day-ahead auction clearing.
struct ClearingResult {
  double spot_price = 0.0;     // EUR/MWh
  double cleared_volume = 0.0; // MWh traded in total
  double wpp_dispatch = 0.0;   // MWh awarded to the zero-price wind bid
};

/// Clears the hourly auction formed by `supply` (all other participants),
/// `demand`, and a wind bid of `wpp_bid_volume` MWh offered at price 0.
///
/// The price is read off the intersection of the two step curves. The
/// wind offer clears fully when the price is positive, pro-rata with the
/// other price-0 offers when the marginal tier is exactly 0, and not at
/// all when the price is negative. Throws ClearingError when demand
/// outlasts the full supply stack.
ClearingResult clear_day_ahead(double wpp_bid_volume, const BidCurve& supply,
                               const BidCurve& demand);

}  // namespace windbid
