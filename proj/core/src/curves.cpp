#include "windbid/curves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "windbid/errors.hpp"

namespace windbid {

namespace {

constexpr double kPriceCap = 4000.0;
constexpr double kPriceFloor = -4000.0;

struct Block {
  double volume;
  double price;
};

std::vector<Block> to_blocks(const BidCurve& curve) {
  std::vector<Block> out;
  out.reserve(curve.points.size());
  double prev = 0.0;
  for (const CurvePoint& p : curve.points) {
    out.push_back({p.cum_volume - prev, p.price});
    prev = p.cum_volume;
  }
  return out;
}

}  // namespace

double BidCurve::price_at(double q) const {
  if (points.empty() || q <= 0.0 || q > total_volume()) {
    throw std::invalid_argument("BidCurve::price_at: quantity outside (0, total]");
  }
  for (const CurvePoint& p : points) {
    if (q <= p.cum_volume) return p.price;
  }
  return points.back().price;
}

void BidCurve::validate(CurveSide side) const {
  double prev_vol = 0.0;
  bool first = true;
  double prev_price = 0.0;
  for (const CurvePoint& p : points) {
    if (!std::isfinite(p.cum_volume) || !std::isfinite(p.price)) {
      throw std::invalid_argument("BidCurve: non-finite entry");
    }
    if (p.cum_volume <= prev_vol) {
      throw std::invalid_argument("BidCurve: cumulative volumes must be strictly increasing");
    }
    if (!first) {
      if (side == CurveSide::kSupply && p.price < prev_price) {
        throw std::invalid_argument("BidCurve: supply prices must be non-decreasing");
      }
      if (side == CurveSide::kDemand && p.price > prev_price) {
        throw std::invalid_argument("BidCurve: demand prices must be non-increasing");
      }
    }
    prev_vol = p.cum_volume;
    prev_price = p.price;
    first = false;
  }
}

ClearingResult clear_day_ahead(double wpp_bid_volume, const BidCurve& supply,
                               const BidCurve& demand) {
  if (!(wpp_bid_volume >= 0.0) || !std::isfinite(wpp_bid_volume)) {
    throw std::invalid_argument("clear_day_ahead: bid volume must be >= 0");
  }
  supply.validate(CurveSide::kSupply);
  demand.validate(CurveSide::kDemand);
  if (demand.points.empty()) {
    throw std::invalid_argument("clear_day_ahead: empty demand curve");
  }

  // Offer stack with the wind bid inserted at price 0.
  std::vector<Block> offers = to_blocks(supply);
  if (wpp_bid_volume > 0.0) {
    auto pos = std::find_if(offers.begin(), offers.end(),
                            [](const Block& b) { return b.price > 0.0; });
    offers.insert(pos, Block{wpp_bid_volume, 0.0});
  }
  const std::vector<Block> bids = to_blocks(demand);

  if (offers.empty()) {
    throw ClearingError("clear_day_ahead: empty supply stack", 0.0,
                        demand.total_volume());
  }

  // Merit-order sweep. Trades proceed while the highest unserved bid
  // meets the cheapest unused offer.
  std::size_t si = 0, di = 0;
  double s_rem = offers[0].volume;
  double d_rem = bids[0].volume;
  double traded = 0.0;
  bool s_break = false;  // supply block boundary exactly at the stop
  bool d_break = false;
  double s_last = offers[0].price;
  double d_last = bids[0].price;
  bool any_trade = false;

  while (true) {
    if (di >= bids.size()) {  // demand fully served
      d_break = true;
      break;
    }
    if (si >= offers.size()) {
      if (bids[di].price >= s_last || !any_trade) {
        throw ClearingError("clear_day_ahead: demand exhausts supply",
                            traded, demand.total_volume());
      }
      s_break = true;
      break;
    }
    if (bids[di].price < offers[si].price) break;  // curves crossed
    const double step = std::min(s_rem, d_rem);
    traded += step;
    any_trade = true;
    s_last = offers[si].price;
    d_last = bids[di].price;
    s_rem -= step;
    d_rem -= step;
    s_break = false;
    d_break = false;
    if (s_rem <= 0.0) {
      ++si;
      s_break = true;
      if (si < offers.size()) s_rem = offers[si].volume;
    }
    if (d_rem <= 0.0) {
      ++di;
      d_break = true;
      if (di < bids.size()) d_rem = bids[di].volume;
    }
  }

  double price;
  if (!any_trade) {
    // No bid meets any offer; price settles between the best of each side.
    price = 0.5 * (bids[0].price + offers[0].price);
  } else if (s_break && !d_break) {
    // Supply steps up across the stop, demand block continues: the
    // demand side is marginal.
    price = d_last;
  } else if (d_break && !s_break) {
    price = s_last;
  } else {
    // Both curves break exactly at the stop; any price between the last
    // accepted and first rejected levels clears. Take the midpoint.
    const double s_next = si < offers.size() ? offers[si].price : kPriceCap;
    const double d_next = di < bids.size() ? bids[di].price : kPriceFloor;
    const double lo = std::max(s_last, d_next);
    const double hi = std::min(s_next, d_last);
    price = 0.5 * (lo + hi);
  }
  price = std::clamp(price, kPriceFloor, kPriceCap);

  // Wind dispatch: fully in merit above 0, pro-rata at the 0 tier,
  // rejected below 0.
  double dispatch = 0.0;
  if (wpp_bid_volume > 0.0) {
    if (price > 0.0) {
      dispatch = wpp_bid_volume;
    } else if (price == 0.0) {
      double below = 0.0, tier = 0.0;
      for (const Block& b : offers) {
        if (b.price < 0.0) below += b.volume;
        if (b.price == 0.0) tier += b.volume;
      }
      const double tier_accept = std::clamp(traded - below, 0.0, tier);
      dispatch = tier > 0.0 ? wpp_bid_volume * (tier_accept / tier) : 0.0;
    }
  }

  return ClearingResult{price, traded, dispatch};
}

}  // namespace windbid
