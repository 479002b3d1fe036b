#include "windbid/market.hpp"

#include <algorithm>

namespace windbid {

namespace {
constexpr double kPriceCap = 4000.0;
}

double settle_real_time(double wpp_imbalance, const MarketState& state) {
  const double delta = wpp_imbalance - state.reference_imbalance;
  return state.base_imbalance_price + state.imbalance_sensitivity * delta;
}

double revenue(double spot_price, double dispatch, double imbalance_price,
               double generation) {
  return spot_price * dispatch + imbalance_price * (generation - dispatch);
}

MarketOutcome simulate_round(double wpp_bid_volume, const MarketState& state) {
  const ClearingResult da = clear_day_ahead(wpp_bid_volume, state.supply, state.demand);
  MarketOutcome out;
  out.spot_price = da.spot_price;  // already clamped by the clearing
  out.dispatch = da.wpp_dispatch;
  out.generation = state.generation;
  const double imbalance = state.generation - out.dispatch;
  out.imbalance_price =
      std::clamp(settle_real_time(imbalance, state), -kPriceCap, kPriceCap);
  out.revenue = revenue(out.spot_price, out.dispatch, out.imbalance_price,
                        out.generation);
  return out;
}

}  // namespace windbid
