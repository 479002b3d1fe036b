#pragma once

#include "windbid/curves.hpp"

namespace windbid {

/// Exogenous truth for one hourly auction pair. The supply curve excludes
/// the wind producer's own historical (reference) bid; clearing re-inserts
/// whichever bid a strategy chooses.
struct MarketState {
  BidCurve supply;
  BidCurve demand;
  double generation = 0.0;            // realized wind output g, MWh
  double reference_forecast = 0.0;    // historical day-ahead forecast, MWh
  double base_spot_price = 0.0;       // spot at the reference bid, EUR/MWh
  double base_imbalance_price = 0.0;  // EUR/MWh
  double imbalance_sensitivity = 0.0; // EUR/MWh per MWh of extra imbalance
  double base_system_imbalance = 0.0; // MWh, includes the reference imbalance
  double reference_imbalance = 0.0;   // g minus the reference dispatch, MWh
  double spot_sensitivity = 0.0;      // d(spot)/d(bid volume), EUR/MWh per MWh
};

/// Market and generation outcome z for one auction.
struct MarketOutcome {
  double spot_price = 0.0;
  double dispatch = 0.0;
  double imbalance_price = 0.0;
  double generation = 0.0;
  double revenue = 0.0;  // spot*dispatch + imbalance*(generation - dispatch)
};

/// Imbalance price after the producer deviates from the imbalance that is
/// already embedded in the base record:
///   base_imbalance_price + sensitivity * (imbalance - reference_imbalance).
/// Exactly affine; no clamping here.
double settle_real_time(double wpp_imbalance, const MarketState& state);

/// Two-stage revenue: spot*dispatch + imbalance_price*(generation - dispatch).
double revenue(double spot_price, double dispatch, double imbalance_price,
               double generation);

/// Clear the day-ahead auction for `wpp_bid_volume`, settle the resulting
/// imbalance, and collect the outcome. Prices are clamped to +-4000.
MarketOutcome simulate_round(double wpp_bid_volume, const MarketState& state);

}  // namespace windbid
