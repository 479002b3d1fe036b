#pragma once

#include <cstdint>

#include "windbid/market.hpp"
#include "windbid/rng.hpp"

namespace windbid {

/// Knobs for the seeded synthetic market. Every driver follows a
/// stationary AR(1) with Gaussian innovations; curves are rebuilt each
/// hour around the drifting operating point.
struct SyntheticConfig {
  std::int64_t horizon = 15252;

  // Wind producer.
  double capacity = 20000.0;             // MW installed
  double mean_generation_fraction = 0.35;
  double generation_ar = 0.97;
  double generation_noise = 0.03;        // innovation std, capacity fraction
  double forecast_error_std = 400.0;     // MWh, day-ahead forecast error

  // Day-ahead price level.
  double mean_spot = 50.0;               // EUR/MWh
  double spot_ar = 0.9;
  double spot_noise = 4.0;               // EUR innovation std

  // Aggregated curves. The sloped ladder spans `ladder_span` MWh around
  // the operating point so a shifted bid moves the price by roughly
  // supply_slope EUR/MWh per MWh.
  double demand_base = 50000.0;          // MWh served by other suppliers
  double supply_slope = 5e-4;
  double ladder_span = 4000.0;
  int ladder_blocks = 16;
  double price_jitter = 0.2;             // EUR, uniform on ladder prices
  double demand_cap_price = 3000.0;

  // Real-time market.
  double imbalance_spread_mean = 0.0;    // EUR over the spot target
  double imbalance_spread_ar = 0.8;
  double imbalance_spread_noise = 8.0;
  double eta_i_mean = -0.03;             // EUR/MWh per MWh
  double eta_i_ar = 0.95;
  double eta_i_noise = 0.004;
  double eta_i_max = -0.001;             // settlement slope stays negative
  double system_imbalance_ar = 0.7;
  double system_imbalance_noise = 600.0; // MWh, non-wind imbalance

  double sensitivity_probe = 250.0;      // MWh, finite-difference step

  void validate() const;  // throws ConfigError
};

/// Seeded, reproducible stream of MarketState. The same (config, seed)
/// pair always yields the same stream, and the conditional mean revenue
/// of any bid is estimable to arbitrary precision by resampling.
class GroundTruthGenerator {
 public:
  GroundTruthGenerator(SyntheticConfig config, std::uint64_t seed);

  MarketState next();
  const SyntheticConfig& config() const { return config_; }

 private:
  double step_ar(double& state, double mean, double ar, double noise);

  SyntheticConfig config_;
  Rng rng_;
  double gen_state_;
  double spot_state_;
  double spread_state_;
  double eta_i_state_;
  double sys_imb_state_;
};

}  // namespace windbid
