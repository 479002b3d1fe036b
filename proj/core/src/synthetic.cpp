#include "windbid/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "windbid/errors.hpp"

namespace windbid {

namespace {

double round_cent(double price) { return std::round(price * 100.0) / 100.0; }

double stationary_init(Rng& rng, double mean, double ar, double noise) {
  if (noise == 0.0) return mean;
  std::normal_distribution<double> n01(0.0, 1.0);
  return mean + noise / std::sqrt(1.0 - ar * ar) * n01(rng);
}

}  // namespace

void SyntheticConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("synthetic config: ") + what);
  };
  require(horizon >= 1, "horizon must be >= 1");
  require(capacity > 0.0, "capacity must be > 0");
  require(mean_generation_fraction > 0.0 && mean_generation_fraction < 1.0,
          "mean_generation_fraction must be in (0,1)");
  for (double ar : {generation_ar, spot_ar, imbalance_spread_ar, eta_i_ar,
                    system_imbalance_ar}) {
    require(ar >= 0.0 && ar < 1.0, "AR coefficients must be in [0,1)");
  }
  for (double noise : {generation_noise, spot_noise, imbalance_spread_noise,
                       eta_i_noise, system_imbalance_noise, forecast_error_std,
                       price_jitter}) {
    require(noise >= 0.0, "noise scales must be >= 0");
  }
  require(demand_base > capacity, "demand_base must exceed capacity");
  require(supply_slope >= 0.0, "supply_slope must be >= 0");
  require(ladder_span > 0.0, "ladder_span must be > 0");
  require(ladder_blocks >= 1, "ladder_blocks must be >= 1");
  require(demand_cap_price > mean_spot, "demand_cap_price must exceed mean_spot");
  require(eta_i_max <= 0.0, "eta_i_max must be <= 0");
  require(sensitivity_probe > 0.0, "sensitivity_probe must be > 0");
}

GroundTruthGenerator::GroundTruthGenerator(SyntheticConfig config, std::uint64_t seed)
    : config_(config), rng_(derive_seed(seed, "ground-truth")) {
  config_.validate();
  gen_state_ = stationary_init(rng_, config_.mean_generation_fraction,
                               config_.generation_ar, config_.generation_noise);
  spot_state_ = stationary_init(rng_, config_.mean_spot, config_.spot_ar,
                                config_.spot_noise);
  spread_state_ = stationary_init(rng_, config_.imbalance_spread_mean,
                                  config_.imbalance_spread_ar,
                                  config_.imbalance_spread_noise);
  eta_i_state_ = stationary_init(rng_, config_.eta_i_mean, config_.eta_i_ar,
                                 config_.eta_i_noise);
  sys_imb_state_ = stationary_init(rng_, 0.0, config_.system_imbalance_ar,
                                   config_.system_imbalance_noise);
}

double GroundTruthGenerator::step_ar(double& state, double mean, double ar,
                                     double noise) {
  const double current = state;
  double innovation = 0.0;
  if (noise > 0.0) {
    std::normal_distribution<double> n01(0.0, 1.0);
    innovation = noise * n01(rng_);
  }
  state = mean + ar * (state - mean) + innovation;
  return current;
}

MarketState GroundTruthGenerator::next() {
  const SyntheticConfig& c = config_;
  MarketState s;

  const double gen_frac = std::clamp(
      step_ar(gen_state_, c.mean_generation_fraction, c.generation_ar,
              c.generation_noise),
      0.02, 0.98);
  s.generation = gen_frac * c.capacity;

  double forecast_err = 0.0;
  if (c.forecast_error_std > 0.0) {
    std::normal_distribution<double> n01(0.0, 1.0);
    forecast_err = c.forecast_error_std * n01(rng_);
  }
  s.reference_forecast = std::clamp(s.generation + forecast_err, 0.0, c.capacity);

  const double spot_target =
      step_ar(spot_state_, c.mean_spot, c.spot_ar, c.spot_noise);

  // Other participants' supply: a deep cheap block, a sloped ladder of
  // `ladder_blocks` steps around the operating point, and a peaker block.
  const double half_span = c.ladder_span / 2.0;
  const double ladder_lo = c.demand_base - half_span;
  const double block_width = c.ladder_span / c.ladder_blocks;
  std::uniform_real_distribution<double> jitter(-c.price_jitter, c.price_jitter);
  s.supply.points.clear();
  const double base_price =
      round_cent(spot_target - c.supply_slope * half_span - 30.0);
  s.supply.points.push_back({ladder_lo, std::max(-4000.0, base_price)});
  double prev_price = s.supply.points.back().price;
  for (int k = 0; k < c.ladder_blocks; ++k) {
    const double center = ladder_lo + (k + 0.5) * block_width;
    double price = spot_target + c.supply_slope * (center - c.demand_base);
    if (c.price_jitter > 0.0) price += jitter(rng_);
    price = std::max(round_cent(price), prev_price);
    s.supply.points.push_back({ladder_lo + (k + 1) * block_width, price});
    prev_price = price;
  }
  s.supply.points.push_back(
      {c.demand_base + half_span + 4000.0, round_cent(prev_price + 50.0)});

  // Demand: the other suppliers' load plus whatever the wind producer
  // historically served, inelastic at the cap, plus an inert cheap tail.
  const double demand_volume = c.demand_base + s.reference_forecast;
  s.demand.points.clear();
  s.demand.points.push_back({demand_volume, c.demand_cap_price});
  s.demand.points.push_back(
      {demand_volume + 2000.0,
       std::min(round_cent(spot_target - 60.0), c.demand_cap_price)});

  // Base record: clearing at the reference (forecast) bid.
  const ClearingResult base =
      clear_day_ahead(s.reference_forecast, s.supply, s.demand);
  s.base_spot_price = base.spot_price;
  s.reference_imbalance = s.generation - base.wpp_dispatch;

  // Local price sensitivity to the wind bid, by finite difference.
  const double probe = c.sensitivity_probe;
  const double up =
      clear_day_ahead(s.reference_forecast + probe, s.supply, s.demand).spot_price;
  const double down =
      clear_day_ahead(std::max(0.0, s.reference_forecast - probe), s.supply, s.demand)
          .spot_price;
  const double down_step = s.reference_forecast - std::max(0.0, s.reference_forecast - probe);
  const double span = probe + down_step;
  s.spot_sensitivity = span > 0.0 ? (up - down) / span : 0.0;

  s.base_imbalance_price =
      spot_target + step_ar(spread_state_, c.imbalance_spread_mean,
                            c.imbalance_spread_ar, c.imbalance_spread_noise);
  s.imbalance_sensitivity =
      std::min(c.eta_i_max, step_ar(eta_i_state_, c.eta_i_mean, c.eta_i_ar,
                                    c.eta_i_noise));
  s.base_system_imbalance =
      s.reference_imbalance + step_ar(sys_imb_state_, 0.0, c.system_imbalance_ar,
                                      c.system_imbalance_noise);
  return s;
}

}  // namespace windbid
