#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "windbid/market.hpp"
#include "windbid/rng.hpp"

namespace windbid {

/// Student-t forecast noise, on the normalized scale.
struct NoiseSpec {
  double sigma = 0.05;  // scale, fraction of the normalized range
  double xi = 0.0;      // location bias
  int nu = 5;           // degrees of freedom

  void validate() const;  // throws ConfigError
};

/// Per-feature empirical (low, high) pairs estimated from a historical
/// window; low < high for every feature.
struct NormalizationBounds {
  std::vector<std::pair<double, double>> bounds;

  std::size_t size() const { return bounds.size(); }
  void validate() const;  // throws ConfigError
};

/// Marginal day-ahead revenue forecast: spot + generation * spot slope.
double gamma_hat(double spot_forecast, double generation_forecast,
                 double spot_sensitivity_forecast);

/// value + t*sigma + xi with t drawn from Student-t(nu).
double add_noise(double true_value, const NoiseSpec& spec, Rng& rng);

/// (raw - low)/(high - low) clipped to [0,1].
double normalize(double raw, double low, double high);

/// Affine map of (revenue - reference_revenue) onto the reward support
/// [0, 0.5]; diffs at the bounds hit the endpoints and excursions beyond
/// are clipped and counted.
class RewardTransform {
 public:
  RewardTransform(double diff_low, double diff_high);

  double operator()(double revenue, double reference_revenue);

  std::int64_t clip_count() const { return clips_; }
  double low() const { return low_; }
  double high() const { return high_; }

 private:
  double low_;
  double high_;
  std::int64_t clips_ = 0;
};

/// Indices into the raw feature vector produced for a market hour.
/// gamma is engineered from three upstream forecasts; the context handed
/// to contextual strategies is (gamma, imbalance price, imbalance
/// sensitivity), normalized, truncated to the configured dimension.
enum RawFeature : std::size_t {
  kFeatSpot = 0,
  kFeatEtaS = 1,
  kFeatImbalancePrice = 2,
  kFeatEtaI = 3,
  kFeatGamma = 4,
  kRawFeatureCount = 5,
};

/// Turns ground-truth market drivers into normalized contexts.
///
/// Per hour: each upstream driver is normalized with its bound pair,
/// perturbed with Student-t noise on that scale, clipped, mapped back to
/// raw units where composition needs them, and the engineered gamma is
/// normalized with its own bounds. With sigma = xi = 0 contexts are
/// deterministic functions of the truth.
class ContextBuilder {
 public:
  ContextBuilder(NormalizationBounds bounds, NoiseSpec noise, std::size_t context_dim,
                 std::uint64_t seed);

  /// Normalized context in [0,1]^context_dim.
  std::vector<double> build(const MarketState& state);

  std::size_t context_dim() const { return context_dim_; }
  const NormalizationBounds& bounds() const { return bounds_; }

  /// Estimate feature bounds (spot, eta_s, imbalance price, eta_i, gamma)
  /// from a calibration window, with the same noise pipeline applied so
  /// location bias is absorbed into the bounds.
  static NormalizationBounds estimate_bounds(std::span<const MarketState> window,
                                             const NoiseSpec& noise,
                                             std::uint64_t seed);

 private:
  NormalizationBounds bounds_;
  NoiseSpec noise_;
  std::size_t context_dim_;
  Rng rng_;
};

}  // namespace windbid
