#include "windbid/features.hpp"

#include <algorithm>
#include <cmath>

#include "windbid/errors.hpp"

namespace windbid {

namespace {

double clip01(double v) { return std::clamp(v, 0.0, 1.0); }

// Empirical quantile bounds; strict min/max would let the heavy t-tails
// blow the range up and squash every later context into a narrow band.
std::pair<double, double> quantile_bounds(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  const std::size_t lo_i = static_cast<std::size_t>(0.01 * (n - 1));
  const std::size_t hi_i = static_cast<std::size_t>(std::ceil(0.99 * (n - 1)));
  double lo = values[lo_i];
  double hi = values[hi_i];
  if (!(hi > lo)) {  // degenerate feature; widen so normalize stays defined
    const double pad = std::max(1.0, std::abs(lo)) * 0.5;
    lo -= pad;
    hi += pad;
  }
  return {lo, hi};
}

}  // namespace

void NoiseSpec::validate() const {
  if (!(sigma >= 0.0)) throw ConfigError("noise sigma must be >= 0");
  if (nu < 1) throw ConfigError("noise nu must be >= 1");
  if (!std::isfinite(xi)) throw ConfigError("noise xi must be finite");
}

void NormalizationBounds::validate() const {
  for (const auto& [lo, hi] : bounds) {
    if (!(lo < hi)) throw ConfigError("normalization bounds must satisfy low < high");
  }
}

double gamma_hat(double spot_forecast, double generation_forecast,
                 double spot_sensitivity_forecast) {
  return spot_forecast + generation_forecast * spot_sensitivity_forecast;
}

double add_noise(double true_value, const NoiseSpec& spec, Rng& rng) {
  if (spec.sigma == 0.0) return true_value + spec.xi;
  std::student_t_distribution<double> t(static_cast<double>(spec.nu));
  return true_value + t(rng) * spec.sigma + spec.xi;
}

double normalize(double raw, double low, double high) {
  return clip01((raw - low) / (high - low));
}

RewardTransform::RewardTransform(double diff_low, double diff_high)
    : low_(diff_low), high_(diff_high) {
  if (!(low_ < high_)) throw ConfigError("reward bounds must satisfy low < high");
}

double RewardTransform::operator()(double revenue, double reference_revenue) {
  const double diff = revenue - reference_revenue;
  const double u = (diff - low_) / (high_ - low_);
  if (u < 0.0 || u > 1.0) ++clips_;
  return 0.5 * clip01(u);
}

ContextBuilder::ContextBuilder(NormalizationBounds bounds, NoiseSpec noise,
                               std::size_t context_dim, std::uint64_t seed)
    : bounds_(std::move(bounds)),
      noise_(noise),
      context_dim_(context_dim),
      rng_(derive_seed(seed, "context-noise")) {
  noise_.validate();
  if (bounds_.size() != kRawFeatureCount) {
    throw ConfigError("ContextBuilder: expected " +
                      std::to_string(kRawFeatureCount) + " bound pairs");
  }
  bounds_.validate();
  if (context_dim_ > 3) throw ConfigError("context_dim must be <= 3");
}

std::vector<double> ContextBuilder::build(const MarketState& state) {
  const auto& b = bounds_.bounds;
  auto noisy_norm = [&](double raw, RawFeature f) {
    return clip01(add_noise(normalize(raw, b[f].first, b[f].second), noise_, rng_));
  };
  auto denorm = [&](double u, RawFeature f) {
    return b[f].first + u * (b[f].second - b[f].first);
  };

  // Spot and spot-sensitivity forecasts feed the engineered gamma on the
  // raw scale; gamma is then normalized with its own bounds.
  const double spot_fc = denorm(noisy_norm(state.base_spot_price, kFeatSpot), kFeatSpot);
  const double eta_s_fc = denorm(noisy_norm(state.spot_sensitivity, kFeatEtaS), kFeatEtaS);
  const double gamma_raw = gamma_hat(spot_fc, state.reference_forecast, eta_s_fc);

  std::vector<double> ctx;
  ctx.reserve(context_dim_);
  if (context_dim_ >= 1) {
    ctx.push_back(normalize(gamma_raw, b[kFeatGamma].first, b[kFeatGamma].second));
  }
  if (context_dim_ >= 2) {
    ctx.push_back(noisy_norm(state.base_imbalance_price, kFeatImbalancePrice));
  }
  if (context_dim_ >= 3) {
    ctx.push_back(noisy_norm(state.imbalance_sensitivity, kFeatEtaI));
  }
  return ctx;
}

NormalizationBounds ContextBuilder::estimate_bounds(std::span<const MarketState> window,
                                                    const NoiseSpec& noise,
                                                    std::uint64_t seed) {
  if (window.empty()) throw ConfigError("estimate_bounds: empty calibration window");
  noise.validate();

  // Pass 1: bounds of the true drivers.
  std::vector<double> spot, eta_s, imb, eta_i;
  for (const MarketState& s : window) {
    spot.push_back(s.base_spot_price);
    eta_s.push_back(s.spot_sensitivity);
    imb.push_back(s.base_imbalance_price);
    eta_i.push_back(s.imbalance_sensitivity);
  }
  auto spot_b = quantile_bounds(spot);
  auto eta_s_b = quantile_bounds(eta_s);
  auto imb_b = quantile_bounds(imb);
  auto eta_i_b = quantile_bounds(eta_i);

  // Pass 2: replay the noisy forecast pipeline against the pass-1 bounds
  // so the final bounds absorb scale and location of the noise.
  Rng rng = make_rng(seed, "bounds-calibration");
  auto noisy_raw = [&](double raw, const std::pair<double, double>& bb) {
    const double u = (raw - bb.first) / (bb.second - bb.first);
    return bb.first + add_noise(u, noise, rng) * (bb.second - bb.first);
  };
  std::vector<double> spot_n, eta_s_n, imb_n, eta_i_n, gamma_n;
  for (const MarketState& s : window) {
    const double sf = noisy_raw(s.base_spot_price, spot_b);
    const double ef = noisy_raw(s.spot_sensitivity, eta_s_b);
    spot_n.push_back(sf);
    eta_s_n.push_back(ef);
    imb_n.push_back(noisy_raw(s.base_imbalance_price, imb_b));
    eta_i_n.push_back(noisy_raw(s.imbalance_sensitivity, eta_i_b));
    gamma_n.push_back(gamma_hat(sf, s.reference_forecast, ef));
  }

  NormalizationBounds out;
  out.bounds.resize(kRawFeatureCount);
  out.bounds[kFeatSpot] = quantile_bounds(spot_n);
  out.bounds[kFeatEtaS] = quantile_bounds(eta_s_n);
  out.bounds[kFeatImbalancePrice] = quantile_bounds(imb_n);
  out.bounds[kFeatEtaI] = quantile_bounds(eta_i_n);
  out.bounds[kFeatGamma] = quantile_bounds(gamma_n);
  out.validate();
  return out;
}

}  // namespace windbid
