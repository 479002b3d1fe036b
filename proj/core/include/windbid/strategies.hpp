#pragma once

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "windbid/bandit.hpp"
#include "windbid/market.hpp"

namespace windbid {

/// Map a normalized bid u in [0,1] to MWh around the forecast: u = 0 and
/// u = 1 are deviations of -deviation and +deviation. Clamped at zero
/// volume when the band dips below it.
double denormalize_bid(double u, double generation_forecast, double deviation);
/// Inverse of denormalize_bid, clipped to [0,1].
double normalize_bid(double bid, double generation_forecast, double deviation);

struct DecisionInputs {
  std::int64_t round = 0;
  double generation_forecast = 0.0;      // MWh
  std::span<const double> context;       // normalized, may be empty
  const MarketState* previous_day = nullptr;  // state of round-24, if any
};

/// Everything a learning strategy hears back about one of its own rounds,
/// delivered only at batch boundaries.
struct RoundFeedback {
  std::int64_t round = 0;
  std::vector<double> context;
  double bid = 0.0;  // MWh
  MarketOutcome outcome;
  double reward = 0.0;  // transformed to [0, 0.5]
};

class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string_view name() const = 0;
  /// Chosen day-ahead bid volume in MWh, inside the deviation band.
  virtual double decide(const DecisionInputs& in) = 0;
  virtual void on_batch(std::span<const RoundFeedback> batch) { (void)batch; }
};

/// Competitive baseline: bid the forecast volume at marginal price.
class ForecastBidStrategy : public Strategy {
 public:
  std::string_view name() const override { return "forecast"; }
  double decide(const DecisionInputs& in) override { return in.generation_forecast; }
};

/// Optimize the bid against yesterday's realized market, on a grid over
/// the deviation band. Falls back to the forecast bid while no previous
/// day exists or its clearing fails.
class DayMinusOneStrategy : public Strategy {
 public:
  DayMinusOneStrategy(double deviation, double grid_step);

  std::string_view name() const override { return "d1"; }
  double decide(const DecisionInputs& in) override;

  std::int64_t fallback_count() const { return fallbacks_; }

 private:
  double deviation_;
  double grid_step_;
  std::int64_t fallbacks_ = 0;
};

/// Linear decision rule weights over the augmented context [x, 1]; the
/// trailing entry is the bias.
struct LinearPolicy {
  std::vector<double> weights;
  double objective = 0.0;
  bool solver_interior = true;
};

struct TrainingSample {
  std::vector<double> context;
  double spot_price = 0.0;
  double imbalance_price = 0.0;
};

/// Maximize sum_i (spot_i - imbalance_i) * x_i.q subject to
/// |x_i.q| <= deviation for every window sample, over augmented contexts.
/// Objective components orthogonal to every sample are null directions
/// and are projected out before solving.
LinearPolicy fit_linear_policy(std::span<const TrainingSample> window,
                               double deviation, std::uint64_t seed);

/// forecast + clip(q.x + b, +-deviation), volume floor at zero.
double linear_policy_bid(const LinearPolicy& policy, std::span<const double> context,
                         double generation_forecast, double deviation);

/// Rolling-window linear decision rule; refits at every batch boundary
/// and bids the forecast until one full window has accumulated.
class LinearPolicyStrategy : public Strategy {
 public:
  LinearPolicyStrategy(double deviation, std::size_t window_length, std::uint64_t seed);

  std::string_view name() const override { return "linear"; }
  double decide(const DecisionInputs& in) override;
  void on_batch(std::span<const RoundFeedback> batch) override;

  const LinearPolicy& policy() const { return policy_; }
  bool warmed_up() const { return warmed_up_; }

 private:
  double deviation_;
  std::size_t window_length_;
  std::uint64_t seed_;
  std::deque<TrainingSample> window_;
  LinearPolicy policy_;
  bool warmed_up_ = false;
};

/// Best discrete bid per discretized context cell, estimated offline.
class OracleTable {
 public:
  OracleTable(std::size_t context_dim, int grid_points);

  struct Cell {
    double best_bid = 0.0;  // normalized
    std::int64_t samples = 0;
    bool filled = false;
  };

  std::size_t context_dim() const { return dim_; }
  int grid_points() const { return grid_; }
  std::size_t cell_count() const { return cells_.size(); }
  const Cell& cell(std::size_t flat_index) const { return cells_[flat_index]; }
  Cell& cell(std::size_t flat_index) { return cells_[flat_index]; }

  /// Nearest-cell lookup with fallback to the nearest filled cell.
  /// Returns the stored normalized bid.
  double lookup(std::span<const double> context) const;

  /// Flat index of the nearest cell (lowest index on midpoint ties).
  std::size_t nearest_cell(std::span<const double> context) const;

  void write_csv(std::ostream& out) const;
  static OracleTable read_csv(std::istream& in);

 private:
  std::size_t dim_;
  int grid_;
  std::vector<Cell> cells_;
};

struct OracleSample {
  std::vector<double> context;  // normalized
  MarketState state;
};

/// Estimate the best-response table by brute force: every sample
/// contributes to all nearest cells (set-valued projection at midpoint
/// ties); each cell stores the revenue-sum argmax over the bid grid,
/// lowest grid bid on ties.
OracleTable build_oracle(std::span<const OracleSample> dataset, double deviation,
                         int bid_grid_points, int context_grid_points);

class OracleStrategy : public Strategy {
 public:
  OracleStrategy(OracleTable table, double deviation);

  std::string_view name() const override { return "oracle"; }
  double decide(const DecisionInputs& in) override;

  const OracleTable& table() const { return table_; }

 private:
  OracleTable table_;
  double deviation_;
};

/// Adapter: contextual zooming engine over the normalized bid-context
/// space, bids denormalized into the deviation band.
class BanditStrategy : public Strategy {
 public:
  BanditStrategy(EngineConfig engine_config, double deviation);

  std::string_view name() const override { return "bandit"; }
  double decide(const DecisionInputs& in) override;
  void on_batch(std::span<const RoundFeedback> batch) override;

  const ZoomingEngine& engine() const { return engine_; }

 private:
  ZoomingEngine engine_;
  double deviation_;
};

}  // namespace windbid
