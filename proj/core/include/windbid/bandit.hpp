#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "windbid/interval_set.hpp"
#include "windbid/point.hpp"
#include "windbid/rng.hpp"

namespace windbid {

/// A ball of the adaptive discretization. Radii live on the dyadic
/// lattice {2^-i}; every activated child has exactly half its parent's
/// radius. `samples` counts the rewards folded into `reward_sum`.
struct Ball {
  std::int64_t id = 0;
  std::int64_t parent_id = -1;  // -1 for the root
  Point center;
  double radius = 1.0;
  std::int64_t samples = 0;
  double reward_sum = 0.0;

  double mean_reward() const {
    return samples > 0 ? reward_sum / static_cast<double>(samples) : 0.0;
  }
};

/// The set of active balls. Holds exactly one radius-1 root created at
/// construction, so the unit hypercube is always covered. Ball ids are
/// assigned sequentially and double as indices into balls().
class ActiveSet {
 public:
  ActiveSet(std::size_t dim, double horizon, Point root_center);
  /// Restore from a snapshot (debugging, perf fixtures). Validates ids,
  /// the dyadic radius lattice and the radius-1 root.
  ActiveSet(std::size_t dim, double horizon, std::vector<Ball> balls);

  std::size_t dim() const { return dim_; }
  double horizon() const { return horizon_; }
  const std::vector<Ball>& balls() const { return balls_; }
  const Ball& ball(std::int64_t id) const { return balls_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return balls_.size(); }

  /// Activate a half-radius child centered at the played point.
  std::int64_t activate(std::int64_t parent_id, Point center);

  void add_sample(std::int64_t id, double reward);

 private:
  std::size_t dim_;
  double horizon_;
  std::vector<Ball> balls_;
};

/// sqrt(ln(horizon) / (1 + samples)); strictly decreasing in samples.
/// Requires samples >= 0 and horizon >= 2.
double confidence_radius(std::int64_t samples, double horizon);

/// Optimistic per-ball bound: mean reward + radius + confidence radius.
double pre_index(const Ball& ball, double horizon);

/// Cross-ball tightened bound:
/// radius(B) + min over B' of (pre_index(B') + distance(B, B')).
/// Never exceeds radius(B) + pre_index(B). Throws std::logic_error on an
/// empty set or if `ball` is not a member.
double ball_index(const Ball& ball, const ActiveSet& active);

/// All indices at once, O(n^2 d); refreshed once per feedback batch.
std::vector<double> all_indices(const ActiveSet& active);

/// True iff the point lies in the ball under the scaled metric.
bool in_ball(const Ball& ball, const Point& p);

/// True iff p is in `ball` and in no active ball of strictly smaller
/// radius. This is the point version of the ball's domain.
bool in_domain(const Point& p, const Ball& ball, const ActiveSet& active);

/// The set of bids b such that (b, context) lies in `ball` but in no
/// strictly smaller active ball, clipped to [0,1]. Computed exactly by
/// 1-D interval arithmetic: a fixed-context slice of a ball is an
/// interval. Empty means the ball is not relevant for this context.
IntervalSet domain_slice(const Ball& ball, std::span<const double> context,
                         const ActiveSet& active);

/// Average-regret reference curve
/// C * (T^(-1/(dc+2)) * ln T + W * T^(-3/(dc+2))).
/// Requires T >= 2, W >= 1, dc >= 1, C > 0.
double theoretical_regret_bound(double horizon, int batch_size, int zooming_dim,
                                double constant);

/// One selection awaiting its batch payoff.
struct PendingSelection {
  std::int64_t round = 0;
  std::int64_t ball_id = 0;
  Point point;
};

enum class BidSampling {
  kUniform,  // uniform over the domain slice (default)
  kCenter,   // midpoint of the largest slice piece
};

struct EngineConfig {
  std::size_t dim = 4;
  double horizon = 15252.0;
  std::uint64_t seed = 0;
  BidSampling sampling = BidSampling::kUniform;
  double reward_low = 0.0;
  double reward_high = 0.5;
  /// When set, select() refuses to exceed this many in-flight selections.
  std::optional<std::size_t> max_pending;
  /// Root ball center; defaults to the hypercube midpoint.
  std::optional<Point> root_center;
};

/// Free-function selection rule: among balls whose domain slice at
/// `context` is nonempty, picks the one with the highest frozen index
/// (lowest id wins ties) and samples a bid from its slice. Throws
/// std::logic_error if no ball is relevant, which the covering invariant
/// rules out.
std::pair<std::int64_t, double> select_from(const ActiveSet& active,
                                            std::span<const double> context,
                                            std::span<const double> frozen_indices,
                                            Rng& rng, BidSampling sampling);

/// Contextual zooming engine with delayed batched feedback.
///
/// Predict phase: select() repeatedly, using ball indices frozen at the
/// start of the batch. Update phase: observe_batch() folds the batch of
/// payoffs in round order, activating half-radius children where the
/// activation rule fires, then starts a new batch (indices refresh).
/// Single-threaded; copyable for replay.
class ZoomingEngine {
 public:
  explicit ZoomingEngine(EngineConfig config);
  ZoomingEngine(EngineConfig config, ActiveSet restored);

  struct Selection {
    std::int64_t ball_id;
    double bid;
  };

  /// Pick a bid for `round` given a (dim-1)-dimensional context.
  Selection select(std::int64_t round, std::span<const double> context);

  /// Deliver the batch payoffs (round, reward). Rewards must lie in the
  /// configured support. Every pending selection is retired. Returns the
  /// ids of newly activated balls in activation order.
  std::vector<std::int64_t> observe_batch(
      std::span<const std::pair<std::int64_t, double>> payoffs);

  const ActiveSet& active() const { return active_; }
  const std::vector<PendingSelection>& pending() const { return pending_; }
  std::span<const double> frozen_indices() const { return frozen_indices_; }
  const EngineConfig& config() const { return config_; }

  void write_snapshot_csv(std::ostream& out) const;
  /// Parse a snapshot written by write_snapshot_csv.
  static ActiveSet read_snapshot_csv(std::istream& in, double horizon);

 private:
  void refresh_frozen();

  EngineConfig config_;
  ActiveSet active_;
  Rng rng_;
  std::vector<double> frozen_indices_;
  std::vector<std::int64_t> frozen_order_;  // ball ids, best index first
  std::vector<PendingSelection> pending_;
};

}  // namespace windbid
