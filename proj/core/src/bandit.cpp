#include "windbid/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace windbid {

namespace {

bool is_dyadic_radius(double r) {
  if (!(r > 0.0) || r > 1.0) return false;
  int exp = 0;
  return std::frexp(r, &exp) == 0.5;
}

double sq(double x) { return x * x; }

// Unscaled squared distance between the context part of a ball center and
// a raw context vector.
double context_sq_dist(const Ball& b, std::span<const double> context) {
  double s = 0.0;
  for (std::size_t j = 0; j < context.size(); ++j) s += sq(context[j] - b.center[j + 1]);
  return s;
}

void check_context(std::span<const double> context, std::size_t dim) {
  if (context.size() + 1 != dim) {
    throw std::invalid_argument("context dimension mismatch: got " +
                                std::to_string(context.size()) + ", engine dim " +
                                std::to_string(dim));
  }
  for (double v : context) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw std::invalid_argument("context coordinate outside [0,1]");
    }
  }
}

}  // namespace

ActiveSet::ActiveSet(std::size_t dim, double horizon, Point root_center)
    : dim_(dim), horizon_(horizon) {
  if (dim_ == 0) throw std::invalid_argument("ActiveSet: dim must be >= 1");
  if (!(horizon_ >= 2.0)) throw std::invalid_argument("ActiveSet: horizon must be >= 2");
  if (root_center.dim() != dim_) {
    throw std::invalid_argument("ActiveSet: root center dimension mismatch");
  }
  balls_.push_back(Ball{0, -1, std::move(root_center), 1.0, 0, 0.0});
}

ActiveSet::ActiveSet(std::size_t dim, double horizon, std::vector<Ball> balls)
    : dim_(dim), horizon_(horizon), balls_(std::move(balls)) {
  if (!(horizon_ >= 2.0)) throw std::invalid_argument("ActiveSet: horizon must be >= 2");
  std::size_t roots = 0;
  for (std::size_t i = 0; i < balls_.size(); ++i) {
    const Ball& b = balls_[i];
    if (b.id != static_cast<std::int64_t>(i)) {
      throw std::invalid_argument("ActiveSet: ball ids must be sequential");
    }
    if (b.center.dim() != dim_) throw std::invalid_argument("ActiveSet: ball dimension mismatch");
    if (!is_dyadic_radius(b.radius)) {
      throw std::invalid_argument("ActiveSet: radius must be a power of two in (0,1]");
    }
    if (b.samples < 0) throw std::invalid_argument("ActiveSet: negative sample count");
    if (b.radius == 1.0) ++roots;
  }
  if (roots != 1) throw std::invalid_argument("ActiveSet: expected exactly one radius-1 root");
}

std::int64_t ActiveSet::activate(std::int64_t parent_id, Point center) {
  const Ball& parent = ball(parent_id);
  if (center.dim() != dim_) throw std::invalid_argument("activate: center dimension mismatch");
  Ball child;
  child.id = static_cast<std::int64_t>(balls_.size());
  child.parent_id = parent_id;
  child.center = std::move(center);
  child.radius = parent.radius / 2.0;
  balls_.push_back(std::move(child));
  return balls_.back().id;
}

void ActiveSet::add_sample(std::int64_t id, double reward) {
  Ball& b = balls_.at(static_cast<std::size_t>(id));
  b.samples += 1;
  b.reward_sum += reward;
}

double confidence_radius(std::int64_t samples, double horizon) {
  if (samples < 0) throw std::invalid_argument("confidence_radius: samples must be >= 0");
  if (!(horizon >= 2.0)) throw std::invalid_argument("confidence_radius: horizon must be >= 2");
  return std::sqrt(std::log(horizon) / (1.0 + static_cast<double>(samples)));
}

double pre_index(const Ball& ball, double horizon) {
  return ball.mean_reward() + ball.radius + confidence_radius(ball.samples, horizon);
}

double ball_index(const Ball& ball, const ActiveSet& active) {
  if (active.size() == 0) throw std::logic_error("ball_index: empty active set");
  if (ball.id < 0 || ball.id >= static_cast<std::int64_t>(active.size())) {
    throw std::logic_error("ball_index: ball is not a member of the active set");
  }
  double best = std::numeric_limits<double>::infinity();
  for (const Ball& other : active.balls()) {
    const double cand = pre_index(other, active.horizon()) +
                        metric_distance(ball.center, other.center);
    best = std::min(best, cand);
  }
  return ball.radius + best;
}

std::vector<double> all_indices(const ActiveSet& active) {
  const auto& balls = active.balls();
  const std::size_t n = balls.size();
  const double inv_d = 1.0 / static_cast<double>(active.dim());
  std::vector<double> pre(n);
  for (std::size_t i = 0; i < n; ++i) pre[i] = pre_index(balls[i], active.horizon());

  std::vector<double> best(pre);  // self term, distance 0
  for (std::size_t i = 0; i < n; ++i) {
    const auto ci = balls[i].center.coords();
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto cj = balls[j].center.coords();
      double s = 0.0;
      for (std::size_t k = 0; k < ci.size(); ++k) s += sq(ci[k] - cj[k]);
      const double dist = std::sqrt(s * inv_d);
      best[i] = std::min(best[i], pre[j] + dist);
      best[j] = std::min(best[j], pre[i] + dist);
    }
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = balls[i].radius + best[i];
  return out;
}

bool in_ball(const Ball& ball, const Point& p) {
  if (p.dim() != ball.center.dim()) throw std::invalid_argument("in_ball: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) s += sq(p[i] - ball.center[i]);
  return s <= sq(ball.radius) * static_cast<double>(p.dim());
}

bool in_domain(const Point& p, const Ball& ball, const ActiveSet& active) {
  if (!in_ball(ball, p)) return false;
  for (const Ball& other : active.balls()) {
    if (other.radius < ball.radius && in_ball(other, p)) return false;
  }
  return true;
}

namespace {

// Fixed-context slice of a ball in the bid coordinate, unclipped.
// Empty (lo > hi) when the context plane misses the ball.
Interval raw_slice(const Ball& b, std::span<const double> context) {
  const double lim = sq(b.radius) * static_cast<double>(b.center.dim()) -
                     context_sq_dist(b, context);
  if (lim < 0.0) return Interval{1.0, 0.0};
  const double h = std::sqrt(lim);
  return Interval{b.center[0] - h, b.center[0] + h};
}

}  // namespace

IntervalSet domain_slice(const Ball& ball, std::span<const double> context,
                         const ActiveSet& active) {
  check_context(context, active.dim());
  const Interval base = raw_slice(ball, context);
  if (base.hi < base.lo) return IntervalSet{};
  IntervalSet slice(std::max(0.0, base.lo), std::min(1.0, base.hi));
  for (const Ball& other : active.balls()) {
    if (slice.empty()) break;
    if (other.radius >= ball.radius) continue;
    const Interval cut = raw_slice(other, context);
    if (cut.hi >= cut.lo) slice.subtract(cut.lo, cut.hi);
  }
  return slice;
}

double theoretical_regret_bound(double horizon, int batch_size, int zooming_dim,
                                double constant) {
  if (!(horizon >= 2.0)) throw std::invalid_argument("regret bound: horizon must be >= 2");
  if (batch_size < 1) throw std::invalid_argument("regret bound: batch size must be >= 1");
  if (zooming_dim < 1) throw std::invalid_argument("regret bound: zooming dim must be >= 1");
  if (!(constant > 0.0)) throw std::invalid_argument("regret bound: constant must be > 0");
  const double e = static_cast<double>(zooming_dim) + 2.0;
  return constant * (std::pow(horizon, -1.0 / e) * std::log(horizon) +
                     static_cast<double>(batch_size) * std::pow(horizon, -3.0 / e));
}

std::pair<std::int64_t, double> select_from(const ActiveSet& active,
                                            std::span<const double> context,
                                            std::span<const double> frozen_indices,
                                            Rng& rng, BidSampling sampling) {
  check_context(context, active.dim());
  if (frozen_indices.size() != active.size()) {
    throw std::logic_error("select_from: frozen index map does not match active set");
  }
  std::vector<std::int64_t> order(active.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<std::int64_t>(i);
  std::sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
    const double ia = frozen_indices[static_cast<std::size_t>(a)];
    const double ib = frozen_indices[static_cast<std::size_t>(b)];
    if (ia != ib) return ia > ib;
    return a < b;
  });
  for (std::int64_t id : order) {
    const IntervalSet slice = domain_slice(active.ball(id), context, active);
    if (slice.empty()) continue;
    double bid;
    if (sampling == BidSampling::kUniform) {
      std::uniform_real_distribution<double> u01(0.0, 1.0);
      bid = slice.sample(u01(rng));
    } else {
      const auto& parts = slice.parts();
      const Interval& widest = *std::max_element(
          parts.begin(), parts.end(),
          [](const Interval& a, const Interval& b) { return a.length() < b.length(); });
      bid = 0.5 * (widest.lo + widest.hi);
    }
    return {id, std::clamp(bid, 0.0, 1.0)};
  }
  throw std::logic_error("select_from: no relevant ball; covering invariant violated");
}

ZoomingEngine::ZoomingEngine(EngineConfig config)
    : config_(config),
      active_(config.dim, config.horizon,
              config.root_center.value_or(Point::splat(0.5, config.dim))),
      rng_(derive_seed(config.seed, "zooming-engine")) {
  if (!(config_.reward_low < config_.reward_high)) {
    throw std::invalid_argument("ZoomingEngine: reward support must be nonempty");
  }
  refresh_frozen();
}

ZoomingEngine::ZoomingEngine(EngineConfig config, ActiveSet restored)
    : config_(config),
      active_(std::move(restored)),
      rng_(derive_seed(config.seed, "zooming-engine")) {
  if (active_.dim() != config_.dim) {
    throw std::invalid_argument("ZoomingEngine: restored set dimension mismatch");
  }
  if (!(config_.reward_low < config_.reward_high)) {
    throw std::invalid_argument("ZoomingEngine: reward support must be nonempty");
  }
  refresh_frozen();
}

void ZoomingEngine::refresh_frozen() {
  frozen_indices_ = all_indices(active_);
  frozen_order_.resize(active_.size());
  for (std::size_t i = 0; i < frozen_order_.size(); ++i) {
    frozen_order_[i] = static_cast<std::int64_t>(i);
  }
  std::sort(frozen_order_.begin(), frozen_order_.end(),
            [&](std::int64_t a, std::int64_t b) {
              const double ia = frozen_indices_[static_cast<std::size_t>(a)];
              const double ib = frozen_indices_[static_cast<std::size_t>(b)];
              if (ia != ib) return ia > ib;
              return a < b;
            });
}

ZoomingEngine::Selection ZoomingEngine::select(std::int64_t round,
                                               std::span<const double> context) {
  check_context(context, config_.dim);
  if (config_.max_pending && pending_.size() >= *config_.max_pending) {
    throw std::logic_error("select: pending selections already at the batch limit");
  }
  for (const PendingSelection& p : pending_) {
    if (p.round == round) {
      throw std::invalid_argument("select: round already has a pending selection");
    }
  }
  for (std::int64_t id : frozen_order_) {
    const IntervalSet slice = domain_slice(active_.ball(id), context, active_);
    if (slice.empty()) continue;
    double bid;
    if (config_.sampling == BidSampling::kUniform) {
      std::uniform_real_distribution<double> u01(0.0, 1.0);
      bid = slice.sample(u01(rng_));
    } else {
      const auto& parts = slice.parts();
      const Interval& widest = *std::max_element(
          parts.begin(), parts.end(),
          [](const Interval& a, const Interval& b) { return a.length() < b.length(); });
      bid = 0.5 * (widest.lo + widest.hi);
    }
    bid = std::clamp(bid, 0.0, 1.0);
    pending_.push_back(PendingSelection{round, id, Point(bid, context)});
    return Selection{id, bid};
  }
  throw std::logic_error("select: no relevant ball; covering invariant violated");
}

std::vector<std::int64_t> ZoomingEngine::observe_batch(
    std::span<const std::pair<std::int64_t, double>> payoffs) {
  std::unordered_map<std::int64_t, std::size_t> by_round;
  by_round.reserve(pending_.size());
  for (std::size_t i = 0; i < pending_.size(); ++i) by_round.emplace(pending_[i].round, i);

  std::vector<std::pair<std::int64_t, double>> ordered(payoffs.begin(), payoffs.end());
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  for (const auto& [round, reward] : ordered) {
    if (!by_round.count(round)) {
      throw std::invalid_argument("observe_batch: round " + std::to_string(round) +
                                  " has no pending selection");
    }
    if (!std::isfinite(reward) || reward < config_.reward_low ||
        reward > config_.reward_high) {
      throw std::range_error("observe_batch: reward " + std::to_string(reward) +
                             " outside support [" + std::to_string(config_.reward_low) +
                             ", " + std::to_string(config_.reward_high) + "]");
    }
  }

  std::vector<std::int64_t> activated;
  std::size_t consumed = 0;
  for (const auto& [round, reward] : ordered) {
    auto it = by_round.find(round);
    if (it == by_round.end()) {
      throw std::invalid_argument("observe_batch: duplicate payoff for round " +
                                  std::to_string(round));
    }
    const PendingSelection& sel = pending_[it->second];
    by_round.erase(it);
    ++consumed;

    const Ball& b = active_.ball(sel.ball_id);
    // Activation rule, tested before the counters move; the active set
    // evolves inside this loop, so earlier activations in the same batch
    // can veto later ones through the domain test.
    if (confidence_radius(b.samples, active_.horizon()) <= b.radius &&
        in_domain(sel.point, b, active_)) {
      activated.push_back(active_.activate(sel.ball_id, sel.point));
    }
    active_.add_sample(sel.ball_id, reward);
  }
  (void)consumed;

  pending_.clear();
  refresh_frozen();
  return activated;
}

void ZoomingEngine::write_snapshot_csv(std::ostream& out) const {
  out << "id,parent_id,radius,samples,reward_sum";
  for (std::size_t j = 0; j < config_.dim; ++j) out << ",c" << j;
  out << "\n";
  char buf[64];
  for (const Ball& b : active_.balls()) {
    out << b.id << "," << b.parent_id << ",";
    std::snprintf(buf, sizeof buf, "%.17g", b.radius);
    out << buf << "," << b.samples << ",";
    std::snprintf(buf, sizeof buf, "%.17g", b.reward_sum);
    out << buf;
    for (std::size_t j = 0; j < config_.dim; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", b.center[j]);
      out << "," << buf;
    }
    out << "\n";
  }
}

ActiveSet ZoomingEngine::read_snapshot_csv(std::istream& in, double horizon) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("snapshot: missing header");
  std::vector<Ball> balls;
  std::size_t dim = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < 6) throw std::invalid_argument("snapshot: short row");
    if (dim == 0) dim = cells.size() - 5;
    Ball b;
    b.id = std::stoll(cells[0]);
    b.parent_id = std::stoll(cells[1]);
    b.radius = std::stod(cells[2]);
    b.samples = std::stoll(cells[3]);
    b.reward_sum = std::stod(cells[4]);
    std::vector<double> coords;
    for (std::size_t j = 5; j < cells.size(); ++j) coords.push_back(std::stod(cells[j]));
    b.center = Point(std::move(coords));
    balls.push_back(std::move(b));
  }
  return ActiveSet(dim, horizon, std::move(balls));
}

}  // namespace windbid
