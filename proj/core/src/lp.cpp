#include "windbid/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "windbid/rng.hpp"

namespace windbid {

namespace {

constexpr double kFeasTol = 1e-9;

struct Constraint {
  std::vector<double> a;
  double b;
};

// Solve max c.q s.t. constraints, |q_j| <= box, recursively by variable
// elimination. `order` indexes into `cons` and fixes the (already
// shuffled) insertion order at every level.
std::vector<double> seidel(const std::vector<double>& c,
                           const std::vector<Constraint>& cons, double box) {
  const std::size_t d = c.size();
  if (d == 1) {
    double lo = -box, hi = box;
    for (const Constraint& h : cons) {
      const double a = h.a[0];
      if (std::abs(a) < 1e-14) {
        if (h.b < -kFeasTol) throw std::runtime_error("lp: infeasible row");
        continue;
      }
      const double bound = h.b / a;
      if (a > 0.0) hi = std::min(hi, bound);
      else lo = std::max(lo, bound);
    }
    if (lo > hi + kFeasTol) throw std::runtime_error("lp: infeasible interval");
    if (lo > hi) lo = hi = 0.5 * (lo + hi);
    if (c[0] > 0.0) return {hi};
    if (c[0] < 0.0) return {lo};
    return {std::clamp(0.0, lo, hi)};
  }

  // Start at the box corner maximizing the objective.
  std::vector<double> v(d);
  for (std::size_t j = 0; j < d; ++j) v[j] = c[j] >= 0.0 ? box : -box;

  std::vector<const Constraint*> seen;
  seen.reserve(cons.size());
  for (const Constraint& h : cons) {
    const double lhs = std::inner_product(h.a.begin(), h.a.end(), v.begin(), 0.0);
    const double scale = std::max(1.0, std::abs(h.b));
    if (lhs <= h.b + kFeasTol * scale) {
      seen.push_back(&h);
      continue;
    }

    // Optimum moves onto this hyperplane; eliminate the pivot variable.
    std::size_t p = 0;
    for (std::size_t j = 1; j < d; ++j) {
      if (std::abs(h.a[j]) > std::abs(h.a[p])) p = j;
    }
    if (std::abs(h.a[p]) < 1e-14) throw std::runtime_error("lp: degenerate row");
    const double inv = 1.0 / h.a[p];

    auto reduce_vec = [&](const std::vector<double>& full, double coeff_p,
                          std::vector<double>& out) {
      out.clear();
      out.reserve(d - 1);
      for (std::size_t j = 0; j < d; ++j) {
        if (j == p) continue;
        out.push_back(full[j] - coeff_p * h.a[j] * inv);
      }
    };

    std::vector<double> c_red;
    reduce_vec(c, c[p], c_red);
    std::vector<Constraint> cons_red;
    cons_red.reserve(seen.size() + 2);
    for (const Constraint* g : seen) {
      Constraint r;
      reduce_vec(g->a, g->a[p], r.a);
      r.b = g->b - g->a[p] * h.b * inv;
      cons_red.push_back(std::move(r));
    }
    // The pivot's own box bounds become constraints on the others.
    for (double sign : {1.0, -1.0}) {
      Constraint r;
      r.a.assign(d - 1, 0.0);
      std::size_t out_j = 0;
      for (std::size_t j = 0; j < d; ++j) {
        if (j == p) continue;
        r.a[out_j++] = -sign * h.a[j] * inv;
      }
      r.b = box - sign * h.b * inv;
      cons_red.push_back(std::move(r));
    }

    const std::vector<double> w = seidel(c_red, cons_red, box);

    // Back substitute.
    double qp = h.b;
    std::size_t out_j = 0;
    std::vector<double> lifted(d);
    for (std::size_t j = 0; j < d; ++j) {
      if (j == p) continue;
      lifted[j] = w[out_j];
      qp -= h.a[j] * w[out_j];
      ++out_j;
    }
    lifted[p] = qp * inv;
    v = std::move(lifted);
    seen.push_back(&h);
  }
  return v;
}

}  // namespace

LpResult solve_lp_max(std::span<const double> objective,
                      std::span<const std::vector<double>> rows,
                      std::span<const double> rhs, double box, std::uint64_t seed) {
  const std::size_t d = objective.size();
  if (rows.size() != rhs.size()) {
    throw std::invalid_argument("solve_lp_max: rows/rhs size mismatch");
  }
  std::vector<Constraint> cons;
  cons.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d) {
      throw std::invalid_argument("solve_lp_max: row dimension mismatch");
    }
    double amax = 0.0;
    for (double a : rows[i]) amax = std::max(amax, std::abs(a));
    if (amax < 1e-14) continue;  // vacuous row
    cons.push_back({rows[i], rhs[i]});
  }

  Rng rng = make_rng(seed, "seidel-lp");
  std::shuffle(cons.begin(), cons.end(), rng);

  std::vector<double> c(objective.begin(), objective.end());
  std::vector<double> q = seidel(c, cons, box);

  LpResult out;
  out.solution = std::move(q);
  out.objective =
      std::inner_product(c.begin(), c.end(), out.solution.begin(), 0.0);
  for (double x : out.solution) {
    if (std::abs(std::abs(x) - box) < 1e-6 * box) out.interior = false;
  }
  return out;
}

}  // namespace windbid
