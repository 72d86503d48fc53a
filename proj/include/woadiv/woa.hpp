#pragma once

// Whale Optimization Algorithm: coefficient schedule, the three position
// update rules and the instrumented main loop.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "woadiv/core.hpp"

namespace woadiv {

/// Random control quantities for one agent update.
struct WoaCoefficients {
  double a = 0.0;   // schedule value, 2 -> 0
  double A = 0.0;   // 2a*r1 - a, in [-a, a]
  double C = 0.0;   // 2*r2, in [0, 2)
  double p = 0.0;   // branch selector, [0, 1)
  double l = 0.0;   // spiral parameter, [-1, 1)
  double b = 1.0;   // spiral shape constant
  double r1 = 0.0;
  double r2 = 0.0;
};

enum class Branch : std::uint8_t { spiral = 0, encircle = 1, explore = 2 };

[[nodiscard]] inline const char* to_string(Branch b) noexcept {
  switch (b) {
    case Branch::spiral: return "spiral";
    case Branch::encircle: return "encircle";
    case Branch::explore: return "explore";
  }
  return "?";
}

/// Number of agent updates that took each branch.
struct BranchCounts {
  std::size_t spiral = 0;
  std::size_t encircle = 0;
  std::size_t explore = 0;

  void add(Branch b) noexcept {
    switch (b) {
      case Branch::spiral: ++spiral; break;
      case Branch::encircle: ++encircle; break;
      case Branch::explore: ++explore; break;
    }
  }
  [[nodiscard]] std::size_t total() const noexcept { return spiral + encircle + explore; }

  BranchCounts& operator+=(const BranchCounts& o) noexcept {
    spiral += o.spiral;
    encircle += o.encircle;
    explore += o.explore;
    return *this;
  }
  friend bool operator==(const BranchCounts&, const BranchCounts&) = default;
};

/// How A and C are drawn.
///   scalar:         one (r1, r2) per agent update, shared by every coordinate.
///   per_coordinate: one (r1, r2) pair per coordinate; the explore branch is
///                   taken when any |A_j| >= 1.
enum class CoefficientMode : std::uint8_t { scalar, per_coordinate };

struct WoaOptions {
  CoefficientMode mode = CoefficientMode::scalar;
  double spiral_b = 1.0;
};

/// Called once per completed iteration with the iteration number (1..T), the
/// updated positions and the best fitness after the refresh.
using IterationHook =
    std::function<void(std::size_t iteration, const PositionMatrix& positions, double best_fitness)>;

/// Linear schedule a(t) = 2(1 - t/T).
[[nodiscard]] inline double coefficient_a(std::size_t t, std::size_t T) {
  if (T == 0) throw std::invalid_argument("coefficient_a: T must be at least 1");
  if (t > T)
    throw std::invalid_argument("coefficient_a: t=" + std::to_string(t) + " exceeds T=" +
                                std::to_string(T));
  return 2.0 * (1.0 - static_cast<double>(t) / static_cast<double>(T));
}

/// Draws r1, r2, p, l in that order.
[[nodiscard]] inline WoaCoefficients sample_coefficients(double a, RngStream& rng, double b = 1.0) {
  WoaCoefficients c;
  c.a = a;
  c.b = b;
  c.r1 = rng.uniform();
  c.r2 = rng.uniform();
  c.p = rng.uniform();
  c.l = rng.uniform(-1.0, 1.0);
  c.A = 2.0 * a * c.r1 - a;
  c.C = 2.0 * c.r2;
  return c;
}

namespace detail {

inline void require_same_length(std::span<const double> x, std::span<const double> y,
                                const char* op) {
  if (x.size() != y.size())
    throw std::invalid_argument(std::string(op) + ": length mismatch (" + std::to_string(x.size()) +
                                " vs " + std::to_string(y.size()) + ")");
}

// x_ref[j] - A_j * |C_j * x_ref[j] - x[j]|
inline std::vector<double> shrink_toward(std::span<const double> x, std::span<const double> x_ref,
                                         std::span<const double> A, std::span<const double> C) {
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double a = A.size() == 1 ? A[0] : A[j];
    const double c = C.size() == 1 ? C[0] : C[j];
    const double dist = std::abs(c * x_ref[j] - x[j]);
    out[j] = x_ref[j] - a * dist;
  }
  return out;
}

}  // namespace detail

/// Shrinking encirclement of the best agent.
[[nodiscard]] inline std::vector<double> encircle_update(std::span<const double> x,
                                                         std::span<const double> x_best, double A,
                                                         double C) {
  detail::require_same_length(x, x_best, "encircle_update");
  return detail::shrink_toward(x, x_best, std::span<const double>(&A, 1),
                               std::span<const double>(&C, 1));
}

/// Per-coordinate A and C.
[[nodiscard]] inline std::vector<double> encircle_update(std::span<const double> x,
                                                         std::span<const double> x_best,
                                                         std::span<const double> A,
                                                         std::span<const double> C) {
  detail::require_same_length(x, x_best, "encircle_update");
  detail::require_same_length(x, A, "encircle_update");
  detail::require_same_length(x, C, "encircle_update");
  return detail::shrink_toward(x, x_best, A, C);
}

/// Logarithmic spiral around the best agent:
/// |x_best - x| * e^(b l) * cos(2 pi l) + x_best, per coordinate.
[[nodiscard]] inline std::vector<double> spiral_update(std::span<const double> x,
                                                       std::span<const double> x_best, double l,
                                                       double b) {
  detail::require_same_length(x, x_best, "spiral_update");
  const double factor = std::exp(b * l) * std::cos(2.0 * std::numbers::pi * l);
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    out[j] = std::abs(x_best[j] - x[j]) * factor + x_best[j];
  }
  return out;
}

/// Move relative to a randomly chosen agent instead of the best one.
[[nodiscard]] inline std::vector<double> explore_update(std::span<const double> x,
                                                        std::span<const double> x_rand, double A,
                                                        double C) {
  detail::require_same_length(x, x_rand, "explore_update");
  return detail::shrink_toward(x, x_rand, std::span<const double>(&A, 1),
                               std::span<const double>(&C, 1));
}

[[nodiscard]] inline std::vector<double> explore_update(std::span<const double> x,
                                                        std::span<const double> x_rand,
                                                        std::span<const double> A,
                                                        std::span<const double> C) {
  detail::require_same_length(x, x_rand, "explore_update");
  detail::require_same_length(x, A, "explore_update");
  detail::require_same_length(x, C, "explore_update");
  return detail::shrink_toward(x, x_rand, A, C);
}

/// One full iteration over every agent, in index order.
///
/// Per agent the optimizer stream is consumed as (r1, r2, p, l) and, only when
/// the explore branch fires, one further draw for the random agent index. In
/// per-coordinate mode the leading draws are (r1_0, r2_0, ..., r1_{D-1},
/// r2_{D-1}, p, l). The random agent is taken from the positions at the start
/// of the iteration and may be the agent itself. Positions are clamped, all
/// fitnesses re-evaluated, and the best refreshed once after every agent has
/// moved. `counts`, when given, accumulates the branch taken by each update.
[[nodiscard]] inline Population woa_step(Population pop, const ObjectiveFunction& f,
                                         RngStream& rng, RngStream& noise,
                                         const WoaOptions& options = {},
                                         BranchCounts* counts = nullptr) {
  if (pop.iteration >= pop.max_iterations)
    throw StateError("woa_step: population already at iteration " + std::to_string(pop.iteration) +
                     " of " + std::to_string(pop.max_iterations));
  if (pop.size() < 2) throw std::invalid_argument("woa_step: need at least 2 agents");

  const double a = coefficient_a(pop.iteration, pop.max_iterations);
  const PositionMatrix start = pop.positions();
  const std::size_t n = pop.size();
  const std::size_t dims = pop.dims();

  std::vector<double> A_vec(dims), C_vec(dims);
  for (std::size_t i = 0; i < n; ++i) {
    auto& agent = pop.agents[i];
    Branch branch;
    std::vector<double> moved;

    if (options.mode == CoefficientMode::scalar) {
      const WoaCoefficients c = sample_coefficients(a, rng, options.spiral_b);
      if (c.p >= 0.5) {
        branch = Branch::spiral;
        moved = spiral_update(agent.position, pop.best.position, c.l, c.b);
      } else if (std::abs(c.A) < 1.0) {
        branch = Branch::encircle;
        moved = encircle_update(agent.position, pop.best.position, c.A, c.C);
      } else {
        branch = Branch::explore;
        const std::size_t k = rng.index(n);
        moved = explore_update(agent.position, start.row(k), c.A, c.C);
      }
    } else {
      bool all_inside = true;
      for (std::size_t j = 0; j < dims; ++j) {
        const double r1 = rng.uniform();
        const double r2 = rng.uniform();
        A_vec[j] = 2.0 * a * r1 - a;
        C_vec[j] = 2.0 * r2;
        if (std::abs(A_vec[j]) >= 1.0) all_inside = false;
      }
      const double p = rng.uniform();
      const double l = rng.uniform(-1.0, 1.0);
      if (p >= 0.5) {
        branch = Branch::spiral;
        moved = spiral_update(agent.position, pop.best.position, l, options.spiral_b);
      } else if (all_inside) {
        branch = Branch::encircle;
        moved = encircle_update(agent.position, pop.best.position, A_vec, C_vec);
      } else {
        branch = Branch::explore;
        const std::size_t k = rng.index(n);
        moved = explore_update(agent.position, start.row(k), A_vec, C_vec);
      }
    }

    agent.position = clamp(moved, f.bounds());
    if (counts != nullptr) counts->add(branch);
  }

  for (auto& agent : pop.agents) agent.fitness = f(agent.position, noise);
  const std::size_t best = argmin_fitness(pop.agents);
  if (pop.agents[best].fitness < pop.best.fitness) pop.best = pop.agents[best];
  ++pop.iteration;
  return pop;
}

struct RunResult {
  Agent best;
  std::vector<double> convergence;       // best fitness after each iteration, length T
  std::vector<BranchCounts> branches;    // per iteration
  std::uint64_t seed = 0;

  [[nodiscard]] BranchCounts total_branches() const noexcept {
    BranchCounts sum;
    for (const auto& b : branches) sum += b;
    return sum;
  }

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

/// Complete run: initialise n agents from `seed`, perform T iterations and
/// fire `hook` after each. Noisy objectives draw from noise_seed(seed).
[[nodiscard]] inline RunResult run(const ObjectiveFunction& f, std::size_t n, std::size_t T,
                                   std::uint64_t seed, const IterationHook& hook = {},
                                   const WoaOptions& options = {}) {
  if (T < 1) throw std::invalid_argument("run: need at least one iteration");
  RngStream rng(seed);
  RngStream noise(noise_seed(seed));
  Population pop = init_population(f, n, T, rng, noise);

  RunResult result;
  result.seed = seed;
  result.convergence.reserve(T);
  result.branches.reserve(T);
  while (pop.iteration < pop.max_iterations) {
    BranchCounts counts;
    pop = woa_step(std::move(pop), f, rng, noise, options, &counts);
    result.convergence.push_back(pop.best.fitness);
    result.branches.push_back(counts);
    if (hook) hook(pop.iteration, pop.positions(), pop.best.fitness);
  }
  result.best = pop.best;
  return result;
}

}  // namespace woadiv
