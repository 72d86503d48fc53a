#pragma once

// Shared domain types: bounds, agents, populations, objectives and the
// deterministic random stream every other module draws from.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace woadiv {

/// Raised when an operation is called in a state that forbids it
/// (e.g. stepping a population that already reached its iteration budget).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed trace/summary input. The message names the offending record.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Missing or malformed benchmark data. The message names file and line.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform random source with a fixed, platform-independent sequence.
///
/// The engine is std::mt19937_64, whose output sequence is fully specified by
/// the C++ standard. The conversions to reals and bounded integers are done
/// here rather than through <random> distributions, whose algorithms are
/// implementation-defined.
///   uniform()    : top 53 bits of one engine draw, scaled by 2^-53 -> [0,1)
///   index(n)     : rejection sampling on one or more engine draws -> [0,n)
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

  /// Uniform on [0, 1).
  double uniform() noexcept {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Uniform integer on [0, n). n must be positive.
  std::size_t index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("RngStream::index: n must be positive");
    const std::uint64_t range = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t draw = engine_();
    while (draw >= limit) draw = engine_();
    return static_cast<std::size_t>(draw % range);
  }

  /// Raw engine output, for seeding derived streams.
  std::uint64_t next_u64() noexcept { return engine_(); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Seed of the dedicated evaluation-noise stream paired with an optimizer
/// stream. Only noisy objectives (classical F7) consume it.
[[nodiscard]] constexpr std::uint64_t noise_seed(std::uint64_t optimizer_seed) noexcept {
  return optimizer_seed ^ 0x9E3779B97F4A7C15ULL;
}

/// Box constraints, one [lower, upper] pair per dimension.
class Bounds {
 public:
  Bounds(std::vector<double> lower, std::vector<double> upper)
      : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.empty()) throw std::invalid_argument("Bounds: dimension must be positive");
    if (lower_.size() != upper_.size())
      throw std::invalid_argument("Bounds: lower and upper limits differ in length");
    for (std::size_t j = 0; j < lower_.size(); ++j) {
      if (!(lower_[j] < upper_[j]))
        throw std::invalid_argument("Bounds: lower[" + std::to_string(j) +
                                    "] must be strictly below upper");
    }
  }

  /// Same interval in every dimension.
  static Bounds uniform(std::size_t dims, double lower, double upper) {
    return Bounds(std::vector<double>(dims, lower), std::vector<double>(dims, upper));
  }

  [[nodiscard]] std::size_t dims() const noexcept { return lower_.size(); }
  [[nodiscard]] const std::vector<double>& lower() const noexcept { return lower_; }
  [[nodiscard]] const std::vector<double>& upper() const noexcept { return upper_; }
  [[nodiscard]] double lower(std::size_t j) const { return lower_.at(j); }
  [[nodiscard]] double upper(std::size_t j) const { return upper_.at(j); }

  [[nodiscard]] bool contains(std::span<const double> x) const noexcept {
    if (x.size() != dims()) return false;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j] < lower_[j] || x[j] > upper_[j]) return false;
    }
    return true;
  }

  friend bool operator==(const Bounds&, const Bounds&) = default;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

/// Per-coordinate projection onto the box.
[[nodiscard]] inline std::vector<double> clamp(std::span<const double> position,
                                               const Bounds& bounds) {
  if (position.size() != bounds.dims())
    throw std::invalid_argument("clamp: position has " + std::to_string(position.size()) +
                                " coordinates, bounds have " + std::to_string(bounds.dims()));
  std::vector<double> out(position.begin(), position.end());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = std::min(bounds.upper()[j], std::max(bounds.lower()[j], out[j]));
  }
  return out;
}

/// Black-box objective to minimise. Deterministic objectives ignore the
/// noise stream; noisy ones (classical F7) draw from it.
class ObjectiveFunction {
 public:
  using Evaluator = std::function<double(std::span<const double>, RngStream&)>;

  ObjectiveFunction(std::string name, Bounds bounds, Evaluator evaluate,
                    std::optional<double> known_optimum = std::nullopt, bool noisy = false)
      : name_(std::move(name)),
        bounds_(std::move(bounds)),
        evaluate_(std::move(evaluate)),
        known_optimum_(known_optimum),
        noisy_(noisy) {
    if (!evaluate_) throw std::invalid_argument("ObjectiveFunction: empty evaluator");
  }

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] const Bounds& bounds() const noexcept { return bounds_; }
  [[nodiscard]] std::size_t dims() const noexcept { return bounds_.dims(); }
  [[nodiscard]] std::optional<double> known_optimum() const noexcept { return known_optimum_; }
  [[nodiscard]] bool noisy() const noexcept { return noisy_; }

  double operator()(std::span<const double> x, RngStream& noise) const {
    if (x.size() != dims())
      throw std::invalid_argument(name_ + ": expected " + std::to_string(dims()) +
                                  " coordinates, got " + std::to_string(x.size()));
    return evaluate_(x, noise);
  }

  /// Evaluation for deterministic objectives; noisy ones require a stream.
  double operator()(std::span<const double> x) const {
    if (noisy_) throw std::invalid_argument(name_ + ": noisy objective needs a noise stream");
    thread_local RngStream unused(0);
    return (*this)(x, unused);
  }

 private:
  std::string name_;
  Bounds bounds_;
  Evaluator evaluate_;
  std::optional<double> known_optimum_;
  bool noisy_;
};

struct Agent {
  std::vector<double> position;
  double fitness = std::numeric_limits<double>::infinity();

  friend bool operator==(const Agent&, const Agent&) = default;
};

/// Dense row-major n x D matrix of agent positions.
class PositionMatrix {
 public:
  PositionMatrix() = default;
  PositionMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  PositionMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
      throw std::invalid_argument("PositionMatrix: data size does not match shape");
  }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }

  [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  [[nodiscard]] std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }

  [[nodiscard]] std::vector<double> column(std::size_t j) const {
    std::vector<double> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  [[nodiscard]] const std::vector<double>& data() const noexcept { return data_; }

  friend bool operator==(const PositionMatrix&, const PositionMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Swarm state owned by exactly one run.
struct Population {
  std::vector<Agent> agents;
  Agent best;
  std::size_t iteration = 0;
  std::size_t max_iterations = 0;

  [[nodiscard]] std::size_t size() const noexcept { return agents.size(); }
  [[nodiscard]] std::size_t dims() const noexcept {
    return agents.empty() ? 0 : agents.front().position.size();
  }

  [[nodiscard]] PositionMatrix positions() const {
    PositionMatrix m(size(), dims());
    for (std::size_t i = 0; i < agents.size(); ++i) {
      auto r = m.row(i);
      std::copy(agents[i].position.begin(), agents[i].position.end(), r.begin());
    }
    return m;
  }

  friend bool operator==(const Population&, const Population&) = default;
};

/// Index of the lowest fitness; ties keep the earlier index.
[[nodiscard]] inline std::size_t argmin_fitness(const std::vector<Agent>& agents) {
  if (agents.empty()) throw std::invalid_argument("argmin_fitness: no agents");
  std::size_t best = 0;
  for (std::size_t i = 1; i < agents.size(); ++i) {
    if (agents[i].fitness < agents[best].fitness) best = i;
  }
  return best;
}

/// Uniform random start inside the box. Coordinates are drawn agent by agent,
/// dimension by dimension; fitness uses the separate noise stream.
[[nodiscard]] inline Population init_population(const ObjectiveFunction& f, std::size_t n,
                                                std::size_t max_iterations, RngStream& rng,
                                                RngStream& noise) {
  if (n < 2) throw std::invalid_argument("init_population: need at least 2 agents, got " +
                                         std::to_string(n));
  const Bounds& b = f.bounds();
  Population pop;
  pop.max_iterations = max_iterations;
  pop.agents.resize(n);
  for (auto& agent : pop.agents) {
    agent.position.resize(b.dims());
    for (std::size_t j = 0; j < b.dims(); ++j) {
      agent.position[j] = rng.uniform(b.lower()[j], b.upper()[j]);
    }
  }
  for (auto& agent : pop.agents) agent.fitness = f(agent.position, noise);
  pop.best = pop.agents[argmin_fitness(pop.agents)];
  return pop;
}

/// Convenience overload deriving the noise stream from the optimizer seed.
[[nodiscard]] inline Population init_population(const ObjectiveFunction& f, std::size_t n,
                                                RngStream& rng) {
  RngStream noise(noise_seed(rng.seed()));
  return init_population(f, n, 0, rng, noise);
}

}  // namespace woadiv
