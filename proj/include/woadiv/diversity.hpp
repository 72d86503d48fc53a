#pragma once

// Dimension-wise diversity and exploration/exploitation percentages.
//
//   Div_j = (1/n) * sum_i |median(x^j) - x_i^j|
//   Div   = (1/D) * sum_j Div_j
//   XPL%  = 100 * Div / Div_max
//   XPT%  = 100 * |Div - Div_max| / Div_max
//
// Div_max is the largest Div seen over the whole run, so percentages are only
// final once the run is complete. When Div_max is 0 every iteration reports
// XPL% = 0 and XPT% = 100.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "woadiv/core.hpp"

namespace woadiv {

struct DiversitySnapshot {
  std::size_t iteration = 0;
  std::vector<double> div_j;
  double div = 0.0;

  friend bool operator==(const DiversitySnapshot&, const DiversitySnapshot&) = default;
};

struct BalanceSeries {
  std::vector<DiversitySnapshot> div_series;
  double div_max = 0.0;
  std::vector<double> xpl_series;
  std::vector<double> xpt_series;
  double xpl_aggregate = 0.0;
  double xpt_aggregate = 0.0;

  [[nodiscard]] std::size_t size() const noexcept { return div_series.size(); }

  friend bool operator==(const BalanceSeries&, const BalanceSeries&) = default;
};

/// Median of a copy; even lengths average the two central order statistics.
[[nodiscard]] inline double median(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty input");
  std::vector<double> v(values.begin(), values.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / 2.0;
}

/// Mean absolute deviation of column j from its median.
[[nodiscard]] inline double dimension_diversity(const PositionMatrix& positions, std::size_t j) {
  if (positions.rows() < 2)
    throw std::invalid_argument("dimension_diversity: need at least 2 agents");
  if (j >= positions.cols())
    throw std::invalid_argument("dimension_diversity: dimension " + std::to_string(j) +
                                " out of range (D=" + std::to_string(positions.cols()) + ")");
  const std::vector<double> col = positions.column(j);
  const double m = median(col);
  double sum = 0.0;
  for (double x : col) sum += std::abs(m - x);
  return sum / static_cast<double>(col.size());
}

[[nodiscard]] inline DiversitySnapshot swarm_diversity(const PositionMatrix& positions,
                                                       std::size_t iteration = 0) {
  if (positions.rows() < 2)
    throw std::invalid_argument("swarm_diversity: need at least 2 agents, got " +
                                std::to_string(positions.rows()));
  if (positions.cols() < 1) throw std::invalid_argument("swarm_diversity: need at least 1 dimension");
  DiversitySnapshot snap;
  snap.iteration = iteration;
  snap.div_j.resize(positions.cols());
  double sum = 0.0;
  for (std::size_t j = 0; j < positions.cols(); ++j) {
    snap.div_j[j] = dimension_diversity(positions, j);
    sum += snap.div_j[j];
  }
  snap.div = sum / static_cast<double>(positions.cols());
  return snap;
}

/// Percentages for one Div value against a normaliser.
struct BalancePoint {
  double xpl = 0.0;
  double xpt = 100.0;
};

[[nodiscard]] inline BalancePoint balance_point(double div, double div_max) noexcept {
  if (!(div_max > 0.0)) return {};
  return {100.0 * div / div_max, 100.0 * std::abs(div - div_max) / div_max};
}

[[nodiscard]] inline BalanceSeries balance_from_series(std::vector<DiversitySnapshot> div_series) {
  if (div_series.empty()) throw std::invalid_argument("balance_from_series: empty series");
  BalanceSeries out;
  out.div_series = std::move(div_series);
  for (const auto& s : out.div_series) out.div_max = std::max(out.div_max, s.div);

  const std::size_t T = out.div_series.size();
  out.xpl_series.resize(T);
  out.xpt_series.resize(T);
  double xpl_sum = 0.0;
  double xpt_sum = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    const BalancePoint bp = balance_point(out.div_series[t].div, out.div_max);
    out.xpl_series[t] = bp.xpl;
    out.xpt_series[t] = bp.xpt;
    xpl_sum += bp.xpl;
    xpt_sum += bp.xpt;
  }
  out.xpl_aggregate = xpl_sum / static_cast<double>(T);
  out.xpt_aggregate = xpt_sum / static_cast<double>(T);
  return out;
}

/// Collects one snapshot per iteration; plugs into woa::run as its hook.
class DiversityRecorder {
 public:
  void operator()(std::size_t iteration, const PositionMatrix& positions, double /*best*/) {
    snapshots_.push_back(swarm_diversity(positions, iteration));
  }

  [[nodiscard]] const std::vector<DiversitySnapshot>& snapshots() const noexcept { return snapshots_; }
  [[nodiscard]] BalanceSeries balance() const { return balance_from_series(snapshots_); }

 private:
  std::vector<DiversitySnapshot> snapshots_;
};

/// Provisional live view normalised by the running maximum. The values differ
/// from the retrospective series whenever Div later exceeds its current peak,
/// so they are never used for reported aggregates.
class StreamingBalance {
 public:
  BalancePoint push(double div) noexcept {
    running_max_ = std::max(running_max_, div);
    return balance_point(div, running_max_);
  }
  [[nodiscard]] double running_max() const noexcept { return running_max_; }

 private:
  double running_max_ = 0.0;
};

/// Offline analysis: swarm_diversity on each matrix, then balance_from_series.
/// `iterations`, when non-empty, supplies the iteration label of each matrix.
[[nodiscard]] inline BalanceSeries analyze_positions(std::span<const PositionMatrix> trace,
                                                     std::span<const std::size_t> iterations = {}) {
  if (trace.empty()) throw std::invalid_argument("analyze_positions: empty trace");
  if (!iterations.empty() && iterations.size() != trace.size())
    throw std::invalid_argument("analyze_positions: iteration labels do not match trace length");
  const std::size_t n = trace.front().rows();
  const std::size_t d = trace.front().cols();
  std::vector<DiversitySnapshot> snaps;
  snaps.reserve(trace.size());
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const std::size_t it = iterations.empty() ? k + 1 : iterations[k];
    if (trace[k].rows() != n || trace[k].cols() != d)
      throw FormatError("ragged trace at iteration " + std::to_string(it) + ": expected " +
                        std::to_string(n) + "x" + std::to_string(d) + ", got " +
                        std::to_string(trace[k].rows()) + "x" + std::to_string(trace[k].cols()));
    snaps.push_back(swarm_diversity(trace[k], it));
  }
  return balance_from_series(std::move(snaps));
}

}  // namespace woadiv
