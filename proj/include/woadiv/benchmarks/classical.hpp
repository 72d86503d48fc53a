#pragma once

// The 23 classical test functions F1-F23 (unimodal F1-F7, scalable multimodal
// F8-F13, fixed-dimension multimodal F14-F23), written to match the
// reference MATLAB benchmark code that accompanies the original WOA
// experiments. All are minimisation problems.

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>

#include "woadiv/core.hpp"

namespace woadiv::classical {

using std::numbers::pi;

inline double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

// Schwefel 2.22
inline double abs_sum_product(std::span<const double> x) {
  double s = 0.0, p = 1.0;
  for (double v : x) {
    s += std::abs(v);
    p *= std::abs(v);
  }
  return s + p;
}

// Schwefel 1.2
inline double cumulative_sum_squares(std::span<const double> x) {
  double s = 0.0, partial = 0.0;
  for (double v : x) {
    partial += v;
    s += partial * partial;
  }
  return s;
}

// Schwefel 2.21
inline double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

inline double rosenbrock(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = x[i] - 1.0;
    s += 100.0 * a * a + b * b;
  }
  return s;
}

// sum |x + 0.5|^2, minimum 0 at x = -0.5
inline double shifted_step(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) {
    const double t = std::abs(v + 0.5);
    s += t * t;
  }
  return s;
}

// Deterministic part of the noisy quartic; the caller adds U[0,1).
inline double quartic(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v2 = x[i] * x[i];
    s += static_cast<double>(i + 1) * v2 * v2;
  }
  return s;
}

inline double schwefel_sine(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += -v * std::sin(std::sqrt(std::abs(v)));
  return s;
}

inline double rastrigin(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v - 10.0 * std::cos(2.0 * pi * v) + 10.0;
  return s;
}

inline double ackley(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  double sq = 0.0, cs = 0.0;
  for (double v : x) {
    sq += v * v;
    cs += std::cos(2.0 * pi * v);
  }
  return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 + std::numbers::e;
}

inline double griewank(std::span<const double> x) {
  double s = 0.0, p = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += x[i] * x[i];
    p *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return s / 4000.0 - p + 1.0;
}

// Boundary penalty u(x, a, k, m).
inline double penalty(double x, double a, double k, double m) {
  if (x > a) return k * std::pow(x - a, m);
  if (x < -a) return k * std::pow(-x - a, m);
  return 0.0;
}

inline double penalized1(std::span<const double> x) {
  const std::size_t n = x.size();
  auto y = [&](std::size_t i) { return 1.0 + (x[i] + 1.0) / 4.0; };
  const double s0 = std::sin(pi * y(0));
  double s = 10.0 * s0 * s0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d = (x[i] + 1.0) / 4.0;
    const double si = std::sin(pi * y(i + 1));
    s += d * d * (1.0 + 10.0 * si * si);
  }
  const double last = (x[n - 1] + 1.0) / 4.0;
  s += last * last;
  double pen = 0.0;
  for (double v : x) pen += penalty(v, 10.0, 100.0, 4.0);
  return pi / static_cast<double>(n) * s + pen;
}

inline double penalized2(std::span<const double> x) {
  const std::size_t n = x.size();
  const double s0 = std::sin(3.0 * pi * x[0]);
  double s = s0 * s0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d = x[i] - 1.0;
    const double si = std::sin(3.0 * pi * x[i + 1]);
    s += d * d * (1.0 + si * si);
  }
  const double dn = x[n - 1] - 1.0;
  const double sn = std::sin(2.0 * pi * x[n - 1]);
  s += dn * dn * (1.0 + sn * sn);
  double pen = 0.0;
  for (double v : x) pen += penalty(v, 5.0, 100.0, 4.0);
  return 0.1 * s + pen;
}

inline double shekel_foxholes(std::span<const double> x) {
  static constexpr std::array<double, 5> grid = {-32.0, -16.0, 0.0, 16.0, 32.0};
  double s = 1.0 / 500.0;
  for (std::size_t j = 0; j < 25; ++j) {
    const double a0 = grid[j % 5];
    const double a1 = grid[j / 5];
    const double d0 = x[0] - a0, d1 = x[1] - a1;
    const double b = std::pow(d0, 6) + std::pow(d1, 6);
    s += 1.0 / (static_cast<double>(j + 1) + b);
  }
  return 1.0 / s;
}

inline double kowalik(std::span<const double> x) {
  static constexpr std::array<double, 11> a = {0.1957, 0.1947, 0.1735, 0.16,   0.0844, 0.0627,
                                               0.0456, 0.0342, 0.0323, 0.0235, 0.0246};
  static constexpr std::array<double, 11> inv_b = {0.25, 0.5, 1.0, 2.0, 4.0, 6.0,
                                                   8.0,  10.0, 12.0, 14.0, 16.0};
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double b = 1.0 / inv_b[i];
    const double r = a[i] - x[0] * (b * b + x[1] * b) / (b * b + x[2] * b + x[3]);
    s += r * r;
  }
  return s;
}

inline double six_hump_camel(std::span<const double> x) {
  const double a = x[0], b = x[1];
  return 4.0 * a * a - 2.1 * std::pow(a, 4) + std::pow(a, 6) / 3.0 + a * b - 4.0 * b * b +
         4.0 * std::pow(b, 4);
}

inline double branin(std::span<const double> x) {
  const double t = x[1] - x[0] * x[0] * 5.1 / (4.0 * pi * pi) + 5.0 / pi * x[0] - 6.0;
  return t * t + 10.0 * (1.0 - 1.0 / (8.0 * pi)) * std::cos(x[0]) + 10.0;
}

inline double goldstein_price(std::span<const double> x) {
  const double a = x[0], b = x[1];
  const double s1 = a + b + 1.0;
  const double t1 = 19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b;
  const double s2 = 2.0 * a - 3.0 * b;
  const double t2 = 18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b + 27.0 * b * b;
  return (1.0 + s1 * s1 * t1) * (30.0 + s2 * s2 * t2);
}

namespace detail {

inline constexpr std::array<double, 4> hartmann_c = {1.0, 1.2, 3.0, 3.2};

template <std::size_t D>
double hartmann(std::span<const double> x, const std::array<std::array<double, D>, 4>& a,
                const std::array<std::array<double, D>, 4>& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    double inner = 0.0;
    for (std::size_t j = 0; j < D; ++j) {
      const double d = x[j] - p[i][j];
      inner += a[i][j] * d * d;
    }
    s -= hartmann_c[i] * std::exp(-inner);
  }
  return s;
}

inline constexpr std::array<std::array<double, 4>, 10> shekel_a = {{{4, 4, 4, 4},
                                                                   {1, 1, 1, 1},
                                                                   {8, 8, 8, 8},
                                                                   {6, 6, 6, 6},
                                                                   {3, 7, 3, 7},
                                                                   {2, 9, 2, 9},
                                                                   {5, 5, 3, 3},
                                                                   {8, 1, 8, 1},
                                                                   {6, 2, 6, 2},
                                                                   {7, 3.6, 7, 3.6}}};
inline constexpr std::array<double, 10> shekel_c = {0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5};

}  // namespace detail

inline double hartmann3(std::span<const double> x) {
  static constexpr std::array<std::array<double, 3>, 4> a = {
      {{3, 10, 30}, {0.1, 10, 35}, {3, 10, 30}, {0.1, 10, 35}}};
  static constexpr std::array<std::array<double, 3>, 4> p = {{{0.3689, 0.117, 0.2673},
                                                              {0.4699, 0.4387, 0.747},
                                                              {0.1091, 0.8732, 0.5547},
                                                              {0.03815, 0.5743, 0.8828}}};
  return detail::hartmann<3>(x, a, p);
}

inline double hartmann6(std::span<const double> x) {
  static constexpr std::array<std::array<double, 6>, 4> a = {{{10, 3, 17, 3.5, 1.7, 8},
                                                              {0.05, 10, 17, 0.1, 8, 14},
                                                              {3, 3.5, 1.7, 10, 17, 8},
                                                              {17, 8, 0.05, 10, 0.1, 14}}};
  static constexpr std::array<std::array<double, 6>, 4> p = {
      {{0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
       {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
       {0.2348, 0.1415, 0.3522, 0.2883, 0.3047, 0.6650},
       {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}}};
  return detail::hartmann<6>(x, a, p);
}

/// Shekel with the first m of 10 foxholes (m = 5, 7, 10 for F21-F23).
inline double shekel(std::span<const double> x, std::size_t m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double d2 = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
      const double d = x[j] - detail::shekel_a[i][j];
      d2 += d * d;
    }
    s -= 1.0 / (d2 + detail::shekel_c[i]);
  }
  return s;
}

}  // namespace woadiv::classical
