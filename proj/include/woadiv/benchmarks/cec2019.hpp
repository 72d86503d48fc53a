#pragma once

// CEC2019 "100-digit challenge" functions CEC01-CEC10.
//
// CEC01-CEC03 are unshifted problems (Storn's Chebyshev fitting, inverse
// Hilbert matrix, 6-atom Lennard-Jones cluster). CEC04-CEC10 evaluate a base
// function at z = M * (rate * (x - o)), with shift o and rotation M read from
// the suite's data files:
//   shift_data_<k>.txt   whitespace-separated reals; the first 10 are used
//   M_<k>_D10.txt        10 rows of 10 whitespace-separated reals
// for k = 4..10. Every function adds 1, so all ten minima equal 1.

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "woadiv/core.hpp"

namespace woadiv::cec2019 {

inline constexpr std::size_t kRotatedDims = 10;
inline constexpr int kFirstShifted = 4;
inline constexpr int kLastShifted = 10;
inline constexpr double kBias = 1.0;

struct CecData {
  // Index k - 4 for function k in 4..10.
  std::array<std::vector<double>, 7> shift;
  std::array<std::vector<double>, 7> rotation;  // row-major 10x10

  [[nodiscard]] std::span<const double> shift_for(int k) const { return shift.at(static_cast<std::size_t>(k - kFirstShifted)); }
  [[nodiscard]] std::span<const double> rotation_for(int k) const {
    return rotation.at(static_cast<std::size_t>(k - kFirstShifted));
  }

  friend bool operator==(const CecData&, const CecData&) = default;
};

[[nodiscard]] inline std::string shift_file_name(int k) { return "shift_data_" + std::to_string(k) + ".txt"; }
[[nodiscard]] inline std::string rotation_file_name(int k) {
  return "M_" + std::to_string(k) + "_D" + std::to_string(kRotatedDims) + ".txt";
}

[[nodiscard]] inline std::vector<std::string> required_files() {
  std::vector<std::string> files;
  for (int k = kFirstShifted; k <= kLastShifted; ++k) {
    files.push_back(shift_file_name(k));
    files.push_back(rotation_file_name(k));
  }
  return files;
}

namespace detail {

// Rows of whitespace-separated reals; blank lines are skipped.
inline std::vector<std::vector<double>> read_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError(path.string() + ": cannot open");
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      if (pos >= line.size()) break;
      std::size_t end = pos;
      while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
      const std::string_view token(line.data() + pos, end - pos);
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size())
        throw LoadError(path.string() + ":" + std::to_string(line_no) + ": malformed number '" +
                        std::string(token) + "'");
      row.push_back(value);
      pos = end;
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

inline std::vector<double> load_shift(const std::filesystem::path& path) {
  const auto rows = read_rows(path);
  std::vector<double> flat;
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  if (flat.size() < kRotatedDims)
    throw LoadError(path.string() + ": shape error, expected at least " + std::to_string(kRotatedDims) +
                    " values, found " + std::to_string(flat.size()));
  flat.resize(kRotatedDims);
  return flat;
}

inline std::vector<double> load_rotation(const std::filesystem::path& path) {
  const auto rows = read_rows(path);
  if (rows.size() != kRotatedDims)
    throw LoadError(path.string() + ": shape error, expected " + std::to_string(kRotatedDims) +
                    " rows, found " + std::to_string(rows.size()));
  std::vector<double> flat;
  flat.reserve(kRotatedDims * kRotatedDims);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != kRotatedDims)
      throw LoadError(path.string() + ": shape error, row " + std::to_string(i + 1) + " has " +
                      std::to_string(rows[i].size()) + " values, expected " +
                      std::to_string(kRotatedDims));
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return flat;
}

}  // namespace detail

/// Parse every shift vector and rotation matrix in `directory`. All missing
/// files are reported together.
[[nodiscard]] inline CecData load_cec_data(const std::filesystem::path& directory) {
  std::vector<std::string> missing;
  for (const auto& f : required_files()) {
    if (!std::filesystem::is_regular_file(directory / f)) missing.push_back(f);
  }
  if (!missing.empty()) {
    std::string msg = "CEC2019 data directory '" + directory.string() + "' is missing:";
    for (const auto& f : missing) msg += " " + f;
    throw LoadError(msg);
  }
  CecData data;
  for (int k = kFirstShifted; k <= kLastShifted; ++k) {
    const auto idx = static_cast<std::size_t>(k - kFirstShifted);
    data.shift[idx] = detail::load_shift(directory / shift_file_name(k));
    data.rotation[idx] = detail::load_rotation(directory / rotation_file_name(k));
  }
  return data;
}

/// Process-wide cache keyed by canonical directory path.
[[nodiscard]] inline std::shared_ptr<const CecData> cached_cec_data(const std::filesystem::path& directory) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const CecData>> cache;
  std::error_code ec;
  auto key = std::filesystem::weakly_canonical(directory, ec).string();
  if (ec) key = directory.string();
  std::lock_guard lock(mutex);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto data = std::make_shared<const CecData>(load_cec_data(directory));
  cache.emplace(key, data);
  return data;
}

// ---------------------------------------------------------------------------
// Unshifted problems

/// Storn's Chebyshev polynomial fitting problem; 0 at the coefficients of
/// T_{D-1}. D = 9 in the suite.
inline double chebyshev(std::span<const double> x) {
  const std::size_t nx = x.size();
  double a = 1.0, b = 1.2, dx = 0.0;
  for (std::size_t j = 0; j + 2 < nx; ++j) {
    dx = 2.4 * b - a;
    a = b;
    b = dx;
  }
  const std::size_t sample = 32 * nx;
  const double dy = 2.0 / static_cast<double>(sample);
  double y = -1.0, sum = 0.0;
  for (std::size_t i = 0; i <= sample; ++i) {
    double px = x[0];
    for (std::size_t j = 1; j < nx; ++j) px = y * px + x[j];
    if (px < -1.0 || px > 1.0) sum += (1.0 - std::abs(px)) * (1.0 - std::abs(px));
    y += dy;
  }
  // The reference evaluates the +1.2 end point twice.
  for (int rep = 0; rep < 2; ++rep) {
    double px = x[0];
    for (std::size_t j = 1; j < nx; ++j) px = 1.2 * px + x[j];
    if (px < dx) sum += px * px;
  }
  return sum;
}

/// Inverse Hilbert matrix problem: sum |H X - I| with X the row-major
/// sqrt(D) x sqrt(D) reshaping of x. D = 16 in the suite.
inline double inverse_hilbert(std::span<const double> x) {
  const auto b = static_cast<std::size_t>(std::sqrt(static_cast<double>(x.size())));
  double sum = 0.0;
  for (std::size_t j = 0; j < b; ++j) {
    for (std::size_t k = 0; k < b; ++k) {
      double y = 0.0;
      for (std::size_t i = 0; i < b; ++i) y += 1.0 / static_cast<double>(i + j + 1) * x[k + b * i];
      sum += (j == k) ? std::abs(y - 1.0) : std::abs(y);
    }
  }
  return sum;
}

/// Lennard-Jones cluster energy of D/3 atoms, offset so the 6-atom optimum is
/// about 0. D = 18 in the suite.
inline double lennard_jones(std::span<const double> x) {
  const std::size_t atoms = x.size() / 3;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < atoms; ++i) {
    for (std::size_t j = i + 1; j < atoms; ++j) {
      const std::size_t a = 3 * i, c = 3 * j;
      const double xd = x[a] - x[c], yd = x[a + 1] - x[c + 1], zd = x[a + 2] - x[c + 2];
      const double ed = xd * xd + yd * yd + zd * zd;
      const double ud = ed * ed * ed;
      if (ud > 1.0e-10)
        sum += (1.0 / ud - 2.0) / ud;
      else
        sum += 1.0e20;
    }
  }
  return sum + 12.7120622568;
}

// ---------------------------------------------------------------------------
// Base functions of the shifted and rotated problems (input already mapped)

inline double rastrigin(std::span<const double> z) {
  double f = 0.0;
  for (double v : z) f += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v) + 10.0;
  return f;
}

inline double griewank(std::span<const double> z) {
  double s = 0.0, p = 1.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    s += z[i] * z[i];
    p *= std::cos(z[i] / std::sqrt(1.0 + static_cast<double>(i)));
  }
  return 1.0 + s / 4000.0 - p;
}

inline double weierstrass(std::span<const double> z) {
  constexpr int k_max = 20;
  // a = 0.5, b = 3: both power tables are exact in double precision.
  struct Tables {
    std::array<double, k_max + 1> ak{};
    std::array<double, k_max + 1> two_pi_bk{};
    double offset = 0.0;
    Tables() {
      for (int k = 0; k <= k_max; ++k) {
        ak[k] = std::pow(0.5, k);
        two_pi_bk[k] = 2.0 * std::numbers::pi * std::pow(3.0, k);
        offset += ak[k] * std::cos(two_pi_bk[k] * 0.5);
      }
    }
  };
  static const Tables t;
  double f = 0.0;
  for (double v : z) {
    for (int k = 0; k <= k_max; ++k) f += t.ak[k] * std::cos(t.two_pi_bk[k] * (v + 0.5));
  }
  return f - static_cast<double>(z.size()) * t.offset;
}

inline double schwefel(std::span<const double> z_in) {
  const double nx = static_cast<double>(z_in.size());
  double f = 0.0;
  for (double v : z_in) {
    const double z = v + 4.209687462275036e+002;
    if (z > 500.0) {
      const double m = std::fmod(z, 500.0);
      f -= (500.0 - m) * std::sin(std::sqrt(500.0 - m));
      const double t = (z - 500.0) / 100.0;
      f += t * t / nx;
    } else if (z < -500.0) {
      const double m = std::fmod(std::abs(z), 500.0);
      f -= (-500.0 + m) * std::sin(std::sqrt(500.0 - m));
      const double t = (z + 500.0) / 100.0;
      f += t * t / nx;
    } else {
      f -= z * std::sin(std::sqrt(std::abs(z)));
    }
  }
  return f + 4.189828872724338e+002 * nx;
}

inline double expanded_schaffer_f6(std::span<const double> z) {
  auto g = [](double u, double v) {
    const double r2 = u * u + v * v;
    const double s = std::sin(std::sqrt(r2));
    const double d = 1.0 + 0.001 * r2;
    return 0.5 + (s * s - 0.5) / (d * d);
  };
  double f = 0.0;
  for (std::size_t i = 0; i + 1 < z.size(); ++i) f += g(z[i], z[i + 1]);
  f += g(z.back(), z.front());
  return f;
}

inline double happy_cat(std::span<const double> z) {
  constexpr double alpha = 1.0 / 8.0;
  const double nx = static_cast<double>(z.size());
  double r2 = 0.0, sum = 0.0;
  for (double v : z) {
    const double t = v - 1.0;
    r2 += t * t;
    sum += t;
  }
  return std::pow(std::abs(r2 - nx), 2.0 * alpha) + (0.5 * r2 + sum) / nx + 0.5;
}

inline double ackley(std::span<const double> z) {
  const double nx = static_cast<double>(z.size());
  double s1 = 0.0, s2 = 0.0;
  for (double v : z) {
    s1 += v * v;
    s2 += std::cos(2.0 * std::numbers::pi * v);
  }
  return -20.0 * std::exp(-0.2 * std::sqrt(s1 / nx)) - std::exp(s2 / nx) + 20.0 + std::numbers::e;
}

/// z = M * (rate * (x - o)).
inline std::vector<double> shift_rotate(std::span<const double> x, std::span<const double> shift,
                                        std::span<const double> rotation, double rate) {
  const std::size_t n = x.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = (x[i] - shift[i]) * rate;
  std::vector<double> z(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) z[i] += y[j] * rotation[i * n + j];
  }
  return z;
}

/// Input scaling applied before rotation for functions 4..10.
[[nodiscard]] inline double shift_rate(int k) {
  switch (k) {
    case 4: return 5.12 / 100.0;
    case 5: return 600.0 / 100.0;
    case 6: return 0.5 / 100.0;
    case 7: return 1000.0 / 100.0;
    case 8: return 1.0;
    case 9: return 5.0 / 100.0;
    case 10: return 1.0;
    default: throw std::invalid_argument("shift_rate: no shifted CEC2019 function " + std::to_string(k));
  }
}

/// CEC2019 function k (1..10) at x, including the +1 bias. Functions 4..10
/// need `data`.
[[nodiscard]] inline double evaluate(int k, std::span<const double> x, const CecData* data) {
  switch (k) {
    case 1: return chebyshev(x) + kBias;
    case 2: return inverse_hilbert(x) + kBias;
    case 3: return lennard_jones(x) + kBias;
    default: break;
  }
  if (k < kFirstShifted || k > kLastShifted)
    throw std::invalid_argument("cec2019::evaluate: no function " + std::to_string(k));
  if (data == nullptr) throw LoadError("CEC" + std::to_string(k) + " requires loaded CEC2019 data");
  const auto z = shift_rotate(x, data->shift_for(k), data->rotation_for(k), shift_rate(k));
  switch (k) {
    case 4: return rastrigin(z) + kBias;
    case 5: return griewank(z) + kBias;
    case 6: return weierstrass(z) + kBias;
    case 7: return schwefel(z) + kBias;
    case 8: return expanded_schaffer_f6(z) + kBias;
    case 9: return happy_cat(z) + kBias;
    default: return ackley(z) + kBias;
  }
}

}  // namespace woadiv::cec2019
