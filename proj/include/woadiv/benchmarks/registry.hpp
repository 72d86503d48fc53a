#pragma once

// Registry of the 33 benchmark functions and a suite object that turns an id
// into an ObjectiveFunction.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "woadiv/benchmarks/cec2019.hpp"
#include "woadiv/benchmarks/classical.hpp"
#include "woadiv/core.hpp"

namespace woadiv {

enum class Family { unimodal, multimodal, fixed_dimension_multimodal, composite };

[[nodiscard]] inline const char* to_string(Family f) noexcept {
  switch (f) {
    case Family::unimodal: return "unimodal";
    case Family::multimodal: return "multimodal";
    case Family::fixed_dimension_multimodal: return "fixed-dimension-multimodal";
    case Family::composite: return "composite";
  }
  return "?";
}

enum class Suite { classical, cec2019 };

[[nodiscard]] inline const char* to_string(Suite s) noexcept {
  return s == Suite::classical ? "classical" : "cec2019";
}

struct FunctionSpec {
  std::string id;
  std::string name;
  Suite suite;
  Family family;
  Bounds bounds;
  std::size_t default_dims;
  bool scalable;
  bool noisy;
  std::optional<double> known_optimum;
};

namespace detail {

// Schwefel's sine problem: per-dimension minimum of -x sin(sqrt|x|).
inline constexpr double kSchwefelArgmin = 420.9687462275036;
inline constexpr double kSchwefelMinPerDim = -418.98288727243369;

inline FunctionSpec scalable(std::string id, std::string name, Family family, double lo, double hi,
                             double optimum, bool noisy = false) {
  return {std::move(id), std::move(name), Suite::classical, family, Bounds::uniform(30, lo, hi),
          30, true, noisy, optimum};
}

inline FunctionSpec fixed(std::string id, std::string name, Bounds bounds, double optimum) {
  const std::size_t d = bounds.dims();
  return {std::move(id), std::move(name), Suite::classical, Family::fixed_dimension_multimodal,
          std::move(bounds), d, false, false, optimum};
}

inline FunctionSpec cec(int k, std::string name, std::size_t dims, double lo, double hi) {
  std::string id = "CEC" + std::string(k < 10 ? "0" : "") + std::to_string(k);
  return {std::move(id), std::move(name), Suite::cec2019, Family::composite,
          Bounds::uniform(dims, lo, hi), dims, false, false, cec2019::kBias};
}

// Optima of the fixed-dimension problems were refined numerically from the
// published minimiser locations (Nelder-Mead, double precision).
inline std::vector<FunctionSpec> build_registry() {
  using F = Family;
  std::vector<FunctionSpec> r;
  r.push_back(scalable("F1", "Sphere", F::unimodal, -100, 100, 0.0));
  r.push_back(scalable("F2", "Schwefel 2.22", F::unimodal, -10, 10, 0.0));
  r.push_back(scalable("F3", "Schwefel 1.2", F::unimodal, -100, 100, 0.0));
  r.push_back(scalable("F4", "Schwefel 2.21", F::unimodal, -100, 100, 0.0));
  r.push_back(scalable("F5", "Rosenbrock", F::unimodal, -30, 30, 0.0));
  r.push_back(scalable("F6", "Step", F::unimodal, -100, 100, 0.0));
  r.push_back(scalable("F7", "Quartic with noise", F::unimodal, -1.28, 1.28, 0.0, true));
  r.push_back(scalable("F8", "Schwefel sine", F::multimodal, -500, 500, 30 * kSchwefelMinPerDim));
  r.push_back(scalable("F9", "Rastrigin", F::multimodal, -5.12, 5.12, 0.0));
  r.push_back(scalable("F10", "Ackley", F::multimodal, -32, 32, 0.0));
  r.push_back(scalable("F11", "Griewank", F::multimodal, -600, 600, 0.0));
  r.push_back(scalable("F12", "Penalized 1", F::multimodal, -50, 50, 0.0));
  r.push_back(scalable("F13", "Penalized 2", F::multimodal, -50, 50, 0.0));
  r.push_back(fixed("F14", "Shekel foxholes", Bounds::uniform(2, -65.536, 65.536), 0.9980038377944502));
  r.push_back(fixed("F15", "Kowalik", Bounds::uniform(4, -5, 5), 0.0003074859878056054));
  r.push_back(fixed("F16", "Six-hump camel", Bounds::uniform(2, -5, 5), -1.0316284534898776));
  r.push_back(fixed("F17", "Branin", Bounds({-5, 0}, {10, 15}), 5.0 / (4.0 * std::numbers::pi)));
  r.push_back(fixed("F18", "Goldstein-Price", Bounds::uniform(2, -2, 2), 3.0));
  r.push_back(fixed("F19", "Hartmann 3", Bounds::uniform(3, 0, 1), -3.8627821478207554));
  r.push_back(fixed("F20", "Hartmann 6", Bounds::uniform(6, 0, 1), -3.3219951715842426));
  r.push_back(fixed("F21", "Shekel 5", Bounds::uniform(4, 0, 10), -10.153199679058229));
  r.push_back(fixed("F22", "Shekel 7", Bounds::uniform(4, 0, 10), -10.402940566818664));
  r.push_back(fixed("F23", "Shekel 10", Bounds::uniform(4, 0, 10), -10.536409816692046));

  // Dimensions and ranges from the CEC2019 100-digit challenge definitions.
  r.push_back(cec(1, "Storn's Chebyshev polynomial fitting", 9, -8192, 8192));
  r.push_back(cec(2, "Inverse Hilbert matrix", 16, -16384, 16384));
  r.push_back(cec(3, "Lennard-Jones minimum energy cluster", 18, -4, 4));
  r.push_back(cec(4, "Shifted rotated Rastrigin", 10, -100, 100));
  r.push_back(cec(5, "Shifted rotated Griewank", 10, -100, 100));
  r.push_back(cec(6, "Shifted rotated Weierstrass", 10, -100, 100));
  r.push_back(cec(7, "Shifted rotated Schwefel", 10, -100, 100));
  r.push_back(cec(8, "Shifted rotated expanded Schaffer F6", 10, -100, 100));
  r.push_back(cec(9, "Shifted rotated Happy Cat", 10, -100, 100));
  r.push_back(cec(10, "Shifted rotated Ackley", 10, -100, 100));
  return r;
}

inline std::string normalize_id(std::string_view id) {
  std::string s(id);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  // Accept CEC1 as well as CEC01.
  if (s.size() == 4 && s.rfind("CEC", 0) == 0 && std::isdigit(static_cast<unsigned char>(s[3])))
    s = "CEC0" + s.substr(3);
  return s;
}

}  // namespace detail

/// All 33 functions: F1-F23 followed by CEC01-CEC10.
[[nodiscard]] inline const std::vector<FunctionSpec>& registry() {
  static const std::vector<FunctionSpec> specs = detail::build_registry();
  return specs;
}

/// Ids of one suite, in registry order.
[[nodiscard]] inline std::vector<std::string> suite_ids(Suite s) {
  std::vector<std::string> ids;
  for (const auto& spec : registry())
    if (spec.suite == s) ids.push_back(spec.id);
  return ids;
}

[[nodiscard]] inline const FunctionSpec* try_find_spec(std::string_view id) {
  const std::string key = detail::normalize_id(id);
  for (const auto& spec : registry())
    if (spec.id == key) return &spec;
  return nullptr;
}

[[nodiscard]] inline const FunctionSpec& find_spec(std::string_view id) {
  if (const auto* spec = try_find_spec(id)) return *spec;
  throw std::invalid_argument("unknown function id '" + std::string(id) + "'");
}

/// Default location of the CEC2019 shift/rotation files, set at build time.
[[nodiscard]] inline std::filesystem::path default_cec_data_dir() {
  if (const char* env = std::getenv("WOADIV_CEC_DATA"); env != nullptr && *env != '\0') return env;
#ifdef WOADIV_DEFAULT_CEC_DATA_DIR
  return WOADIV_DEFAULT_CEC_DATA_DIR;
#else
  return "data/cec2019";
#endif
}

/// Builds objectives by id. CEC04-CEC10 need loaded data; everything else
/// works without it.
class BenchmarkSuite {
 public:
  BenchmarkSuite() = default;
  explicit BenchmarkSuite(std::shared_ptr<const cec2019::CecData> data) : data_(std::move(data)) {}

  /// Suite backed by the (cached) data files in `directory`.
  static BenchmarkSuite load(const std::filesystem::path& directory) {
    return BenchmarkSuite(cec2019::cached_cec_data(directory));
  }

  [[nodiscard]] bool has_cec_data() const noexcept { return data_ != nullptr; }
  [[nodiscard]] const cec2019::CecData* cec_data() const noexcept { return data_.get(); }

  /// `dims` overrides the dimension of scalable functions (0 = default).
  [[nodiscard]] ObjectiveFunction make(std::string_view id, std::size_t dims = 0) const {
    const FunctionSpec& spec = find_spec(id);
    Bounds bounds = spec.bounds;
    if (dims != 0 && dims != spec.default_dims) {
      if (!spec.scalable)
        throw std::invalid_argument(spec.id + " has fixed dimension " + std::to_string(spec.default_dims));
      bounds = Bounds::uniform(dims, spec.bounds.lower()[0], spec.bounds.upper()[0]);
    }
    std::optional<double> optimum = spec.known_optimum;
    if (spec.id == "F8") optimum = static_cast<double>(bounds.dims()) * detail::kSchwefelMinPerDim;
    return ObjectiveFunction(spec.id, std::move(bounds), evaluator(spec), optimum, spec.noisy);
  }

  /// One-off evaluation; F7 draws its noise from `noise`.
  [[nodiscard]] double evaluate(std::string_view id, std::span<const double> x, RngStream& noise) const {
    const FunctionSpec& spec = find_spec(id);
    if (!spec.scalable && x.size() != spec.default_dims)
      throw std::invalid_argument(spec.id + ": expected " + std::to_string(spec.default_dims) +
                                  " coordinates, got " + std::to_string(x.size()));
    if (x.empty()) throw std::invalid_argument(spec.id + ": empty position");
    return evaluator(spec)(x, noise);
  }

  [[nodiscard]] double evaluate(std::string_view id, std::span<const double> x) const {
    RngStream noise(0);
    return evaluate(id, x, noise);
  }

  /// A point where the function attains its known optimum, when one is known
  /// in closed form or to full precision.
  [[nodiscard]] std::optional<std::vector<double>> known_minimizer(std::string_view id,
                                                                   std::size_t dims = 0) const {
    const FunctionSpec& spec = find_spec(id);
    const std::size_t d = dims == 0 ? spec.default_dims : dims;
    const std::string& k = spec.id;
    if (k == "F1" || k == "F2" || k == "F3" || k == "F4" || k == "F7" || k == "F9" || k == "F10" ||
        k == "F11")
      return std::vector<double>(d, 0.0);
    if (k == "F5" || k == "F13") return std::vector<double>(d, 1.0);
    if (k == "F6") return std::vector<double>(d, -0.5);
    if (k == "F8") return std::vector<double>(d, detail::kSchwefelArgmin);
    if (k == "F12") return std::vector<double>(d, -1.0);
    if (k == "F14") return std::vector<double>{-31.978332112713616, -31.9783411398899};
    if (k == "F15")
      return std::vector<double>{0.19283345309447808, 0.19083623976686623, 0.12311729917484215,
                                 0.13576599009019955};
    if (k == "F16") return std::vector<double>{0.08984201652927098, -0.7126564013807202};
    if (k == "F17") return std::vector<double>{std::numbers::pi, 2.275};
    if (k == "F18") return std::vector<double>{0.0, -1.0};
    if (k == "F19")
      return std::vector<double>{0.11461434203082951, 0.5556488507905384, 0.8525469538460251};
    if (k == "F20")
      return std::vector<double>{0.20170761975290918, 0.14678094669152925, 0.47674484869803146,
                                 0.2753423903827481,  0.31165187424709895, 0.6572751652997607};
    if (k == "F21")
      return std::vector<double>{4.000037152376549, 4.000133278657566, 4.000037151057555,
                                 4.000133277090425};
    if (k == "F22")
      return std::vector<double>{4.000572914267843, 4.000689365862991, 3.999489710414378,
                                 3.999606160387538};
    if (k == "F23")
      return std::vector<double>{4.000746533201553, 4.000592934538832, 3.9996633972202558,
                                 3.9995098012852255};
    if (k == "CEC01") return std::vector<double>{128, 0, -256, 0, 160, 0, -32, 0, 1};
    if (k == "CEC02")
      return std::vector<double>{16,   -120, 240,   -140,  -120, 1200, -2700, 1680,
                                 240,  -2700, 6480, -4200, -140, 1680, -4200, 2800};
    if (spec.suite == Suite::cec2019 && k != "CEC03" && data_ != nullptr) {
      const int fn = std::stoi(k.substr(3));
      const auto s = data_->shift_for(fn);
      return std::vector<double>(s.begin(), s.end());
    }
    return std::nullopt;
  }

 private:
  [[nodiscard]] ObjectiveFunction::Evaluator evaluator(const FunctionSpec& spec) const {
    namespace c = classical;
    using Span = std::span<const double>;
    if (spec.suite == Suite::cec2019) {
      const int k = std::stoi(spec.id.substr(3));
      if (k >= cec2019::kFirstShifted && data_ == nullptr)
        throw LoadError(spec.id + " needs the CEC2019 data files; required: " + [] {
          std::string s;
          for (const auto& f : cec2019::required_files()) s += (s.empty() ? "" : " ") + f;
          return s;
        }());
      auto data = data_;
      return [k, data](Span x, RngStream&) { return cec2019::evaluate(k, x, data.get()); };
    }
    const int k = std::stoi(spec.id.substr(1));
    auto plain = [](double (*fn)(Span)) -> ObjectiveFunction::Evaluator {
      return [fn](Span x, RngStream&) { return fn(x); };
    };
    switch (k) {
      case 1: return plain(c::sphere);
      case 2: return plain(c::abs_sum_product);
      case 3: return plain(c::cumulative_sum_squares);
      case 4: return plain(c::max_abs);
      case 5: return plain(c::rosenbrock);
      case 6: return plain(c::shifted_step);
      case 7: return [](Span x, RngStream& noise) { return c::quartic(x) + noise.uniform(); };
      case 8: return plain(c::schwefel_sine);
      case 9: return plain(c::rastrigin);
      case 10: return plain(c::ackley);
      case 11: return plain(c::griewank);
      case 12: return plain(c::penalized1);
      case 13: return plain(c::penalized2);
      case 14: return plain(c::shekel_foxholes);
      case 15: return plain(c::kowalik);
      case 16: return plain(c::six_hump_camel);
      case 17: return plain(c::branin);
      case 18: return plain(c::goldstein_price);
      case 19: return plain(c::hartmann3);
      case 20: return plain(c::hartmann6);
      case 21: return [](Span x, RngStream&) { return c::shekel(x, 5); };
      case 22: return [](Span x, RngStream&) { return c::shekel(x, 7); };
      case 23: return [](Span x, RngStream&) { return c::shekel(x, 10); };
      default: throw std::invalid_argument("unknown classical function " + spec.id);
    }
  }

  std::shared_ptr<const cec2019::CecData> data_;
};

}  // namespace woadiv
