// Acceptance suite. Each criterion prints one line:
//   PASS <name>: <summary>    or    FAIL <name>: <summary>
// followed by indented detail lines. Run with no arguments for every
// criterion, or name the criteria to run. Exit status is 1 if any failed.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "../oracles.hpp"
#include "woadiv/woadiv.hpp"

namespace fs = std::filesystem;
using namespace woadiv;

namespace {

struct Outcome {
  bool pass = false;
  std::string summary;
  std::vector<std::string> details;
};

std::string fmt(double v, int prec = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(prec) << v;
  return s.str();
}

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(3) << v;
  return s.str();
}

// Published exploration percentages, one per function.
const std::map<std::string, double> kClassicalReference = {
    {"F1", 45.7196},  {"F2", 51.7746},  {"F3", 58.7007},  {"F4", 56.2336},  {"F5", 46.647},
    {"F6", 49.7779},  {"F7", 58.3987},  {"F8", 41.6489},  {"F9", 49.8063},  {"F10", 56.1418},
    {"F11", 52.3485}, {"F12", 56.5455}, {"F13", 44.8052}, {"F14", 60.9302}, {"F15", 46.94},
    {"F16", 50.239},  {"F17", 62.4855}, {"F18", 54.5377}, {"F19", 45.8668}, {"F20", 47.7914},
    {"F21", 46.624},  {"F22", 44.968},  {"F23", 45.5886}};
const std::map<std::string, double> kCecReference = {
    {"CEC01", 50.8883}, {"CEC02", 53.8929}, {"CEC03", 61.2},    {"CEC04", 57.9113}, {"CEC05", 59.2973},
    {"CEC06", 56.2303}, {"CEC07", 59.7024}, {"CEC08", 59.7618}, {"CEC09", 55.4782}, {"CEC10", 61.5279}};
constexpr double kClassicalStatedAverage = 51.07;
constexpr double kCecStatedAverage = 50.8883;
constexpr double kSuiteTolerance = 5.0;
constexpr double kFunctionTolerance = 15.0;

const BenchmarkSuite& suite() {
  static const BenchmarkSuite s = BenchmarkSuite::load(default_cec_data_dir());
  return s;
}

// Default protocol: 30 repetitions x 30 agents x 500 iterations, base seed 1.
const ExperimentReport& default_experiment(Suite which) {
  static std::map<Suite, ExperimentReport> cache;
  if (auto it = cache.find(which); it != cache.end()) return it->second;
  ExperimentConfig cfg;
  cfg.functions = suite_ids(which);
  return cache.emplace(which, run_experiment(cfg, suite())).first->second;
}

double window_mean(const std::vector<double>& v, std::size_t from, std::size_t to) {
  double s = 0.0;
  for (std::size_t t = from; t < to; ++t) s += v[t];
  return s / static_cast<double>(to - from);
}

// ---------------------------------------------------------------------------

Outcome complementarity() {
  Outcome o;
  double worst_point = 0.0, worst_aggregate = 0.0;
  std::size_t runs = 0;
  for (const auto& spec : registry()) {
    const ObjectiveFunction f = suite().make(spec.id);
    for (std::size_t rep = 0; rep < 30; ++rep) {
      const RepetitionResult r = run_repetition(f, 30, 500, repetition_seed(1, rep));
      for (std::size_t t = 0; t < r.xpl_series.size(); ++t)
        worst_point = std::max(worst_point, std::abs(r.xpl_series[t] + r.xpt_series[t] - 100.0));
      worst_aggregate = std::max(worst_aggregate, std::abs(r.xpl + r.xpt - 100.0));
      ++runs;
    }
  }
  for (const auto* rep : {&default_experiment(Suite::classical), &default_experiment(Suite::cec2019)}) {
    for (const auto& f : rep->functions) {
      worst_aggregate = std::max(worst_aggregate, std::abs(f.mean_xpl + f.mean_xpt - 100.0));
      for (std::size_t t = 0; t < f.mean_xpl_curve.size(); ++t)
        worst_point = std::max(worst_point, std::abs(f.mean_xpl_curve[t] + f.mean_xpt_curve[t] - 100.0));
    }
  }
  o.pass = worst_point <= 1e-9 && worst_aggregate <= 1e-6;
  o.summary = std::to_string(runs) + " runs; max |XPL+XPT-100| per iteration " + sci(worst_point) +
              " (tol 1e-9), aggregates " + sci(worst_aggregate) + " (tol 1e-6)";
  return o;
}

Outcome diversity_oracle() {
  Outcome o;
  RngStream rng(20240101);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng.index(9), d = 1 + rng.index(6);
    const double scale = std::pow(10.0, rng.uniform(-2.0, 3.0));
    std::vector<std::vector<double>> rows(n, std::vector<double>(d));
    PositionMatrix m(n, d);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = rows[i][j] = rng.uniform(-scale, scale);
    const auto expected = oracle::naive_diversity(rows);
    const DiversitySnapshot s = swarm_diversity(m);
    for (std::size_t j = 0; j < d; ++j) {
      worst = std::max(worst, std::abs(dimension_diversity(m, j) - expected.div_j[j]));
      worst = std::max(worst, std::abs(s.div_j[j] - expected.div_j[j]));
    }
    worst = std::max(worst, std::abs(s.div - expected.div));
  }
  o.pass = worst <= 1e-12;
  o.summary = "1000 random populations (n 2..10, D 1..6); max deviation " + sci(worst) + " (tol 1e-12)";
  return o;
}

Outcome woa_micro_oracle() {
  Outcome o;
  const ObjectiveFunction f = BenchmarkSuite().make("F1", 1);
  double worst = 0.0, worst_best = 0.0;
  int explored = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const oracle::MicroRun expected = oracle::woa_micro_oracle(seed);
    std::vector<PositionMatrix> seen;
    const RunResult r = run(f, 2, 3, seed, [&](std::size_t, const PositionMatrix& m, double) { seen.push_back(m); });
    for (std::size_t t = 0; t < 3; ++t) {
      for (std::size_t i = 0; i < 2; ++i)
        worst = std::max(worst, std::abs(seen[t](i, 0) - expected.positions[t + 1][i]));
      worst_best = std::max(worst_best, std::abs(r.convergence[t] - expected.best[t + 1]) /
                                            std::max(1.0, std::abs(expected.best[t + 1])));
      explored += expected.explore_count[t];
    }
  }
  o.pass = worst <= 1e-12 && worst_best <= 1e-12 && explored > 0;
  o.summary = "seeds 1..100, 2 agents, 1-D, 3 iterations; max position deviation " + sci(worst) +
              " (tol 1e-12), best fitness relative " + sci(worst_best) + "; explore updates exercised " +
              std::to_string(explored);
  return o;
}

Outcome schedule_and_branches() {
  Outcome o;
  bool ok = coefficient_a(0, 500) == 2.0 && coefficient_a(500, 500) == 0.0 && coefficient_a(0, 1) == 2.0 &&
            coefficient_a(1, 1) == 0.0;
  o.details.push_back("a(0)=" + fmt(coefficient_a(0, 500)) + " a(T)=" + fmt(coefficient_a(500, 500)));

  RngStream rng(99);
  std::size_t violations = 0;
  for (int i = 0; i < 100000; ++i) {
    const double a = coefficient_a(rng.index(501), 500);
    if (std::abs(sample_coefficients(a, rng).A) > a) ++violations;
  }
  o.details.push_back("|A| > a in " + std::to_string(violations) + " of 100000 draws");
  ok = ok && violations == 0;

  std::size_t late_explore = 0, runs = 0, spiral = 0, updates = 0;
  double worst_spiral = 0.0;
  for (const auto& spec : registry()) {
    const ObjectiveFunction f = suite().make(spec.id);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const RunResult r = run(f, 30, 500, seed);
      for (std::size_t t = 250; t < 500; ++t) late_explore += r.branches[t].explore;
      const BranchCounts c = r.total_branches();
      worst_spiral = std::max(worst_spiral, std::abs(static_cast<double>(c.spiral) / static_cast<double>(c.total()) - 0.5));
      spiral += c.spiral;
      updates += c.total();
      ++runs;
    }
  }
  const double freq = static_cast<double>(spiral) / static_cast<double>(updates);
  o.details.push_back(std::to_string(runs) + " runs: explore updates in second half " + std::to_string(late_explore));
  o.details.push_back("spiral frequency pooled " + fmt(freq) + " over " + std::to_string(updates) +
                      " updates; worst single run (15000 updates) off by " + fmt(worst_spiral));
  ok = ok && late_explore == 0 && std::abs(freq - 0.5) <= 0.03 && worst_spiral <= 0.03;
  o.pass = ok;
  o.summary = "a schedule endpoints, |A|<=a, no late explore, spiral " + fmt(100.0 * freq, 2) + "% (50 +/- 3)";
  return o;
}

Outcome balance_reproduction(Suite which) {
  Outcome o;
  const ExperimentReport& rep = default_experiment(which);
  const auto& reference = which == Suite::classical ? kClassicalReference : kCecReference;
  double ref_mean = 0.0;
  for (const auto& [id, v] : reference) ref_mean += v;
  ref_mean /= static_cast<double>(reference.size());

  std::size_t within = 0;
  for (const auto& f : rep.functions) {
    const double ref = reference.at(f.id);
    const double diff = f.mean_xpl - ref;
    const bool ok = std::abs(diff) <= kFunctionTolerance;
    within += ok ? 1 : 0;
    o.details.push_back(f.id + " exploration " + fmt(f.mean_xpl) + " (sd " + fmt(f.std_xpl) + ") reference " +
                        fmt(ref) + " diff " + fmt(diff, 2) + (ok ? "" : "  OUTSIDE +/-15"));
  }
  const double avg = rep.suite_average(to_string(which))->mean_xpl;
  const double target = which == Suite::classical ? kClassicalStatedAverage : ref_mean;
  const bool avg_ok = std::abs(avg - target) <= kSuiteTolerance;
  if (which == Suite::cec2019)
    o.details.push_back("stated suite average " + fmt(kCecStatedAverage) + " equals the CEC01 row; mean of the "
                        "published column is " + fmt(ref_mean) + " and is used as the target");
  o.pass = avg_ok && within == rep.functions.size();
  o.summary = "suite average exploration " + fmt(avg) + " vs " + fmt(target) + " +/- 5" + (avg_ok ? "" : " (outside)") +
              "; " + std::to_string(within) + "/" + std::to_string(rep.functions.size()) +
              " functions within +/-15";
  return o;
}

Outcome curve_shape() {
  Outcome o;
  std::size_t shaped = 0;
  std::vector<std::string> plateau;
  for (const auto* rep : {&default_experiment(Suite::classical), &default_experiment(Suite::cec2019)}) {
    for (const auto& f : rep->functions) {
      const std::size_t T = f.mean_xpl_curve.size();
      const double early_xpl = window_mean(f.mean_xpl_curve, 0, 25);
      const double late_xpt = window_mean(f.mean_xpt_curve, T - 25, T);
      const bool ok = early_xpl >= 55.0 && early_xpl <= 85.0 && late_xpt > 65.0;
      if (f.suite == "classical" && ok) ++shaped;
      if (std::abs(late_xpt - 40.0) <= 15.0) plateau.push_back(f.id);
      o.details.push_back(f.id + " early XPL (it 1-25) " + fmt(early_xpl, 2) + ", late XPT (last 25) " +
                          fmt(late_xpt, 2) + (f.suite == "classical" ? (ok ? "  shaped" : "") : ""));
    }
  }
  o.pass = shaped >= 15 && !plateau.empty();
  std::string names;
  for (const auto& p : plateau) names += (names.empty() ? "" : ",") + p;
  o.summary = std::to_string(shaped) + "/23 classical functions with early XPL in [55,85] and late XPT > 65 "
              "(need 15); functions with late XPT within 40 +/- 15: " + (names.empty() ? "none" : names) +
              " (need 1)";
  return o;
}

Outcome benchmark_optima() {
  Outcome o;
  double worst = 0.0;
  std::size_t checked = 0;
  auto check = [&](const std::string& label, double got, double want) {
    const double err = std::abs(got - want);
    worst = std::max(worst, err);
    ++checked;
    if (err > 1e-8) o.details.push_back(label + " value " + fmt(got, 12) + " expected " + fmt(want, 12));
  };
  const std::vector<double> origin(30, 0.0);
  for (const char* id : {"F1", "F9", "F10", "F11"}) check(std::string(id) + " at origin", suite().evaluate(id, origin), 0.0);
  for (const auto& spec : registry()) {
    if (spec.noisy) continue;
    const auto x = suite().known_minimizer(spec.id);
    if (x) check(spec.id + " at known minimizer", suite().evaluate(spec.id, *x), *spec.known_optimum);
  }
  const double s = 0.9955311806419267 / std::sqrt(2.0);
  const std::vector<double> octahedron{s, 0, 0, -s, 0, 0, 0, s, 0, 0, -s, 0, 0, 0, s, 0, 0, -s};
  check("CEC03 at the 6-atom octahedron", suite().evaluate("CEC03", octahedron), 1.0);
  o.pass = worst <= 1e-8;
  o.summary = std::to_string(checked) + " optimum checks; max error " + sci(worst) + " (tol 1e-8)";
  return o;
}

Outcome determinism() {
  Outcome o;
  const fs::path base = fs::temp_directory_path() / ("woadiv_accept_" + std::to_string(::getpid()));
  fs::remove_all(base);
  const std::vector<fs::path> dirs{base / "a", base / "b"};
  for (const auto& d : dirs) {
    const std::string cmd = "\"" WOADIV_CLI_PATH "\" experiment --seed 1 --out \"" + d.string() + "\" > /dev/null";
    if (std::system(cmd.c_str()) != 0) {
      o.summary = "experiment command failed: " + cmd;
      fs::remove_all(base);
      return o;
    }
  }
  auto read = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  std::size_t files = 0, differing = 0;
  for (const auto& e : fs::recursive_directory_iterator(dirs[0])) {
    if (!e.is_regular_file() || e.path().extension() != ".csv") continue;
    const fs::path rel = fs::relative(e.path(), dirs[0]);
    ++files;
    if (!fs::exists(dirs[1] / rel) || read(e.path()) != read(dirs[1] / rel)) {
      ++differing;
      o.details.push_back("differs: " + rel.string());
    }
  }
  fs::remove_all(base);
  o.pass = files > 0 && differing == 0;
  o.summary = "two full default experiments; " + std::to_string(files) + " CSV files compared, " +
              std::to_string(differing) + " differ";
  return o;
}

struct Criterion {
  std::string name;
  std::function<Outcome()> check;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {"complementarity", complementarity},
      {"diversity-oracle", diversity_oracle},
      {"woa-micro-oracle", woa_micro_oracle},
      {"schedule-branches", schedule_and_branches},
      {"balance-classical", [] { return balance_reproduction(Suite::classical); }},
      {"balance-cec2019", [] { return balance_reproduction(Suite::cec2019); }},
      {"curve-shape", curve_shape},
      {"benchmark-optima", benchmark_optima},
      {"determinism", determinism},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> wanted(argv + 1, argv + argc);
  for (const auto& w : wanted) {
    if (std::none_of(criteria().begin(), criteria().end(), [&](const Criterion& c) { return c.name == w; })) {
      std::cerr << "unknown criterion '" << w << "'; known:";
      for (const auto& c : criteria()) std::cerr << ' ' << c.name;
      std::cerr << '\n';
      return 2;
    }
  }
  int failed = 0;
  for (const auto& c : criteria()) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.name) == wanted.end()) continue;
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("exception: ") + e.what();
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << ": " << o.summary << '\n';
    for (const auto& d : o.details) std::cout << "    " << d << '\n';
    std::cout.flush();
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
