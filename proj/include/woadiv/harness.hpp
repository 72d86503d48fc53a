#pragma once

// Experiment runner: repeated seeded WOA runs per benchmark function, balance
// aggregation, CSV/JSON-lines persistence and curve emission.
//
// Output layout of a persisted experiment (all under the output directory):
//   report.csv                 one row per function (columns: kReportColumns)
//   tables.txt                 "Exploration: x, Exploitation: y" per function
//   seeds.csv                  function_id,repetition,seed
//   summary.jsonl              experiment record, then one record per function
//   curves/<id>_convergence.csv   iteration,mean_best_fitness
//   curves/<id>_balance.csv       iteration,mean_xpl_pct,mean_xpt_pct
//   traces/<id>_rep<r>.jsonl   only with trace export enabled

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "woadiv/benchmarks/registry.hpp"
#include "woadiv/core.hpp"
#include "woadiv/diversity.hpp"
#include "woadiv/trace.hpp"
#include "woadiv/woa.hpp"

namespace woadiv {

inline constexpr std::string_view kReportColumns =
    "function_id,reps,agents,iterations,mean_best,std_best,mean_xpl_pct,std_xpl_pct,mean_xpt_pct,"
    "std_xpt_pct";

/// Shortest decimal form that parses back to the same double.
[[nodiscard]] inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct ExperimentConfig {
  std::vector<std::string> functions;  // empty: every registered function
  std::size_t repetitions = 30;
  std::size_t agents = 30;
  std::size_t iterations = 500;
  std::uint64_t base_seed = 1;
  std::filesystem::path output_dir;  // empty: do not persist
  bool export_traces = false;
  std::size_t threads = 0;  // 0: hardware concurrency
  WoaOptions woa;

  void validate() const {
    if (repetitions < 1) throw std::invalid_argument("experiment: repetitions must be at least 1");
    if (agents < 2) throw std::invalid_argument("experiment: agents must be at least 2");
    if (iterations < 1) throw std::invalid_argument("experiment: iterations must be at least 1");
    for (const auto& id : functions) (void)find_spec(id);
  }

  [[nodiscard]] std::vector<std::string> resolved_functions() const {
    std::vector<std::string> ids;
    if (functions.empty()) {
      for (const auto& s : registry()) ids.push_back(s.id);
    } else {
      for (const auto& id : functions) ids.push_back(find_spec(id).id);
    }
    return ids;
  }
};

/// Seed of repetition `rep` (0-based).
[[nodiscard]] constexpr std::uint64_t repetition_seed(std::uint64_t base_seed, std::size_t rep) noexcept {
  return base_seed + static_cast<std::uint64_t>(rep);
}

struct RepetitionResult {
  std::uint64_t seed = 0;
  double final_best = 0.0;
  double xpl = 0.0;
  double xpt = 0.0;
  std::vector<double> convergence;
  std::vector<double> xpl_series;
  std::vector<double> xpt_series;
};

struct FunctionReport {
  std::string id;
  std::string suite;
  std::size_t reps = 0;
  std::size_t agents = 0;
  std::size_t iterations = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<double> final_best;
  std::vector<double> xpl;
  std::vector<double> xpt;
  double mean_best = 0.0, std_best = 0.0;
  double mean_xpl = 0.0, std_xpl = 0.0;
  double mean_xpt = 0.0, std_xpt = 0.0;
  std::vector<double> mean_xpl_curve;
  std::vector<double> mean_xpt_curve;
  std::vector<double> mean_convergence;

  friend bool operator==(const FunctionReport&, const FunctionReport&) = default;
};

struct SuiteAverage {
  std::string suite;  // "classical", "cec2019" or "all"
  std::size_t functions = 0;
  double mean_xpl = 0.0;
  double mean_xpt = 0.0;

  friend bool operator==(const SuiteAverage&, const SuiteAverage&) = default;
};

struct ExperimentReport {
  std::size_t repetitions = 0;
  std::size_t agents = 0;
  std::size_t iterations = 0;
  std::uint64_t base_seed = 0;
  std::vector<FunctionReport> functions;
  std::vector<SuiteAverage> suite_averages;

  [[nodiscard]] const FunctionReport* find(std::string_view id) const {
    const std::string key = detail::normalize_id(id);
    for (const auto& f : functions)
      if (f.id == key) return &f;
    return nullptr;
  }
  [[nodiscard]] const FunctionReport& at(std::string_view id) const {
    if (const auto* f = find(id)) return *f;
    throw std::invalid_argument("function '" + std::string(id) + "' is not in the report");
  }
  [[nodiscard]] const SuiteAverage* suite_average(std::string_view suite) const {
    for (const auto& s : suite_averages)
      if (s.suite == suite) return &s;
    return nullptr;
  }

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

namespace detail {

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// Sample standard deviation; 0 for fewer than two values.
inline double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

inline std::vector<SuiteAverage> compute_suite_averages(const std::vector<FunctionReport>& fns) {
  std::vector<SuiteAverage> out;
  for (const std::string suite : {"classical", "cec2019", "all"}) {
    SuiteAverage avg{suite, 0, 0.0, 0.0};
    for (const auto& f : fns) {
      if (suite != "all" && f.suite != suite) continue;
      ++avg.functions;
      avg.mean_xpl += f.mean_xpl;
      avg.mean_xpt += f.mean_xpt;
    }
    if (avg.functions == 0) continue;
    avg.mean_xpl /= static_cast<double>(avg.functions);
    avg.mean_xpt /= static_cast<double>(avg.functions);
    out.push_back(avg);
  }
  return out;
}

inline FunctionReport aggregate(const std::string& id, const ExperimentConfig& cfg,
                                std::vector<RepetitionResult> reps) {
  FunctionReport fr;
  fr.id = id;
  fr.suite = to_string(find_spec(id).suite);
  fr.reps = reps.size();
  fr.agents = cfg.agents;
  fr.iterations = cfg.iterations;
  const std::size_t T = cfg.iterations;
  fr.mean_xpl_curve.assign(T, 0.0);
  fr.mean_xpt_curve.assign(T, 0.0);
  fr.mean_convergence.assign(T, 0.0);
  for (const auto& r : reps) {
    fr.seeds.push_back(r.seed);
    fr.final_best.push_back(r.final_best);
    fr.xpl.push_back(r.xpl);
    fr.xpt.push_back(r.xpt);
    for (std::size_t t = 0; t < T; ++t) {
      fr.mean_xpl_curve[t] += r.xpl_series[t];
      fr.mean_xpt_curve[t] += r.xpt_series[t];
      fr.mean_convergence[t] += r.convergence[t];
    }
  }
  const double n = static_cast<double>(reps.size());
  for (std::size_t t = 0; t < T; ++t) {
    fr.mean_xpl_curve[t] /= n;
    fr.mean_xpt_curve[t] /= n;
    fr.mean_convergence[t] /= n;
  }
  fr.mean_best = mean(fr.final_best);
  fr.std_best = sample_std(fr.final_best);
  fr.mean_xpl = mean(fr.xpl);
  fr.std_xpl = sample_std(fr.xpl);
  fr.mean_xpt = mean(fr.xpt);
  fr.std_xpt = sample_std(fr.xpt);
  return fr;
}

inline void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw std::runtime_error("unwritable output directory '" + dir.string() + "'" +
                             (ec ? ": " + ec.message() : ""));
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace detail

[[nodiscard]] inline std::string trace_file_name(std::string_view id, std::size_t rep) {
  return std::string(id) + "_rep" + std::to_string(rep) + ".jsonl";
}

/// One seeded run with in-run diversity measurement; optionally streams the
/// trace to `trace_out`.
[[nodiscard]] inline RepetitionResult run_repetition(const ObjectiveFunction& f, std::size_t agents,
                                                     std::size_t iterations, std::uint64_t seed,
                                                     const WoaOptions& woa = {},
                                                     std::ostream* trace_out = nullptr,
                                                     BalanceSeries* balance_out = nullptr) {
  DiversityRecorder recorder;
  std::optional<TraceWriter> writer;
  if (trace_out != nullptr)
    writer.emplace(*trace_out, TraceHeader{f.name(), agents, f.dims(), seed, iterations});
  IterationHook hook = [&](std::size_t t, const PositionMatrix& m, double best) {
    recorder(t, m, best);
    if (writer) (*writer)(t, m, best);
  };
  RunResult rr = run(f, agents, iterations, seed, hook, woa);
  BalanceSeries bs = recorder.balance();
  RepetitionResult out;
  out.seed = seed;
  out.final_best = rr.best.fitness;
  out.xpl = bs.xpl_aggregate;
  out.xpt = bs.xpt_aggregate;
  out.convergence = std::move(rr.convergence);
  out.xpl_series = bs.xpl_series;
  out.xpt_series = bs.xpt_series;
  if (balance_out != nullptr) *balance_out = std::move(bs);
  return out;
}

inline void persist_report(const ExperimentReport& report, const std::filesystem::path& dir);

/// Runs repetitions x functions, each repetition r seeded base_seed + r.
/// Independent runs execute on a thread pool; aggregation happens after all
/// runs finish, in repetition order, so the report does not depend on
/// scheduling. Persists to config.output_dir when it is set.
[[nodiscard]] inline ExperimentReport run_experiment(const ExperimentConfig& config,
                                                     const BenchmarkSuite& suite) {
  config.validate();
  const std::vector<std::string> ids = config.resolved_functions();
  if (!config.output_dir.empty()) {
    detail::ensure_directory(config.output_dir);
    if (config.export_traces) detail::ensure_directory(config.output_dir / "traces");
  }

  std::vector<ObjectiveFunction> objectives;
  objectives.reserve(ids.size());
  for (const auto& id : ids) objectives.push_back(suite.make(id));

  const std::size_t reps = config.repetitions;
  const std::size_t jobs = ids.size() * reps;
  std::vector<RepetitionResult> results(jobs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t job = next.fetch_add(1);
      if (job >= jobs) return;
      const std::size_t fi = job / reps;
      const std::size_t rep = job % reps;
      try {
        const std::uint64_t seed = repetition_seed(config.base_seed, rep);
        if (config.export_traces && !config.output_dir.empty()) {
          auto out = detail::open_output(config.output_dir / "traces" / trace_file_name(ids[fi], rep));
          results[job] = run_repetition(objectives[fi], config.agents, config.iterations, seed,
                                        config.woa, &out);
        } else {
          results[job] =
              run_repetition(objectives[fi], config.agents, config.iterations, seed, config.woa);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(jobs);
        return;
      }
    }
  };

  std::size_t threads = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(jobs, 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentReport report;
  report.repetitions = reps;
  report.agents = config.agents;
  report.iterations = config.iterations;
  report.base_seed = config.base_seed;
  for (std::size_t fi = 0; fi < ids.size(); ++fi) {
    std::vector<RepetitionResult> per_fn(std::make_move_iterator(results.begin() + static_cast<std::ptrdiff_t>(fi * reps)),
                                         std::make_move_iterator(results.begin() + static_cast<std::ptrdiff_t>((fi + 1) * reps)));
    report.functions.push_back(detail::aggregate(ids[fi], config, std::move(per_fn)));
  }
  report.suite_averages = detail::compute_suite_averages(report.functions);

  if (!config.output_dir.empty()) persist_report(report, config.output_dir);
  return report;
}

// ---------------------------------------------------------------------------
// Writers

inline void write_report_csv(std::ostream& out, const ExperimentReport& report) {
  out << kReportColumns << '\n';
  for (const auto& f : report.functions) {
    out << f.id << ',' << f.reps << ',' << f.agents << ',' << f.iterations << ','
        << format_double(f.mean_best) << ',' << format_double(f.std_best) << ','
        << format_double(f.mean_xpl) << ',' << format_double(f.std_xpl) << ','
        << format_double(f.mean_xpt) << ',' << format_double(f.std_xpt) << '\n';
  }
}

/// Human-readable table in the "Exploration: x, Exploitation: y" style.
inline void write_tables(std::ostream& out, const ExperimentReport& report) {
  auto fixed4 = [](double v) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(4) << v;
    return s.str();
  };
  for (const std::string suite : {"classical", "cec2019"}) {
    bool header = false;
    for (const auto& f : report.functions) {
      if (f.suite != suite) continue;
      if (!header) {
        out << (suite == "classical" ? "Classical test functions" : "CEC2019 test functions")
            << "\tPercentage of exploration and exploitation (mean over " << f.reps << " runs)\n";
        header = true;
      }
      out << f.id << "\tExploration: " << fixed4(f.mean_xpl) << " (sd " << fixed4(f.std_xpl)
          << "), Exploitation: " << fixed4(f.mean_xpt) << " (sd " << fixed4(f.std_xpt) << ")\n";
    }
    if (const auto* avg = report.suite_average(suite)) {
      out << "Average\tExploration: " << fixed4(avg->mean_xpl)
          << ", Exploitation: " << fixed4(avg->mean_xpt) << "\n\n";
    }
  }
}

inline void write_seed_ledger(std::ostream& out, const ExperimentReport& report) {
  out << "function_id,repetition,seed\n";
  for (const auto& f : report.functions)
    for (std::size_t r = 0; r < f.seeds.size(); ++r) out << f.id << ',' << r << ',' << f.seeds[r] << '\n';
}

inline void write_convergence_csv(std::ostream& out, const FunctionReport& f) {
  out << "iteration,mean_best_fitness\n";
  for (std::size_t t = 0; t < f.mean_convergence.size(); ++t)
    out << (t + 1) << ',' << format_double(f.mean_convergence[t]) << '\n';
}

inline void write_balance_csv(std::ostream& out, const FunctionReport& f) {
  out << "iteration,mean_xpl_pct,mean_xpt_pct\n";
  for (std::size_t t = 0; t < f.mean_xpl_curve.size(); ++t)
    out << (t + 1) << ',' << format_double(f.mean_xpl_curve[t]) << ','
        << format_double(f.mean_xpt_curve[t]) << '\n';
}

/// Writes the convergence and balance curve files of one function into
/// `dir` and returns their paths (convergence first).
inline std::pair<std::filesystem::path, std::filesystem::path> emit_curves(
    const ExperimentReport& report, std::string_view id, const std::filesystem::path& dir) {
  const FunctionReport& f = report.at(id);
  detail::ensure_directory(dir);
  const auto conv = dir / (f.id + "_convergence.csv");
  const auto bal = dir / (f.id + "_balance.csv");
  {
    auto out = detail::open_output(conv);
    write_convergence_csv(out, f);
  }
  {
    auto out = detail::open_output(bal);
    write_balance_csv(out, f);
  }
  return {conv, bal};
}

// --- summary.jsonl ----------------------------------------------------------

inline void write_summary(std::ostream& out, const ExperimentReport& report) {
  nlohmann::json head = {{"kind", "experiment"},
                         {"repetitions", report.repetitions},
                         {"agents", report.agents},
                         {"iterations", report.iterations},
                         {"base_seed", report.base_seed}};
  nlohmann::json avgs = nlohmann::json::array();
  for (const auto& a : report.suite_averages)
    avgs.push_back({{"suite", a.suite}, {"functions", a.functions}, {"mean_xpl", a.mean_xpl}, {"mean_xpt", a.mean_xpt}});
  head["suite_averages"] = std::move(avgs);
  out << head.dump() << '\n';
  for (const auto& f : report.functions) {
    nlohmann::json j = {{"kind", "function"},
                        {"function_id", f.id},
                        {"suite", f.suite},
                        {"reps", f.reps},
                        {"agents", f.agents},
                        {"iterations", f.iterations},
                        {"seeds", f.seeds},
                        {"final_best", f.final_best},
                        {"xpl", f.xpl},
                        {"xpt", f.xpt},
                        {"mean_best", f.mean_best},
                        {"std_best", f.std_best},
                        {"mean_xpl", f.mean_xpl},
                        {"std_xpl", f.std_xpl},
                        {"mean_xpt", f.mean_xpt},
                        {"std_xpt", f.std_xpt},
                        {"mean_xpl_curve", f.mean_xpl_curve},
                        {"mean_xpt_curve", f.mean_xpt_curve},
                        {"mean_convergence", f.mean_convergence}};
    out << j.dump() << '\n';
  }
}

[[nodiscard]] inline ExperimentReport read_summary(std::istream& in) {
  ExperimentReport report;
  std::string line;
  std::size_t line_no = 0;
  bool have_head = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      const std::string kind = j.at("kind").get<std::string>();
      if (kind == "experiment") {
        report.repetitions = j.at("repetitions").get<std::size_t>();
        report.agents = j.at("agents").get<std::size_t>();
        report.iterations = j.at("iterations").get<std::size_t>();
        report.base_seed = j.at("base_seed").get<std::uint64_t>();
        for (const auto& a : j.at("suite_averages"))
          report.suite_averages.push_back({a.at("suite").get<std::string>(), a.at("functions").get<std::size_t>(),
                                           a.at("mean_xpl").get<double>(), a.at("mean_xpt").get<double>()});
        have_head = true;
      } else if (kind == "function") {
        FunctionReport f;
        f.id = j.at("function_id").get<std::string>();
        f.suite = j.at("suite").get<std::string>();
        f.reps = j.at("reps").get<std::size_t>();
        f.agents = j.at("agents").get<std::size_t>();
        f.iterations = j.at("iterations").get<std::size_t>();
        f.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        f.final_best = j.at("final_best").get<std::vector<double>>();
        f.xpl = j.at("xpl").get<std::vector<double>>();
        f.xpt = j.at("xpt").get<std::vector<double>>();
        f.mean_best = j.at("mean_best").get<double>();
        f.std_best = j.at("std_best").get<double>();
        f.mean_xpl = j.at("mean_xpl").get<double>();
        f.std_xpl = j.at("std_xpl").get<double>();
        f.mean_xpt = j.at("mean_xpt").get<double>();
        f.std_xpt = j.at("std_xpt").get<double>();
        f.mean_xpl_curve = j.at("mean_xpl_curve").get<std::vector<double>>();
        f.mean_xpt_curve = j.at("mean_xpt_curve").get<std::vector<double>>();
        f.mean_convergence = j.at("mean_convergence").get<std::vector<double>>();
        report.functions.push_back(std::move(f));
      } else {
        throw FormatError("summary line " + std::to_string(line_no) + ": unknown record kind '" + kind + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw FormatError("summary line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_head) throw FormatError("summary: missing experiment record");
  return report;
}

inline void persist_report(const ExperimentReport& report, const std::filesystem::path& dir) {
  detail::ensure_directory(dir);
  {
    auto out = detail::open_output(dir / "report.csv");
    write_report_csv(out, report);
  }
  {
    auto out = detail::open_output(dir / "tables.txt");
    write_tables(out, report);
  }
  {
    auto out = detail::open_output(dir / "seeds.csv");
    write_seed_ledger(out, report);
  }
  {
    auto out = detail::open_output(dir / "summary.jsonl");
    write_summary(out, report);
  }
  for (const auto& f : report.functions) (void)emit_curves(report, f.id, dir / "curves");
}

}  // namespace woadiv
