// woadiv command-line interface.
//
//   woadiv bench list
//   woadiv run --function F1 [--agents 30] [--iterations 500] [--seed 1] [--trace]
//   woadiv experiment [--functions F1,F2] [--reps 30] [--agents 30] [--iterations 500]
//   woadiv analyze TRACE
//   woadiv report --summary DIR/summary.jsonl
//
// Every subcommand accepts --seed and --out. The output directory defaults to
// $WOADIV_OUT, then ./woadiv-out; an explicit --out always wins.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "woadiv/woadiv.hpp"

namespace fs = std::filesystem;
using namespace woadiv;

namespace {

constexpr int kUsageError = 2;

fs::path resolve_out(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("WOADIV_OUT"); env != nullptr && *env != '\0') return env;
  return "woadiv-out";
}

BenchmarkSuite load_suite(const std::string& data_flag, bool required) {
  const fs::path dir = data_flag.empty() ? default_cec_data_dir() : fs::path(data_flag);
  if (!required && !fs::is_directory(dir)) return BenchmarkSuite();
  return BenchmarkSuite::load(dir);
}

bool needs_cec_data(const std::vector<std::string>& ids) {
  for (const auto& id : ids) {
    const auto& spec = find_spec(id);
    if (spec.suite == Suite::cec2019 && spec.id >= "CEC04") return true;
  }
  return false;
}

std::string bounds_text(const Bounds& b) {
  bool same = true;
  for (std::size_t j = 1; j < b.dims(); ++j)
    same = same && b.lower()[j] == b.lower()[0] && b.upper()[j] == b.upper()[0];
  if (same) return "[" + format_double(b.lower()[0]) + "," + format_double(b.upper()[0]) + "]";
  std::string s;
  for (std::size_t j = 0; j < b.dims(); ++j) {
    s += (j ? " " : "");
    s += "[" + format_double(b.lower()[j]) + "," + format_double(b.upper()[j]) + "]";
  }
  return s;
}

void write_balance_series_csv(std::ostream& out, const BalanceSeries& bs) {
  out << "iteration,div,xpl_pct,xpt_pct\n";
  for (std::size_t t = 0; t < bs.size(); ++t)
    out << bs.div_series[t].iteration << ',' << format_double(bs.div_series[t].div) << ','
        << format_double(bs.xpl_series[t]) << ',' << format_double(bs.xpt_series[t]) << '\n';
}

void print_aggregates(std::ostream& out, const BalanceSeries& bs) {
  out << "div_max " << format_double(bs.div_max) << '\n'
      << "xpl_pct " << format_double(bs.xpl_aggregate) << '\n'
      << "xpt_pct " << format_double(bs.xpt_aggregate) << '\n';
}

std::vector<std::string> split_ids(const std::vector<std::string>& raw) {
  std::vector<std::string> ids;
  for (const auto& item : raw) {
    std::stringstream ss(item);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) ids.push_back(tok);
  }
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Instrumented Whale Optimization Algorithm with exploration/exploitation measurement"};
  app.require_subcommand(1);

  std::string out_flag;
  std::uint64_t seed = 1;
  std::string data_flag;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Base random seed");
    sub->add_option("--out", out_flag, "Output directory (default $WOADIV_OUT or ./woadiv-out)");
    sub->add_option("--data", data_flag, "CEC2019 data directory");
  };

  // bench list
  auto* bench = app.add_subcommand("bench", "Benchmark registry");
  bench->require_subcommand(1);
  auto* bench_list = bench->add_subcommand("list", "One line per function: id family dims bounds");
  common(bench_list);

  // run
  auto* run_cmd = app.add_subcommand("run", "Single seeded run, optional trace export");
  std::string run_fn;
  std::size_t run_agents = 30, run_iters = 500;
  bool run_trace = false;
  run_cmd->add_option("--function,-f", run_fn, "Function id")->required();
  run_cmd->add_option("--agents", run_agents, "Number of search agents")->check(CLI::Range(2, 1 << 20));
  run_cmd->add_option("--iterations", run_iters, "Number of iterations")->check(CLI::Range(1, 1 << 24));
  run_cmd->add_flag("--trace", run_trace, "Write the full position trace");
  common(run_cmd);

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "Repeated runs over functions, balance report");
  std::vector<std::string> exp_fns;
  ExperimentConfig cfg;
  exp_cmd->add_option("--functions", exp_fns, "Function ids (comma separated); default all 33");
  exp_cmd->add_option("--reps", cfg.repetitions, "Repetitions per function")->check(CLI::Range(1, 1 << 20));
  exp_cmd->add_option("--agents", cfg.agents, "Search agents")->check(CLI::Range(2, 1 << 20));
  exp_cmd->add_option("--iterations", cfg.iterations, "Iterations per run")->check(CLI::Range(1, 1 << 24));
  exp_cmd->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
  exp_cmd->add_flag("--traces", cfg.export_traces, "Write one trace file per repetition");
  common(exp_cmd);

  // analyze
  auto* an_cmd = app.add_subcommand("analyze", "Offline balance analysis of a trace file");
  std::string trace_path;
  an_cmd->add_option("trace", trace_path, "Trace file written by run --trace")->required();
  common(an_cmd);

  // report
  auto* rep_cmd = app.add_subcommand("report", "Re-emit tables and curves from a stored summary");
  std::string summary_path;
  rep_cmd->add_option("--summary", summary_path, "summary.jsonl of an experiment")->required();
  common(rep_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "woadiv: " << e.what() << '\n' << app.help();
    return kUsageError;
  }

  try {
    if (bench_list->parsed()) {
      for (const auto& spec : registry()) {
        std::cout << spec.id << ' ' << to_string(spec.family) << ' ' << spec.default_dims << ' '
                  << bounds_text(spec.bounds) << '\n';
      }
      return 0;
    }

    const fs::path out = resolve_out(out_flag);

    if (run_cmd->parsed()) {
      const auto& spec = find_spec(run_fn);
      const BenchmarkSuite suite = load_suite(data_flag, needs_cec_data({spec.id}));
      const ObjectiveFunction f = suite.make(spec.id);
      fs::create_directories(out);
      const std::string stem = spec.id + "_seed" + std::to_string(seed);
      std::ofstream trace_file;
      if (run_trace) {
        trace_file.open(out / (stem + "_trace.jsonl"), std::ios::binary | std::ios::trunc);
        if (!trace_file) throw std::runtime_error("cannot write trace in '" + out.string() + "'");
      }
      BalanceSeries bs;
      const RepetitionResult r =
          run_repetition(f, run_agents, run_iters, seed, {}, run_trace ? &trace_file : nullptr, &bs);
      {
        std::ofstream csv(out / (stem + "_balance.csv"), std::ios::binary | std::ios::trunc);
        write_balance_series_csv(csv, bs);
      }
      {
        std::ofstream csv(out / (stem + "_convergence.csv"), std::ios::binary | std::ios::trunc);
        csv << "iteration,best_fitness\n";
        for (std::size_t t = 0; t < r.convergence.size(); ++t)
          csv << (t + 1) << ',' << format_double(r.convergence[t]) << '\n';
      }
      std::cout << "function " << spec.id << '\n'
                << "seed " << seed << '\n'
                << "best_fitness " << format_double(r.final_best) << '\n';
      print_aggregates(std::cout, bs);
      return 0;
    }

    if (exp_cmd->parsed()) {
      cfg.functions = split_ids(exp_fns);
      cfg.base_seed = seed;
      cfg.output_dir = out;
      cfg.validate();
      const BenchmarkSuite suite = load_suite(data_flag, needs_cec_data(cfg.resolved_functions()));
      const ExperimentReport report = run_experiment(cfg, suite);
      write_report_csv(std::cout, report);
      for (const auto& avg : report.suite_averages)
        std::cout << "# " << avg.suite << " average over " << avg.functions
                  << " functions: xpl " << format_double(avg.mean_xpl) << " xpt "
                  << format_double(avg.mean_xpt) << '\n';
      return 0;
    }

    if (an_cmd->parsed()) {
      std::ifstream in(trace_path, std::ios::binary);
      if (!in) throw std::runtime_error("cannot open trace '" + trace_path + "'");
      const Trace trace = read_trace(in);
      const BalanceSeries bs = analyze_trace(trace);
      fs::create_directories(out);
      const std::string stem = trace.header.function + "_seed" + std::to_string(trace.header.seed);
      std::ofstream csv(out / (stem + "_analysis.csv"), std::ios::binary | std::ios::trunc);
      write_balance_series_csv(csv, bs);
      std::cout << "function " << trace.header.function << '\n'
                << "seed " << trace.header.seed << '\n'
                << "iterations " << bs.size() << '\n';
      print_aggregates(std::cout, bs);
      return 0;
    }

    if (rep_cmd->parsed()) {
      std::ifstream in(summary_path, std::ios::binary);
      if (!in) throw std::runtime_error("cannot open summary '" + summary_path + "'");
      const ExperimentReport report = read_summary(in);
      persist_report(report, out);
      std::ifstream tables(out / "tables.txt");
      std::cout << tables.rdbuf();
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "woadiv: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
