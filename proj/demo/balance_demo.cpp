// Minimal library usage: one WOA run on the sphere function with the
// diversity recorder attached, printing the balance every 50 iterations.

#include <cstdio>

#include "woadiv/woadiv.hpp"

int main() {
  const woadiv::BenchmarkSuite suite;
  const woadiv::ObjectiveFunction sphere = suite.make("F1");

  woadiv::DiversityRecorder recorder;
  const woadiv::RunResult result = woadiv::run(
      sphere, 30, 500, 42,
      [&](std::size_t t, const woadiv::PositionMatrix& m, double best) { recorder(t, m, best); });
  const woadiv::BalanceSeries balance = recorder.balance();

  std::printf("%9s %14s %8s %8s\n", "iteration", "best", "XPL%", "XPT%");
  for (std::size_t t = 0; t < balance.size(); t += 50) {
    std::printf("%9zu %14.6g %8.2f %8.2f\n", t + 1, result.convergence[t], balance.xpl_series[t],
                balance.xpt_series[t]);
  }
  std::printf("run average: XPL %.4f%%, XPT %.4f%%\n", balance.xpl_aggregate, balance.xpt_aggregate);
  return 0;
}
