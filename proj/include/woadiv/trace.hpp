#pragma once

// Line-delimited JSON trace of every agent position in a run.
//
// Line 1 (header):
//   {"kind":"header","format":"woadiv-trace","version":1,
//    "function":"F1","n":30,"dims":30,"seed":7,"iterations":500}
// Lines 2.. (one per completed iteration, in order):
//   {"kind":"iteration","iteration":1,"positions":[[x_00,...],[x_10,...],...]}
//
// Doubles are written in shortest round-trip form, so replaying a trace
// reproduces the in-run diversity values bit for bit.

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "woadiv/core.hpp"
#include "woadiv/diversity.hpp"

namespace woadiv {

inline constexpr const char* kTraceFormat = "woadiv-trace";
inline constexpr int kTraceVersion = 1;

struct TraceHeader {
  std::string function;
  std::size_t n = 0;
  std::size_t dims = 0;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;

  friend bool operator==(const TraceHeader&, const TraceHeader&) = default;
};

struct Trace {
  TraceHeader header;
  std::vector<std::size_t> iterations;
  std::vector<PositionMatrix> positions;
};

inline void write_trace_header(std::ostream& out, const TraceHeader& h) {
  nlohmann::json j = {{"kind", "header"},  {"format", kTraceFormat}, {"version", kTraceVersion},
                      {"function", h.function}, {"n", h.n},          {"dims", h.dims},
                      {"seed", h.seed},      {"iterations", h.iterations}};
  out << j.dump() << '\n';
}

inline void write_trace_record(std::ostream& out, std::size_t iteration, const PositionMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  nlohmann::json j = {{"kind", "iteration"}, {"iteration", iteration}, {"positions", std::move(rows)}};
  out << j.dump() << '\n';
}

/// Hook adapter streaming each iteration to `out` as it completes.
class TraceWriter {
 public:
  TraceWriter(std::ostream& out, const TraceHeader& header) : out_(&out) {
    write_trace_header(*out_, header);
  }
  void operator()(std::size_t iteration, const PositionMatrix& positions, double /*best*/) {
    write_trace_record(*out_, iteration, positions);
  }

 private:
  std::ostream* out_;
};

[[nodiscard]] inline Trace read_trace(std::istream& in) {
  Trace trace;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError("trace line " + std::to_string(line_no) + ": invalid JSON (" + e.what() + ")");
    }
    try {
      const std::string kind = j.at("kind").get<std::string>();
      if (!have_header) {
        if (kind != "header")
          throw FormatError("trace line " + std::to_string(line_no) + ": expected header record");
        if (j.at("format").get<std::string>() != kTraceFormat)
          throw FormatError("trace line " + std::to_string(line_no) + ": unknown format");
        trace.header.function = j.at("function").get<std::string>();
        trace.header.n = j.at("n").get<std::size_t>();
        trace.header.dims = j.at("dims").get<std::size_t>();
        trace.header.seed = j.at("seed").get<std::uint64_t>();
        trace.header.iterations = j.value("iterations", std::size_t{0});
        have_header = true;
        continue;
      }
      if (kind != "iteration")
        throw FormatError("trace line " + std::to_string(line_no) + ": unexpected record kind '" + kind + "'");
      const std::size_t it = j.at("iteration").get<std::size_t>();
      const auto& rows = j.at("positions");
      if (!rows.is_array() || rows.size() != trace.header.n)
        throw FormatError("ragged trace at iteration " + std::to_string(it) + " (line " +
                          std::to_string(line_no) + "): expected " + std::to_string(trace.header.n) +
                          " agents, got " + std::to_string(rows.is_array() ? rows.size() : 0));
      PositionMatrix m(trace.header.n, trace.header.dims);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || row.size() != trace.header.dims)
          throw FormatError("ragged trace at iteration " + std::to_string(it) + " (line " +
                            std::to_string(line_no) + "): agent " + std::to_string(i) + " has " +
                            std::to_string(row.is_array() ? row.size() : 0) + " coordinates, expected " +
                            std::to_string(trace.header.dims));
        for (std::size_t d = 0; d < row.size(); ++d) m(i, d) = row[d].get<double>();
      }
      trace.iterations.push_back(it);
      trace.positions.push_back(std::move(m));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError("trace line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) throw FormatError("trace: missing header record");
  if (trace.positions.empty()) throw FormatError("trace: no iteration records");
  return trace;
}

[[nodiscard]] inline BalanceSeries analyze_trace(const Trace& trace) {
  return analyze_positions(trace.positions, trace.iterations);
}

}  // namespace woadiv
