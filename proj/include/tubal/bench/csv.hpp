#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tubal/errors.hpp"
#include "tubal/solve.hpp"

namespace tubal::bench {

namespace fs = std::filesystem;

inline const char* kTraceHeader = "iter,loss,rel_err,balance_gap,sigma_min_gram,lambda,elapsed_s,status";

// Shortest round-trip decimal representation; CSV bytes are then a pure
// function of the double values.
inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string trace_to_csv(const IterTrace& trace) {
  std::ostringstream out;
  out << kTraceHeader << '\n';
  for (const auto& r : trace.rows) {
    out << r.iter << ',' << fmt(r.loss) << ',' << fmt(r.rel_err) << ',' << fmt(r.balance_gap)
        << ',' << fmt(r.sigma_min_gram) << ',' << fmt(r.lambda) << ',' << fmt(r.elapsed_s) << ','
        << status_name(r.status) << '\n';
  }
  return out.str();
}

// Atomic write: a temp file in the target directory, then rename.
inline void write_file_atomic(const fs::path& path, const std::string& content) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("short write to " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

inline void write_trace(const fs::path& path, const IterTrace& trace) {
  write_file_atomic(path, trace_to_csv(trace));
}

// Minimal reader for the trace schema above (tests and summary recomputation).
struct TraceRowCsv {
  Index iter;
  double loss, rel_err, balance_gap, sigma_min_gram, lambda, elapsed_s;
  std::string status;
};

inline std::vector<TraceRowCsv> read_trace(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader)
    throw IoError("bad trace header in " + path.string());
  std::vector<TraceRowCsv> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    TraceRowCsv r;
    char comma;
    ss >> r.iter >> comma >> r.loss >> comma >> r.rel_err >> comma >> r.balance_gap >> comma >>
        r.sigma_min_gram >> comma >> r.lambda >> comma >> r.elapsed_s >> comma;
    std::getline(ss, r.status);
    if (ss.fail()) throw IoError("bad trace row in " + path.string());
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace tubal::bench
