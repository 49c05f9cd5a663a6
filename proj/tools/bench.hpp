#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <redukt/checker.hpp>
#include <redukt/petri.hpp>

namespace redukt {

/// One model/formula pair run through both checking arms.
struct BenchRecord {
  std::string net;
  std::string formula;
  Classification classification;
  VerdictValue semi_value = VerdictValue::Unknown;
  bool semi_trusted = false;
  VerdictValue full_value = VerdictValue::Unknown;
  std::int64_t semi_ms = 0;
  std::int64_t full_ms = 0;
  std::size_t ks_states = 0;         // original state graph
  std::size_t reduced_ks_states = 0; // after agglomeration
  // trusted-match, untrusted-match, untrusted-mismatch, timeout or error.
  std::string agreement;
  std::string error; // parse failure for this pair, empty otherwise
};

struct BenchOptions {
  std::string dir;           // scanned for *.rnet, processed in name order
  std::string formulas_file; // one formula per line, '#' comments allowed
  std::size_t state_limit = 1000000;
  std::int64_t timeout_ms = 0; // per arm; 0 disables the deadline
  unsigned jobs = 0;           // worker threads; 0 picks the hardware count
};

struct BenchResult {
  std::vector<BenchRecord> records; // input order: nets outer, formulas inner
  std::size_t trusted_match = 0;
  std::size_t untrusted_match = 0;
  std::size_t untrusted_mismatch = 0;
  std::size_t timeout = 0;
  std::size_t errors = 0;
};

/// Runs the full matrix on a worker pool. Records land in input order no
/// matter how the pool schedules them. A trusted semi verdict disagreeing
/// with the full verdict throws InternalError; that combination being
/// impossible is the whole point of the trust flag.
BenchResult run_bench(const BenchOptions& opt);

/// Stable JSON rendering: {records: [...], summary: {...}}.
std::string bench_to_json(const BenchResult& r, int indent = 2);

/// Human-readable agreement breakdown with percentages.
std::string bench_summary(const BenchResult& r);

/// Reads and parses one .rnet file; ParseError messages carry the path.
Model load_model_file(const std::string& path);

/// Reads a formula file: one formula per line, blank lines and lines
/// starting with '#' skipped. The formulas are not parsed here since the
/// proposition set depends on the net they run against.
std::vector<std::string> load_formula_lines(const std::string& path);

} // namespace redukt
