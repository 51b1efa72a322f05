#pragma once

// Exhaustive and sampled counts of non-generating tuples over prime fields,
// with optional witness classification, deterministic under any worker count.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace invgen {

enum class CensusMode { Exhaustive, Sampled };

struct CensusOptions {
  int n = 1;
  int r = 1;
  uint64_t q = 2;
  CensusMode mode = CensusMode::Exhaustive;
  uint64_t samples = 0;
  uint64_t seed = 0;
  bool classify = false;
  int max_ext = 0;    // 0: defaults to n
  int workers = 0;    // 0: hardware concurrency
  uint64_t budget = 0;  // 0: default (INVGEN_BUDGET env or 10^8)
  std::string checkpoint_path;
  uint64_t stop_after_chunks = 0;  // nonzero: stop early, leaving a resumable checkpoint
};

struct ClassCounts {
  std::vector<uint64_t> subspace_rational;  // per subspace dimension, index i-1
  std::vector<uint64_t> subspace_ext_only;
  uint64_t conj_symmetric = 0;
  uint64_t conj_alternating = 0;
  uint64_t multi_class = 0;

  void resize(int n);
  void merge(const ClassCounts& o);
};

struct CensusReport {
  int n = 0, r = 0;
  uint64_t q = 0;
  CensusMode mode = CensusMode::Exhaustive;
  uint64_t samples = 0, seed = 0;
  bool classified = false;
  bool complete = true;
  uint64_t total = 0;
  uint64_t nongenerating = 0;
  ClassCounts classes;
  double frequency = 0.0;
  double wilson_low = 0.0, wilson_high = 0.0;
  double log_q_nongen = 0.0;  // exhaustive only, NaN when the count is zero
  long long predicted_dim = 0;
  long long predicted_codim = 0;
  double elapsed_seconds = 0.0;
  int workers = 0;
};

uint64_t census_default_budget();

CensusReport run_census(const CensusOptions& opts);

nlohmann::json census_report_json(const CensusReport& rep);

// Least-squares slope of log N(q) against log q over exhaustive reports with
// a common (n, r).
struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
};
ExponentFit exponent_fit(const std::vector<CensusReport>& reports);

}  // namespace invgen
