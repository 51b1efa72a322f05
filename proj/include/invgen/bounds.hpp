#pragma once

// Generator-count bounds. Everything here is exact integer arithmetic; the
// floor/ceil bookkeeping is the entire content.

#include <functional>
#include <optional>
#include <vector>

#include "invgen/errors.hpp"

namespace invgen {

inline long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

inline long long ceil_half(long long g) {
  if (g < 0) throw error("ceil_half: negative input");
  return (g + 1) / 2;
}

// Codimension of the non-generating locus as a function of r: (2r-1)(n-1)
// for n >= 2, and r when n == 1.
inline long long codim_of_r(int n, long long r) {
  if (n < 1 || r < 0) throw error("codim_of_r: bad arguments");
  return n == 1 ? r : (2 * r - 1) * static_cast<long long>(n - 1);
}

struct UpperBoundResult {
  int n = 0;
  long long d = 0;
  long long r = 0;             // floor(d / (2n-2) + 3/2)
  long long least_r_exceeding = 0;  // least r with codim_of_r(n, r) > d
  bool verified = false;       // the two agree
};

// floor(d/(2n-2) + 3/2); defined for degree n >= 2 only.
inline UpperBoundResult upper_bound(int n, long long d) {
  if (n < 2) throw error("upper_bound: not covered for n = 1");
  if (d < 0) throw error("upper_bound: d must be >= 0");
  UpperBoundResult res;
  res.n = n;
  res.d = d;
  res.r = (2 * d + 6LL * n - 6) / (4LL * n - 4);
  // least r with (2r-1)(n-1) >= d+1, i.e. 2r-1 >= ceil((d+1)/(n-1)).
  long long t = ceil_div(d + 1, n - 1);
  res.least_r_exceeding = ceil_div(t + 1, 2);
  res.verified = res.r == res.least_r_exceeding;
  return res;
}

// Values realized by known examples in characteristic 0:
// floor(d/4) + 1 for n = 2, floor(d/(4n-4) + 3/2) for n > 2.
inline long long lower_bound_examples(int n, long long d) {
  if (n < 2 || d < 0) throw error("lower_bound_examples: need n >= 2, d >= 0");
  if (n == 2) return d / 4 + 1;
  return (2 * d + 12LL * n - 12) / (8LL * n - 8);
}

// d + 1, valid over noetherian base rings once the degree-2 symplectic
// residue case is excluded.
inline long long noetherian_bound(long long d) {
  if (d < 0) throw error("noetherian_bound: d must be >= 0");
  return d + 1;
}

// Least r with c(r) > d for a user-supplied codimension table (pairs (r, c)),
// or nullopt when no entry qualifies.
inline std::optional<long long> codim_threshold_r_table(
    const std::vector<std::pair<long long, long long>>& table, long long d) {
  if (table.empty()) throw error("codim_threshold_r_table: empty table");
  std::optional<long long> best;
  for (const auto& [r, c] : table)
    if (c > d && (!best || r < *best)) best = r;
  return best;
}

// Same for the closed-form codimension of degree n.
inline long long codim_threshold_r(int n, long long d) {
  if (n < 1 || d < 0) throw error("codim_threshold_r: bad arguments");
  if (n == 1) return d + 1;  // codim r exceeds d first at r = d+1
  long long t = ceil_div(d + 1, n - 1);
  return ceil_div(t + 1, 2);
}

}  // namespace invgen
