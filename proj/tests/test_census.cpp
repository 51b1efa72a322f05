#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>

#include "invgen/census.hpp"
#include "invgen/errors.hpp"

using namespace invgen;

static CensusReport masked(CensusReport r) {
  r.elapsed_seconds = 0;
  r.workers = 0;
  return r;
}

static bool same_counts(const CensusReport& a, const CensusReport& b) {
  auto ja = census_report_json(masked(a));
  auto jb = census_report_json(masked(b));
  return ja == jb;
}

TEST_CASE("n = 1 exhaustive counts are exactly q^r") {
  for (uint64_t q : {2ull, 3ull, 5ull})
    for (int r : {1, 2, 3}) {
      CensusOptions o;
      o.n = 1;
      o.r = r;
      o.q = q;
      o.workers = 2;
      auto rep = run_census(o);
      uint64_t expect = 1;
      for (int i = 0; i < r; ++i) expect *= q;
      CHECK(rep.nongenerating == expect);
      uint64_t total = 1;
      for (int i = 0; i < 2 * r; ++i) total *= q;
      CHECK(rep.total == total);
    }
}

TEST_CASE("worker count does not change the report") {
  CensusOptions o;
  o.n = 2;
  o.r = 1;
  o.q = 3;
  o.workers = 1;
  auto r1 = run_census(o);
  o.workers = 2;
  auto r2 = run_census(o);
  o.workers = 5;
  auto r5 = run_census(o);
  CHECK(r1.total == 6561);
  CHECK(same_counts(r1, r2));
  CHECK(same_counts(r1, r5));
  CHECK(r1.nongenerating > 0);
}

TEST_CASE("checkpointing: partial run resumes to the same totals") {
  std::string path = "census_ckpt_test.json";
  std::remove(path.c_str());
  CensusOptions o;
  o.n = 2;
  o.r = 1;
  o.q = 5;
  o.workers = 2;

  auto direct = run_census(o);
  CHECK(direct.total == 390625);

  CensusOptions partial = o;
  partial.checkpoint_path = path;
  partial.stop_after_chunks = 10;
  auto first = run_census(partial);
  CHECK_FALSE(first.complete);
  CHECK(first.total < direct.total);

  CensusOptions resume = o;
  resume.checkpoint_path = path;
  auto finished = run_census(resume);
  CHECK(finished.complete);
  CHECK(same_counts(finished, direct));

  // Parameter mismatch is refused.
  CensusOptions other = o;
  other.q = 7;
  other.checkpoint_path = path;
  CHECK_THROWS_AS(run_census(other), validation_error);
  std::remove(path.c_str());
}

TEST_CASE("sampled censuses are seed-deterministic") {
  CensusOptions o;
  o.n = 2;
  o.r = 1;
  o.q = 5;
  o.mode = CensusMode::Sampled;
  o.samples = 20000;
  o.seed = 12345;
  o.workers = 2;
  auto a = run_census(o);
  o.workers = 1;
  auto b = run_census(o);
  CHECK(same_counts(a, b));
  o.seed = 54321;
  auto c = run_census(o);
  CHECK_FALSE(same_counts(a, c));  // different seed, different sample set
}

TEST_CASE("sampled frequency tracks the exact rate for n = 1") {
  // n = 1, r = 1: exactly q of q^2 tuples fail to generate.
  CensusOptions o;
  o.n = 1;
  o.r = 1;
  o.q = 3;
  o.mode = CensusMode::Sampled;
  o.samples = 20000;
  o.seed = 7;
  o.workers = 2;
  auto rep = run_census(o);
  double truth = 1.0 / 3.0;
  CHECK(rep.wilson_low < truth);
  CHECK(truth < rep.wilson_high);

  // n = 1, r = 3 at q = 2: rate exactly 1/8; five sigma of binomial noise.
  CensusOptions o2;
  o2.n = 1;
  o2.r = 3;
  o2.q = 2;
  o2.mode = CensusMode::Sampled;
  o2.samples = 20000;
  o2.seed = 11;
  o2.workers = 2;
  auto rep2 = run_census(o2);
  double p = 1.0 / 8.0;
  double sigma = std::sqrt(p * (1 - p) / 20000.0);
  CHECK(std::abs(rep2.frequency - p) < 5 * sigma);
}

TEST_CASE("exponent fit on exact n = 1 data has slope r") {
  std::vector<CensusReport> reports;
  for (uint64_t q : {2ull, 3ull, 5ull}) {
    CensusOptions o;
    o.n = 1;
    o.r = 2;
    o.q = q;
    o.workers = 2;
    reports.push_back(run_census(o));
  }
  auto fit = exponent_fit(reports);
  CHECK(std::abs(fit.slope - 2.0) < 1e-9);

  std::vector<CensusReport> one = {reports[0]};
  CHECK_THROWS_AS(exponent_fit(one), error);
  auto mixed = reports;
  mixed[1].mode = CensusMode::Sampled;
  CHECK_THROWS_AS(exponent_fit(mixed), error);
  auto same_q = std::vector<CensusReport>{reports[0], reports[0]};
  CHECK_THROWS_AS(exponent_fit(same_q), error);
}

TEST_CASE("classified census: every class populated at (n, r, q) = (2, 1, 2)") {
  CensusOptions o;
  o.n = 2;
  o.r = 1;
  o.q = 2;
  o.classify = true;
  o.workers = 2;
  auto rep = run_census(o);  // throws theory_violation on any gap
  CHECK(rep.total == 256);
  CHECK(rep.nongenerating > 0);
  REQUIRE(rep.classes.subspace_rational.size() == 1);
  CHECK(rep.classes.subspace_rational[0] > 0);
  CHECK(rep.classes.subspace_ext_only[0] > 0);
  CHECK(rep.classes.conj_symmetric > 0);
  CHECK(rep.classes.conj_alternating > 0);
  CHECK(rep.classes.multi_class > 0);
  // Tallies never exceed the non-generating count.
  CHECK(rep.classes.subspace_rational[0] + rep.classes.subspace_ext_only[0] <= rep.nongenerating);
  CHECK(rep.classes.conj_symmetric <= rep.nongenerating);
  CHECK(rep.classes.conj_alternating <= rep.nongenerating);
  CHECK(rep.classes.multi_class <= rep.nongenerating);

  // Classified reports stay worker-deterministic.
  o.workers = 1;
  auto rep1 = run_census(o);
  CHECK(same_counts(rep, rep1));
}

TEST_CASE("sampled censuses can classify too") {
  CensusOptions o;
  o.n = 2;
  o.r = 1;
  o.q = 3;
  o.mode = CensusMode::Sampled;
  o.samples = 3000;
  o.seed = 99;
  o.classify = true;
  o.workers = 2;
  auto rep = run_census(o);
  CHECK(rep.total == 3000);
  CHECK(rep.nongenerating > 0);
  uint64_t classed = rep.classes.subspace_rational[0] + rep.classes.subspace_ext_only[0] +
                     rep.classes.conj_symmetric + rep.classes.conj_alternating;
  CHECK(classed >= rep.nongenerating);  // every non-generator carries a witness
  o.workers = 1;
  CHECK(same_counts(rep, run_census(o)));
}

TEST_CASE("budget refusal suggests sampling") {
  CensusOptions o;
  o.n = 2;
  o.r = 1;
  o.q = 11;  // 11^8 > 10^8 default budget
  try {
    run_census(o);
    FAIL("expected budget_error");
  } catch (const budget_error& e) {
    CHECK(std::string(e.what()).find("sampled") != std::string::npos);
  }
}

TEST_CASE("report json carries the schema fields") {
  CensusOptions o;
  o.n = 1;
  o.r = 1;
  o.q = 2;
  o.workers = 1;
  auto rep = run_census(o);
  auto j = census_report_json(rep);
  for (const char* key : {"n", "r", "q", "mode", "total", "nongenerating", "frequency",
                          "predicted_dim", "predicted_codim", "elapsed_seconds", "workers",
                          "complete", "classified", "log_q_nongenerating"})
    CHECK(j.contains(key));
}
