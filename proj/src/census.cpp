#include "invgen/census.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include "invgen/classify.hpp"
#include "invgen/errors.hpp"
#include "invgen/unitary.hpp"
#include "invgen/util.hpp"

namespace invgen {

namespace {

constexpr uint64_t kChunkSize = 8192;

struct Tally {
  uint64_t done = 0;
  uint64_t nongen = 0;
  ClassCounts classes;

  void merge(const Tally& o) {
    done += o.done;
    nongen += o.nongen;
    classes.merge(o.classes);
  }
};

nlohmann::json tally_to_json(const Tally& t) {
  nlohmann::json c;
  c["done"] = t.done;
  c["nongen"] = t.nongen;
  c["subspace_rational"] = t.classes.subspace_rational;
  c["subspace_ext_only"] = t.classes.subspace_ext_only;
  c["conj_symmetric"] = t.classes.conj_symmetric;
  c["conj_alternating"] = t.classes.conj_alternating;
  c["multi_class"] = t.classes.multi_class;
  return c;
}

Tally tally_from_json(const nlohmann::json& j, int n) {
  Tally t;
  t.classes.resize(n);
  t.done = j.at("done").get<uint64_t>();
  t.nongen = j.at("nongen").get<uint64_t>();
  t.classes.subspace_rational = j.at("subspace_rational").get<std::vector<uint64_t>>();
  t.classes.subspace_ext_only = j.at("subspace_ext_only").get<std::vector<uint64_t>>();
  t.classes.conj_symmetric = j.at("conj_symmetric").get<uint64_t>();
  t.classes.conj_alternating = j.at("conj_alternating").get<uint64_t>();
  t.classes.multi_class = j.at("multi_class").get<uint64_t>();
  return t;
}

nlohmann::json checkpoint_params(const CensusOptions& o) {
  nlohmann::json p;
  p["n"] = o.n;
  p["r"] = o.r;
  p["q"] = o.q;
  p["mode"] = o.mode == CensusMode::Exhaustive ? "exhaustive" : "sampled";
  p["samples"] = o.samples;
  p["seed"] = o.seed;
  p["classify"] = o.classify;
  p["max_ext"] = o.max_ext;
  p["chunk_size"] = kChunkSize;
  return p;
}

double wilson_bound(double phat, double nsamp, double z, int sign) {
  double z2 = z * z;
  double denom = 1.0 + z2 / nsamp;
  double center = phat + z2 / (2.0 * nsamp);
  double rad = z * std::sqrt(phat * (1.0 - phat) / nsamp + z2 / (4.0 * nsamp * nsamp));
  return (center + sign * rad) / denom;
}

}  // namespace

void ClassCounts::resize(int n) {
  subspace_rational.assign(std::max(0, n - 1), 0);
  subspace_ext_only.assign(std::max(0, n - 1), 0);
}

void ClassCounts::merge(const ClassCounts& o) {
  if (subspace_rational.size() != o.subspace_rational.size())
    throw error("class counts: size mismatch");
  for (size_t i = 0; i < subspace_rational.size(); ++i) {
    subspace_rational[i] += o.subspace_rational[i];
    subspace_ext_only[i] += o.subspace_ext_only[i];
  }
  conj_symmetric += o.conj_symmetric;
  conj_alternating += o.conj_alternating;
  multi_class += o.multi_class;
}

uint64_t census_default_budget() {
  if (const char* env = std::getenv("INVGEN_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 100000000ull;
}

CensusReport run_census(const CensusOptions& opts) {
  if (opts.n < 1 || opts.r < 1) throw error("census: n and r must be >= 1");
  const PrimeField& K = prime_field(opts.q);
  const int coords = 2 * opts.n * opts.n;
  const int width = opts.r * coords;  // digits per tuple
  uint64_t budget = opts.budget ? opts.budget : census_default_budget();

  uint64_t total = 0;
  if (opts.mode == CensusMode::Exhaustive) {
    total = 1;
    for (int i = 0; i < width; ++i) {
      if (total > budget / opts.q)
        throw budget_error("exhaustive census refused: q^(2rn^2) exceeds budget " +
                           std::to_string(budget) + "; use sampled mode");
      total *= opts.q;
    }
  } else {
    if (opts.samples < 1) throw error("sampled census: samples must be >= 1");
    total = opts.samples;
  }

  const UnitaryModel<PrimeField> model = UnitaryModel<PrimeField>::make(K, opts.n);
  std::unique_ptr<Classifier<PrimeField>> classifier;
  if (opts.classify) {
    ClassifyOptions copt;
    copt.all_witnesses = true;
    copt.max_ext = opts.max_ext;
    classifier = std::make_unique<Classifier<PrimeField>>(model, copt);
  }

  const uint64_t chunk_count = (total + kChunkSize - 1) / kChunkSize;
  uint64_t start_chunk = 0;
  Tally base_tally;
  base_tally.classes.resize(opts.n);

  // Resume from a checkpoint when present and parameter-compatible.
  if (!opts.checkpoint_path.empty()) {
    std::ifstream in(opts.checkpoint_path);
    if (in.good()) {
      nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
      if (doc.is_discarded() || !doc.contains("params") || !doc.contains("next_chunk"))
        throw validation_error("checkpoint file is not a census checkpoint: " +
                               opts.checkpoint_path);
      if (doc["params"] != checkpoint_params(opts))
        throw validation_error("checkpoint parameters do not match this census run");
      start_chunk = doc.at("next_chunk").get<uint64_t>();
      base_tally = tally_from_json(doc.at("tally"), opts.n);
    }
  }

  uint64_t chunk_limit = chunk_count;
  if (opts.stop_after_chunks > 0)
    chunk_limit = std::min(chunk_limit, start_chunk + opts.stop_after_chunks);

  int workers = opts.workers > 0 ? opts.workers
                                 : std::max(1u, std::thread::hardware_concurrency());

  std::atomic<uint64_t> next_chunk{start_chunk};
  std::mutex mu;
  std::map<uint64_t, Tally> pending;
  uint64_t merged = start_chunk;
  Tally grand = base_tally;
  std::exception_ptr worker_error;
  auto last_checkpoint = std::chrono::steady_clock::now();

  auto write_checkpoint = [&](uint64_t next, const Tally& t) {
    if (opts.checkpoint_path.empty()) return;
    nlohmann::json doc;
    doc["kind"] = "census-checkpoint";
    doc["schema_version"] = 1;
    doc["params"] = checkpoint_params(opts);
    doc["next_chunk"] = next;
    doc["tally"] = tally_to_json(t);
    std::ofstream out(opts.checkpoint_path, std::ios::trunc);
    out << doc.dump(2) << "\n";
  };

  CounterRng rng{opts.seed};
  auto t0 = std::chrono::steady_clock::now();

  auto worker = [&]() {
    try {
      ClosureScratch<PrimeField> scratch;
      std::vector<Vec<PrimeField>> tuple(opts.r, model.algebra().zero_vec());
      std::vector<uint64_t> digits(width, 0);
      while (true) {
        uint64_t c = next_chunk.fetch_add(1);
        if (c >= chunk_limit) break;
        uint64_t lo = c * kChunkSize;
        uint64_t hi = std::min(total, lo + kChunkSize);
        Tally t;
        t.classes.resize(opts.n);

        if (opts.mode == CensusMode::Exhaustive) {
          // Mixed-radix digits of lo, least-significant digit last.
          uint64_t v = lo;
          for (int i = width - 1; i >= 0; --i) {
            digits[i] = v % opts.q;
            v /= opts.q;
          }
        }
        for (uint64_t idx = lo; idx < hi; ++idx) {
          for (int e = 0; e < opts.r; ++e)
            for (int cidx = 0; cidx < coords; ++cidx) {
              uint64_t digit = opts.mode == CensusMode::Exhaustive
                                   ? digits[e * coords + cidx]
                                   : rng.below(opts.q, idx, e * coords + cidx);
              tuple[e][cidx] = K.elem_at(digit);
            }
          ++t.done;
          bool gen;
          if (classifier) {
            auto outcome = classifier->classify(
                std::span<const Vec<PrimeField>>(tuple.data(), tuple.size()));
            gen = outcome.generates;
            if (!gen) {
              ++t.nongen;
              int classes_hit = 0;
              for (const auto& w : outcome.subspaces) {
                ++classes_hit;
                if (w.ext_degree == 1)
                  ++t.classes.subspace_rational[w.dim_v - 1];
                else
                  ++t.classes.subspace_ext_only[w.dim_v - 1];
              }
              if (outcome.symmetric_conj) {
                ++classes_hit;
                ++t.classes.conj_symmetric;
              }
              if (outcome.alternating_conj) {
                ++classes_hit;
                ++t.classes.conj_alternating;
              }
              if (classes_hit >= 2) ++t.classes.multi_class;
            }
          } else {
            gen = model.algebra().generates(
                std::span<const Vec<PrimeField>>(tuple.data(), tuple.size()), scratch);
            if (!gen) ++t.nongen;
          }
          if (opts.mode == CensusMode::Exhaustive && idx + 1 < hi) {
            int i = width - 1;
            while (i >= 0) {
              if (++digits[i] < opts.q) break;
              digits[i] = 0;
              --i;
            }
          }
        }

        std::lock_guard<std::mutex> lk(mu);
        pending[c] = std::move(t);
        while (!pending.empty() && pending.begin()->first == merged) {
          grand.merge(pending.begin()->second);
          pending.erase(pending.begin());
          ++merged;
        }
        auto now = std::chrono::steady_clock::now();
        if (!opts.checkpoint_path.empty() &&
            (now - last_checkpoint > std::chrono::seconds(1) || merged == chunk_limit)) {
          write_checkpoint(merged, grand);
          last_checkpoint = now;
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lk(mu);
      if (!worker_error) worker_error = std::current_exception();
    }
  };

  std::vector<std::thread> pool;
  for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (worker_error) std::rethrow_exception(worker_error);
  if (merged != chunk_limit) throw error("census: chunk merge incomplete");
  if (!opts.checkpoint_path.empty()) write_checkpoint(merged, grand);

  auto t1 = std::chrono::steady_clock::now();

  CensusReport rep;
  rep.n = opts.n;
  rep.r = opts.r;
  rep.q = opts.q;
  rep.mode = opts.mode;
  rep.samples = opts.mode == CensusMode::Sampled ? opts.samples : 0;
  rep.seed = opts.seed;
  rep.classified = opts.classify;
  rep.complete = merged == chunk_count;
  rep.total = grand.done;
  rep.nongenerating = grand.nongen;
  rep.classes = grand.classes;
  rep.frequency = grand.done ? static_cast<double>(grand.nongen) / grand.done : 0.0;
  if (opts.mode == CensusMode::Sampled && grand.done > 0) {
    const double z = 1.959963984540054;
    rep.wilson_low = wilson_bound(rep.frequency, static_cast<double>(grand.done), z, -1);
    rep.wilson_high = wilson_bound(rep.frequency, static_cast<double>(grand.done), z, +1);
  }
  rep.log_q_nongen = (opts.mode == CensusMode::Exhaustive && grand.nongen > 0)
                         ? std::log(static_cast<double>(grand.nongen)) /
                               std::log(static_cast<double>(opts.q))
                         : std::nan("");
  DimRecord d = dims(opts.n, opts.r, opts.q);
  rep.predicted_dim = d.dim_Zr;
  rep.predicted_codim = d.codim;
  rep.elapsed_seconds = std::chrono::duration<double>(t1 - t0).count();
  rep.workers = workers;
  return rep;
}

nlohmann::json census_report_json(const CensusReport& rep) {
  nlohmann::json j;
  j["n"] = rep.n;
  j["r"] = rep.r;
  j["q"] = rep.q;
  j["mode"] = rep.mode == CensusMode::Exhaustive ? "exhaustive" : "sampled";
  if (rep.mode == CensusMode::Sampled) {
    j["samples"] = rep.samples;
    j["seed"] = rep.seed;
    j["wilson_low"] = rep.wilson_low;
    j["wilson_high"] = rep.wilson_high;
  }
  j["classified"] = rep.classified;
  j["complete"] = rep.complete;
  j["total"] = rep.total;
  j["nongenerating"] = rep.nongenerating;
  j["frequency"] = rep.frequency;
  if (rep.classified) {
    nlohmann::json classes;
    nlohmann::json subs = nlohmann::json::array();
    for (size_t i = 0; i < rep.classes.subspace_rational.size(); ++i)
      subs.push_back({{"dim", i + 1},
                      {"rational", rep.classes.subspace_rational[i]},
                      {"extension_only", rep.classes.subspace_ext_only[i]}});
    classes["invariant_subspace"] = subs;
    classes["conjugator_symmetric"] = rep.classes.conj_symmetric;
    classes["conjugator_alternating"] = rep.classes.conj_alternating;
    classes["multi_class"] = rep.classes.multi_class;
    j["classes"] = classes;
  }
  if (rep.mode == CensusMode::Exhaustive) {
    if (std::isnan(rep.log_q_nongen))
      j["log_q_nongenerating"] = nullptr;
    else
      j["log_q_nongenerating"] = rep.log_q_nongen;
  }
  j["predicted_dim"] = rep.predicted_dim;
  j["predicted_codim"] = rep.predicted_codim;
  j["elapsed_seconds"] = rep.elapsed_seconds;
  j["workers"] = rep.workers;
  return j;
}

ExponentFit exponent_fit(const std::vector<CensusReport>& reports) {
  if (reports.size() < 2) throw error("exponent_fit: need at least two reports");
  for (const auto& r : reports) {
    if (r.mode != CensusMode::Exhaustive) throw error("exponent_fit: reports must be exhaustive");
    if (r.n != reports[0].n || r.r != reports[0].r)
      throw error("exponent_fit: reports must share (n, r)");
    if (r.nongenerating == 0) throw error("exponent_fit: zero count has no exponent");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double m = static_cast<double>(reports.size());
  for (const auto& r : reports) {
    double x = std::log(static_cast<double>(r.q));
    double y = std::log(static_cast<double>(r.nongenerating));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = m * sxx - sx * sx;
  if (denom == 0) throw error("exponent_fit: need at least two distinct q values");
  ExponentFit fit;
  fit.slope = (m * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / m;
  return fit;
}

}  // namespace invgen
