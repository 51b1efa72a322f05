// invgen: exact computations around generating tuples of pairs of matrices
// with the swap-transpose involution. Subcommands cover dimension formulas,
// generator checks, matrix identities, tuple classification, point-count
// censuses, generator-count bounds, derivation spaces and algebra validation.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "invgen/bounds.hpp"
#include "invgen/census.hpp"
#include "invgen/classify.hpp"
#include "invgen/unitary.hpp"
#include "invgen/util.hpp"
#include "invgen/version.hpp"

using namespace invgen;
using nlohmann::json;

namespace {

json strip_volatile(json j) {
  j.erase("elapsed_seconds");
  j.erase("workers");
  return j;
}

json wrap_output(const std::string& kind, const json& result, const std::string& subcommand,
                 const json& params, const std::string& field_spec,
                 std::optional<uint64_t> seed, const std::string& started) {
  json out;
  out["schema_version"] = kSchemaVersion;
  out["kind"] = kind;
  out["result"] = result;
  json man;
  man["tool"] = "invgen";
  man["version"] = kVersion;
  man["subcommand"] = subcommand;
  man["parameters"] = params;
  if (!field_spec.empty()) man["field"] = field_spec;
  if (seed) man["seed"] = *seed;
  man["started"] = started;
  man["finished"] = iso8601_utc_now();
  man["output_digest"] = "fnv1a:" + to_hex(fnv1a64(strip_volatile(result).dump()));
  out["manifest"] = man;
  return out;
}

void write_json_output(const std::string& path, const json& j) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw error("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open: " + path);
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw validation_error("not valid JSON: " + path);
  return doc;
}

// ---------------------------------------------------------------------------

int cmd_dims(int n, int r, unsigned long long chr, const std::string& json_path,
             const std::string& started) {
  DimRecord d = dims(n, r, chr);
  std::cout << "n=" << n << " r=" << r << "  ambient " << d.ambient << "\n";
  std::cout << "dim Z_r = " << d.dim_Zr << "   codim c(r) = " << d.codim << "\n";
  std::cout << "dim G = " << d.dim_G << "\n";
  for (size_t i = 0; i < d.dim_X.size(); ++i)
    std::cout << "dim X_" << i + 1 << " = " << d.dim_X[i] << "   s(" << i + 1
              << ",r) = " << d.s_i[i] << "   stab = " << d.stab_AV[i] << "\n";
  std::cout << "dim Ybar " << (d.dim_Y_exact ? "= " : "<= ") << d.dim_Y
            << "   stab B[I] " << (d.stab_BI_exact ? "= " : ">= ") << d.stab_BI << "\n";
  if (d.dim_Yprime)
    std::cout << "dim Y'bar = " << *d.dim_Yprime << "   stab B[Omega] = " << *d.stab_BOmega
              << "\n";
  json res;
  res["n"] = d.n;
  res["r"] = d.r;
  res["characteristic"] = d.characteristic;
  res["ambient"] = d.ambient;
  res["dim_Zr"] = d.dim_Zr;
  res["codim"] = d.codim;
  res["dim_G"] = d.dim_G;
  res["dim_X"] = d.dim_X;
  res["s_i"] = d.s_i;
  res["stab_AV"] = d.stab_AV;
  res["dim_Y"] = d.dim_Y;
  res["dim_Y_exact"] = d.dim_Y_exact;
  res["stab_BI"] = d.stab_BI;
  res["stab_BI_exact"] = d.stab_BI_exact;
  if (d.dim_Yprime) {
    res["dim_Yprime"] = *d.dim_Yprime;
    res["stab_BOmega"] = *d.stab_BOmega;
  }
  write_json_output(json_path,
                    wrap_output("dims-report", res, "dims",
                                json{{"n", n}, {"r", r}, {"characteristic", chr}}, "",
                                std::nullopt, started));
  return 0;
}

int cmd_bounds(int n, long long d, int table_nmax, long long table_dmax,
               const std::string& csv_path, const std::string& json_path,
               const std::string& started) {
  json res;
  if (n == 1) {
    long long r1 = codim_threshold_r(1, d);
    std::cout << "n=1: the floor-form bound does not apply; codim grows as r,\n"
              << "so r = " << r1 << " suffices over base rings of dimension " << d << ".\n";
    res["n"] = 1;
    res["d"] = d;
    res["least_r"] = r1;
    res["floor_bound_applicable"] = false;
  } else {
    UpperBoundResult ub = upper_bound(n, d);
    long long lb = lower_bound_examples(n, d);
    long long noe = noetherian_bound(d);
    std::cout << "n=" << n << " d=" << d << "\n";
    std::cout << "upper bound      = " << ub.r << "  (least r with codim > d: "
              << ub.least_r_exceeding << (ub.verified ? ", agrees" : ", MISMATCH") << ")\n";
    std::cout << "example lower    = " << lb << "  (characteristic-0 constructions)\n";
    std::cout << "noetherian bound = " << noe
              << "  (excluding degree-2 symplectic residue algebras)\n";
    res["n"] = n;
    res["d"] = d;
    res["upper"] = ub.r;
    res["least_r_exceeding"] = ub.least_r_exceeding;
    res["verified"] = ub.verified;
    res["lower_examples"] = lb;
    res["lower_char0_hypothesis"] = true;
    res["noetherian"] = noe;
    if (!ub.verified) throw error("bounds: floor form and codim threshold disagree");
  }
  if (table_nmax >= 2) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!csv_path.empty()) {
      file.open(csv_path);
      if (!file) throw error("cannot open for writing: " + csv_path);
      os = &file;
    }
    *os << "n,d,upper,lower_examples,noetherian\n";
    for (int nn = 2; nn <= table_nmax; ++nn)
      for (long long dd = 0; dd <= table_dmax; ++dd)
        *os << nn << "," << dd << "," << upper_bound(nn, dd).r << ","
            << lower_bound_examples(nn, dd) << "," << noetherian_bound(dd) << "\n";
    res["table"] = {{"nmax", table_nmax}, {"dmax", table_dmax}, {"csv", csv_path}};
  }
  write_json_output(json_path,
                    wrap_output("bounds-report", res, "bounds", json{{"n", n}, {"d", d}}, "",
                                std::nullopt, started));
  return 0;
}

int cmd_identities(int n, const std::string& field_spec, const std::string& json_path,
                   const std::string& started) {
  Field f = parse_field(field_spec);
  IdentityReport rep = with_field(f, [&](const auto& K) { return identity_suite(K, n); });
  std::cout << "identity suite over " << field_spec << ", n=" << n << ": " << rep.checks
            << " checks, " << rep.failures.size() << " failures\n";
  for (const auto& s : rep.failures) std::cout << "  FAIL " << s << "\n";
  json res;
  res["n"] = n;
  res["field"] = field_spec;
  res["checks"] = rep.checks;
  res["failures"] = rep.failures;
  write_json_output(json_path,
                    wrap_output("identities-report", res, "identities",
                                json{{"n", n}, {"field", field_spec}}, field_spec,
                                std::nullopt, started));
  if (!rep.all_pass()) throw error("identity suite reported failures");
  return 0;
}

// ---------------------------------------------------------------------------
// verify-generators

struct GenCheckRow {
  std::string kind;
  std::string field;
  bool escalated = false;
  int dim = 0;
  int expected = 0;
  bool ok = false;
};

template <class F>
void generator_checks_for_model(const F& K, int n, long long alpha_int, uint64_t seed,
                                std::vector<GenCheckRow>& rows) {
  auto model = UnitaryModel<F>::make(K, n);
  auto push = [&](const std::string& kind, const std::string& fs, bool esc,
                  const std::vector<Vec<F>>& tuple, const InvAlgebra<F>& alg, int expected) {
    GenCheckRow row{kind, fs, esc, 0, expected, false};
    row.dim = alg.closure(tuple).dim();
    row.ok = row.dim == expected;
    rows.push_back(row);
  };

  push("full", K.spec(), false, {full_generator(model)}, model.algebra(), 2 * n * n);
  push("graph-identity", K.spec(), false, {bi_generator(model)}, model.algebra(), n * n);
  if (n % 2 == 0 && n > 2)
    push("graph-omega", K.spec(), false, {bomega_generator(model)}, model.algebra(), n * n);
  if (n == 2) {
    auto pr = bomega2_pair(model);
    push("graph-omega-pair", K.spec(), false, {pr.first, pr.second}, model.algebra(), n * n);
  }

  // Transpose-type involutions: d = I plus seeded random invertible diagonals.
  CounterRng rng{seed};
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<typename F::Elem> diag(n, K.one());
    if (trial > 0) {
      for (int i = 0; i < n; ++i) {
        if (K.finite()) {
          uint64_t v = 1 + rng.below(K.order() - 1, trial * 97 + i);
          diag[i] = K.elem_at(v);
        } else {
          long long v = 1 + static_cast<long long>(rng.below(7, trial * 97 + i));
          diag[i] = K.from_int(v);
        }
      }
    }
    auto alg = transpose_invol_algebra(K, n, diag);
    std::vector<Vec<F>> tup{flatten_matrix(upper_shift(K, n))};
    push(trial == 0 ? "transpose" : "transpose-diag" + std::to_string(trial), K.spec(), false,
         tup, alg, n * n);
  }
  if (n % 2 == 0 && n > 2) {
    auto alg = symplectic_invol_algebra(K, n);
    std::vector<Vec<F>> tup{flatten_matrix(upper_shift(K, n))};
    push("symplectic", K.spec(), false, tup, alg, n * n);
  }

  // One-element generators of the subspace-stabilizer subalgebras; needs a
  // scalar outside {0, 1, -1}, so tiny fields escalate to their quadratic
  // extension.
  for (int k = 1; k <= n - 1; ++k) {
    int expected = 2 * (n * n - k * (n - k));
    if (K.finite() && K.order() <= 3) {
      const ExtField& L = extension_field(K.characteristic(), 2);
      auto lmodel = UnitaryModel<ExtField>::make(L, n);
      ExtField::Elem alpha = L.zero();
      for (uint64_t idx = 0; idx < L.order(); ++idx) {
        ExtField::Elem cand = L.elem_at(idx);
        if (!L.is_zero(cand) && !L.eq(cand, L.one()) && !L.eq(cand, L.neg(L.one()))) {
          alpha = cand;
          break;
        }
      }
      GenCheckRow row{"stabilizer-k" + std::to_string(k), L.spec(), true, 0, expected, false};
      row.dim = lmodel.algebra().closure({av_generator(lmodel, k, alpha)}).dim();
      row.ok = row.dim == expected;
      rows.push_back(row);
    } else {
      typename F::Elem alpha = K.from_int(alpha_int);
      GenCheckRow row{"stabilizer-k" + std::to_string(k), K.spec(), false, 0, expected, false};
      row.dim = model.algebra().closure({av_generator(model, k, alpha)}).dim();
      row.ok = row.dim == expected;
      rows.push_back(row);
    }
  }
}

int cmd_verify_generators(int n, const std::string& field_spec, long long alpha, uint64_t seed,
                          const std::string& json_path, const std::string& started) {
  Field f = parse_field(field_spec);
  std::vector<GenCheckRow> rows;
  with_field(f, [&](const auto& K) { generator_checks_for_model(K, n, alpha, seed, rows); });

  // The quadratic-extension scalar generator of the full matrix algebra over
  // F_{q^2} with conjugate transpose, as an algebra over F_q.
  if (auto* pf = std::get_if<const PrimeField*>(&f)) {
    HermitianAlgebra h = hermitian_algebra((*pf)->p(), n);
    GenCheckRow row{"hermitian", (*pf)->spec() + " in " + h.extension_spec, false, 0, 2 * n * n,
                    false};
    row.dim = h.alg.closure({h.generator}).dim();
    row.ok = row.dim == row.expected;
    rows.push_back(row);
  }

  bool all_ok = true;
  json jrows = json::array();
  for (const auto& r : rows) {
    all_ok = all_ok && r.ok;
    std::cout << (r.ok ? "ok   " : "FAIL ") << r.kind << "  [" << r.field
              << (r.escalated ? ", escalated" : "") << "]  closure dim " << r.dim
              << " expected " << r.expected << "\n";
    jrows.push_back({{"kind", r.kind},
                     {"field", r.field},
                     {"escalated", r.escalated},
                     {"closure_dim", r.dim},
                     {"expected", r.expected},
                     {"ok", r.ok}});
  }
  json res;
  res["n"] = n;
  res["field"] = field_spec;
  res["checks"] = jrows;
  res["all_ok"] = all_ok;
  write_json_output(json_path, wrap_output("generators-report", res, "verify-generators",
                                           json{{"n", n}, {"field", field_spec}, {"alpha", alpha}},
                                           field_spec, seed, started));
  if (!all_ok) throw error("generator verification reported failures");
  return 0;
}

int cmd_brute(const std::string& target, int n, uint64_t q, int r_max, int k,
              const std::string& json_path, const std::string& started) {
  const PrimeField& K = prime_field(q);
  auto model = UnitaryModel<PrimeField>::make(K, n);
  Subspace<PrimeField> sub;
  if (target == "full") {
    sub = Subspace<PrimeField>::full(K, model.dim());
  } else if (target == "bomega") {
    sub = model.subalg_Bp(model.omega());
  } else if (target == "bi") {
    sub = model.subalg_Bp(Matrix<PrimeField>::identity(K, n));
  } else if (target == "av") {
    sub = model.subalg_AV(coordinate_subspace(K, n, k));
  } else {
    throw error("brute target must be one of full, bi, bomega, av");
  }
  auto rep = gen_count_bruteforce(model, sub, r_max);
  json per_r = json::array();
  for (const auto& row : rep.per_r) {
    std::cout << "r=" << row.r << ": tested " << row.tuples_tested << ", max closure dim "
              << row.max_closure_dim << (row.found ? ", generator found" : ", none") << "\n";
    per_r.push_back({{"r", row.r},
                     {"tuples_tested", row.tuples_tested},
                     {"max_closure_dim", row.max_closure_dim},
                     {"found", row.found}});
  }
  std::cout << "target dim " << rep.target_dim << ", minimal r "
            << (rep.minimal_r < 0 ? std::string("> ") + std::to_string(r_max)
                                  : std::to_string(rep.minimal_r))
            << "\n";
  json res;
  res["target"] = target;
  res["n"] = n;
  res["q"] = q;
  res["target_dim"] = rep.target_dim;
  res["minimal_r"] = rep.minimal_r;
  res["per_r"] = per_r;
  write_json_output(json_path,
                    wrap_output("brute-report", res, "verify-generators",
                                json{{"brute", target}, {"n", n}, {"q", q}, {"r", r_max}},
                                "F" + std::to_string(q), std::nullopt, started));
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_derivations(int n, const std::string& field_spec, const std::string& file,
                    const std::string& json_path, const std::string& started) {
  json res;
  int dim = 0;
  std::string fs = field_spec;
  if (!file.empty()) {
    json doc = load_json_file(file);
    fs = doc.at("field").get<std::string>();
    Field f = parse_field(fs);
    dim = with_field(f, [&](const auto& K) {
      auto alg = algebra_from_json(K, doc);
      return alg.derivations().dim;
    });
    std::cout << "derivation space of " << file << " over " << fs << ": dim " << dim << "\n";
    res["file"] = file;
  } else {
    Field f = parse_field(fs);
    dim = with_field(f, [&](const auto& K) {
      auto model = UnitaryModel<std::decay_t<decltype(K)>>::make(K, n);
      return model.algebra().derivations().dim;
    });
    long long expected = static_cast<long long>(n) * n - 1;
    bool informational = field_characteristic(parse_field(fs)) != 0;
    std::cout << "dim Der = " << dim << ", dim PGL_" << n << " = " << expected
              << (dim == expected ? " (match" : " (MISMATCH")
              << (informational ? ", informational in positive characteristic)" : ")") << "\n";
    res["n"] = n;
    res["expected_group_dim"] = expected;
    res["match"] = dim == expected;
    res["informational"] = informational;
  }
  res["field"] = fs;
  res["dim"] = dim;
  write_json_output(json_path,
                    wrap_output("derivations-report", res, "derivations",
                                json{{"n", n}, {"field", fs}, {"file", file}}, fs,
                                std::nullopt, started));
  return 0;
}

int cmd_validate_algebra(const std::string& file, const std::string& json_path,
                         const std::string& started) {
  json doc = load_json_file(file);
  std::string fs = doc.at("field").get<std::string>();
  Field f = parse_field(fs);
  int dim = with_field(f, [&](const auto& K) {
    auto alg = algebra_from_json(K, doc);
    return alg.dim();
  });
  std::string fp = algebra_fingerprint(doc);
  std::cout << "valid algebra: dim " << dim << " over " << fs << "\nfingerprint " << fp << "\n";
  json res;
  res["file"] = file;
  res["field"] = fs;
  res["dim"] = dim;
  res["fingerprint"] = fp;
  write_json_output(json_path, wrap_output("algebra-report", res, "validate-algebra",
                                           json{{"file", file}}, fs, std::nullopt, started));
  return 0;
}

// ---------------------------------------------------------------------------
// classify

template <class BF>
Matrix<BF> matrix_from_json(const BF& K, int n, const json& arr) {
  std::vector<json> flat;
  for (const auto& x : arr) {
    if (x.is_array())
      for (const auto& y : x) flat.push_back(y);
    else
      flat.push_back(x);
  }
  if (static_cast<int>(flat.size()) != n * n)
    throw validation_error("tuple file: matrix must have n*n entries");
  Matrix<BF> m(K, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = K.parse(flat[i * n + j]);
  return m;
}

template <class BF>
json run_classify(const BF& K, int n, const json& doc, bool all_witnesses, int max_ext) {
  auto model = UnitaryModel<BF>::make(K, n);
  std::vector<Vec<BF>> tuple;
  for (const auto& p : doc.at("pairs")) {
    Matrix<BF> a = matrix_from_json(K, n, p.at("a"));
    Matrix<BF> b = matrix_from_json(K, n, p.at("b"));
    tuple.push_back(model.embed_pair(a, b));
  }
  ClassifyOptions copt;
  copt.all_witnesses = all_witnesses;
  copt.max_ext = max_ext;
  Classifier<BF> cls(model, copt);
  auto out = cls.classify(tuple);

  json res;
  res["n"] = n;
  res["field"] = K.spec();
  res["r"] = tuple.size();
  res["generates"] = out.generates;
  res["closure_dim"] = out.closure_dim;
  res["truncated"] = out.truncated;
  json subs = json::array();
  for (const auto& w : out.subspaces) {
    json basis = json::array();
    if (w.ext_degree == 1) {
      for (int i = 0; i < w.v_base.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < n; ++j) row.push_back(K.to_json(w.v_base.basis().at(i, j)));
        basis.push_back(row);
      }
      subs.push_back({{"dim", w.dim_v}, {"ext_degree", 1}, {"field", K.spec()}, {"basis", basis}});
    } else {
      for (int i = 0; i < w.v_ext.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < n; ++j) row.push_back(w.ext->to_json(w.v_ext.basis().at(i, j)));
        basis.push_back(row);
      }
      subs.push_back({{"dim", w.dim_v},
                      {"ext_degree", w.ext_degree},
                      {"field", w.ext->spec()},
                      {"basis", basis}});
    }
  }
  res["invariant_subspaces"] = subs;
  auto conj_json = [&](const std::optional<ConjugatorWitness<BF>>& c) -> json {
    if (!c) return nullptr;
    json p = json::array();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p.push_back(K.to_json(c->p.at(i, j)));
    return json{{"p", p}, {"kind", symmetry_kind_name(c->kind)}};
  };
  res["conjugator_symmetric"] = conj_json(out.symmetric_conj);
  res["conjugator_alternating"] = conj_json(out.alternating_conj);
  return res;
}

int cmd_classify(const std::string& tuple_file, const std::string& field_flag, int n_flag,
                 bool all_witnesses, int max_ext, const std::string& json_path,
                 const std::string& started) {
  json doc = load_json_file(tuple_file);
  int n = doc.at("n").get<int>();
  std::string fs = doc.at("field").get<std::string>();
  if (n_flag > 0 && n_flag != n) throw validation_error("--n disagrees with the tuple file");
  if (!field_flag.empty() && field_flag != fs)
    throw validation_error("--field disagrees with the tuple file");
  Field f = parse_field(fs);
  json res;
  if (auto* pf = std::get_if<const PrimeField*>(&f))
    res = run_classify(**pf, n, doc, all_witnesses, max_ext);
  else if (auto* ef = std::get_if<const ExtField*>(&f))
    res = run_classify(**ef, n, doc, all_witnesses, max_ext);
  else
    throw error("classify: finite field required");

  if (res["generates"].get<bool>()) {
    std::cout << "generates (closure dim " << res["closure_dim"] << ")\n";
  } else {
    std::cout << "does not generate (closure dim " << res["closure_dim"] << ")\n";
    for (const auto& w : res["invariant_subspaces"])
      std::cout << "  invariant subspace: dim " << w["dim"] << " over " << w["field"].get<std::string>()
                << " (ext degree " << w["ext_degree"] << ")\n";
    if (!res["conjugator_symmetric"].is_null())
      std::cout << "  conjugator: symmetric-nonalternating\n";
    if (!res["conjugator_alternating"].is_null())
      std::cout << "  conjugator: alternating\n";
  }
  write_json_output(json_path, wrap_output("classify-report", res, "classify",
                                           json{{"tuple", tuple_file},
                                                {"all_witnesses", all_witnesses},
                                                {"max_ext", max_ext}},
                                           fs, std::nullopt, started));
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_census(CensusOptions opts, const std::string& json_path, const std::string& started) {
  CensusReport rep = run_census(opts);
  std::cout << "census n=" << rep.n << " r=" << rep.r << " q=" << rep.q << " mode="
            << (rep.mode == CensusMode::Exhaustive ? "exhaustive" : "sampled") << "\n";
  std::cout << "examined " << rep.total << ", non-generating " << rep.nongenerating
            << " (frequency " << rep.frequency << ")\n";
  if (rep.mode == CensusMode::Exhaustive && rep.nongenerating > 0)
    std::cout << "log_q N = " << rep.log_q_nongen << "  (predicted dim " << rep.predicted_dim
              << ")\n";
  if (rep.mode == CensusMode::Sampled)
    std::cout << "Wilson 95%: [" << rep.wilson_low << ", " << rep.wilson_high << "]\n";
  if (rep.classified) {
    for (size_t i = 0; i < rep.classes.subspace_rational.size(); ++i)
      std::cout << "class dim-" << i + 1 << " subspace: rational " << rep.classes.subspace_rational[i]
                << ", extension-only " << rep.classes.subspace_ext_only[i] << "\n";
    std::cout << "class conjugator: symmetric " << rep.classes.conj_symmetric << ", alternating "
              << rep.classes.conj_alternating << "\n";
    std::cout << "multi-class " << rep.classes.multi_class << "\n";
  }
  std::cout << "elapsed " << rep.elapsed_seconds << " s on " << rep.workers << " workers\n";
  if (!rep.complete) std::cout << "NOTE: stopped early; checkpoint holds resumable state\n";
  json params;
  params["n"] = opts.n;
  params["r"] = opts.r;
  params["q"] = opts.q;
  params["mode"] = opts.mode == CensusMode::Exhaustive ? "exhaustive" : "sampled";
  params["samples"] = opts.samples;
  params["seed"] = opts.seed;
  params["classify"] = opts.classify;
  params["workers"] = opts.workers;
  write_json_output(json_path,
                    wrap_output("census-report", census_report_json(rep), "census", params,
                                "F" + std::to_string(opts.q), opts.seed, started));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact generation census and bounds for pairs of matrices with involution"};
  app.require_subcommand(1);
  std::string started = iso8601_utc_now();
  int rc = 0;

  // dims
  auto* dims_cmd = app.add_subcommand("dims", "closed-form dimensions of the non-generating locus");
  int dn = 2, dr = 1;
  unsigned long long dchar = 0;
  std::string djson;
  dims_cmd->add_option("--n", dn, "degree n")->required();
  dims_cmd->add_option("--r", dr, "tuple length r")->required();
  dims_cmd->add_option("--char", dchar, "field characteristic for exactness flags");
  dims_cmd->add_option("--json", djson, "write JSON report to this path ('-' for stdout)");
  dims_cmd->callback([&]() { rc = cmd_dims(dn, dr, dchar, djson, started); });

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "generator-count bounds");
  int bn = 2;
  long long bd = 0;
  std::vector<long long> btable;
  std::string bcsv, bjson;
  bounds_cmd->add_option("--n", bn, "degree n")->required();
  bounds_cmd->add_option("--d", bd, "Krull dimension d")->required();
  bounds_cmd->add_option("--table", btable, "emit a grid up to nmax dmax")->expected(2);
  bounds_cmd->add_option("--csv", bcsv, "CSV output path for the grid");
  bounds_cmd->add_option("--json", bjson, "write JSON report to this path");
  bounds_cmd->callback([&]() {
    int btn = btable.size() == 2 ? static_cast<int>(btable[0]) : 0;
    long long btd = btable.size() == 2 ? btable[1] : 0;
    rc = cmd_bounds(bn, bd, btn, btd, bcsv, bjson, started);
  });

  // identities
  auto* id_cmd = app.add_subcommand("identities", "matrix-identity suite for the shift and d_{ij}");
  int in_ = 2;
  std::string ifield = "F5", ijson;
  id_cmd->add_option("--n", in_, "matrix size n")->required();
  id_cmd->add_option("--field", ifield, "coefficient field (default F5)");
  id_cmd->add_option("--json", ijson, "write JSON report to this path");
  id_cmd->callback([&]() { rc = cmd_identities(in_, ifield, ijson, started); });

  // verify-generators
  auto* vg_cmd = app.add_subcommand("verify-generators", "check the explicit generating elements");
  int vn = 2;
  std::string vfield = "F5", vjson, vbrute;
  long long valpha = 2;
  uint64_t vseed = 1;
  int vr = 2, vk = 1;
  uint64_t vq = 3;
  vg_cmd->add_option("--n", vn, "degree n")->required();
  vg_cmd->add_option("--field", vfield, "coefficient field");
  vg_cmd->add_option("--alpha", valpha, "scalar for the stabilizer generators (not 0, 1, -1)");
  vg_cmd->add_option("--seed", vseed, "seed for the random diagonal checks");
  vg_cmd->add_option("--brute", vbrute, "brute-force search target: full, bi, bomega, av");
  vg_cmd->add_option("--q", vq, "field size for --brute");
  vg_cmd->add_option("--r", vr, "max tuple length for --brute");
  vg_cmd->add_option("--k", vk, "subspace dimension for --brute av");
  vg_cmd->add_option("--json", vjson, "write JSON report to this path");
  vg_cmd->callback([&]() {
    if (!vbrute.empty())
      rc = cmd_brute(vbrute, vn, vq, vr, vk, vjson, started);
    else
      rc = cmd_verify_generators(vn, vfield, valpha, vseed, vjson, started);
  });

  // classify
  auto* cl_cmd = app.add_subcommand("classify", "classify a tuple and emit witnesses");
  std::string ctuple, cfield, cjson;
  int cn = 0, cmax_ext = 0;
  bool call = false;
  cl_cmd->add_option("--tuple", ctuple, "tuple file (JSON)")->required();
  cl_cmd->add_option("--n", cn, "expected n (validated against the file)");
  cl_cmd->add_option("--field", cfield, "expected field (validated against the file)");
  cl_cmd->add_flag("--all-witnesses", call, "search every witness class");
  cl_cmd->add_option("--max-ext", cmax_ext, "maximal extension degree (default n)");
  cl_cmd->add_option("--json", cjson, "write JSON report to this path");
  cl_cmd->callback([&]() { rc = cmd_classify(ctuple, cfield, cn, call, cmax_ext, cjson, started); });

  // census
  auto* ce_cmd = app.add_subcommand("census", "count non-generating tuples over a prime field");
  CensusOptions copts;
  std::string cmode = "exhaustive", cejson;
  ce_cmd->add_option("--n", copts.n, "degree n")->required();
  ce_cmd->add_option("--r", copts.r, "tuple length r")->required();
  ce_cmd->add_option("--q", copts.q, "prime field size")->required();
  ce_cmd->add_option("--mode", cmode, "exhaustive or sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}));
  ce_cmd->add_option("--samples", copts.samples, "sample count for sampled mode");
  ce_cmd->add_option("--seed", copts.seed, "seed for sampled mode");
  ce_cmd->add_flag("--classify", copts.classify, "classify every non-generating tuple");
  ce_cmd->add_option("--max-ext", copts.max_ext, "max extension degree for classification");
  ce_cmd->add_option("--workers", copts.workers, "worker threads (default: cores)");
  ce_cmd->add_option("--budget", copts.budget, "tuple budget override");
  ce_cmd->add_option("--checkpoint", copts.checkpoint_path, "checkpoint file path");
  ce_cmd->add_option("--json", cejson, "write JSON report to this path");
  ce_cmd->callback([&]() {
    copts.mode = cmode == "sampled" ? CensusMode::Sampled : CensusMode::Exhaustive;
    rc = cmd_census(copts, cejson, started);
  });

  // derivations
  auto* dv_cmd = app.add_subcommand("derivations", "derivation space of the model or of a file");
  int dvn = 2;
  std::string dvfield = "Q", dvfile, dvjson;
  dv_cmd->add_option("--n", dvn, "degree n of the model");
  dv_cmd->add_option("--field", dvfield, "coefficient field (default Q)");
  dv_cmd->add_option("--file", dvfile, "algebra document instead of the model");
  dv_cmd->add_option("--json", dvjson, "write JSON report to this path");
  dv_cmd->callback([&]() { rc = cmd_derivations(dvn, dvfield, dvfile, dvjson, started); });

  // validate-algebra
  auto* va_cmd = app.add_subcommand("validate-algebra", "validate an algebra document");
  std::string vafile, vajson;
  va_cmd->add_option("--file", vafile, "algebra document (JSON)")->required();
  va_cmd->add_option("--json", vajson, "write JSON report to this path");
  va_cmd->callback([&]() { rc = cmd_validate_algebra(vafile, vajson, started); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const theory_violation& tv) {
    std::cerr << "theory violation: " << tv.what() << "\noffending tuple: " << tv.tuple_json
              << "\n";
    return 1;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
