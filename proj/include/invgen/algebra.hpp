#pragma once

// Finite-dimensional unital algebras with involution, given by structure
// constants. Hosts the subalgebra-closure engine (the hot path of the census),
// derivation spaces and base change. The plain associative case is encoded
// with the identity involution, so there is a single code path.

#include <algorithm>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "invgen/errors.hpp"
#include "invgen/linalg.hpp"
#include "invgen/util.hpp"
#include "json.hpp"

namespace invgen {

template <class F>
using Vec = std::vector<typename F::Elem>;

// Reusable buffers for closure computations; one per thread.
template <class F>
struct ClosureScratch {
  using Elem = typename F::Elem;
  std::vector<Elem> rows;   // up to N rows of length N, echelon form
  std::vector<int> pivots;  // pivot column per accepted row
  std::vector<Elem> prod;   // length N
  std::vector<Elem> work;   // length N
};

template <class F>
class InvAlgebra {
 public:
  using Elem = typename F::Elem;
  // (i, j, k, c): the product e_i * e_j contains c * e_k.
  using TensorEntry = std::tuple<int, int, int, Elem>;

  InvAlgebra(const F& K, int dim, const std::vector<TensorEntry>& product,
             Matrix<F> involution, Vec<F> unit, bool validate = true)
      : K_(&K), N_(dim), sigma_(std::move(involution)), unit_(std::move(unit)) {
    if (N_ <= 0) throw validation_error("algebra: dimension must be positive");
    if (sigma_.rows() != N_ || sigma_.cols() != N_)
      throw validation_error("algebra: involution matrix must be N x N");
    if (static_cast<int>(unit_.size()) != N_)
      throw validation_error("algebra: unit vector must have length N");

    std::map<std::pair<int, int>, std::vector<std::pair<int, Elem>>> by_pair;
    for (const auto& [i, j, k, c] : product) {
      if (i < 0 || i >= N_ || j < 0 || j >= N_ || k < 0 || k >= N_)
        throw validation_error("algebra: structure constant index out of range");
      if (!K.is_zero(c)) by_pair[{i, j}].emplace_back(k, c);
    }
    poff_.assign(static_cast<size_t>(N_) * N_ + 1, 0);
    for (int i = 0; i < N_; ++i)
      for (int j = 0; j < N_; ++j) {
        auto it = by_pair.find({i, j});
        size_t cnt = it == by_pair.end() ? 0 : it->second.size();
        poff_[static_cast<size_t>(i) * N_ + j + 1] =
            poff_[static_cast<size_t>(i) * N_ + j] + cnt;
      }
    pk_.resize(poff_.back());
    pc_.resize(poff_.back(), K.zero());
    for (auto& [ij, entries] : by_pair) {
      size_t base = poff_[static_cast<size_t>(ij.first) * N_ + ij.second];
      for (size_t t = 0; t < entries.size(); ++t) {
        pk_[base + t] = entries[t].first;
        pc_[base + t] = entries[t].second;
      }
    }

    // Sparse rows of sigma: image of basis vector j is column j of the matrix.
    soff_.assign(N_ + 1, 0);
    for (int j = 0; j < N_; ++j) {
      int cnt = 0;
      for (int i = 0; i < N_; ++i)
        if (!K.is_zero(sigma_.at(i, j))) ++cnt;
      soff_[j + 1] = soff_[j] + cnt;
    }
    sk_.resize(soff_.back());
    sc_.resize(soff_.back(), K.zero());
    for (int j = 0, t = 0; j < N_; ++j)
      for (int i = 0; i < N_; ++i)
        if (!K.is_zero(sigma_.at(i, j))) {
          sk_[t] = i;
          sc_[t] = sigma_.at(i, j);
          ++t;
        }

    if (validate) validate_axioms();
  }

  const F& field() const { return *K_; }
  int dim() const { return N_; }
  const Vec<F>& unit() const { return unit_; }
  const Matrix<F>& involution() const { return sigma_; }

  Vec<F> zero_vec() const { return Vec<F>(N_, K_->zero()); }

  // out = x * y. out must not alias x or y.
  void mul_into(std::span<const Elem> x, std::span<const Elem> y, Elem* out) const {
    const F& K = *K_;
    for (int t = 0; t < N_; ++t) out[t] = K.zero();
    for (int i = 0; i < N_; ++i) {
      if (K.is_zero(x[i])) continue;
      for (int j = 0; j < N_; ++j) {
        if (K.is_zero(y[j])) continue;
        Elem xy = K.mul(x[i], y[j]);
        size_t b = poff_[static_cast<size_t>(i) * N_ + j];
        size_t e = poff_[static_cast<size_t>(i) * N_ + j + 1];
        for (size_t t = b; t < e; ++t) out[pk_[t]] = K.add(out[pk_[t]], K.mul(xy, pc_[t]));
      }
    }
  }

  Vec<F> mul(const Vec<F>& x, const Vec<F>& y) const {
    Vec<F> out(N_, K_->zero());
    mul_into(x, y, out.data());
    return out;
  }

  void sigma_into(std::span<const Elem> x, Elem* out) const {
    const F& K = *K_;
    for (int t = 0; t < N_; ++t) out[t] = K.zero();
    for (int j = 0; j < N_; ++j) {
      if (K.is_zero(x[j])) continue;
      for (int t = soff_[j]; t < soff_[j + 1]; ++t)
        out[sk_[t]] = K.add(out[sk_[t]], K.mul(x[j], sc_[t]));
    }
  }

  Vec<F> apply_sigma(const Vec<F>& x) const {
    Vec<F> out(N_, K_->zero());
    sigma_into(x, out.data());
    return out;
  }

  // Dimension of the smallest subspace containing the unit and the given
  // elements that is stable under the product and the involution. Newly
  // accepted basis vectors are multiplied against all earlier ones (both
  // orders) and fed through sigma; stops as soon as the whole algebra is
  // reached.
  int closure_dim(std::span<const Vec<F>> gens, ClosureScratch<F>& s) const {
    scratch_reset(s);
    if (!scratch_seed(gens, s)) return N_;
    int processed = 0;
    int count = static_cast<int>(s.pivots.size());
    while (processed < count) {
      const int a = processed++;
      // sigma image first, then pairwise products with everything accepted.
      std::copy_n(&s.rows[static_cast<size_t>(a) * N_], N_, s.work.begin());
      sigma_into(std::span<const Elem>(s.work.data(), N_), s.prod.data());
      if (scratch_insert(s)) {
        if (static_cast<int>(s.pivots.size()) == N_) return N_;
      }
      count = static_cast<int>(s.pivots.size());
      for (int b = 0; b < count; ++b) {
        for (int order = 0; order < 2; ++order) {
          const Elem* x = &s.rows[static_cast<size_t>(order ? a : b) * N_];
          const Elem* y = &s.rows[static_cast<size_t>(order ? b : a) * N_];
          mul_into(std::span<const Elem>(x, N_), std::span<const Elem>(y, N_), s.prod.data());
          if (scratch_insert(s)) {
            if (static_cast<int>(s.pivots.size()) == N_) return N_;
            count = static_cast<int>(s.pivots.size());
          }
          if (a == b) break;  // x == y, both orders coincide
        }
      }
    }
    return static_cast<int>(s.pivots.size());
  }

  bool generates(std::span<const Vec<F>> gens) const {
    ClosureScratch<F> s;
    return closure_dim(gens, s) == N_;
  }
  bool generates(std::span<const Vec<F>> gens, ClosureScratch<F>& s) const {
    return closure_dim(gens, s) == N_;
  }

  // Canonical span of the generated subalgebra.
  Subspace<F> closure(std::span<const Vec<F>> gens) const {
    ClosureScratch<F> s;
    int d = closure_dim(gens, s);
    if (d == N_) return Subspace<F>::full(*K_, N_);
    Matrix<F> m(*K_, d, N_);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < N_; ++j) m.at(i, j) = s.rows[static_cast<size_t>(i) * N_ + j];
    return Subspace<F>::row_space(m);
  }

  Subspace<F> closure(const std::vector<Vec<F>>& gens) const {
    return closure(std::span<const Vec<F>>(gens.data(), gens.size()));
  }

  // Re-verifies that a subspace contains the unit and is stable under the
  // product and the involution.
  bool is_closed_subalgebra(const Subspace<F>& s) const {
    if (s.ambient() != N_) return false;
    if (!s.contains_vector(std::span<const Elem>(unit_.data(), unit_.size()))) return false;
    Vec<F> out(N_, K_->zero());
    for (int i = 0; i < s.dim(); ++i) {
      sigma_into(s.basis().row(i), out.data());
      if (!s.contains_vector(std::span<const Elem>(out.data(), out.size()))) return false;
      for (int j = 0; j < s.dim(); ++j) {
        mul_into(s.basis().row(i), s.basis().row(j), out.data());
        if (!s.contains_vector(std::span<const Elem>(out.data(), out.size()))) return false;
      }
    }
    return true;
  }

  // Solution space of D(xy) = D(x)y + xD(y), D sigma = sigma D, D(1) = 0.
  struct DerivationSpace {
    int dim = 0;
    std::vector<Matrix<F>> basis;
  };
  DerivationSpace derivations() const;

 private:
  void scratch_reset(ClosureScratch<F>& s) const {
    s.rows.assign(static_cast<size_t>(N_) * N_, K_->zero());
    s.pivots.clear();
    s.prod.assign(N_, K_->zero());
    s.work.assign(N_, K_->zero());
  }

  // Seeds with the unit, the generators and their sigma images. Returns false
  // if the span already fills the algebra.
  bool scratch_seed(std::span<const Vec<F>> gens, ClosureScratch<F>& s) const {
    std::copy(unit_.begin(), unit_.end(), s.prod.begin());
    scratch_insert(s);
    for (const auto& g : gens) {
      if (static_cast<int>(g.size()) != N_)
        throw error("closure: element does not belong to the algebra");
      std::copy(g.begin(), g.end(), s.prod.begin());
      if (scratch_insert(s) && static_cast<int>(s.pivots.size()) == N_) return false;
    }
    return true;
  }

  // Reduces s.prod against the accepted rows; if independent, appends it
  // (echelon, rows immutable once accepted). Returns true if accepted.
  bool scratch_insert(ClosureScratch<F>& s) const {
    const F& K = *K_;
    Elem* v = s.prod.data();
    const int count = static_cast<int>(s.pivots.size());
    for (int r = 0; r < count; ++r) {
      const int pc = s.pivots[r];
      if (K.is_zero(v[pc])) continue;
      const Elem f = v[pc];
      const Elem* row = &s.rows[static_cast<size_t>(r) * N_];
      for (int j = 0; j < N_; ++j)
        if (!K.is_zero(row[j])) v[j] = K.sub(v[j], K.mul(f, row[j]));
    }
    int lead = -1;
    for (int j = 0; j < N_; ++j)
      if (!K.is_zero(v[j])) {
        lead = j;
        break;
      }
    if (lead < 0) return false;
    const Elem scale = K.inv(v[lead]);
    Elem* dst = &s.rows[static_cast<size_t>(count) * N_];
    for (int j = 0; j < N_; ++j) dst[j] = K.mul(v[j], scale);
    s.pivots.push_back(lead);
    return true;
  }

  void validate_axioms() const {
    const F& K = *K_;
    // Unit axiom on all basis vectors.
    Vec<F> e(N_, K.zero()), out(N_, K.zero());
    for (int i = 0; i < N_; ++i) {
      e.assign(N_, K.zero());
      e[i] = K.one();
      mul_into(e, unit_, out.data());
      for (int t = 0; t < N_; ++t)
        if (!K.eq(out[t], e[t]))
          throw validation_error("algebra: unit axiom fails on basis element " + std::to_string(i));
      mul_into(unit_, e, out.data());
      for (int t = 0; t < N_; ++t)
        if (!K.eq(out[t], e[t]))
          throw validation_error("algebra: unit axiom fails on basis element " + std::to_string(i));
    }
    // sigma(1) = 1 and sigma^2 = id.
    Vec<F> su(N_, K.zero());
    sigma_into(unit_, su.data());
    for (int t = 0; t < N_; ++t)
      if (!K.eq(su[t], unit_[t])) throw validation_error("algebra: involution does not fix the unit");
    for (int j = 0; j < N_; ++j) {
      e.assign(N_, K.zero());
      e[j] = K.one();
      Vec<F> s1(N_, K.zero());
      sigma_into(e, s1.data());
      sigma_into(s1, out.data());
      for (int t = 0; t < N_; ++t)
        if (!K.eq(out[t], e[t]))
          throw validation_error("algebra: involution is not of order <= 2 at basis " +
                                 std::to_string(j));
    }
    // Associativity on all basis triples.
    Vec<F> ei(N_, K.zero()), ej(N_, K.zero()), ek(N_, K.zero());
    Vec<F> left(N_, K.zero()), right(N_, K.zero()), tmp(N_, K.zero());
    for (int i = 0; i < N_; ++i) {
      ei.assign(N_, K.zero());
      ei[i] = K.one();
      for (int j = 0; j < N_; ++j) {
        ej.assign(N_, K.zero());
        ej[j] = K.one();
        mul_into(ei, ej, tmp.data());
        Vec<F> eij = tmp;
        for (int k = 0; k < N_; ++k) {
          ek.assign(N_, K.zero());
          ek[k] = K.one();
          mul_into(eij, ek, left.data());
          mul_into(ej, ek, tmp.data());
          mul_into(ei, tmp, right.data());
          for (int t = 0; t < N_; ++t)
            if (!K.eq(left[t], right[t]))
              throw validation_error("algebra: associativity fails at basis triple (" +
                                     std::to_string(i) + "," + std::to_string(j) + "," +
                                     std::to_string(k) + ")");
        }
      }
    }
    // sigma(xy) = sigma(y) sigma(x) on all basis pairs.
    for (int i = 0; i < N_; ++i) {
      ei.assign(N_, K.zero());
      ei[i] = K.one();
      Vec<F> si(N_, K.zero());
      sigma_into(ei, si.data());
      for (int j = 0; j < N_; ++j) {
        ej.assign(N_, K.zero());
        ej[j] = K.one();
        Vec<F> sj(N_, K.zero());
        sigma_into(ej, sj.data());
        mul_into(ei, ej, tmp.data());
        sigma_into(tmp, left.data());
        mul_into(sj, si, right.data());
        for (int t = 0; t < N_; ++t)
          if (!K.eq(left[t], right[t]))
            throw validation_error("algebra: involution is not an anti-automorphism at pair (" +
                                   std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }

  const F* K_;
  int N_;
  std::vector<size_t> poff_;
  std::vector<int> pk_;
  std::vector<Elem> pc_;
  std::vector<int> soff_;
  std::vector<int> sk_;
  std::vector<Elem> sc_;
  Matrix<F> sigma_;
  Vec<F> unit_;

  template <class FF, class GG, class Emb>
  friend InvAlgebra<GG> base_change(const InvAlgebra<FF>&, const GG&, Emb&&);
};

template <class F>
typename InvAlgebra<F>::DerivationSpace InvAlgebra<F>::derivations() const {
  const F& K = *K_;
  const int N = N_;
  const int unknowns = N * N;  // D_{c,m} at index c*N + m

  // Incremental echelon over the unknowns.
  std::vector<Elem> rows;
  std::vector<int> pivots;
  std::vector<Elem> v(unknowns, K.zero());
  auto insert_row = [&]() {
    for (size_t r = 0; r < pivots.size(); ++r) {
      int pc = pivots[r];
      if (K.is_zero(v[pc])) continue;
      Elem f = v[pc];
      const Elem* row = &rows[r * unknowns];
      for (int j = 0; j < unknowns; ++j)
        if (!K.is_zero(row[j])) v[j] = K.sub(v[j], K.mul(f, row[j]));
    }
    int lead = -1;
    for (int j = 0; j < unknowns; ++j)
      if (!K.is_zero(v[j])) {
        lead = j;
        break;
      }
    if (lead < 0) return;
    Elem scale = K.inv(v[lead]);
    size_t base = rows.size();
    rows.resize(base + unknowns, K.zero());
    for (int j = 0; j < unknowns; ++j) rows[base + j] = K.mul(v[j], scale);
    pivots.push_back(lead);
  };

  // Products of basis vectors, indexed for both factor positions.
  // left_by[i][m]: pairs (k, w) with (e_i e_k)[m] = w; right_by[j][m]: (k, w)
  // with (e_k e_j)[m] = w.
  auto tensor_at = [&](int i, int j) {
    size_t b = poff_[static_cast<size_t>(i) * N + j];
    size_t e = poff_[static_cast<size_t>(i) * N + j + 1];
    return std::make_pair(b, e);
  };
  std::vector<std::vector<std::vector<std::pair<int, Elem>>>> left_by(N), right_by(N);
  for (int i = 0; i < N; ++i) {
    left_by[i].assign(N, {});
    right_by[i].assign(N, {});
  }
  for (int i = 0; i < N; ++i)
    for (int k = 0; k < N; ++k) {
      auto [b, e] = tensor_at(i, k);
      for (size_t t = b; t < e; ++t) left_by[i][pk_[t]].emplace_back(k, pc_[t]);
    }
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) {
      auto [b, e] = tensor_at(k, j);
      for (size_t t = b; t < e; ++t) right_by[j][pk_[t]].emplace_back(k, pc_[t]);
    }

  // Leibniz rows: coordinate c of D(e_i e_j) - D(e_i)e_j - e_i D(e_j) = 0.
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      auto [b, e] = tensor_at(i, j);
      for (int c = 0; c < N; ++c) {
        bool nonzero = false;
        std::fill(v.begin(), v.end(), K.zero());
        for (size_t t = b; t < e; ++t) {
          v[c * N + pk_[t]] = K.add(v[c * N + pk_[t]], pc_[t]);
          nonzero = true;
        }
        for (auto& [k, w] : right_by[j][c]) {
          v[k * N + i] = K.sub(v[k * N + i], w);
          nonzero = true;
        }
        for (auto& [k, w] : left_by[i][c]) {
          v[k * N + j] = K.sub(v[k * N + j], w);
          nonzero = true;
        }
        if (nonzero) insert_row();
      }
    }
  // D sigma = sigma D, rows indexed by (c, i).
  for (int i = 0; i < N; ++i)
    for (int c = 0; c < N; ++c) {
      std::fill(v.begin(), v.end(), K.zero());
      bool nonzero = false;
      for (int t = soff_[i]; t < soff_[i + 1]; ++t) {  // sigma(e_i) = sum sc e_{sk}
        v[c * N + sk_[t]] = K.add(v[c * N + sk_[t]], sc_[t]);
        nonzero = true;
      }
      for (int k = 0; k < N; ++k) {
        if (K.is_zero(sigma_.at(c, k))) continue;
        v[k * N + i] = K.sub(v[k * N + i], sigma_.at(c, k));
        nonzero = true;
      }
      if (nonzero) insert_row();
    }
  // D(1) = 0.
  for (int c = 0; c < N; ++c) {
    std::fill(v.begin(), v.end(), K.zero());
    bool nonzero = false;
    for (int k = 0; k < N; ++k)
      if (!K.is_zero(unit_[k])) {
        v[c * N + k] = unit_[k];
        nonzero = true;
      }
    if (nonzero) insert_row();
  }

  Matrix<F> constraint(K, static_cast<int>(pivots.size()), unknowns);
  for (size_t r = 0; r < pivots.size(); ++r)
    for (int j = 0; j < unknowns; ++j)
      constraint.at(static_cast<int>(r), j) = rows[r * unknowns + j];
  Subspace<F> null = kernel(constraint);

  DerivationSpace out;
  out.dim = null.dim();
  for (int t = 0; t < null.dim(); ++t) {
    Matrix<F> d(K, N, N);
    for (int c = 0; c < N; ++c)
      for (int m = 0; m < N; ++m) d.at(c, m) = null.basis().at(t, c * N + m);
    out.basis.push_back(std::move(d));
  }
  return out;
}

// Same structure constants over a larger field. The embedding must be a ring
// homomorphism on the supported field pairs.
template <class F, class G, class Emb>
InvAlgebra<G> base_change(const InvAlgebra<F>& a, const G& L, Emb&& emb) {
  using TE = typename InvAlgebra<G>::TensorEntry;
  std::vector<TE> prod;
  const int N = a.dim();
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      size_t b = a.poff_[static_cast<size_t>(i) * N + j];
      size_t e = a.poff_[static_cast<size_t>(i) * N + j + 1];
      for (size_t t = b; t < e; ++t) prod.emplace_back(i, j, a.pk_[t], emb(a.pc_[t]));
    }
  Matrix<G> sig(L, N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) sig.at(i, j) = emb(a.sigma_.at(i, j));
  Vec<G> unit(N, L.zero());
  for (int i = 0; i < N; ++i) unit[i] = emb(a.unit_[i]);
  return InvAlgebra<G>(L, N, prod, std::move(sig), std::move(unit), /*validate=*/false);
}

template <class F, class G>
Vec<G> base_change_vec(const Vec<F>& v, const F&, const G& L,
                       const std::function<typename G::Elem(const typename F::Elem&)>& emb) {
  Vec<G> out(v.size(), L.zero());
  for (size_t i = 0; i < v.size(); ++i) out[i] = emb(v[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Ingestion. Document keys: dim, field, product (quadruples [i, j, k, coeff]),
// involution (N x N, row-major), unit (length N). Indices are 0-based.

template <class F>
InvAlgebra<F> algebra_from_json(const F& K, const nlohmann::json& doc) {
  for (const char* key : {"dim", "field", "product", "involution", "unit"})
    if (!doc.contains(key))
      throw validation_error(std::string("algebra document: missing key '") + key + "'");
  int N = doc.at("dim").get<int>();
  if (N <= 0) throw validation_error("algebra document: dim must be positive");
  std::vector<typename InvAlgebra<F>::TensorEntry> prod;
  for (const auto& q : doc.at("product")) {
    if (!q.is_array() || q.size() != 4)
      throw validation_error("algebra document: product entries must be [i, j, k, coeff]");
    prod.emplace_back(q[0].get<int>(), q[1].get<int>(), q[2].get<int>(), K.parse(q[3]));
  }
  const auto& invo = doc.at("involution");
  if (!invo.is_array() || static_cast<int>(invo.size()) != N * N)
    throw validation_error("algebra document: involution must be a row-major N*N list");
  Matrix<F> sigma(K, N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) sigma.at(i, j) = K.parse(invo[i * N + j]);
  const auto& unit_doc = doc.at("unit");
  if (!unit_doc.is_array() || static_cast<int>(unit_doc.size()) != N)
    throw validation_error("algebra document: unit must be a length-N list");
  Vec<F> unit(N, K.zero());
  for (int i = 0; i < N; ++i) unit[i] = K.parse(unit_doc[i]);
  return InvAlgebra<F>(K, N, prod, std::move(sigma), std::move(unit), /*validate=*/true);
}

// Canonical fingerprint of an algebra document: elements are normalized
// through the field, keys sorted, then FNV-1a over the dump.
inline std::string algebra_fingerprint(const nlohmann::json& doc) {
  Field f = parse_field(doc.at("field").get<std::string>());
  nlohmann::json canon;
  canon["dim"] = doc.at("dim").get<int>();
  canon["field"] = field_spec(f);
  canon["product"] = nlohmann::json::array();
  return with_field(f, [&](const auto& K) {
    std::vector<std::tuple<int, int, int, nlohmann::json>> entries;
    for (const auto& q : doc.at("product")) {
      auto c = K.parse(q[3]);
      if (K.is_zero(c)) continue;
      entries.emplace_back(q[0].get<int>(), q[1].get<int>(), q[2].get<int>(), K.to_json(c));
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) {
                return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a)) <
                       std::tie(std::get<0>(b), std::get<1>(b), std::get<2>(b));
              });
    for (auto& [i, j, k, c] : entries)
      canon["product"].push_back(nlohmann::json::array({i, j, k, c}));
    canon["involution"] = nlohmann::json::array();
    for (const auto& x : doc.at("involution")) canon["involution"].push_back(K.to_json(K.parse(x)));
    canon["unit"] = nlohmann::json::array();
    for (const auto& x : doc.at("unit")) canon["unit"].push_back(K.to_json(K.parse(x)));
    return to_hex(fnv1a64(canon.dump()));
  });
}

}  // namespace invgen
