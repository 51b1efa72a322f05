#pragma once

// The swap-transpose algebra with involution on pairs of n x n matrices:
// (a, b)* = (b^t, a^t). Distinguished subalgebras, the projective action,
// explicit generating elements, matrix-identity checks, closed-form dimension
// bookkeeping and small brute-force generator searches.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "invgen/algebra.hpp"
#include "invgen/linalg.hpp"

namespace invgen {

// --------------------------------------------------------------------------
// Distinguished matrices.

template <class F>
Matrix<F> matrix_unit(const F& K, int n, int i, int j) {
  Matrix<F> m(K, n, n);
  m.at(i, j) = K.one();
  return m;
}

// u = sum of e_{i,i+1}; nilpotent with u^{n-1} = e_{0,n-1}.
template <class F>
Matrix<F> upper_shift(const F& K, int n) {
  Matrix<F> m(K, n, n);
  for (int i = 0; i + 1 < n; ++i) m.at(i, i + 1) = K.one();
  return m;
}

// d_{ij} = e_{ii} when i == j, else e_{ij} + e_{ji}.
template <class F>
Matrix<F> sym_unit(const F& K, int n, int i, int j) {
  Matrix<F> m(K, n, n);
  m.at(i, j) = K.one();
  m.at(j, i) = K.one();
  return m;
}

// Block-diagonal copies of [[0,-1],[1,0]]; n must be even.
template <class F>
Matrix<F> omega_matrix(const F& K, int n) {
  if (n % 2 != 0) throw error("omega: n must be even");
  Matrix<F> m(K, n, n);
  for (int t = 0; t < n / 2; ++t) {
    m.at(2 * t, 2 * t + 1) = K.neg(K.one());
    m.at(2 * t + 1, 2 * t) = K.one();
  }
  return m;
}

// Span of the first i standard basis vectors of K^n.
template <class F>
Subspace<F> coordinate_subspace(const F& K, int n, int i) {
  Matrix<F> m(K, i, n);
  for (int t = 0; t < i; ++t) m.at(t, t) = K.one();
  std::vector<int> piv(i);
  for (int t = 0; t < i; ++t) piv[t] = t;
  return Subspace<F>::trusted_rref(std::move(m), std::move(piv));
}

// --------------------------------------------------------------------------
// The model. Basis: (e_{ij}, 0) at index i*n+j, (0, e_{ij}) at n^2 + i*n+j.

template <class F>
class UnitaryModel {
 public:
  using Elem = typename F::Elem;

  static UnitaryModel make(const F& K, int n) {
    if (n < 1) throw error("unitary model: n must be >= 1");
    std::vector<typename InvAlgebra<F>::TensorEntry> prod;
    prod.reserve(2 * static_cast<size_t>(n) * n * n);
    for (int side = 0; side < 2; ++side) {
      int off = side * n * n;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int l = 0; l < n; ++l)
            prod.emplace_back(off + i * n + j, off + j * n + l, off + i * n + l, K.one());
    }
    Matrix<F> sigma(K, 2 * n * n, 2 * n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        sigma.at(n * n + j * n + i, i * n + j) = K.one();  // (e_ij, 0) -> (0, e_ji)
        sigma.at(j * n + i, n * n + i * n + j) = K.one();  // (0, e_ij) -> (e_ji, 0)
      }
    Vec<F> unit(2 * n * n, K.zero());
    for (int i = 0; i < n; ++i) {
      unit[i * n + i] = K.one();
      unit[n * n + i * n + i] = K.one();
    }
    UnitaryModel m(K, n, InvAlgebra<F>(K, 2 * n * n, prod, std::move(sigma), std::move(unit)));
    // Sanity on the cached shift: u^n = 0 and u^{n-1} = e_{0,n-1}.
    Matrix<F> un = m.u_.pow(n);
    if (!un.is_zero()) throw error("unitary model: shift matrix is not nilpotent");
    if (n >= 1 && m.u_.pow(n - 1) != matrix_unit(K, n, 0, n - 1))
      throw error("unitary model: u^{n-1} != e_{1,n}");
    return m;
  }

  const F& field() const { return *K_; }
  int n() const { return n_; }
  int dim() const { return alg_.dim(); }
  const InvAlgebra<F>& algebra() const { return alg_; }
  const Matrix<F>& shift() const { return u_; }
  const Matrix<F>& identity() const { return id_; }
  const Matrix<F>& omega() const {
    if (!omega_) throw error("omega: n must be even");
    return *omega_;
  }

  int left_index(int i, int j) const { return i * n_ + j; }
  int right_index(int i, int j) const { return n_ * n_ + i * n_ + j; }

  Vec<F> embed_pair(const Matrix<F>& a, const Matrix<F>& b) const {
    if (a.rows() != n_ || a.cols() != n_ || b.rows() != n_ || b.cols() != n_)
      throw error("embed_pair: matrices must be n x n");
    Vec<F> v(alg_.dim(), K_->zero());
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        v[left_index(i, j)] = a.at(i, j);
        v[right_index(i, j)] = b.at(i, j);
      }
    return v;
  }

  Matrix<F> first(const Vec<F>& v) const {
    Matrix<F> a(*K_, n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) a.at(i, j) = v[left_index(i, j)];
    return a;
  }
  Matrix<F> second(const Vec<F>& v) const {
    Matrix<F> b(*K_, n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) b.at(i, j) = v[right_index(i, j)];
    return b;
  }

  // The component-swap automorphism (a, b) -> (b, a).
  Vec<F> act_swap(const Vec<F>& v) const { return embed_pair(second(v), first(v)); }

  // {m : m V <= V} as a list of basis matrices, dimension n^2 - i(n-i).
  std::vector<Matrix<F>> stabilizer_algebra(const Subspace<F>& V) const {
    const F& K = *K_;
    if (V.ambient() != n_) throw error("stabilizer_algebra: wrong ambient dimension");
    Subspace<F> W = V.perp();
    int rows_n = V.dim() * W.dim();
    Matrix<F> constraints(K, rows_n, n_ * n_);
    int r = 0;
    for (int vi = 0; vi < V.dim(); ++vi)
      for (int wi = 0; wi < W.dim(); ++wi, ++r)
        for (int a = 0; a < n_; ++a)
          for (int b = 0; b < n_; ++b)
            constraints.at(r, a * n_ + b) = K.mul(W.basis().at(wi, a), V.basis().at(vi, b));
    Subspace<F> sol = kernel(constraints);
    std::vector<Matrix<F>> out;
    for (int t = 0; t < sol.dim(); ++t) {
      Matrix<F> m(K, n_, n_);
      for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) m.at(a, b) = sol.basis().at(t, a * n_ + b);
      out.push_back(std::move(m));
    }
    return out;
  }

  // The span of all (s, t) with s V <= V and t V^perp <= V^perp; a maximal
  // subalgebra for nontrivial V. Dimension 2(n^2 - i(n-i)) for dim V = i.
  Subspace<F> subalg_AV(const Subspace<F>& V, bool verify = true) const {
    if (V.dim() == 0 || V.dim() == n_) throw error("subalg_AV: V must be nontrivial");
    auto sv = stabilizer_algebra(V);
    auto sw = stabilizer_algebra(V.perp());
    Matrix<F> zero(*K_, n_, n_);
    std::vector<std::vector<Elem>> rows;
    for (const auto& s : sv) rows.push_back(embed_pair(s, zero));
    for (const auto& t : sw) rows.push_back(embed_pair(zero, t));
    Subspace<F> span = Subspace<F>::row_space(Matrix<F>::from_rows(*K_, rows));
    int i = V.dim();
    if (span.dim() != 2 * (n_ * n_ - i * (n_ - i)))
      throw error("subalg_AV: unexpected dimension");
    if (verify && !alg_.is_closed_subalgebra(span))
      throw error("subalg_AV: span is not involution-closed");
    return span;
  }

  // The graph {(a, p a p^{-1})}; involution-stable iff p is symmetric or
  // alternating, which is enforced. Dimension n^2.
  Subspace<F> subalg_Bp(const Matrix<F>& p, bool verify = true) const {
    auto pinv = inverse(p);
    if (!pinv) throw error("subalg_Bp: p is singular");
    if (symmetry_kind(p) == SymmetryKind::Neither)
      throw error("subalg_Bp: p must be symmetric or alternating");
    std::vector<std::vector<Elem>> rows;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        Matrix<F> e = matrix_unit(*K_, n_, i, j);
        rows.push_back(embed_pair(e, p * e * *pinv));
      }
    Subspace<F> span = Subspace<F>::row_space(Matrix<F>::from_rows(*K_, rows));
    if (span.dim() != n_ * n_) throw error("subalg_Bp: unexpected dimension");
    if (verify && !alg_.is_closed_subalgebra(span))
      throw error("subalg_Bp: span is not involution-closed");
    return span;
  }

  Vec<F> graph_element(const Matrix<F>& p, const Matrix<F>& a) const {
    auto pinv = inverse(p);
    if (!pinv) throw error("graph_element: p is singular");
    return embed_pair(a, p * a * *pinv);
  }

  // Span of the first components of a subspace of the model, as matrices.
  std::vector<Matrix<F>> first_component_algebra(const Subspace<F>& span) const {
    std::vector<std::vector<Elem>> rows;
    for (int t = 0; t < span.dim(); ++t) {
      std::vector<Elem> r(n_ * n_, K_->zero());
      for (int i = 0; i < n_ * n_; ++i) r[i] = span.basis().at(t, i);
      rows.push_back(std::move(r));
    }
    if (rows.empty()) return {};
    Subspace<F> p1 = Subspace<F>::row_space(Matrix<F>::from_rows(*K_, rows));
    std::vector<Matrix<F>> out;
    for (int t = 0; t < p1.dim(); ++t) {
      Matrix<F> m(*K_, n_, n_);
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) m.at(i, j) = p1.basis().at(t, i * n_ + j);
      out.push_back(std::move(m));
    }
    return out;
  }

 private:
  UnitaryModel(const F& K, int n, InvAlgebra<F> alg)
      : K_(&K), n_(n), alg_(std::move(alg)), u_(upper_shift(K, n)),
        id_(Matrix<F>::identity(K, n)) {
    if (n % 2 == 0) omega_ = omega_matrix(K, n);
  }

  const F* K_;
  int n_;
  InvAlgebra<F> alg_;
  Matrix<F> u_;
  Matrix<F> id_;
  std::optional<Matrix<F>> omega_;
};

// --------------------------------------------------------------------------
// The projective action [c](a, b) = (c a c^{-1}, c^{-t} b c^t).

template <class F>
struct Action {
  const UnitaryModel<F>* model;
  Matrix<F> c, cinv, ct, cinvt;

  Vec<F> apply(const Vec<F>& x) const {
    Matrix<F> a = model->first(x), b = model->second(x);
    return model->embed_pair(c * a * cinv, cinvt * b * ct);
  }

  Subspace<F> apply_span(const Subspace<F>& s) const {
    std::vector<std::vector<typename F::Elem>> rows;
    for (int i = 0; i < s.dim(); ++i) {
      Vec<F> v(s.basis().row(i).begin(), s.basis().row(i).end());
      rows.push_back(apply(v));
    }
    if (rows.empty()) return Subspace<F>::zero(model->field(), model->dim());
    return Subspace<F>::row_space(Matrix<F>::from_rows(model->field(), rows));
  }
};

template <class F>
Action<F> make_action(const UnitaryModel<F>& m, const Matrix<F>& c) {
  auto cinv = inverse(c);
  if (!cinv) throw error("action: c is singular");
  return Action<F>{&m, c, *cinv, c.transpose(), cinv->transpose()};
}

// Checks that a map given on basis vectors is an algebra-with-involution
// automorphism: preserves products, commutes with sigma, fixes the unit.
template <class F>
bool is_automorphism(const UnitaryModel<F>& m, const Action<F>& g) {
  const auto& alg = m.algebra();
  const F& K = m.field();
  int N = alg.dim();
  std::vector<Vec<F>> img(N);
  for (int i = 0; i < N; ++i) {
    Vec<F> e(N, K.zero());
    e[i] = K.one();
    img[i] = g.apply(e);
  }
  auto apply_lin = [&](const Vec<F>& x) {
    Vec<F> out(N, K.zero());
    for (int i = 0; i < N; ++i) {
      if (K.is_zero(x[i])) continue;
      for (int t = 0; t < N; ++t) out[t] = K.add(out[t], K.mul(x[i], img[i][t]));
    }
    return out;
  };
  Vec<F> gu = apply_lin(alg.unit());
  for (int t = 0; t < N; ++t)
    if (!K.eq(gu[t], alg.unit()[t])) return false;
  for (int i = 0; i < N; ++i) {
    Vec<F> ei(N, K.zero());
    ei[i] = K.one();
    if (apply_lin(alg.apply_sigma(ei)) != alg.apply_sigma(img[i])) return false;
    for (int j = 0; j < N; ++j) {
      Vec<F> ej(N, K.zero());
      ej[j] = K.one();
      if (apply_lin(alg.mul(ei, ej)) != alg.mul(img[i], img[j])) return false;
    }
  }
  return true;
}

// --------------------------------------------------------------------------
// Matrix identities for the shift u and the d_{ij}, over any field.
// Families (1-based indices i, j in [1, n], exponents up to 2n):
//   (a) u^k e_{ij} u^l = e_{i-k, j+l} when k < i and l <= n-j, else 0;
//   (b) d_{ij}^l = d_{ij} for odd l;
//   (c) d_{ij} u^{j-i} d_{ij} u^{j-i} d_{ij} = e_{ji} for i < j.

struct IdentityReport {
  int checks = 0;
  std::vector<std::string> failures;
  bool all_pass() const { return failures.empty(); }
};

template <class F>
IdentityReport identity_suite(const F& K, int n) {
  if (n < 2) throw error("identity_suite: n must be >= 2");
  IdentityReport rep;
  Matrix<F> u = upper_shift(K, n);
  std::vector<Matrix<F>> up(2 * n + 2, Matrix<F>::identity(K, n));
  for (int k = 1; k <= 2 * n + 1; ++k) up[k] = up[k - 1] * u;

  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      Matrix<F> e = matrix_unit(K, n, i - 1, j - 1);
      for (int k = 0; k <= 2 * n; ++k)
        for (int l = 0; l <= 2 * n; ++l) {
          Matrix<F> lhs = up[k] * e * up[l];
          Matrix<F> rhs = (k < i && l <= n - j) ? matrix_unit(K, n, i - k - 1, j + l - 1)
                                                : Matrix<F>(K, n, n);
          ++rep.checks;
          if (lhs != rhs)
            rep.failures.push_back("u^k e u^l at i=" + std::to_string(i) + " j=" +
                                   std::to_string(j) + " k=" + std::to_string(k) + " l=" +
                                   std::to_string(l));
        }
    }
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      Matrix<F> d = sym_unit(K, n, i - 1, j - 1);
      for (int l = 1; l <= 2 * n; l += 2) {
        ++rep.checks;
        if (d.pow(l) != d)
          rep.failures.push_back("d^l at i=" + std::to_string(i) + " j=" + std::to_string(j) +
                                 " l=" + std::to_string(l));
      }
    }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      Matrix<F> d = sym_unit(K, n, i - 1, j - 1);
      Matrix<F> braid = d * up[j - i] * d * up[j - i] * d;
      ++rep.checks;
      if (braid != matrix_unit(K, n, j - 1, i - 1))
        rep.failures.push_back("d u d u d at i=" + std::to_string(i) + " j=" + std::to_string(j));
    }
  return rep;
}

// --------------------------------------------------------------------------
// Companion algebras used by the generator checks.

// M_n with involution a -> d^{-1} a^t d for an invertible diagonal d.
template <class F>
InvAlgebra<F> transpose_invol_algebra(const F& K, int n, const std::vector<typename F::Elem>& diag) {
  if (static_cast<int>(diag.size()) != n) throw error("transpose_invol_algebra: need n diagonal entries");
  std::vector<typename InvAlgebra<F>::TensorEntry> prod;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) prod.emplace_back(i * n + j, j * n + l, i * n + l, K.one());
  Matrix<F> sigma(K, n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (K.is_zero(diag[i]) || K.is_zero(diag[j]))
        throw error("transpose_invol_algebra: diagonal must be invertible");
      // e_ij -> (d_i / d_j) e_ji
      sigma.at(j * n + i, i * n + j) = K.mul(diag[i], K.inv(diag[j]));
    }
  Vec<F> unit(n * n, K.zero());
  for (int i = 0; i < n; ++i) unit[i * n + i] = K.one();
  return InvAlgebra<F>(K, n * n, prod, std::move(sigma), std::move(unit));
}

// M_n with involution a -> Omega a^t Omega^{-1}; n even.
template <class F>
InvAlgebra<F> symplectic_invol_algebra(const F& K, int n) {
  Matrix<F> om = omega_matrix(K, n);
  Matrix<F> ominv = *inverse(om);
  std::vector<typename InvAlgebra<F>::TensorEntry> prod;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) prod.emplace_back(i * n + j, j * n + l, i * n + l, K.one());
  Matrix<F> sigma(K, n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Matrix<F> img = om * matrix_unit(K, n, j, i) * ominv;  // image of e_ij
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) sigma.at(a * n + b, i * n + j) = img.at(a, b);
    }
  Vec<F> unit(n * n, K.zero());
  for (int i = 0; i < n; ++i) unit[i * n + i] = K.one();
  return InvAlgebra<F>(K, n * n, prod, std::move(sigma), std::move(unit));
}

// Flattens an n x n matrix into coordinates of the two algebras above.
template <class F>
Vec<F> flatten_matrix(const Matrix<F>& m) {
  Vec<F> v(static_cast<size_t>(m.rows()) * m.cols(), m.field().zero());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v[i * m.cols() + j] = m.at(i, j);
  return v;
}

// M_n over the quadratic extension L = F_{q^2}, with conjugate transpose, as
// an algebra over F_q of dimension 2n^2. Basis index: (i*n+j)*2 + t for
// e_ij * g^t, g the canonical generator of L. Returns the algebra together
// with the single generating element gI + u.
struct HermitianAlgebra {
  InvAlgebra<PrimeField> alg;
  Vec<PrimeField> generator;
  std::string extension_spec;
};

inline HermitianAlgebra hermitian_algebra(uint64_t q, int n) {
  const PrimeField& K = prime_field(q);
  const ExtField& L = extension_field(q, 2);
  auto idx = [n](int i, int j, int t) { return (i * n + j) * 2 + t; };
  const auto& mod = L.modulus();  // x^2 + c1 x + c0
  uint64_t g2_0 = K.neg(mod[0]), g2_1 = K.neg(mod[1]);  // g^2 = -c0 - c1 g
  std::vector<InvAlgebra<PrimeField>::TensorEntry> prod;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        for (int s = 0; s < 2; ++s)
          for (int t = 0; t < 2; ++t) {
            if (s + t < 2) {
              prod.emplace_back(idx(i, j, s), idx(j, l, t), idx(i, l, s + t), K.one());
            } else {
              if (g2_0) prod.emplace_back(idx(i, j, s), idx(j, l, t), idx(i, l, 0), g2_0);
              if (g2_1) prod.emplace_back(idx(i, j, s), idx(j, l, t), idx(i, l, 1), g2_1);
            }
          }
  // conj(g) = g^q, expressed in the basis {1, g}.
  ExtField::Elem conj_g = L.pow(L.generator(), q);
  Matrix<PrimeField> sigma(K, 2 * n * n, 2 * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      sigma.at(idx(j, i, 0), idx(i, j, 0)) = K.one();
      if (conj_g[0]) sigma.at(idx(j, i, 0), idx(i, j, 1)) = conj_g[0];
      if (conj_g[1]) sigma.at(idx(j, i, 1), idx(i, j, 1)) = conj_g[1];
    }
  Vec<PrimeField> unit(2 * n * n, 0);
  for (int i = 0; i < n; ++i) unit[idx(i, i, 0)] = K.one();
  Vec<PrimeField> gen(2 * n * n, 0);
  for (int i = 0; i < n; ++i) gen[idx(i, i, 1)] = K.one();
  for (int i = 0; i + 1 < n; ++i) gen[idx(i, i + 1, 0)] = K.one();
  return HermitianAlgebra{
      InvAlgebra<PrimeField>(K, 2 * n * n, prod, std::move(sigma), std::move(unit)),
      std::move(gen), L.spec()};
}

// --------------------------------------------------------------------------
// Explicit generating elements.

template <class F>
Vec<F> full_generator(const UnitaryModel<F>& m) {
  const F& K = m.field();
  int n = m.n();
  return m.embed_pair(upper_shift(K, n), sym_unit(K, n, 0, n - 1));
}

template <class F>
Vec<F> av_generator(const UnitaryModel<F>& m, int k, const typename F::Elem& alpha) {
  const F& K = m.field();
  int n = m.n();
  if (k < 1 || k > n - 1) throw error("av_generator: k must be in [1, n-1]");
  if (K.is_zero(alpha) || K.eq(alpha, K.one()) || K.eq(alpha, K.neg(K.one())))
    throw error("av_generator: alpha must avoid {0, 1, -1}");
  Matrix<F> d = sym_unit(K, n, 0, k - 1) + sym_unit(K, n, k, n - 1).scaled(alpha);
  return m.embed_pair(upper_shift(K, n), d);
}

template <class F>
Vec<F> bi_generator(const UnitaryModel<F>& m) {
  return m.embed_pair(m.shift(), m.shift());
}

template <class F>
Vec<F> bomega_generator(const UnitaryModel<F>& m) {
  if (m.n() % 2 != 0 || m.n() <= 2)
    throw error("bomega_generator: single generator needs even n > 2");
  return m.graph_element(m.omega(), m.shift());
}

template <class F>
std::pair<Vec<F>, Vec<F>> bomega2_pair(const UnitaryModel<F>& m) {
  if (m.n() != 2) throw error("bomega2_pair: n must be 2");
  const F& K = m.field();
  return {m.graph_element(m.omega(), matrix_unit(K, 2, 0, 1)),
          m.graph_element(m.omega(), matrix_unit(K, 2, 1, 0))};
}

// --------------------------------------------------------------------------
// Closed-form dimension bookkeeping.

struct DimRecord {
  int n = 0, r = 0;
  unsigned long long characteristic = 0;
  long long ambient = 0;  // r * dim A = 2 r n^2
  long long dim_Zr = 0;
  long long codim = 0;  // c_A(r)
  long long dim_G = 0;
  std::vector<long long> dim_X;    // index i-1 holds the component for dim V = i
  std::vector<long long> s_i;      // (2r-1)(n^2 - i(n-i)) + 1
  std::vector<long long> stab_AV;  // n^2 - i(n-i) - 1
  long long dim_Y = 0;
  bool dim_Y_exact = true;  // upper bound only in characteristic 2
  long long stab_BI = 0;    // n(n-1)/2; a lower bound in characteristic 2
  bool stab_BI_exact = true;
  std::optional<long long> dim_Yprime;
  std::optional<long long> stab_BOmega;  // n(n+1)/2
};

inline DimRecord dims(int n, int r, unsigned long long characteristic = 0) {
  if (n < 1 || r < 1) throw error("dims: n and r must be >= 1");
  DimRecord d;
  d.n = n;
  d.r = r;
  d.characteristic = characteristic;
  long long nn = static_cast<long long>(n) * n;
  d.ambient = 2 * static_cast<long long>(r) * nn;
  d.dim_G = nn - 1;
  if (n == 1) {
    d.dim_Zr = r;
    d.codim = r;
    d.dim_Y = r;
    d.dim_Y_exact = true;
    d.stab_BI = 0;
    return d;
  }
  d.dim_Zr = 2 * static_cast<long long>(r) * nn - (2 * r - 1) * (n - 1);
  d.codim = static_cast<long long>(2 * r - 1) * (n - 1);
  for (int i = 1; i <= n - 1; ++i) {
    long long cell = static_cast<long long>(i) * (n - i);
    d.dim_X.push_back(2 * static_cast<long long>(r) * nn - (2 * r - 1) * cell);
    d.s_i.push_back((2 * static_cast<long long>(r) - 1) * (nn - cell) + 1);
    d.stab_AV.push_back(nn - cell - 1);
  }
  d.stab_BI = static_cast<long long>(n) * (n - 1) / 2;
  d.stab_BI_exact = characteristic != 2;
  d.dim_Y = (static_cast<long long>(r) + 1) * nn - d.stab_BI - 1;
  d.dim_Y_exact = characteristic != 2;
  if (n % 2 == 0) {
    d.stab_BOmega = static_cast<long long>(n) * (n + 1) / 2;
    d.dim_Yprime = (static_cast<long long>(r) + 1) * nn - *d.stab_BOmega - 1;
  }
  return d;
}

// General orbit-data bound: dim G + max_i (r dim A_i - dim H_i), exact when
// some maximizing subalgebra is generated by r elements.

struct OrbitDatum {
  std::string label;
  long long dim_subalgebra = 0;
  long long dim_stabilizer = 0;
  bool generated_by_r = false;
};

struct DimZrBound {
  long long bound = 0;
  bool exact = false;
  std::vector<std::string> maximizers;
};

inline DimZrBound general_dim_Zr(long long dim_G, std::span<const OrbitDatum> orbits, int r) {
  if (orbits.empty()) throw error("general_dim_Zr: empty orbit list");
  DimZrBound out;
  long long best = 0;
  bool first = true;
  for (const auto& o : orbits) {
    long long v = static_cast<long long>(r) * o.dim_subalgebra - o.dim_stabilizer;
    if (first || v > best) {
      best = v;
      first = false;
    }
  }
  for (const auto& o : orbits) {
    long long v = static_cast<long long>(r) * o.dim_subalgebra - o.dim_stabilizer;
    if (v == best) {
      out.maximizers.push_back(o.label);
      if (o.generated_by_r) out.exact = true;
    }
  }
  out.bound = dim_G + best;
  return out;
}

inline std::vector<OrbitDatum> unitary_orbit_data(int n, int r,
                                                  unsigned long long characteristic = 0) {
  std::vector<OrbitDatum> out;
  long long nn = static_cast<long long>(n) * n;
  if (n == 1) {
    out.push_back({"B[I]", 1, 0, true});  // generated by the empty set
    return out;
  }
  for (int i = 1; i <= n - 1; ++i) {
    long long cell = static_cast<long long>(i) * (n - i);
    out.push_back({"A_V(" + std::to_string(i) + ")", 2 * (nn - cell), nn - cell - 1, r >= 1});
  }
  out.push_back({"B[I]", nn, static_cast<long long>(n) * (n - 1) / 2, r >= 1});
  if (n % 2 == 0) {
    int gen = n == 2 ? 2 : 1;
    out.push_back({"B[Omega]", nn, static_cast<long long>(n) * (n + 1) / 2, r >= gen});
  }
  (void)characteristic;
  return out;
}

// --------------------------------------------------------------------------
// Exhaustive generator search inside a closed subalgebra of the model.

template <class F>
struct BrutePerR {
  int r = 0;
  uint64_t tuples_tested = 0;
  bool found = false;
  int max_closure_dim = 0;
  std::vector<Vec<F>> witness;
};

template <class F>
struct BruteForceReport {
  int target_dim = 0;
  int minimal_r = -1;  // -1: not found up to r_max
  std::vector<BrutePerR<F>> per_r;
};

template <class F>
BruteForceReport<F> gen_count_bruteforce(const UnitaryModel<F>& m, const Subspace<F>& target,
                                         int r_max, uint64_t budget = 100000000ull) {
  const F& K = m.field();
  if (!K.finite()) throw error("gen_count_bruteforce: field must be finite");
  if (!m.algebra().is_closed_subalgebra(target))
    throw error("gen_count_bruteforce: target is not a closed subalgebra");
  uint64_t q = K.order();
  int d = target.dim();
  BruteForceReport<F> rep;
  rep.target_dim = d;
  ClosureScratch<F> scratch;
  for (int r = 0; r <= r_max; ++r) {
    BrutePerR<F> row;
    row.r = r;
    // q^(r*d) combinations of coefficients.
    uint64_t total = 1;
    for (int t = 0; t < r * d; ++t) {
      if (total > budget / q)
        throw budget_error("gen_count_bruteforce: search space exceeds budget at r = " +
                           std::to_string(r));
      total *= q;
    }
    std::vector<uint64_t> digits(static_cast<size_t>(r) * d, 0);
    std::vector<Vec<F>> tuple(r, m.algebra().zero_vec());
    for (uint64_t it = 0; it < total; ++it) {
      for (int e = 0; e < r; ++e) {
        Vec<F>& v = tuple[e];
        std::fill(v.begin(), v.end(), K.zero());
        for (int t = 0; t < d; ++t) {
          typename F::Elem c = K.elem_at(digits[e * d + t]);
          if (K.is_zero(c)) continue;
          for (int col = 0; col < m.dim(); ++col)
            v[col] = K.add(v[col], K.mul(c, target.basis().at(t, col)));
        }
      }
      int cl = m.algebra().closure_dim(std::span<const Vec<F>>(tuple.data(), tuple.size()), scratch);
      row.max_closure_dim = std::max(row.max_closure_dim, cl);
      ++row.tuples_tested;
      if (cl == d && !row.found) {
        row.found = true;
        row.witness = tuple;
      }
      if (!odometer_advance(digits, q)) break;
    }
    bool found = row.found;
    rep.per_r.push_back(std::move(row));
    if (found) {
      rep.minimal_r = r;
      break;
    }
  }
  return rep;
}

}  // namespace invgen
