#pragma once

// Dense exact linear algebra over any of the coefficient fields: RREF,
// kernels, canonical subspaces, subspace enumeration, characteristic
// polynomials.

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "invgen/errors.hpp"
#include "invgen/field.hpp"
#include "invgen/util.hpp"

namespace invgen {

template <class F>
class Matrix {
 public:
  using Elem = typename F::Elem;

  Matrix() : K_(nullptr), rows_(0), cols_(0) {}
  Matrix(const F& K, int rows, int cols)
      : K_(&K), rows_(rows), cols_(cols),
        a_(static_cast<size_t>(rows) * cols, K.zero()) {
    if (rows < 0 || cols < 0) throw error("matrix: negative dimensions");
  }

  static Matrix identity(const F& K, int n) {
    Matrix m(K, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = K.one();
    return m;
  }

  static Matrix from_rows(const F& K, const std::vector<std::vector<Elem>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    Matrix m(K, r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[i].size()) != c) throw error("matrix: ragged rows");
      for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_ints(const F& K, int rows, int cols,
                          std::initializer_list<long long> vals) {
    Matrix m(K, rows, cols);
    if (static_cast<int>(vals.size()) != rows * cols) throw error("matrix: wrong literal count");
    auto it = vals.begin();
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m.at(i, j) = K.from_int(*it++);
    return m;
  }

  const F& field() const { return *K_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Elem& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Elem& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
  std::span<const Elem> row(int i) const {
    return std::span<const Elem>(a_.data() + static_cast<size_t>(i) * cols_, cols_);
  }
  std::span<Elem> row(int i) {
    return std::span<Elem>(a_.data() + static_cast<size_t>(i) * cols_, cols_);
  }

  Matrix transpose() const {
    Matrix t(*K_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix r(*K_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = K_->add(a_[i], o.a_[i]);
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix r(*K_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = K_->sub(a_[i], o.a_[i]);
    return r;
  }
  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw error("matrix multiply: shape mismatch");
    Matrix r(*K_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Elem& aik = at(i, k);
        if (K_->is_zero(aik)) continue;
        for (int j = 0; j < o.cols_; ++j)
          r.at(i, j) = K_->add(r.at(i, j), K_->mul(aik, o.at(k, j)));
      }
    return r;
  }
  Matrix scaled(const Elem& c) const {
    Matrix r(*K_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = K_->mul(a_[i], c);
    return r;
  }
  Matrix negated() const {
    Matrix r(*K_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = K_->neg(a_[i]);
    return r;
  }
  Matrix pow(unsigned e) const {
    if (!square()) throw error("matrix pow: not square");
    Matrix r = identity(*K_, rows_);
    Matrix base = *this;
    while (e) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }

  bool operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t i = 0; i < a_.size(); ++i)
      if (!K_->eq(a_[i], o.a_[i])) return false;
    return true;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool is_zero() const {
    for (const auto& x : a_)
      if (!K_->is_zero(x)) return false;
    return true;
  }
  Elem trace() const {
    if (!square()) throw error("trace: not square");
    Elem t = K_->zero();
    for (int i = 0; i < rows_; ++i) t = K_->add(t, at(i, i));
    return t;
  }

  std::vector<Elem> mul_vec(std::span<const Elem> v) const {
    if (static_cast<int>(v.size()) != cols_) throw error("mul_vec: length mismatch");
    std::vector<Elem> out(rows_, K_->zero());
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (!K_->is_zero(at(i, j))) out[i] = K_->add(out[i], K_->mul(at(i, j), v[j]));
    return out;
  }

  std::string to_string() const {
    std::string s = "[";
    for (int i = 0; i < rows_; ++i) {
      s += i ? "; " : "";
      for (int j = 0; j < cols_; ++j) s += (j ? "," : "") + K_->to_string(at(i, j));
    }
    return s + "]";
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw error("matrix op: shape mismatch");
  }

  const F* K_;
  int rows_, cols_;
  std::vector<Elem> a_;
};

// ---------------------------------------------------------------------------
// Row reduction. Pivots are the first nonzero entry scanning left to right,
// rows processed top-down, so the result is deterministic.

template <class F>
struct RrefResult {
  Matrix<F> mat;
  int rank = 0;
  std::vector<int> pivots;
};

template <class F>
RrefResult<F> rref(Matrix<F> m) {
  const F& K = m.field();
  int rows = m.rows(), cols = m.cols();
  RrefResult<F> res;
  res.pivots.clear();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (!K.is_zero(m.at(i, c))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    typename F::Elem scale = K.inv(m.at(r, c));
    for (int j = c; j < cols; ++j) m.at(r, j) = K.mul(m.at(r, j), scale);
    for (int i = 0; i < rows; ++i) {
      if (i == r || K.is_zero(m.at(i, c))) continue;
      typename F::Elem f = m.at(i, c);
      for (int j = c; j < cols; ++j)
        m.at(i, j) = K.sub(m.at(i, j), K.mul(f, m.at(r, j)));
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  res.mat = std::move(m);
  return res;
}

template <class F>
int rank(const Matrix<F>& m) {
  return rref(m).rank;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  if (!m.square()) throw error("inverse: not square");
  const F& K = m.field();
  int n = m.rows();
  Matrix<F> aug(K, n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = K.one();
  }
  RrefResult<F> r = rref(std::move(aug));
  if (r.rank < n || r.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<F> inv(K, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = r.mat.at(i, n + j);
  return inv;
}

template <class F>
bool invertible(const Matrix<F>& m) {
  return m.square() && rank(m) == m.rows();
}

// ---------------------------------------------------------------------------
// Subspaces of K^n in canonical reduced-row-echelon basis form. Equal
// subspaces have identical basis rows, so == is representation equality.

template <class F>
class Subspace {
 public:
  using Elem = typename F::Elem;

  Subspace() = default;

  static Subspace zero(const F& K, int n) {
    Subspace s;
    s.basis_ = Matrix<F>(K, 0, n);
    return s;
  }
  static Subspace full(const F& K, int n) { return row_space(Matrix<F>::identity(K, n)); }

  static Subspace row_space(const Matrix<F>& m) {
    RrefResult<F> r = rref(m);
    Subspace s;
    s.basis_ = Matrix<F>(m.field(), r.rank, m.cols());
    for (int i = 0; i < r.rank; ++i)
      for (int j = 0; j < m.cols(); ++j) s.basis_.at(i, j) = r.mat.at(i, j);
    s.pivots_ = std::move(r.pivots);
    return s;
  }

  // Rows must already be in RREF; used by enumeration to skip re-reduction.
  static Subspace trusted_rref(Matrix<F> m, std::vector<int> pivots) {
    Subspace s;
    s.basis_ = std::move(m);
    s.pivots_ = std::move(pivots);
    return s;
  }

  const F& field() const { return basis_.field(); }
  int ambient() const { return basis_.cols(); }
  int dim() const { return basis_.rows(); }
  const Matrix<F>& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  bool contains_vector(std::span<const Elem> v) const {
    const F& K = field();
    if (static_cast<int>(v.size()) != ambient()) throw error("subspace: ambient-dimension mismatch");
    std::vector<Elem> w(v.begin(), v.end());
    for (int i = 0; i < dim(); ++i) {
      const Elem& c = w[pivots_[i]];
      if (K.is_zero(c)) continue;
      Elem f = c;
      for (int j = pivots_[i]; j < ambient(); ++j)
        w[j] = K.sub(w[j], K.mul(f, basis_.at(i, j)));
    }
    for (const auto& x : w)
      if (!K.is_zero(x)) return false;
    return true;
  }

  bool contains(const Subspace& o) const {
    check_ambient(o);
    for (int i = 0; i < o.dim(); ++i)
      if (!contains_vector(o.basis_.row(i))) return false;
    return true;
  }

  bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  Subspace sum(const Subspace& o) const {
    check_ambient(o);
    Matrix<F> stacked(field(), dim() + o.dim(), ambient());
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < ambient(); ++j) stacked.at(i, j) = basis_.at(i, j);
    for (int i = 0; i < o.dim(); ++i)
      for (int j = 0; j < ambient(); ++j) stacked.at(dim() + i, j) = o.basis_.at(i, j);
    return row_space(stacked);
  }

  // Orthogonal complement w.r.t. the standard bilinear pairing x^t y.
  Subspace perp() const;

  Subspace intersect(const Subspace& o) const {
    check_ambient(o);
    return perp().sum(o.perp()).perp();
  }

 private:
  void check_ambient(const Subspace& o) const {
    if (ambient() != o.ambient()) throw error("subspace: ambient-dimension mismatch");
  }

  Matrix<F> basis_;
  std::vector<int> pivots_;
};

// Kernel {x : Mx = 0} in canonical form.
template <class F>
Subspace<F> kernel(const Matrix<F>& m) {
  const F& K = m.field();
  RrefResult<F> r = rref(m);
  int n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (int c : r.pivots) is_pivot[c] = true;
  std::vector<std::vector<typename F::Elem>> rows;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    std::vector<typename F::Elem> v(n, K.zero());
    v[c] = K.one();
    for (int i = 0; i < r.rank; ++i) v[r.pivots[i]] = K.neg(r.mat.at(i, c));
    rows.push_back(std::move(v));
  }
  if (rows.empty()) return Subspace<F>::zero(K, n);
  return Subspace<F>::row_space(Matrix<F>::from_rows(K, rows));
}

template <class F>
Subspace<F> Subspace<F>::perp() const {
  return kernel(basis_);
}

// ---------------------------------------------------------------------------
// Subspace enumeration over a finite field: every d-dimensional subspace of
// K^n exactly once, by pivot-column set (lexicographic) and then free entries
// (odometer over element indices, last free position fastest).

inline mpz_class gaussian_binomial(int n, int d, const mpz_class& q) {
  if (d < 0 || d > n) return 0;
  mpz_class num = 1, den = 1;
  for (int i = 0; i < d; ++i) {
    mpz_class qn, qd;
    mpz_pow_ui(qn.get_mpz_t(), q.get_mpz_t(), n - i);
    mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), i + 1);
    num *= qn - 1;
    den *= qd - 1;
  }
  return num / den;
}

// visit: bool(const Subspace<F>&); return false to stop early.
template <class F, class Visit>
void for_each_subspace(const F& K, int n, int d, uint64_t budget, Visit&& visit) {
  if (!K.finite()) throw error("subspace enumeration requires a finite field");
  if (d < 0 || d > n) throw error("subspace enumeration: bad dimension");
  mpz_class count = gaussian_binomial(n, d, mpz_class(static_cast<unsigned long>(K.order())));
  if (count > budget)
    throw budget_error("subspace enumeration refused: projected count " + count.get_str() +
                       " exceeds budget " + std::to_string(budget));
  if (d == 0) {
    visit(Subspace<F>::zero(K, n));
    return;
  }
  uint64_t q = K.order();
  std::vector<int> piv(d);
  for (int i = 0; i < d; ++i) piv[i] = i;
  while (true) {
    // Free positions: entries right of each pivot, excluding pivot columns.
    std::vector<bool> is_pivot(n, false);
    for (int c : piv) is_pivot[c] = true;
    std::vector<std::pair<int, int>> free_pos;
    for (int i = 0; i < d; ++i)
      for (int j = piv[i] + 1; j < n; ++j)
        if (!is_pivot[j]) free_pos.emplace_back(i, j);

    std::vector<uint64_t> digits(free_pos.size(), 0);
    while (true) {
      Matrix<F> m(K, d, n);
      for (int i = 0; i < d; ++i) m.at(i, piv[i]) = K.one();
      for (size_t t = 0; t < free_pos.size(); ++t)
        m.at(free_pos[t].first, free_pos[t].second) = K.elem_at(digits[t]);
      if (!visit(Subspace<F>::trusted_rref(std::move(m), piv))) return;
      if (!odometer_advance(digits, q)) break;
    }

    // Next pivot combination, lexicographic.
    int i = d - 1;
    while (i >= 0 && piv[i] == n - d + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < d; ++j) piv[j] = piv[j - 1] + 1;
  }
}

// ---------------------------------------------------------------------------

enum class SymmetryKind { SymmetricNonAlternating, Alternating, Neither };

inline std::string symmetry_kind_name(SymmetryKind k) {
  switch (k) {
    case SymmetryKind::SymmetricNonAlternating: return "symmetric-nonalternating";
    case SymmetryKind::Alternating: return "alternating";
    default: return "neither";
  }
}

// Alternating means skew-symmetric with zero diagonal; the diagonal condition
// matters only in characteristic 2.
template <class F>
SymmetryKind symmetry_kind(const Matrix<F>& p) {
  if (!p.square()) throw error("symmetry_kind: matrix not square");
  const F& K = p.field();
  bool skew = true, zero_diag = true, sym = true;
  for (int i = 0; i < p.rows(); ++i) {
    if (!K.is_zero(p.at(i, i))) zero_diag = false;
    for (int j = 0; j < p.cols(); ++j) {
      if (!K.eq(p.at(i, j), K.neg(p.at(j, i)))) skew = false;
      if (!K.eq(p.at(i, j), p.at(j, i))) sym = false;
    }
  }
  if (skew && zero_diag) return SymmetryKind::Alternating;
  if (sym) return SymmetryKind::SymmetricNonAlternating;
  return SymmetryKind::Neither;
}

// ---------------------------------------------------------------------------
// Characteristic polynomial by the Samuelson recurrence (division-free):
// p_r(x) = (x - a) p_{r-1}(x) - sum_k x^k sum_{j>k} c_j (R B^{j-k-1} S),
// where B is the leading principal (r-1)-block, S/R the bordering column/row
// and a the corner entry. Coefficients ascend: result[i] is the x^i term.
template <class F>
std::vector<typename F::Elem> char_poly(const Matrix<F>& m) {
  if (!m.square()) throw error("char_poly: not square");
  const F& K = m.field();
  int n = m.rows();
  std::vector<typename F::Elem> p{K.one()};
  if (n == 0) return p;
  p = {K.neg(m.at(0, 0)), K.one()};
  for (int r = 2; r <= n; ++r) {
    // w[m] = R B^m S for m = 0..r-2.
    std::vector<typename F::Elem> y(r - 1);
    for (int i = 0; i < r - 1; ++i) y[i] = m.at(i, r - 1);
    std::vector<typename F::Elem> w(r - 1, K.zero());
    for (int t = 0; t <= r - 2; ++t) {
      typename F::Elem acc = K.zero();
      for (int j = 0; j < r - 1; ++j) acc = K.add(acc, K.mul(m.at(r - 1, j), y[j]));
      w[t] = acc;
      if (t == r - 2) break;
      std::vector<typename F::Elem> y2(r - 1, K.zero());
      for (int i = 0; i < r - 1; ++i)
        for (int j = 0; j < r - 1; ++j)
          if (!K.is_zero(m.at(i, j))) y2[i] = K.add(y2[i], K.mul(m.at(i, j), y[j]));
      y = std::move(y2);
    }
    std::vector<typename F::Elem> next(r + 1, K.zero());
    const typename F::Elem& a = m.at(r - 1, r - 1);
    for (int j = 0; j < r; ++j) {
      next[j + 1] = K.add(next[j + 1], p[j]);
      next[j] = K.sub(next[j], K.mul(a, p[j]));
    }
    for (int k = 0; k <= r - 2; ++k) {
      typename F::Elem acc = K.zero();
      for (int j = k + 1; j <= r - 1; ++j) acc = K.add(acc, K.mul(p[j], w[j - k - 1]));
      next[k] = K.sub(next[k], acc);
    }
    p = std::move(next);
  }
  return p;
}

template <class F>
typename F::Elem eval_poly(const F& K, const std::vector<typename F::Elem>& coeffs,
                           const typename F::Elem& x) {
  typename F::Elem r = K.zero();
  for (size_t i = coeffs.size(); i-- > 0;) r = K.add(K.mul(r, x), coeffs[i]);
  return r;
}

}  // namespace invgen
