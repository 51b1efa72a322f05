#pragma once

// Witness classification for tuples in the swap-transpose model over a finite
// field. A non-generating tuple is certified by an invariant subspace (found
// over the base field or an extension) or by an invertible conjugating matrix
// of symmetric or alternating kind. A non-generating tuple that survives a
// complete search with no witness raises theory_violation.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "invgen/unitary.hpp"
#include "json.hpp"

namespace invgen {

struct ClassifyOptions {
  bool all_witnesses = false;
  int max_ext = 0;  // 0: defaults to n
  uint64_t subspace_budget = 200000;
  uint64_t conjugator_budget = 200000;
  uint64_t root_budget = 1000000;  // field size cap for eigenvalue scans
};

template <class BF>
struct SubspaceWitness {
  int dim_v = 0;
  int ext_degree = 1;
  Subspace<BF> v_base;            // set when ext_degree == 1
  const ExtField* ext = nullptr;  // set when ext_degree > 1
  Subspace<ExtField> v_ext;
};

template <class BF>
struct ConjugatorWitness {
  Matrix<BF> p;
  SymmetryKind kind = SymmetryKind::Neither;
};

template <class BF>
struct ClassifyOutcome {
  bool generates = false;
  int closure_dim = 0;
  std::vector<SubspaceWitness<BF>> subspaces;  // at most one per subspace dimension
  std::optional<ConjugatorWitness<BF>> symmetric_conj;
  std::optional<ConjugatorWitness<BF>> alternating_conj;
  bool truncated = false;

  int witness_classes() const {
    return static_cast<int>(subspaces.size()) + (symmetric_conj ? 1 : 0) +
           (alternating_conj ? 1 : 0);
  }
};

template <class BF>
nlohmann::json tuple_to_json(const UnitaryModel<BF>& m, std::span<const Vec<BF>> tuple) {
  const BF& K = m.field();
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& x : tuple) {
    Matrix<BF> a = m.first(x), b = m.second(x);
    nlohmann::json ja = nlohmann::json::array(), jb = nlohmann::json::array();
    for (int i = 0; i < m.n(); ++i)
      for (int j = 0; j < m.n(); ++j) {
        ja.push_back(K.to_json(a.at(i, j)));
        jb.push_back(K.to_json(b.at(i, j)));
      }
    pairs.push_back({{"a", ja}, {"b", jb}});
  }
  return {{"n", m.n()}, {"field", K.spec()}, {"pairs", pairs}};
}

namespace detail {

// First subspace of dimension d (in canonical enumeration order) kept
// invariant by every generator, or nullopt. Sets exhaustive=false when the
// enumeration was refused for budget reasons.
template <class F>
std::optional<Subspace<F>> find_invariant_subspace(const F& K,
                                                   const std::vector<Matrix<F>>& gens, int n,
                                                   int d, uint64_t budget, bool& exhaustive) {
  exhaustive = true;
  std::optional<Subspace<F>> found;
  auto invariant = [&](const Subspace<F>& V) {
    for (const auto& m : gens)
      for (int t = 0; t < V.dim(); ++t) {
        auto w = m.mul_vec(V.basis().row(t));
        if (!V.contains_vector(std::span<const typename F::Elem>(w.data(), w.size())))
          return false;
      }
    return true;
  };
  try {
    for_each_subspace(K, n, d, budget, [&](const Subspace<F>& V) {
      if (invariant(V)) {
        found = V;
        return false;
      }
      return true;
    });
  } catch (const budget_error&) {
    exhaustive = false;
  }
  return found;
}

// Eigenvector spin-up: for each generator, scan the field for eigenvalues of
// its characteristic polynomial, spin each eigenvector under the whole
// generator set and keep the proper invariant subspaces that appear. Partial
// by nature; used only when enumeration is over budget.
template <class F>
std::vector<Subspace<F>> eigen_spin_subspaces(const F& K, const std::vector<Matrix<F>>& gens,
                                              int n, uint64_t root_budget) {
  std::vector<Subspace<F>> out;
  if (!K.finite() || K.order() > root_budget) return out;
  auto spin = [&](std::span<const typename F::Elem> v0) {
    std::vector<std::vector<typename F::Elem>> rows{{v0.begin(), v0.end()}};
    Subspace<F> span = Subspace<F>::row_space(Matrix<F>::from_rows(K, rows));
    bool grew = true;
    while (grew && span.dim() < n) {
      grew = false;
      for (const auto& m : gens)
        for (int t = 0; t < span.dim(); ++t) {
          auto w = m.mul_vec(span.basis().row(t));
          if (!span.contains_vector(std::span<const typename F::Elem>(w.data(), w.size()))) {
            std::vector<std::vector<typename F::Elem>> stack;
            for (int s = 0; s < span.dim(); ++s) {
              auto r = span.basis().row(s);
              stack.push_back({r.begin(), r.end()});
            }
            stack.push_back(w);
            span = Subspace<F>::row_space(Matrix<F>::from_rows(K, stack));
            grew = true;
            break;
          }
        }
    }
    return span;
  };
  for (const auto& m : gens) {
    auto cp = char_poly(m);
    for (uint64_t i = 0; i < K.order(); ++i) {
      typename F::Elem lam = K.elem_at(i);
      if (!K.is_zero(eval_poly(K, cp, lam))) continue;
      Matrix<F> shifted = m - Matrix<F>::identity(K, n).scaled(lam);
      Subspace<F> eig = kernel(shifted);
      for (int t = 0; t < eig.dim(); ++t) {
        Subspace<F> w = spin(eig.basis().row(t));
        if (w.dim() > 0 && w.dim() < n) {
          bool dup = false;
          for (const auto& known : out) dup = dup || known == w;
          if (!dup) out.push_back(w);
        }
      }
    }
  }
  return out;
}

// Basis of the matrices of the requested symmetry kind.
template <class F>
std::vector<Matrix<F>> symmetry_param_basis(const F& K, int n, SymmetryKind kind) {
  std::vector<Matrix<F>> out;
  if (kind == SymmetryKind::SymmetricNonAlternating) {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) out.push_back(sym_unit(K, n, i, j));
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Matrix<F> m(K, n, n);
        m.at(i, j) = K.one();
        m.at(j, i) = K.neg(K.one());
        out.push_back(std::move(m));
      }
  }
  return out;
}

}  // namespace detail

template <class BF>
class Classifier {
 public:
  Classifier(const UnitaryModel<BF>& model, ClassifyOptions opts = {})
      : model_(&model), opts_(opts) {
    const BF& K = model.field();
    if (!K.finite()) throw error("classify: finite base field required");
    if (opts_.max_ext <= 0) opts_.max_ext = model.n();
    int base_degree = 1;
    if constexpr (std::is_same_v<BF, ExtField>) base_degree = K.degree();
    for (int k = 2; k <= opts_.max_ext; ++k) {
      if (base_degree * k > kMaxExtDegree) break;  // deeper levels unavailable
      const ExtField& L = extension_field(K.characteristic(), base_degree * k);
      const BF* Kp = &K;
      std::function<ExtField::Elem(const typename BF::Elem&)> emb;
      if constexpr (std::is_same_v<BF, ExtField>) {
        ExtField::Elem root = embedding_root(K, L);
        emb = [Kp, &L, root](const typename BF::Elem& a) {
          return embed_elem_via_root(*Kp, L, a, root);
        };
      } else {
        emb = [Kp, &L](const typename BF::Elem& a) { return embed_elem(*Kp, L, a); };
      }
      levels_.push_back({k, &L, std::move(emb)});
    }
  }

  const UnitaryModel<BF>& model() const { return *model_; }
  const ClassifyOptions& options() const { return opts_; }

  ClassifyOutcome<BF> classify(std::span<const Vec<BF>> tuple) const {
    const BF& K = model_->field();
    const int n = model_->n();
    ClassifyOutcome<BF> out;

    Subspace<BF> cl = model_->algebra().closure(tuple);
    out.closure_dim = cl.dim();
    if (cl.dim() == model_->dim()) {
      out.generates = true;
      return out;
    }

    std::vector<Matrix<BF>> p1 = model_->first_component_algebra(cl);
    const int full = n * n;
    const int p1dim = static_cast<int>(p1.size());

    if (opts_.all_witnesses) {
      subspace_search_all(p1, out);
      // When the closure projects onto the whole matrix algebra it must be
      // the graph of an inner automorphism; assert the intertwiner line.
      if (p1dim == full) {
        if (cl.dim() != full)
          throw theory_violation(
              "closure projects onto the full matrix algebra but is not a graph",
              tuple_to_json(*model_, tuple).dump());
        graph_line_witness(cl, out);
      }
      conjugator_search(tuple, SymmetryKind::SymmetricNonAlternating, out);
      if (n % 2 == 0) conjugator_search(tuple, SymmetryKind::Alternating, out);
    } else if (p1dim < full) {
      subspace_search_all(p1, out, /*stop_at_first=*/true);
    } else {
      // The closure projects onto the full matrix algebra, so it must be the
      // graph of an inner automorphism; the intertwiner space is a line.
      if (cl.dim() != full)
        throw theory_violation("closure projects onto the full matrix algebra but is not a graph",
                               tuple_to_json(*model_, tuple).dump());
      graph_line_witness(cl, out);
    }

    if (!out.generates && out.witness_classes() == 0) {
      // The no-witness guarantee needs the extension ladder up to degree n.
      bool full_depth = opts_.max_ext >= n &&
                        levels_.size() + 1 >= static_cast<size_t>(opts_.max_ext);
      std::string ser = tuple_to_json(*model_, tuple).dump();
      if (out.truncated || !full_depth)
        throw budget_error("classification inconclusive within search limits for tuple " + ser);
      throw theory_violation("non-generating tuple admits no witness", ser);
    }
    return out;
  }

  ClassifyOutcome<BF> classify(const std::vector<Vec<BF>>& tuple) const {
    return classify(std::span<const Vec<BF>>(tuple.data(), tuple.size()));
  }

 private:
  struct ExtLevel {
    int k;
    const ExtField* L;
    std::function<ExtField::Elem(const typename BF::Elem&)> emb;
  };

  // Searches one (degree, dimension) cell. lev < 0 means the base field.
  // Falls back to eigenvector spins when the enumeration is over budget.
  std::optional<SubspaceWitness<BF>> search_cell(
      const std::vector<Matrix<BF>>& p1, std::vector<std::vector<Matrix<ExtField>>>& lifted,
      int lev, int i, ClassifyOutcome<BF>& out) const {
    const int n = model_->n();
    if (lev < 0) {
      bool exhaustive = true;
      auto v = detail::find_invariant_subspace(model_->field(), p1, n, i, opts_.subspace_budget,
                                               exhaustive);
      if (!exhaustive) {
        for (const auto& w :
             detail::eigen_spin_subspaces(model_->field(), p1, n, opts_.root_budget))
          if (w.dim() == i && !v) v = w;
        if (!v) out.truncated = true;
      }
      if (!v) return std::nullopt;
      SubspaceWitness<BF> w;
      w.dim_v = i;
      w.ext_degree = 1;
      w.v_base = *v;
      return w;
    }
    if (lifted[lev].empty()) {
      for (const auto& m : p1) {
        Matrix<ExtField> lm(*levels_[lev].L, n, n);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) lm.at(a, b) = levels_[lev].emb(m.at(a, b));
        lifted[lev].push_back(std::move(lm));
      }
    }
    bool exhaustive = true;
    auto v = detail::find_invariant_subspace(*levels_[lev].L, lifted[lev], n, i,
                                             opts_.subspace_budget, exhaustive);
    if (!exhaustive) {
      for (const auto& w :
           detail::eigen_spin_subspaces(*levels_[lev].L, lifted[lev], n, opts_.root_budget))
        if (w.dim() == i && !v) v = w;
      if (!v) out.truncated = true;
    }
    if (!v) return std::nullopt;
    SubspaceWitness<BF> w;
    w.dim_v = i;
    w.ext_degree = levels_[lev].k;
    w.ext = levels_[lev].L;
    w.v_ext = *v;
    return w;
  }

  // all-witness mode: for every subspace dimension, the minimal extension
  // degree admitting an invariant subspace. stop_at_first: minimal degree
  // first, and within a degree the smallest dimension (first in enumeration
  // order); returns after one witness.
  void subspace_search_all(const std::vector<Matrix<BF>>& p1, ClassifyOutcome<BF>& out,
                           bool stop_at_first = false) const {
    const int n = model_->n();
    if (n < 2) return;
    bool depth_available = levels_.size() + 1 >= static_cast<size_t>(opts_.max_ext);
    std::vector<std::vector<Matrix<ExtField>>> lifted(levels_.size());
    if (stop_at_first) {
      for (int lev = -1; lev < static_cast<int>(levels_.size()); ++lev)
        for (int i = 1; i <= n - 1; ++i)
          if (auto w = search_cell(p1, lifted, lev, i, out)) {
            out.subspaces.push_back(std::move(*w));
            return;
          }
      if (!depth_available) out.truncated = true;
      return;
    }
    for (int i = 1; i <= n - 1; ++i) {
      bool found_i = false;
      for (int lev = -1; !found_i && lev < static_cast<int>(levels_.size()); ++lev)
        if (auto w = search_cell(p1, lifted, lev, i, out)) {
          out.subspaces.push_back(std::move(*w));
          found_i = true;
        }
      if (!found_i && !depth_available) out.truncated = true;
    }
  }

  // Tuple-level intertwiner search restricted to the given symmetry kind:
  // p a_j = b_j p for all j, p invertible of that exact kind.
  void conjugator_search(std::span<const Vec<BF>> tuple, SymmetryKind kind,
                         ClassifyOutcome<BF>& out) const {
    const BF& K = model_->field();
    const int n = model_->n();
    if (kind == SymmetryKind::SymmetricNonAlternating ? out.symmetric_conj.has_value()
                                                      : out.alternating_conj.has_value())
      return;  // already witnessed by the graph line
    auto params = detail::symmetry_param_basis(K, n, kind);
    if (params.empty()) return;
    const int m = static_cast<int>(params.size());
    const int r = static_cast<int>(tuple.size());
    Matrix<BF> constraints(K, std::max(1, r * n * n), m);
    for (int j = 0; j < r; ++j) {
      Matrix<BF> a = model_->first(tuple[j]);
      Matrix<BF> b = model_->second(tuple[j]);
      for (int t = 0; t < m; ++t) {
        Matrix<BF> res = params[t] * a - b * params[t];
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y)
            constraints.at(j * n * n + x * n + y, t) = res.at(x, y);
      }
    }
    Subspace<BF> sol = kernel(constraints);
    if (sol.dim() == 0) return;
    uint64_t q = K.order();
    uint64_t total = 1;
    bool within = true;
    for (int t = 0; t < sol.dim(); ++t) {
      if (total > opts_.conjugator_budget / q) {
        within = false;
        break;
      }
      total *= q;
    }
    auto assemble = [&](const std::vector<uint64_t>& digits) {
      Matrix<BF> p(K, n, n);
      for (int t = 0; t < sol.dim(); ++t) {
        typename BF::Elem c = K.elem_at(digits[t]);
        if (K.is_zero(c)) continue;
        for (int u = 0; u < m; ++u) {
          typename BF::Elem w = K.mul(c, sol.basis().at(t, u));
          if (K.is_zero(w)) continue;
          for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
              p.at(x, y) = K.add(p.at(x, y), K.mul(w, params[u].at(x, y)));
        }
      }
      return p;
    };
    auto record = [&](Matrix<BF>&& p) {
      if (kind == SymmetryKind::SymmetricNonAlternating)
        out.symmetric_conj = ConjugatorWitness<BF>{std::move(p), kind};
      else
        out.alternating_conj = ConjugatorWitness<BF>{std::move(p), kind};
    };
    std::vector<uint64_t> digits(sol.dim(), 0);
    if (!within) {
      // Partial, deterministic probe: the basis solutions themselves.
      out.truncated = true;
      for (int t = 0; t < sol.dim(); ++t) {
        std::fill(digits.begin(), digits.end(), 0);
        digits[t] = 1 % q;
        Matrix<BF> p = assemble(digits);
        if (invertible(p) && symmetry_kind(p) == kind) {
          record(std::move(p));
          return;
        }
      }
      return;
    }
    while (odometer_advance(digits, q)) {  // starts past the zero vector
      Matrix<BF> p = assemble(digits);
      if (invertible(p) && symmetry_kind(p) == kind) {
        record(std::move(p));
        return;
      }
    }
  }

  // Closure is the graph of an inner automorphism; solve the unrestricted
  // intertwiner system over the closure basis. The solution space must be a
  // line whose nonzero elements are invertible of a definite kind.
  void graph_line_witness(const Subspace<BF>& cl, ClassifyOutcome<BF>& out) const {
    const BF& K = model_->field();
    const int n = model_->n();
    const int m = n * n;
    Matrix<BF> constraints(K, cl.dim() * n * n, m);
    for (int t = 0; t < cl.dim(); ++t) {
      Vec<BF> row(cl.basis().row(t).begin(), cl.basis().row(t).end());
      Matrix<BF> a = model_->first(row);
      Matrix<BF> b = model_->second(row);
      for (int u = 0; u < m; ++u) {
        Matrix<BF> e = matrix_unit(K, n, u / n, u % n);
        Matrix<BF> res = e * a - b * e;
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y)
            constraints.at(t * n * n + x * n + y, u) = res.at(x, y);
      }
    }
    Subspace<BF> sol = kernel(constraints);
    if (sol.dim() != 1)
      throw theory_violation("graph intertwiner space has dimension " +
                                 std::to_string(sol.dim()) + ", expected a line",
                             "{}");
    Matrix<BF> p(K, n, n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) p.at(x, y) = sol.basis().at(0, x * n + y);
    if (!invertible(p))
      throw theory_violation("graph intertwiner is singular", "{}");
    SymmetryKind kind = symmetry_kind(p);
    if (kind == SymmetryKind::Neither)
      throw theory_violation("graph intertwiner is neither symmetric nor alternating", "{}");
    if (kind == SymmetryKind::SymmetricNonAlternating)
      out.symmetric_conj = ConjugatorWitness<BF>{std::move(p), kind};
    else
      out.alternating_conj = ConjugatorWitness<BF>{std::move(p), kind};
  }

  const UnitaryModel<BF>* model_;
  ClassifyOptions opts_;
  std::vector<ExtLevel> levels_;
};

}  // namespace invgen
