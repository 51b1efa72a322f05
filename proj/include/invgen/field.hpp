#pragma once

// Exact coefficient fields: the rationals, prime fields F_p, and extensions
// F_{p^k} presented by an irreducible monic modulus. All arithmetic is exact;
// there is no floating point anywhere in this layer.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "invgen/errors.hpp"
#include "json.hpp"

namespace invgen {

enum class FieldKind { Rationals, Prime, Extension };

// ---------------------------------------------------------------------------
// Q, arbitrary precision.

class Rationals {
 public:
  using Elem = mpq_class;

  FieldKind kind() const { return FieldKind::Rationals; }
  unsigned long long characteristic() const { return 0; }
  bool finite() const { return false; }
  uint64_t order() const { throw error("order(): field is infinite"); }
  std::string spec() const { return "Q"; }

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long long v) const { return Elem(static_cast<long>(v)); }
  Elem add(const Elem& a, const Elem& b) const { return Elem(a + b); }
  Elem sub(const Elem& a, const Elem& b) const { return Elem(a - b); }
  Elem mul(const Elem& a, const Elem& b) const { return Elem(a * b); }
  Elem neg(const Elem& a) const { return Elem(-a); }
  Elem inv(const Elem& a) const {
    if (a == 0) throw error("inv(0)");
    return Elem(1 / a);
  }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  uint64_t index_of(const Elem&) const { throw error("index_of: field is infinite"); }
  Elem elem_at(uint64_t) const { throw error("elem_at: field is infinite"); }

  std::string to_string(const Elem& a) const { return a.get_str(); }

  Elem parse(const nlohmann::json& j) const {
    if (j.is_number_integer()) return from_int(j.get<long long>());
    if (j.is_string()) {
      Elem q;
      if (q.set_str(j.get<std::string>(), 10) != 0)
        throw validation_error("bad rational literal: " + j.dump());
      q.canonicalize();
      return q;
    }
    throw validation_error("bad rational element: " + j.dump());
  }
  nlohmann::json to_json(const Elem& a) const {
    if (a.get_den() == 1 && a.get_num().fits_slong_p())
      return static_cast<long long>(a.get_num().get_si());
    return a.get_str();
  }
};

// ---------------------------------------------------------------------------
// F_p for a 32-bit prime p. Elements are residues in [0, p).

class PrimeField {
 public:
  using Elem = uint64_t;

  explicit PrimeField(uint64_t p) : p_(p) {
    if (p < 2 || p >= (1ull << 32)) throw validation_error("prime field: p must be a prime < 2^32");
    if (!is_prime_u64(p)) throw validation_error("prime field: " + std::to_string(p) + " is not prime");
  }

  FieldKind kind() const { return FieldKind::Prime; }
  unsigned long long characteristic() const { return p_; }
  bool finite() const { return true; }
  uint64_t p() const { return p_; }
  uint64_t order() const { return p_; }
  std::string spec() const { return "F" + std::to_string(p_); }

  Elem zero() const { return 0; }
  Elem one() const { return p_ == 1 ? 0 : 1; }
  Elem from_int(long long v) const {
    long long m = v % static_cast<long long>(p_);
    if (m < 0) m += static_cast<long long>(p_);
    return static_cast<Elem>(m);
  }
  Elem add(Elem a, Elem b) const {
    uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem inv(Elem a) const {
    if (a == 0) throw error("inv(0)");
    return pow(a, p_ - 2);
  }
  Elem pow(Elem a, uint64_t e) const {
    Elem r = 1, base = a % p_;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }

  uint64_t index_of(Elem a) const { return a; }
  Elem elem_at(uint64_t i) const { return i % p_; }

  std::string to_string(Elem a) const { return std::to_string(a); }

  Elem parse(const nlohmann::json& j) const {
    if (j.is_number_integer()) return from_int(j.get<long long>());
    throw validation_error("bad prime-field element: " + j.dump());
  }
  nlohmann::json to_json(Elem a) const { return a; }

  static bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

 private:
  uint64_t p_;
};

// ---------------------------------------------------------------------------
// F_{p^k}, elements as coefficient vectors of length k over F_p, reduced
// modulo a monic irreducible polynomial of degree k.

constexpr int kMaxExtDegree = 8;

class ExtField {
 public:
  // Coefficients c[0..k-1] of 1, g, ..., g^{k-1}; entries beyond k stay zero.
  using Elem = std::array<uint64_t, kMaxExtDegree>;

  // modulus: coefficients of x^0..x^{k-1}; the leading x^k coefficient is
  // implicitly 1. Irreducibility is verified by trial factorization.
  ExtField(uint64_t p, int k, std::vector<uint64_t> modulus);

  // The canonical modulus: the irreducible monic polynomial of degree k whose
  // coefficient vector, read as a base-p integer, is smallest.
  static std::vector<uint64_t> canonical_modulus(uint64_t p, int k);

  FieldKind kind() const { return FieldKind::Extension; }
  unsigned long long characteristic() const { return p_; }
  bool finite() const { return true; }
  uint64_t p() const { return p_; }
  int degree() const { return k_; }
  uint64_t order() const { return q_; }
  const std::vector<uint64_t>& modulus() const { return mod_; }
  std::string spec() const { return "F" + std::to_string(p_) + "^" + std::to_string(k_); }

  Elem zero() const { return Elem{}; }
  Elem one() const {
    Elem e{};
    e[0] = p_ == 1 ? 0 : 1;
    return e;
  }
  Elem generator() const {
    Elem e{};
    if (k_ >= 2) e[1] = 1;
    return e;
  }
  Elem from_int(long long v) const {
    Elem e{};
    long long m = v % static_cast<long long>(p_);
    if (m < 0) m += static_cast<long long>(p_);
    e[0] = static_cast<uint64_t>(m);
    return e;
  }
  Elem add(const Elem& a, const Elem& b) const {
    Elem r{};
    for (int i = 0; i < k_; ++i) {
      uint64_t s = a[i] + b[i];
      r[i] = s >= p_ ? s - p_ : s;
    }
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r{};
    for (int i = 0; i < k_; ++i) r[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + p_ - b[i];
    return r;
  }
  Elem neg(const Elem& a) const {
    Elem r{};
    for (int i = 0; i < k_; ++i) r[i] = a[i] == 0 ? 0 : p_ - a[i];
    return r;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    uint64_t t[2 * kMaxExtDegree] = {0};
    for (int i = 0; i < k_; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < k_; ++j) t[i + j] = (t[i + j] + a[i] * b[j]) % p_;
    }
    for (int i = 2 * k_ - 2; i >= k_; --i) {
      uint64_t c = t[i];
      if (c == 0) continue;
      t[i] = 0;
      for (int j = 0; j < k_; ++j)
        t[i - k_ + j] = (t[i - k_ + j] + c * (p_ - mod_[j])) % p_;
    }
    Elem r{};
    for (int i = 0; i < k_; ++i) r[i] = t[i];
    return r;
  }
  Elem pow(Elem a, uint64_t e) const {
    Elem r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Elem inv(const Elem& a) const {
    if (is_zero(a)) throw error("inv(0)");
    return pow(a, q_ - 2);
  }
  Elem frobenius(const Elem& a) const { return pow(a, p_); }
  bool is_zero(const Elem& a) const {
    for (int i = 0; i < k_; ++i)
      if (a[i]) return false;
    return true;
  }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  uint64_t index_of(const Elem& a) const {
    uint64_t v = 0;
    for (int i = k_ - 1; i >= 0; --i) v = v * p_ + a[i];
    return v;
  }
  Elem elem_at(uint64_t idx) const {
    Elem e{};
    for (int i = 0; i < k_; ++i) {
      e[i] = idx % p_;
      idx /= p_;
    }
    return e;
  }

  std::string to_string(const Elem& a) const;

  Elem parse(const nlohmann::json& j) const {
    if (j.is_number_integer()) return from_int(j.get<long long>());
    if (j.is_array()) {
      if (static_cast<int>(j.size()) > k_)
        throw validation_error("extension element has too many coefficients: " + j.dump());
      Elem e{};
      for (size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_integer())
          throw validation_error("bad extension element: " + j.dump());
        long long v = j[i].get<long long>();
        long long m = v % static_cast<long long>(p_);
        if (m < 0) m += static_cast<long long>(p_);
        e[i] = static_cast<uint64_t>(m);
      }
      return e;
    }
    throw validation_error("bad extension-field element: " + j.dump());
  }
  nlohmann::json to_json(const Elem& a) const {
    nlohmann::json arr = nlohmann::json::array();
    for (int i = 0; i < k_; ++i) arr.push_back(a[i]);
    return arr;
  }

  // Evaluates a polynomial (coefficients over F_p, ascending degree) at x.
  Elem eval_base_poly(const std::vector<uint64_t>& coeffs, const Elem& x) const {
    Elem r = zero();
    for (size_t i = coeffs.size(); i-- > 0;) {
      r = mul(r, x);
      r = add(r, from_int(static_cast<long long>(coeffs[i])));
    }
    return r;
  }

 private:
  uint64_t p_;
  int k_;
  uint64_t q_;  // p^k
  std::vector<uint64_t> mod_;
};

// ---------------------------------------------------------------------------
// Runtime handle and registry. The registry owns every field it hands out;
// addresses are stable for the lifetime of the process, so matrices and
// algebras can keep plain pointers to their field.

using Field = std::variant<const Rationals*, const PrimeField*, const ExtField*>;

const Rationals& rationals();
const PrimeField& prime_field(uint64_t p);
const ExtField& extension_field(uint64_t p, int k);

// Grammar: "Q", "F<p>", "F<p>^<k>".
Field parse_field(const std::string& spec);
std::string field_spec(const Field& f);
unsigned long long field_characteristic(const Field& f);
bool field_finite(const Field& f);

template <class Fn>
decltype(auto) with_field(const Field& f, Fn&& fn) {
  return std::visit([&](auto* k) -> decltype(auto) { return fn(*k); }, f);
}

// ---------------------------------------------------------------------------
// Coercions along supported inclusions. Unsupported pairs throw.

inline PrimeField::Elem embed_elem(const PrimeField& from, const PrimeField& to,
                                   PrimeField::Elem a) {
  if (from.p() != to.p()) throw error("embed: incompatible characteristic");
  return a;
}

inline Rationals::Elem embed_elem(const Rationals&, const Rationals&, const Rationals::Elem& a) {
  return a;
}

inline ExtField::Elem embed_elem(const PrimeField& from, const ExtField& to, PrimeField::Elem a) {
  if (from.p() != to.p()) throw error("embed: incompatible characteristic");
  return to.from_int(static_cast<long long>(a));
}

// Embeds F_{p^j} into F_{p^k} (j | k) by mapping the generator to the first
// root of the source modulus, in element-index order. Root search is by
// evaluation over the whole target field, so the target must be small.
ExtField::Elem embedding_root(const ExtField& from, const ExtField& to);

inline ExtField::Elem embed_elem_via_root(const ExtField& from, const ExtField& to,
                                          const ExtField::Elem& a, const ExtField::Elem& root) {
  ExtField::Elem r = to.zero();
  for (int i = from.degree(); i-- > 0;) {
    r = to.mul(r, root);
    r = to.add(r, to.from_int(static_cast<long long>(a[i])));
  }
  return r;
}

inline ExtField::Elem embed_elem(const ExtField& from, const ExtField& to,
                                 const ExtField::Elem& a) {
  if (from.p() == to.p() && from.degree() == to.degree() && from.modulus() == to.modulus())
    return a;
  return embed_elem_via_root(from, to, a, embedding_root(from, to));
}

}  // namespace invgen
