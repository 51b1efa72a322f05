#include "invgen/field.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace invgen {

namespace {

// Polynomial helpers over F_p. Polynomials are coefficient vectors with
// ascending degree and no trailing zeros (except the zero polynomial).

void poly_trim(std::vector<uint64_t>& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of a (monic or not) polynomial f modulo a monic divisor g.
std::vector<uint64_t> poly_rem_monic(std::vector<uint64_t> f, const std::vector<uint64_t>& g,
                                     uint64_t p) {
  int dg = static_cast<int>(g.size()) - 1;
  while (static_cast<int>(f.size()) - 1 >= dg) {
    uint64_t lead = f.back();
    int shift = static_cast<int>(f.size()) - 1 - dg;
    if (lead != 0) {
      for (int i = 0; i <= dg; ++i) {
        uint64_t sub = (lead * g[i]) % p;
        uint64_t& c = f[i + shift];
        c = c >= sub ? c - sub : c + p - sub;
      }
    }
    f.pop_back();
    poly_trim(f);
    if (f.empty()) break;
  }
  return f;
}

// Trial factorization: f (monic, degree k) is reducible over F_p iff it has a
// monic divisor of degree 1..k/2.
bool monic_irreducible(const std::vector<uint64_t>& f, uint64_t p) {
  int k = static_cast<int>(f.size()) - 1;
  if (k <= 0) return false;
  if (k == 1) return true;
  for (int d = 1; 2 * d <= k; ++d) {
    // All monic polynomials of degree d, low coefficients as base-p digits.
    uint64_t total = 1;
    for (int i = 0; i < d; ++i) {
      if (total > (100000000ull / p))
        throw budget_error("irreducibility check: too many trial divisors");
      total *= p;
    }
    std::vector<uint64_t> g(d + 1, 0);
    g[d] = 1;
    for (uint64_t idx = 0; idx < total; ++idx) {
      uint64_t v = idx;
      for (int i = 0; i < d; ++i) {
        g[i] = v % p;
        v /= p;
      }
      if (poly_rem_monic(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

ExtField::ExtField(uint64_t p, int k, std::vector<uint64_t> modulus) : p_(p), k_(k) {
  if (!PrimeField::is_prime_u64(p) || p >= (1ull << 32))
    throw validation_error("extension field: p must be a prime < 2^32");
  if (k < 2 || k > kMaxExtDegree)
    throw validation_error("extension field: degree must be in [2, " +
                           std::to_string(kMaxExtDegree) + "]");
  if (static_cast<int>(modulus.size()) != k)
    throw validation_error("extension field: modulus needs exactly k low coefficients");
  q_ = 1;
  for (int i = 0; i < k; ++i) {
    if (q_ > (1ull << 62) / p) throw validation_error("extension field: p^k too large");
    q_ *= p;
  }
  for (auto& c : modulus) c %= p;
  std::vector<uint64_t> full = modulus;
  full.push_back(1);
  if (!monic_irreducible(full, p))
    throw validation_error("extension field: modulus is reducible over F_" + std::to_string(p));
  mod_ = std::move(modulus);
}

std::vector<uint64_t> ExtField::canonical_modulus(uint64_t p, int k) {
  if (!PrimeField::is_prime_u64(p)) throw validation_error("canonical_modulus: p not prime");
  if (k < 2 || k > kMaxExtDegree) throw validation_error("canonical_modulus: bad degree");
  uint64_t total = 1;
  for (int i = 0; i < k; ++i) total *= p;
  std::vector<uint64_t> f(k + 1, 0);
  f[k] = 1;
  for (uint64_t idx = 0; idx < total; ++idx) {
    uint64_t v = idx;
    for (int i = 0; i < k; ++i) {
      f[i] = v % p;
      v /= p;
    }
    if (monic_irreducible(f, p)) return std::vector<uint64_t>(f.begin(), f.end() - 1);
  }
  throw error("canonical_modulus: no irreducible polynomial found");  // unreachable
}

std::string ExtField::to_string(const Elem& a) const {
  std::ostringstream os;
  bool first = true;
  for (int i = k_ - 1; i >= 0; --i) {
    if (a[i] == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || a[i] != 1) os << a[i];
    if (i >= 1) {
      if (a[i] != 1) os << "*";
      os << "g";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

ExtField::Elem embedding_root(const ExtField& from, const ExtField& to) {
  if (from.p() != to.p()) throw error("embed: incompatible characteristic");
  if (to.degree() % from.degree() != 0)
    throw error("embed: source degree does not divide target degree");
  if (to.order() > 4000000ull)
    throw budget_error("embed: target field too large for root search");
  std::vector<uint64_t> f = from.modulus();
  f.push_back(1);
  for (uint64_t i = 0; i < to.order(); ++i) {
    ExtField::Elem x = to.elem_at(i);
    if (to.is_zero(to.eval_base_poly(f, x))) return x;
  }
  throw error("embed: modulus has no root in target field");
}

// ---------------------------------------------------------------------------
// Registry.

namespace {
std::mutex g_registry_mutex;
std::map<uint64_t, PrimeField>& prime_registry() {
  static std::map<uint64_t, PrimeField> m;
  return m;
}
std::map<std::pair<uint64_t, int>, ExtField>& ext_registry() {
  static std::map<std::pair<uint64_t, int>, ExtField> m;
  return m;
}
}  // namespace

const Rationals& rationals() {
  static const Rationals q;
  return q;
}

const PrimeField& prime_field(uint64_t p) {
  std::lock_guard<std::mutex> lk(g_registry_mutex);
  auto& reg = prime_registry();
  auto it = reg.find(p);
  if (it == reg.end()) it = reg.emplace(p, PrimeField(p)).first;
  return it->second;
}

const ExtField& extension_field(uint64_t p, int k) {
  std::lock_guard<std::mutex> lk(g_registry_mutex);
  auto& reg = ext_registry();
  auto key = std::make_pair(p, k);
  auto it = reg.find(key);
  if (it == reg.end())
    it = reg.emplace(key, ExtField(p, k, ExtField::canonical_modulus(p, k))).first;
  return it->second;
}

Field parse_field(const std::string& spec) {
  if (spec == "Q") return &rationals();
  if (spec.size() >= 2 && spec[0] == 'F') {
    std::string rest = spec.substr(1);
    auto caret = rest.find('^');
    try {
      if (caret == std::string::npos) {
        size_t pos = 0;
        unsigned long long p = std::stoull(rest, &pos);
        if (pos != rest.size()) throw validation_error("");
        return &prime_field(p);
      }
      size_t pos = 0;
      unsigned long long p = std::stoull(rest.substr(0, caret), &pos);
      if (pos != caret) throw validation_error("");
      std::string kpart = rest.substr(caret + 1);
      int k = std::stoi(kpart, &pos);
      if (pos != kpart.size()) throw validation_error("");
      if (k == 1) return &prime_field(p);
      return &extension_field(p, k);
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
  }
  throw validation_error("bad field spec '" + spec + "' (expected Q, F<p> or F<p>^<k>)");
}

std::string field_spec(const Field& f) {
  return with_field(f, [](const auto& k) { return k.spec(); });
}

unsigned long long field_characteristic(const Field& f) {
  return with_field(f, [](const auto& k) { return k.characteristic(); });
}

bool field_finite(const Field& f) {
  return with_field(f, [](const auto& k) { return k.finite(); });
}

}  // namespace invgen
