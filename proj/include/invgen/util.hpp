#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <string>
#include <string_view>
#include <vector>

namespace invgen {

// SplitMix64 finalizer.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Counter-based generator: value at (a, b, c) is a pure function of
// (seed, a, b, c), so any stream position can be computed independently.
struct CounterRng {
  uint64_t seed = 0;

  uint64_t raw(uint64_t a, uint64_t b = 0, uint64_t c = 0) const {
    uint64_t h = mix64(seed ^ 0x8f462907608f6b4cull);
    h = mix64(h ^ a);
    h = mix64(h ^ b);
    h = mix64(h ^ c);
    return h;
  }

  // Unbiased value in [0, n) via rejection.
  uint64_t below(uint64_t n, uint64_t a, uint64_t b = 0) const {
    uint64_t lim = UINT64_MAX - UINT64_MAX % n;
    for (uint64_t attempt = 0;; ++attempt) {
      uint64_t r = raw(a, b, 0x517cc1b727220a95ull + attempt);
      if (r < lim) return r % n;
    }
  }
};

// Mixed-radix counter, last digit fastest. Returns false once it wraps.
inline bool odometer_advance(std::vector<uint64_t>& digits, uint64_t base) {
  for (size_t t = digits.size(); t-- > 0;) {
    if (++digits[t] < base) return true;
    digits[t] = 0;
  }
  return false;
}

inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string to_hex(uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

inline std::string iso8601_utc_now() {
  using clock = std::chrono::system_clock;
  std::time_t t = clock::to_time_t(clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace invgen
