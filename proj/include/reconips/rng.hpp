#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace reconips {

// Splitmix-style combine used to derive independent substreams from a master
// seed plus a list of tags (assay, variant, episode index, ...).
inline uint64_t hash_mix(uint64_t h, uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 12) + (h >> 4);
  h *= 0xff51afd7ed558ccdull;
  h ^= h >> 33;
  return h;
}

inline uint64_t hash_tag(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline uint64_t as_tag(uint64_t v) { return v; }
inline uint64_t as_tag(int v) { return static_cast<uint64_t>(v); }
inline uint64_t as_tag(std::string_view s) { return hash_tag(s); }
inline uint64_t as_tag(const char* s) { return hash_tag(s); }

template <typename... Tags>
uint64_t derive_seed(uint64_t master, Tags... tags) {
  uint64_t h = hash_mix(0x9e3779b97f4a7c15ull, master);
  ((h = hash_mix(h, as_tag(tags))), ...);
  return h;
}

// Seeded stream with explicit uniform/normal/shuffle so generated sequences
// do not depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // [0, 1)
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double normal(double mean, double stddev) {
    double u1 = 1.0 - uniform01();  // (0, 1]
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(6.283185307179586 * u2);
  }

  // [0, n)
  uint64_t bounded(uint64_t n) { return n ? next_u64() % n : 0; }

  template <typename T>
  void shuffle(std::vector<T>& v) {  // Fisher-Yates
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(bounded(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

inline double clip01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

inline double clip(double x, double lo, double hi) {
  return x < lo ? lo : (x > hi ? hi : x);
}

}  // namespace reconips
