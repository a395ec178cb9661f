#pragma once

#include <cstdint>
#include <string_view>

namespace leovec {

// PCG32 (XSH-RR). std::mt19937 with std distributions is not guaranteed to
// produce the same sequence across standard libraries, and reproducibility of
// a run from (scenario, seed) alone is a hard requirement, so the generator
// and the bounded/uniform draws are pinned here.
class Pcg32 {
 public:
  Pcg32() : state_(0x853c49e6748fea9bULL), inc_(0xda3e39cb94b95bdbULL) {}
  Pcg32(uint64_t seed, uint64_t stream) { reseed(seed, stream); }

  void reseed(uint64_t seed, uint64_t stream) {
    state_ = 0;
    inc_ = (stream << 1u) | 1u;
    next_u32();
    state_ += seed;
    next_u32();
  }

  uint32_t next_u32() {
    uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    uint32_t xorshifted = static_cast<uint32_t>(((old >> 18u) ^ old) >> 27u);
    uint32_t rot = static_cast<uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32 - rot) & 31));
  }

  // Unbiased bounded draw in [0, n), n > 0 (Lemire-style rejection).
  uint32_t next_below(uint32_t n) {
    uint32_t threshold = (-n) % n;
    for (;;) {
      uint32_t r = next_u32();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform in [0, 1) with 32-bit resolution.
  double next_double() { return next_u32() * (1.0 / 4294967296.0); }

 private:
  uint64_t state_;
  uint64_t inc_;
};

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t hash_stream_name(std::string_view name) {
  uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

// Named substream of a master seed. Streams with distinct names are
// independent; the same (seed, name) always yields the same sequence.
inline Pcg32 make_stream(uint64_t master_seed, std::string_view name) {
  uint64_t tag = hash_stream_name(name);
  return Pcg32(splitmix64(master_seed ^ tag), splitmix64(tag));
}

}  // namespace leovec
