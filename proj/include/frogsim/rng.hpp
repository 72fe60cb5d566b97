#pragma once

#include <cstdint>

namespace frogsim {

// 64-bit avalanche permutation (the splitmix64 finalizer). Bijective, so
// distinct inputs give distinct keys.
inline uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

inline constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Folds one word into a key (boost-style combine followed by a full
// avalanche). Used to derive independent stream keys from a master seed
// plus structured identifiers (domain tag, site encoding, frog index, ...).
inline uint64_t derive_key(uint64_t key, uint64_t v) {
  return mix64(key ^ (v + kGolden + (key << 6) + (key >> 2)));
}

inline uint64_t derive_key(uint64_t key, uint64_t a, uint64_t b) {
  return derive_key(derive_key(key, a), b);
}

inline uint64_t derive_key(uint64_t key, uint64_t a, uint64_t b, uint64_t c) {
  return derive_key(derive_key(key, a, b), c);
}

// Domain tags keep unrelated consumers of one master seed on disjoint
// streams. Arbitrary fixed constants.
namespace stream_domain {
inline constexpr uint64_t kSiteValue = 0x5173'76a1'0000'0001ULL;
inline constexpr uint64_t kFrogPath = 0xf706'7061'0000'0002ULL;
inline constexpr uint64_t kMcTrial = 0x3c71'1a1d'0000'0003ULL;
inline constexpr uint64_t kCtrwTrial = 0xc77b'0a9e'0000'0004ULL;
inline constexpr uint64_t kBlockSample = 0xb10c'5a3f'0000'0005ULL;
inline constexpr uint64_t kCramerTrial = 0xc4a3'e270'0000'0006ULL;
inline constexpr uint64_t kBootstrap = 0xb007'57a9'0000'0007ULL;
}  // namespace stream_domain

// Counter-based pseudo-random stream (splitmix64). The n-th draw is a pure
// function of (key, n), so sequences have the prefix property: extending a
// horizon never changes earlier draws. Streams with distinct derived keys
// are treated as independent.
class Stream {
 public:
  explicit Stream(uint64_t key) : state_(key) {}

  uint64_t next_u64() {
    state_ += kGolden;
    return mix64(state_);
  }

  // uniform in [0,1), 53-bit resolution
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform in (0,1], safe to feed into logs and negative powers
  double next_open01() { return 1.0 - next_double(); }

  // UniformRandomBitGenerator interface for <random> distributions
  using result_type = uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ULL; }
  result_type operator()() { return next_u64(); }

 private:
  uint64_t state_;
};

}  // namespace frogsim
