#pragma once

#include <cstdint>
#include <string>

namespace hpkit {

// SplitMix64 (Steele, Lea, Flood 2014). Chosen because the whole algorithm
// fits in three lines and reproduces bit-exactly on any platform, so seeded
// experiment runs can be restated in other implementations.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Value in [0, n). Plain modulo; the bias is irrelevant for the small n
  // used here and keeps the mapping trivially restatable.
  uint64_t below(uint64_t n) { return next() % n; }
};

// One uniform H/P draw per position: low bit of the next SplitMix64 output,
// 1 -> 'H', 0 -> 'P'.
inline std::string random_hp_sequence(SplitMix64& rng, int length) {
  std::string s;
  s.reserve(size_t(length));
  for (int i = 0; i < length; ++i) s.push_back((rng.next() & 1) ? 'H' : 'P');
  return s;
}

}  // namespace hpkit
