#ifndef TEMPOTSP_RNG_H
#define TEMPOTSP_RNG_H

#include <cstdint>

namespace tempotsp {

// splitmix64 step; used to derive independent seeds and streams.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Small deterministic generator (xoshiro256**). We avoid std::*_distribution
// in solver paths: the engine is portable, the distributions are not, and
// per-stream independence is what makes parallel runs bit-identical.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  // Derives the generator for one (seed, stream, substream) triple, e.g.
  // one ant within one iteration.
  static Rng stream(uint64_t seed, uint64_t stream_id, uint64_t substream) {
    uint64_t sm = seed;
    uint64_t a = splitmix64(sm);
    sm = a ^ (stream_id * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
    uint64_t b = splitmix64(sm);
    sm = b ^ (substream * 0xd1342543de82ef95ULL + 0x589965cc75374cc3ULL);
    return Rng(splitmix64(sm));
  }

  uint64_t next() {
    uint64_t result = rotl(s_[1] * 5, 7) * 9;
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform double in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). n must be positive.
  int64_t below(int64_t n) {
    return static_cast<int64_t>(uniform() * static_cast<double>(n));
  }

  // Uniform integer in [lo, hi].
  int64_t between(int64_t lo, int64_t hi) { return lo + below(hi - lo + 1); }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  uint64_t s_[4];
};

}  // namespace tempotsp

#endif  // TEMPOTSP_RNG_H
