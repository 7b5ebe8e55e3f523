#ifndef D2SIM_RNG_HPP
#define D2SIM_RNG_HPP

#include <cstdint>

namespace d2sim {

// Deterministic per-(seed, node, round) random stream. Streams for distinct
// keys are independent for all practical purposes, and a given key always
// replays the same draw sequence regardless of evaluation order, which is
// what makes concurrent handler evaluation safe.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t node, std::uint64_t round,
               std::uint64_t salt = 0) {
    state_ = mix(seed + 0x9e3779b97f4a7c15ULL);
    state_ = mix(state_ ^ mix(node + 0xbf58476d1ce4e5b9ULL));
    state_ = mix(state_ ^ mix(round + 0x94d049bb133111ebULL));
    if (salt != 0) state_ = mix(state_ ^ mix(salt + 0xd6e8feb86659fd93ULL));
  }

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // Uniform in [0, bound), unbiased via rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    std::uint64_t threshold = (-bound) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // True with probability min(1, num/den), exactly (up to the 2^-64
  // granularity of one draw).
  bool next_bool(std::uint64_t num, std::uint64_t den) {
    if (num >= den) return true;
    if (num == 0) return false;
    unsigned __int128 lhs = static_cast<unsigned __int128>(next()) * den;
    unsigned __int128 rhs = static_cast<unsigned __int128>(num) << 64;
    return lhs < rhs;
  }

  bool coin() { return (next() & 1) != 0; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace d2sim

#endif  // D2SIM_RNG_HPP
