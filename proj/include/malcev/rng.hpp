#ifndef MALCEV_RNG_HPP
#define MALCEV_RNG_HPP

#include <cstdint>

namespace malcev {

/// splitmix64: tiny deterministic generator with a stable cross-platform
/// stream, used wherever reproducible output is part of the contract.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n) for n >= 1 (modulo bias is irrelevant at our sizes).
  std::uint64_t below(std::uint64_t n) { return next() % n; }

private:
  std::uint64_t state_;
};

}  // namespace malcev

#endif
