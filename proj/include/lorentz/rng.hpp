#pragma once

#include <cstdint>

namespace lorentz {

// splitmix64 generator. std::uniform_real_distribution is implementation
// defined, and the CLI promises byte-identical reports for a given seed, so
// both the engine and the draw are spelled out here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return n ? next_u64() % n : 0; }

  // independent stream for work item i under this seed; used so that batch
  // parallelism cannot change results
  static Rng substream(std::uint64_t seed, std::uint64_t i) {
    Rng mix(seed ^ (0xa0761d6478bd642full * (i + 1)));
    mix.next_u64();
    return mix;
  }

 private:
  std::uint64_t state_;
};

}  // namespace lorentz
