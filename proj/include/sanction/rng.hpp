#ifndef SANCTION_RNG_HPP
#define SANCTION_RNG_HPP

#include <cstdint>
#include <random>

namespace sanction {

// splitmix64, used to decorrelate (seed, stream) pairs before feeding the
// mersenne twister.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// One seeded draw stream. Rollouts use separate streams for nature's quality
// coin and for strategy mixing, so changing a profile never shifts nature's
// draws. u01() takes the top 53 bits directly, keeping sequences identical
// across standard library implementations.
class Rng {
 public:
  Rng(uint64_t seed, uint64_t stream) : eng_(splitmix64(splitmix64(seed) ^ stream)) {}

  double u01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p_true) { return u01() < p_true; }
  uint64_t next_u64() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

namespace stream {
inline constexpr uint64_t nature = 0x6E61747572655F31ull;
inline constexpr uint64_t strategy = 0x7374726174656779ull;
inline constexpr uint64_t behavior = 0x6265686176696F72ull;
}  // namespace stream

}  // namespace sanction

#endif
