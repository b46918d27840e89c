#ifndef RPNORM_RANDOM_HPP_
#define RPNORM_RANDOM_HPP_

#include <cstdint>
#include <initializer_list>
#include <limits>

#include <boost/random/normal_distribution.hpp>

namespace rpnorm {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/*
 * Seeded random stream backed by xoshiro256++.
 *
 * Streams are never shared between workers. Parallel code derives one stream
 * per unit of work from (master seed, index path) with derive(), so results
 * do not depend on how the work is scheduled.
 */
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed = 0) {
    std::uint64_t s = seed;
    for (auto &word : state_) {
      s = splitmix64(s);
      word = s;
    }
  }

  static RandomStream derive(std::uint64_t master,
                             std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = splitmix64(master ^ 0x6a09e667f3bcc909ULL);
    for (const auto p : path) {
      h = splitmix64(h ^ splitmix64(p + 0x3c6ef372fe94f82bULL));
    }
    return RandomStream(h);
  }

  /// Independent child stream; advances this stream by one draw.
  RandomStream fork() { return RandomStream(splitmix64((*this)() ^ 0xa54ff53a5f1d36f1ULL)); }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Standard normal draw (ziggurat).
  double normal() {
    boost::random::normal_distribution<double> dist;
    return dist(*this);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace rpnorm

#endif  // RPNORM_RANDOM_HPP_
