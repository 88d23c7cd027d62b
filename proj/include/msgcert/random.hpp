/* Copyright 2026 The msgcert Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Counter-based random numbers (Philox4x32-10).
//
// Every draw is a pure function of (seed, stream, sample, element), so a
// smoothed sample is bitwise identical no matter which thread produces it or
// in which order samples are generated.

#ifndef MSGCERT_RANDOM_HPP
#define MSGCERT_RANDOM_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace msgcert {

/// Disjoint random streams. The numeric values are part of the reproducibility
/// contract: changing them changes every sampled graph.
enum class Stream : std::uint32_t {
  kEdgeDeletion = 1,
  kNodeAblation = 2,
  kWeightInit = 3,
  kDropout = 4,
  kSplit = 5,
  kSynthetic = 6,
  kMonteCarlo = 7,
  kSimulation = 8,
};

namespace philox {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

inline constexpr std::uint32_t kM0 = 0xD2511F53u;
inline constexpr std::uint32_t kM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kW1 = 0xBB67AE85u;

constexpr Counter round(const Counter& c, const Key& k) {
  const std::uint64_t p0 = std::uint64_t{kM0} * c[0];
  const std::uint64_t p1 = std::uint64_t{kM1} * c[2];
  const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const auto lo0 = static_cast<std::uint32_t>(p0);
  const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const auto lo1 = static_cast<std::uint32_t>(p1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

/// Philox4x32 with 10 rounds.
constexpr Counter philox4x32_10(Counter c, Key k) {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      k[0] += kW0;
      k[1] += kW1;
    }
    c = round(c, k);
  }
  return c;
}

}  // namespace philox

/// 64 random bits for the tuple (seed, stream, sample, element).
constexpr std::uint64_t random_bits(std::uint64_t seed, Stream stream, std::uint64_t sample,
                                    std::uint32_t element) {
  const philox::Counter ctr{element, static_cast<std::uint32_t>(sample),
                            static_cast<std::uint32_t>(sample >> 32),
                            static_cast<std::uint32_t>(stream)};
  const philox::Key key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  const auto out = philox::philox4x32_10(ctr, key);
  return (std::uint64_t{out[0]} << 32) | out[1];
}

/// Uniform double in [0, 1) with 53 random bits.
constexpr double bits_to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

constexpr double uniform01(std::uint64_t seed, Stream stream, std::uint64_t sample,
                           std::uint32_t element) {
  return bits_to_unit(random_bits(seed, stream, sample, element));
}

/// Bernoulli(p) draw; exact at the endpoints (p = 0 never fires, p = 1 always fires).
constexpr bool bernoulli(double p, std::uint64_t seed, Stream stream, std::uint64_t sample,
                         std::uint32_t element) {
  return uniform01(seed, stream, sample, element) < p;
}

/// Sequential view over one (seed, stream, sample) counter line. Useful where a
/// consumer needs an open-ended number of draws (weight init, dropout masks,
/// fixture generation) while keeping the counter-based guarantees.
class CounterStream {
 public:
  using result_type = std::uint64_t;

  CounterStream(std::uint64_t seed, Stream stream, std::uint64_t sample = 0)
      : seed_(seed), stream_(stream), sample_(sample) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64() {
    const auto bits = random_bits(seed_, stream_, sample_, element_);
    if (++element_ == 0) ++sample_;
    return bits;
  }

  double uniform() { return bits_to_unit(next_u64()); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  /// Unbiased integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = max() - max() % n;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  /// Standard normal via Box-Muller.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// In-place Fisher-Yates shuffle (std::shuffle is not portable across standard libraries).
  template <class RandomIt>
  void shuffle(RandomIt first, RandomIt last) {
    const auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
      const auto j = below(i);
      using std::swap;
      swap(first[i - 1], first[j]);
    }
  }

 private:
  std::uint64_t seed_;
  Stream stream_;
  std::uint64_t sample_;
  std::uint32_t element_ = 0;
};

}  // namespace msgcert

#endif  // MSGCERT_RANDOM_HPP
