#pragma once

#include "wsdp/matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

namespace wsdp {

/// Seeded generator with a platform-independent output stream.
///
/// The engine is std::mt19937_64, whose sequence is fixed by the C++ standard.
/// Bounded integers are drawn by rejection sampling on the raw 64-bit output
/// (std::uniform_int_distribution is implementation-defined, so it is not
/// used). Sub-streams are derived with SplitMix64 so that independent stages
/// of a construction do not share state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi] (inclusive).
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

  /// Uniform integer in [lo, hi] excluding zero; requires the range to hold a nonzero value.
  std::int64_t uniform_nonzero(std::int64_t lo, std::int64_t hi);

  bool coin() { return (next() >> 63) != 0; }

  template <class It>
  void shuffle(It first, It last) {
    for (auto n = last - first; n > 1; --n) {
      auto k = uniform(0, static_cast<std::int64_t>(n - 1));
      std::iter_swap(first + (n - 1), first + k);
    }
  }

  /// Independent generator for sub-stream `stream`.
  Rng derive(std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Product of at most `ops_budget` elementary integer matrices (row swaps,
/// row negations, additions of c times another row with 1 <= |c| <= magnitude_cap).
/// The determinant is +1 or -1.
Matrix random_unimodular(std::size_t n, Rng& rng, std::size_t ops_budget, std::int64_t magnitude_cap);
Matrix random_unimodular(std::size_t n, std::uint64_t seed, std::size_t ops_budget, std::int64_t magnitude_cap);

}  // namespace wsdp
