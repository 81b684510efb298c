#include "wsdp/random.hpp"

#include <stdexcept>

namespace wsdp {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("Rng::uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (span == UINT64_MAX) return static_cast<std::int64_t>(next());
  const std::uint64_t range = span + 1;
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % range);
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + x % range);
}

std::int64_t Rng::uniform_nonzero(std::int64_t lo, std::int64_t hi) {
  if (lo == 0 && hi == 0) throw std::invalid_argument("Rng::uniform_nonzero: range holds only zero");
  for (;;) {
    auto v = uniform(lo, hi);
    if (v != 0) return v;
  }
}

Rng Rng::derive(std::uint64_t stream) { return Rng(splitmix64(next() ^ splitmix64(stream))); }

Matrix random_unimodular(std::size_t n, Rng& rng, std::size_t ops_budget, std::int64_t magnitude_cap) {
  if (n == 0) throw std::invalid_argument("random_unimodular: n must be positive");
  if (magnitude_cap < 0) throw std::invalid_argument("random_unimodular: negative magnitude cap");
  Matrix u = Matrix::identity(n);
  const auto last = static_cast<std::int64_t>(n - 1);
  for (std::size_t op = 0; op < ops_budget; ++op) {
    // 0..5 add a multiple, 6 swap, 7 negate
    auto kind = rng.uniform(0, 7);
    if (n == 1) kind = 7;
    if (kind <= 5 && magnitude_cap == 0) kind = 6;
    auto i = static_cast<std::size_t>(rng.uniform(0, last));
    if (kind == 7) {
      for (std::size_t c = 0; c < n; ++c) u(i, c) = -u(i, c);
      continue;
    }
    auto j = static_cast<std::size_t>(rng.uniform(0, last - 1));
    if (j >= i) ++j;
    if (kind == 6) {
      for (std::size_t c = 0; c < n; ++c) std::swap(u(i, c), u(j, c));
      continue;
    }
    const Rational mult = rng.uniform_nonzero(-magnitude_cap, magnitude_cap);
    for (std::size_t c = 0; c < n; ++c)
      if (u(j, c) != 0) u(i, c) += mult * u(j, c);
  }
  return u;
}

Matrix random_unimodular(std::size_t n, std::uint64_t seed, std::size_t ops_budget, std::int64_t magnitude_cap) {
  Rng rng(seed);
  return random_unimodular(n, rng, ops_budget, magnitude_cap);
}

}  // namespace wsdp
