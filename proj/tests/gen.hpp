#pragma once

// Minimal property-test generators. Every property runs a fixed number of
// cases from a fixed seed, so failures reproduce; the failing case index is
// reported through doctest's CAPTURE.

#include <cmath>
#include <cstdint>
#include <random>

namespace limbkit::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  // Spreads samples evenly across orders of magnitude; lo > 0.
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  bool coin() { return integer(0, 1) == 1; }

  std::uint64_t bits() { return rng_(); }

  template <class T, std::size_t N>
  const T& pick(const T (&items)[N]) {
    return items[static_cast<std::size_t>(integer(0, static_cast<int>(N) - 1))];
  }

 private:
  std::mt19937_64 rng_;
};

inline constexpr int kCases = 200;

// Calls body(gen, case_index) for each case.
template <class Body>
void for_all(std::uint64_t seed, Body body, int cases = kCases) {
  Gen gen(seed);
  for (int i = 0; i < cases; ++i) body(gen, i);
}

}  // namespace limbkit::testing
