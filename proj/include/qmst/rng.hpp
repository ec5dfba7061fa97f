#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace qmst {

/// Name recorded in run manifests. Bump when draw semantics change.
inline constexpr const char* kRngAlgorithm = "mt19937_64+rejection/v1";

/**
   Seeded generator whose draws are identical on every platform.
   std::uniform_int_distribution is implementation-defined, so bounded draws
   use rejection sampling directly on the engine output.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below needs a positive bound");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % bound;
  }

  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("Rng::between with hi < lo");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(span == 0 ? engine_() : below(span));
  }

  bool coin() { return (engine_() >> 63) != 0; }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qmst
