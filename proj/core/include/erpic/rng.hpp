#pragma once

#include <cstdint>
#include <random>

namespace erpic {

/// Seedable uniform generator with a platform-independent bit stream:
/// std::mt19937_64 (whose output sequence the standard pins down) mapped to
/// doubles in [0,1) by (raw >> 11) * 2^-53. Every consumer documents its
/// draw order against this stream.
class UniformRng {
public:
  explicit UniformRng(std::uint64_t seed) : gen_(seed) {}

  double next() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double next_in(double lo, double hi) { return lo + (hi - lo) * next(); }

private:
  std::mt19937_64 gen_;
};

}  // namespace erpic
