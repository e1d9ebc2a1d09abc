#pragma once

#include <cstdint>
#include <random>

namespace penshrink {

// Quantile function of the standard normal distribution, computed with
// Wichura's algorithm AS 241 (PPND16 variant, ~1 ulp accuracy).
double inverse_normal_cdf(double u);

// splitmix64-based mixing for deriving independent per-stream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Standard normal deviates from an explicitly seeded mt19937_64 via
// inversion. Both the engine stream and AS 241 are fully specified, so
// sequences reproduce across platforms.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    // 53-bit uniform offset half a step from 0 and 1, safe for inversion
    const std::uint64_t bits = engine_() >> 11;
    const double u = (static_cast<double>(bits) + 0.5) * 0x1p-53;
    return inverse_normal_cdf(u);
  }

  static const char* generator_id() { return "mt19937_64/inverse-normal-cdf-as241"; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace penshrink
