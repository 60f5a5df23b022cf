#pragma once

#include <cstdint>

namespace dsclust {

// Counter-based splitmix64 generator. The stream is fully determined by the
// 64-bit seed and is identical on every platform, which is what makes seeded
// runs byte-reproducible. Substreams are derived with derive_seed() so that
// e.g. benchmark run r can get its own independent generator.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0, 1); rejects exact zeros.
  double next_open_double() {
    double u = next_double();
    while (u == 0.0) u = next_double();
    return u;
  }

  // Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

 private:
  std::uint64_t state_;
};

// Deterministic substream seed: one splitmix64 mix of base offset by the
// stream index. Documented stream layout (used by benchmarks and the CLI):
//   instance for run r  -> derive_seed(seed, 2r)
//   anneal   for run r  -> derive_seed(seed, 2r + 1)
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace dsclust
