#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace aoi {

/// SplitMix64 finalizer. Used to turn (seed, stream index) pairs into
/// well-separated engine seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for substream `stream` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Deterministic random stream. Output depends only on the seed and the
/// sequence of calls; mt19937_64 output is fixed by the standard and the
/// variate transforms below avoid implementation-defined std distributions.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on the open interval (0, 1).
  double uniform_open();

  /// Standard normal via the Marsaglia polar method.
  double standard_normal();

  /// -log(U), a unit-rate exponential draw.
  double standard_exponential();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

}  // namespace aoi
