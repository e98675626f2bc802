#pragma once

#include <complex>
#include <cstdint>

namespace detgeo {

/// Counter-based splittable pseudo-random generator.
///
/// The draw sequence is a pure function of (seed, stream, counter), so a
/// generator reconstructed with the same seed and stream replays the exact
/// same bits regardless of what other streams were consumed in between.
/// split() derives an independent stream without touching the parent, which
/// is what lets per-trial streams be keyed by (suite, trial index).
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Independent generator for substream `k`; does not advance this one.
  Rng split(std::uint64_t k) const;

  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();

  /// Standard normal via Box-Muller (two uniforms per call, no cached spare).
  double normal();

  /// Standard complex normal, E|z|^2 = 1.
  std::complex<double> cnormal();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t state_;
};

}  // namespace detgeo
