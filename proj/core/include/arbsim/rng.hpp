#pragma once

#include <cstdint>
#include <random>

namespace arbsim {

/// SplitMix64 finalizer. Used to hash seeds, never as the stream itself.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Per-run seed derived from a master seed and a run (or row) index.
/// Different indices give statistically independent streams; the mapping is
/// fixed so results never depend on the order in which runs are scheduled.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Seedable generator with a platform-independent output sequence.
///
/// The engine is std::mt19937_64, whose sequence is fixed by the standard.
/// The standard distributions are implementation-defined, so the uniform and
/// normal transforms are done here explicitly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// True with probability p (p = 1 is always true, p = 0 never).
  bool bernoulli(double p) { return uniform() < p; }

  /// +1 with probability p_up, -1 otherwise.
  int sign(double p_up) { return bernoulli(p_up) ? 1 : -1; }

  /// Standard normal deviate (Marsaglia polar method).
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace arbsim
