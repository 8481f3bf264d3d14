#pragma once

#include <cstdint>
#include <random>

namespace rmlab {

/// Identifies a reproducible random stream: (master_seed, stream_index)
/// maps to one fixed sequence of draws. Distinct indices give independent
/// streams.
struct SeedStream {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  /// A stream whose index is a hash of this index and `tag`. Used to hand
  /// out per-cell and per-trial streams without coordinating index ranges.
  [[nodiscard]] SeedStream child(std::uint64_t tag) const noexcept;

  friend bool operator==(const SeedStream&, const SeedStream&) = default;
};

/// SplitMix64 finalizer; bijective on 64-bit words.
[[nodiscard]] std::uint64_t mix64(std::uint64_t x) noexcept;

/// Generator bound to one SeedStream. Not thread-safe; give each thread
/// its own stream.
class Rng {
 public:
  explicit Rng(SeedStream stream);

  [[nodiscard]] std::uint64_t bits() { return engine_(); }
  /// Uniform on [0, 1) with 53 random mantissa bits.
  [[nodiscard]] double uniform();
  /// Uniform on (0, 1].
  [[nodiscard]] double uniform_open_low();
  /// Standard normal (Marsaglia polar method).
  [[nodiscard]] double normal();
  /// +1 or -1 with equal probability.
  [[nodiscard]] double rademacher();
  /// Exp(1) by inversion.
  [[nodiscard]] double exponential();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace rmlab
