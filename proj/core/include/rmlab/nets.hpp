#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "rmlab/matrix.hpp"
#include "rmlab/random.hpp"

namespace rmlab::nets {

/// Finite set of unit vectors on S^{n−1} with pairwise (chord) distance at
/// least epsilon. A maximal packing of this kind is an epsilon-net.
struct EpsNet {
  std::size_t dimension = 0;
  double epsilon = 0.5;
  /// points.size() / dimension vectors, stored contiguously.
  std::vector<double> points;

  [[nodiscard]] std::size_t size() const noexcept {
    return dimension == 0 ? 0 : points.size() / dimension;
  }
  [[nodiscard]] std::span<const double> point(std::size_t i) const noexcept {
    return {points.data() + i * dimension, dimension};
  }
};

inline constexpr std::size_t kMaxNetDimension = 6;
inline constexpr std::size_t kMinCandidates = 10000;
inline constexpr std::size_t kMinProbes = 1000;

/// Uniform point on S^{n−1} (normalized Gaussian vector).
void uniform_sphere_point(Rng& rng, std::span<double> out);

/// Greedy maximal packing over `candidate_count` uniform sphere samples:
/// a candidate is kept when it lies at distance ≥ epsilon from every point
/// kept so far.
[[nodiscard]] EpsNet build_net(std::size_t n, double epsilon, SeedStream stream,
                               std::size_t candidate_count);

/// Builds from an explicit candidate list (n-vectors, contiguous) using the
/// same greedy rule; no size guards. Exposed for tests.
[[nodiscard]] EpsNet greedy_packing(std::size_t n, double epsilon,
                                    std::span<const double> candidates);

/// 2n(1 + 2/ε)^{n−1}.
[[nodiscard]] double cardinality_bound(std::size_t n, double epsilon);

struct NormBracket {
  double lower = 0.0;
  double upper = 0.0;
};

/// lower = max over the net of ‖Mx‖₂, upper = lower/(1 − ε) (+inf at ε = 1).
[[nodiscard]] NormBracket net_norm_bounds(const Matrix& M, const EpsNet& net);

struct CoveringReport {
  bool covered = false;
  double worst_distance = 0.0;
};

/// Probes `probe_count` uniform sphere points; covered iff every probe has
/// a net point at distance < epsilon.
[[nodiscard]] CoveringReport covering_check(const EpsNet& net, std::size_t probe_count,
                                            SeedStream stream);

/// Smallest pairwise distance (infinity for fewer than two points).
[[nodiscard]] double min_pairwise_distance(const EpsNet& net);

/// One unit vector per line.
void write_csv(std::ostream& os, const EpsNet& net);

}  // namespace rmlab::nets
