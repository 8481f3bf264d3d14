#include "rmlab/shaper.hpp"

#include <cmath>
#include <string>

#include "rmlab/compensated.hpp"
#include "rmlab/error.hpp"
#include "rmlab/linalg.hpp"

namespace rmlab::harness {

ShaperKind parse_shaper_kind(std::string_view name) {
  if (name == "identity_embed" || name == "identity-embed") return ShaperKind::IdentityEmbed;
  if (name == "partial_isometry" || name == "partial-isometry") return ShaperKind::PartialIsometry;
  if (name == "replicated_average" || name == "replicated-average") return ShaperKind::ReplicatedAverage;
  if (name == "explicit") return ShaperKind::Explicit;
  throw ParameterError("unknown shaper kind '" + std::string(name) + "'");
}

std::string_view shaper_kind_name(ShaperKind k) noexcept {
  switch (k) {
    case ShaperKind::IdentityEmbed:
      return "identity_embed";
    case ShaperKind::PartialIsometry:
      return "partial_isometry";
    case ShaperKind::ReplicatedAverage:
      return "replicated_average";
    case ShaperKind::Explicit:
      return "explicit";
  }
  return "unknown";
}

void orthonormalize_rows(Matrix& M) {
  for (std::size_t i = 0; i < M.rows(); ++i) {
    auto ri = M.row(i);
    // Two passes of MGS keep the rows orthogonal to ~1 ulp.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < i; ++j) {
        const auto rj = M.row(j);
        const double proj = compensated_dot(ri, rj);
        for (std::size_t c = 0; c < ri.size(); ++c) ri[c] -= proj * rj[c];
      }
    }
    const double norm = linalg::euclidean_norm(ri);
    if (!(norm > 1e-10)) throw ConstructionError("orthonormalize_rows: row " + std::to_string(i) + " is dependent");
    for (double& x : ri) x /= norm;
  }
}

namespace {

Matrix raw_shaper(const ShaperSpec& spec, SeedStream stream) {
  if (spec.kind != ShaperKind::Explicit && (spec.m == 0 || spec.N == 0)) {
    throw ShapeError("build_shaper: m and N must be positive");
  }
  switch (spec.kind) {
    case ShaperKind::IdentityEmbed: {
      if (spec.m > spec.N) throw ShapeError("build_shaper: identity_embed needs m <= N");
      Matrix B(spec.m, spec.N);
      for (std::size_t i = 0; i < spec.m; ++i) B(i, i) = 1.0;
      return B;
    }
    case ShaperKind::PartialIsometry: {
      if (spec.m > spec.N) throw ShapeError("build_shaper: partial_isometry needs m <= N");
      Matrix B(spec.m, spec.N);
      Rng rng(stream);
      for (double& x : B.data()) x = rng.normal();
      orthonormalize_rows(B);
      return B;
    }
    case ShaperKind::ReplicatedAverage: {
      if (spec.k == 0 || spec.N != spec.k * spec.m) {
        throw ShapeError("build_shaper: replicated_average needs N = k*m with k >= 1");
      }
      Matrix B(spec.m, spec.N);
      const double w = 1.0 / std::sqrt(static_cast<double>(spec.k));
      for (std::size_t i = 0; i < spec.m; ++i) {
        for (std::size_t j = 0; j < spec.k; ++j) B(i, i * spec.k + j) = w;
      }
      return B;
    }
    case ShaperKind::Explicit:
      if (!spec.matrix) throw ShapeError("build_shaper: explicit shaper without a matrix");
      if (spec.matrix->rows() == 0 || spec.matrix->cols() == 0) throw ShapeError("build_shaper: explicit matrix is empty");
      return *spec.matrix;
  }
  throw ShapeError("build_shaper: unknown kind");
}

}  // namespace

Matrix build_shaper(const ShaperSpec& spec, SeedStream stream) {
  Matrix B = raw_shaper(spec, stream);
  const double norm = linalg::spectral_norm(B).value;
  if (!(norm <= 1.0 + kShaperNormSlack)) {
    throw ConstructionError("build_shaper: ||B|| = " + std::to_string(norm) + " exceeds 1");
  }
  return B;
}

}  // namespace rmlab::harness
