#include "rmlab/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "detail/numeric.hpp"
#include "rmlab/compensated.hpp"
#include "rmlab/error.hpp"
#include "rmlab/linalg.hpp"

namespace rmlab::decomp {

namespace {

double guarded_log(std::size_t n) { return std::max(std::log(static_cast<double>(n)), 1.0); }

Matrix select_columns(const Matrix& M, const std::vector<std::size_t>& idx) {
  Matrix out(M.rows(), idx.size());
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t c = 0; c < idx.size(); ++c) out(i, c) = M(i, idx[c]);
  }
  return out;
}

Matrix select_rows(const Matrix& M, const std::vector<std::size_t>& idx) {
  Matrix out(idx.size(), M.cols());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const auto src = M.row(idx[r]);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

}  // namespace

double split_threshold(std::size_t n, double C_split) {
  if (n == 0) throw PreconditionError("split_threshold: n must be at least 1");
  if (!(C_split > 0.0)) throw ParameterError("split_threshold: C must be positive");
  return C_split / static_cast<double>(n) * std::pow(guarded_log(n), -2.5);
}

ColumnSplit split_columns(const Matrix& B, const Matrix& A, double threshold) {
  if (B.cols() != A.rows()) {
    throw ShapeError("split_columns: B has " + std::to_string(B.cols()) + " columns but A has " +
                     std::to_string(A.rows()) + " rows");
  }
  ColumnSplit s;
  s.threshold = threshold;
  const auto norms = linalg::column_norms(B);
  for (std::size_t i = 0; i < norms.size(); ++i) {
    (norms[i] > threshold ? s.large_indices : s.small_indices).push_back(i);
  }
  s.B_large = select_columns(B, s.large_indices);
  s.B_small = select_columns(B, s.small_indices);
  s.A_large = select_rows(A, s.large_indices);
  s.A_small = select_rows(A, s.small_indices);
  return s;
}

double reconstruct_check(const ColumnSplit& split, const Matrix& B, const Matrix& A) {
  const Matrix full = linalg::matmul(B, A);
  const Matrix parts = linalg::added(linalg::matmul(split.B_large, split.A_large),
                                     linalg::matmul(split.B_small, split.A_small));
  return linalg::max_abs_difference(parts, full);
}

double truncation_level(std::size_t n, double C_trunc) {
  if (n == 0) throw PreconditionError("truncation_level: n must be at least 1");
  if (!(C_trunc > 0.0)) throw ParameterError("truncation_level: C must be positive");
  return C_trunc * std::sqrt(static_cast<double>(n)) * guarded_log(n);
}

TruncationSplit truncate_entries(const Matrix& A, double level) {
  if (!(level > 0.0)) throw PreconditionError("truncate_entries: level must be positive");
  TruncationSplit t{level, Matrix(A.rows(), A.cols()), Matrix(A.rows(), A.cols())};
  const auto src = A.data();
  auto lo = t.bounded.data();
  auto hi = t.tail.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    (std::fabs(src[i]) <= level ? lo[i] : hi[i]) = src[i];
  }
  return t;
}

Matrix symmetrize(const Matrix& A, SeedStream stream) {
  Rng rng(stream);
  Matrix out = A;
  for (double& x : out.data()) x *= rng.rademacher();
  return out;
}

PaddedPair pad_to_square(const Matrix& B, const Matrix& A) {
  if (B.cols() != A.rows()) throw ShapeError("pad_to_square: B.cols() must equal A.rows()");
  const std::size_t m = B.rows();
  const std::size_t n = A.cols();
  if (m == n) return {B, A};
  if (n < m) {
    Matrix Ap(A.rows(), m);
    for (std::size_t i = 0; i < A.rows(); ++i) std::copy(A.row(i).begin(), A.row(i).end(), Ap.row(i).begin());
    return {B, std::move(Ap)};
  }
  Matrix Bp(n, B.cols());
  for (std::size_t i = 0; i < m; ++i) std::copy(B.row(i).begin(), B.row(i).end(), Bp.row(i).begin());
  return {std::move(Bp), A};
}

double xi_statistic(const Matrix& B, const Matrix& G_tail) {
  if (G_tail.rows() != B.cols()) {
    throw ShapeError("xi_statistic: G has " + std::to_string(G_tail.rows()) + " rows but B has " +
                     std::to_string(B.cols()) + " columns");
  }
  const auto norms = linalg::column_norms(B);
  CompensatedSum s;
  for (std::size_t i = 0; i < G_tail.rows(); ++i) {
    double peak = 0.0;
    for (double g : G_tail.row(i)) peak = std::max(peak, g * g);
    s.add(peak * norms[i] * norms[i]);
  }
  return std::sqrt(s.value());
}

double xi_squared_envelope(std::size_t n, double lower) {
  const double integral =
      detail::integrate([](double x) { return x * x * std::exp(-0.5 * x * x); }, lower, detail::kInf);
  const double nn = static_cast<double>(n);
  return 2.0 * nn * nn * integral;
}

}  // namespace rmlab::decomp
