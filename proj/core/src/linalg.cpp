#include "rmlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rmlab/compensated.hpp"
#include "rmlab/error.hpp"
#include "rmlab/random.hpp"

namespace rmlab::linalg {

namespace {

void require_same_shape(const Matrix& X, const Matrix& Y, const char* what) {
  if (X.rows() != Y.rows() || X.cols() != Y.cols()) {
    throw ShapeError(std::string(what) + ": shapes " + std::to_string(X.rows()) + "x" +
                     std::to_string(X.cols()) + " and " + std::to_string(Y.rows()) + "x" +
                     std::to_string(Y.cols()) + " differ");
  }
}

// Symmetric Gram matrix on the smaller side: MMᵀ when rows ≤ cols, else MᵀM.
Matrix small_gram(const Matrix& M) {
  const Matrix& src = M;
  if (M.rows() <= M.cols()) {
    const std::size_t d = M.rows();
    Matrix S(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i; j < d; ++j) {
        const double v = compensated_dot(src.row(i), src.row(j));
        S(i, j) = v;
        S(j, i) = v;
      }
    }
    return S;
  }
  const Matrix T = M.transposed();
  return small_gram(T);
}

struct PowerRun {
  double lambda = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
};

PowerRun power_iterate(const Matrix& S, std::vector<double> v, const PowerOptions& opt) {
  const std::size_t d = S.rows();
  std::vector<double> w(d);
  const auto normalize = [](std::vector<double>& x) {
    const double nrm = euclidean_norm(x);
    if (nrm == 0.0) return false;
    for (double& e : x) e /= nrm;
    return true;
  };
  if (!normalize(v)) return {0.0, true, 0};

  PowerRun run;
  double previous = -1.0;
  for (std::size_t it = 1; it <= opt.max_iterations; ++it) {
    for (std::size_t i = 0; i < d; ++i) w[i] = compensated_dot(S.row(i), v);
    const double rq = compensated_dot(v, w);  // Rayleigh quotient of unit v
    run.lambda = std::max(run.lambda, rq);
    run.iterations = it;
    if (previous >= 0.0 && std::fabs(rq - previous) <= opt.relative_tolerance * std::fabs(rq)) {
      run.converged = true;
      return run;
    }
    previous = rq;
    v.swap(w);
    if (!normalize(v)) {
      // Start vector orthogonal to the range; nothing more to learn.
      run.converged = true;
      return run;
    }
  }
  return run;
}

// One-sided cyclic Jacobi on the columns of `work`; returns column norms.
std::vector<double> jacobi_column_norms(Matrix work) {
  const std::size_t rows = work.rows();
  const std::size_t cols = work.cols();
  constexpr double kTol = 1e-14;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        double alpha = 0.0;
        double beta = 0.0;
        double gamma = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
          const double a = work(i, p);
          const double b = work(i, q);
          alpha += a * a;
          beta += b * b;
          gamma += a * b;
        }
        if (gamma == 0.0 || std::fabs(gamma) <= kTol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < rows; ++i) {
          const double a = work(i, p);
          const double b = work(i, q);
          work(i, p) = c * a - s * b;
          work(i, q) = s * a + c * b;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> norms(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    CompensatedSum s;
    for (std::size_t i = 0; i < rows; ++i) s.add(work(i, j) * work(i, j));
    norms[j] = std::sqrt(s.value());
  }
  return norms;
}

}  // namespace

Matrix matmul(const Matrix& B, const Matrix& A) {
  if (B.cols() != A.rows()) {
    throw ShapeError("matmul: " + std::to_string(B.rows()) + "x" + std::to_string(B.cols()) +
                     " times " + std::to_string(A.rows()) + "x" + std::to_string(A.cols()));
  }
  const std::size_t m = B.rows();
  const std::size_t inner = B.cols();
  const std::size_t n = A.cols();
  Matrix W(m, n);
  std::vector<double> sum(n);
  std::vector<double> comp(n);
  for (std::size_t i = 0; i < m; ++i) {
    std::fill(sum.begin(), sum.end(), 0.0);
    std::fill(comp.begin(), comp.end(), 0.0);
    const auto brow = B.row(i);
    for (std::size_t k = 0; k < inner; ++k) {
      const double b = brow[k];
      if (b == 0.0) continue;
      const auto arow = A.row(k);
      for (std::size_t j = 0; j < n; ++j) {
        // TwoProduct + TwoSum, error terms accumulated separately.
        const double p = b * arow[j];
        const double pe = std::fma(b, arow[j], -p);
        const double t = sum[j] + p;
        const double z = t - sum[j];
        const double se = (sum[j] - (t - z)) + (p - z);
        sum[j] = t;
        comp[j] += pe + se;
      }
    }
    for (std::size_t j = 0; j < n; ++j) W(i, j) = sum[j] + comp[j];
  }
  return W;
}

NormEstimate spectral_norm(const Matrix& M, NormMethod method, const PowerOptions& options) {
  if (M.empty()) return {0.0, true, 0};
  if (method == NormMethod::Exact) {
    const auto sv = singular_values(M);
    return {sv.empty() ? 0.0 : sv.front(), true, 0};
  }
  const Matrix S = small_gram(M);
  const std::size_t d = S.rows();
  if (std::all_of(S.data().begin(), S.data().end(), [](double x) { return x == 0.0; })) {
    return {0.0, true, 0};
  }
  const PowerRun ones = power_iterate(S, std::vector<double>(d, 1.0), options);
  Rng rng(SeedStream{options.restart_seed, d});
  std::vector<double> start(d);
  for (double& x : start) x = rng.normal();
  const PowerRun random = power_iterate(S, std::move(start), options);
  const double lambda = std::max(ones.lambda, random.lambda);
  return {std::sqrt(std::max(lambda, 0.0)), ones.converged && random.converged,
          ones.iterations + random.iterations};
}

std::vector<double> singular_values(const Matrix& M) {
  if (std::min(M.rows(), M.cols()) > 64) {
    throw PreconditionError("exact spectral norm needs min(rows, cols) <= 64");
  }
  if (M.empty()) return {};
  // Jacobi on the orientation with the fewer columns.
  std::vector<double> sv = M.cols() <= M.rows() ? jacobi_column_norms(M) : jacobi_column_norms(M.transposed());
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

std::vector<double> column_norms(const Matrix& M) {
  std::vector<CompensatedSum> acc(M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i) {
    const auto r = M.row(i);
    for (std::size_t j = 0; j < M.cols(); ++j) acc[j].add(r[j] * r[j]);
  }
  std::vector<double> out(M.cols());
  for (std::size_t j = 0; j < M.cols(); ++j) out[j] = std::sqrt(acc[j].value());
  return out;
}

double gram_trace(const Matrix& M) {
  CompensatedSum s;
  for (double x : M.data()) s.add(x * x);
  return s.value();
}

Matrix scaled(const Matrix& M, double factor) {
  Matrix out = M;
  for (double& x : out.data()) x *= factor;
  return out;
}

Matrix added(const Matrix& X, const Matrix& Y) {
  require_same_shape(X, Y, "added");
  Matrix out = X;
  auto o = out.data();
  auto y = Y.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] += y[i];
  return out;
}

double max_abs_difference(const Matrix& X, const Matrix& Y) {
  require_same_shape(X, Y, "max_abs_difference");
  double d = 0.0;
  auto x = X.data();
  auto y = Y.data();
  for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::fabs(x[i] - y[i]));
  return d;
}

double euclidean_norm(std::span<const double> x) {
  double scale = 0.0;
  for (double e : x) scale = std::max(scale, std::fabs(e));
  if (scale == 0.0) return 0.0;
  CompensatedSum s;
  for (double e : x) {
    const double r = e / scale;
    s.add(r * r);
  }
  return scale * std::sqrt(s.value());
}

}  // namespace rmlab::linalg
