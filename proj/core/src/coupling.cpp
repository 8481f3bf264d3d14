#include "rmlab/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rmlab/compensated.hpp"
#include "rmlab/error.hpp"
#include "rmlab/linalg.hpp"

namespace rmlab::coupling {

bool dominates(const Survival& surv_h, const Survival& surv_hp, std::span<const double> t_grid,
               double c) {
  return std::all_of(t_grid.begin(), t_grid.end(), [&](double t) {
    return surv_h(t) <= c * surv_hp(t / c) + kDominationSlack;
  });
}

DominationFit fit_domination_constant(const Survival& surv_h, const Survival& surv_hp,
                                      std::span<const double> t_grid) {
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) throw PreconditionError("fit_domination_constant: grid must be increasing");
  }
  double hi = kMaxDominationConstant;
  if (!dominates(surv_h, surv_hp, t_grid, hi)) {
    throw NoSolutionError("fit_domination_constant: no domination up to c = 1e6");
  }
  double lo = 1.0;
  if (dominates(surv_h, surv_hp, t_grid, lo)) {
    hi = lo;
  } else {
    while (hi - lo > kDominationTolerance * hi) {
      const double mid = hi > 4.0 * lo ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
      if (dominates(surv_h, surv_hp, t_grid, mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
  }
  DominationFit fit{hi, std::vector<double>(t_grid.begin(), t_grid.end()), {}};
  for (double t : t_grid) fit.margins.push_back(hi * surv_hp(t / hi) - surv_h(t));
  return fit;
}

std::vector<CoupledPair> quantile_couple(const DominationFit& fit, const Quantile& quantile_h,
                                         const Quantile& quantile_hp, SeedStream stream,
                                         std::size_t count) {
  if (!(fit.c >= 1.0)) throw PreconditionError("quantile_couple: domination constant must be >= 1");
  const double c = fit.c;
  const double keep = 1.0 / c;
  const double thin = 1.0 - keep;
  Rng rng(stream);
  std::vector<CoupledPair> out(count);
  for (auto& pair : out) {
    const double u = rng.uniform();
    pair.x = u < thin ? 0.0 : quantile_h(std::min((u - thin) * c, std::nextafter(1.0, 0.0)));
    pair.y = c * quantile_hp(u);
  }
  return out;
}

bool Functional::is_symmetric_convex() const noexcept {
  return kind == FunctionalKind::AbsSum || kind == FunctionalKind::EuclideanNorm ||
         kind == FunctionalKind::SpectralNorm;
}

double Functional::operator()(std::span<const double> x) const {
  switch (kind) {
    case FunctionalKind::AbsSum: {
      CompensatedSum s;
      for (double e : x) s.add(std::fabs(e));
      return s.value();
    }
    case FunctionalKind::EuclideanNorm:
      return linalg::euclidean_norm(x);
    case FunctionalKind::SpectralNorm: {
      if (!shaper) throw ContractError("spectral-norm functional needs a shaper matrix");
      const std::size_t rows = shaper->cols();
      if (rows == 0 || x.size() % rows != 0) throw ShapeError("spectral-norm functional: n_vars not a multiple of B.cols()");
      Matrix A(rows, x.size() / rows, std::vector<double>(x.begin(), x.end()));
      return linalg::spectral_norm(linalg::matmul(*shaper, A)).value;
    }
    case FunctionalKind::SignedSum:
      return compensated_sum(x);
    case FunctionalKind::MaxCoordinate:
      return x.empty() ? 0.0 : *std::max_element(x.begin(), x.end());
  }
  return 0.0;
}

FunctionalKind parse_functional(std::string_view name) {
  if (name == "abs-sum") return FunctionalKind::AbsSum;
  if (name == "euclidean-norm") return FunctionalKind::EuclideanNorm;
  if (name == "spectral-norm") return FunctionalKind::SpectralNorm;
  if (name == "signed-sum") return FunctionalKind::SignedSum;
  if (name == "max") return FunctionalKind::MaxCoordinate;
  throw ParameterError("unknown functional '" + std::string(name) + "'");
}

std::string_view functional_name(FunctionalKind k) noexcept {
  switch (k) {
    case FunctionalKind::AbsSum:
      return "abs-sum";
    case FunctionalKind::EuclideanNorm:
      return "euclidean-norm";
    case FunctionalKind::SpectralNorm:
      return "spectral-norm";
    case FunctionalKind::SignedSum:
      return "signed-sum";
    case FunctionalKind::MaxCoordinate:
      return "max";
  }
  return "unknown";
}

double ComparisonEstimate::combined_se() const noexcept {
  return std::sqrt(lhs_se * lhs_se + rhs_se * rhs_se);
}

bool ComparisonEstimate::holds() const noexcept { return lhs <= rhs + 3.0 * combined_se(); }

namespace {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_and_se(std::span<const double> v) {
  const double n = static_cast<double>(v.size());
  const double mean = compensated_sum(v) / n;
  CompensatedSum ss;
  for (double x : v) ss.add((x - mean) * (x - mean));
  const double var = v.size() > 1 ? ss.value() / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n)};
}

struct FunctionalDraws {
  std::vector<double> lhs;
  std::vector<double> rhs_unit;  // f(h′) at K = 1
};

FunctionalDraws draw_functionals(const Functional& f, const dist::ScalarDistribution& h,
                                 const dist::ScalarDistribution& hp, std::size_t n_vars,
                                 std::size_t trials, SeedStream stream) {
  if (!f.is_symmetric_convex()) {
    throw ContractError("comparison_estimate: functional '" + std::string(functional_name(f.kind)) +
                        "' is not symmetric convex");
  }
  if (n_vars == 0 || trials < 2) throw PreconditionError("comparison_estimate: need n_vars >= 1 and trials >= 2");
  dist::validate(h);
  dist::validate(hp);
  FunctionalDraws d;
  d.lhs.resize(trials);
  d.rhs_unit.resize(trials);
  std::vector<double> x(n_vars);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng_h(stream.child(2 * t));
    dist::sample_into(h, rng_h, x);
    d.lhs[t] = f(x);
    Rng rng_hp(stream.child(2 * t + 1));
    dist::sample_into(hp, rng_hp, x);
    d.rhs_unit[t] = f(x);
  }
  return d;
}

ComparisonEstimate estimate_at(const FunctionalDraws& d, double K) {
  const auto l = mean_and_se(d.lhs);
  const auto r = mean_and_se(d.rhs_unit);
  // f is positively homogeneous, so E f(K h′) = K·E f(h′).
  return {K, l.mean, K * r.mean, l.se, K * r.se};
}

}  // namespace

ComparisonEstimate comparison_estimate(const Functional& f, const dist::ScalarDistribution& h,
                                       const dist::ScalarDistribution& hp, double K,
                                       std::size_t n_vars, std::size_t trials, SeedStream stream) {
  if (!(K > 0.0)) throw ParameterError("comparison_estimate: K must be positive");
  return estimate_at(draw_functionals(f, h, hp, n_vars, trials, stream), K);
}

SmallestK smallest_working_K(const Functional& f, const dist::ScalarDistribution& h,
                             const dist::ScalarDistribution& hp, std::size_t n_vars,
                             std::size_t trials, SeedStream stream) {
  const auto draws = draw_functionals(f, h, hp, n_vars, trials, stream);
  double lo = 1.0 / 32.0;
  double hi = 1.0 / 16.0;
  while (!estimate_at(draws, hi).holds()) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw NoSolutionError("smallest_working_K: no K up to 1e12");
  }
  if (hi == 1.0 / 16.0) return {hi, estimate_at(draws, hi)};
  for (int i = 0; i < 12; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (estimate_at(draws, mid).holds()) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {hi, estimate_at(draws, hi)};
}

Survival abs_survival_of(const dist::ScalarDistribution& d) {
  dist::validate(d);
  return [d](double t) { return dist::abs_survival(d, t); };
}

Quantile abs_quantile_of(const dist::ScalarDistribution& d) {
  dist::validate(d);
  if (d.kind == dist::Kind::GaussianProduct || d.kind == dist::Kind::TruncatedGaussianProduct ||
      d.kind == dist::Kind::CenteredExponential) {
    const auto* table = &dist::TabulatedQuantile::shared(d);
    return [table](double u) { return (*table)(u); };
  }
  return [d](double u) { return dist::abs_quantile(d, u); };
}

}  // namespace rmlab::coupling
