#include "rmlab/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>

#include <boost/math/special_functions/gamma.hpp>

#include "detail/numeric.hpp"
#include "rmlab/compensated.hpp"
#include "rmlab/error.hpp"

namespace rmlab::dist {

using detail::kInf;
using detail::normal_cdf;
using detail::normal_pdf;

namespace {

struct KindInfo {
  Kind kind;
  std::string_view name;
  std::string_view param_key;  // empty when the law has no parameter
};

constexpr KindInfo kKinds[] = {
    {Kind::Gaussian, "gaussian", ""},
    {Kind::Rademacher, "rademacher", ""},
    {Kind::Laplace, "laplace", "scale"},
    {Kind::CenteredExponential, "centered_exponential", "rate"},
    {Kind::Exponential, "exponential", "rate"},
    {Kind::GaussianProduct, "gaussian_product", ""},
    {Kind::TruncatedGaussianProduct, "truncated_gaussian_product", "threshold"},
    {Kind::Zero, "zero", ""},
};

const KindInfo& info(Kind k) {
  for (const auto& i : kKinds) {
    if (i.kind == k) return i;
  }
  throw ParameterError("unknown distribution kind");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

// E|g|^p for a standard Gaussian, in log form.
double log_gaussian_abs_moment(double p) {
  return 0.5 * p * std::log(2.0) + std::lgamma(0.5 * (p + 1.0)) - 0.5 * std::log(detail::kPi);
}

// E exp(s|g'|) for a standard Gaussian g'.
double abs_gaussian_mgf(double s) { return 2.0 * std::exp(0.5 * s * s) * normal_cdf(s); }

// 2∫_lower^∞ φ(y)·E_g exp(|g|y/K) dy, the contribution of |g′| > lower to
// E exp(|g g′|/K). Finite only for K > 1.
double product_mgf_tail(double K, double lower) {
  if (K <= 1.0) return kInf;
  const double shrink = 1.0 - 1.0 / (K * K);
  auto f = [K, shrink](double y) {
    return 4.0 * std::exp(-0.5 * shrink * y * y) / std::sqrt(2.0 * detail::kPi) *
           normal_cdf(y / K);
  };
  return detail::integrate(f, lower, kInf);
}

// P{|g|·|g′| ≥ t, |g′| > lower} = 2∫_lower^∞ φ(y) erfc(t/(y√2)) dy.
double product_survival(double t, double lower) {
  auto f = [t](double y) {
    if (y <= 0.0) return 0.0;
    return 2.0 * normal_pdf(y) * std::erfc(t / (y * detail::kSqrt2));
  };
  return std::clamp(detail::integrate(f, lower, kInf), 0.0, 1.0);
}

double solve_psi(const std::function<double(double)>& mgf) {
  constexpr double lo = 1e-6;
  constexpr double hi = 1e6;
  if (mgf(hi) > 2.0) throw NoSolutionError("psi norm: E exp(|X|/K) exceeds 2 on the whole bracket");
  return detail::bisect_boundary([&](double K) { return mgf(K) > 2.0; }, lo, hi, kPsiTolerance);
}

}  // namespace

bool ScalarDistribution::has_parameter() const noexcept {
  return kind == Kind::Laplace || kind == Kind::CenteredExponential ||
         kind == Kind::Exponential || kind == Kind::TruncatedGaussianProduct;
}

bool ScalarDistribution::is_symmetric() const noexcept {
  return kind != Kind::Exponential && kind != Kind::CenteredExponential;
}

bool ScalarDistribution::is_subgaussian() const noexcept {
  return kind == Kind::Gaussian || kind == Kind::Rademacher || kind == Kind::Zero;
}

void validate(const ScalarDistribution& d) {
  if (d.has_parameter() && !(std::isfinite(d.param) && d.param > 0.0)) {
    throw ParameterError(std::string(kind_name(d.kind)) + ": parameter must be positive and finite, got " +
                         format_double(d.param));
  }
}

std::string_view kind_name(Kind k) noexcept {
  for (const auto& i : kKinds) {
    if (i.kind == k) return i.name;
  }
  return "unknown";
}

ScalarDistribution parse(std::string_view text) {
  text = trim(text);
  const auto brace = text.find('{');
  const std::string_view name = trim(text.substr(0, brace));
  const KindInfo* found = nullptr;
  for (const auto& i : kKinds) {
    if (i.name == name) found = &i;
  }
  if (found == nullptr) throw ParameterError("unknown distribution '" + std::string(name) + "'");

  ScalarDistribution d{found->kind, 1.0};
  if (brace != std::string_view::npos) {
    if (text.back() != '}') throw ParameterError("distribution descriptor: missing '}'");
    std::string_view body = text.substr(brace + 1, text.size() - brace - 2);
    while (!trim(body).empty()) {
      const auto comma = body.find(',');
      const std::string_view item = trim(body.substr(0, comma));
      body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) throw ParameterError("distribution descriptor: expected key=value");
      const std::string_view key = trim(item.substr(0, eq));
      const std::string_view value = trim(item.substr(eq + 1));
      if (key != found->param_key || key.empty()) {
        throw ParameterError("distribution '" + std::string(name) + "' has no parameter '" +
                             std::string(key) + "'");
      }
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ParameterError("distribution descriptor: bad number '" + std::string(value) + "'");
      }
      d.param = v;
    }
  }
  validate(d);
  return d;
}

std::string to_string(const ScalarDistribution& d) {
  const auto& i = info(d.kind);
  std::string s(i.name);
  if (!i.param_key.empty()) {
    s += '{';
    s += i.param_key;
    s += '=';
    s += format_double(d.param);
    s += '}';
  }
  return s;
}

double draw(const ScalarDistribution& d, Rng& rng) {
  switch (d.kind) {
    case Kind::Gaussian:
      return rng.normal();
    case Kind::Rademacher:
      return rng.rademacher();
    case Kind::Laplace: {
      const double sign = rng.rademacher();
      return sign * d.param * rng.exponential();
    }
    case Kind::CenteredExponential:
      return (rng.exponential() - 1.0) / d.param;
    case Kind::Exponential:
      return rng.exponential() / d.param;
    case Kind::GaussianProduct: {
      const double g = rng.normal();
      const double gp = rng.normal();
      return g * gp;
    }
    case Kind::TruncatedGaussianProduct: {
      const double g = rng.normal();
      const double gp = rng.normal();
      return std::fabs(gp) > d.param ? g * gp : 0.0;
    }
    case Kind::Zero:
      return 0.0;
  }
  return 0.0;
}

void sample_into(const ScalarDistribution& d, Rng& rng, std::span<double> out) {
  if (d.kind == Kind::Zero) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  for (double& x : out) x = draw(d, rng);
}

std::vector<double> sample(const ScalarDistribution& d, SeedStream stream, std::size_t count) {
  validate(d);
  if (count == 0) throw PreconditionError("sample: count must be at least 1");
  Rng rng(stream);
  std::vector<double> out(count);
  sample_into(d, rng, out);
  return out;
}

double psi1_mgf(const ScalarDistribution& d, double K) {
  validate(d);
  if (!(K > 0.0)) return kInf;
  switch (d.kind) {
    case Kind::Gaussian:
      return abs_gaussian_mgf(1.0 / K);
    case Kind::Rademacher:
      return std::exp(1.0 / K);
    case Kind::Laplace:
      return K > d.param ? 1.0 / (1.0 - d.param / K) : kInf;
    case Kind::Exponential:
      return K * d.param > 1.0 ? 1.0 / (1.0 - 1.0 / (d.param * K)) : kInf;
    case Kind::CenteredExponential: {
      const double rate = d.param;
      const double inv = 1.0 / K;
      if (inv >= rate) return kInf;
      const double mu = 1.0 / rate;
      const double below = rate * std::exp(mu * inv) * (1.0 - std::exp(-mu * (rate + inv))) / (rate + inv);
      const double above = rate * std::exp(-1.0) / (rate - inv);
      return below + above;
    }
    case Kind::GaussianProduct:
      return product_mgf_tail(K, 0.0);
    case Kind::TruncatedGaussianProduct: {
      const double s = d.param;
      const double tail = product_mgf_tail(K, s);
      return (2.0 * normal_cdf(s) - 1.0) + tail;
    }
    case Kind::Zero:
      return 1.0;
  }
  return kInf;
}

double psi_norm(const ScalarDistribution& d, int order) {
  validate(d);
  if (order == 1) {
    switch (d.kind) {
      case Kind::Laplace:
        return 2.0 * d.param;
      case Kind::Rademacher:
        return 1.0 / std::log(2.0);
      case Kind::Exponential:
        return 2.0 / d.param;
      case Kind::Zero:
        return 0.0;
      default:
        return solve_psi([&](double K) { return psi1_mgf(d, K); });
    }
  }
  if (order == 2) {
    switch (d.kind) {
      case Kind::Gaussian:
        return std::sqrt(8.0 / 3.0);
      case Kind::Rademacher:
        return 1.0 / std::sqrt(std::log(2.0));
      case Kind::Zero:
        return 0.0;
      default:
        throw DomainError("psi_2 norm of " + to_string(d) + " is infinite");
    }
  }
  throw ParameterError("psi_norm: order must be 1 or 2");
}

std::string_view method_name(MomentMethod m) noexcept {
  switch (m) {
    case MomentMethod::ClosedForm:
      return "closed_form";
    case MomentMethod::Quadrature:
      return "quadrature";
    case MomentMethod::MonteCarlo:
      return "monte_carlo";
  }
  return "unknown";
}

MomentValue abs_moment(const ScalarDistribution& d, double p) {
  validate(d);
  if (!(p >= 1.0) || !std::isfinite(p)) throw PreconditionError("abs_moment: p must be >= 1");
  MomentValue m{p, 0.0, MomentMethod::ClosedForm, 0.0};
  switch (d.kind) {
    case Kind::Gaussian:
      m.value = std::exp(log_gaussian_abs_moment(p) / p);
      break;
    case Kind::Rademacher:
      m.value = 1.0;
      break;
    case Kind::Laplace:
      m.value = d.param * std::exp(std::lgamma(p + 1.0) / p);
      break;
    case Kind::Exponential:
      m.value = std::exp(std::lgamma(p + 1.0) / p) / d.param;
      break;
    case Kind::CenteredExponential: {
      // λ·(ξ) = Y − 1 with Y ~ Exp(1): E|Y − 1|^p = e⁻¹Γ(p+1) + ∫₀¹ u^p e^{u−1} du.
      const double head = detail::integrate([p](double u) { return std::pow(u, p) * std::exp(u - 1.0); }, 0.0, 1.0);
      const double tail = std::exp(std::lgamma(p + 1.0) - 1.0);
      m.value = std::pow(head + tail, 1.0 / p) / d.param;
      m.method = MomentMethod::Quadrature;
      break;
    }
    case Kind::GaussianProduct:
      m.value = std::exp(2.0 * log_gaussian_abs_moment(p) / p);
      break;
    case Kind::TruncatedGaussianProduct: {
      const double s = d.param;
      const double q = boost::math::gamma_q(0.5 * (p + 1.0), 0.5 * s * s);
      m.value = q > 0.0 ? std::exp((2.0 * log_gaussian_abs_moment(p) + std::log(q)) / p) : 0.0;
      break;
    }
    case Kind::Zero:
      m.value = 0.0;
      break;
  }
  return m;
}

double abs_survival(const ScalarDistribution& d, double t) {
  validate(d);
  if (t <= 0.0) return 1.0;
  switch (d.kind) {
    case Kind::Gaussian:
      return std::erfc(t / detail::kSqrt2);
    case Kind::Rademacher:
      return t <= 1.0 ? 1.0 : 0.0;
    case Kind::Laplace:
      return std::exp(-t / d.param);
    case Kind::Exponential:
      return std::exp(-d.param * t);
    case Kind::CenteredExponential: {
      const double rate = d.param;
      const double mu = 1.0 / rate;
      const double upper = std::exp(-rate * (mu + t));
      const double lower = t < mu ? -std::expm1(-rate * (mu - t)) : 0.0;
      return upper + lower;
    }
    case Kind::GaussianProduct:
      return product_survival(t, 0.0);
    case Kind::TruncatedGaussianProduct:
      return product_survival(t, d.param);
    case Kind::Zero:
      return 0.0;
  }
  return 0.0;
}

double abs_quantile(const ScalarDistribution& d, double u) {
  validate(d);
  if (!(u >= 0.0 && u < 1.0)) throw PreconditionError("abs_quantile: u must lie in [0, 1)");
  switch (d.kind) {
    case Kind::Gaussian:
      return detail::kSqrt2 * boost::math::erf_inv(u);
    case Kind::Rademacher:
      return u > 0.0 ? 1.0 : 0.0;
    case Kind::Laplace:
      return -d.param * std::log1p(-u);
    case Kind::Exponential:
      return -std::log1p(-u) / d.param;
    case Kind::Zero:
      return 0.0;
    default:
      break;
  }
  // Generalized inverse of the CDF of |ξ| by bisection.
  const auto cdf = [&](double t) { return 1.0 - abs_survival(d, t); };
  if (d.kind == Kind::TruncatedGaussianProduct && u <= 2.0 * normal_cdf(d.param) - 1.0) return 0.0;
  double hi = 1.0;
  while (cdf(hi) < u) hi *= 2.0;
  return detail::bisect_boundary([&](double t) { return cdf(t) < u; }, 0.0, hi, 1e-12 * hi);
}

double empirical_psi1(std::span<const double> samples) {
  if (samples.size() < 1000) throw PreconditionError("empirical_psi1: needs at least 1000 samples");
  if (std::all_of(samples.begin(), samples.end(), [](double x) { return x == 0.0; })) return 0.0;
  const auto mgf = [&](double K) {
    CompensatedSum s;
    for (double x : samples) s.add(std::exp(std::fabs(x) / K));
    return s.value() / static_cast<double>(samples.size());
  };
  double lo = 1e-6;
  double hi = 1e6;
  if (mgf(hi) > 2.0) {
    throw NoSolutionError("empirical_psi1: empirical MGF exceeds 2 for every K in [1e-6, 1e6]");
  }
  if (mgf(lo) <= 2.0) return lo;
  // Geometric steps while the bracket spans decades, arithmetic after.
  while (hi - lo > kPsiTolerance * std::max(1.0, hi)) {
    const double mid = hi > 2.0 * lo ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (mgf(mid) > 2.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

TabulatedQuantile::TabulatedQuantile(const ScalarDistribution& d, SeedStream stream,
                                     std::size_t count) {
  validate(d);
  if (count == 0) throw PreconditionError("TabulatedQuantile: count must be positive");
  sorted_ = sample(d, stream, count);
  for (double& x : sorted_) x = std::fabs(x);
  std::sort(sorted_.begin(), sorted_.end());
}

const TabulatedQuantile& TabulatedQuantile::shared(const ScalarDistribution& d) {
  static std::mutex mutex;
  static std::map<std::pair<int, double>, std::unique_ptr<TabulatedQuantile>> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(static_cast<int>(d.kind), d.param);
  auto& slot = cache[key];
  if (!slot) {
    const SeedStream stream{0x51a7ab1e0000ULL, mix64(static_cast<std::uint64_t>(d.kind))};
    slot = std::make_unique<TabulatedQuantile>(d, stream, 10'000'000);
  }
  return *slot;
}

double TabulatedQuantile::operator()(double u) const {
  if (!(u >= 0.0 && u < 1.0)) throw PreconditionError("TabulatedQuantile: u must lie in [0, 1)");
  const auto n = sorted_.size();
  auto idx = static_cast<std::size_t>(u * static_cast<double>(n));
  if (idx >= n) idx = n - 1;
  return sorted_[idx];
}

}  // namespace rmlab::dist
