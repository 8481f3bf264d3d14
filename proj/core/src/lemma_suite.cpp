#include "rmlab/lemma_suite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "detail/format.hpp"
#include "rmlab/compensated.hpp"
#include "rmlab/coupling.hpp"
#include "rmlab/decomposition.hpp"
#include "rmlab/goodness_of_fit.hpp"
#include "rmlab/nets.hpp"
#include "rmlab/order_statistics.hpp"

namespace rmlab::harness {

using detail::fmt;

namespace {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(std::span<const double> v) {
  const double n = static_cast<double>(v.size());
  const double mean = compensated_sum(v) / n;
  CompensatedSum ss;
  for (double x : v) ss.add((x - mean) * (x - mean));
  return {mean, std::sqrt(ss.value() / (n - 1.0) / n)};
}

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> g;
  for (std::size_t i = 0;; ++i) {
    const double t = lo + step * static_cast<double>(i);
    if (t > hi) break;
    g.push_back(t);
  }
  return g;
}

// Worst excess of the empirical survival over a bound, in units of its
// binomial standard error. Pass iff ≤ 3.
struct EnvelopeCheck {
  double worst_z = -std::numeric_limits<double>::infinity();
  double at = 0.0;
};

template <class Bound>
EnvelopeCheck envelope_check(const bounds::TailCurve& curve, Bound bound) {
  EnvelopeCheck out;
  for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
    const double s = curve.survival[i];
    const double se = std::max(bounds::proportion_std_error(s, curve.sample_count),
                               1.0 / static_cast<double>(curve.sample_count));
    const double z = (s - bound(curve.thresholds[i])) / se;
    if (z > out.worst_z) out = {z, curve.thresholds[i]};
  }
  return out;
}

Verdict envelope_verdict(std::string item, std::string invariant, const EnvelopeCheck& e) {
  return make_verdict(std::move(item), std::move(invariant), e.worst_z <= 3.0, e.worst_z, 3.0,
                      "3 se per grid point", "worst at t = " + fmt(e.at));
}

Matrix gaussian_matrix(std::size_t r, std::size_t c, Rng& rng) {
  Matrix M(r, c);
  for (double& x : M.data()) x = rng.normal();
  return M;
}

}  // namespace

std::vector<Verdict> check_renyi(SeedStream stream, std::size_t n, std::size_t replicates) {
  std::vector<std::vector<double>> coords(n, std::vector<double>(replicates));
  Rng rng(stream);
  std::vector<double> x(n);
  for (std::size_t r = 0; r < replicates; ++r) {
    for (double& e : x) e = rng.exponential();
    std::sort(x.begin(), x.end());
    const auto t = dist::renyi_transform(x);
    for (std::size_t i = 0; i < n; ++i) coords[i][r] = t[i];
  }
  const auto cdf = [](double t) { return t <= 0.0 ? 0.0 : -std::expm1(-0.5 * t); };
  double worst_ratio = 0.0;
  std::size_t worst_coord = 0;
  std::size_t ks_failures = 0;
  double worst_mean_gap = 0.0;
  double worst_mean = 2.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto ks = dist::ks_statistic(coords[i], cdf);
    if (!ks.passes()) ++ks_failures;
    if (ks.statistic / ks.critical_value_at_01 > worst_ratio) {
      worst_ratio = ks.statistic / ks.critical_value_at_01;
      worst_coord = i;
    }
    const double m = compensated_sum(coords[i]) / static_cast<double>(replicates);
    if (std::fabs(m - 2.0) > worst_mean_gap) {
      worst_mean_gap = std::fabs(m - 2.0);
      worst_mean = m;
    }
  }
  return {
      make_verdict("renyi KS", "scaled exponential spacings are i.i.d. Exp(1/2)", ks_failures == 0,
                   worst_ratio, 1.0, "KS statistic / 1% critical value",
                   std::to_string(ks_failures) + " of " + std::to_string(n) + " coordinates fail; worst " +
                       std::to_string(worst_coord)),
      make_verdict("renyi mean", "scaled exponential spacings have mean 2",
                   worst_mean >= 1.95 && worst_mean <= 2.05, worst_mean, 2.05, "[1.95, 2.05]"),
  };
}

std::vector<Verdict> check_harmonic(SeedStream stream, std::size_t n, std::size_t replicates) {
  Rng rng(stream);
  CompensatedSum s;
  for (std::size_t r = 0; r < replicates; ++r) {
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) peak = std::max(peak, rng.exponential());
    s.add(peak);
  }
  const double mean = s.value() / static_cast<double>(replicates);
  const double h = dist::harmonic_expectation(n);
  const double gap = std::fabs(mean - h) / h;
  return {make_verdict("harmonic mean", "E max of n Exp(1) equals the n-th harmonic number", gap <= 0.02,
                       gap, 0.02, "2% relative", "mean " + fmt(mean) + ", H_n " + fmt(h))};
}

std::vector<Verdict> check_nets(SeedStream stream) {
  std::vector<Verdict> out;
  constexpr double eps = 0.5;
  for (std::size_t n : {2, 3}) {
    const auto net = nets::build_net(n, eps, stream.child(n), 100000);
    const double bound = nets::cardinality_bound(n, eps);
    const std::string tag = " n=" + std::to_string(n);
    out.push_back(make_verdict("net cardinality" + tag, "|net| <= 2n(1+2/eps)^(n-1)",
                               static_cast<double>(net.size()) <= bound, static_cast<double>(net.size()),
                               bound, "exact"));
    out.push_back(make_verdict("net packing" + tag, "net points are eps-separated",
                               nets::min_pairwise_distance(net) >= eps, nets::min_pairwise_distance(net),
                               eps, "exact"));
    const auto cover = nets::covering_check(net, 10000, stream.child(100 + n));
    out.push_back(make_verdict("net covering" + tag, "every probe lies within eps of the net", cover.covered,
                               cover.worst_distance, eps, "10000 probes"));
  }
  const auto net5 = nets::build_net(5, eps, stream.child(5), 200000);
  Rng rng(stream.child(6));
  std::size_t violations = 0;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Matrix M = gaussian_matrix(5, 5, rng);
    const double exact = linalg::spectral_norm(M, linalg::NormMethod::Exact).value;
    const auto b = nets::net_norm_bounds(M, net5);
    if (!(b.lower <= exact && exact <= b.upper)) ++violations;
    worst = std::max(worst, exact / b.lower);
  }
  out.push_back(make_verdict("net norm bracket n=5", "net maximum brackets the spectral norm",
                             violations == 0, static_cast<double>(violations), 0.0, "exact",
                             std::to_string(net5.size()) + " net points; worst exact/lower " + fmt(worst)));
  return out;
}

std::vector<Verdict> check_identities(SeedStream stream) {
  std::vector<Verdict> out;
  Rng rng(stream);
  const auto laplace = dist::ScalarDistribution::laplace(1.0);

  // Column split with both sides populated.
  const Matrix B = build_shaper({ShaperKind::PartialIsometry, 8, 256, 1, std::nullopt}, stream.child(1));
  Matrix A(256, 8);
  dist::sample_into(laplace, rng, A.data());
  auto norms = linalg::column_norms(B);
  std::nth_element(norms.begin(), norms.begin() + 128, norms.end());
  const auto split = decomp::split_columns(B, A, norms[128]);
  const double recon = decomp::reconstruct_check(split, B, A);
  out.push_back(make_verdict("split reconstruction", "BA = B_I A_I + B_Ic A_Ic", recon <= 1e-12, recon,
                             1e-12, "absolute", std::to_string(split.N0()) + " large columns"));

  const auto trunc = decomp::truncate_entries(A, 1.5);
  const bool exact = linalg::added(trunc.bounded, trunc.tail) == A;
  out.push_back(make_verdict("truncation split", "A = A 1(|A|<=a) + A 1(|A|>a)", exact, exact ? 0.0 : 1.0,
                             0.0, "bitwise"));

  const std::vector<ShaperSpec> specs{{ShaperKind::IdentityEmbed, 8, 20, 1, std::nullopt},
                                      {ShaperKind::PartialIsometry, 8, 64, 1, std::nullopt},
                                      {ShaperKind::ReplicatedAverage, 8, 32, 4, std::nullopt}};
  for (const auto& spec : specs) {
    const Matrix S = build_shaper(spec, stream.child(2));
    const double trace = linalg::gram_trace(S);
    // Certified ‖S‖ ≤ 1 + 1e-9 gives Trace(SᵀS) ≤ m(1 + 1e-9)².
    const double limit = static_cast<double>(spec.m) * (1.0 + kShaperNormSlack) * (1.0 + kShaperNormSlack);
    out.push_back(make_verdict("trace " + std::string(shaper_kind_name(spec.kind)),
                               "Trace(B^T B) <= m ||B||^2", trace <= limit, trace, limit,
                               "certified norm bound"));
  }

  double worst_pad = 0.0;
  for (auto [m, N, n] : {std::array<std::size_t, 3>{4, 9, 7}, {6, 10, 3}, {5, 5, 5}}) {
    const Matrix Bs = gaussian_matrix(m, N, rng);
    const Matrix As = gaussian_matrix(N, n, rng);
    const auto padded = decomp::pad_to_square(Bs, As);
    const double direct = linalg::spectral_norm(linalg::matmul(Bs, As), linalg::NormMethod::Exact).value;
    const double square =
        linalg::spectral_norm(linalg::matmul(padded.B, padded.A), linalg::NormMethod::Exact).value;
    worst_pad = std::max(worst_pad, std::fabs(direct - square) / direct);
  }
  out.push_back(make_verdict("padding", "zero padding preserves ||BA||", worst_pad <= 1e-12, worst_pad, 1e-12,
                             "relative"));

  double worst_norm = 0.0;
  for (auto [r, c] : {std::array<std::size_t, 2>{16, 40}, {12, 12}, {5, 30}, {30, 7}, {16, 16}, {1, 9}}) {
    const Matrix M = gaussian_matrix(r, c, rng);
    const double power = linalg::spectral_norm(M, linalg::NormMethod::Power).value;
    const double jacobi = linalg::spectral_norm(M, linalg::NormMethod::Exact).value;
    worst_norm = std::max(worst_norm, std::fabs(power - jacobi) / jacobi);
  }
  out.push_back(make_verdict("power vs jacobi", "power iteration matches the SVD", worst_norm <= 1e-8,
                             worst_norm, 1e-8, "relative"));
  return out;
}

std::vector<Verdict> check_envelopes(SeedStream stream, const bounds::BoundConstants& consts) {
  std::vector<Verdict> out;
  const auto laplace = dist::ScalarDistribution::laplace(1.0);
  const double psi = dist::psi_norm(laplace, 1);
  out.push_back(make_verdict("laplace psi1", "||Laplace(1)||_psi1 = 2", std::fabs(psi - 2.0) <= 1e-12, psi,
                             2.0, "1e-12 absolute"));

  const auto xs = dist::sample(laplace, stream.child(1), 1000000);
  const auto curve = bounds::empirical_tail(xs, grid(0.0, 20.0, 0.5));
  out.push_back(envelope_verdict("subexponential envelope", "P{|x| >= t} <= 2 exp(-t/psi1)",
                                 envelope_check(curve, [&](double t) { return bounds::subexp_tail_bound(psi, t); })));

  // Weighted Laplace sums against the Bernstein form.
  {
    const std::size_t n = 16;
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = 1.0 / std::sqrt(static_cast<double>(i + 1));
    Rng rng(stream.child(2));
    std::vector<double> sums(200000);
    for (double& s : sums) {
      CompensatedSum acc;
      for (double w : a) acc.add(w * dist::draw(laplace, rng));
      s = acc.value();
    }
    const auto c = bounds::empirical_tail(sums, grid(0.25, 15.0, 0.25));
    out.push_back(envelope_verdict(
        "bernstein envelope", "P{|sum a_i x_i| >= t} <= 2 exp(-c min(t^2/(K^2|a|^2), t/(K|a|_inf)))",
        envelope_check(c, [&](double t) { return 2.0 * bounds::bernstein_bound(a, psi, t, consts).probability; })));
    std::vector<double> half;
    std::vector<double> rate;
    const bounds::BoundConstants unit{1.0, consts.c0_gauss, consts.C_moment_tail, consts.c_subexp};
    for (std::size_t i = 0; i < c.thresholds.size(); ++i) {
      half.push_back(c.survival[i] / 2.0);
      rate.push_back(-std::log(bounds::bernstein_bound(a, psi, c.thresholds[i], unit).probability));
    }
    const double fitted = bounds::fit_exponent_constant(half, rate);
    out.push_back(make_verdict("bernstein fitted constant", "fitted Bernstein constant is positive", fitted > 0.0,
                               fitted, 0.0, "reported", "largest c consistent with every grid point"));
  }

  // Gaussian concentration of the 1-Lipschitz map g -> |g|.
  {
    Rng rng(stream.child(3));
    std::vector<double> f(200000);
    std::vector<double> g(16);
    for (double& v : f) {
      for (double& e : g) e = rng.normal();
      v = linalg::euclidean_norm(g);
    }
    const double mean = mean_se(f).mean;
    for (double& v : f) v -= mean;
    const auto c = bounds::empirical_tail(f, grid(0.25, 5.0, 0.25));
    out.push_back(envelope_verdict("gaussian lipschitz", "P{|f - Ef| >= t} <= 2 exp(-c0 t^2 / L^2)",
                                   envelope_check(c, [&](double t) {
                                     return 2.0 * bounds::gaussian_lipschitz_bound(t, 1.0, consts);
                                   })));
  }

  // Talagrand: convex 1-Lipschitz map of a Rademacher vector.
  {
    const Matrix P = build_shaper({ShaperKind::PartialIsometry, 4, 16, 1, std::nullopt}, stream.child(4));
    Rng rng(stream.child(5));
    std::vector<double> f(200000);
    std::vector<double> x(16);
    std::vector<double> y(4);
    for (double& v : f) {
      for (double& e : x) e = rng.rademacher();
      for (std::size_t i = 0; i < 4; ++i) y[i] = compensated_dot(P.row(i), x);
      v = linalg::euclidean_norm(y);
    }
    std::vector<double> sorted = f;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double median = sorted[sorted.size() / 2];
    for (double& v : f) v -= median;
    const auto c = bounds::empirical_tail(f, grid(0.25, 5.0, 0.25));
    out.push_back(envelope_verdict("talagrand", "P{|f - Mf| >= t} <= 4 exp(-t^2/4)",
                                   envelope_check(c, [](double t) { return bounds::talagrand_bound(t); })));
  }
  return out;
}

std::vector<Verdict> check_moment_to_tail(SeedStream stream, const bounds::BoundConstants& consts) {
  std::vector<Verdict> out;
  const auto laplace = dist::ScalarDistribution::laplace(1.0);
  double worst_premise = 0.0;
  for (int p = 1; p <= 20; ++p) {
    worst_premise = std::max(worst_premise, dist::abs_moment(laplace, p).value / (2.0 * p));
  }
  out.push_back(make_verdict("moment premise", "(E|x|^p)^(1/p) <= 2p", worst_premise <= 1.0, worst_premise, 1.0,
                             "closed form, p = 1..20"));
  const auto xs = dist::sample(laplace, stream, 1000000);
  for (double u : {1.0, 2.0, 3.0, 5.0}) {
    const double t = bounds::moment_to_tail_threshold(2.0, 0.0, 0.0, u, consts);
    const double s = bounds::empirical_tail(xs, std::vector<double>{t}).survival[0];
    const double se = bounds::proportion_std_error(s, xs.size());
    const double limit = std::exp(-u) + 3.0 * se;
    out.push_back(make_verdict("moment to tail u=" + fmt(u), "P{|x| >= C(a1 u + a2 sqrt(u) + a3)} <= exp(-u)",
                               s <= limit, s, limit, "3 se", "threshold " + fmt(t)));
  }
  return out;
}

std::vector<Verdict> check_coupling(SeedStream stream) {
  std::vector<Verdict> out;
  const auto l1 = dist::ScalarDistribution::laplace(1.0);
  const auto l2 = dist::ScalarDistribution::laplace(2.0);
  const auto t_grid = grid(0.0, 100.0, 0.25);

  const auto fit = coupling::fit_domination_constant(coupling::abs_survival_of(l2), coupling::abs_survival_of(l1),
                                                     t_grid);
  constexpr std::size_t draws = 1000000;
  const auto pairs = coupling::quantile_couple(fit, coupling::abs_quantile_of(l2), coupling::abs_quantile_of(l1),
                                               stream.child(1), draws);
  std::size_t violations = 0;
  std::size_t zeros = 0;
  std::vector<double> x_pos;
  std::vector<double> y_scaled;
  x_pos.reserve(draws);
  y_scaled.reserve(draws);
  for (const auto& p : pairs) {
    if (!(p.x <= p.y)) ++violations;
    if (p.x == 0.0) {
      ++zeros;
    } else {
      x_pos.push_back(p.x);
    }
    y_scaled.push_back(p.y / fit.c);
  }
  out.push_back(make_verdict("coupling order", "delta|h| <= c|h'| for every coupled pair", violations == 0,
                             static_cast<double>(violations), 0.0, "exact", "c = " + fmt(fit.c)));
  const double expect = 1.0 - 1.0 / fit.c;
  const double frac = static_cast<double>(zeros) / static_cast<double>(draws);
  const double se = std::sqrt(expect * (1.0 - expect) / static_cast<double>(draws));
  out.push_back(make_verdict("thinning mass", "P{X = 0} = 1 - 1/c", std::fabs(frac - expect) <= 3.0 * se,
                             frac, expect, "3 se (" + fmt(se) + ")"));
  const auto ks_y = dist::ks_statistic(y_scaled, [&](double t) { return 1.0 - dist::abs_survival(l1, t); });
  out.push_back(make_verdict("coupling marginal |h'|", "Y/c has the law of |h'|", ks_y.passes(), ks_y.statistic,
                             ks_y.critical_value_at_01, "KS 1%"));
  const auto ks_x = dist::ks_statistic(x_pos, [&](double t) { return 1.0 - dist::abs_survival(l2, t); });
  out.push_back(make_verdict("coupling marginal |h|", "X given X > 0 has the law of |h|", ks_x.passes(),
                             ks_x.statistic, ks_x.critical_value_at_01, "KS 1%"));

  {
    const auto same = coupling::fit_domination_constant(coupling::abs_survival_of(l1), coupling::abs_survival_of(l1),
                                                        t_grid);
    const auto q = coupling::abs_quantile_of(l1);
    const auto eq = coupling::quantile_couple(same, q, q, stream.child(2), 10000);
    const auto diff = std::count_if(eq.begin(), eq.end(), [](const auto& p) { return p.x != p.y; });
    out.push_back(make_verdict("coupling identical laws", "c = 1 and X = Y for identical laws",
                               same.c == 1.0 && diff == 0, static_cast<double>(diff), 0.0, "exact",
                               "c = " + fmt(same.c)));
  }

  struct Triple {
    std::string name;
    coupling::Functional f;
    dist::ScalarDistribution h;
    dist::ScalarDistribution hp;
    double K;
    std::size_t n_vars;
  };
  const std::vector<Triple> triples{
      {"abs-sum identical", {coupling::FunctionalKind::AbsSum, std::nullopt}, l1, l1, 1.0, 16},
      {"euclidean rademacher/gaussian",
       {coupling::FunctionalKind::EuclideanNorm, std::nullopt},
       dist::ScalarDistribution::rademacher(),
       dist::ScalarDistribution::gaussian(),
       2.0,
       16},
      {"abs-sum laplace(1)/laplace(2)", {coupling::FunctionalKind::AbsSum, std::nullopt}, l1, l2, 1.0, 16},
  };
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const auto& t = triples[i];
    const auto est = coupling::comparison_estimate(t.f, t.h, t.hp, t.K, t.n_vars, 2000, stream.child(10 + i));
    out.push_back(make_verdict("comparison " + t.name, "E f(h) <= E f(K h')", est.holds(), est.lhs,
                               est.rhs + 3.0 * est.combined_se(), "3 se (" + fmt(est.combined_se()) + ")",
                               "K = " + fmt(t.K)));
  }

  const coupling::Functional spectral{coupling::FunctionalKind::SpectralNorm, Matrix::identity(8)};
  const auto gp = dist::ScalarDistribution::gaussian_product();
  const auto k1 = coupling::smallest_working_K(spectral, l1, gp, 64, 2000, stream.child(20));
  const auto k2 = coupling::smallest_working_K(spectral, l1, gp, 64, 2000, stream.child(21));
  const double drift = std::fabs(k1.K / k2.K - 1.0);
  out.push_back(make_verdict("smallest K stability", "smallest working K is stable across seeds", drift <= 0.25,
                             drift, 0.25, "relative", "K = " + fmt(k1.K) + " and " + fmt(k2.K)));
  return out;
}

std::vector<Verdict> check_conditional_mean(SeedStream stream) {
  const auto xs = dist::sample(dist::ScalarDistribution::exponential(1.0), stream, 1000000);
  std::vector<double> below;
  for (double x : xs) {
    if (x <= 1.0) below.push_back(x);
  }
  const auto full = mean_se(xs);
  const auto cond = mean_se(below);
  const double se = std::hypot(full.se, cond.se);
  const double oracle = (1.0 - 2.0 * std::exp(-1.0)) / (1.0 - std::exp(-1.0));
  return {
      make_verdict("conditional mean", "E(x | x <= K) <= E x", full.mean - cond.mean >= 3.0 * se,
                   full.mean - cond.mean, 3.0 * se, "gap >= 3 se",
                   "full " + fmt(full.mean) + ", conditional " + fmt(cond.mean)),
      make_verdict("conditional mean value", "E(x | x <= 1) = (1 - 2/e)/(1 - 1/e) for Exp(1)",
                   std::fabs(cond.mean - oracle) <= 3.0 * cond.se, cond.mean, oracle, "3 se (" + fmt(cond.se) + ")"),
  };
}

std::vector<Verdict> check_symmetrization(SeedStream stream, std::size_t trials) {
  const Matrix B = build_shaper({ShaperKind::PartialIsometry, 5, 20, 1, std::nullopt}, stream.child(1));
  const auto law = dist::ScalarDistribution::laplace(1.0);
  std::vector<double> diff(trials);
  double lhs = 0.0;
  double rhs = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(stream.child(2).child(t));
    Matrix A(20, 5);
    dist::sample_into(law, rng, A.data());
    const double plain = linalg::spectral_norm(linalg::matmul(B, A)).value;
    const Matrix S = decomp::symmetrize(A, stream.child(3).child(t));
    const double signed_norm = linalg::spectral_norm(linalg::matmul(B, S)).value;
    diff[t] = plain - 2.0 * signed_norm;
    lhs += plain;
    rhs += 2.0 * signed_norm;
  }
  const auto d = mean_se(diff);
  return {make_verdict("symmetrization", "E||BA|| <= 2 E||B(eps o A)||", d.mean <= 3.0 * d.se, d.mean, 3.0 * d.se,
                       "paired 3 se", "lhs " + fmt(lhs / trials) + ", rhs " + fmt(rhs / trials))};
}

std::vector<Verdict> check_xi_envelope(SeedStream stream, std::size_t n, double C_trunc, std::size_t trials) {
  const double a = decomp::truncation_level(n, C_trunc);
  const double cut = std::sqrt(a);
  const std::size_t k = small_columns_k(n, 1.0);
  const Matrix B = build_shaper({ShaperKind::ReplicatedAverage, n, k * n, k, std::nullopt}, stream.child(1));
  std::vector<double> xi2(trials);
  Matrix G(B.cols(), n);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(stream.child(2).child(t));
    for (double& g : G.data()) {
      g = rng.normal();
      if (std::fabs(g) <= cut) g = 0.0;
    }
    const double xi = decomp::xi_statistic(B, G);
    xi2[t] = xi * xi;
  }
  const auto m = mean_se(xi2);
  const double literal = decomp::xi_squared_envelope(n, a);
  const double corrected = decomp::xi_squared_envelope(n, cut);
  const std::string cutoff = "g~ = g' 1(|g'| > sqrt(a)), a = " + fmt(a);
  return {
      make_verdict("xi^2 envelope", "E Xi^2 <= 2n^2 int_a^inf x^2 exp(-x^2/2) dx", m.mean <= literal + 3.0 * m.se,
                   m.mean, literal, "3 se (" + fmt(m.se) + ")", cutoff),
      make_verdict("xi^2 envelope sqrt(a)", "E Xi^2 <= 2n^2 int_sqrt(a)^inf x^2 exp(-x^2/2) dx",
                   m.mean <= corrected + 3.0 * m.se, m.mean, corrected, "3 se (" + fmt(m.se) + ")", cutoff),
  };
}

}  // namespace rmlab::harness
