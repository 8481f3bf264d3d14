#include "rmlab/nets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "rmlab/error.hpp"
#include "rmlab/linalg.hpp"

namespace rmlab::nets {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ParameterError("epsilon must lie in (0, 1]");
}

}  // namespace

void uniform_sphere_point(Rng& rng, std::span<double> out) {
  double nrm = 0.0;
  do {
    for (double& x : out) x = rng.normal();
    nrm = linalg::euclidean_norm(out);
  } while (nrm == 0.0);
  for (double& x : out) x /= nrm;
}

EpsNet greedy_packing(std::size_t n, double epsilon, std::span<const double> candidates) {
  require_epsilon(epsilon);
  if (n == 0 || candidates.size() % n != 0) throw ShapeError("greedy_packing: bad candidate layout");
  EpsNet net{n, epsilon, {}};
  const double eps2 = epsilon * epsilon;
  const std::size_t count = candidates.size() / n;
  for (std::size_t c = 0; c < count; ++c) {
    const auto cand = candidates.subspan(c * n, n);
    bool far = true;
    // Newest points first: a rejected candidate is usually near a recent one.
    for (std::size_t k = net.size(); k-- > 0;) {
      if (squared_distance(cand, net.point(k)) < eps2) {
        far = false;
        break;
      }
    }
    if (far) net.points.insert(net.points.end(), cand.begin(), cand.end());
  }
  return net;
}

EpsNet build_net(std::size_t n, double epsilon, SeedStream stream, std::size_t candidate_count) {
  require_epsilon(epsilon);
  if (n == 0) throw ParameterError("build_net: dimension must be positive");
  if (n > kMaxNetDimension) {
    throw PreconditionError("build_net: dimension " + std::to_string(n) + " exceeds the cost guard of " +
                            std::to_string(kMaxNetDimension));
  }
  if (candidate_count < kMinCandidates) {
    throw PreconditionError("build_net: candidate_count must be at least 10^4");
  }
  Rng rng(stream);
  std::vector<double> candidates(candidate_count * n);
  for (std::size_t c = 0; c < candidate_count; ++c) {
    uniform_sphere_point(rng, std::span<double>(candidates).subspan(c * n, n));
  }
  return greedy_packing(n, epsilon, candidates);
}

double cardinality_bound(std::size_t n, double epsilon) {
  require_epsilon(epsilon);
  return 2.0 * static_cast<double>(n) * std::pow(1.0 + 2.0 / epsilon, static_cast<double>(n) - 1.0);
}

NormBracket net_norm_bounds(const Matrix& M, const EpsNet& net) {
  if (net.dimension != M.cols()) {
    throw ShapeError("net_norm_bounds: net dimension " + std::to_string(net.dimension) +
                     " does not match matrix columns " + std::to_string(M.cols()));
  }
  std::vector<double> image(M.rows());
  double best = 0.0;
  for (std::size_t k = 0; k < net.size(); ++k) {
    const auto x = net.point(k);
    for (std::size_t i = 0; i < M.rows(); ++i) {
      const auto r = M.row(i);
      double s = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) s += r[j] * x[j];
      image[i] = s;
    }
    best = std::max(best, linalg::euclidean_norm(image));
  }
  if (best == 0.0) return {0.0, 0.0};
  return {best, best / (1.0 - net.epsilon)};
}

CoveringReport covering_check(const EpsNet& net, std::size_t probe_count, SeedStream stream) {
  if (probe_count < kMinProbes) throw PreconditionError("covering_check: probe_count must be at least 10^3");
  Rng rng(stream);
  std::vector<double> probe(net.dimension);
  double worst = 0.0;
  for (std::size_t p = 0; p < probe_count; ++p) {
    uniform_sphere_point(rng, probe);
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < net.size(); ++k) nearest = std::min(nearest, squared_distance(probe, net.point(k)));
    worst = std::max(worst, std::sqrt(nearest));
  }
  return {worst < net.epsilon, worst};
}

double min_pairwise_distance(const EpsNet& net) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < net.size(); ++a) {
    for (std::size_t b = a + 1; b < net.size(); ++b) {
      best = std::min(best, squared_distance(net.point(a), net.point(b)));
    }
  }
  return std::sqrt(best);
}

void write_csv(std::ostream& os, const EpsNet& net) {
  char buf[64];
  for (std::size_t k = 0; k < net.size(); ++k) {
    const auto x = net.point(k);
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (j > 0) os << ',';
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x[j]);
      os.write(buf, end - buf);
    }
    os << '\n';
  }
}

}  // namespace rmlab::nets
