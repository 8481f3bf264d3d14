#include "rmlab/random.hpp"

#include <cmath>

namespace rmlab {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SeedStream SeedStream::child(std::uint64_t tag) const noexcept {
  return {master_seed, mix64(mix64(stream_index) ^ mix64(tag + 0x632be59bd9b4e019ULL))};
}

namespace {

std::mt19937_64 seeded_engine(SeedStream s) {
  const auto lo = [](std::uint64_t x) { return static_cast<std::uint32_t>(x & 0xffffffffULL); };
  const auto hi = [](std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); };
  std::seed_seq seq{lo(s.master_seed), hi(s.master_seed), lo(s.stream_index), hi(s.stream_index)};
  return std::mt19937_64(seq);
}

constexpr double kTwoPowMinus53 = 1.0 / 9007199254740992.0;

}  // namespace

Rng::Rng(SeedStream stream) : engine_(seeded_engine(stream)) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * kTwoPowMinus53; }

double Rng::uniform_open_low() {
  return (static_cast<double>(engine_() >> 11) + 1.0) * kTwoPowMinus53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

double Rng::rademacher() { return (engine_() >> 63) != 0 ? 1.0 : -1.0; }

double Rng::exponential() { return -std::log(uniform_open_low()); }

}  // namespace rmlab
