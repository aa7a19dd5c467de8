#include "satcts/rng.hpp"

#include <cmath>

#include "satcts/error.hpp"

namespace satcts {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}  // namespace

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Stream::Stream(const StreamKey& key) {
  std::uint64_t h = splitmix64_mix(key.seed + kGolden);
  h = splitmix64_mix(h ^ (key.domain * 0xd1b54a32d192ed03ULL));
  h = splitmix64_mix(h ^ (key.i * 0x8cb92ba72f3d8dd7ULL + 0x632be59bd9b4e019ULL));
  h = splitmix64_mix(h ^ (key.j * 0xa0761d6478bd642fULL + 0xe7037ed1a0b428dbULL));
  state_ = h;
}

Stream::result_type Stream::operator()() {
  state_ += kGolden;
  return splitmix64_mix(state_);
}

double Stream::uniform() {
  // (k + 0.5) / 2^53 never hits 0 or 1.
  const std::uint64_t k = (*this)() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double Stream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

double Stream::gamma(double shape) {
  if (!(shape > 0.0)) fail(ErrorKind::kInvalidArgument, "gamma shape must be positive");
  if (shape < 1.0) {
    // Boost: G(a) = G(a + 1) * U^(1/a).
    const double g = gamma(shape + 1.0);
    return g * std::pow(uniform(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Stream::beta(double a, double b) {
  if (a == 1.0 && b == 1.0) return uniform();
  const double x = gamma(a);
  const double y = gamma(b);
  return x / (x + y);
}

}  // namespace satcts
