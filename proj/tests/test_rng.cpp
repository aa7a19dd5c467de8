#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "satcts/rng.hpp"

using namespace satcts;

namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

template <typename Draw>
Moments moments(int n, Draw draw) {
  double s = 0.0, ss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = draw();
    s += x;
    ss += x * x;
  }
  const double mean = s / n;
  return {mean, ss / n - mean * mean};
}

}  // namespace

TEST_CASE("streams are pure functions of their key") {
  Stream a(42, StreamDomain::kEnvironment, 7, 3);
  Stream b(42, StreamDomain::kEnvironment, 7, 3);
  for (int i = 0; i < 100; ++i) CHECK(a() == b());
  Stream c(42, StreamDomain::kEnvironment, 7, 4);
  Stream d(42, StreamDomain::kEnvironment, 8, 3);
  Stream e(43, StreamDomain::kEnvironment, 7, 3);
  Stream f(42, StreamDomain::kCts, 7, 3);
  const auto first = Stream(42, StreamDomain::kEnvironment, 7, 3)();
  CHECK(c() != first);
  CHECK(d() != first);
  CHECK(e() != first);
  CHECK(f() != first);
}

TEST_CASE("uniform draws stay in the open unit interval") {
  Stream s(1, StreamDomain::kTest, 0, 0);
  const auto m = moments(200000, [&] {
    const double u = s.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    return u;
  });
  // Mean 1/2, variance 1/12; 5-sigma bands.
  CHECK(std::abs(m.mean - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / 200000));
  CHECK(std::abs(m.var - 1.0 / 12.0) < 1e-3);
}

TEST_CASE("normal draws have unit variance") {
  Stream s(2, StreamDomain::kTest, 0, 0);
  const int n = 200000;
  const auto m = moments(n, [&] { return s.normal(); });
  CHECK(std::abs(m.mean) < 5.0 / std::sqrt(n));
  CHECK(std::abs(m.var - 1.0) < 5.0 * std::sqrt(2.0 / n));
}

TEST_CASE("gamma draws match shape moments") {
  for (double shape : {0.3, 1.0, 2.5, 40.0}) {
    Stream s(3, StreamDomain::kTest, static_cast<std::uint64_t>(shape * 10), 0);
    const int n = 200000;
    const auto m = moments(n, [&] { return s.gamma(shape); });
    CAPTURE(shape);
    CHECK(std::abs(m.mean - shape) < 5.0 * std::sqrt(shape / n));
    CHECK(std::abs(m.var - shape) / shape < 0.05);
  }
}

TEST_CASE("beta draws match mean and variance") {
  for (auto [a, b] : {std::pair{1.0, 1.0}, {2.0, 5.0}, {30.0, 4.0}, {1.0, 200.0}}) {
    Stream s(4, StreamDomain::kTest, static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    const int n = 100000;
    const double mean = a / (a + b);
    const double var = a * b / ((a + b) * (a + b) * (a + b + 1));
    const auto m = moments(n, [&] { return s.beta(a, b); });
    CAPTURE(a);
    CAPTURE(b);
    CHECK(std::abs(m.mean - mean) < 5.0 * std::sqrt(var / n));
    CHECK(std::abs(m.var - var) / var < 0.05);
  }
}

TEST_CASE("Beta(1,1) is the uniform draw") {
  Stream a(5, StreamDomain::kTest, 0, 0);
  Stream b(5, StreamDomain::kTest, 0, 0);
  for (int i = 0; i < 100; ++i) CHECK(a.beta(1.0, 1.0) == b.uniform());
}

TEST_CASE("invalid shapes are rejected") {
  Stream s(6, StreamDomain::kTest, 0, 0);
  CHECK_THROWS(s.gamma(0.0));
  CHECK_THROWS(s.beta(0.0, 1.0));
}
