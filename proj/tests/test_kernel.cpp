#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "heatpot/kernel.hpp"

using namespace heatpot;
using boost::math::quadrature::gauss_kronrod;

namespace {

double fd1(auto&& g, double x, double h) {
  return (-g(x + 2 * h) + 8 * g(x + h) - 8 * g(x - h) + g(x - 2 * h)) / (12 * h);
}

double fd2(auto&& g, double x, double h) {
  return (-g(x + 2 * h) + 16 * g(x + h) - 30 * g(x) + 16 * g(x - h) - g(x - 2 * h)) / (12 * h * h);
}

// (d/ds - Laplacian_r) applied to g(r, s) by 5-point central differences.
template <class G>
double fd_heat(G&& g, const SpaceVec& r, double s, double hs, double hr) {
  double value = fd1([&](double ss) { return g(r, ss); }, s, hs);
  for (int d = 0; d < r.dim(); ++d) {
    value -= fd2(
        [&](double c) {
          SpaceVec q = r;
          q[d] = c;
          return g(q, s);
        },
        r[d], hr);
  }
  return value;
}

SpaceVec sample_r(int n, double radius, double angle) {
  return n == 1 ? SpaceVec(radius * std::cos(angle))
                : SpaceVec(radius * std::cos(angle), radius * std::sin(angle));
}

}  // namespace

TEST_CASE("kernel order validation") {
  CHECK_NOTHROW(KernelOrder(1, 1));
  CHECK_NOTHROW(KernelOrder(20, 2));
  CHECK_THROWS_AS(KernelOrder(0, 1), ConfigError);
  CHECK_THROWS_AS(KernelOrder(21, 1), ConfigError);
  CHECK_THROWS_AS(KernelOrder(2, 3), ConfigError);
  CHECK(factorial_of_order(1) == 1.0);
  CHECK(factorial_of_order(5) == 24.0);
}

TEST_CASE("iterated kernel closed-form values") {
  CHECK(iterated_kernel({1, 1}, SpaceVec(0.0), 1.0 / (4.0 * std::numbers::pi)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(iterated_kernel({1, 1}, SpaceVec(2.0), 1.0) == doctest::Approx(0.1037769).epsilon(1e-6));
  CHECK(iterated_kernel({2, 1}, SpaceVec(0.0), 1.0) == doctest::Approx(0.2820948).epsilon(1e-6));
  for (int m = 1; m <= 4; ++m) {
    CHECK(iterated_kernel({m, 1}, SpaceVec(0.3), -0.5) == 0.0);
    CHECK(iterated_kernel({m, 2}, SpaceVec(0.3, 0.1), -0.5) == 0.0);
    CHECK(iterated_kernel({m, 2}, SpaceVec(0.3, 0.1), 0.0) == 0.0);
  }
  // Far beyond double underflow the kernel is exactly zero, never NaN.
  CHECK(iterated_kernel({3, 1}, SpaceVec(100.0), 1e-3) == 0.0);
  CHECK_THROWS_AS(iterated_kernel({1, 2}, SpaceVec(1.0), 1.0), ConfigError);
}

TEST_CASE("kernel gradient and normal derivative") {
  CHECK(kernel_gradient({1, 1}, SpaceVec(1.0), 1.0)[0] == doctest::Approx(-0.1098479).epsilon(1e-6));
  CHECK(kernel_gradient({2, 1}, SpaceVec(1.0), 1.0)[0] == doctest::Approx(-0.1098479).epsilon(1e-6));
  const SpaceVec g0 = kernel_gradient({1, 2}, SpaceVec(0.0, 0.0), 1.0);
  CHECK(g0[0] == 0.0);
  CHECK(g0[1] == 0.0);
  CHECK_THROWS_AS(kernel_gradient({1, 1}, SpaceVec(1.0), 0.0), DomainError);

  CHECK(kernel_normal_derivative({1, 1}, SpaceVec(1.0), 1.0, SpaceVec(-1.0)) ==
        doctest::Approx(-0.1098479).epsilon(1e-6));
  CHECK(kernel_normal_derivative({1, 1}, SpaceVec(1.0), 1.0, SpaceVec(1.0)) ==
        doctest::Approx(0.1098479).epsilon(1e-6));
  CHECK(kernel_normal_derivative({1, 2}, SpaceVec(0.5, 0.0), 0.25, SpaceVec(1.0, 0.0)) ==
        doctest::Approx(std::exp(-0.25) / std::numbers::pi).epsilon(1e-12));
  CHECK(std::exp(-0.25) / std::numbers::pi == doctest::Approx(0.2479000).epsilon(1e-6));
  CHECK_THROWS_AS(kernel_normal_derivative({1, 1}, SpaceVec(1.0), -1.0, SpaceVec(1.0)),
                  DomainError);

  // Normal derivative in xi is the negated x-gradient dotted with the normal.
  const SpaceVec r(0.4, -0.7);
  const SpaceVec n(0.6, 0.8);
  CHECK(kernel_normal_derivative({2, 2}, r, 0.3, n) ==
        doctest::Approx(-dot(kernel_gradient({2, 2}, r, 0.3), n)).epsilon(1e-14));
}

TEST_CASE("adjoint power index shift and annihilation") {
  CHECK(adjoint_power(1, {3, 1}, SpaceVec(0.5), 1.0) == iterated_kernel({2, 1}, SpaceVec(0.5), 1.0));
  CHECK(adjoint_power(3, {3, 1}, SpaceVec(0.5), 1.0) == 0.0);
  CHECK(adjoint_power(0, {2, 2}, SpaceVec(0.1, 0.2), 0.4) ==
        iterated_kernel({2, 2}, SpaceVec(0.1, 0.2), 0.4));
  CHECK_THROWS_AS(adjoint_power(-1, {3, 1}, SpaceVec(0.5), 1.0), ArgumentError);

  // Two nested applications of (d/ds - Laplacian) to eps_3 by finite differences.
  const KernelOrder order(3, 1);
  for (double r : {0.0, 0.5, 1.2}) {
    for (double s : {0.5, 1.0}) {
      auto inner = [&](const SpaceVec& rr, double ss) {
        return fd_heat([&](const SpaceVec& q, double sq) { return iterated_kernel(order, q, sq); },
                       rr, ss, 0.01 * ss, 0.01 * std::sqrt(ss));
      };
      const double nested = fd_heat(inner, SpaceVec(r), s, 0.02 * s, 0.02 * std::sqrt(s));
      const double expected = adjoint_power(2, order, SpaceVec(r), s);
      CHECK(std::abs(nested - expected) <= 1e-6 * std::abs(expected));
    }
  }
}

TEST_CASE("heat recurrence under 5-point finite differences") {
  int samples = 0;
  for (int m : {2, 3}) {
    for (int n : {1, 2}) {
      const KernelOrder order(m, n);
      const KernelOrder lower(m - 1, n);
      for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 4; ++j) {
          const double s = 0.1 + 1.9 * i / 4.0;
          const SpaceVec r = sample_r(n, 3.0 * std::sqrt(s) * j / 3.0, 0.7 + i);
          const double lhs = fd_heat(
              [&](const SpaceVec& q, double sq) { return iterated_kernel(order, q, sq); }, r, s,
              1e-2 * s, 1e-2 * std::sqrt(s));
          const double rhs = iterated_kernel(lower, r, s);
          CHECK(std::abs(lhs - rhs) <= 1e-6 * std::abs(rhs));
          ++samples;
        }
      }
    }
  }
  CHECK(samples >= 20);
}

TEST_CASE("kernel invariants: positivity, evenness, scaling") {
  for (int m = 1; m <= 5; ++m) {
    for (double s : {1e-3, 0.1, 2.0}) {
      const SpaceVec r1(0.37);
      const SpaceVec r2(0.37, -0.21);
      CHECK(iterated_kernel({m, 1}, r1, s) > 0.0);
      CHECK(iterated_kernel({m, 2}, r2, s) > 0.0);
      CHECK(iterated_kernel({m, 1}, r1, s) == iterated_kernel({m, 1}, -r1, s));
      CHECK(iterated_kernel({m, 2}, r2, s) == iterated_kernel({m, 2}, -r2, s));
    }
  }
  for (int n : {1, 2}) {
    const SpaceVec r = sample_r(n, 0.8, 0.3);
    for (double lambda : {0.1, 0.5, 3.0}) {
      CHECK(iterated_kernel({1, n}, lambda * r, lambda * lambda * 0.7) ==
            doctest::Approx(std::pow(lambda, -n) * iterated_kernel({1, n}, r, 0.7)).epsilon(1e-13));
    }
  }
}

TEST_CASE("normalization: integral over space is s^{m-1}/(m-1)!") {
  for (int m = 1; m <= 4; ++m) {
    for (double s : {0.01, 0.5, 3.0}) {
      const double expected = std::pow(s, m - 1) / factorial_of_order(m);
      const double cut = 12.0 * std::sqrt(s);
      const double one_d = gauss_kronrod<double, 61>::integrate(
          [&](double x) { return iterated_kernel({m, 1}, SpaceVec(x), s); }, -cut, cut, 15, 1e-12);
      const double two_d = gauss_kronrod<double, 61>::integrate(
          [&](double rho) {
            return 2.0 * std::numbers::pi * rho * iterated_kernel({m, 2}, SpaceVec(rho, 0.0), s);
          },
          0.0, cut, 15, 1e-12);
      CHECK(std::abs(one_d - expected) <= 1e-8 * expected);
      CHECK(std::abs(two_d - expected) <= 1e-8 * expected);
    }
  }
}

TEST_CASE("delta limit of the first-order kernel") {
  // Smooth bump supported in (-1, 1), integrated over Q = [-2, 2].
  auto f = [](double x) { return std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0; };
  const double x = 0.3;
  double previous = INFINITY;
  double last = 0.0;
  for (double s : {1e-2, 1e-3, 1e-4}) {
    const double cut = 12.0 * std::sqrt(s);
    const double lo = std::max(-1.0, x - cut);
    const double hi = std::min(1.0, x + cut);
    const double value = gauss_kronrod<double, 61>::integrate(
        [&](double xi) { return iterated_kernel({1, 1}, SpaceVec(x - xi), s) * f(xi); }, lo, hi, 15,
        1e-13);
    const double err = std::abs(value - f(x)) / f(x);
    CHECK(err < previous);
    previous = err;
    last = err;
  }
  CHECK(last <= 1e-3);
}
