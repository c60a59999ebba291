#include <doctest.h>

#include <cmath>
#include <numbers>

#include "heatpot/oracle.hpp"

using namespace heatpot;

namespace {

const double kPi = std::numbers::pi;

double cn_manufactured_error(int n) {
  const Domain q{Interval{0.0, 1.0}};
  const SourceField f{[](const SpaceVec& x, double t) {
                        return std::sin(kPi * x[0]) * (1.0 + kPi * kPi * t);
                      },
                      std::nullopt, false};
  const GridSolution sol = crank_nicolson_m1(f, [](const SpaceVec&, double) { return 0.0; }, q, n, n, 1.0);
  double err = 0.0;
  for (std::size_t l = 0; l < sol.ts.size(); ++l) {
    for (std::size_t i = 0; i < sol.xs.size(); ++i) {
      err = std::max(err, std::abs(sol.at(l, i) - sol.ts[l] * std::sin(kPi * sol.xs[i])));
    }
  }
  return err;
}

SourceField bump1(double c, double w) {
  return SourceField{[=](const SpaceVec& x, double t) {
                       const double d = (x[0] - c) / w;
                       return std::exp(-d * d) * (1.0 + std::sin(3.0 * t));
                     },
                     Box{SpaceVec(c - 4 * w), SpaceVec(c + 4 * w)}, false};
}

}  // namespace

TEST_CASE("Crank-Nicolson: zero problem and manufactured solution") {
  const Domain q{Interval{0.0, 1.0}};
  const GridSolution z = crank_nicolson_m1(SourceField::zero(),
                                           [](const SpaceVec&, double) { return 0.0; }, q, 16, 16, 1.0);
  for (double v : z.values) CHECK(v == 0.0);

  const double e50 = cn_manufactured_error(50), e100 = cn_manufactured_error(100),
               e200 = cn_manufactured_error(200);
  CHECK(e200 <= 1e-4);
  CHECK(std::log2(e50 / e100) >= 1.9);
  CHECK(std::log2(e100 / e200) >= 1.9);
  CHECK_THROWS_AS(crank_nicolson_m1(SourceField::zero(), [](const SpaceVec&, double) { return 0.0; },
                                    q, 8, 16, 1.0),
                  ConfigError);
}

TEST_CASE("ADI on a rectangle: manufactured solution and maximum principle") {
  const Domain q{Rectangle{0.0, 1.0, 0.0, 1.0}};
  const SourceField f{[](const SpaceVec& x, double t) {
                        return std::sin(kPi * x[0]) * std::sin(kPi * x[1]) * (1.0 + 2 * kPi * kPi * t);
                      },
                      std::nullopt, false};
  const GridSolution sol = crank_nicolson_m1(f, [](const SpaceVec&, double) { return 0.0; }, q, 64, 64, 0.5);
  double err = 0.0;
  const std::size_t l = sol.ts.size() - 1;
  for (std::size_t j = 0; j < sol.ys.size(); ++j) {
    for (std::size_t i = 0; i < sol.xs.size(); ++i) {
      err = std::max(err, std::abs(sol.at(l, i, j) - 0.5 * std::sin(kPi * sol.xs[i]) *
                                                          std::sin(kPi * sol.ys[j])));
    }
  }
  CHECK(err <= 2e-4);

  const SourceField g{[](const SpaceVec& x, double) { return x[0] * x[1]; }, std::nullopt, false};
  const GridSolution pos = crank_nicolson_m1(
      g, [](const SpaceVec& x, double t) { return t * (1.0 + x[0]); }, q, 32, 32, 1.0);
  for (double v : pos.values) CHECK(v >= -1e-12);
}

TEST_CASE("Crank-Nicolson maximum principle on an interval") {
  const Domain q{Interval{-1.0, 1.0}};
  const GridSolution sol = crank_nicolson_m1(
      bump1(0.2, 0.1), [](const SpaceVec& x, double t) { return x[0] > 0 ? t * t : 0.0; }, q, 64, 64,
      1.0);
  for (double v : sol.values) CHECK(v >= -1e-12);
}

TEST_CASE("finite-difference heat operator") {
  const auto zero = [](const SpaceVec&, double) { return 0.0; };
  CHECK(fd_heat_operator_residual(zero, 2, SpaceVec(0.1), 1.0, 1e-2, 1e-2) == 0.0);

  // Exact solutions of diamond^m u = 0 away from the source point. Nested
  // differences lose digits as h^{-2m}, so the step and bound depend on m.
  const double steps[] = {1e-3, 2e-3, 1e-2};
  const double bounds[] = {1e-5, 2e-5, 5e-3};
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 2; ++n) {
      const KernelOrder order(m, n);
      const SpaceVec x0 = n == 1 ? SpaceVec(-0.8) : SpaceVec(-0.8, 0.1);
      const SpaceVec x = n == 1 ? SpaceVec(0.3) : SpaceVec(0.3, -0.2);
      const auto u = [&](const SpaceVec& p, double t) { return iterated_kernel(order, p - x0, t); };
      const double t = 0.5;
      const double scale = iterated_kernel(order, x - x0, t) / std::pow(t, m);
      const double h = steps[m - 1];
      const double r = fd_heat_operator_residual(u, m, x, t, h, h);
      CAPTURE(m);
      CAPTURE(n);
      CHECK(std::abs(r) <= bounds[m - 1] * scale);
    }
  }

  // Second order in h for a smooth polynomial-exponential sampler.
  const auto u = [](const SpaceVec& p, double t) { return std::exp(-t) * std::cos(2.0 * p[0]) + t * t * p[0]; };
  const double exact = 3.0 * std::exp(-0.5) * std::cos(0.6) + 2 * 0.5 * 0.3;
  const double e1 = std::abs(fd_heat_operator_residual(u, 1, SpaceVec(0.3), 0.5, 0.02, 0.02) - exact);
  const double e2 = std::abs(fd_heat_operator_residual(u, 1, SpaceVec(0.3), 0.5, 0.01, 0.01) - exact);
  CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.05));

  CHECK_THROWS_AS(fd_heat_operator_residual(zero, 2, SpaceVec(0.0), 0.01, 0.1, 0.01), ArgumentError);
  CHECK_THROWS_AS(fd_heat_operator_residual(zero, 1, SpaceVec(0.95), 0.5, 0.1, 0.01,
                                            Box{SpaceVec(-1.0), SpaceVec(1.0)}),
                  ArgumentError);
}

TEST_CASE("finite-difference operator applied to a potential recovers f") {
  const Domain q{Interval{-1.0, 1.0}};
  const SourceField f = bump1(0.0, 0.15);
  const VolumeRule vrule = make_volume_rule(q, 16);
  const auto u = [&](const SpaceVec& x, double t) {
    return volume_potential({1, 1}, f, vrule, make_time_rule(t, 40), x, t);
  };
  for (double x : {0.0, 0.1}) {
    const double value = fd_heat_operator_residual(u, 1, SpaceVec(x), 0.4, 2e-3, 2e-3);
    CHECK(std::abs(value - f(SpaceVec(x), 0.4)) <= 1e-3 * f(SpaceVec(0.0), 0.4));
  }
}

TEST_CASE("cascade agrees with the direct potential") {
  const Domain q{Interval{-1.0, 1.0}};
  const SourceField f = bump1(0.1, 0.12);
  const VolumeRule vrule = make_volume_rule(q, 16);
  const std::vector<SpaceVec> xs{SpaceVec(0.0), SpaceVec(0.45), SpaceVec(-0.9), SpaceVec(1.0)};
  for (int m = 1; m <= 3; ++m) {
    const double t = 0.4;
    const std::vector<double> c = cascade_volume_potential(m, f, q, xs, t);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double d = volume_potential({m, 1}, f, vrule, make_time_rule(t, 32), xs[i], t);
      CAPTURE(m);
      CAPTURE(i);
      CHECK(std::abs(c[i] - d) <= 1e-6 * std::abs(d));
    }
  }
  CHECK(cascade_volume_potential(2, SourceField::zero(), q, SpaceVec(0.0), 0.4) == 0.0);
  CascadeOptions tight;
  tight.padding = 1.0;
  CHECK_THROWS_AS(cascade_volume_potential(2, f, q, SpaceVec(0.0), 0.4, tight), ConfigError);
}

TEST_CASE("cascade in two dimensions") {
  const Domain q{Rectangle{-1.0, 1.0, -1.0, 1.0}};
  const SourceField f{[](const SpaceVec& x, double) {
                        return std::exp(-((x[0] - 0.1) * (x[0] - 0.1) + x[1] * x[1]) / 0.04);
                      },
                      Box{SpaceVec(-0.7, -0.8), SpaceVec(0.9, 0.8)}, false};
  const VolumeRule vrule = make_volume_rule(q, 8);
  CascadeOptions opts;
  opts.modes = 128;
  opts.steps = 50;
  const double t = 0.1;
  const std::vector<SpaceVec> xs{SpaceVec(0.0, 0.0), SpaceVec(0.5, -0.3)};
  const std::vector<double> c = cascade_volume_potential(2, f, q, xs, t, opts);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double d = volume_potential({2, 2}, f, vrule, make_time_rule(t, 16), xs[i], t);
    CHECK(std::abs(c[i] - d) <= 1e-4 * std::abs(d));
  }
}
