#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "heatpot/greens.hpp"
#include "heatpot/oracle.hpp"

using namespace heatpot;
using boost::math::quadrature::gauss_kronrod;

namespace {

double eps1(double r, double s) { return iterated_kernel({1, 1}, SpaceVec(r), s); }

double ramp(double t, double amplitude, double rise) {
  return amplitude * -std::expm1(-(t / rise) * (t / rise));
}

}  // namespace

TEST_CASE("interval Green function: vanishing, symmetry, free-space limit") {
  const Interval iv{0.0, 1.0};
  for (double s : {1e-3, 0.05, 0.7, 3.0}) {
    for (double x : {0.1, 0.5, 0.93}) {
      CHECK(std::abs(interval_green(x, 0.0, s, iv)) <= 1e-12);
      CHECK(std::abs(interval_green(x, 1.0, s, iv)) <= 1e-12);
      for (double xi : {0.05, 0.4, 0.77}) {
        CHECK(interval_green(x, xi, s, iv) == doctest::Approx(interval_green(xi, x, s, iv)).epsilon(1e-14));
      }
    }
  }
  const double s = 1e-3;
  CHECK(std::abs(interval_green(0.5, 0.5, s, iv) / eps1(0.0, s) - 1.0) <= 1e-10);
}

TEST_CASE("interval Green function domination and conservation defect") {
  const Interval iv{-1.0, 1.0};
  for (int i = 1; i < 20; ++i) {
    for (int j = 1; j < 20; ++j) {
      const double x = -1.0 + 2.0 * i / 20.0, xi = -1.0 + 2.0 * j / 20.0;
      for (double s : {1e-3, 1e-2, 0.1, 0.5, 2.0}) {
        const double g = interval_green(x, xi, s, iv);
        CHECK(g >= 0.0);
        CHECK(g <= eps1(x - xi, s) * (1.0 + 1e-12));
      }
    }
  }
  double prev = 1.0 + 1e-12;
  for (double s : {0.01, 0.05, 0.2, 0.5, 1.0}) {
    const double mass = gauss_kronrod<double, 61>::integrate(
        [&](double xi) { return interval_green(0.3, xi, s, iv); }, -1.0, 1.0, 12, 1e-12);
    CHECK(mass <= prev);
    prev = mass;
  }
}

TEST_CASE("Green normal derivative: sign, decay and finite differences") {
  const Domain d{Interval{0.0, 1.0}};
  const Interval& iv = std::get<Interval>(d.shape());
  for (double x = 0.05; x < 1.0; x += 0.05) {
    for (double s : {1e-3, 0.02, 0.3}) {
      CHECK(green_normal_derivative(SpaceVec(x), SpaceVec(0.0), SpaceVec(-1.0), s, d) <= 0.0);
    }
  }
  CHECK(std::abs(green_normal_derivative(SpaceVec(0.9), SpaceVec(0.0), SpaceVec(-1.0), 1e-3, d)) <=
        1e-10);
  // Centered differences in xi across the endpoint, using the odd reflection
  // G(x, -h) = -G(x, h) that the image series obeys.
  for (double x : {0.2, 0.5}) {
    for (double s : {0.01, 0.1}) {
      const double h = 1e-5;
      const double fd = -(interval_green(x, h, s, iv) - -interval_green(x, h, s, iv)) / (2 * h);
      const double g = green_normal_derivative(SpaceVec(x), SpaceVec(0.0), SpaceVec(-1.0), s, d);
      CHECK(std::abs(fd - g) <= 1e-6 * std::abs(g));
      // Centered in xi about an interior point.
      const double c = (interval_green(x, 0.3 + h, s, iv) - interval_green(x, 0.3 - h, s, iv)) / (2 * h);
      CHECK(std::abs(c - interval_green_dxi(x, 0.3, s, iv)) <=
            1e-6 * std::abs(interval_green_dxi(x, 0.3, s, iv)));
    }
  }
  CHECK_THROWS_AS(green_normal_derivative(SpaceVec(0.5), SpaceVec(0.3), SpaceVec(-1.0), 0.1, d),
                  ArgumentError);
  CHECK_THROWS_AS(green_normal_derivative(SpaceVec(0.0, 0.0), SpaceVec(1.0, 0.0),
                                          SpaceVec(1.0, 0.0), 0.1, Domain{Disk{SpaceVec(0.0, 0.0), 1.0}}),
                  ConfigError);
}

TEST_CASE("truncation error when the term budget is too small") {
  GreenEvalParams p;
  p.max_terms = 1;
  CHECK_THROWS_AS(interval_green(0.5, 0.5, 10.0, Interval{0.0, 1.0}, p), TruncationError);
}

TEST_CASE("rectangle Green function") {
  const Rectangle rc{-1.0, 1.0, 0.0, 2.0};
  const SpaceVec x(0.2, 1.1), xi(-0.3, 0.7);
  CHECK(std::abs(rectangle_green(x, SpaceVec(-1.0, 0.7), 0.2, rc)) <= 1e-12);
  CHECK(std::abs(rectangle_green(x, SpaceVec(0.1, 2.0), 0.2, rc)) <= 1e-12);
  CHECK(rectangle_green(x, xi, 0.2, rc) == doctest::Approx(rectangle_green(xi, x, 0.2, rc)).epsilon(1e-14));
  const double s = 1e-3;
  const SpaceVec c(0.0, 1.0), c2(0.01, 1.02);
  const double free = iterated_kernel({1, 2}, c - c2, s);
  CHECK(std::abs(rectangle_green(c, c2, s, rc) / free - 1.0) <= 1e-8);

  const Domain d{rc};
  const double h = 1e-5;
  const double g = green_normal_derivative(x, SpaceVec(1.0, 0.6), SpaceVec(1.0, 0.0), 0.1, d);
  const double fd = (rectangle_green(x, SpaceVec(1.0, 0.6), 0.1, rc) -
                     rectangle_green(x, SpaceVec(1.0 - h, 0.6), 0.1, rc)) / h;
  CHECK(g <= 0.0);
  CHECK(std::abs(g - fd) <= 1e-4 * std::abs(g));
}

TEST_CASE("boundary term: zero data and linearity of solve_m1") {
  const Domain q{Interval{-1.0, 1.0}};
  const BoundaryRule brule = make_boundary_rule(q, 1);
  const VolumeRule vrule = make_volume_rule(q, 12);
  const TimeRule trule = make_time_rule(0.4, 16);
  const BoundaryDensity zero(2, trule.size());
  CHECK(poisson_boundary_term(zero, brule, trule, SpaceVec(0.3), 0.4) == 0.0);

  const SourceField f{[](const SpaceVec& x, double) { return std::exp(-x[0] * x[0] / 0.01); },
                      Box{SpaceVec(-0.4), SpaceVec(0.4)}, false};
  // Zero boundary data reproduces the potential exactly.
  CHECK(solve_m1(f, zero, vrule, brule, trule, SpaceVec(0.3), 0.4) ==
        volume_potential({1, 1}, f, vrule, trule, SpaceVec(0.3), 0.4));

  const BoundaryDensity p1 = BoundaryDensity::sample(brule, trule, [](std::size_t i, double t) {
    return (i + 1.0) * t;
  });
  const BoundaryDensity p2 = BoundaryDensity::sample(brule, trule, [](std::size_t, double t) {
    return t * t;
  });
  const BoundaryDensity mix = BoundaryDensity::sample(brule, trule, [](std::size_t i, double t) {
    return 2.0 * (i + 1.0) * t - 0.5 * t * t;
  });
  const SpaceVec x(-0.2);
  const double a = poisson_boundary_term(p1, brule, trule, x, 0.4);
  const double b = poisson_boundary_term(p2, brule, trule, x, 0.4);
  CHECK(poisson_boundary_term(mix, brule, trule, x, 0.4) ==
        doctest::Approx(2.0 * a - 0.5 * b).epsilon(1e-12));
  CHECK_THROWS_AS(poisson_boundary_term(p1, brule, trule, SpaceVec(1.0), 0.4), ArgumentError);
}

TEST_CASE("boundary term saturates at minus the boundary value") {
  // phi = c after a ramp: the Dirichlet problem with boundary value -c.
  const Domain q{Interval{-1.0, 1.0}};
  const BoundaryRule brule = make_boundary_rule(q, 1);
  const double c = 1.5, rise = 0.2, T = 3.0;
  const GridSolution cn = crank_nicolson_m1(
      SourceField::zero(), [&](const SpaceVec&, double t) { return -ramp(t, c, rise); }, q, 200, 1200, T);
  double last = 0.0;
  for (double t : {0.5, 1.0, 2.0, 3.0}) {
    const TimeRule trule = make_time_rule(t, 32);
    const BoundaryDensity phi =
        BoundaryDensity::sample(brule, trule, [&](std::size_t, double tau) { return ramp(tau, c, rise); });
    for (double x : {-0.5, 0.0, 0.5}) {
      const double p = poisson_boundary_term(phi, brule, trule, SpaceVec(x), t);
      CHECK(std::abs(p - cn.interpolate(cn.level_of(t), SpaceVec(x))) <= 1e-3 * c);
      if (x == 0.0) last = p;
    }
  }
  CHECK(std::abs(last + c) <= 2e-3 * c);
}

TEST_CASE("solution traces satisfy the inhomogeneous condition") {
  const Domain q{Interval{-1.0, 1.0}};
  const BoundaryRule brule = make_boundary_rule(q, 1);
  const VolumeRule vrule = make_volume_rule(q, 16);
  const SourceField f{[](const SpaceVec& x, double t) {
                        return std::exp(-x[0] * x[0] / 0.01) * std::cos(2.0 * t);
                      },
                      Box{SpaceVec(-0.4), SpaceVec(0.4)}, false};
  const double rise = 0.1;
  const auto phi = [&](std::size_t i, double t) { return (i == 0 ? 1.0 : -0.5) * ramp(t, 1.0, rise); };
  const auto rate = [&](std::size_t i, double t) {
    return (i == 0 ? 1.0 : -0.5) * 2.0 * t / (rise * rise) * std::exp(-(t / rise) * (t / rise));
  };
  for (double t : {0.1, 0.5}) {
    const CauchyTraces tr = solve_m1_traces(f, phi, rate, vrule, brule, make_time_rule(t, 32));
    for (const BoundaryNode& b : brule.nodes()) {
      CHECK(std::abs(bc_residual_inhomogeneous(tr, phi, b.point, t)) <= 2e-3);
    }
  }
}

TEST_CASE("boundary-term flux against one-sided differences") {
  const Domain q{Interval{0.0, 1.0}};
  const BoundaryRule brule = make_boundary_rule(q, 1);
  const double t = 0.3, rise = 0.1;
  const auto phi = [&](std::size_t i, double tau) { return (i == 0 ? 1.0 : 2.0) * ramp(tau, 1.0, rise); };
  const auto rate = [&](std::size_t i, double tau) {
    return (i == 0 ? 1.0 : 2.0) * 2.0 * tau / (rise * rise) * std::exp(-(tau / rise) * (tau / rise));
  };
  const TimeRule graded = make_graded_time_rule(t, 16, 12);
  const BoundaryDensity dens = BoundaryDensity::sample(brule, graded, phi);
  // Boundary value -phi, then a one-sided difference for -du/dx at x = 0.
  const double h = 1e-3;
  const double u0 = -phi(0, t);
  const double u1 = poisson_boundary_term(dens, brule, graded, SpaceVec(h), t);
  const double u2 = poisson_boundary_term(dens, brule, graded, SpaceVec(2 * h), t);
  const double fd = (3.0 * u0 - 4.0 * u1 + u2) / (2.0 * h);
  const double flux = poisson_boundary_flux(rate, brule, make_time_rule(t, 48), 0, t);
  CHECK(std::abs(flux - fd) <= 1e-3 * std::abs(flux));
}
