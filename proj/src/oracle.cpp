#include "heatpot/oracle.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <string>

namespace heatpot {

double fd_heat_operator_residual(const SpaceTimeSampler& u, int m, const SpaceVec& x, double t,
                                 double h_x, double h_t, const std::optional<Box>& region) {
  if (m < 1) throw ArgumentError("finite-difference operator power must be >= 1");
  if (!(h_x > 0.0) || !(h_t > 0.0)) throw ArgumentError("finite-difference steps must be positive");
  if (!(t - m * h_t > 0.0)) throw ArgumentError("time stencil reaches t <= 0");
  const int dim = x.dim();

  // Offsets (time, x, y) in step units with their coefficients.
  using Offset = std::array<int, 3>;
  std::map<Offset, double> base;
  base[{1, 0, 0}] += 0.5 / h_t;
  base[{-1, 0, 0}] -= 0.5 / h_t;
  for (int d = 0; d < dim; ++d) {
    Offset plus{0, 0, 0}, minus{0, 0, 0};
    plus[1 + d] = 1;
    minus[1 + d] = -1;
    base[plus] -= 1.0 / (h_x * h_x);
    base[minus] -= 1.0 / (h_x * h_x);
    base[{0, 0, 0}] += 2.0 / (h_x * h_x);
  }
  std::map<Offset, double> stencil{{{0, 0, 0}, 1.0}};
  for (int p = 0; p < m; ++p) {
    std::map<Offset, double> next;
    for (const auto& [a, ca] : stencil) {
      for (const auto& [b, cb] : base) {
        next[{a[0] + b[0], a[1] + b[1], a[2] + b[2]}] += ca * cb;
      }
    }
    stencil = std::move(next);
  }

  double total = 0.0;
  for (const auto& [off, c] : stencil) {
    SpaceVec p = x;
    for (int d = 0; d < dim; ++d) p[d] += off[1 + d] * h_x;
    if (region && !region->contains(p)) {
      throw ArgumentError("finite-difference stencil leaves the sampler's region");
    }
    if (c != 0.0) total += c * u(p, t + off[0] * h_t);
  }
  return total;
}

namespace {

using cplx = std::complex<double>;

// (1 - e^{-z})/z and (1 - (1 + z) e^{-z})/z^2.
void phi_functions(double z, double& phi1, double& phi2) {
  if (z < 0.5) {
    double term1 = 1.0, term2 = 0.5;
    phi1 = 0.0;
    phi2 = 0.0;
    double power = 1.0, fact = 1.0;  // (-z)^k, (k+1)!
    for (int k = 0; k < 24; ++k) {
      term1 = power / fact;
      term2 = power * (k + 1) / (fact * (k + 2));
      phi1 += term1;
      phi2 += term2;
      power *= -z;
      fact *= (k + 2);
    }
    return;
  }
  const double e = std::exp(-z);
  phi1 = -std::expm1(-z) / z;
  phi2 = (1.0 - (1.0 + z) * e) / (z * z);
}

class FourierCascade {
 public:
  FourierCascade(const SourceField& f, const Domain& domain, double t, const CascadeOptions& opts)
      : f_(f), domain_(domain), dim_(domain.dim()), modes_(opts.modes) {
    if (modes_ < 16 || modes_ % 2 != 0) throw ConfigError("cascade needs an even mode count >= 16");
    const double needed = 8.0 * std::sqrt(t);
    const double pad = opts.padding > 0.0 ? opts.padding : needed;
    if (pad < needed) {
      throw ConfigError("cascade padding " + std::to_string(pad) + " is below 8 sqrt(t) = " +
                        std::to_string(needed));
    }
    const Box bbox = domain.bounding_box();
    for (int d = 0; d < dim_; ++d) {
      lo_[d] = bbox.lo[d] - pad;
      length_[d] = bbox.hi[d] - bbox.lo[d] + 2.0 * pad;
    }
    total_ = dim_ == 1 ? modes_ : modes_ * modes_;
    lambda_.resize(total_);
    for (std::size_t idx = 0; idx < total_; ++idx) {
      double l = 0.0;
      for (int d = 0; d < dim_; ++d) {
        const double w = 2.0 * std::numbers::pi * wave(idx, d) / length_[d];
        l += w * w;
      }
      lambda_[idx] = l;
    }
    buffer_ = fftw_alloc_complex(total_);
    plan_ = dim_ == 1 ? fftw_plan_dft_1d(modes_, buffer_, buffer_, FFTW_FORWARD, FFTW_ESTIMATE)
                      : fftw_plan_dft_2d(modes_, modes_, buffer_, buffer_, FFTW_FORWARD,
                                         FFTW_ESTIMATE);
    if (plan_ == nullptr) throw NumericalError("FFTW plan creation failed");
  }
  ~FourierCascade() {
    fftw_destroy_plan(plan_);
    fftw_free(buffer_);
  }
  FourierCascade(const FourierCascade&) = delete;
  FourierCascade& operator=(const FourierCascade&) = delete;

  // Fourier coefficients of w_m(., t) after `steps` exponential steps.
  std::vector<cplx> march(int m, double t, int steps) {
    const double dt = t / steps;
    std::vector<double> decay(total_), c_old(total_), c_new(total_);
    for (std::size_t i = 0; i < total_; ++i) {
      const double z = lambda_[i] * dt;
      double p1, p2;
      phi_functions(z, p1, p2);
      decay[i] = std::exp(-z);
      c_old[i] = dt * p2;
      c_new[i] = dt * (p1 - p2);
    }
    std::vector<std::vector<cplx>> w(m, std::vector<cplx>(total_, cplx(0.0)));
    std::vector<cplx> f_old = source(0.0);
    for (int n = 0; n < steps; ++n) {
      const std::vector<cplx> f_new = source(dt * (n + 1));
      for (std::size_t i = 0; i < total_; ++i) {
        // Stage j is driven by stage j-1 (f for j = 0), linear in time over the step.
        cplx a = f_old[i], b = f_new[i];
        for (int j = 0; j < m; ++j) {
          const cplx old = w[j][i];
          const cplx next = decay[i] * old + c_old[i] * a + c_new[i] * b;
          w[j][i] = next;
          a = old;
          b = next;
        }
      }
      f_old = f_new;
    }
    return w[m - 1];
  }

  double evaluate(const std::vector<cplx>& coeff, const SpaceVec& x) const {
    double total = 0.0;
    for (std::size_t idx = 0; idx < total_; ++idx) {
      double phase = 0.0;
      for (int d = 0; d < dim_; ++d) {
        phase += 2.0 * std::numbers::pi * wave(idx, d) * (x[d] - lo_[d]) / length_[d];
      }
      total += coeff[idx].real() * std::cos(phase) - coeff[idx].imag() * std::sin(phase);
    }
    return total;
  }

 private:
  // Signed frequency of flat index idx along axis d.
  int wave(std::size_t idx, int d) const {
    const int k = dim_ == 1 ? static_cast<int>(idx)
                            : static_cast<int>(d == 0 ? idx / modes_ : idx % modes_);
    return k < modes_ / 2 ? k : k - modes_;
  }

  // Coefficients c_k of f(., tau) restricted to Q: f = sum_k c_k e^{i k (x - lo)}.
  std::vector<cplx> source(double tau) {
    std::vector<cplx> out(total_, cplx(0.0));
    if (f_.identically_zero) return out;
    for (std::size_t idx = 0; idx < total_; ++idx) {
      SpaceVec p = SpaceVec::zero(dim_);
      if (dim_ == 1) {
        p[0] = lo_[0] + length_[0] * idx / modes_;
      } else {
        p[0] = lo_[0] + length_[0] * (idx / modes_) / modes_;
        p[1] = lo_[1] + length_[1] * (idx % modes_) / modes_;
      }
      double v = 0.0;
      if ((!f_.support || f_.support->contains(p)) && contains(domain_, p)) v = f_(p, tau);
      buffer_[idx][0] = v;
      buffer_[idx][1] = 0.0;
    }
    fftw_execute(plan_);
    const double norm = 1.0 / static_cast<double>(total_);
    for (std::size_t idx = 0; idx < total_; ++idx) {
      out[idx] = cplx(buffer_[idx][0], buffer_[idx][1]) * norm;
    }
    return out;
  }

  const SourceField& f_;
  const Domain& domain_;
  int dim_;
  int modes_;
  std::size_t total_ = 0;
  std::array<double, 2> lo_{0.0, 0.0};
  std::array<double, 2> length_{1.0, 1.0};
  std::vector<double> lambda_;
  fftw_complex* buffer_ = nullptr;
  fftw_plan plan_ = nullptr;
};

}  // namespace

std::vector<double> cascade_volume_potential(int m, const SourceField& f, const Domain& domain,
                                             const std::vector<SpaceVec>& xs, double t,
                                             const CascadeOptions& opts) {
  if (m < 1 || m > kMaxOrder) throw ConfigError("cascade order out of range");
  if (!(t > 0.0)) throw ArgumentError("cascade requires t > 0");
  if (opts.steps < 4) throw ConfigError("cascade needs at least 4 time steps");
  std::vector<double> out(xs.size(), 0.0);
  if (f.identically_zero) return out;
  FourierCascade cascade(f, domain, t, opts);
  const auto coarse = cascade.march(m, t, opts.steps);
  const auto fine = cascade.march(m, t, 2 * opts.steps);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].dim() != domain.dim()) throw ConfigError("cascade: point dimension mismatch");
    out[i] = (4.0 * cascade.evaluate(fine, xs[i]) - cascade.evaluate(coarse, xs[i])) / 3.0;
  }
  return out;
}

double cascade_volume_potential(int m, const SourceField& f, const Domain& domain,
                                const SpaceVec& x, double t, const CascadeOptions& opts) {
  return cascade_volume_potential(m, f, domain, std::vector<SpaceVec>{x}, t, opts)[0];
}

double GridSolution::interpolate(std::size_t level, const SpaceVec& x) const {
  auto locate = [](const std::vector<double>& grid, double v, std::size_t& i, double& frac) {
    const double h = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
    double pos = (v - grid.front()) / h;
    pos = std::clamp(pos, 0.0, static_cast<double>(grid.size() - 1));
    i = std::min(static_cast<std::size_t>(pos), grid.size() - 2);
    frac = pos - static_cast<double>(i);
  };
  std::size_t ix;
  double fx;
  locate(xs, x[0], ix, fx);
  if (dim == 1) return (1.0 - fx) * at(level, ix) + fx * at(level, ix + 1);
  std::size_t iy;
  double fy;
  locate(ys, x[1], iy, fy);
  return (1.0 - fx) * (1.0 - fy) * at(level, ix, iy) + fx * (1.0 - fy) * at(level, ix + 1, iy) +
         (1.0 - fx) * fy * at(level, ix, iy + 1) + fx * fy * at(level, ix + 1, iy + 1);
}

std::size_t GridSolution::level_of(double t) const {
  const double dt = ts.back() / static_cast<double>(ts.size() - 1);
  const double pos = std::round(t / dt);
  return static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(ts.size() - 1)));
}

namespace {

// Solves a tridiagonal system with constant off-diagonal `off` and diagonal
// `diag` in place (rhs becomes the solution).
void thomas(double diag, double off, std::vector<double>& rhs, std::vector<double>& scratch) {
  const std::size_t n = rhs.size();
  scratch.resize(n);
  double pivot = diag;
  if (pivot == 0.0) throw NumericalError("tridiagonal solve: zero pivot");
  scratch[0] = off / pivot;
  rhs[0] /= pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = diag - off * scratch[i - 1];
    if (pivot == 0.0 || !std::isfinite(pivot)) throw NumericalError("tridiagonal solve: bad pivot");
    scratch[i] = off / pivot;
    rhs[i] = (rhs[i] - off * rhs[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= scratch[i] * rhs[i + 1];
}

double source_value(const SourceField& f, const SpaceVec& p, double t) {
  if (f.identically_zero) return 0.0;
  if (f.support && !f.support->contains(p)) return 0.0;
  return f(p, t);
}

GridSolution crank_nicolson_interval(const SourceField& f, const DirichletData& g,
                                     const Interval& iv, int nx, int nt, double T) {
  GridSolution sol;
  sol.dim = 1;
  const double h = (iv.b - iv.a) / nx;
  const double dt = T / nt;
  for (int i = 0; i <= nx; ++i) sol.xs.push_back(iv.a + h * i);
  sol.xs.back() = iv.b;
  for (int n = 0; n <= nt; ++n) sol.ts.push_back(T * n / nt);
  sol.values.assign(static_cast<std::size_t>(nt + 1) * (nx + 1), 0.0);

  const double r = dt / (h * h);
  std::vector<double> rhs(nx - 1), scratch;
  for (int n = 0; n < nt; ++n) {
    const double t0 = sol.ts[n], t1 = sol.ts[n + 1];
    const double* u = &sol.values[static_cast<std::size_t>(n) * (nx + 1)];
    double* v = &sol.values[static_cast<std::size_t>(n + 1) * (nx + 1)];
    v[0] = g(SpaceVec(iv.a), t1);
    v[nx] = g(SpaceVec(iv.b), t1);
    for (int i = 1; i < nx; ++i) {
      const SpaceVec p(sol.xs[i]);
      rhs[i - 1] = u[i] + 0.5 * r * (u[i - 1] - 2.0 * u[i] + u[i + 1]) +
                   0.5 * dt * (source_value(f, p, t0) + source_value(f, p, t1));
    }
    rhs[0] += 0.5 * r * v[0];
    rhs[nx - 2] += 0.5 * r * v[nx];
    thomas(1.0 + r, -0.5 * r, rhs, scratch);
    for (int i = 1; i < nx; ++i) v[i] = rhs[i - 1];
  }
  return sol;
}

GridSolution adi_rectangle(const SourceField& f, const DirichletData& g, const Rectangle& rc,
                           int nx, int nt, double T) {
  GridSolution sol;
  sol.dim = 2;
  const int ny = nx;
  const double hx = (rc.bx - rc.ax) / nx, hy = (rc.by - rc.ay) / ny;
  const double dt = T / nt;
  for (int i = 0; i <= nx; ++i) sol.xs.push_back(rc.ax + hx * i);
  for (int j = 0; j <= ny; ++j) sol.ys.push_back(rc.ay + hy * j);
  sol.xs.back() = rc.bx;
  sol.ys.back() = rc.by;
  for (int n = 0; n <= nt; ++n) sol.ts.push_back(T * n / nt);
  const std::size_t plane = static_cast<std::size_t>(nx + 1) * (ny + 1);
  sol.values.assign(static_cast<std::size_t>(nt + 1) * plane, 0.0);

  const double rx = dt / (hx * hx), ry = dt / (hy * hy);
  auto id = [&](int i, int j) { return static_cast<std::size_t>(j) * (nx + 1) + i; };
  std::vector<double> half(plane), rhs, scratch, gn(plane), gn1(plane);
  auto boundary = [&](double t, std::vector<double>& out) {
    for (int j = 0; j <= ny; ++j) {
      for (int i = 0; i <= nx; ++i) {
        if (i == 0 || j == 0 || i == nx || j == ny) out[id(i, j)] = g(SpaceVec(sol.xs[i], sol.ys[j]), t);
      }
    }
  };
  for (int n = 0; n < nt; ++n) {
    const double t0 = sol.ts[n], t1 = sol.ts[n + 1], tm = 0.5 * (t0 + t1);
    const double* u = &sol.values[n * plane];
    double* v = &sol.values[(n + 1) * plane];
    boundary(t0, gn);
    boundary(t1, gn1);
    for (std::size_t k = 0; k < plane; ++k) v[k] = gn1[k];

    // Intermediate values on the x-boundaries.
    for (int j = 1; j < ny; ++j) {
      for (int i : {0, nx}) {
        const double dyy1 = gn1[id(i, j - 1)] - 2.0 * gn1[id(i, j)] + gn1[id(i, j + 1)];
        const double dyy0 = gn[id(i, j - 1)] - 2.0 * gn[id(i, j)] + gn[id(i, j + 1)];
        half[id(i, j)] = 0.5 * (gn1[id(i, j)] - 0.5 * ry * dyy1) + 0.5 * (gn[id(i, j)] + 0.5 * ry * dyy0);
      }
    }
    // x sweep
    rhs.resize(nx - 1);
    for (int j = 1; j < ny; ++j) {
      for (int i = 1; i < nx; ++i) {
        const double dyy = u[id(i, j - 1)] - 2.0 * u[id(i, j)] + u[id(i, j + 1)];
        rhs[i - 1] = u[id(i, j)] + 0.5 * ry * dyy +
                     0.5 * dt * source_value(f, SpaceVec(sol.xs[i], sol.ys[j]), tm);
      }
      rhs[0] += 0.5 * rx * half[id(0, j)];
      rhs[nx - 2] += 0.5 * rx * half[id(nx, j)];
      thomas(1.0 + rx, -0.5 * rx, rhs, scratch);
      for (int i = 1; i < nx; ++i) half[id(i, j)] = rhs[i - 1];
    }
    // y sweep
    rhs.resize(ny - 1);
    for (int i = 1; i < nx; ++i) {
      for (int j = 1; j < ny; ++j) {
        const double dxx = half[id(i - 1, j)] - 2.0 * half[id(i, j)] + half[id(i + 1, j)];
        rhs[j - 1] = half[id(i, j)] + 0.5 * rx * dxx +
                     0.5 * dt * source_value(f, SpaceVec(sol.xs[i], sol.ys[j]), tm);
      }
      rhs[0] += 0.5 * ry * v[id(i, 0)];
      rhs[ny - 2] += 0.5 * ry * v[id(i, ny)];
      thomas(1.0 + ry, -0.5 * ry, rhs, scratch);
      for (int j = 1; j < ny; ++j) v[id(i, j)] = rhs[j - 1];
    }
  }
  return sol;
}

}  // namespace

GridSolution crank_nicolson_m1(const SourceField& f, const DirichletData& g,
                               const Domain& domain, int nx, int nt, double T) {
  if (nx < 16 || nt < 16) throw ConfigError("Crank-Nicolson grid needs nx, nt >= 16");
  if (!(T > 0.0)) throw ConfigError("Crank-Nicolson horizon must be positive");
  GridSolution sol;
  if (domain.is_interval()) {
    sol = crank_nicolson_interval(f, g, std::get<Interval>(domain.shape()), nx, nt, T);
  } else if (domain.is_rectangle()) {
    sol = adi_rectangle(f, g, std::get<Rectangle>(domain.shape()), nx, nt, T);
  } else {
    throw ConfigError("Crank-Nicolson oracle supports Interval and Rectangle only");
  }
  for (double v : sol.values) {
    if (!std::isfinite(v)) throw NumericalError("Crank-Nicolson produced a non-finite value");
  }
  return sol;
}

}  // namespace heatpot
