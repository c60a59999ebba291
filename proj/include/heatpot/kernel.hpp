#pragma once

// Iterated heat kernels eps_{m,n}(r, s) = s^{m-1}/(m-1)! (4 pi s)^{-n/2} exp(-|r|^2/(4s)),
// zero for s <= 0, and their spatial derivatives.

#include <array>
#include <cmath>
#include <cstddef>

#include "heatpot/errors.hpp"

namespace heatpot {

inline constexpr int kMaxOrder = 20;

/// Point or displacement in R^1 or R^2.
class SpaceVec {
 public:
  SpaceVec() = default;
  explicit SpaceVec(double x) : dim_(1), c_{x, 0.0} {}
  SpaceVec(double x, double y) : dim_(2), c_{x, y} {}

  static SpaceVec zero(int dim) { return dim == 1 ? SpaceVec(0.0) : SpaceVec(0.0, 0.0); }

  int dim() const { return dim_; }
  double operator[](std::size_t i) const { return c_[i]; }
  double& operator[](std::size_t i) { return c_[i]; }

  double norm2() const { return c_[0] * c_[0] + c_[1] * c_[1]; }
  double norm() const { return std::sqrt(norm2()); }

  friend SpaceVec operator+(SpaceVec a, const SpaceVec& b) {
    a.c_[0] += b.c_[0];
    a.c_[1] += b.c_[1];
    return a;
  }
  friend SpaceVec operator-(SpaceVec a, const SpaceVec& b) {
    a.c_[0] -= b.c_[0];
    a.c_[1] -= b.c_[1];
    return a;
  }
  friend SpaceVec operator-(SpaceVec a) {
    a.c_[0] = -a.c_[0];
    a.c_[1] = -a.c_[1];
    return a;
  }
  friend SpaceVec operator*(double k, SpaceVec a) {
    a.c_[0] *= k;
    a.c_[1] *= k;
    return a;
  }
  friend double dot(const SpaceVec& a, const SpaceVec& b) {
    return a.c_[0] * b.c_[0] + a.c_[1] * b.c_[1];
  }
  friend bool operator==(const SpaceVec&, const SpaceVec&) = default;

 private:
  int dim_ = 1;
  std::array<double, 2> c_{0.0, 0.0};
};

/// The pair (m, n): heat-operator iteration order and space dimension.
class KernelOrder {
 public:
  /// Throws ConfigError unless 1 <= m <= kMaxOrder and n in {1, 2}.
  KernelOrder(int m, int n);

  int m() const { return m_; }
  int n() const { return n_; }

  /// Same dimension, order m - k. Requires k < m.
  KernelOrder lowered(int k) const;

  friend bool operator==(const KernelOrder&, const KernelOrder&) = default;

 private:
  int m_;
  int n_;
};

/// (m-1)! for 1 <= m <= kMaxOrder.
double factorial_of_order(int m);

double iterated_kernel(const KernelOrder& order, const SpaceVec& r, double s);

/// grad_r eps = -r/(2s) eps. Throws DomainError for s <= 0.
SpaceVec kernel_gradient(const KernelOrder& order, const SpaceVec& r, double s);

/// Exterior normal derivative in the source variable xi, with r = x - xi:
/// d eps(x - xi, s)/d n_xi = (r . normal)/(2s) eps(r, s). Throws DomainError for s <= 0.
double kernel_normal_derivative(const KernelOrder& order, const SpaceVec& r, double s,
                                const SpaceVec& normal);

/// (adjoint heat operator)^k applied to eps_{m,n}: eps_{m-k,n} for k < m, zero otherwise.
double adjoint_power(int k, const KernelOrder& order, const SpaceVec& r, double s);

}  // namespace heatpot
