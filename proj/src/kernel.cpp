#include "heatpot/kernel.hpp"

#include <numbers>
#include <string>

namespace heatpot {

namespace {

// exp(-x) underflows to zero beyond this argument.
constexpr double kUnderflowExponent = 745.0;

void check_dim(const KernelOrder& order, const SpaceVec& r) {
  if (r.dim() != order.n()) {
    throw ConfigError("space vector of dimension " + std::to_string(r.dim()) +
                      " used with kernel dimension " + std::to_string(order.n()));
  }
}

}  // namespace

KernelOrder::KernelOrder(int m, int n) : m_(m), n_(n) {
  if (m < 1 || m > kMaxOrder) {
    throw ConfigError("kernel order m=" + std::to_string(m) + " outside [1, " +
                      std::to_string(kMaxOrder) + "]");
  }
  if (n != 1 && n != 2) {
    throw ConfigError("space dimension n=" + std::to_string(n) + " unsupported (1 or 2)");
  }
}

KernelOrder KernelOrder::lowered(int k) const {
  if (k < 0 || k >= m_) throw ArgumentError("cannot lower order " + std::to_string(m_) +
                                             " by " + std::to_string(k));
  return KernelOrder(m_ - k, n_);
}

double factorial_of_order(int m) {
  if (m < 1 || m > kMaxOrder) throw ConfigError("factorial requested for order out of range");
  unsigned long long f = 1;
  for (int i = 2; i < m; ++i) f *= static_cast<unsigned long long>(i);
  return static_cast<double>(f);
}

double iterated_kernel(const KernelOrder& order, const SpaceVec& r, double s) {
  check_dim(order, r);
  if (!(s > 0.0)) return 0.0;
  const double exponent = r.norm2() / (4.0 * s);
  if (exponent > kUnderflowExponent) return 0.0;
  const double spread = order.n() == 1 ? 2.0 * std::sqrt(std::numbers::pi * s)
                                       : 4.0 * std::numbers::pi * s;
  double power = 1.0;
  for (int i = 1; i < order.m(); ++i) power *= s;
  return power / factorial_of_order(order.m()) / spread * std::exp(-exponent);
}

SpaceVec kernel_gradient(const KernelOrder& order, const SpaceVec& r, double s) {
  if (!(s > 0.0)) throw DomainError("kernel gradient requires s > 0");
  return (-iterated_kernel(order, r, s) / (2.0 * s)) * r;
}

double kernel_normal_derivative(const KernelOrder& order, const SpaceVec& r, double s,
                                const SpaceVec& normal) {
  if (!(s > 0.0)) throw DomainError("kernel normal derivative requires s > 0");
  check_dim(order, normal);
  return dot(r, normal) / (2.0 * s) * iterated_kernel(order, r, s);
}

double adjoint_power(int k, const KernelOrder& order, const SpaceVec& r, double s) {
  if (k < 0) throw ArgumentError("adjoint power must be nonnegative");
  if (k >= order.m()) {
    check_dim(order, r);
    return 0.0;
  }
  return iterated_kernel(order.lowered(k), r, s);
}

}  // namespace heatpot
