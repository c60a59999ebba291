#include "heatpot/gauss_legendre.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>

#include "heatpot/errors.hpp"

namespace heatpot {

namespace {

constexpr int kCacheSize = 256;

GaussRule compute_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1 || n > kCacheSize) throw ArgumentError("Gauss-Legendre order out of range");
  static std::array<GaussRule, kCacheSize + 1> cache;
  static std::array<std::once_flag, kCacheSize + 1> flags;
  std::call_once(flags[n], [n] { cache[n] = compute_rule(n); });
  return cache[n];
}

void append_gauss_panel(int n, double lo, double hi, std::vector<double>& nodes,
                        std::vector<double>& weights) {
  const GaussRule& g = gauss_legendre(n);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (int i = 0; i < n; ++i) {
    nodes.push_back(mid + half * g.nodes[i]);
    weights.push_back(half * g.weights[i]);
  }
}

}  // namespace heatpot
