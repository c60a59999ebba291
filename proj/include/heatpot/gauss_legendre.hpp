#pragma once

#include <vector>

namespace heatpot {

/// Gauss-Legendre nodes (ascending) and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached for n <= 256; computed by Newton iteration on the Legendre recurrence.
const GaussRule& gauss_legendre(int n);

/// Gauss-Legendre rule mapped to [lo, hi], appended to the output vectors.
void append_gauss_panel(int n, double lo, double hi, std::vector<double>& nodes,
                        std::vector<double>& weights);

}  // namespace heatpot
