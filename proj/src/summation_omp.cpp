#include <omp.h>

#include <cstdlib>
#include <string>
#include <vector>

#include "heatpot/summation.hpp"

namespace heatpot {

int thread_count() {
  if (const char* env = std::getenv("HEATPOT_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return omp_get_max_threads();
}

namespace omp {

double ordered_sum(std::size_t count, const std::function<double(std::size_t)>& slice) {
  std::vector<double> partial(count, 0.0);
  const auto n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic) num_threads(thread_count()) if (!omp_in_parallel() && count > 1)
  for (long i = 0; i < n; ++i) partial[i] = slice(static_cast<std::size_t>(i));
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

void for_each(std::size_t count, const std::function<void(std::size_t)>& body) {
  const auto n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic) num_threads(thread_count()) if (!omp_in_parallel() && count > 1)
  for (long i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
}

}  // namespace omp

}  // namespace heatpot
