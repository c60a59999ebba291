#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "heatpot/summation.hpp"

namespace heatpot {

namespace serial {

double ordered_sum(std::size_t count, const std::function<double(std::size_t)>& slice) {
  double total = 0.0;
  for (std::size_t i = 0; i < count; ++i) total += slice(i);
  return total;
}

void for_each(std::size_t count, const std::function<void(std::size_t)>& body) {
  for (std::size_t i = 0; i < count; ++i) body(i);
}

}  // namespace serial

double ordered_sum(Backend backend, std::size_t count,
                   const std::function<double(std::size_t)>& slice) {
  return backend == Backend::serial ? serial::ordered_sum(count, slice)
                                    : omp::ordered_sum(count, slice);
}

void for_each(Backend backend, std::size_t count, const std::function<void(std::size_t)>& body) {
  if (backend == Backend::serial) {
    serial::for_each(count, body);
  } else {
    omp::for_each(count, body);
  }
}

}  // namespace heatpot
