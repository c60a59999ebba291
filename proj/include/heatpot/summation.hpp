#pragma once

// Direct-summation kernels. Every evaluation in the library reduces to an
// ordered sum over independent slices (time nodes, probe points); the serial
// backend is the reference, the OpenMP backend computes the same slices in
// parallel and reduces them in ascending index order, so both are bitwise equal.

#include <cstddef>
#include <functional>


#include "heatpot/kernel.hpp"

namespace heatpot {

enum class Backend { serial, openmp };

/// Threads used by the OpenMP backend: HEATPOT_THREADS if set, else the
/// OpenMP default.
int thread_count();

namespace serial {
double ordered_sum(std::size_t count, const std::function<double(std::size_t)>& slice);
void for_each(std::size_t count, const std::function<void(std::size_t)>& body);
}  // namespace serial

namespace omp {
double ordered_sum(std::size_t count, const std::function<double(std::size_t)>& slice);
void for_each(std::size_t count, const std::function<void(std::size_t)>& body);
}  // namespace omp

double ordered_sum(Backend backend, std::size_t count,
                   const std::function<double(std::size_t)>& slice);
void for_each(Backend backend, std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace heatpot
