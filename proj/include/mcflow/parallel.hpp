#pragma once

#include <cstddef>
#include <vector>

namespace mcf {

/// Set the worker-thread count for all data-parallel kernels (OpenMP under the
/// hood). Results are bit-identical for any thread count: kernels only ever
/// write cell-local data and reductions are done serially in fixed order.
void set_worker_threads(int n);
int worker_threads();

/// Fixed-order pairwise summation. Deterministic across thread counts and
/// noticeably more accurate than a naive running sum on large fields.
double pairwise_sum(const double* data, std::size_t n);
double pairwise_sum(const std::vector<double>& v);

}  // namespace mcf
