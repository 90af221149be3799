#include <cmath>
#include <exception>
#include <limits>
#include <vector>

#include <omp.h>

#include "spectral_clt/kernels.hpp"
#include "spectral_clt/parallel.hpp"

namespace spectral_clt::kernels {

namespace {

// Keeps the exception thrown at the lowest index.
struct FirstFailure {
  std::size_t index = std::numeric_limits<std::size_t>::max();
  std::exception_ptr error;

  void record(std::size_t i, std::exception_ptr e) {
#pragma omp critical(spectral_clt_first_failure)
    {
      if (i < index) {
        index = i;
        error = std::move(e);
      }
    }
  }

  void rethrow_if_any() const {
    if (error) std::rethrow_exception(error);
  }
};

}  // namespace

NodeSums sum_nodes_openmp(std::size_t count, const NodeFunction& sample, int threads) {
  std::vector<NodeSample> values(count);
  FirstFailure failure;
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static) num_threads(resolve_threads(threads))
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    try {
      values[static_cast<std::size_t>(j)] = sample(static_cast<std::size_t>(j));
    } catch (...) {
      failure.record(static_cast<std::size_t>(j), std::current_exception());
    }
  }
  failure.rethrow_if_any();

  // Index-order reduction, identical to the serial kernel.
  NodeSums sums;
  for (const auto& s : values) {
    sums.first += s.first;
    sums.second += s.second;
    sums.magnitude += std::abs(s.first) + std::abs(s.second);
  }
  return sums;
}

void for_each_index_openmp(std::size_t count, const IndexFunction& body, int threads) {
  FirstFailure failure;
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_threads(threads))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      failure.record(static_cast<std::size_t>(i), std::current_exception());
    }
  }
  failure.rethrow_if_any();
}

}  // namespace spectral_clt::kernels
