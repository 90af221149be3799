#include <cmath>

#include "spectral_clt/kernels.hpp"

namespace spectral_clt {

namespace kernels {

NodeSums sum_nodes_serial(std::size_t count, const NodeFunction& sample) {
  NodeSums sums;
  for (std::size_t j = 0; j < count; ++j) {
    const NodeSample s = sample(j);
    sums.first += s.first;
    sums.second += s.second;
    sums.magnitude += std::abs(s.first) + std::abs(s.second);
  }
  return sums;
}

void for_each_index_serial(std::size_t count, const IndexFunction& body) {
  for (std::size_t i = 0; i < count; ++i) body(i);
}

}  // namespace kernels

NodeSums sum_nodes(std::size_t count, const NodeFunction& sample, Backend backend, int threads) {
  return backend == Backend::openmp ? kernels::sum_nodes_openmp(count, sample, threads)
                                    : kernels::sum_nodes_serial(count, sample);
}

void for_each_index(std::size_t count, const IndexFunction& body, Backend backend, int threads) {
  if (backend == Backend::openmp)
    kernels::for_each_index_openmp(count, body, threads);
  else
    kernels::for_each_index_serial(count, body);
}

}  // namespace spectral_clt
