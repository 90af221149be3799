#pragma once

// Data-parallel kernels. Each kernel has a serial reference and an OpenMP
// version; both produce bitwise identical results because the parallel
// versions only fan out independent work and reduce in index order.

#include <complex>
#include <cstddef>
#include <functional>

namespace spectral_clt {

using cplx = std::complex<double>;

enum class Backend { serial, openmp };

/// Two integrand values at one quadrature node.
struct NodeSample {
  cplx first;
  cplx second;
};

struct NodeSums {
  cplx first{};
  cplx second{};
  /// Sum of |first| + |second|, used as a cancellation-aware scale.
  double magnitude = 0.0;
};

using NodeFunction = std::function<NodeSample(std::size_t)>;
using IndexFunction = std::function<void(std::size_t)>;

namespace kernels {

NodeSums sum_nodes_serial(std::size_t count, const NodeFunction& sample);
/// `threads` <= 0 selects the configured default (see resolve_threads).
NodeSums sum_nodes_openmp(std::size_t count, const NodeFunction& sample, int threads = 0);

void for_each_index_serial(std::size_t count, const IndexFunction& body);
void for_each_index_openmp(std::size_t count, const IndexFunction& body, int threads = 0);

// If any index throws, the exception of the lowest failing index is
// rethrown after the loop, for both backends.

}  // namespace kernels

NodeSums sum_nodes(std::size_t count, const NodeFunction& sample, Backend backend, int threads = 0);
void for_each_index(std::size_t count, const IndexFunction& body, Backend backend, int threads = 0);

}  // namespace spectral_clt
