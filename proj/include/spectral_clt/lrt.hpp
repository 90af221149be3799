#pragma once

#include <span>

#include "spectral_clt/spike_model.hpp"

namespace spectral_clt {

/// Result of the corrected likelihood-ratio sphericity test.
struct TestOutcome {
  double statistic = 0.0;  ///< tr S - log|S| - p
  double centered = 0.0;   ///< statistic - p G^{y_n}(g)
  double z_score = 0.0;
  double p_value = 0.0;
  bool reject = false;
  double alpha = 0.0;
  double y = 0.0;
};

struct CltParams {
  double mean;
  double variance;
};

/// sum(lambda) - sum(log lambda) - p. Throws SingularMatrix for a
/// non-positive eigenvalue.
double lrt_statistic(std::span<const double> eigenvalues);

/// G^{y_n}(g) = 1 - ((y_n - 1)/y_n) log(1 - y_n) for 0 < y_n < 1.
double null_centering_g(double y);

/// m(g) = -log(1 - y)/2 and v(g) = -2 log(1 - y) - 2y.
CltParams clt_params_g(double y);

TestOutcome run_test(std::span<const double> eigenvalues, int p, int n, double alpha);

/// s = sum n_i (a_i - 1 - log a_i), the mean shift of the centered statistic
/// under a spiked alternative.
double spike_shift(const SpikedModel& model);

/// 1 - Phi(Phi^{-1}(1 - alpha) - shift / sqrt(v(g))) with y = p/n.
double power_from_shift(double shift, double y, double alpha);

/// Asymptotic power of the test against `model`.
double power(const SpikedModel& model, double alpha);

/// The same function written for a single simple spike a.
double power_single_spike(double a, double y, double alpha);

}  // namespace spectral_clt
