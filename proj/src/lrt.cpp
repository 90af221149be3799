#include "spectral_clt/lrt.hpp"

#include <cmath>
#include <sstream>

#include "spectral_clt/errors.hpp"
#include "spectral_clt/normal.hpp"

namespace spectral_clt {

namespace {

void require_unit_interval(double v, const char* what) {
  if (!(v > 0.0 && v < 1.0)) {
    std::ostringstream msg;
    msg << what << " must lie in (0, 1), got " << v;
    throw DomainError(msg.str());
  }
}

}  // namespace

double lrt_statistic(std::span<const double> eigenvalues) {
  double trace = 0.0;
  double log_det = 0.0;
  for (double lambda : eigenvalues) {
    if (!(lambda > 0.0)) {
      std::ostringstream msg;
      msg << "sample covariance is singular (eigenvalue " << lambda << ")";
      throw SingularMatrix(msg.str());
    }
    trace += lambda;
    log_det += std::log(lambda);
  }
  return trace - log_det - static_cast<double>(eigenvalues.size());
}

double null_centering_g(double y) {
  require_unit_interval(y, "y_n");
  return 1.0 - (y - 1.0) / y * std::log1p(-y);
}

CltParams clt_params_g(double y) {
  require_unit_interval(y, "y");
  const double l = std::log1p(-y);
  return {-0.5 * l, -2.0 * l - 2.0 * y};
}

TestOutcome run_test(std::span<const double> eigenvalues, int p, int n, double alpha) {
  if (p < 1 || n < 1) throw DomainError("p and n must be positive");
  if (static_cast<int>(eigenvalues.size()) != p) {
    std::ostringstream msg;
    msg << "expected " << p << " eigenvalues, got " << eigenvalues.size();
    throw DomainError(msg.str());
  }
  if (p >= n) {
    std::ostringstream msg;
    msg << "the likelihood-ratio test needs p < n (p=" << p << ", n=" << n << ")";
    throw DomainError(msg.str());
  }
  require_unit_interval(alpha, "alpha");
  const double y = static_cast<double>(p) / n;
  const auto [mean, variance] = clt_params_g(y);
  const double sd = std::sqrt(variance);

  TestOutcome out;
  out.alpha = alpha;
  out.y = y;
  out.statistic = lrt_statistic(eigenvalues);
  out.centered = out.statistic - p * null_centering_g(y);
  out.z_score = (out.centered - mean) / sd;
  out.p_value = normal_sf(out.z_score);
  out.reject = out.centered > mean + normal_quantile(1.0 - alpha) * sd;
  return out;
}

double spike_shift(const SpikedModel& model) {
  double s = 0.0;
  for (const auto& spike : model.spikes())
    s += spike.multiplicity * (spike.value - 1.0 - std::log(spike.value));
  return s;
}

double power_from_shift(double shift, double y, double alpha) {
  require_unit_interval(alpha, "alpha");
  const double sd = std::sqrt(clt_params_g(y).variance);
  if (shift == 0.0) return alpha;
  // Phi^{-1}(1 - alpha) = -Phi^{-1}(alpha), avoiding the rounding of 1 - alpha
  return normal_sf(-normal_quantile(alpha) - shift / sd);
}

double power(const SpikedModel& model, double alpha) {
  return power_from_shift(spike_shift(model), model.aspect_ratio(), alpha);
}

double power_single_spike(double a, double y, double alpha) {
  if (!(a > 0.0)) throw DomainError("spike must be positive");
  return power_from_shift(a - 1.0 - std::log(a), y, alpha);
}

}  // namespace spectral_clt
