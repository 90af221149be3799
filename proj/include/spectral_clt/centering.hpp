#pragma once

#include "spectral_clt/contour.hpp"
#include "spectral_clt/kernels.hpp"
#include "spectral_clt/spectral_function.hpp"
#include "spectral_clt/spike_model.hpp"

namespace spectral_clt {

struct QuadratureOptions {
  int max_nodes = 1 << 16;
  double rel_tol = 1e-10;
  Backend backend = Backend::openmp;
  int threads = 0;
};

struct ContourTerms {
  double term1 = 0.0;
  double term2 = 0.0;
  int nodes = 0;
  /// Largest imaginary part of the two integrals plus the last refinement step.
  double est_error = 0.0;
};

/// The two contour corrections of the centering expansion,
///
///   term1 = -1/(2 pi i p) oint f(z(m)) (M/(y m) - sum n_i a_i^2 m/(1+a_i m)^2) dm
///   term2 = +1/(2 pi i p) oint f'(z(m)) sum (1-a_i) n_i/((1+a_i m)(1+m))
///                               * (1/m - y m/(1+m)^2) dm
///
/// with z(m) = -1/m + y/(1+m), evaluated by the periodic trapezoidal rule on
/// the ellipse, doubling the node count until successive values agree to
/// `rel_tol`. Throws DomainError if f is not analytic at some image point and
/// QuadratureError without convergence by `max_nodes`.
ContourTerms contour_terms(const SpectralFunction& f, const SpikedModel& model,
                           const Contour& contour, const QuadratureOptions& options = {});

struct CenteringOptions {
  double margin = 0.5;
  QuadratureOptions quadrature{};
};

/// Decomposition of F^{y_n, H_n}(f).
struct CenteringResult {
  double term1 = 0.0;
  double term2 = 0.0;
  /// (1 - M/p) G^{y_n}(f).
  double base = 0.0;
  /// (1/p) sum over distant spikes of n_i f(phi(a_i)).
  double spike_sum = 0.0;
  double total = 0.0;
  int quadrature_nodes_used = 0;
  double est_error = 0.0;
  double margin_used = 0.0;
};

/// F^{y_n, H_n}(f) up to O(1/n^2). If f's domain rejects part of the contour
/// image the margin is halved until it fits, otherwise ContourError.
CenteringResult centering_value(const SpectralFunction& f, const SpikedModel& model,
                                const CenteringOptions& options = {});

/// F^{y_n,H_n}(x) = 1 + (1/p) sum n_i a_i - M/p.
double closed_form_mean(const SpikedModel& model);
/// F^{y_n,H_n}(log x); requires 0 < y_n < 1.
double closed_form_log(const SpikedModel& model);
/// F^{y_n,H_n}(x - log x - 1); requires 0 < y_n < 1.
double closed_form_lrt_g(const SpikedModel& model);

}  // namespace spectral_clt
