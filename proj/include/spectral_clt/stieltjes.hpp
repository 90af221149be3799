#pragma once

#include <complex>

#include "spectral_clt/spectral_function.hpp"
#include "spectral_clt/spike_model.hpp"

namespace spectral_clt {

using cplx = std::complex<double>;

/// Support [a_y, b_y] of the continuous part of the Marcenko-Pastur law.
struct MPSupport {
  double lower;
  double upper;
};

MPSupport mp_support(double y);

/// Density of the continuous part of the MP law with ratio y. For y > 1 the
/// law also carries an atom of mass 1 - 1/y at zero (see mp_atom_at_zero).
double mp_density(double x, double y);

double mp_atom_at_zero(double y);

/// Inverse of the null companion Stieltjes transform: -1/m + y/(1+m).
cplx z_of_m(cplx m, double y);

/// Inverse companion transform under the spiked population law H_n.
cplx z_of_m_spiked(cplx m, const SpikedModel& model);

/// Companion Stieltjes transform of the MP law at z.
///
/// Solves z m^2 + (z + 1 - y) m + 1 = 0 and returns the root with
/// sign(Im m) = sign(Im z); for real z outside the support the returned root
/// is the limit from the upper half-plane. Throws DomainError for real z in
/// the interior of the support (and at z = 0 when y <= 1).
cplx solve_companion(cplx z, double y);

/// Companion Stieltjes transform of F^{y_n, H_n} at z, selected among the
/// roots of the cleared-denominator polynomial of degree k + 2.
/// Throws DomainError for real z inside the spectral support and
/// SolverFailure when no root passes the half-plane and residual filters.
cplx solve_companion_spiked(cplx z, const SpikedModel& model);

/// G^y(f) = (1 - 1/y)^+ f(0) + integral of f against the MP density, by
/// adaptive Gauss-Kronrod quadrature on x = a + (b - a) sin^2(theta).
/// Throws DomainError when f is not analytic on the support (including the
/// origin for y >= 1).
double mp_integral(const SpectralFunction& f, double y, double rel_tol = 1e-10);

}  // namespace spectral_clt
