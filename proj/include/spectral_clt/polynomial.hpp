#pragma once

#include <complex>
#include <span>
#include <vector>

namespace spectral_clt {

using cplx = std::complex<double>;

// Coefficients are stored by ascending power: c[0] + c[1] x + ...

std::vector<cplx> poly_multiply(std::span<const cplx> a, std::span<const cplx> b);
std::vector<cplx> poly_add(std::span<const cplx> a, std::span<const cplx> b);
std::vector<cplx> poly_scale(std::span<const cplx> a, cplx s);
cplx poly_eval(std::span<const cplx> c, cplx x);

/// All roots of the polynomial by simultaneous Aberth-Ehrlich iteration.
/// Leading zero coefficients are trimmed; a constant polynomial has no roots.
/// Throws SolverFailure if the iteration does not settle.
std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs);

}  // namespace spectral_clt
