#pragma once

#include <complex>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace spectral_clt {

using cplx = std::complex<double>;

/// An analytic test function f together with f' and a predicate describing
/// where f is analytic.
class SpectralFunction {
 public:
  using Map = std::function<cplx(cplx)>;
  using Domain = std::function<bool(cplx)>;

  SpectralFunction(std::string name, Map value, Map derivative, Domain domain,
                   std::string domain_description = "entire");

  cplx operator()(cplx z) const { return value_(z); }
  double operator()(double x) const { return value_(cplx(x, 0.0)).real(); }
  cplx derivative(cplx z) const { return derivative_(z); }
  bool in_domain(cplx z) const { return domain_(z); }

  const std::string& name() const noexcept { return name_; }
  const std::string& domain_description() const noexcept { return domain_description_; }

 private:
  std::string name_;
  Map value_;
  Map derivative_;
  Domain domain_;
  std::string domain_description_;
};

namespace functions {

SpectralFunction identity();
SpectralFunction square();
/// Principal-branch logarithm, analytic on Re z > 0 as far as this library
/// is concerned.
SpectralFunction log();
/// g(x) = x - log x - 1, the likelihood-ratio integrand.
SpectralFunction lrt_g();
/// sum_k coeffs[k] x^k.
SpectralFunction polynomial(std::vector<double> coeffs);
SpectralFunction linear_combination(double alpha, const SpectralFunction& f,
                                    double beta, const SpectralFunction& g);

/// Parses "x", "x2", "log", "lrt_g" or "poly:c0,c1,...". Throws InputError.
SpectralFunction parse(std::string_view spec);

}  // namespace functions

}  // namespace spectral_clt
