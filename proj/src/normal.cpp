#include "spectral_clt/normal.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/erf.hpp>

#include "spectral_clt/errors.hpp"

namespace spectral_clt {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_sf(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double normal_quantile(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    std::ostringstream msg;
    msg << "normal_quantile requires 0 < q < 1, got " << q;
    throw DomainError(msg.str());
  }
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * q);
}

}  // namespace spectral_clt
