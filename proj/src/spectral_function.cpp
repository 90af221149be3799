#include "spectral_clt/spectral_function.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "spectral_clt/errors.hpp"

namespace spectral_clt {

SpectralFunction::SpectralFunction(std::string name, Map value, Map derivative, Domain domain,
                                   std::string domain_description)
    : name_(std::move(name)),
      value_(std::move(value)),
      derivative_(std::move(derivative)),
      domain_(std::move(domain)),
      domain_description_(std::move(domain_description)) {}

namespace functions {

namespace {

bool everywhere(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
bool right_half_plane(cplx z) { return z.real() > 0.0 && std::isfinite(z.imag()); }

}  // namespace

SpectralFunction identity() {
  return {"x", [](cplx z) { return z; }, [](cplx) { return cplx(1.0, 0.0); }, everywhere};
}

SpectralFunction square() {
  return {"x2", [](cplx z) { return z * z; }, [](cplx z) { return 2.0 * z; }, everywhere};
}

SpectralFunction log() {
  return {"log", [](cplx z) { return std::log(z); }, [](cplx z) { return 1.0 / z; },
          right_half_plane, "Re z > 0"};
}

SpectralFunction lrt_g() {
  return {"lrt_g", [](cplx z) { return z - std::log(z) - 1.0; },
          [](cplx z) { return 1.0 - 1.0 / z; }, right_half_plane, "Re z > 0"};
}

SpectralFunction polynomial(std::vector<double> coeffs) {
  std::string name = "poly:";
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (k) name += ',';
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, coeffs[k]);
    name.append(buf, end);
  }
  auto value = [coeffs](cplx z) {
    cplx acc{};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
  };
  auto derivative = [coeffs](cplx z) {
    cplx acc{};
    for (std::size_t k = coeffs.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * coeffs[k];
    return acc;
  };
  return {name, value, derivative, everywhere};
}

SpectralFunction linear_combination(double alpha, const SpectralFunction& f, double beta,
                                    const SpectralFunction& g) {
  return {"combination",
          [=](cplx z) { return alpha * f(z) + beta * g(z); },
          [=](cplx z) { return alpha * f.derivative(z) + beta * g.derivative(z); },
          [=](cplx z) { return f.in_domain(z) && g.in_domain(z); },
          f.domain_description() + " and " + g.domain_description()};
}

SpectralFunction parse(std::string_view spec) {
  if (spec == "x") return identity();
  if (spec == "x2") return square();
  if (spec == "log") return log();
  if (spec == "lrt_g" || spec == "g") return lrt_g();
  if (spec.starts_with("poly:")) {
    std::vector<double> coeffs;
    std::string_view rest = spec.substr(5);
    while (true) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size())
        throw InputError("bad polynomial coefficient '" + std::string(item) + "' in '" +
                         std::string(spec) + "'");
      coeffs.push_back(v);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return polynomial(std::move(coeffs));
  }
  throw InputError("unknown function '" + std::string(spec) +
                   "' (expected x, x2, log, lrt_g or poly:c0,c1,...)");
}

}  // namespace functions

}  // namespace spectral_clt
