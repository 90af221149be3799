#include "spectral_clt/stieltjes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "spectral_clt/errors.hpp"
#include "spectral_clt/polynomial.hpp"

namespace spectral_clt {

namespace {

void require_ratio(double y) {
  if (!(y > 0.0) || !std::isfinite(y)) {
    std::ostringstream msg;
    msg << "aspect ratio must be positive, got " << y;
    throw DomainError(msg.str());
  }
}

// Companion-transform coefficients of the spiked inverse map
//   z(m) = -1/m + base/(1+m) + sum_i weight_i/(1 + a_i m).
struct SpikedMap {
  double base;
  std::vector<double> a;
  std::vector<double> weight;

  explicit SpikedMap(const SpikedModel& model) {
    const double y = model.aspect_ratio();
    const double p = model.dimension();
    base = (p - model.total_multiplicity()) / p * y;
    for (const auto& s : model.spikes()) {
      a.push_back(s.value);
      weight.push_back(y / p * s.value * s.multiplicity);
    }
  }

  cplx value(cplx m) const {
    cplx z = -1.0 / m + base / (1.0 + m);
    for (std::size_t i = 0; i < a.size(); ++i) z += weight[i] / (1.0 + a[i] * m);
    return z;
  }

  cplx derivative(cplx m) const {
    cplx d = 1.0 / (m * m) - base / ((1.0 + m) * (1.0 + m));
    for (std::size_t i = 0; i < a.size(); ++i) {
      const cplx t = 1.0 + a[i] * m;
      d -= weight[i] * a[i] / (t * t);
    }
    return d;
  }

  // z D(m) - numerator, D(m) = m (1+m) prod_i (1 + a_i m).
  std::vector<cplx> polynomial(cplx z) const {
    const std::vector<cplx> one_plus_m{1.0, 1.0};
    const std::vector<cplx> m_only{0.0, 1.0};
    std::vector<cplx> all{1.0};
    for (double ai : a) {
      const std::vector<cplx> factor{1.0, ai};
      all = poly_multiply(all, factor);
    }
    const auto m_all = poly_multiply(m_only, all);
    const auto one_plus_m_all = poly_multiply(one_plus_m, all);
    auto poly = poly_scale(poly_multiply(m_only, one_plus_m_all), z);
    poly = poly_add(poly, one_plus_m_all);
    poly = poly_add(poly, poly_scale(m_all, -base));
    const auto m_one_plus_m = poly_multiply(m_only, one_plus_m);
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::vector<cplx> others{1.0};
      for (std::size_t j = 0; j < a.size(); ++j) {
        if (j == i) continue;
        const std::vector<cplx> factor{1.0, a[j]};
        others = poly_multiply(others, factor);
      }
      poly = poly_add(poly, poly_scale(poly_multiply(m_one_plus_m, others), -weight[i]));
    }
    return poly;
  }
};

template <typename Map>
cplx newton_polish(const Map& map, cplx m, cplx z) {
  double residual = std::abs(map.value(m) - z);
  for (int iter = 0; iter < 8 && residual > 0.0; ++iter) {
    const cplx d = map.derivative(m);
    if (d == cplx{}) break;
    const cplx candidate = m - (map.value(m) - z) / d;
    const double r = std::abs(map.value(candidate) - z);
    if (!(r < residual)) break;
    m = candidate;
    residual = r;
  }
  return m;
}

struct NullMap {
  double y;
  cplx value(cplx m) const { return -1.0 / m + y / (1.0 + m); }
  cplx derivative(cplx m) const { return 1.0 / (m * m) - y / ((1.0 + m) * (1.0 + m)); }
};

// Both roots of z m^2 + (z + 1 - y) m + 1 = 0, computed without cancellation.
std::pair<cplx, cplx> quadratic_roots(cplx z, double y) {
  const cplx b = z + 1.0 - y;
  const cplx sq = std::sqrt(b * b - 4.0 * z);
  const cplx q = (std::real(std::conj(b) * sq) >= 0.0) ? -0.5 * (b + sq) : -0.5 * (b - sq);
  return {q / z, 1.0 / q};
}

double perturbation(cplx z) { return 1e-9 * std::max(1.0, std::abs(z)); }

}  // namespace

MPSupport mp_support(double y) {
  require_ratio(y);
  const double r = std::sqrt(y);
  return {(1.0 - r) * (1.0 - r), (1.0 + r) * (1.0 + r)};
}

double mp_density(double x, double y) {
  const auto [a, b] = mp_support(y);
  if (!(x > a) || !(x < b)) return 0.0;
  return std::sqrt((b - x) * (x - a)) / (2.0 * std::numbers::pi * x * y);
}

double mp_atom_at_zero(double y) {
  require_ratio(y);
  return y > 1.0 ? 1.0 - 1.0 / y : 0.0;
}

cplx z_of_m(cplx m, double y) {
  if (m == cplx{} || m == cplx(-1.0, 0.0)) throw DomainError("z_of_m: m is a pole (0 or -1)");
  return NullMap{y}.value(m);
}

cplx z_of_m_spiked(cplx m, const SpikedModel& model) {
  if (m == cplx{} || m == cplx(-1.0, 0.0)) throw DomainError("z_of_m_spiked: m is a pole (0 or -1)");
  for (const auto& s : model.spikes()) {
    if (1.0 + s.value * m == cplx{}) throw DomainError("z_of_m_spiked: m is a spike pole -1/a");
  }
  return SpikedMap(model).value(m);
}

cplx solve_companion(cplx z, double y) {
  require_ratio(y);
  const NullMap map{y};
  if (z.imag() != 0.0) {
    const auto [r1, r2] = quadratic_roots(z, y);
    const bool upper = z.imag() > 0.0;
    const cplx pick = ((r1.imag() > 0.0) == upper) ? r1 : r2;
    return newton_polish(map, pick, z);
  }

  const double x = z.real();
  const auto [a, b] = mp_support(y);
  if (x > a && x < b) {
    std::ostringstream msg;
    msg << "z = " << x << " lies inside the support [" << a << ", " << b << "]";
    throw DomainError(msg.str());
  }
  if (x == 0.0) {
    if (y <= 1.0) throw DomainError("z = 0 is a pole of the companion transform for y <= 1");
    return 1.0 / (y - 1.0);
  }
  // Limit from the upper half-plane: the real root closest to the solution
  // just above the axis.
  const cplx above = solve_companion(cplx(x, perturbation(z)), y);
  const auto [r1, r2] = quadratic_roots(cplx(x, 0.0), y);
  const cplx pick = std::abs(r1 - above) <= std::abs(r2 - above) ? r1 : r2;
  return newton_polish(map, cplx(pick.real(), 0.0), z);
}

cplx solve_companion_spiked(cplx z, const SpikedModel& model) {
  if (model.is_null()) return solve_companion(z, model.aspect_ratio());

  const SpikedMap map(model);
  const double scale = std::max(1.0, std::abs(z));
  constexpr double kResidualTol = 1e-10;

  auto polished_roots = [&](cplx at) {
    auto roots = polynomial_roots(map.polynomial(at));
    for (auto& r : roots) r = newton_polish(map, r, at);
    return roots;
  };
  auto diagnostics = [&](const std::vector<cplx>& roots, cplx at) {
    std::ostringstream msg;
    msg << "no admissible companion root at z = " << at << "; candidates:";
    for (const auto& r : roots) msg << ' ' << r << " (residual " << std::abs(map.value(r) - at) << ")";
    return msg.str();
  };

  if (z.imag() != 0.0) {
    const auto roots = polished_roots(z);
    const bool upper = z.imag() > 0.0;
    const cplx* best = nullptr;
    double best_residual = std::numeric_limits<double>::infinity();
    for (const auto& r : roots) {
      if (r.imag() == 0.0 || (r.imag() > 0.0) != upper) continue;
      const double res = std::abs(map.value(r) - z);
      if (res < kResidualTol * scale && res < best_residual) {
        best = &r;
        best_residual = res;
      }
    }
    if (!best) throw SolverFailure(diagnostics(roots, z));
    return *best;
  }

  const double x = z.real();
  if (x == 0.0 && model.aspect_ratio() <= 1.0)
    throw DomainError("z = 0 is a pole of the companion transform for y <= 1");
  const cplx above = solve_companion_spiked(cplx(x, perturbation(z)), model);
  const auto roots = polished_roots(cplx(x, 0.0));
  const cplx* nearest = nullptr;
  for (const auto& r : roots) {
    if (!nearest || std::abs(r - above) < std::abs(*nearest - above)) nearest = &r;
  }
  if (!nearest) throw SolverFailure(diagnostics(roots, z));
  if (std::abs(nearest->imag()) > 1e-6 * std::max(1.0, std::abs(*nearest))) {
    std::ostringstream msg;
    msg << "z = " << x << " lies inside the spectral support (limit transform " << *nearest << ")";
    throw DomainError(msg.str());
  }
  const cplx m = newton_polish(map, cplx(nearest->real(), 0.0), z);
  if (std::abs(map.value(m) - z) > kResidualTol * scale) throw SolverFailure(diagnostics(roots, z));
  return m;
}

double mp_integral(const SpectralFunction& f, double y, double rel_tol) {
  const auto [a, b] = mp_support(y);
  const double width = b - a;
  for (double x : {a, 0.5 * (a + b), b}) {
    if (!f.in_domain(cplx(x, 0.0))) {
      std::ostringstream msg;
      msg << f.name() << " is not analytic at x = " << x << " in the MP support (requires "
          << f.domain_description() << ")";
      throw DomainError(msg.str());
    }
  }
  double atom = 0.0;
  if (y > 1.0) {
    if (!f.in_domain(cplx(0.0, 0.0)))
      throw DomainError(f.name() + " is not defined at the MP atom x = 0 (y > 1)");
    atom = mp_atom_at_zero(y) * f(0.0);
  }

  auto integrand = [&](double theta) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double x = a + width * s * s;
    if (x == 0.0) return f(0.0) * width * c * c / (std::numbers::pi * y);
    return f(x) * width * width * s * s * c * c / (std::numbers::pi * x * y);
  };
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      integrand, 0.0, std::numbers::pi / 2.0, 20, rel_tol, &error, &l1);
  if (!std::isfinite(value) || error > 100.0 * rel_tol * std::max(l1, 1e-300) + 1e-15) {
    std::ostringstream msg;
    msg << "MP quadrature of " << f.name() << " did not converge (error estimate " << error << ")";
    throw QuadratureError(msg.str());
  }
  return atom + value;
}

}  // namespace spectral_clt
