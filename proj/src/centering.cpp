#include "spectral_clt/centering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spectral_clt/errors.hpp"
#include "spectral_clt/stieltjes.hpp"

namespace spectral_clt {

namespace {

void require_lrt_ratio(double y, const char* what) {
  if (!(y > 0.0 && y < 1.0)) {
    std::ostringstream msg;
    msg << what << " requires 0 < y_n < 1, got y_n = " << y;
    throw DomainError(msg.str());
  }
}

}  // namespace

ContourTerms contour_terms(const SpectralFunction& f, const SpikedModel& model,
                           const Contour& contour, const QuadratureOptions& options) {
  if (model.is_null()) return {};

  const double y = model.aspect_ratio();
  const double p = model.dimension();
  const double total = model.total_multiplicity();
  const auto spikes = model.spikes();
  const double sign = contour.orientation == Orientation::counterclockwise ? 1.0 : -1.0;

  auto sample_at = [&](double theta) -> NodeSample {
    const cplx m = contour.point(theta);
    const cplx dm = contour.tangent(theta);
    const cplx one_plus_m = 1.0 + m;
    const cplx z = -1.0 / m + y / one_plus_m;
    if (!f.in_domain(z)) {
      std::ostringstream msg;
      msg << f.name() << " is not analytic at z(m) = " << z << " (m = " << m << ", requires "
          << f.domain_description() << ")";
      throw DomainError(msg.str());
    }
    cplx w1 = total / (y * m);
    cplx s2{};
    for (const auto& s : spikes) {
      const cplx t = 1.0 + s.value * m;
      w1 -= s.multiplicity * s.value * s.value * m / (t * t);
      s2 += (1.0 - s.value) * s.multiplicity / (t * one_plus_m);
    }
    const cplx w2 = s2 * (1.0 / m - y * m / (one_plus_m * one_plus_m));
    return {f(z) * w1 * dm, f.derivative(z) * w2 * dm};
  };

  std::size_t nodes = std::max(4, contour.nodes);
  // trapezoid: oint h dm = (2 pi / N) sum h(m_j) m'(theta_j); prefactor 1/(2 pi i p)
  auto terms_of = [&](const NodeSums& s, std::size_t n) {
    const cplx scale = 1.0 / (cplx(0.0, 1.0) * p * static_cast<double>(n));
    return std::pair<cplx, cplx>{-sign * s.first * scale, sign * s.second * scale};
  };

  NodeSums sums = sum_nodes(
      nodes, [&](std::size_t j) { return sample_at(2.0 * std::numbers::pi * j / nodes); },
      options.backend, options.threads);
  auto current = terms_of(sums, nodes);

  while (true) {
    const std::size_t half_step = nodes;
    const NodeSums odd = sum_nodes(
        half_step,
        [&](std::size_t j) { return sample_at(std::numbers::pi * (2.0 * j + 1.0) / half_step); },
        options.backend, options.threads);
    sums.first += odd.first;
    sums.second += odd.second;
    sums.magnitude += odd.magnitude;
    nodes *= 2;
    const auto refined = terms_of(sums, nodes);

    const double floor = 1e-4 * sums.magnitude / (p * static_cast<double>(nodes));
    const double d1 = std::abs(refined.first - current.first);
    const double d2 = std::abs(refined.second - current.second);
    const bool converged = d1 <= options.rel_tol * std::max(std::abs(refined.first), floor) &&
                           d2 <= options.rel_tol * std::max(std::abs(refined.second), floor);
    current = refined;
    if (converged) {
      ContourTerms out;
      out.term1 = current.first.real();
      out.term2 = current.second.real();
      out.nodes = static_cast<int>(nodes);
      out.est_error = std::max(std::abs(current.first.imag()), std::abs(current.second.imag())) +
                      std::max(d1, d2);
      return out;
    }
    if (nodes >= static_cast<std::size_t>(options.max_nodes)) {
      std::ostringstream msg;
      msg << "contour quadrature for " << f.name() << " did not converge with " << nodes
          << " nodes (last change " << std::max(d1, d2) << ")";
      throw QuadratureError(msg.str());
    }
  }
}

CenteringResult centering_value(const SpectralFunction& f, const SpikedModel& model,
                                const CenteringOptions& options) {
  const double y = model.aspect_ratio();
  const double p = model.dimension();
  const auto classes = classify_spikes(model);

  CenteringResult result;
  double spike_sum = 0.0;
  for (const auto& s : classes.distant) {
    const double location = phi(s.value, y);
    if (!f.in_domain(cplx(location, 0.0))) {
      std::ostringstream msg;
      msg << f.name() << " is not analytic at phi(" << s.value << ") = " << location;
      throw DomainError(msg.str());
    }
    spike_sum += s.multiplicity * f(location);
  }
  result.spike_sum = spike_sum / p;
  result.base = (1.0 - model.total_multiplicity() / p) * mp_integral(f, y);

  double margin = options.margin;
  constexpr int kMaxShrinks = 40;
  for (int attempt = 0;; ++attempt) {
    const Contour contour = build_contour(model, margin);
    try {
      const ContourTerms terms = contour_terms(f, model, contour, options.quadrature);
      result.term1 = terms.term1;
      result.term2 = terms.term2;
      result.quadrature_nodes_used = terms.nodes;
      result.est_error = terms.est_error;
      result.margin_used = margin;
      break;
    } catch (const DomainError& e) {
      if (attempt == kMaxShrinks)
        throw ContourError(std::string("no admissible contour: ") + e.what());
      margin *= 0.5;
    }
  }
  result.total = result.term1 + result.term2 + result.base + result.spike_sum;
  return result;
}

double closed_form_mean(const SpikedModel& model) {
  const double p = model.dimension();
  double sum = 0.0;
  for (const auto& s : model.spikes()) sum += s.multiplicity * s.value;
  return 1.0 + sum / p - model.total_multiplicity() / p;
}

double closed_form_log(const SpikedModel& model) {
  const double y = model.aspect_ratio();
  require_lrt_ratio(y, "closed_form_log");
  double sum = 0.0;
  for (const auto& s : model.spikes()) sum += s.multiplicity * std::log(s.value);
  return sum / model.dimension() - 1.0 + (1.0 - 1.0 / y) * std::log1p(-y);
}

double closed_form_lrt_g(const SpikedModel& model) {
  require_lrt_ratio(model.aspect_ratio(), "closed_form_lrt_g");
  return closed_form_mean(model) - closed_form_log(model) - 1.0;
}

}  // namespace spectral_clt
