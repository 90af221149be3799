#include "spectral_clt/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "spectral_clt/errors.hpp"

namespace spectral_clt {

cplx Contour::point(double theta) const {
  return center + cplx(horizontal_semi_axis * std::cos(theta), vertical_semi_axis * std::sin(theta));
}

cplx Contour::tangent(double theta) const {
  return {-horizontal_semi_axis * std::sin(theta), vertical_semi_axis * std::cos(theta)};
}

bool Contour::encloses(cplx m) const {
  const double u = (m.real() - center.real()) / horizontal_semi_axis;
  const double v = (m.imag() - center.imag()) / vertical_semi_axis;
  return u * u + v * v < 1.0;
}

Contour build_contour(const SpikedModel& model, double margin) {
  if (!(margin > 0.0)) throw ContourError("contour margin must be positive");
  const double y = model.aspect_ratio();
  const double r = std::sqrt(y);

  double lower;
  double upper = -1.0 / (1.0 + r);
  if (y < 1.0) {
    lower = -1.0 / (1.0 - r);
  } else {
    // Close spikes below one put their poles left of -1; they stay inside.
    lower = -1.0;
    for (const auto& s : model.spikes())
      if (!is_distant(s.value, y)) lower = std::min(lower, -1.0 / s.value);
  }

  std::vector<double> excluded{0.0};
  for (const auto& s : model.spikes())
    if (is_distant(s.value, y)) excluded.push_back(-1.0 / s.value);

  const double center = 0.5 * (lower + upper);
  const double half = 0.5 * (upper - lower);
  double nearest = std::numeric_limits<double>::infinity();
  for (double e : excluded) nearest = std::min(nearest, std::abs(e - center));
  if (!(nearest > half)) {
    std::ostringstream msg;
    msg << "an excluded pole lies inside the interval [" << lower << ", " << upper << "]";
    throw ContourError(msg.str());
  }
  const double semi = std::min(half * (1.0 + margin), half + 0.9 * (nearest - half));

  Contour c;
  c.center = cplx(center, 0.0);
  c.horizontal_semi_axis = semi;
  c.vertical_semi_axis = 0.5 * semi;
  c.orientation = Orientation::counterclockwise;
  c.nodes = 64;
  c.enclosed_lower = lower;
  c.enclosed_upper = upper;
  return c;
}

}  // namespace spectral_clt
