#pragma once

#include <complex>

#include "spectral_clt/spike_model.hpp"

namespace spectral_clt {

using cplx = std::complex<double>;

enum class Orientation { counterclockwise, clockwise };

/// Axis-aligned ellipse in the companion-transform plane, parametrized as
/// center + A cos(theta) + i B sin(theta).
struct Contour {
  cplx center;
  double horizontal_semi_axis;
  double vertical_semi_axis;
  Orientation orientation = Orientation::counterclockwise;
  /// Initial trapezoidal node count (power of two).
  int nodes = 64;
  /// Real interval the contour must enclose.
  double enclosed_lower;
  double enclosed_upper;

  cplx point(double theta) const;
  /// d point / d theta.
  cplx tangent(double theta) const;
  /// Strictly inside the ellipse.
  bool encloses(cplx m) const;
};

/// Builds the integration contour of the centering expansion.
///
/// The ellipse encloses -1, every close-spike pole -1/a and (for y_n < 1)
/// the whole interval [-1/(1 - sqrt y_n), -1/(1 + sqrt y_n)]; it excludes the
/// origin and every distant-spike pole, keeping at least 10% of the free gap
/// to the nearest excluded point. Throws ContourError when no such ellipse
/// exists.
Contour build_contour(const SpikedModel& model, double margin = 0.5);

}  // namespace spectral_clt
