#include "spectral_clt/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spectral_clt/errors.hpp"

namespace spectral_clt {

std::vector<cplx> poly_multiply(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<cplx> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<cplx> poly_add(std::span<const cplx> a, std::span<const cplx> b) {
  std::vector<cplx> out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

std::vector<cplx> poly_scale(std::span<const cplx> a, cplx s) {
  std::vector<cplx> out(a.begin(), a.end());
  for (auto& c : out) c *= s;
  return out;
}

cplx poly_eval(std::span<const cplx> c, cplx x) {
  cplx acc{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

namespace {

// p(x) and p'(x) by Horner.
std::pair<cplx, cplx> eval_with_derivative(std::span<const cplx> c, cplx x) {
  cplx p{}, dp{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * x + p;
    p = p * x + *it;
  }
  return {p, dp};
}

}  // namespace

std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs) {
  std::size_t len = coeffs.size();
  while (len > 0 && coeffs[len - 1] == cplx{}) --len;
  if (len <= 1) return {};
  std::vector<cplx> c(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(len));

  // Roots at zero factor out exactly.
  std::vector<cplx> roots;
  std::size_t shift = 0;
  while (shift < c.size() - 1 && c[shift] == cplx{}) {
    roots.emplace_back(0.0, 0.0);
    ++shift;
  }
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(shift));
  const std::size_t degree = c.size() - 1;
  if (degree == 0) return roots;
  if (degree == 1) {
    roots.push_back(-c[0] / c[1]);
    return roots;
  }

  // Initial guesses on a circle whose radius is the geometric mean of the
  // root moduli, rotated off the real axis.
  const double radius = std::pow(std::abs(c[0] / c[degree]), 1.0 / static_cast<double>(degree));
  std::vector<cplx> z(degree);
  for (std::size_t k = 0; k < degree; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(degree) + 0.4;
    z[k] = std::polar(radius > 0.0 ? radius : 1.0, angle);
  }

  constexpr int kMaxIterations = 500;
  bool settled = false;
  for (int iter = 0; iter < kMaxIterations && !settled; ++iter) {
    settled = true;
    for (std::size_t i = 0; i < degree; ++i) {
      const auto [p, dp] = eval_with_derivative(c, z[i]);
      if (p == cplx{}) continue;
      const cplx ratio = p / dp;
      cplx repulsion{};
      for (std::size_t j = 0; j < degree; ++j)
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      const cplx step = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[i] -= step;
      if (std::abs(step) > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z[i])))
        settled = false;
    }
  }
  for (const auto& r : z) {
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
      throw SolverFailure("polynomial root iteration diverged");
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

}  // namespace spectral_clt
