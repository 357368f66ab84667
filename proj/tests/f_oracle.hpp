#pragma once

#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace testsupport {

// P(F(d1, d2) > f) by direct quadrature of the beta density:
// survival = ∫_0^x t^(a-1) (1-t)^(b-1) dt / B(a, b), a = d2/2, b = d1/2,
// x = d2 / (d2 + d1 f). The normaliser comes from lgamma.
inline double f_tail_quadrature(double f, double d1, double d2) {
  if (f <= 0) return 1.0;
  const double a = d2 / 2, b = d1 / 2;
  const double x = d2 / (d2 + d1 * f);
  const double log_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  // Log-space density in terms of t and 1 - t, both passed exactly.
  auto density = [&](double t, double one_minus) {
    if (t <= 0 || one_minus <= 0) return 0.0;
    return std::exp((a - 1) * std::log(t) + (b - 1) * std::log(one_minus) - log_beta);
  };
  static boost::math::quadrature::tanh_sinh<double> integrator(15);
  // Integrate whichever side is smaller so tiny tails keep their precision.
  if (x <= 0.5) return integrator.integrate([&](double t) { return density(t, 1 - t); }, 0.0, x, 1e-14);
  const double xc = d1 * f / (d2 + d1 * f);
  return 1.0 - integrator.integrate([&](double u) { return density(1 - u, u); }, 0.0, xc, 1e-14);
}

}  // namespace testsupport
