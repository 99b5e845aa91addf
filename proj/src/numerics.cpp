#include "coxsr/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "coxsr/model.hpp"

namespace coxsr {

NormalRule normal_trapezoid_rule(int points, double half_width) {
  if (points < 3 || half_width <= 0.0) {
    throw InvalidArgument("normal rule needs >= 3 points and a positive half width");
  }
  NormalRule rule;
  rule.nodes = Eigen::ArrayXd::LinSpaced(points, -half_width, half_width);
  const double h = 2.0 * half_width / (points - 1);
  rule.weights = (-0.5 * rule.nodes.square()).exp() * (h / std::sqrt(2.0 * std::numbers::pi));
  // The end points carry weight ~1e-18 and the half factor is negligible
  // there, but keep the rule a proper trapezoid.
  rule.weights(0) *= 0.5;
  rule.weights(points - 1) *= 0.5;
  return rule;
}

NormalRule normal_rule_for_sigma(double sigma) {
  const int blocks = std::max(1, static_cast<int>(std::ceil(sigma)));
  return normal_trapezoid_rule(401 + 400 * blocks);
}

Minimum golden_section_minimize(const std::function<double(double)>& f, double lower,
                                double upper, double tolerance) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  Minimum best;
  auto eval = [&](double x) {
    const double v = f(x);
    ++best.evaluations;
    if (best.evaluations == 1 || v < best.value || (v == best.value && x < best.x)) {
      best.x = x;
      best.value = v;
    }
    return v;
  };
  double a = lower;
  double b = upper;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while (b - a > tolerance) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
  }
  // Bracket end points are candidates too (minimum at a bound).
  eval(a);
  eval(b);
  return best;
}

}  // namespace coxsr
