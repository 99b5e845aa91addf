// Small numerical building blocks: expectation under a standard normal and
// one-dimensional bracketed minimization.
#pragma once

#include <cmath>
#include <functional>

#include <Eigen/Core>

namespace coxsr {

/// Nodes and weights with sum_i weights[i] * f(nodes[i]) ~ E[f(Z)], Z ~ N(0, 1).
struct NormalRule {
  Eigen::ArrayXd nodes;
  Eigen::ArrayXd weights;
};

/// Trapezoid rule on [-half_width, half_width]. The integrand decays like a
/// Gaussian, so the rule converges geometrically in the point count.
NormalRule normal_trapezoid_rule(int points, double half_width = 9.0);

/// Rule resolving a Poisson factor of the lognormal exp(sigma Z):
/// 401 + 400 * max(1, ceil(sigma)) points.
NormalRule normal_rule_for_sigma(double sigma);

struct Minimum {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Golden-section search on [lower, upper] until the bracket is below
/// `tolerance`. Returns the best point evaluated.
Minimum golden_section_minimize(const std::function<double(double)>& f, double lower,
                                double upper, double tolerance);

}  // namespace coxsr
