// Doubly stochastic Poisson rate model with a periodic intra-day pattern.
//
//   r(t) = r0 * exp(W(t) + a_s * cos(2 pi f_s t))
//
// W is stationary zero-mean Gaussian noise with rms sigma and
// autocorrelation exp(-|s| / tau_c).
#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace coxsr {

/// Raised when a value violates a documented domain invariant.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kDefaultSessionLength = 23400.0;
inline constexpr double kDefaultSeriesTolerance = 1e-12;
inline constexpr double kSrThreshold = 0.25;

/// The five parameters of the doubly stochastic process.
struct ModelParams {
  double r0 = 1.0;                          ///< equilibrium rate, events/s
  double a_s = 0.0;                         ///< signal amplitude
  double f_s = 1.0 / kDefaultSessionLength; ///< signal frequency, Hz
  double sigma = 0.0;                       ///< noise rms
  double tau_c = 1.0;                       ///< noise correlation time, s

  /// Noise corner frequency 1 / (2 pi tau_c).
  double corner_frequency() const { return 1.0 / (2.0 * std::numbers::pi * tau_c); }

  /// Throws InvalidArgument naming the first violated invariant.
  void validate() const;

  bool operator==(const ModelParams&) const = default;
};

template <typename Scalar>
Scalar deterministic_rate(Scalar r0, Scalar a_s, Scalar f_s, Scalar t) {
  using std::cos;
  using std::exp;
  return r0 * exp(a_s * cos(Scalar(2) * Scalar(std::numbers::pi) * f_s * t));
}

inline double deterministic_rate(const ModelParams& p, double t) {
  return deterministic_rate(p.r0, p.a_s, p.f_s, t);
}

/// Element-wise rate pattern over an array of times.
template <typename Derived>
Eigen::ArrayXd deterministic_rate(const ModelParams& p, const Eigen::ArrayBase<Derived>& t) {
  return p.r0 * (p.a_s * (2.0 * std::numbers::pi * p.f_s * t).cos()).exp();
}

/// sum_{n>=1} sigma^{2n} / (n * n!), truncated once the next term falls
/// below rel_tol times the running sum.
template <typename Scalar>
Scalar perturbation_series(Scalar sigma, Scalar rel_tol = Scalar(kDefaultSeriesTolerance)) {
  const Scalar x = sigma * sigma;
  if (x == Scalar(0)) return Scalar(0);
  Scalar power_over_factorial = x;  // x^n / n!
  Scalar sum = x;
  for (int n = 2; n < 100000; ++n) {
    power_over_factorial *= x / Scalar(n);
    const Scalar term = power_over_factorial / Scalar(n);
    sum += term;
    // Terms are eventually decreasing; only stop once past the peak.
    if (Scalar(n) > x && term < rel_tol * sum) break;
  }
  return sum;
}

/// Closed-form output SNR of the doubly stochastic Poisson process.
template <typename Scalar>
Scalar snr(Scalar a_s, Scalar r0, Scalar f_c, Scalar sigma,
           Scalar rel_tol = Scalar(kDefaultSeriesTolerance)) {
  using std::exp;
  const Scalar lognormal = exp(sigma * sigma / Scalar(2));
  const Scalar numerator = (a_s * a_s * r0 / Scalar(2)) * lognormal;
  const Scalar denominator =
      Scalar(2) + (Scalar(2) * r0 / (Scalar(std::numbers::pi) * f_c)) * lognormal *
                      perturbation_series(sigma, rel_tol);
  return numerator / denominator;
}

inline double snr(const ModelParams& p, double sigma) {
  return snr(p.a_s, p.r0, p.corner_frequency(), sigma);
}

inline double sr_product(double r0, double tau_c) { return r0 * tau_c; }

/// True iff tau_c * r0 < 0.25 (strict).
bool sr_condition(double r0, double tau_c);

struct SnrCurve {
  Eigen::ArrayXd sigma_grid;
  Eigen::ArrayXd raw;
  Eigen::ArrayXd normalized;
  std::optional<double> argmax_sigma;  ///< absent when the max is at sigma = 0
  bool sr_detected = false;
  double peak_gain = 1.0;  ///< largest normalized value
};

/// Uniform grid 0, step, 2*step, ... up to and including sigma_max.
Eigen::ArrayXd make_sigma_grid(double sigma_max = 3.0, double step = 0.01);

/// Evaluates and normalizes the SNR over sigma_grid. Throws InvalidArgument
/// for a grid not starting at 0, a non-increasing grid, or a_s == 0.
SnrCurve snr_curve(const ModelParams& params, const Eigen::ArrayXd& sigma_grid);

}  // namespace coxsr
