#include "coxsr/model.hpp"

#include <cmath>
#include <string>

namespace coxsr {

namespace {

constexpr double kPeakMargin = 1e-9;

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

}  // namespace

void ModelParams::validate() const {
  require(std::isfinite(r0) && r0 > 0.0, "r0 must be > 0, got " + std::to_string(r0));
  require(std::isfinite(f_s) && f_s > 0.0, "f_s must be > 0, got " + std::to_string(f_s));
  require(std::isfinite(tau_c) && tau_c > 0.0,
          "tau_c must be > 0, got " + std::to_string(tau_c));
  require(std::isfinite(sigma) && sigma >= 0.0,
          "sigma must be >= 0, got " + std::to_string(sigma));
  require(std::isfinite(a_s) && a_s >= 0.0, "a_s must be >= 0, got " + std::to_string(a_s));
  require(corner_frequency() > 0.0, "corner frequency must be > 0");
}

bool sr_condition(double r0, double tau_c) {
  require(r0 > 0.0 && tau_c > 0.0, "sr_condition needs r0 > 0 and tau_c > 0");
  return sr_product(r0, tau_c) < kSrThreshold;
}

Eigen::ArrayXd make_sigma_grid(double sigma_max, double step) {
  require(step > 0.0 && sigma_max > 0.0, "sigma grid needs step > 0 and sigma_max > 0");
  const auto n = static_cast<Eigen::Index>(std::floor(sigma_max / step + 1e-9)) + 1;
  // i * step rather than accumulation, so grid points are reproducible.
  return Eigen::ArrayXd::LinSpaced(n, 0.0, static_cast<double>(n - 1)) * step;
}

SnrCurve snr_curve(const ModelParams& params, const Eigen::ArrayXd& sigma_grid) {
  params.validate();
  require(sigma_grid.size() >= 2, "sigma grid needs at least two points");
  require(sigma_grid(0) == 0.0, "sigma grid must start at 0 for normalization");
  for (Eigen::Index i = 1; i < sigma_grid.size(); ++i) {
    require(sigma_grid(i) > sigma_grid(i - 1), "sigma grid must be strictly increasing");
  }
  require(params.a_s > 0.0, "a_s == 0 gives an identically zero SNR curve");

  SnrCurve curve;
  curve.sigma_grid = sigma_grid;
  curve.raw = sigma_grid.unaryExpr([&](double s) { return snr(params, s); });
  curve.normalized = curve.raw / curve.raw(0);
  curve.normalized(0) = 1.0;

  Eigen::Index best = 0;
  curve.peak_gain = curve.normalized.maxCoeff(&best);
  if (best > 0) curve.argmax_sigma = sigma_grid(best);
  curve.sr_detected =
      best > 0 && best < sigma_grid.size() - 1 && curve.peak_gain > 1.0 + kPeakMargin;
  return curve;
}

}  // namespace coxsr
