// Monte-Carlo generation of noise, count and tick paths, plus sample and
// analytic autocorrelation of count series.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "coxsr/model.hpp"
#include "coxsr/session.hpp"

namespace coxsr {

/// Sample autocorrelation at lags 1..max_lag with its 3/sqrt(N) noise floor.
struct AutocorrFn {
  Eigen::ArrayXd lags;    ///< seconds
  Eigen::ArrayXd values;  ///< correlation coefficients
  double noise_floor = 0.0;
  Eigen::Index sample_count = 0;
};

/// Stationary exponentially correlated Gaussian sequence via the exact AR(1)
/// recursion W[k+1] = rho W[k] + sigma sqrt(1 - rho^2) xi[k], rho = exp(-dt/tau_c).
Eigen::ArrayXd gen_noise_path(double sigma, double tau_c, double dt, Eigen::Index n,
                              std::uint64_t seed);

/// Conditionally Poisson counts per tick interval.
CountSeries gen_count_path(const ModelParams& params, const SessionSpec& session,
                           std::uint64_t seed);

/// Materializes a count path as timestamps, n per interval placed uniformly
/// inside it (microsecond grid, sorted).
std::vector<TickRecord> gen_ticks(const ModelParams& params, const SessionSpec& session,
                                  std::uint64_t seed, const std::string& symbol = "SYN");
std::vector<TickRecord> ticks_from_counts(const CountSeries& counts,
                                          const SessionSpec& session, std::uint64_t seed,
                                          const std::string& symbol = "SYN");

/// Biased (divide by N) sample autocovariance over lag-0. Returns an empty
/// values array when the series has zero variance. Mostly-zero series take a
/// sparse path.
Eigen::ArrayXd sample_autocorr(const Eigen::ArrayXd& series, Eigen::Index max_lag);
/// Same estimator evaluated directly on the centered series.
Eigen::ArrayXd dense_autocorr(const Eigen::ArrayXd& series, Eigen::Index max_lag);

/// Mean of per-replica sample autocorrelations of 1-second counts.
/// Replica i uses streams derived from (seed, i).
AutocorrFn mc_autocorr(const ModelParams& params, const SessionSpec& session, int replicas,
                       Eigen::Index max_lag, std::uint64_t seed);

/// Count autocovariance of the stationary (a_s = 0) mixed Poisson process.
double analytic_count_autocov(double r_det, double sigma, double tau_c, double dt, double lag);

}  // namespace coxsr
