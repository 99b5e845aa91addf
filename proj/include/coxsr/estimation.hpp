// Calibration of the doubly stochastic Poisson model from tick data.
//
// Pipeline: 2-minute binning, per-bin average rate, least-squares fit of the
// daily pattern, 1-second count autocorrelation, Monte-Carlo matching of the
// noise correlation time, and Poisson-lognormal fitting of the noise level.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "coxsr/model.hpp"
#include "coxsr/session.hpp"
#include "coxsr/simulator.hpp"

namespace coxsr {

/// A pipeline stage failed; stage() names it ("binning", "pattern", ...).
class EstimationError : public std::runtime_error {
 public:
  EstimationError(std::string stage, const std::string& message)
      : std::runtime_error(stage + ": " + message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// mixed_pdf was asked for too short a support.
class SupportTooSmall : public EstimationError {
 public:
  SupportTooSmall(int n_max, int suggested, double tail_mass);
  int suggested_n_max() const { return suggested_; }

 private:
  int suggested_;
};

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Trade counts indexed [day][bin].
struct BinnedCounts {
  CountMatrix counts;
  SessionSpec session;
};

struct RatePattern {
  Eigen::ArrayXd rate;      ///< events/s per bin
  Eigen::ArrayXd mid_time;  ///< seconds from the open
};

/// Least-squares fit of rate[b] ~ r0 * exp(a_s cos(2 pi f_s t_b)).
///
/// Fitted to average counts, r0 here is the mean level of the process, which
/// includes the lognormal noise factor exp(sigma^2 / 2).
struct PatternFit {
  double r0 = 0.0;
  double a_s = 0.0;
  double f_s = 0.0;
  double sse = 0.0;
  int iterations = 0;
};

BinnedCounts bin_counts(const std::vector<TickRecord>& ticks, const SessionSpec& session);

RatePattern empirical_rate_pattern(const BinnedCounts& binned);

/// Gauss-Newton/Levenberg-Marquardt in rate space, started from the
/// log-domain linear regression over positive-rate bins. f_s defaults to
/// 1 / session_length.
PatternFit fit_rate_pattern(const RatePattern& pattern, double f_s);

/// Sample autocorrelation of the concatenated series; noise floor 3/sqrt(N).
AutocorrFn empirical_autocorr(const CountSeries& counts, Eigen::Index max_lag);

struct McConfig {
  int replicas = 4;
  std::uint64_t seed = 0;
};

struct TauFit {
  double tau_c = 0.0;
  double mse = 0.0;
  bool at_grid_edge = false;
  Eigen::ArrayXd candidate_mse;
};

/// n log-spaced points over [lo, hi].
Eigen::ArrayXd log_spaced_grid(double lo, double hi, int n);

/// Lag range used for tau_c matching: max(60, 5 * largest candidate).
Eigen::Index default_acf_max_lag(const Eigen::ArrayXd& tau_grid, double tick_resolution = 1.0);

/// Picks the candidate whose Monte-Carlo autocorrelation is closest in mean
/// square to `empirical` over lags 1..max_lag. `partial.tau_c` is ignored.
/// Every candidate shares the replica streams of `mc.seed`; ties go to the
/// smaller tau_c.
TauFit fit_tau_c(const AutocorrFn& empirical, const ModelParams& partial,
                 const SessionSpec& session, const Eigen::ArrayXd& candidate_grid,
                 const McConfig& mc, Eigen::Index max_lag);

/// P(n), n = 0..n_max, of Poisson counts whose mean rate_det * bin_width is
/// multiplied by a lognormal factor exp(w), w ~ N(0, sigma^2). Throws
/// SupportTooSmall if the mass beyond n_max exceeds 1e-9.
Eigen::ArrayXd mixed_pdf(double rate_det, double bin_width, double sigma, int n_max);

/// Relative variance of the bin sum of exp(W) over `intervals` steps of an
/// AR(1) noise with unit-lag correlation rho. Its log1p is the lognormal
/// variance matching a bin whose noise is not constant.
double bin_averaged_excess_variance(double sigma, double rho, int intervals);

struct SigmaFitOptions {
  /// Scale each bin's rate by exp(-sigma^2/2) so the mixture mean stays at
  /// the fitted pattern (which already contains the lognormal mean factor).
  bool mean_matched = false;
  /// Account for noise decorrelating inside a bin (moment-matched lognormal).
  std::optional<double> tau_c;
  double lower = 0.0;
  double upper = 3.0;
  double coarse_step = 0.1;
  double tolerance = 1e-4;
};

struct SigmaFit {
  double sigma = 0.0;
  double sse = 0.0;
  bool at_bound = false;
};

/// Mean-square fit of the mixed PDF to per-bin count histograms pooled over
/// days, all bins at once: coarse grid then golden-section refinement.
SigmaFit fit_sigma(const BinnedCounts& binned, double r0, double a_s, double f_s,
                   const SigmaFitOptions& options = {});

/// Sum of squared differences between per-bin empirical count frequencies
/// and the mixed PDF at `sigma`.
double sigma_objective(const BinnedCounts& binned, double r0, double a_s, double f_s,
                       double sigma, const SigmaFitOptions& options = {});

/// Golden-section search for the sigma whose Monte-Carlo autocorrelation is
/// closest in mean square to `empirical`, with tau_c held fixed. The
/// simulated mean level stays at `level` (r0 = level * exp(-sigma^2/2)).
SigmaFit fit_sigma_autocorr(const AutocorrFn& empirical, double level,
                            const ModelParams& partial, const SessionSpec& session,
                            const McConfig& mc, Eigen::Index max_lag, double lower,
                            double upper, double tolerance);

struct FitConfig {
  Eigen::ArrayXd tau_grid = log_spaced_grid(0.5, 60.0, 25);
  McConfig mc;
  std::optional<Eigen::Index> acf_max_lag;
  double sigma_upper = 3.0;
  double sigma_tolerance = 2e-3;
  int max_rounds = 4;
  std::optional<double> f_s;
  std::string input_path;
};

struct FitReport {
  ModelParams params;
  double pattern_level = 0.0;  ///< r0 * exp(sigma^2/2) from the pattern fit

  struct Residuals {
    double pattern_sse = 0.0;
    double acf_mse = 0.0;
    double pdf_sse = 0.0;
  } residuals;

  struct Diagnostics {
    double pdf_sigma = 0.0;            ///< bin-level mixture fit, noise constant per bin
    double pdf_sigma_corrected = 0.0;  ///< same with in-bin decorrelation at fitted tau_c
    bool tau_at_grid_edge = false;
    bool sigma_at_bound = false;
    int rounds = 0;
    double empirical_noise_floor = 0.0;
  } diagnostics;

  struct Sr {
    double product = 0.0;  ///< tau_c * r0
    bool condition = false;
    bool curve_detected = false;
    std::optional<double> argmax_sigma;
    double peak_gain = 1.0;
  } sr;

  struct Provenance {
    std::string input_path;
    SessionSpec session;
    std::uint64_t seed = 0;
    int replicas = 0;
    std::vector<double> tau_grid;
    Eigen::Index acf_max_lag = 0;
    double sigma_upper = 0.0;
    std::size_t tick_count = 0;
  } provenance;
};

/// Runs the full calibration. Stage failures surface as EstimationError.
FitReport fit_all(const std::vector<TickRecord>& ticks, const SessionSpec& session,
                  const FitConfig& config);

}  // namespace coxsr
