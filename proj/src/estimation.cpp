#include "coxsr/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "coxsr/numerics.hpp"

namespace coxsr {

namespace {

constexpr double kTailMass = 1e-9;
constexpr double kLogUnderflow = -700.0;
constexpr double kSigmaWindow = 0.3;

double two_pi() { return 2.0 * std::numbers::pi; }

// Adds P(n), n = 0..p.size()-1, of the lognormal-Poisson mixture with mean
// `mean` (before the lognormal factor) to `p`, evaluated with `rule`.
void accumulate_mixture(double mean, double sigma, const NormalRule& rule,
                        const Eigen::ArrayXd& log_n, Eigen::Ref<Eigen::ArrayXd> p) {
  const Eigen::Index n_max = p.size() - 1;
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
    const double w = rule.weights(i);
    if (w <= 0.0) continue;
    const double mu = mean * std::exp(sigma * rule.nodes(i));
    if (mu <= 0.0) {
      p(0) += w;
      continue;
    }
    const double log_mu = std::log(mu);
    double log_term = std::log(w) - mu;
    if (log_term > kLogUnderflow) {
      double term = std::exp(log_term);
      p(0) += term;
      for (Eigen::Index n = 1; n <= n_max; ++n) {
        term *= mu / static_cast<double>(n);
        p(n) += term;
      }
    } else {
      // exp(-mu) underflows; stay in log space until the terms are representable.
      for (Eigen::Index n = 0; n <= n_max; ++n) {
        if (n > 0) log_term += log_mu - log_n(n);
        if (log_term > kLogUnderflow - 50.0) p(n) += std::exp(log_term);
        if (static_cast<double>(n) > mu && log_term < kLogUnderflow - 50.0) break;
      }
    }
  }
}

Eigen::ArrayXd log_table(Eigen::Index n_max) {
  Eigen::ArrayXd log_n(n_max + 1);
  log_n(0) = 0.0;
  for (Eigen::Index n = 1; n <= n_max; ++n) log_n(n) = std::log(static_cast<double>(n));
  return log_n;
}

Eigen::ArrayXd mixture_probabilities(double mean, double sigma, int n_max) {
  const NormalRule rule = sigma > 0.0 ? normal_rule_for_sigma(sigma) : NormalRule{};
  Eigen::ArrayXd p = Eigen::ArrayXd::Zero(n_max + 1);
  if (sigma == 0.0) {
    NormalRule point{Eigen::ArrayXd::Zero(1), Eigen::ArrayXd::Ones(1)};
    accumulate_mixture(mean, 0.0, point, log_table(n_max), p);
  } else {
    accumulate_mixture(mean, sigma, rule, log_table(n_max), p);
  }
  return p;
}

double mean_square_difference(const AutocorrFn& a, const AutocorrFn& b) {
  if (a.values.size() != b.values.size()) {
    throw InvalidArgument("autocorrelation lag ranges differ");
  }
  return (a.values - b.values).square().mean();
}

// Per-bin count frequencies pooled over days, columns 0..n_cap.
Eigen::ArrayXXd count_frequencies(const BinnedCounts& binned, int n_cap) {
  const auto bins = binned.counts.cols();
  const auto days = binned.counts.rows();
  Eigen::ArrayXXd freq = Eigen::ArrayXXd::Zero(bins, n_cap + 1);
  for (Eigen::Index d = 0; d < days; ++d) {
    for (Eigen::Index b = 0; b < bins; ++b) {
      const auto n = binned.counts(d, b);
      if (n <= n_cap) freq(b, n) += 1.0;
    }
  }
  return freq / static_cast<double>(days);
}

int frequency_support(const BinnedCounts& binned) {
  const auto max_count = binned.counts.size() > 0 ? binned.counts.maxCoeff() : 0;
  return static_cast<int>(max_count + std::max<std::int64_t>(20, max_count));
}

double effective_log_variance(double sigma, const SigmaFitOptions& options,
                              const SessionSpec& session) {
  if (!options.tau_c) return sigma * sigma;
  const double rho = std::exp(-session.tick_resolution / *options.tau_c);
  const int intervals =
      std::max(1, static_cast<int>(std::lround(session.bin_width / session.tick_resolution)));
  return std::log1p(bin_averaged_excess_variance(sigma, rho, intervals));
}

double frequency_sse(const Eigen::ArrayXXd& freq, const BinnedCounts& binned, double r0,
                     double a_s, double f_s, double sigma, const SigmaFitOptions& options) {
  const SessionSpec& session = binned.session;
  const int n_cap = static_cast<int>(freq.cols()) - 1;
  const double log_variance = effective_log_variance(sigma, options, session);
  const double sigma_eff = std::sqrt(log_variance);
  const double shift = options.mean_matched ? std::exp(-log_variance / 2.0) : 1.0;
  const NormalRule rule = sigma_eff > 0.0
                              ? normal_rule_for_sigma(sigma_eff)
                              : NormalRule{Eigen::ArrayXd::Zero(1), Eigen::ArrayXd::Ones(1)};
  const Eigen::ArrayXd log_n = log_table(n_cap);
  Eigen::ArrayXd p(n_cap + 1);
  double sse = 0.0;
  for (Eigen::Index b = 0; b < freq.rows(); ++b) {
    const double t = session.bin_mid_time(static_cast<int>(b));
    const double rate = r0 * std::exp(a_s * std::cos(two_pi() * f_s * t)) * shift;
    p.setZero();
    accumulate_mixture(rate * session.bin_width, sigma_eff, rule, log_n, p);
    sse += (freq.row(b).transpose() - p).square().sum();
  }
  return sse;
}

// Noise level implied by the variance of the 1-second counts:
// E[c^2] / E[c]^2 picks up exp(sigma^2) times the pattern's own dispersion.
std::optional<double> dispersion_sigma(const CountSeries& series, double a_s, double f_s,
                                       const SessionSpec& session) {
  const double mean = series.counts.mean();
  if (!(mean > 0.0)) return std::nullopt;
  const double variance = (series.counts - mean).square().mean();
  const Eigen::Index per_day = session.intervals_per_day();
  const Eigen::ArrayXd t =
      Eigen::ArrayXd::LinSpaced(per_day, 0.0, static_cast<double>(per_day - 1)) *
      session.tick_resolution;
  const Eigen::ArrayXd g = (a_s * (two_pi() * f_s * t).cos()).exp();
  const double pattern_ratio = g.square().mean() / (g.mean() * g.mean());
  const double growth = (variance - mean + mean * mean) / (mean * mean * pattern_ratio);
  if (!(growth > 1.0)) return std::nullopt;
  return std::sqrt(std::log(growth));
}

}  // namespace

SupportTooSmall::SupportTooSmall(int n_max, int suggested, double tail_mass)
    : EstimationError("mixed_pdf", "n_max " + std::to_string(n_max) + " leaves tail mass " +
                                       std::to_string(tail_mass) + "; use n_max >= " +
                                       std::to_string(suggested)),
      suggested_(suggested) {}

BinnedCounts bin_counts(const std::vector<TickRecord>& ticks, const SessionSpec& session) {
  session.validate();
  BinnedCounts out;
  out.session = session;
  out.counts = CountMatrix::Zero(session.days, session.bins_per_day);
  const double binned_end = session.warmup_skip + session.bins_per_day * session.bin_width;
  for (std::size_t i = 0; i < ticks.size(); ++i) {
    const TickRecord& tick = ticks[i];
    if (tick.day_index < 0 || tick.day_index >= session.days || !(tick.t >= 0.0) ||
        tick.t >= session.session_length) {
      throw EstimationError("binning", "record " + std::to_string(i) + " (day " +
                                           std::to_string(tick.day_index) + ", t " +
                                           std::to_string(tick.t) +
                                           ") lies outside the session");
    }
    if (tick.t < session.warmup_skip || tick.t >= binned_end) continue;
    auto b = static_cast<int>(std::floor((tick.t - session.warmup_skip) / session.bin_width));
    b = std::min(b, session.bins_per_day - 1);
    out.counts(tick.day_index, b) += 1;
  }
  return out;
}

RatePattern empirical_rate_pattern(const BinnedCounts& binned) {
  const SessionSpec& session = binned.session;
  if (binned.counts.rows() < 1) throw EstimationError("pattern", "no days to average");
  RatePattern pattern;
  pattern.rate = binned.counts.cast<double>().colwise().sum().transpose().array() /
                 (static_cast<double>(binned.counts.rows()) * session.bin_width);
  pattern.mid_time.resize(session.bins_per_day);
  for (int b = 0; b < session.bins_per_day; ++b) pattern.mid_time(b) = session.bin_mid_time(b);
  return pattern;
}

PatternFit fit_rate_pattern(const RatePattern& pattern, double f_s) {
  if (!(f_s > 0.0)) throw EstimationError("pattern", "f_s must be > 0");
  const Eigen::ArrayXd c = (two_pi() * f_s * pattern.mid_time).cos();
  const Eigen::Index n = pattern.rate.size();

  // Log-domain regression over positive bins for the starting point.
  std::vector<Eigen::Index> positive;
  for (Eigen::Index b = 0; b < n; ++b) {
    if (pattern.rate(b) > 0.0) positive.push_back(b);
  }
  if (positive.size() < 3) {
    throw EstimationError("pattern", "need at least 3 bins with positive rate, found " +
                                         std::to_string(positive.size()));
  }
  Eigen::MatrixXd design(positive.size(), 2);
  Eigen::VectorXd target(positive.size());
  for (std::size_t i = 0; i < positive.size(); ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = c(positive[i]);
    target(i) = std::log(pattern.rate(positive[i]));
  }
  Eigen::Vector2d theta = design.colPivHouseholderQr().solve(target);  // (ln r0, a_s)

  auto residuals = [&](const Eigen::Vector2d& th) {
    return (pattern.rate - std::exp(th(0)) * (th(1) * c).exp()).eval();
  };
  Eigen::ArrayXd e = residuals(theta);
  double sse = e.square().sum();
  double lambda = 1e-3;
  PatternFit fit;
  for (fit.iterations = 0; fit.iterations < 500; ++fit.iterations) {
    const Eigen::ArrayXd model = pattern.rate - e;
    Eigen::MatrixXd jac(n, 2);
    jac.col(0) = model.matrix();
    jac.col(1) = (model * c).matrix();
    const Eigen::Matrix2d jtj = jac.transpose() * jac;
    const Eigen::Vector2d jte = jac.transpose() * e.matrix();
    bool improved = false;
    Eigen::Vector2d step = Eigen::Vector2d::Zero();
    for (int attempt = 0; attempt < 30 && !improved; ++attempt) {
      Eigen::Matrix2d damped = jtj;
      damped.diagonal() *= 1.0 + lambda;
      step = damped.ldlt().solve(jte);
      const Eigen::ArrayXd trial = residuals(theta + step);
      const double trial_sse = trial.square().sum();
      if (trial_sse <= sse) {
        theta += step;
        e = trial;
        sse = trial_sse;
        lambda = std::max(lambda / 10.0, 1e-12);
        improved = true;
      } else {
        lambda *= 10.0;
      }
    }
    if (!improved || step.norm() < 1e-14 * (1.0 + theta.norm())) break;
  }
  fit.r0 = std::exp(theta(0));
  fit.a_s = theta(1);
  fit.f_s = f_s;
  fit.sse = sse;
  return fit;
}

AutocorrFn empirical_autocorr(const CountSeries& counts, Eigen::Index max_lag) {
  if (max_lag < 1 || counts.counts.size() <= max_lag) {
    throw EstimationError("autocorrelation", "series of length " +
                                                 std::to_string(counts.counts.size()) +
                                                 " is too short for max lag " +
                                                 std::to_string(max_lag));
  }
  AutocorrFn out;
  out.values = sample_autocorr(counts.counts, max_lag);
  if (out.values.size() == 0) {
    throw EstimationError("autocorrelation", "count series has zero variance");
  }
  out.lags = Eigen::ArrayXd::LinSpaced(max_lag, 1.0, static_cast<double>(max_lag)) *
             counts.tick_resolution;
  out.sample_count = counts.counts.size();
  out.noise_floor = 3.0 / std::sqrt(static_cast<double>(out.sample_count));
  return out;
}

Eigen::ArrayXd log_spaced_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) {
    throw InvalidArgument("log grid needs 0 < lo < hi and n >= 2");
  }
  Eigen::ArrayXd grid =
      Eigen::ArrayXd::LinSpaced(n, std::log(lo), std::log(hi)).exp();
  grid(0) = lo;
  grid(n - 1) = hi;
  return grid;
}

Eigen::Index default_acf_max_lag(const Eigen::ArrayXd& tau_grid, double tick_resolution) {
  const double longest = tau_grid.size() > 0 ? tau_grid.maxCoeff() : 0.0;
  return std::max<Eigen::Index>(
      60, static_cast<Eigen::Index>(std::ceil(5.0 * longest / tick_resolution)));
}

TauFit fit_tau_c(const AutocorrFn& empirical, const ModelParams& partial,
                 const SessionSpec& session, const Eigen::ArrayXd& candidate_grid,
                 const McConfig& mc, Eigen::Index max_lag) {
  if (candidate_grid.size() == 0) throw EstimationError("tau_c", "empty candidate grid");
  for (Eigen::Index i = 1; i < candidate_grid.size(); ++i) {
    if (!(candidate_grid(i) > candidate_grid(i - 1))) {
      throw EstimationError("tau_c", "candidate grid must be strictly increasing");
    }
  }
  if (empirical.values.size() < max_lag) {
    throw EstimationError("tau_c", "empirical autocorrelation shorter than max lag");
  }
  AutocorrFn target = empirical;
  target.values = empirical.values.head(max_lag);

  TauFit fit;
  fit.candidate_mse.resize(candidate_grid.size());
  Eigen::Index best = 0;
  for (Eigen::Index i = 0; i < candidate_grid.size(); ++i) {
    ModelParams params = partial;
    params.tau_c = candidate_grid(i);
    const AutocorrFn sim = mc_autocorr(params, session, mc.replicas, max_lag, mc.seed);
    fit.candidate_mse(i) = mean_square_difference(sim, target);
    if (fit.candidate_mse(i) < fit.candidate_mse(best)) best = i;
  }
  fit.tau_c = candidate_grid(best);
  fit.mse = fit.candidate_mse(best);
  fit.at_grid_edge = candidate_grid.size() > 1 && (best == 0 || best == candidate_grid.size() - 1);
  return fit;
}

Eigen::ArrayXd mixed_pdf(double rate_det, double bin_width, double sigma, int n_max) {
  if (!(rate_det > 0.0) || !(bin_width > 0.0) || !(sigma >= 0.0) || n_max < 0) {
    throw InvalidArgument("mixed_pdf needs rate_det > 0, bin_width > 0, sigma >= 0, n_max >= 0");
  }
  const double mean = rate_det * bin_width;
  Eigen::ArrayXd p = mixture_probabilities(mean, sigma, n_max);
  const double tail = 1.0 - p.sum();
  if (tail > kTailMass) {
    int suggested = std::max(2 * n_max, 16);
    for (; suggested < 100000000; suggested *= 2) {
      if (1.0 - mixture_probabilities(mean, sigma, suggested).sum() <= kTailMass) break;
    }
    throw SupportTooSmall(n_max, suggested, tail);
  }
  return p;
}

double bin_averaged_excess_variance(double sigma, double rho, int intervals) {
  const double s2 = sigma * sigma;
  const double n = intervals;
  double sum = n * std::expm1(s2);
  double rho_k = 1.0;
  for (int k = 1; k < intervals; ++k) {
    rho_k *= rho;
    sum += 2.0 * (n - k) * std::expm1(s2 * rho_k);
  }
  return sum / (n * n);
}

double sigma_objective(const BinnedCounts& binned, double r0, double a_s, double f_s,
                       double sigma, const SigmaFitOptions& options) {
  const Eigen::ArrayXXd freq = count_frequencies(binned, frequency_support(binned));
  return frequency_sse(freq, binned, r0, a_s, f_s, sigma, options);
}

SigmaFit fit_sigma(const BinnedCounts& binned, double r0, double a_s, double f_s,
                   const SigmaFitOptions& options) {
  if (binned.counts.rows() < 1) throw EstimationError("sigma", "no days to fit");
  if (!(r0 > 0.0)) throw EstimationError("sigma", "r0 must be > 0");
  if (!(options.upper > options.lower) || options.lower < 0.0) {
    throw EstimationError("sigma", "invalid sigma bounds");
  }
  const Eigen::ArrayXXd freq = count_frequencies(binned, frequency_support(binned));
  auto objective = [&](double sigma) {
    return frequency_sse(freq, binned, r0, a_s, f_s, sigma, options);
  };

  // Coarse scan, then golden section around the best coarse point.
  double best_sigma = options.lower;
  double best_value = std::numeric_limits<double>::infinity();
  const int steps =
      std::max(1, static_cast<int>(std::ceil((options.upper - options.lower) / options.coarse_step)));
  for (int i = 0; i <= steps; ++i) {
    const double sigma = std::min(options.upper, options.lower + i * options.coarse_step);
    const double value = objective(sigma);
    if (value < best_value) {
      best_value = value;
      best_sigma = sigma;
    }
  }
  const double lo = std::max(options.lower, best_sigma - options.coarse_step);
  const double hi = std::min(options.upper, best_sigma + options.coarse_step);
  const Minimum refined = golden_section_minimize(objective, lo, hi, options.tolerance);

  SigmaFit fit;
  fit.sigma = refined.value <= best_value ? refined.x : best_sigma;
  fit.sse = std::min(refined.value, best_value);
  fit.at_bound = fit.sigma <= options.lower + options.tolerance ||
                 fit.sigma >= options.upper - options.tolerance;
  return fit;
}

SigmaFit fit_sigma_autocorr(const AutocorrFn& empirical, double level,
                            const ModelParams& partial, const SessionSpec& session,
                            const McConfig& mc, Eigen::Index max_lag, double lower,
                            double upper, double tolerance) {
  if (!(level > 0.0)) throw EstimationError("sigma", "mean level must be > 0");
  if (empirical.values.size() < max_lag) {
    throw EstimationError("sigma", "empirical autocorrelation shorter than max lag");
  }
  AutocorrFn target = empirical;
  target.values = empirical.values.head(max_lag);
  auto objective = [&](double sigma) {
    ModelParams params = partial;
    params.sigma = sigma;
    params.r0 = level * std::exp(-sigma * sigma / 2.0);
    return mean_square_difference(mc_autocorr(params, session, mc.replicas, max_lag, mc.seed),
                                  target);
  };
  const Minimum best = golden_section_minimize(objective, lower, upper, tolerance);
  SigmaFit fit;
  fit.sigma = best.x;
  fit.sse = best.value;
  fit.at_bound = best.x <= lower + tolerance || best.x >= upper - tolerance;
  return fit;
}

FitReport fit_all(const std::vector<TickRecord>& ticks, const SessionSpec& session,
                  const FitConfig& config) {
  FitReport report;
  report.provenance.input_path = config.input_path;
  report.provenance.session = session;
  report.provenance.seed = config.mc.seed;
  report.provenance.replicas = config.mc.replicas;
  report.provenance.tau_grid.assign(config.tau_grid.begin(), config.tau_grid.end());
  report.provenance.sigma_upper = config.sigma_upper;
  report.provenance.tick_count = ticks.size();

  if (ticks.empty()) throw EstimationError("binning", "dataset contains no ticks");
  BinnedCounts binned;
  try {
    binned = bin_counts(ticks, session);
  } catch (const InvalidArgument& e) {
    throw EstimationError("binning", e.what());
  }

  const double f_s = config.f_s.value_or(1.0 / session.session_length);
  const PatternFit pattern = fit_rate_pattern(empirical_rate_pattern(binned), f_s);
  report.pattern_level = pattern.r0;
  report.residuals.pattern_sse = pattern.sse;
  const double a_s = std::max(0.0, pattern.a_s);

  const Eigen::Index max_lag =
      config.acf_max_lag.value_or(default_acf_max_lag(config.tau_grid, session.tick_resolution));
  report.provenance.acf_max_lag = max_lag;
  const CountSeries series = count_series_from_ticks(ticks, session);
  const AutocorrFn empirical = empirical_autocorr(series, max_lag);
  report.diagnostics.empirical_noise_floor = empirical.noise_floor;

  SigmaFitOptions pdf_options;
  pdf_options.mean_matched = true;
  pdf_options.upper = config.sigma_upper;
  const SigmaFit pdf_fit = fit_sigma(binned, pattern.r0, a_s, f_s, pdf_options);
  report.diagnostics.pdf_sigma = pdf_fit.sigma;
  report.residuals.pdf_sse = pdf_fit.sse;

  // sigma and tau_c trade off against each other in the autocorrelation, so
  // minimize the profile min_sigma MSE(sigma, tau_c) over the tau_c grid:
  // a full tau_c scan at a moment-based sigma, then a hill climb on the grid.
  double sigma = dispersion_sigma(series, a_s, f_s, session).value_or(pdf_fit.sigma);
  sigma = std::clamp(sigma, 0.0, config.sigma_upper);
  ModelParams partial{.r0 = pattern.r0 * std::exp(-sigma * sigma / 2.0),
                      .a_s = a_s,
                      .f_s = f_s,
                      .sigma = sigma,
                      .tau_c = 1.0};
  const TauFit scan = fit_tau_c(empirical, partial, session, config.tau_grid, config.mc, max_lag);

  std::map<Eigen::Index, SigmaFit> profile;
  auto profile_at = [&](Eigen::Index i, double sigma_hint) -> const SigmaFit& {
    auto found = profile.find(i);
    if (found != profile.end()) return found->second;
    ModelParams at = partial;
    at.tau_c = config.tau_grid(i);
    const double lower = std::max(0.0, sigma_hint - kSigmaWindow);
    const double upper = std::min(config.sigma_upper, sigma_hint + kSigmaWindow);
    return profile
        .emplace(i, fit_sigma_autocorr(empirical, pattern.r0, at, session, config.mc, max_lag,
                                       lower, upper, config.sigma_tolerance))
        .first->second;
  };
  Eigen::Index current = 0;
  (config.tau_grid - scan.tau_c).abs().minCoeff(&current);
  // The first profile point gets the full sigma range.
  {
    ModelParams at = partial;
    at.tau_c = config.tau_grid(current);
    profile.emplace(current, fit_sigma_autocorr(empirical, pattern.r0, at, session, config.mc,
                                                max_lag, 0.0, config.sigma_upper,
                                                config.sigma_tolerance));
  }
  const Eigen::Index last = config.tau_grid.size() - 1;
  for (int step = 0; step < std::max(1, config.max_rounds); ++step) {
    const double hint = profile.at(current).sigma;
    Eigen::Index best = current;
    for (Eigen::Index i : {current - 1, current + 1}) {
      if (i < 0 || i > last) continue;
      // Ties keep the smaller tau_c.
      const SigmaFit& candidate = profile_at(i, hint);
      const SigmaFit& incumbent = profile.at(best);
      if (candidate.sse < incumbent.sse || (candidate.sse == incumbent.sse && i < best)) best = i;
    }
    report.diagnostics.rounds = step + 1;
    if (best == current) break;
    current = best;
  }
  const SigmaFit& sigma_fit = profile.at(current);
  sigma = sigma_fit.sigma;
  TauFit tau_fit;
  tau_fit.tau_c = config.tau_grid(current);
  tau_fit.mse = sigma_fit.sse;

  report.params.f_s = f_s;
  report.params.a_s = a_s;
  report.params.sigma = sigma;
  report.params.tau_c = tau_fit.tau_c;
  report.params.r0 = pattern.r0 * std::exp(-sigma * sigma / 2.0);
  report.residuals.acf_mse = sigma_fit.sse;
  report.diagnostics.tau_at_grid_edge =
      tau_fit.tau_c == config.tau_grid(0) ||
      tau_fit.tau_c == config.tau_grid(config.tau_grid.size() - 1);
  report.diagnostics.sigma_at_bound =
      sigma <= config.sigma_tolerance || sigma >= config.sigma_upper - config.sigma_tolerance;

  SigmaFitOptions corrected = pdf_options;
  corrected.tau_c = tau_fit.tau_c;
  report.diagnostics.pdf_sigma_corrected = fit_sigma(binned, pattern.r0, a_s, f_s, corrected).sigma;

  report.params.validate();
  report.sr.product = sr_product(report.params.r0, report.params.tau_c);
  report.sr.condition = sr_condition(report.params.r0, report.params.tau_c);
  if (report.params.a_s > 0.0) {
    const SnrCurve curve = snr_curve(report.params, make_sigma_grid());
    report.sr.curve_detected = curve.sr_detected;
    report.sr.argmax_sigma = curve.argmax_sigma;
    report.sr.peak_gain = curve.peak_gain;
  }
  return report;
}

}  // namespace coxsr
