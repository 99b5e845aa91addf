#include "coxsr/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/random/normal_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include "coxsr/rng.hpp"

namespace coxsr {

namespace {

constexpr int kPlacementSteps = 1000000;

// Unit-variance AR(1) path driven by standard normals from `engine`.
// Callers scale by sigma, so paths at different sigma share their draws.
void fill_unit_noise(Engine& engine, double rho, Eigen::Ref<Eigen::ArrayXd> out) {
  boost::random::normal_distribution<double> normal;
  const double innovation = std::sqrt(1.0 - rho * rho);
  out(0) = normal(engine);
  for (Eigen::Index k = 1; k < out.size(); ++k) {
    out(k) = rho * out(k - 1) + innovation * normal(engine);
  }
}

// Rate log-pattern a_s cos(2 pi f_s t_k) at the start of every interval of one day.
Eigen::ArrayXd log_pattern(const ModelParams& params, const SessionSpec& session) {
  const Eigen::Index per_day = session.intervals_per_day();
  const Eigen::ArrayXd t =
      Eigen::ArrayXd::LinSpaced(per_day, 0.0, static_cast<double>(per_day - 1)) *
      session.tick_resolution;
  return params.a_s * (2.0 * std::numbers::pi * params.f_s * t).cos();
}

CountSeries simulate_counts(const ModelParams& params, const SessionSpec& session,
                            std::uint64_t seed, std::uint64_t replica) {
  params.validate();
  session.validate();
  const Eigen::Index per_day = session.intervals_per_day();
  const Eigen::Index n = per_day * session.days;
  const double dt = session.tick_resolution;

  Eigen::ArrayXd log_rate(n);
  if (params.sigma > 0.0) {
    Engine noise_engine = make_engine(seed, Stream::kNoise, replica);
    const double rho = std::exp(-dt / params.tau_c);
    if (session.restart_noise_each_day) {
      for (int d = 0; d < session.days; ++d) {
        fill_unit_noise(noise_engine, rho, log_rate.segment(d * per_day, per_day));
      }
    } else {
      fill_unit_noise(noise_engine, rho, log_rate);
    }
    log_rate *= params.sigma;
  } else {
    log_rate.setZero();
  }
  const Eigen::ArrayXd pattern = log_pattern(params, session);
  for (int d = 0; d < session.days; ++d) log_rate.segment(d * per_day, per_day) += pattern;

  CountSeries out;
  out.tick_resolution = dt;
  out.counts.resize(n);
  for (int d = 0; d < session.days; ++d) out.day_starts.push_back(d * per_day);

  Engine count_engine = make_engine(seed, Stream::kCounts, replica);
  const double scale = params.r0 * dt;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mean = scale * std::exp(log_rate(k));
    out.counts(k) = boost::random::poisson_distribution<long, double>(mean)(count_engine);
  }
  return out;
}

}  // namespace

Eigen::ArrayXd dense_autocorr(const Eigen::ArrayXd& series, Eigen::Index max_lag) {
  const Eigen::Index n = series.size();
  if (max_lag < 1 || n <= max_lag) {
    throw InvalidArgument("autocorrelation needs 1 <= max_lag < series length");
  }
  const Eigen::VectorXd x = (series - series.mean()).matrix();
  const double c0 = x.squaredNorm();
  if (!(c0 > 0.0)) return {};
  Eigen::ArrayXd values(max_lag);
  for (Eigen::Index lag = 1; lag <= max_lag; ++lag) {
    values(lag - 1) = x.head(n - lag).dot(x.tail(n - lag)) / c0;
  }
  return values;
}

Eigen::ArrayXd gen_noise_path(double sigma, double tau_c, double dt, Eigen::Index n,
                              std::uint64_t seed) {
  if (sigma < 0.0 || tau_c <= 0.0 || dt <= 0.0 || n < 1) {
    throw InvalidArgument("gen_noise_path needs sigma >= 0, tau_c > 0, dt > 0, n >= 1");
  }
  Eigen::ArrayXd path = Eigen::ArrayXd::Zero(n);
  if (sigma == 0.0) return path;
  Engine engine = make_engine(seed, Stream::kNoise);
  fill_unit_noise(engine, std::exp(-dt / tau_c), path);
  return sigma * path;
}

CountSeries gen_count_path(const ModelParams& params, const SessionSpec& session,
                           std::uint64_t seed) {
  return simulate_counts(params, session, seed, 0);
}

std::vector<TickRecord> ticks_from_counts(const CountSeries& counts,
                                          const SessionSpec& session, std::uint64_t seed,
                                          const std::string& symbol) {
  session.validate();
  const Eigen::Index per_day = session.intervals_per_day();
  if (counts.counts.size() != per_day * session.days) {
    throw InvalidArgument("count series length does not match the session layout");
  }
  Engine engine = make_engine(seed, Stream::kTickPlacement);
  boost::random::uniform_int_distribution<int> offset(0, kPlacementSteps - 1);
  const double step = session.tick_resolution / kPlacementSteps;

  std::vector<TickRecord> ticks;
  ticks.reserve(static_cast<std::size_t>(counts.counts.sum()));
  std::vector<int> offsets;
  for (Eigen::Index k = 0; k < counts.counts.size(); ++k) {
    const auto n = static_cast<int>(counts.counts(k));
    if (n == 0) continue;
    offsets.resize(n);
    for (auto& o : offsets) o = offset(engine);
    std::sort(offsets.begin(), offsets.end());
    const int day = static_cast<int>(k / per_day);
    const double start = static_cast<double>(k % per_day) * session.tick_resolution;
    for (int o : offsets) ticks.push_back({day, start + o * step, symbol});
  }
  return ticks;
}

std::vector<TickRecord> gen_ticks(const ModelParams& params, const SessionSpec& session,
                                  std::uint64_t seed, const std::string& symbol) {
  return ticks_from_counts(gen_count_path(params, session, seed), session, seed, symbol);
}

Eigen::ArrayXd sample_autocorr(const Eigen::ArrayXd& series, Eigen::Index max_lag) {
  const Eigen::Index n = series.size();
  if (max_lag < 1 || n <= max_lag) {
    throw InvalidArgument("autocorrelation needs 1 <= max_lag < series length");
  }
  std::vector<Eigen::Index> nonzero;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (series(i) != 0.0) nonzero.push_back(i);
  }
  if (static_cast<Eigen::Index>(nonzero.size()) * 4 > n) return dense_autocorr(series, max_lag);

  // Sparse path for count series that are mostly zero: accumulate raw lag
  // products over the nonzero entries, then remove the mean exactly via
  // prefix sums.
  const double mean = series.mean();
  Eigen::ArrayXd prefix(n + 1);
  prefix(0) = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) prefix(i + 1) = prefix(i) + series(i);
  const double total = prefix(n);

  Eigen::ArrayXd raw = Eigen::ArrayXd::Zero(max_lag + 1);
  for (Eigen::Index i : nonzero) {
    const double v = series(i);
    raw(0) += v * v;
    const Eigen::Index last = std::min(max_lag, n - 1 - i);
    for (Eigen::Index lag = 1; lag <= last; ++lag) raw(lag) += v * series(i + lag);
  }
  const double c0 = raw(0) - n * mean * mean;
  if (!(c0 > 0.0)) return {};
  Eigen::ArrayXd values(max_lag);
  for (Eigen::Index lag = 1; lag <= max_lag; ++lag) {
    const double head = prefix(n - lag);
    const double tail = total - prefix(lag);
    values(lag - 1) =
        (raw(lag) - mean * (head + tail) + static_cast<double>(n - lag) * mean * mean) / c0;
  }
  return values;
}

AutocorrFn mc_autocorr(const ModelParams& params, const SessionSpec& session, int replicas,
                       Eigen::Index max_lag, std::uint64_t seed) {
  if (replicas < 1 || max_lag < 1) {
    throw InvalidArgument("mc_autocorr needs replicas >= 1 and max_lag >= 1");
  }
  AutocorrFn out;
  out.lags = Eigen::ArrayXd::LinSpaced(max_lag, 1.0, static_cast<double>(max_lag)) *
             session.tick_resolution;
  out.values = Eigen::ArrayXd::Zero(max_lag);
  int used = 0;
  for (int i = 0; i < replicas; ++i) {
    const CountSeries counts = simulate_counts(params, session, seed, i);
    const Eigen::ArrayXd acf = sample_autocorr(counts.counts, max_lag);
    out.sample_count += counts.counts.size();
    // An all-zero replica carries no correlation information.
    if (acf.size() == 0) continue;
    out.values += acf;
    ++used;
  }
  if (used > 0) out.values /= used;
  out.noise_floor = 3.0 / std::sqrt(static_cast<double>(out.sample_count));
  return out;
}

double analytic_count_autocov(double r_det, double sigma, double tau_c, double dt,
                              double lag) {
  if (lag < 0.0 || tau_c <= 0.0 || dt <= 0.0 || sigma < 0.0 || r_det < 0.0) {
    throw InvalidArgument("analytic_count_autocov needs lag >= 0 and positive scales");
  }
  const double mean = r_det * dt;
  const double s2 = sigma * sigma;
  if (lag == 0.0) {
    return mean * std::exp(s2 / 2.0) + mean * mean * (std::exp(2.0 * s2) - std::exp(s2));
  }
  return mean * mean * std::exp(s2) * std::expm1(s2 * std::exp(-lag / tau_c));
}

}  // namespace coxsr
