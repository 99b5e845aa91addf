#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "coxsr/numerics.hpp"
#include "coxsr/rng.hpp"
#include "coxsr/simulator.hpp"

using namespace coxsr;

namespace {

SessionSpec one_day() {
  SessionSpec s;
  s.days = 1;
  return s;
}

double variance(const Eigen::ArrayXd& x) {
  return (x - x.mean()).square().sum() / static_cast<double>(x.size());
}

}  // namespace

TEST(Rng, DerivedSeedsDiffer) {
  EXPECT_NE(derive_seed(1, Stream::kNoise), derive_seed(1, Stream::kCounts));
  EXPECT_NE(derive_seed(1, Stream::kNoise, 0), derive_seed(1, Stream::kNoise, 1));
  EXPECT_NE(derive_seed(1, Stream::kNoise), derive_seed(2, Stream::kNoise));
  EXPECT_EQ(make_engine(5, Stream::kCounts)(), make_engine(5, Stream::kCounts)());
}

TEST(Rng, Mt19937ReferenceValue) {
  // The standard fixes the 10000th output of a default-seeded mt19937_64.
  Engine e;
  e.discard(9999);
  EXPECT_EQ(e(), 9981545732273789042ULL);
}

TEST(NoisePath, ZeroSigmaIsZero) {
  const Eigen::ArrayXd w = gen_noise_path(0.0, 5.0, 1.0, 100, 3);
  EXPECT_TRUE((w == 0.0).all());
}

TEST(NoisePath, RejectsBadArguments) {
  EXPECT_THROW(gen_noise_path(-1.0, 5.0, 1.0, 10, 0), InvalidArgument);
  EXPECT_THROW(gen_noise_path(1.0, 0.0, 1.0, 10, 0), InvalidArgument);
  EXPECT_THROW(gen_noise_path(1.0, 5.0, 0.0, 10, 0), InvalidArgument);
  EXPECT_THROW(gen_noise_path(1.0, 5.0, 1.0, 0, 0), InvalidArgument);
}

TEST(NoisePath, StationaryMomentsAndCorrelation) {
  const double sigma = 0.8;
  const double tau = 5.0;
  const Eigen::ArrayXd w = gen_noise_path(sigma, tau, 1.0, 2000000, 17);
  EXPECT_NEAR(w.mean(), 0.0, 0.01);
  EXPECT_NEAR(variance(w), sigma * sigma, 0.01);
  const Eigen::ArrayXd acf = dense_autocorr(w, 15);
  for (int lag = 1; lag <= 15; ++lag) {
    EXPECT_NEAR(acf(lag - 1), std::exp(-lag / tau), 0.01) << "lag=" << lag;
  }
}

TEST(NoisePath, Deterministic) {
  const Eigen::ArrayXd a = gen_noise_path(1.0, 3.0, 1.0, 1000, 99);
  const Eigen::ArrayXd b = gen_noise_path(1.0, 3.0, 1.0, 1000, 99);
  const Eigen::ArrayXd c = gen_noise_path(1.0, 3.0, 1.0, 1000, 100);
  EXPECT_TRUE((a == b).all());
  EXPECT_FALSE((a == c).all());
}

TEST(CountPath, LayoutMatchesSession) {
  SessionSpec s;
  s.days = 3;
  const CountSeries c = gen_count_path({0.1, 0.2, 1.0 / 23400.0, 0.5, 2.0}, s, 1);
  ASSERT_EQ(c.counts.size(), 3 * 23400);
  ASSERT_EQ(c.day_starts.size(), 3u);
  EXPECT_EQ(c.day_starts[1], 23400);
  EXPECT_TRUE((c.counts >= 0.0).all());
  EXPECT_TRUE((c.counts == c.counts.round()).all());
}

TEST(CountPath, PureSignalMeanAndDispersion) {
  const ModelParams p{0.5, 0.0, 1.0 / 23400.0, 0.0, 1.0};
  SessionSpec s;
  s.days = 10;
  const CountSeries c = gen_count_path(p, s, 4);
  const double n = static_cast<double>(c.counts.size());
  EXPECT_NEAR(c.counts.mean(), 0.5, 4.0 * std::sqrt(0.5 / n));
  EXPECT_NEAR(variance(c.counts) / c.counts.mean(), 1.0, 0.01);
}

TEST(CountPath, TotalMatchesLognormalMean) {
  const ModelParams p{0.0283, 0.2880, 1.0 / 23400.0, 0.9554, 1.7};
  const SessionSpec s;
  double expected = 0.0;
  for (Eigen::Index k = 0; k < s.intervals_per_day(); ++k) {
    expected += deterministic_rate(p, static_cast<double>(k));
  }
  expected *= s.days * std::exp(p.sigma * p.sigma / 2.0);
  // Variance of the total: Poisson part plus the integrated lognormal
  // covariance m^2 e^{s^2} (e^{s^2 rho^k} - 1), summed over lags.
  const double m = p.r0 * std::exp(p.sigma * p.sigma / 2.0);
  const double n = static_cast<double>(s.total_intervals());
  double lag_sum = std::expm1(p.sigma * p.sigma);
  for (int k = 1; k < 200; ++k) {
    lag_sum += 2.0 * std::expm1(p.sigma * p.sigma * std::exp(-k / p.tau_c));
  }
  const double se = std::sqrt(expected * std::exp(p.a_s * p.a_s) + n * m * m * lag_sum * 1.1);
  const CountSeries c = gen_count_path(p, s, 42);
  EXPECT_NEAR(c.counts.sum(), expected, 3.0 * se);
}

TEST(CountPath, Deterministic) {
  const ModelParams p{0.0946, 0.2856, 1.0 / 23400.0, 0.6839, 2.6};
  const SessionSpec s = one_day();
  EXPECT_TRUE((gen_count_path(p, s, 5).counts == gen_count_path(p, s, 5).counts).all());
  EXPECT_FALSE((gen_count_path(p, s, 5).counts == gen_count_path(p, s, 6).counts).all());
}

TEST(CountPath, RestartNoiseEachDayChangesPath) {
  const ModelParams p{0.2, 0.0, 1.0 / 23400.0, 1.0, 50.0};
  SessionSpec a;
  a.days = 2;
  SessionSpec b = a;
  b.restart_noise_each_day = true;
  const CountSeries ca = gen_count_path(p, a, 8);
  const CountSeries cb = gen_count_path(p, b, 8);
  // Same draws, so day 0 is shared and day 1 differs.
  EXPECT_TRUE((ca.counts.head(23400) == cb.counts.head(23400)).all());
  EXPECT_FALSE((ca.counts.tail(23400) == cb.counts.tail(23400)).all());
}

TEST(Ticks, RoundTripToCounts) {
  const ModelParams p{0.0283, 0.2880, 1.0 / 23400.0, 0.9554, 1.7};
  SessionSpec s;
  s.days = 2;
  const CountSeries c = gen_count_path(p, s, 3);
  const std::vector<TickRecord> ticks = ticks_from_counts(c, s, 3, "AEP");
  ASSERT_EQ(static_cast<double>(ticks.size()), c.counts.sum());
  for (std::size_t i = 1; i < ticks.size(); ++i) {
    const bool ordered = ticks[i - 1].day_index < ticks[i].day_index ||
                         (ticks[i - 1].day_index == ticks[i].day_index &&
                          ticks[i - 1].t <= ticks[i].t);
    ASSERT_TRUE(ordered) << "at " << i;
  }
  EXPECT_EQ(ticks.front().symbol, "AEP");
  const CountSeries back = count_series_from_ticks(ticks, s);
  EXPECT_TRUE((back.counts == c.counts).all());
}

TEST(Ticks, GenTicksDeterministic) {
  const ModelParams p{0.05, 0.1, 1.0 / 23400.0, 0.5, 3.0};
  const SessionSpec s = one_day();
  EXPECT_EQ(gen_ticks(p, s, 77), gen_ticks(p, s, 77));
}

TEST(Ticks, OutOfSessionRejected) {
  const SessionSpec s = one_day();
  EXPECT_THROW(count_series_from_ticks({{0, 23400.0, "X"}}, s), InvalidArgument);
  EXPECT_THROW(count_series_from_ticks({{1, 10.0, "X"}}, s), InvalidArgument);
  EXPECT_THROW(count_series_from_ticks({{0, -0.5, "X"}}, s), InvalidArgument);
}

TEST(SampleAutocorr, SparseMatchesDense) {
  const ModelParams p{0.05, 0.0, 1.0 / 23400.0, 1.0, 4.0};
  const CountSeries c = gen_count_path(p, one_day(), 21);
  ASSERT_LT((c.counts != 0.0).count() * 4, c.counts.size());
  const Eigen::ArrayXd sparse = sample_autocorr(c.counts, 40);
  const Eigen::ArrayXd dense = dense_autocorr(c.counts, 40);
  ASSERT_EQ(sparse.size(), 40);
  EXPECT_LT((sparse - dense).abs().maxCoeff(), 1e-12);
}

TEST(SampleAutocorr, ConstantSeriesIsEmpty) {
  EXPECT_EQ(sample_autocorr(Eigen::ArrayXd::Zero(100), 5).size(), 0);
  EXPECT_EQ(sample_autocorr(Eigen::ArrayXd::Constant(100, 2.0), 5).size(), 0);
}

TEST(SampleAutocorr, RejectsBadLag) {
  EXPECT_THROW(sample_autocorr(Eigen::ArrayXd::Ones(10), 0), InvalidArgument);
  EXPECT_THROW(sample_autocorr(Eigen::ArrayXd::Ones(10), 10), InvalidArgument);
}

TEST(SampleAutocorr, KnownSequence) {
  Eigen::ArrayXd x(4);
  x << 1.0, 2.0, 3.0, 4.0;
  // centered: -1.5 -0.5 0.5 1.5; c0 = 5; c1 = 0.75 + -0.25 + 0.75 = 1.25
  const Eigen::ArrayXd acf = dense_autocorr(x, 2);
  EXPECT_NEAR(acf(0), 0.25, 1e-15);
  EXPECT_NEAR(acf(1), (-1.5 * 0.5 + -0.5 * 1.5) / 5.0, 1e-15);
}

TEST(AnalyticAutocov, PoissonLimit) {
  EXPECT_NEAR(analytic_count_autocov(0.3, 0.0, 5.0, 1.0, 0.0), 0.3, 1e-15);
  EXPECT_EQ(analytic_count_autocov(0.3, 0.0, 5.0, 1.0, 3.0), 0.0);
  EXPECT_THROW(analytic_count_autocov(0.3, 0.5, 5.0, 1.0, -1.0), InvalidArgument);
}

TEST(McAutocorr, MatchesAnalytic) {
  const ModelParams p{1.0, 0.0, 1.0 / 23400.0, 1.0, 5.0};
  const AutocorrFn acf = mc_autocorr(p, one_day(), 50, 15, 2024);
  const double c0 = analytic_count_autocov(1.0, 1.0, 5.0, 1.0, 0.0);
  for (int lag = 1; lag <= 15; ++lag) {
    const double expected = analytic_count_autocov(1.0, 1.0, 5.0, 1.0, lag) / c0;
    EXPECT_NEAR(acf.values(lag - 1), expected, 0.1 * expected) << "lag=" << lag;
  }
  EXPECT_EQ(acf.sample_count, 50 * 23400);
  EXPECT_NEAR(acf.noise_floor, 3.0 / std::sqrt(50.0 * 23400.0), 1e-15);
  EXPECT_DOUBLE_EQ(acf.lags(0), 1.0);
  EXPECT_DOUBLE_EQ(acf.lags(14), 15.0);
}

TEST(McAutocorr, Deterministic) {
  const ModelParams p{0.1, 0.2, 1.0 / 23400.0, 0.7, 3.0};
  const AutocorrFn a = mc_autocorr(p, one_day(), 3, 20, 9);
  const AutocorrFn b = mc_autocorr(p, one_day(), 3, 20, 9);
  EXPECT_TRUE((a.values == b.values).all());
}

TEST(NormalRule, IntegratesMoments) {
  const NormalRule rule = normal_trapezoid_rule(401);
  EXPECT_NEAR(rule.weights.sum(), 1.0, 1e-14);
  EXPECT_NEAR((rule.weights * rule.nodes).sum(), 0.0, 1e-14);
  EXPECT_NEAR((rule.weights * rule.nodes.square()).sum(), 1.0, 1e-13);
  EXPECT_NEAR((rule.weights * rule.nodes.pow(4)).sum(), 3.0, 1e-12);
  // Jensen: E[exp(sigma Z)] = exp(sigma^2 / 2).
  const double s = 1.3;
  EXPECT_NEAR((rule.weights * (s * rule.nodes).exp()).sum(), std::exp(s * s / 2.0), 1e-12);
}

TEST(NormalRule, PointsGrowWithSigma) {
  EXPECT_EQ(normal_rule_for_sigma(0.0).nodes.size(), 801);
  EXPECT_EQ(normal_rule_for_sigma(0.5).nodes.size(), 801);
  EXPECT_EQ(normal_rule_for_sigma(2.2).nodes.size(), 1601);
}

TEST(GoldenSection, FindsParabolaMinimum) {
  const Minimum m =
      golden_section_minimize([](double x) { return (x - 0.7) * (x - 0.7) + 2.0; }, 0.0, 3.0,
                              1e-6);
  EXPECT_NEAR(m.x, 0.7, 1e-6);
  EXPECT_NEAR(m.value, 2.0, 1e-12);
  EXPECT_GT(m.evaluations, 0);
}

TEST(GoldenSection, MonotoneEndsAtBound) {
  const Minimum m = golden_section_minimize([](double x) { return x; }, 1.0, 2.0, 1e-4);
  EXPECT_EQ(m.x, 1.0);
}
