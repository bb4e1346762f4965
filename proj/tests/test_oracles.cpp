#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "aoi/errors.hpp"
#include "aoi/metrics.hpp"
#include "aoi/oracles.hpp"
#include "aoi/random.hpp"
#include "test_helpers.hpp"

namespace {

using aoi::ArrivalProcess;
using aoi::ServiceDistribution;
using aoi::ServiceFamily;

constexpr double kInf = std::numeric_limits<double>::infinity();

double pareto_scale(double mu, double alpha) { return (alpha - 1.0) / (mu * alpha); }

TEST(AMin, ExponentialAndDeterministic) {
  EXPECT_DOUBLE_EQ(aoi::a_min(ArrivalProcess::exponential(0.5)), 2.0);
  EXPECT_DOUBLE_EQ(aoi::a_min(ArrivalProcess::deterministic(0.5)), 1.0);
  EXPECT_LT(aoi::a_min(ArrivalProcess::deterministic(0.3)), aoi::a_min(ArrivalProcess::exponential(0.3)));
}

TEST(PkDelay, ClosedForms) {
  EXPECT_NEAR(aoi::pk_delay(0.5, ServiceDistribution::exponential(0.8)).value(), 1.0 / 0.3, 1e-12);
  EXPECT_NEAR(aoi::pk_delay(0.5, ServiceDistribution::deterministic(0.8)).value(),
              0.5 * 1.5625 / (2.0 * 0.375) + 1.25, 1e-12);
  EXPECT_TRUE(aoi::pk_delay(0.5, ServiceDistribution::pareto(0.8, 2.0)).is_infinite());
  const double theta = pareto_scale(0.8, 3.0);
  EXPECT_NEAR(aoi::pk_delay(0.5, ServiceDistribution::pareto(0.8, 3.0)).value(),
              0.5 * (3.0 * theta * theta / 1.0) / (2.0 * 0.375) + 1.25, 1e-12);
}

TEST(PkDelay, RejectsUnstableLoad) {
  EXPECT_THROW(aoi::pk_delay(0.8, ServiceDistribution::exponential(0.8)), aoi::StabilityError);
  EXPECT_THROW(aoi::pk_delay(0.9, ServiceDistribution::exponential(0.8)), aoi::StabilityError);
}

TEST(DD1Age, Values) {
  EXPECT_DOUBLE_EQ(aoi::dd1_age(0.5, 0.8), 2.25);
  EXPECT_DOUBLE_EQ(aoi::dd1_age(0.5, kInf), 1.0);
  EXPECT_DOUBLE_EQ(aoi::dd1_age(0.5, kInf), aoi::a_min(ArrivalProcess::deterministic(0.5)));
  EXPECT_THROW(aoi::dd1_age(0.9, 0.8), aoi::StabilityError);
}

TEST(DD1Age, BelowSimulatedMM1Fcfs) {
  const auto trace = aoi::run_simulation(
      aoi::testing::make_config(aoi::Discipline::Fcfs, ServiceDistribution::exponential(0.8),
                                ArrivalProcess::exponential(0.5), 200'000), 4);
  const auto r = aoi::compute_metrics(trace);
  EXPECT_LT(aoi::dd1_age(0.5, 0.8), r.avg_age - r.ci_halfwidth_age);
}

TEST(ServiceVarianceBound, Values) {
  EXPECT_NEAR(aoi::service_variance_lower_bound(ServiceDistribution::exponential(0.8)).value(), 1.5625, 1e-12);
  EXPECT_DOUBLE_EQ(aoi::service_variance_lower_bound(ServiceDistribution::deterministic(0.8)).value(), 0.0);
  EXPECT_TRUE(aoi::service_variance_lower_bound(ServiceDistribution::pareto(0.8, 1.5)).is_infinite());
}

TEST(MinTerm, HandComputedSequences) {
  const std::vector<double> inter{1.0, 1.0, 1.0};
  EXPECT_DOUBLE_EQ(aoi::min_term_from(inter, std::vector<double>{5.0, 0.5, 9.0, 9.0}).value, 1.5);
  EXPECT_DOUBLE_EQ(aoi::min_term_from(inter, std::vector<double>{0.2, 0.0, 0.0, 0.0}).value, 0.2);
  // 0.2 is beaten by nothing once the partial sum reaches it.
  EXPECT_EQ(aoi::min_term_from(inter, std::vector<double>{0.2, 0.0, 0.0, 0.0}).terms, 1u);
}

TEST(MinTerm, EarlyStopMatchesBruteForce) {
  const ArrivalProcess arrival = ArrivalProcess::exponential(0.5);
  for (const auto& service : {ServiceDistribution::exponential(0.8), ServiceDistribution::pareto(0.8, 1.2),
                              ServiceDistribution::lognormal(0.8, 2.0)}) {
    aoi::RandomStream rx(11), rs(12);
    std::vector<double> inter(999), serv(1000);
    for (int draw = 0; draw < 10'000; ++draw) {
      for (double& x : inter) x = arrival.sample(rx);
      for (double& s : serv) s = service.sample(rs);
      double brute = serv[0], partial = 0.0;
      for (std::size_t l = 1; l < serv.size(); ++l) {
        partial += inter[l - 1];
        brute = std::min(brute, partial + serv[l]);
      }
      ASSERT_NEAR(aoi::min_term_from(inter, serv).value, brute, 1e-12) << service.describe();
    }
  }
}

TEST(MinTerm, DeterministicServiceNeverBeatsFirstCandidate) {
  const auto service = ServiceDistribution::deterministic(0.8);
  for (const auto& arrival : {ArrivalProcess::deterministic(0.5), ArrivalProcess::exponential(0.5)}) {
    aoi::RandomStream rx(3), rs(4);
    for (int i = 0; i < 2000; ++i) EXPECT_DOUBLE_EQ(aoi::min_term_draw(arrival, service, rx, rs).value, 1.25);
  }
}

TEST(MinTerm, PeriodicArrivalsStopQuickly) {
  // The partial sum passes 1/mu after ceil(lambda/mu) gaps.
  for (double lambda : {0.5, 0.79, 2.0, 10.0}) {
    const auto arrival = ArrivalProcess::deterministic(lambda);
    const auto service = ServiceDistribution::deterministic(0.8);
    aoi::RandomStream rx(3), rs(4);
    const auto d = aoi::min_term_draw(arrival, service, rx, rs);
    EXPECT_LE(d.terms, static_cast<std::uint32_t>(std::ceil(lambda / 0.8)) + 1) << lambda;
  }
}

TEST(GGInf, WithinTrivialBounds) {
  const auto e = aoi::gginf_age_estimate(ArrivalProcess::exponential(0.5), ServiceDistribution::exponential(0.8),
                                         100'000, 1);
  EXPECT_GE(e.value, 2.0);
  EXPECT_LE(e.value, 3.25);
  EXPECT_GT(e.std_error, 0.0);
  EXPECT_LT(e.std_error, 0.01);
}

TEST(GGInf, DeterministicPairIsExact) {
  const auto e = aoi::gginf_age_estimate(ArrivalProcess::deterministic(0.5),
                                         ServiceDistribution::deterministic(0.8), 1000, 9);
  EXPECT_DOUBLE_EQ(e.value, 1.0 + 1.25);
  EXPECT_DOUBLE_EQ(e.std_error, 0.0);
}

TEST(GGInf, ParetoSweepDecreasesTowardFloor) {
  double prev = kInf;
  for (double alpha : {3.0, 2.0, 1.5}) {
    const auto e = aoi::gginf_age_estimate(ArrivalProcess::exponential(0.5),
                                           ServiceDistribution::pareto(0.8, alpha), 200'000, 21);
    EXPECT_LT(e.value + 3.0 * e.std_error, prev) << alpha;
    EXPECT_GT(e.value, 2.0);
    prev = e.value - 3.0 * e.std_error;
  }
}

TEST(GGInf, IsDeterministicGivenSeed) {
  const auto a = aoi::gginf_age_estimate(ArrivalProcess::exponential(0.5), ServiceDistribution::weibull(0.8, 0.5),
                                         5000, 42);
  const auto b = aoi::gginf_age_estimate(ArrivalProcess::exponential(0.5), ServiceDistribution::weibull(0.8, 0.5),
                                         5000, 42);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(GGInf, RejectsSmallSampleCounts) {
  EXPECT_THROW(aoi::gginf_age_estimate(ArrivalProcess::exponential(0.5), ServiceDistribution::exponential(0.8),
                                       999, 1),
               aoi::ParameterError);
}

TEST(GGInf, MatchesSimulatedInfiniteServer) {
  const auto arrival = ArrivalProcess::exponential(0.5);
  const auto service = ServiceDistribution::lognormal(0.8, 1.0);
  const auto e = aoi::gginf_age_estimate(arrival, service, 200'000, 5);
  const auto r = aoi::compute_metrics(aoi::run_simulation(
      aoi::testing::make_config(aoi::Discipline::InfiniteServer, service, arrival, 400'000), 6));
  EXPECT_NEAR(r.avg_age, e.value, 3.0 * std::hypot(r.stderr_age, e.std_error));
}

TEST(Lemma2Table, ParetoValues) {
  const std::vector<double> shapes{1.5, 1.1};
  const std::vector<double> xs{2.0};
  const auto t = aoi::lemma2_table(ServiceFamily::Pareto, 0.8, 0.5, shapes, xs);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.limit, "alpha->1+");
  for (const auto& row : t.rows) {
    const double a = row.shape, th = pareto_scale(0.8, a);
    EXPECT_NEAR(row.tail_prob, std::pow(th / 2.0, a), 1e-12);
    EXPECT_NEAR(row.truncated_mean, a * th / (a - 1.0) * (1.0 - std::pow(th / 2.0, a - 1.0)), 1e-12);
  }
  EXPECT_NEAR(t.rows[0].tail_prob, 0.0951, 1e-4);
  EXPECT_NEAR(t.rows[0].truncated_mean, 0.6794, 1e-4);
  EXPECT_NEAR(t.rows[1].tail_prob, 0.0426, 1e-4);
  EXPECT_NEAR(t.rows[1].truncated_mean, 0.3116, 1e-4);
  EXPECT_TRUE(t.flag);
}

TEST(Lemma2Table, DeterministicHasNoSweep) {
  const std::vector<double> xs{2.0, 4.0};
  const auto t = aoi::lemma2_table(ServiceFamily::Deterministic, 0.8, 0.5, {}, xs);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.limit, "none");
  EXPECT_FALSE(t.flag);
  EXPECT_DOUBLE_EQ(t.rows[0].tail_prob, 0.0);
  EXPECT_DOUBLE_EQ(t.rows[0].truncated_mean, 1.25);
}

TEST(Lemma2Table, WeibullShapeOneIsExponential) {
  const std::vector<double> shapes{1.0};
  const std::vector<double> xs{2.0, 3.0, 10.0};
  const auto w = aoi::lemma2_table(ServiceFamily::Weibull, 0.8, 0.5, shapes, xs);
  const auto e = aoi::lemma2_table(ServiceFamily::Exponential, 0.8, 0.5, {}, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    EXPECT_NEAR(w.rows[i].tail_prob, std::exp(-0.8 * xs[i]), 1e-12);
    EXPECT_NEAR(w.rows[i].tail_prob, e.rows[i].tail_prob, 1e-12);
    EXPECT_NEAR(w.rows[i].truncated_mean, e.rows[i].truncated_mean, 1e-8);
  }
}

TEST(Lemma2Table, RejectsBadGrids) {
  const std::vector<double> shapes{1.5, 1.1};
  const std::vector<double> low_x{1.0};
  EXPECT_THROW(aoi::lemma2_table(ServiceFamily::Pareto, 0.8, 0.5, shapes, low_x), aoi::ParameterError);
  const std::vector<double> backwards{1.1, 1.5};
  const std::vector<double> xs{2.0};
  EXPECT_THROW(aoi::lemma2_table(ServiceFamily::Pareto, 0.8, 0.5, backwards, xs), aoi::ParameterError);
}

TEST(Lemma3Table, ParetoColumn) {
  const std::vector<double> shapes{3.0, 2.5, 2.1, 2.0};
  const auto t = aoi::lemma3_table(ServiceFamily::Pareto, 0.8, shapes);
  ASSERT_EQ(t.rows.size(), 4u);
  for (std::size_t i = 0; i < 3; ++i) {
    const double a = shapes[i], th = pareto_scale(0.8, a);
    EXPECT_NEAR(t.rows[i].second_moment.value(), a * th * th / (a - 2.0), 1e-12);
  }
  EXPECT_TRUE(t.rows[3].second_moment.is_infinite());
  EXPECT_TRUE(t.flag);
}

TEST(Lemma3Table, LognormalColumn) {
  const std::vector<double> shapes{1.0, 2.0};
  const auto t = aoi::lemma3_table(ServiceFamily::LogNormal, 0.8, shapes);
  EXPECT_NEAR(t.rows[0].second_moment.value(), std::exp(1.0) / 0.64, 1e-10);
  EXPECT_NEAR(t.rows[1].second_moment.value(), std::exp(4.0) / 0.64, 1e-9);
  // Increasing but finite and far below the default threshold.
  EXPECT_FALSE(t.flag);
  EXPECT_TRUE(aoi::lemma3_table(ServiceFamily::LogNormal, 0.8, shapes, 50.0).flag);
}

TEST(Lemma3Table, DeterministicIsConstant) {
  const auto t = aoi::lemma3_table(ServiceFamily::Deterministic, 0.8, {});
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_DOUBLE_EQ(t.rows[0].second_moment.value(), 1.5625);
  EXPECT_FALSE(t.flag);
}

}  // namespace
