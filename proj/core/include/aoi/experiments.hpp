#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aoi/config.hpp"
#include "aoi/metrics.hpp"
#include "aoi/oracles.hpp"
#include "aoi/simulation.hpp"

namespace aoi {

struct ExperimentPoint {
  std::string group;
  ArrivalProcess arrival;
  ServiceDistribution service;
  Discipline discipline;

  /// "lcfs-p pareto alpha=1.5 | exp lambda=0.5"
  std::string label() const;
  /// Plot series key, "lcfs-p/pareto".
  std::string series() const;
};

/// Points in config order: group, then service line, then shape, then
/// discipline.
std::vector<ExperimentPoint> expand_grid(const SweepConfig& cfg);

struct FrontierPoint {
  ExperimentPoint point;
  MetricsReport metrics;
  double a_min = 0.0;
  /// Set for Poisson arrivals on single-server stations.
  std::optional<ExtendedReal> pk_delay;
  Estimate gginf{0.0, 0.0};
  /// Pareto with alpha < 1.5: sample means converge too slowly for CI claims.
  bool slow_convergence = false;

  std::string label() const { return point.label(); }
  double avg_age() const { return metrics.avg_age; }
  double mean_delay() const { return metrics.mean_delay; }
  double delay_variance() const { return metrics.delay_variance; }
};

/// Simulates every grid point over n_reps replications (seeds base_seed + r,
/// shared by all points so disciplines are coupled) and aggregates them.
/// Output order and values do not depend on cfg.threads. Stability and
/// parameter errors are rethrown naming the offending point.
std::vector<FrontierPoint> run_suite(const SweepConfig& cfg);

enum class DelayObjective { MeanDelay, DelayVariance };

std::string_view to_string(DelayObjective objective);
double objective_value(const FrontierPoint& p, DelayObjective objective);

/// Non-dominated subset under componentwise <= on (avg_age, objective),
/// sorted by avg_age ascending.
std::vector<FrontierPoint> pareto_frontier(std::span<const FrontierPoint> points,
                                           DelayObjective objective);

/// Minimizer of objective + nu * avg_age; ties go to lower avg_age, then
/// lower objective, then label order.
FrontierPoint scalarized_pick(std::span<const FrontierPoint> points, double nu,
                              DelayObjective objective);

}  // namespace aoi
