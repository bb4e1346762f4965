#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "aoi/age.hpp"
#include "aoi/simulation.hpp"

namespace aoi {

/// Closed time interval [begin, end].
struct Window {
  double begin;
  double end;
};

struct DelayStats {
  double mean;
  /// Unbiased sample variance.
  double variance;
  std::uint64_t count;
};

/// Exact area under the piecewise-linear age curve on `window`, divided by
/// its length. A segment starting at age a and lasting d contributes
/// a*d + d*d/2. Throws ParameterError on an empty window or one starting
/// before the first breakpoint.
double average_age(std::span<const AgeBreakpoint> breakpoints, Window window);

double compute_average_age(const SimulationTrace& trace, Window window);

/// Delay statistics over every packet generated inside `window`, informative
/// or not. Throws DegenerateSampleError with fewer than two packets.
DelayStats compute_delay_stats(const SimulationTrace& trace, Window window);

/// Fraction of delivered packets that were informative.
double informative_receptions(const SimulationTrace& trace);

/// Index of the first packet kept after discarding the warmup fraction.
std::uint64_t first_counted_packet(const SimulationTrace& trace);

/// [t_a, t_b]: generation time of the first counted packet through the
/// generation time of the last packet. Packets are assigned to windows by
/// generation time; the drain after the last generation is excluded from the
/// age average because no fresh updates arrive during it.
Window steady_state_window(const SimulationTrace& trace);

/// Sufficient statistics of one replication, batched for batch-means
/// confidence intervals. The age window is cut into equal-length batches and
/// the counted packets into equal-count batches.
struct RunSummary {
  std::uint64_t seed = 0;
  double window_length = 0.0;
  double age_area = 0.0;
  std::uint64_t n_counted = 0;
  double delay_mean = 0.0;
  double delay_m2 = 0.0;  // sum of squared deviations from delay_mean
  std::uint64_t n_informative = 0;
  double min_service = 0.0;
  std::vector<double> batch_age;
  std::vector<double> batch_delay_mean;
  std::vector<double> batch_delay_variance;
};

inline constexpr std::size_t kDefaultBatches = 32;

RunSummary summarize_run(const SimulationTrace& trace, std::size_t n_batches = kDefaultBatches);

struct MetricsReport {
  double avg_age = 0.0;
  double mean_delay = 0.0;
  double delay_variance = 0.0;
  double informative_fraction = 0.0;
  std::uint64_t n_counted = 0;
  /// 95% batch-means half-widths (Student t); NaN with fewer than 2 batches.
  double ci_halfwidth_age = 0.0;
  double ci_halfwidth_delay = 0.0;
  double ci_halfwidth_delay_variance = 0.0;
  double stderr_age = 0.0;
  double stderr_delay = 0.0;
  double stderr_delay_variance = 0.0;
  std::size_t n_batches = 0;
  double min_service = 0.0;
  std::vector<std::uint64_t> seeds;
};

/// Pools replications: point estimates from the pooled sums, confidence
/// intervals from all batch means across replications.
MetricsReport combine_runs(std::span<const RunSummary> runs);

MetricsReport compute_metrics(const SimulationTrace& trace,
                              std::size_t n_batches = kDefaultBatches);

/// Two-sided 95% Student t quantile with `dof` degrees of freedom.
double t_quantile_95(std::size_t dof);

}  // namespace aoi
