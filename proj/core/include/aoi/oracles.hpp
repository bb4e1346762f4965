#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "aoi/distributions.hpp"
#include "aoi/extended_real.hpp"

namespace aoi {

/// Infimum of the average age over all disciplines and service laws:
/// E[X^2] / (2 E[X]).
double a_min(const ArrivalProcess& arrival);

/// Age of the D/D/1 sawtooth: 1/mu + 1/(2 lambda). mu may be +inf.
/// Throws StabilityError unless lambda < mu.
double dd1_age(double lambda, double mu);

/// Pollaczek-Khinchine mean sojourn time
///   (lambda/2) E[S^2] / (1 - rho) + E[S],  rho = lambda/mu.
/// Infinite when E[S^2] is. Throws StabilityError when rho >= 1.
ExtendedReal pk_delay(double lambda, const ServiceDistribution& service);

/// Var(S), the floor on delay variance for any single-server discipline.
ExtendedReal service_variance_lower_bound(const ServiceDistribution& service);

/// One draw of Z = min over l >= 0 of (X_1 + ... + X_l + S_{l+1}).
struct MinTermDraw {
  double value;
  /// Number of service draws inspected (candidates evaluated).
  std::uint32_t terms;
};

/// Z from pre-drawn sequences: service[l] is S_{l+1}, inter[l] is X_{l+1}.
/// Stops as soon as the running partial sum of X reaches the best candidate,
/// since S >= 0 makes every later candidate at least that large. Also stops
/// when either sequence is exhausted.
MinTermDraw min_term_from(std::span<const double> inter, std::span<const double> service);

/// Z drawn lazily from the two streams with the same early stop.
MinTermDraw min_term_draw(const ArrivalProcess& arrival, const ServiceDistribution& service,
                          RandomStream& inter_rng, RandomStream& service_rng);

struct Estimate {
  double value;
  double std_error;
};

/// Average age of the G/G/inf station: a_min(arrival) + E[Z], with E[Z]
/// estimated from n_samples i.i.d. draws. Throws ParameterError when
/// n_samples < 1000.
Estimate gginf_age_estimate(const ArrivalProcess& arrival, const ServiceDistribution& service,
                            std::uint64_t n_samples, std::uint64_t seed);

/// Table of tail quantities along a shape sweep toward the family's limit
/// (pareto alpha -> 1+, lognormal sigma -> inf, weibull k -> 0+).
struct LimitTable {
  struct Row {
    double shape;
    double x;
    double tail_prob;
    double truncated_mean;
    ExtendedReal second_moment;
  };

  ServiceFamily family;
  double mu;
  std::vector<double> shapes;
  std::vector<double> x_grid;
  std::vector<Row> rows;
  /// e.g. "alpha->1+"; "none" for det/exp.
  std::string limit;
  /// lemma2: both P(S>x) and E[S 1{S<x}] strictly decrease along the sweep
  /// at every x. lemma3: E[S^2] diverges along the sweep.
  bool flag = false;
};

/// Direction of the heavy-tail limit for a family ("none" if it has no shape).
std::string limit_direction(ServiceFamily family);

/// P(S > x) and E[S 1{S < x}] for every (shape, x); rows ordered by shape
/// then x. Every x must be >= 1/lambda. Shapes must move toward the limit;
/// det/exp ignore shapes and yield one constant row per x.
LimitTable lemma2_table(ServiceFamily family, double mu, double lambda,
                        std::span<const double> shapes, std::span<const double> x_grid);

/// E[S^2] along the sweep. Flags divergence when the column is strictly
/// increasing and either reaches the infinite branch or exceeds
/// `threshold` (default 1e6 / mu^2 when threshold <= 0).
LimitTable lemma3_table(ServiceFamily family, double mu, std::span<const double> shapes,
                        double threshold = 0.0);

}  // namespace aoi
