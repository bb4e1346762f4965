#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "aoi/extended_real.hpp"
#include "aoi/random.hpp"

namespace aoi {

enum class ServiceFamily { Deterministic, Exponential, LogNormal, Pareto, Weibull };

std::string_view to_string(ServiceFamily family);
ServiceFamily parse_service_family(std::string_view name);
/// Name of the shape keyword ("sigma", "alpha", "k"), empty for det/exp.
std::string_view shape_keyword(ServiceFamily family);
bool has_shape(ServiceFamily family);

struct Moments {
  double mean;
  ExtendedReal second;
};

/// Service-time law with mean pinned to 1/mu for every admissible shape.
///
///   LogNormal  S = exp(-log(mu) - sigma^2/2 + sigma N),  sigma > 0
///   Pareto     P(S > x) = (theta/x)^alpha for x > theta,
///              theta = (alpha - 1) / (mu alpha),          alpha > 1
///   Weibull    P(S > x) = exp(-(x/beta)^k),
///              beta = 1 / (mu Gamma(1 + 1/k)),             k > 0
///
/// Parameters are validated on construction; a constructed object is
/// immutable and safe to share between threads.
class ServiceDistribution {
 public:
  static ServiceDistribution deterministic(double mu);
  static ServiceDistribution exponential(double mu);
  static ServiceDistribution lognormal(double mu, double sigma);
  static ServiceDistribution pareto(double mu, double alpha);
  static ServiceDistribution weibull(double mu, double k);
  static ServiceDistribution make(ServiceFamily family, double mu,
                                  std::optional<double> shape = std::nullopt);

  ServiceFamily family() const { return family_; }
  double mu() const { return mu_; }
  std::optional<double> shape() const { return shape_; }

  /// theta for Pareto, beta for Weibull, the log-location for LogNormal,
  /// 1/mu otherwise.
  double scale() const { return scale_; }

  double sample(RandomStream& rng) const;

  double mean() const { return 1.0 / mu_; }
  ExtendedReal second_moment() const;
  ExtendedReal variance() const;
  Moments moments() const { return {mean(), second_moment()}; }
  double median() const;

  /// P(S > x).
  double tail_prob(double x) const;
  /// E[min(S, x)] = integral of P(S > t) over [0, x]. x may be +inf.
  double expected_min_with(double x) const;
  /// E[S 1{S < x}] = E[min(S, x)] - x P(S > x).
  double truncated_mean_below(double x) const;

  /// e.g. "pareto alpha=1.5".
  std::string describe() const;

 private:
  ServiceDistribution(ServiceFamily family, double mu, std::optional<double> shape);

  ServiceFamily family_;
  double mu_;
  std::optional<double> shape_;
  double scale_;
};

enum class ArrivalFamily { Deterministic, Exponential };

std::string_view to_string(ArrivalFamily family);

/// Renewal generation process with E[X] = 1/lambda.
class ArrivalProcess {
 public:
  static ArrivalProcess deterministic(double lambda);
  static ArrivalProcess exponential(double lambda);
  static ArrivalProcess make(ArrivalFamily family, double lambda);

  ArrivalFamily family() const { return family_; }
  double lambda() const { return lambda_; }

  double sample(RandomStream& rng) const;
  double mean() const { return 1.0 / lambda_; }
  double second_moment() const;

  std::string describe() const;

 private:
  ArrivalProcess(ArrivalFamily family, double lambda) : family_(family), lambda_(lambda) {}

  ArrivalFamily family_;
  double lambda_;
};

/// Parses "det", "exp", "pareto alpha=1.5", "lognormal sigma=2",
/// "weibull k=0.5". An optional "mu=..." keyword overrides `default_mu`.
ServiceDistribution parse_service(std::string_view text, double default_mu);

/// Parses "det lambda=0.5" or "exp lambda=0.5".
ArrivalProcess parse_arrival(std::string_view text);

}  // namespace aoi
