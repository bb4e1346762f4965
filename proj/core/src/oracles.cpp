#include "aoi/oracles.hpp"

#include <cmath>
#include <limits>

#include "aoi/errors.hpp"

namespace aoi {

double a_min(const ArrivalProcess& arrival) {
  return arrival.second_moment() / (2.0 * arrival.mean());
}

double dd1_age(double lambda, double mu) {
  if (!(lambda > 0.0) || !(lambda < mu)) {
    throw StabilityError("dd1_age requires 0 < lambda < mu");
  }
  return 1.0 / mu + 1.0 / (2.0 * lambda);
}

ExtendedReal pk_delay(double lambda, const ServiceDistribution& service) {
  const double rho = lambda / service.mu();
  if (!(lambda > 0.0) || !(rho < 1.0)) {
    throw StabilityError("pk_delay requires rho = lambda/mu < 1, got " + std::to_string(rho));
  }
  const ExtendedReal second = service.second_moment();
  if (second.is_infinite()) return ExtendedReal::infinite();
  return ExtendedReal::finite(0.5 * lambda * second.value() / (1.0 - rho) + service.mean());
}

ExtendedReal service_variance_lower_bound(const ServiceDistribution& service) {
  return service.variance();
}

MinTermDraw min_term_from(std::span<const double> inter, std::span<const double> service) {
  if (service.empty()) throw ParameterError("min_term_from needs at least one service draw");
  double best = service[0];
  double partial = 0.0;
  std::uint32_t terms = 1;
  for (std::size_t l = 1; l < service.size() && l <= inter.size(); ++l) {
    partial += inter[l - 1];
    if (partial >= best) break;
    best = std::min(best, partial + service[l]);
    ++terms;
  }
  return {best, terms};
}

MinTermDraw min_term_draw(const ArrivalProcess& arrival, const ServiceDistribution& service,
                          RandomStream& inter_rng, RandomStream& service_rng) {
  double best = service.sample(service_rng);
  double partial = 0.0;
  std::uint32_t terms = 1;
  for (;;) {
    partial += arrival.sample(inter_rng);
    if (partial >= best) break;
    best = std::min(best, partial + service.sample(service_rng));
    ++terms;
  }
  return {best, terms};
}

Estimate gginf_age_estimate(const ArrivalProcess& arrival, const ServiceDistribution& service,
                            std::uint64_t n_samples, std::uint64_t seed) {
  if (n_samples < 1000) throw ParameterError("gginf_age_estimate needs n_samples >= 1000");
  RandomStream inter_rng(derive_seed(seed, 0));
  RandomStream service_rng(derive_seed(seed, 1));
  double mean = 0.0, m2 = 0.0;
  for (std::uint64_t i = 1; i <= n_samples; ++i) {
    const double z = min_term_draw(arrival, service, inter_rng, service_rng).value;
    const double d = z - mean;
    mean += d / static_cast<double>(i);
    m2 += d * (z - mean);
  }
  const double n = static_cast<double>(n_samples);
  return {a_min(arrival) + mean, std::sqrt(m2 / (n - 1.0) / n)};
}

std::string limit_direction(ServiceFamily family) {
  switch (family) {
    case ServiceFamily::Pareto: return "alpha->1+";
    case ServiceFamily::LogNormal: return "sigma->inf";
    case ServiceFamily::Weibull: return "k->0+";
    default: return "none";
  }
}

namespace {

// Pareto and Weibull sweep downward, lognormal upward.
void check_sweep_order(ServiceFamily family, std::span<const double> shapes) {
  if (!has_shape(family)) return;
  if (shapes.empty()) throw ParameterError("shape grid is empty");
  const bool upward = family == ServiceFamily::LogNormal;
  for (std::size_t i = 1; i < shapes.size(); ++i) {
    const bool ok = upward ? shapes[i] > shapes[i - 1] : shapes[i] < shapes[i - 1];
    if (!ok) {
      throw ParameterError("shape grid must move toward " + limit_direction(family));
    }
  }
}

std::vector<double> effective_shapes(ServiceFamily family, std::span<const double> shapes) {
  if (has_shape(family)) return {shapes.begin(), shapes.end()};
  return {std::numeric_limits<double>::quiet_NaN()};
}

ServiceDistribution at_shape(ServiceFamily family, double mu, double shape) {
  return has_shape(family) ? ServiceDistribution::make(family, mu, shape)
                           : ServiceDistribution::make(family, mu);
}

}  // namespace

LimitTable lemma2_table(ServiceFamily family, double mu, double lambda,
                        std::span<const double> shapes, std::span<const double> x_grid) {
  check_sweep_order(family, shapes);
  if (x_grid.empty()) throw ParameterError("x grid is empty");
  for (double x : x_grid) {
    if (x < 1.0 / lambda) {
      throw ParameterError("x=" + std::to_string(x) + " lies below 1/lambda=" +
                           std::to_string(1.0 / lambda));
    }
  }

  LimitTable table{family, mu, {}, {x_grid.begin(), x_grid.end()}, {}, limit_direction(family),
                   false};
  table.shapes = effective_shapes(family, shapes);
  for (double shape : table.shapes) {
    const ServiceDistribution d = at_shape(family, mu, shape);
    for (double x : x_grid) {
      table.rows.push_back({shape, x, d.tail_prob(x), d.truncated_mean_below(x),
                            d.second_moment()});
    }
  }

  const std::size_t nx = x_grid.size();
  bool decreasing = table.shapes.size() >= 2;
  for (std::size_t i = nx; i < table.rows.size() && decreasing; ++i) {
    const auto& prev = table.rows[i - nx];
    const auto& cur = table.rows[i];
    decreasing = cur.tail_prob < prev.tail_prob && cur.truncated_mean < prev.truncated_mean;
  }
  table.flag = decreasing;
  return table;
}

LimitTable lemma3_table(ServiceFamily family, double mu, std::span<const double> shapes,
                        double threshold) {
  check_sweep_order(family, shapes);
  if (threshold <= 0.0) threshold = 1e6 / (mu * mu);

  LimitTable table{family, mu, {}, {}, {}, limit_direction(family), false};
  table.shapes = effective_shapes(family, shapes);
  for (double shape : table.shapes) {
    const ServiceDistribution d = at_shape(family, mu, shape);
    table.rows.push_back({shape, std::numeric_limits<double>::quiet_NaN(),
                          std::numeric_limits<double>::quiet_NaN(),
                          std::numeric_limits<double>::quiet_NaN(), d.second_moment()});
  }

  bool increasing = table.rows.size() >= 2;
  for (std::size_t i = 1; i < table.rows.size() && increasing; ++i) {
    const ExtendedReal prev = table.rows[i - 1].second_moment;
    const ExtendedReal cur = table.rows[i].second_moment;
    // Once the infinite branch is reached it stays there.
    increasing = prev.is_infinite() ? cur.is_infinite()
                                    : (cur.is_infinite() || cur.value() > prev.value());
  }
  const ExtendedReal last = table.rows.back().second_moment;
  table.flag = increasing && (last.is_infinite() || last.value() > threshold);
  return table;
}

}  // namespace aoi
