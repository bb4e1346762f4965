#include "aoi/experiments.hpp"

#include <algorithm>
#include <map>

#include "aoi/errors.hpp"
#include "aoi/parallel.hpp"

namespace aoi {
namespace {

// FNV-1a, used to give each (arrival, service) pair its own oracle stream.
std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

template <typename E>
[[noreturn]] void rethrow_for_point(const E& e, std::size_t index, const ExperimentPoint& p) {
  throw E("grid point " + std::to_string(index) + " (" + p.label() + "): " + e.what());
}

SimulationConfig simulation_config(const SweepConfig& cfg, const ExperimentPoint& p) {
  return {p.arrival, p.service, p.discipline, cfg.n_arrivals, cfg.warmup_fraction};
}

}  // namespace

std::string ExperimentPoint::label() const {
  return std::string(to_string(discipline)) + " " + service.describe() + " | " +
         arrival.describe();
}

std::string ExperimentPoint::series() const {
  return std::string(to_string(discipline)) + "/" + std::string(to_string(service.family()));
}

std::vector<ExperimentPoint> expand_grid(const SweepConfig& cfg) {
  std::vector<ExperimentPoint> points;
  for (const GridGroup& g : cfg.groups) {
    for (const ServiceGrid& s : g.services) {
      std::vector<std::optional<double>> shapes;
      if (has_shape(s.family)) {
        shapes.assign(s.shapes.begin(), s.shapes.end());
      } else {
        shapes.push_back(std::nullopt);
      }
      for (const auto& shape : shapes) {
        std::optional<ServiceDistribution> service;
        try {
          service = ServiceDistribution::make(s.family, g.mu, shape);
        } catch (const ParameterError& e) {
          throw ParameterError("grid '" + g.name + "' service " + std::string(to_string(s.family)) +
                               ": " + e.what());
        }
        for (Discipline d : g.disciplines) points.push_back({g.name, g.arrival, *service, d});
      }
    }
  }
  return points;
}

std::vector<FrontierPoint> run_suite(const SweepConfig& cfg) {
  const std::vector<ExperimentPoint> points = expand_grid(cfg);
  if (points.empty()) throw ParameterError("sweep grid is empty");
  if (cfg.n_reps < 1) throw ParameterError("n_reps must be at least 1");

  for (std::size_t i = 0; i < points.size(); ++i) {
    try {
      validate(simulation_config(cfg, points[i]));
    } catch (const StabilityError& e) {
      rethrow_for_point(e, i, points[i]);
    } catch (const ParameterError& e) {
      rethrow_for_point(e, i, points[i]);
    }
  }

  // Oracle estimates, one per distinct (arrival, service) pair.
  std::map<std::string, Estimate> gginf;
  std::vector<std::string> oracle_keys;
  for (const ExperimentPoint& p : points) {
    const std::string key = p.arrival.describe() + " | " + p.service.describe();
    if (gginf.emplace(key, Estimate{0.0, 0.0}).second) oracle_keys.push_back(key);
  }

  const std::size_t n_reps = cfg.n_reps;
  std::vector<RunSummary> summaries(points.size() * n_reps);
  std::vector<Estimate> estimates(oracle_keys.size(), Estimate{0.0, 0.0});

  parallel_for(oracle_keys.size() + summaries.size(), cfg.threads, [&](std::size_t task) {
    if (task < oracle_keys.size()) {
      const std::string& key = oracle_keys[task];
      const auto it = std::find_if(points.begin(), points.end(), [&](const ExperimentPoint& p) {
        return p.arrival.describe() + " | " + p.service.describe() == key;
      });
      estimates[task] = gginf_age_estimate(it->arrival, it->service, cfg.gginf_samples,
                                           derive_seed(cfg.base_seed, fnv1a(key)));
      return;
    }
    const std::size_t slot = task - oracle_keys.size();
    const ExperimentPoint& p = points[slot / n_reps];
    const std::uint64_t seed = cfg.base_seed + slot % n_reps;
    const SimulationTrace trace = run_simulation(simulation_config(cfg, p), seed);
    summaries[slot] = summarize_run(trace, cfg.batches);
  });
  for (std::size_t k = 0; k < oracle_keys.size(); ++k) gginf[oracle_keys[k]] = estimates[k];

  std::vector<FrontierPoint> results;
  results.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const ExperimentPoint& p = points[i];
    FrontierPoint fp{p, combine_runs(std::span(summaries).subspan(i * n_reps, n_reps)),
                     a_min(p.arrival), std::nullopt,
                     gginf.at(p.arrival.describe() + " | " + p.service.describe()), false};
    if (p.arrival.family() == ArrivalFamily::Exponential && is_single_server(p.discipline)) {
      fp.pk_delay = pk_delay(p.arrival.lambda(), p.service);
    }
    fp.slow_convergence = p.service.family() == ServiceFamily::Pareto && *p.service.shape() < 1.5;
    results.push_back(std::move(fp));
  }
  return results;
}

std::string_view to_string(DelayObjective objective) {
  return objective == DelayObjective::MeanDelay ? "mean_delay" : "delay_variance";
}

double objective_value(const FrontierPoint& p, DelayObjective objective) {
  return objective == DelayObjective::MeanDelay ? p.mean_delay() : p.delay_variance();
}

std::vector<FrontierPoint> pareto_frontier(std::span<const FrontierPoint> points,
                                           DelayObjective objective) {
  std::vector<FrontierPoint> front;
  for (const FrontierPoint& p : points) {
    const double pa = p.avg_age(), pd = objective_value(p, objective);
    const bool dominated = std::any_of(points.begin(), points.end(), [&](const FrontierPoint& q) {
      const double qa = q.avg_age(), qd = objective_value(q, objective);
      return qa <= pa && qd <= pd && (qa < pa || qd < pd);
    });
    if (!dominated) front.push_back(p);
  }
  std::stable_sort(front.begin(), front.end(), [&](const FrontierPoint& a, const FrontierPoint& b) {
    if (a.avg_age() != b.avg_age()) return a.avg_age() < b.avg_age();
    return objective_value(a, objective) < objective_value(b, objective);
  });
  return front;
}

FrontierPoint scalarized_pick(std::span<const FrontierPoint> points, double nu,
                              DelayObjective objective) {
  if (points.empty()) throw ParameterError("scalarized_pick needs at least one point");
  if (!(nu >= 0.0)) throw ParameterError("nu must be nonnegative");
  const auto better = [&](const FrontierPoint& a, const FrontierPoint& b) {
    const double sa = objective_value(a, objective) + nu * a.avg_age();
    const double sb = objective_value(b, objective) + nu * b.avg_age();
    if (sa != sb) return sa < sb;
    if (a.avg_age() != b.avg_age()) return a.avg_age() < b.avg_age();
    if (objective_value(a, objective) != objective_value(b, objective)) {
      return objective_value(a, objective) < objective_value(b, objective);
    }
    return a.label() < b.label();
  };
  return *std::min_element(points.begin(), points.end(), better);
}

}  // namespace aoi
