#include "aoi/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/distributions/students_t.hpp>

#include "aoi/errors.hpp"

namespace aoi {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double segment_area(double start_age, double length) {
  return start_age * length + 0.5 * length * length;
}

// Area under the age curve on [a, b].
double age_area(std::span<const AgeBreakpoint> bps, double a, double b) {
  auto it = std::upper_bound(bps.begin(), bps.end(), a,
                             [](double value, const AgeBreakpoint& bp) { return value < bp.time; });
  double t = a;
  double age = std::prev(it)->age + (a - std::prev(it)->time);
  double area = 0.0;
  for (; it != bps.end() && it->time < b; ++it) {
    area += segment_area(age, it->time - t);
    t = it->time;
    age = it->age;
  }
  return area + segment_area(age, b - t);
}

struct Accumulator {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : kNaN; }
};

// Mean and unbiased standard deviation of a sample.
std::pair<double, double> mean_sd(std::span<const double> xs) {
  Accumulator acc;
  for (double x : xs) acc.add(x);
  return {acc.mean, std::sqrt(acc.variance())};
}

std::pair<std::size_t, std::size_t> generated_range(const SimulationTrace& trace, Window w) {
  const auto& pk = trace.packets;
  auto lo = std::lower_bound(pk.begin(), pk.end(), w.begin,
                             [](const Packet& p, double t) { return p.gen_time < t; });
  auto hi = std::upper_bound(lo, pk.end(), w.end,
                             [](double t, const Packet& p) { return t < p.gen_time; });
  return {static_cast<std::size_t>(lo - pk.begin()), static_cast<std::size_t>(hi - pk.begin())};
}

}  // namespace

double average_age(std::span<const AgeBreakpoint> breakpoints, Window window) {
  if (!(window.begin < window.end)) {
    throw ParameterError("empty age window [" + std::to_string(window.begin) + ", " +
                         std::to_string(window.end) + "]");
  }
  if (breakpoints.empty() || window.begin < breakpoints.front().time) {
    throw ParameterError("age window starts before the first breakpoint");
  }
  return age_area(breakpoints, window.begin, window.end) / (window.end - window.begin);
}

double compute_average_age(const SimulationTrace& trace, Window window) {
  if (window.end > trace.horizon) {
    throw ParameterError("age window ends after the trace horizon");
  }
  return average_age(trace.age_breakpoints, window);
}

DelayStats compute_delay_stats(const SimulationTrace& trace, Window window) {
  const auto [lo, hi] = generated_range(trace, window);
  if (hi - lo < 2) {
    throw DegenerateSampleError("delay statistics need at least 2 packets, window holds " +
                                std::to_string(hi - lo));
  }
  Accumulator acc;
  for (std::size_t i = lo; i < hi; ++i) acc.add(trace.packets[i].delay());
  return {acc.mean, acc.variance(), acc.n};
}

double informative_receptions(const SimulationTrace& trace) {
  if (trace.packets.empty()) throw DegenerateSampleError("trace has no delivered packets");
  const auto informative = std::count_if(trace.packets.begin(), trace.packets.end(),
                                         [](const Packet& p) { return p.informative; });
  return static_cast<double>(informative) / static_cast<double>(trace.packets.size());
}

std::uint64_t first_counted_packet(const SimulationTrace& trace) {
  const double n = static_cast<double>(trace.packets.size());
  return static_cast<std::uint64_t>(std::floor(trace.config.warmup_fraction * n));
}

Window steady_state_window(const SimulationTrace& trace) {
  const std::uint64_t first = first_counted_packet(trace);
  if (trace.packets.size() < first + 2) {
    throw DegenerateSampleError("fewer than 2 packets remain after warmup");
  }
  return {trace.packets[first].gen_time, trace.packets.back().gen_time};
}

RunSummary summarize_run(const SimulationTrace& trace, std::size_t n_batches) {
  const Window window = steady_state_window(trace);
  const std::size_t first = first_counted_packet(trace);
  const std::size_t count = trace.packets.size() - first;

  RunSummary s;
  s.seed = trace.seed;
  s.window_length = window.end - window.begin;
  s.age_area = age_area(trace.age_breakpoints, window.begin, window.end);
  s.n_counted = count;

  Accumulator all;
  double min_service = std::numeric_limits<double>::infinity();
  for (std::size_t i = first; i < trace.packets.size(); ++i) {
    const Packet& p = trace.packets[i];
    all.add(p.delay());
    if (p.informative) ++s.n_informative;
    min_service = std::min(min_service, p.service_req);
  }
  s.delay_mean = all.mean;
  s.delay_m2 = all.m2;
  s.min_service = min_service;

  const std::size_t batches = std::min(n_batches, count / 2);
  if (batches < 2) return s;

  const double width = s.window_length / static_cast<double>(batches);
  for (std::size_t b = 0; b < batches; ++b) {
    const double a = window.begin + width * static_cast<double>(b);
    const double e = b + 1 == batches ? window.end : a + width;
    s.batch_age.push_back(age_area(trace.age_breakpoints, a, e) / (e - a));

    Accumulator acc;
    const std::size_t lo = first + count * b / batches;
    const std::size_t hi = first + count * (b + 1) / batches;
    for (std::size_t i = lo; i < hi; ++i) acc.add(trace.packets[i].delay());
    s.batch_delay_mean.push_back(acc.mean);
    s.batch_delay_variance.push_back(acc.variance());
  }
  return s;
}

double t_quantile_95(std::size_t dof) {
  const boost::math::students_t dist(static_cast<double>(dof));
  return boost::math::quantile(boost::math::complement(dist, 0.025));
}

MetricsReport combine_runs(std::span<const RunSummary> runs) {
  if (runs.empty()) throw DegenerateSampleError("no replications to combine");

  MetricsReport r;
  double area = 0.0, length = 0.0;
  std::uint64_t informative = 0;
  Accumulator pooled;
  std::vector<double> ages, delays, variances;
  r.min_service = std::numeric_limits<double>::infinity();

  for (const RunSummary& s : runs) {
    area += s.age_area;
    length += s.window_length;
    informative += s.n_informative;
    r.min_service = std::min(r.min_service, s.min_service);
    r.seeds.push_back(s.seed);
    // Chan et al. pairwise combination of (n, mean, M2).
    if (s.n_counted > 0) {
      const double n_a = static_cast<double>(pooled.n);
      const double n_b = static_cast<double>(s.n_counted);
      const double delta = s.delay_mean - pooled.mean;
      const double n = n_a + n_b;
      pooled.mean += delta * n_b / n;
      pooled.m2 += s.delay_m2 + delta * delta * n_a * n_b / n;
      pooled.n += s.n_counted;
    }
    ages.insert(ages.end(), s.batch_age.begin(), s.batch_age.end());
    delays.insert(delays.end(), s.batch_delay_mean.begin(), s.batch_delay_mean.end());
    variances.insert(variances.end(), s.batch_delay_variance.begin(),
                     s.batch_delay_variance.end());
  }

  r.avg_age = area / length;
  r.mean_delay = pooled.mean;
  r.delay_variance = pooled.variance();
  r.n_counted = pooled.n;
  r.informative_fraction = static_cast<double>(informative) / static_cast<double>(pooled.n);
  r.n_batches = ages.size();

  if (r.n_batches < 2) {
    r.ci_halfwidth_age = r.ci_halfwidth_delay = r.ci_halfwidth_delay_variance = kNaN;
    r.stderr_age = r.stderr_delay = r.stderr_delay_variance = kNaN;
    return r;
  }
  const double root_b = std::sqrt(static_cast<double>(r.n_batches));
  const double t = t_quantile_95(r.n_batches - 1);
  r.stderr_age = mean_sd(ages).second / root_b;
  r.stderr_delay = mean_sd(delays).second / root_b;
  r.stderr_delay_variance = mean_sd(variances).second / root_b;
  r.ci_halfwidth_age = t * r.stderr_age;
  r.ci_halfwidth_delay = t * r.stderr_delay;
  r.ci_halfwidth_delay_variance = t * r.stderr_delay_variance;
  return r;
}

MetricsReport compute_metrics(const SimulationTrace& trace, std::size_t n_batches) {
  const RunSummary s = summarize_run(trace, n_batches);
  return combine_runs(std::span<const RunSummary>(&s, 1));
}

}  // namespace aoi
