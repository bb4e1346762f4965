#include "aoi/outputs.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "aoi/errors.hpp"
#include "json.hpp"

namespace aoi {
namespace {

using Json = nlohmann::ordered_json;

Json number_or_string(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

Json extended(const ExtendedReal& v) {
  return v.is_infinite() ? Json("inf") : Json(v.value());
}

Json point_json(const FrontierPoint& p) {
  Json j;
  j["label"] = p.label();
  j["group"] = p.point.group;
  j["discipline"] = to_string(p.point.discipline);
  j["arrival"] = p.point.arrival.describe();
  j["service"] = p.point.service.describe();
  j["lambda"] = p.point.arrival.lambda();
  j["mu"] = p.point.service.mu();
  j["metrics"] = Json::parse(metrics_to_json(p.metrics));
  j["oracles"] = {
      {"a_min", p.a_min},
      {"pk_delay", p.pk_delay ? extended(*p.pk_delay) : Json(nullptr)},
      {"gginf_age", p.gginf.value},
      {"gginf_stderr", p.gginf.std_error},
      {"service_variance", extended(p.point.service.variance())},
  };
  j["flags"] = Json::array();
  if (p.slow_convergence) j["flags"].push_back("slow-convergence");
  return j;
}

Json config_json(const SweepConfig& cfg) {
  Json groups = Json::array();
  for (const GridGroup& g : cfg.groups) {
    Json services = Json::array();
    for (const ServiceGrid& s : g.services) {
      services.push_back({{"family", to_string(s.family)}, {"shapes", s.shapes}});
    }
    Json disciplines = Json::array();
    for (Discipline d : g.disciplines) disciplines.push_back(to_string(d));
    groups.push_back({{"name", g.name},
                      {"arrival", g.arrival.describe()},
                      {"mu", g.mu},
                      {"disciplines", disciplines},
                      {"services", services}});
  }
  return {{"name", cfg.name},
          {"n_arrivals", cfg.n_arrivals},
          {"n_reps", cfg.n_reps},
          {"base_seed", cfg.base_seed},
          {"warmup_fraction", cfg.warmup_fraction},
          {"batches", cfg.batches},
          {"gginf_samples", cfg.gginf_samples},
          {"nu_grid", cfg.nu_grid},
          {"groups", groups}};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_row(const FrontierPoint& p, std::uint64_t n_arrivals, std::uint32_t n_reps,
                    std::uint64_t seed) {
  const ServiceDistribution& s = p.point.service;
  const MetricsReport& m = p.metrics;
  std::ostringstream row;
  row << to_string(p.point.discipline) << ',' << to_string(s.family()) << ','
      << (s.shape() ? format_number(*s.shape()) : "") << ','
      << format_number(p.point.arrival.lambda()) << ',' << format_number(s.mu()) << ','
      << n_arrivals << ',' << n_reps << ',' << seed << ',' << format_number(m.avg_age) << ','
      << format_number(m.ci_halfwidth_age) << ',' << format_number(m.mean_delay) << ','
      << format_number(m.ci_halfwidth_delay) << ',' << format_number(m.delay_variance) << ','
      << format_number(m.informative_fraction) << ',' << format_number(p.a_min) << ','
      << (p.pk_delay ? format_number(p.pk_delay->to_double()) : "") << ','
      << format_number(p.gginf.value);
  return row.str();
}

std::string to_csv(std::span<const FrontierPoint> points, const SweepConfig& cfg) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const FrontierPoint& p : points) {
    out += csv_row(p, cfg.n_arrivals, cfg.n_reps, cfg.base_seed) + "\n";
  }
  return out;
}

std::string metrics_to_json(const MetricsReport& m) {
  const Json j = {
      {"avg_age", number_or_string(m.avg_age)},
      {"mean_delay", number_or_string(m.mean_delay)},
      {"delay_variance", number_or_string(m.delay_variance)},
      {"informative_fraction", number_or_string(m.informative_fraction)},
      {"n_counted", m.n_counted},
      {"ci_halfwidth_age", number_or_string(m.ci_halfwidth_age)},
      {"ci_halfwidth_delay", number_or_string(m.ci_halfwidth_delay)},
      {"ci_halfwidth_delay_variance", number_or_string(m.ci_halfwidth_delay_variance)},
      {"stderr_age", number_or_string(m.stderr_age)},
      {"stderr_delay", number_or_string(m.stderr_delay)},
      {"stderr_delay_variance", number_or_string(m.stderr_delay_variance)},
      {"n_batches", m.n_batches},
      {"seeds", m.seeds},
  };
  return j.dump();
}

std::string to_json(std::span<const FrontierPoint> points, const SweepConfig& cfg) {
  Json doc;
  doc["config"] = config_json(cfg);
  doc["points"] = Json::array();
  for (const FrontierPoint& p : points) doc["points"].push_back(point_json(p));

  for (DelayObjective objective : {DelayObjective::MeanDelay, DelayObjective::DelayVariance}) {
    const std::string key(to_string(objective));
    Json front = Json::array();
    for (const FrontierPoint& p : pareto_frontier(points, objective)) front.push_back(p.label());
    doc["frontier"][key] = front;

    Json picks = Json::array();
    if (!points.empty()) {
      for (double nu : cfg.nu_grid) {
        picks.push_back({{"nu", nu}, {"label", scalarized_pick(points, nu, objective).label()}});
      }
    }
    doc["scalarized"][key] = picks;
  }
  return doc.dump(2) + "\n";
}

std::string plot_script(std::span<const FrontierPoint> points,
                        std::span<const FrontierPoint> frontier, const std::string& title) {
  std::map<std::string, std::vector<const FrontierPoint*>> series;
  std::vector<std::string> order;
  for (const FrontierPoint& p : points) {
    auto [it, inserted] = series.try_emplace(p.point.series());
    if (inserted) order.push_back(it->first);
    it->second.push_back(&p);
  }

  std::ostringstream gp;
  gp << "# gnuplot script: gnuplot -p <this file>\n";
  gp << "set title \"" << title << "\"\n";
  gp << "set xlabel \"average age\"\nset ylabel \"mean delay\"\n";
  gp << "set key outside right\nset grid\n\n";
  for (std::size_t s = 0; s < order.size(); ++s) {
    gp << "$series" << s << " << EOD\n";
    gp << "# " << order[s] << "\n";
    for (const FrontierPoint* p : series.at(order[s])) {
      gp << format_number(p->avg_age()) << ' ' << format_number(p->mean_delay()) << "  # "
         << p->label() << "\n";
    }
    gp << "EOD\n";
  }
  gp << "$frontier << EOD\n";
  for (const FrontierPoint& p : frontier) {
    gp << format_number(p.avg_age()) << ' ' << format_number(p.mean_delay()) << "\n";
  }
  gp << "EOD\n\nplot \\\n";
  for (std::size_t s = 0; s < order.size(); ++s) {
    gp << "  $series" << s << " using 1:2 with points pt " << (s % 13) + 1 << " title \""
       << order[s] << "\", \\\n";
  }
  gp << "  $frontier using 1:2 with lines dt 2 lc rgb \"black\" title \"frontier\"\n";
  return gp.str();
}

void emit_outputs(std::span<const FrontierPoint> points, std::span<const FrontierPoint> frontier,
                  const SweepConfig& cfg, const OutputPaths& paths) {
  if (!paths.csv.empty()) write_file(paths.csv, to_csv(points, cfg));
  if (!paths.json.empty()) write_file(paths.json, to_json(points, cfg));
  if (!paths.plot.empty()) write_file(paths.plot, plot_script(points, frontier, cfg.name));
}

}  // namespace aoi
