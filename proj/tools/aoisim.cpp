// aoisim: age/delay simulator and oracle tables.
//
//   aoisim simulate --discipline lcfs-p --service "pareto alpha=1.5"
//   aoisim sweep --config presets/tradeoff-sweep.cfg --csv out.csv
//   aoisim figure1 --csv fig1.csv --json fig1.json --plot fig1.gp
//   aoisim oracle lemma3 --family pareto --shapes 3,2.5,2.1,2

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aoi/config.hpp"
#include "aoi/errors.hpp"
#include "aoi/experiments.hpp"
#include "aoi/oracles.hpp"
#include "aoi/outputs.hpp"

namespace {

struct RunOverrides {
  std::optional<std::uint64_t> n_arrivals;
  std::optional<std::uint32_t> n_reps;
  std::optional<std::uint64_t> seed;
  std::optional<double> warmup;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> gginf_samples;
  std::string csv, json, plot;

  void attach(CLI::App* app) {
    app->add_option("--n-arrivals", n_arrivals, "Packets generated per replication");
    app->add_option("--n-reps", n_reps, "Independent replications per point");
    app->add_option("--seed", seed, "Base seed; replication r uses seed + r");
    app->add_option("--warmup", warmup, "Fraction of arrivals discarded as warmup");
    app->add_option("--threads", threads, "Worker threads (0 = all cores)");
    app->add_option("--gginf-samples", gginf_samples, "Monte-Carlo draws for the G/G/inf oracle");
    app->add_option("--csv", csv, "Write CSV here (default: standard output)");
    app->add_option("--json", json, "Write the JSON results document here");
    app->add_option("--plot", plot, "Write a gnuplot script here");
  }

  void apply(aoi::SweepConfig& cfg) const {
    if (n_arrivals) cfg.n_arrivals = *n_arrivals;
    if (n_reps) cfg.n_reps = *n_reps;
    if (seed) cfg.base_seed = *seed;
    if (warmup) cfg.warmup_fraction = *warmup;
    if (threads) cfg.threads = *threads;
    if (gginf_samples) cfg.gginf_samples = *gginf_samples;
    if (!csv.empty()) cfg.outputs.csv = csv;
    if (!json.empty()) cfg.outputs.json = json;
    if (!plot.empty()) cfg.outputs.plot = plot;
  }
};

void run_and_emit(const aoi::SweepConfig& cfg) {
  const auto points = aoi::run_suite(cfg);
  const auto frontier = aoi::pareto_frontier(points, aoi::DelayObjective::MeanDelay);
  aoi::emit_outputs(points, frontier, cfg, cfg.outputs);
  if (cfg.outputs.csv.empty()) std::cout << aoi::to_csv(points, cfg);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(std::stod(item));
  return out;
}

std::string fmt(double v) { return aoi::format_number(v); }

void print_table(const aoi::LimitTable& t, bool lemma2) {
  if (lemma2) {
    std::cout << "family,mu,shape,x,tail_prob,truncated_mean_below\n";
    for (const auto& r : t.rows) {
      std::cout << aoi::to_string(t.family) << ',' << fmt(t.mu) << ','
                << (std::isnan(r.shape) ? "" : fmt(r.shape)) << ',' << fmt(r.x) << ','
                << fmt(r.tail_prob) << ',' << fmt(r.truncated_mean) << '\n';
    }
    std::cout << "# limit " << t.limit << ", strictly decreasing: " << (t.flag ? "yes" : "no")
              << '\n';
  } else {
    std::cout << "family,mu,shape,second_moment\n";
    for (const auto& r : t.rows) {
      std::cout << aoi::to_string(t.family) << ',' << fmt(t.mu) << ','
                << (std::isnan(r.shape) ? "" : fmt(r.shape)) << ','
                << fmt(r.second_moment.to_double()) << '\n';
    }
    std::cout << "# limit " << t.limit << ", diverging: " << (t.flag ? "yes" : "no") << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Age of information vs. packet delay simulator"};
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Simulate one design point");
  std::string arrival_spec = "exp lambda=0.5";
  std::string service_spec = "exp";
  std::string discipline_name = "fcfs";
  double mu = 0.8;
  bool simulate_json = false;
  RunOverrides sim_overrides;
  simulate->add_option("--arrival", arrival_spec, "e.g. \"exp lambda=0.5\" or \"det lambda=0.5\"");
  simulate->add_option("--service", service_spec, "e.g. det, exp, \"pareto alpha=1.5\"");
  simulate->add_option("--mu", mu, "Service rate");
  simulate->add_option("--discipline", discipline_name, "fcfs, lcfs-p, lcfs-np or inf");
  simulate->add_flag("--print-json", simulate_json, "Print the JSON document instead of CSV");
  sim_overrides.attach(simulate);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a sweep from a config file or preset");
  std::string config_path, preset_name;
  RunOverrides sweep_overrides;
  auto* config_opt = sweep->add_option("--config", config_path, "Sweep config file");
  sweep->add_option("--preset", preset_name, "Built-in preset name")->excludes(config_opt);
  sweep_overrides.attach(sweep);

  // figure1
  auto* figure1 = app.add_subcommand("figure1", "Run the figure1 preset");
  RunOverrides fig_overrides;
  fig_overrides.attach(figure1);

  // presets
  auto* presets = app.add_subcommand("presets", "List presets or print one");
  std::string show_preset;
  presets->add_option("name", show_preset, "Preset to print");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Print closed-form and Monte-Carlo baselines as CSV");
  oracle->require_subcommand(1);
  double o_lambda = 0.5, o_mu = 0.8, o_threshold = 0.0;
  std::string o_arrival = "exp lambda=0.5", o_service = "exp", o_family = "pareto";
  std::string o_shapes, o_x = "2,4";
  std::uint64_t o_samples = 100000, o_seed = 1;

  auto* o_amin = oracle->add_subcommand("a-min", "E[X^2] / (2 E[X])");
  o_amin->add_option("--arrival", o_arrival);
  auto* o_pk = oracle->add_subcommand("pk-delay", "Pollaczek-Khinchine mean delay");
  o_pk->add_option("--lambda", o_lambda);
  o_pk->add_option("--mu", o_mu);
  o_pk->add_option("--service", o_service);
  auto* o_dd1 = oracle->add_subcommand("dd1-age", "D/D/1 average age");
  o_dd1->add_option("--lambda", o_lambda);
  o_dd1->add_option("--mu", o_mu);
  auto* o_moments = oracle->add_subcommand("moments", "E[S], E[S^2], Var(S) and median");
  o_moments->add_option("--mu", o_mu);
  o_moments->add_option("--service", o_service);
  auto* o_gginf = oracle->add_subcommand("gginf", "G/G/inf average age estimate");
  o_gginf->add_option("--arrival", o_arrival);
  o_gginf->add_option("--mu", o_mu);
  o_gginf->add_option("--service", o_service);
  o_gginf->add_option("--samples", o_samples);
  o_gginf->add_option("--seed", o_seed);
  auto* o_lemma2 = oracle->add_subcommand("lemma2", "P(S>x) and E[S 1{S<x}] along a shape sweep");
  o_lemma2->add_option("--family", o_family);
  o_lemma2->add_option("--mu", o_mu);
  o_lemma2->add_option("--lambda", o_lambda);
  o_lemma2->add_option("--shapes", o_shapes, "Comma-separated, ordered toward the limit");
  o_lemma2->add_option("--x", o_x, "Comma-separated x values, each >= 1/lambda");
  auto* o_lemma3 = oracle->add_subcommand("lemma3", "E[S^2] along a shape sweep");
  o_lemma3->add_option("--family", o_family);
  o_lemma3->add_option("--mu", o_mu);
  o_lemma3->add_option("--shapes", o_shapes);
  o_lemma3->add_option("--threshold", o_threshold, "Divergence threshold (default 1e6/mu^2)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      const aoi::ServiceDistribution service = aoi::parse_service(service_spec, mu);
      aoi::SweepConfig cfg;
      cfg.name = "simulate";
      cfg.n_reps = 1;
      cfg.groups.push_back(
          {"point", aoi::parse_arrival(arrival_spec), service.mu(),
           {aoi::parse_discipline(discipline_name)},
           {{service.family(),
             service.shape() ? std::vector<double>{*service.shape()} : std::vector<double>{}}}});
      sim_overrides.apply(cfg);
      const auto points = aoi::run_suite(cfg);
      const auto frontier = aoi::pareto_frontier(points, aoi::DelayObjective::MeanDelay);
      aoi::emit_outputs(points, frontier, cfg, cfg.outputs);
      if (simulate_json) {
        std::cout << aoi::to_json(points, cfg);
      } else if (cfg.outputs.csv.empty()) {
        std::cout << aoi::to_csv(points, cfg);
      }
    } else if (sweep->parsed()) {
      if (config_path.empty() && preset_name.empty()) {
        throw aoi::ConfigError("sweep needs --config or --preset");
      }
      aoi::SweepConfig cfg =
          config_path.empty() ? aoi::preset(preset_name) : aoi::load_sweep_config(config_path);
      sweep_overrides.apply(cfg);
      run_and_emit(cfg);
    } else if (figure1->parsed()) {
      aoi::SweepConfig cfg = aoi::preset("figure1");
      fig_overrides.apply(cfg);
      run_and_emit(cfg);
    } else if (presets->parsed()) {
      if (show_preset.empty()) {
        for (auto name : aoi::preset_names()) std::cout << name << '\n';
      } else {
        std::cout << aoi::preset_text(show_preset);
      }
    } else if (o_amin->parsed()) {
      const auto arrival = aoi::parse_arrival(o_arrival);
      std::cout << "arrival,a_min\n" << arrival.describe() << ',' << fmt(aoi::a_min(arrival)) << '\n';
    } else if (o_pk->parsed()) {
      const auto service = aoi::parse_service(o_service, o_mu);
      std::cout << "lambda,service,mu,pk_delay\n"
                << fmt(o_lambda) << ',' << service.describe() << ',' << fmt(service.mu()) << ','
                << fmt(aoi::pk_delay(o_lambda, service).to_double()) << '\n';
    } else if (o_dd1->parsed()) {
      std::cout << "lambda,mu,dd1_age\n"
                << fmt(o_lambda) << ',' << fmt(o_mu) << ',' << fmt(aoi::dd1_age(o_lambda, o_mu))
                << '\n';
    } else if (o_moments->parsed()) {
      const auto service = aoi::parse_service(o_service, o_mu);
      std::cout << "service,mu,mean,second_moment,variance,median\n"
                << service.describe() << ',' << fmt(service.mu()) << ',' << fmt(service.mean())
                << ',' << fmt(service.second_moment().to_double()) << ','
                << fmt(service.variance().to_double()) << ',' << fmt(service.median()) << '\n';
    } else if (o_gginf->parsed()) {
      const auto arrival = aoi::parse_arrival(o_arrival);
      const auto service = aoi::parse_service(o_service, o_mu);
      const auto est = aoi::gginf_age_estimate(arrival, service, o_samples, o_seed);
      std::cout << "arrival,service,mu,a_min,gginf_age,stderr,samples,seed\n"
                << arrival.describe() << ',' << service.describe() << ',' << fmt(service.mu())
                << ',' << fmt(aoi::a_min(arrival)) << ',' << fmt(est.value) << ','
                << fmt(est.std_error) << ',' << o_samples << ',' << o_seed << '\n';
    } else if (o_lemma2->parsed()) {
      const auto shapes = parse_list(o_shapes);
      const auto xs = parse_list(o_x);
      print_table(aoi::lemma2_table(aoi::parse_service_family(o_family), o_mu, o_lambda, shapes, xs),
                  true);
    } else if (o_lemma3->parsed()) {
      const auto shapes = parse_list(o_shapes);
      print_table(aoi::lemma3_table(aoi::parse_service_family(o_family), o_mu, shapes, o_threshold),
                  false);
    }
  } catch (const std::exception& e) {
    std::cerr << "aoisim: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
