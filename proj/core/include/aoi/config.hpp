#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "aoi/disciplines.hpp"
#include "aoi/distributions.hpp"

namespace aoi {

/// One service family swept over a list of shapes (empty for det/exp).
struct ServiceGrid {
  ServiceFamily family;
  std::vector<double> shapes;
};

/// Cross product of disciplines and service grids under one arrival process.
struct GridGroup {
  std::string name;
  ArrivalProcess arrival;
  double mu;
  std::vector<Discipline> disciplines;
  std::vector<ServiceGrid> services;
};

struct OutputPaths {
  std::string csv;
  std::string json;
  std::string plot;
};

struct SweepConfig {
  std::string name = "sweep";
  std::vector<GridGroup> groups;
  std::uint64_t n_arrivals = 1'000'000;
  std::uint32_t n_reps = 8;
  std::uint64_t base_seed = 1;
  double warmup_fraction = 0.1;
  /// Multipliers for the scalarized objective delay + nu * age.
  std::vector<double> nu_grid{0.0, 0.1, 0.5, 1.0, 5.0, 100.0};
  std::uint64_t gginf_samples = 100'000;
  std::size_t batches = 32;
  /// Worker threads, 0 = hardware concurrency. Never affects results.
  unsigned threads = 0;
  OutputPaths outputs;
};

/// Parses the key-value sweep format:
///
///   # comment
///   name = figure1
///   mu = 0.8                     default service rate for all groups
///   n_arrivals = 1000000
///   n_reps = 8
///   seed = 2019
///   warmup = 0.1
///   nu = 0, 0.1, 0.5, 1, 5, 100
///   gginf_samples = 100000
///   batches = 32
///   threads = 0
///   output_csv = out.csv         also output_json, output_plot
///
///   [grid poisson]               starts a grid group, name optional
///   arrival = exp lambda=0.5
///   mu = 0.8                     optional per-group override
///   disciplines = fcfs, lcfs-p
///   service = det
///   service = pareto alpha=3, 2, 1.5
///
/// Throws ConfigError naming the offending line.
SweepConfig parse_sweep_config(std::string_view text);

/// Reads and parses a config file; IoError if unreadable.
SweepConfig load_sweep_config(const std::string& path);

/// Built-in presets: figure1, tradeoff-sweep, no-tradeoff.
std::vector<std::string_view> preset_names();
std::string_view preset_text(std::string_view name);
SweepConfig preset(std::string_view name);

}  // namespace aoi
