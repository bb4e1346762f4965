#pragma once

#include <cstdint>
#include <vector>

#include "aoi/age.hpp"
#include "aoi/disciplines.hpp"
#include "aoi/distributions.hpp"
#include "aoi/packet.hpp"

namespace aoi {

/// One simulated design point.
struct SimulationConfig {
  ArrivalProcess arrival;
  ServiceDistribution service;
  Discipline discipline;
  std::uint64_t n_arrivals = 1'000'000;
  double warmup_fraction = 0.1;
};

struct SimulationTrace {
  SimulationConfig config;
  std::uint64_t seed = 0;
  /// Every generated packet, indexed by id (generation order); all delivered.
  std::vector<Packet> packets;
  /// Packet ids in the order they reached the destination.
  std::vector<PacketId> reception_order;
  /// Informative receptions only, strictly increasing in time; first is (0, 0).
  std::vector<AgeBreakpoint> age_breakpoints;
  /// Time of the last reception.
  double horizon = 0.0;
  std::uint64_t n_generated = 0;
};

/// Throws StabilityError if lambda >= mu on a single-server station and
/// ParameterError on a zero arrival count or a warmup fraction outside
/// [0, 0.5].
void validate(const SimulationConfig& config);

/// Simulates `n_arrivals` generations, then drains the station.
///
/// Inter-generation times and service requirements come from two
/// independent substreams of `seed`, both consumed in generation order, so
/// every discipline sees the same (X_i, S_i) sequence for a given seed.
/// Simultaneous events resolve departures first, then by packet id.
SimulationTrace run_simulation(const SimulationConfig& config, std::uint64_t seed);

/// Replication r runs with seed base_seed + r. `threads == 0` uses the
/// hardware concurrency; results are ordered by replication index.
std::vector<SimulationTrace> replicate(const SimulationConfig& config, std::uint32_t n_reps,
                                       std::uint64_t base_seed, unsigned threads = 1);

}  // namespace aoi
