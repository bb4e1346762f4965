#include "aoi/simulation.hpp"

#include <string>

#include "aoi/errors.hpp"
#include "aoi/parallel.hpp"
#include "aoi/random.hpp"

namespace aoi {
namespace {

constexpr std::uint64_t kArrivalStream = 0;
constexpr std::uint64_t kServiceStream = 1;

}  // namespace

void validate(const SimulationConfig& config) {
  if (config.n_arrivals < 1) throw ParameterError("n_arrivals must be at least 1");
  if (!(config.warmup_fraction >= 0.0 && config.warmup_fraction <= 0.5)) {
    throw ParameterError("warmup_fraction must lie in [0, 0.5], got " +
                         std::to_string(config.warmup_fraction));
  }
  if (is_single_server(config.discipline) &&
      !(config.arrival.lambda() < config.service.mu())) {
    throw StabilityError("unstable single-server point " +
                         std::string(to_string(config.discipline)) + " / " +
                         config.service.describe() + ": lambda=" +
                         std::to_string(config.arrival.lambda()) +
                         " must be below mu=" + std::to_string(config.service.mu()));
  }
}

SimulationTrace run_simulation(const SimulationConfig& config, std::uint64_t seed) {
  validate(config);

  RandomStream arrivals(derive_seed(seed, kArrivalStream));
  RandomStream services(derive_seed(seed, kServiceStream));

  SimulationTrace trace{config, seed, {}, {}, {}, 0.0, 0};
  const std::uint64_t n = config.n_arrivals;
  trace.packets.reserve(n);
  trace.reception_order.reserve(n);

  Server server(config.discipline);
  AgeTracker age;

  double next_generation = config.arrival.sample(arrivals);
  std::uint64_t generated = 0;

  for (;;) {
    const auto completion_time = server.next_completion_time();
    const bool more = generated < n;
    if (!completion_time && !more) break;

    if (completion_time && (!more || *completion_time <= next_generation)) {
      const double now = *completion_time;
      const Completion done = server.handle_completion(now);
      Packet& pkt = trace.packets[done.completed];
      pkt.remaining = 0.0;
      pkt.recv_time = now;
      update_age_on_reception(age, pkt, now);
      trace.reception_order.push_back(pkt.id);
      trace.horizon = now;
      continue;
    }

    const double now = next_generation;
    const double requirement = config.service.sample(services);
    const PacketId id = generated;
    trace.packets.push_back({id, now, requirement, requirement, std::nullopt, false});
    server.handle_arrival({id, requirement, now + requirement}, now);
    ++generated;
    if (generated < n) next_generation = now + config.arrival.sample(arrivals);
  }

  trace.n_generated = generated;
  trace.age_breakpoints = std::move(age).release();
  return trace;
}

std::vector<SimulationTrace> replicate(const SimulationConfig& config, std::uint32_t n_reps,
                                       std::uint64_t base_seed, unsigned threads) {
  if (n_reps < 1) throw ParameterError("n_reps must be at least 1");
  validate(config);
  std::vector<SimulationTrace> traces(n_reps, SimulationTrace{config, 0, {}, {}, {}, 0.0, 0});
  parallel_for(n_reps, threads,
               [&](std::size_t r) { traces[r] = run_simulation(config, base_seed + r); });
  return traces;
}

}  // namespace aoi
