#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <queue>
#include <string_view>
#include <vector>

#include "aoi/packet.hpp"

namespace aoi {

enum class Discipline { Fcfs, LcfsPreemptiveResume, LcfsNonPreemptive, InfiniteServer };

/// CLI names: fcfs, lcfs-p, lcfs-np, inf.
std::string_view to_string(Discipline discipline);
Discipline parse_discipline(std::string_view name);

inline bool is_single_server(Discipline d) { return d != Discipline::InfiniteServer; }

/// Unit of work handed to a station. The ordering decisions look only at
/// `id`; `remaining` and `finish_floor` just drive the clock.
struct Job {
  PacketId id = 0;
  double remaining = 0.0;
  /// Earliest admissible finish time (generation time + service requirement).
  /// Guards against rounding in preempt/resume bookkeeping finishing a job an
  /// ulp before its full requirement has elapsed.
  double finish_floor = 0.0;
};

struct Completion {
  PacketId completed;
  /// Job that entered (or re-entered) service as a result, single-server only.
  std::optional<PacketId> next;
};

/// Service station state for one scheduling policy.
///
/// fcfs     waiting line is a FIFO; new arrivals go to the back.
/// lcfs-np  waiting line is a stack; the newest waiting job is served next.
/// lcfs-p   an arrival always seizes the server; the preempted job keeps its
///          remaining work and is pushed onto the stack (preempt-resume).
/// inf      every job is served on its own server from the moment it arrives.
class Server {
 public:
  explicit Server(Discipline discipline) : discipline_(discipline) {}

  Discipline discipline() const { return discipline_; }

  void handle_arrival(const Job& job, double now);

  /// Time of the next completion, or nullopt when idle.
  std::optional<double> next_completion_time() const;

  /// Completes the job due at `now` and starts the next one, if any.
  Completion handle_completion(double now);

  bool idle() const;
  std::size_t in_service_count() const;
  std::size_t waiting_count() const { return waiting_.size(); }

  /// Job in service on a single-server station, with `remaining` brought up
  /// to date as of `now`.
  std::optional<Job> in_service(double now) const;
  /// Waiting jobs in service order (next to be served first).
  std::vector<Job> waiting_in_service_order() const;

 private:
  struct Departure {
    double time;
    PacketId id;
    bool operator>(const Departure& o) const {
      return time != o.time ? time > o.time : id > o.id;
    }
  };

  void start(const Job& job, double now);
  double finish_time(const Job& job) const;

  Discipline discipline_;
  std::optional<Job> current_;
  double segment_start_ = 0.0;
  std::deque<Job> waiting_;
  std::priority_queue<Departure, std::vector<Departure>, std::greater<>> departures_;
};

}  // namespace aoi
