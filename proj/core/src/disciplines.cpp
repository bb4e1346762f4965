#include "aoi/disciplines.hpp"

#include <algorithm>
#include <string>

#include "aoi/errors.hpp"

namespace aoi {

std::string_view to_string(Discipline discipline) {
  switch (discipline) {
    case Discipline::Fcfs: return "fcfs";
    case Discipline::LcfsPreemptiveResume: return "lcfs-p";
    case Discipline::LcfsNonPreemptive: return "lcfs-np";
    case Discipline::InfiniteServer: return "inf";
  }
  return "?";
}

Discipline parse_discipline(std::string_view name) {
  if (name == "fcfs") return Discipline::Fcfs;
  if (name == "lcfs-p" || name == "lcfsp") return Discipline::LcfsPreemptiveResume;
  if (name == "lcfs-np") return Discipline::LcfsNonPreemptive;
  if (name == "inf") return Discipline::InfiniteServer;
  throw ParameterError("unknown discipline '" + std::string(name) + "'");
}

void Server::start(const Job& job, double now) {
  current_ = job;
  segment_start_ = now;
}

double Server::finish_time(const Job& job) const {
  return std::max(segment_start_ + job.remaining, job.finish_floor);
}

void Server::handle_arrival(const Job& job, double now) {
  switch (discipline_) {
    case Discipline::InfiniteServer:
      departures_.push({std::max(now + job.remaining, job.finish_floor), job.id});
      return;
    case Discipline::Fcfs:
    case Discipline::LcfsNonPreemptive:
      if (current_) {
        waiting_.push_back(job);
      } else {
        start(job, now);
      }
      return;
    case Discipline::LcfsPreemptiveResume:
      if (current_) {
        Job suspended = *current_;
        suspended.remaining = std::max(0.0, suspended.remaining - (now - segment_start_));
        waiting_.push_back(suspended);
      }
      start(job, now);
      return;
  }
}

std::optional<double> Server::next_completion_time() const {
  if (discipline_ == Discipline::InfiniteServer) {
    if (departures_.empty()) return std::nullopt;
    return departures_.top().time;
  }
  if (!current_) return std::nullopt;
  return finish_time(*current_);
}

Completion Server::handle_completion(double now) {
  if (discipline_ == Discipline::InfiniteServer) {
    const PacketId done = departures_.top().id;
    departures_.pop();
    return {done, std::nullopt};
  }
  const PacketId done = current_->id;
  current_.reset();
  if (waiting_.empty()) return {done, std::nullopt};

  Job next;
  if (discipline_ == Discipline::Fcfs) {
    next = waiting_.front();
    waiting_.pop_front();
  } else {
    next = waiting_.back();
    waiting_.pop_back();
  }
  start(next, now);
  return {done, next.id};
}

bool Server::idle() const {
  return discipline_ == Discipline::InfiniteServer ? departures_.empty() : !current_;
}

std::size_t Server::in_service_count() const {
  if (discipline_ == Discipline::InfiniteServer) return departures_.size();
  return current_ ? 1 : 0;
}

std::optional<Job> Server::in_service(double now) const {
  if (!current_) return std::nullopt;
  Job job = *current_;
  job.remaining = std::max(0.0, job.remaining - (now - segment_start_));
  return job;
}

std::vector<Job> Server::waiting_in_service_order() const {
  std::vector<Job> out(waiting_.begin(), waiting_.end());
  if (discipline_ != Discipline::Fcfs) std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace aoi
