#include "aoi/age.hpp"

#include <algorithm>

namespace aoi {

bool AgeTracker::on_reception(double gen_time, double now) {
  if (gen_time <= freshest_gen_) return false;
  freshest_gen_ = gen_time;
  const double age = now - gen_time;
  if (breakpoints_.back().time == now) {
    breakpoints_.back().age = age;
  } else {
    breakpoints_.push_back({now, age});
  }
  return true;
}

double AgeTracker::age_at(double t) const { return aoi::age_at(breakpoints_, t); }

void update_age_on_reception(AgeTracker& tracker, Packet& pkt, double now) {
  pkt.informative = tracker.on_reception(pkt.gen_time, now);
}

double age_at(std::span<const AgeBreakpoint> breakpoints, double t) {
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t,
                             [](double value, const AgeBreakpoint& bp) { return value < bp.time; });
  const AgeBreakpoint& bp = *std::prev(it);
  return bp.age + (t - bp.time);
}

}  // namespace aoi
