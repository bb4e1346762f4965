#pragma once

#include <span>
#include <vector>

#include "aoi/packet.hpp"

namespace aoi {

/// Age value immediately after an event. Between consecutive breakpoints the
/// age grows with slope 1.
struct AgeBreakpoint {
  double time;
  double age;
};

/// Destination-side age process A(t) = min over received packets of (t - t_i).
///
/// Starts at A(0) = 0, as if a packet generated at time 0 had been received
/// at time 0. Only informative receptions, those carrying a generation time
/// newer than anything received so far, create a breakpoint.
class AgeTracker {
 public:
  AgeTracker() : breakpoints_{{0.0, 0.0}} {}

  /// Records a reception at `now` of a packet generated at `gen_time`.
  /// Returns whether the reception was informative.
  bool on_reception(double gen_time, double now);

  double freshest_generation() const { return freshest_gen_; }
  /// A(t) for t at or after the first breakpoint (right-continuous).
  double age_at(double t) const;

  std::span<const AgeBreakpoint> breakpoints() const { return breakpoints_; }
  std::vector<AgeBreakpoint> release() && { return std::move(breakpoints_); }

 private:
  double freshest_gen_ = 0.0;
  std::vector<AgeBreakpoint> breakpoints_;
};

/// Applies a reception to the tracker and flags the packet as informative
/// or not. `pkt.recv_time` must equal `now`.
void update_age_on_reception(AgeTracker& tracker, Packet& pkt, double now);

/// Evaluates a breakpoint list at t (right-continuous), t >= first time.
double age_at(std::span<const AgeBreakpoint> breakpoints, double t);

}  // namespace aoi
