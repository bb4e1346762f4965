#pragma once

#include <cstdint>
#include <optional>

namespace aoi {

using PacketId = std::uint64_t;

/// One update's lifecycle. recv_time is set when remaining work hits zero.
struct Packet {
  PacketId id = 0;
  double gen_time = 0.0;
  double service_req = 0.0;
  double remaining = 0.0;
  std::optional<double> recv_time;
  bool informative = false;

  /// t'_i - t_i. Requires recv_time.
  double delay() const { return *recv_time - gen_time; }
};

}  // namespace aoi
