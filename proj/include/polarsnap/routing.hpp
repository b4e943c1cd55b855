#pragma once

#include <optional>
#include <vector>

#include "polarsnap/partition.hpp"

namespace polarsnap {

struct UtilizationReport {
  Method method = Method::fixed;
  double polar_border_deg = 0.0;
  double utilization = 0.0;  // in [0, 1]
};

// Time-weighted share of the (N-1) * M possible inter-plane links that a
// sequence keeps up over one period.
UtilizationReport utilization(const SnapshotSequence& seq, const ConstellationSpec& spec);

// Elevations closer than this are treated as equal when picking a satellite.
inline constexpr double kElevationTieDeg = 1e-9;

// Highest satellite above the station's elevation mask; nullopt when none is.
std::optional<SatId> attach_ground(const GroundStation& gs, double t, const ConstellationSpec& spec);

struct PathResult {
  bool reachable = false;
  double delay_s = 0.0;
  std::vector<SatId> path;
};

// Dijkstra over the snapshot's links, weighted by propagation delay at t.
PathResult shortest_delay(const TopologySnapshot& snapshot, double t, const SatId& src, const SatId& dst,
                          const ConstellationSpec& spec);

struct DelaySample {
  double send_time_s = 0.0;
  double delay_s = 0.0;
  int hops = 0;
  bool reachable = false;
  bool uses_horizontal = false;
};

struct DelaySeries {
  GroundStation source;
  GroundStation destination;
  Method method = Method::fixed;
  double polar_border_deg = 0.0;
  std::vector<DelaySample> samples;
  double average_delay_s = 0.0;  // reachable samples only
  std::size_t unreachable = 0;

  double unreachable_fraction() const {
    return samples.empty() ? 0.0 : static_cast<double>(unreachable) / static_cast<double>(samples.size());
  }
};

// Sends a packet every `interval_s` over `duration_s`; each sample is the
// uplink + ISL path + downlink propagation delay in the governing snapshot.
DelaySeries delay_experiment(const ConstellationSpec& spec, const SnapshotSequence& seq, const GroundStation& src,
                             const GroundStation& dst, double duration_s, double interval_s);

}  // namespace polarsnap
