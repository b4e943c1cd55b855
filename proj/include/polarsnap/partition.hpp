#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polarsnap/topology.hpp"

namespace polarsnap {

// Crossings closer than this are one partition event (seconds).
inline constexpr double kEventMergeTolerance = 1e-4;
// Bisection stops once the bracket is narrower than this (seconds).
inline constexpr double kRootTolerance = 1e-9;
// Tiling checks: sum of durations against the period (seconds).
inline constexpr double kTilingTolerance = 1e-6;

enum class Pole { north, south };
const char* to_string(Pole p);

struct BorderCrossing {
  Trigger kind = Trigger::enter;
  Pole pole = Pole::north;
  int phase_class = 0;
  double time_s = 0.0;
};

// Polar-border crossings that happen together. North and south crossings
// of symmetric rows always coincide and share one event.
struct PartitionEvent {
  double time_s = 0.0;
  std::vector<BorderCrossing> crossings;

  bool has(Trigger kind) const;
};

struct TopologySnapshot {
  double start_s = 0.0;
  double end_s = 0.0;
  TopologyEdgeSet edges;
  int inter_plane_count = 0;

  double duration() const { return end_s - start_s; }
};

// Snapshots tiling one period cyclically. The first snapshot starts at the
// first boundary at or after t = 0 and the last one ends one period later,
// so end_s of the final entry may exceed the period.
struct SnapshotSequence {
  Method method = Method::fixed;
  std::optional<Trigger> trigger;
  double polar_border_deg = 0.0;
  double period_s = 0.0;
  std::vector<TopologySnapshot> snapshots;
  bool truncated = false;  // equal-time interval does not divide the period

  std::size_t count() const { return snapshots.size(); }
  // Maps t onto the covered period [front.start, front.start + T).
  double local_time(double t) const;
  std::size_t index_at(double t) const;
  const TopologySnapshot& at(double t) const { return snapshots[index_at(t)]; }

  friend bool operator==(const SnapshotSequence&, const SnapshotSequence&);
};

struct AnalyticSummary {
  double delta_s = 0.0;
  int snapshot_count = 0;
  int nisl = 0;
  int nisl_oblique = 0;
  int nisl_horizontal = 0;
  int nls_npa = 0;
};

// Closed-form snapshot distribution of the reassignment method.
AnalyticSummary analytic_summary(const ConstellationSpec& spec, double polar_border_deg);

// Crossings of all rows over [0, horizon), merged by time. With `only`,
// crossings of the other kind are discarded before merging.
std::vector<PartitionEvent> enumerate_events(const ConstellationSpec& spec, double polar_border_deg, double horizon,
                                             std::optional<Trigger> only = std::nullopt);

SnapshotSequence partition_reassignment(const ConstellationSpec& spec, const VisibilityModel& vis, Trigger trigger);
SnapshotSequence partition_fixed(const ConstellationSpec& spec, const VisibilityModel& vis);
SnapshotSequence partition_equal_time(const ConstellationSpec& spec, const VisibilityModel& vis, double delta_s);

// Empty when the sequence tiles its period; otherwise a description.
std::optional<std::string> check_tiling(const SnapshotSequence& seq);

}  // namespace polarsnap
