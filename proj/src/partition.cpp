#include "polarsnap/partition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace polarsnap {

const char* to_string(Pole p) { return p == Pole::north ? "north" : "south"; }

bool PartitionEvent::has(Trigger kind) const {
  return std::any_of(crossings.begin(), crossings.end(), [kind](const BorderCrossing& c) { return c.kind == kind; });
}

double SnapshotSequence::local_time(double t) const {
  if (snapshots.empty()) throw DomainError("empty snapshot sequence");
  const double origin = snapshots.front().start_s;
  double offset = std::fmod(t - origin, period_s);
  if (offset < 0.0) offset += period_s;
  return origin + offset;
}

std::size_t SnapshotSequence::index_at(double t) const {
  const double tau = local_time(t);
  auto it = std::upper_bound(snapshots.begin(), snapshots.end(), tau,
                             [](double v, const TopologySnapshot& s) { return v < s.start_s; });
  return static_cast<std::size_t>(std::distance(snapshots.begin(), it)) - 1;
}

bool operator==(const SnapshotSequence& x, const SnapshotSequence& y) {
  if (x.method != y.method || x.trigger != y.trigger || x.polar_border_deg != y.polar_border_deg ||
      x.period_s != y.period_s || x.truncated != y.truncated || x.snapshots.size() != y.snapshots.size())
    return false;
  for (std::size_t k = 0; k < x.snapshots.size(); ++k) {
    const auto& a = x.snapshots[k];
    const auto& b = y.snapshots[k];
    if (a.start_s != b.start_s || a.end_s != b.end_s || a.inter_plane_count != b.inter_plane_count ||
        a.edges.edges != b.edges.edges)
      return false;
  }
  return true;
}

AnalyticSummary analytic_summary(const ConstellationSpec& spec, double polar_border_deg) {
  spec.validate();
  if (spec.plane_count % 2 != 0)
    throw UnsupportedConfiguration("closed-form summary requires an even number of planes");
  if (!(polar_border_deg > 0.0 && polar_border_deg < 90.0))
    throw DomainError("polar border latitude must lie in (0, 90) degrees");
  AnalyticSummary s;
  const int m = spec.sats_per_plane;
  const int n = spec.plane_count;
  s.snapshot_count = 2 * m;
  s.delta_s = orbit_period(spec) / (2.0 * m);
  // floor(2 L_pa / w_f) with w_f = 180 / M, kept rational.
  s.nls_npa = static_cast<int>(std::floor(2.0 * polar_border_deg * m / 180.0 + 1e-9));
  s.nisl_oblique = 2 * (s.nls_npa / 2) * (n - 1);
  s.nisl_horizontal = s.nls_npa % 2 == 1 ? n - 2 : 0;
  s.nisl = s.nisl_oblique + s.nisl_horizontal;
  return s;
}

namespace {

double bisect(auto&& g, double lo, double hi) {
  const bool lo_negative = g(lo) < 0.0;
  for (int it = 0; it < 200 && hi - lo > kRootTolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((g(mid) < 0.0) == lo_negative)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<PartitionEvent> enumerate_events(const ConstellationSpec& spec, double polar_border_deg, double horizon,
                                             std::optional<Trigger> only) {
  spec.validate();
  std::vector<PartitionEvent> events;
  if (!(horizon > 0.0)) return events;

  const double period = orbit_period(spec);
  const double step = period / (200.0 * spec.sats_per_plane);
  constexpr double kHalfMerge = 0.5 * kEventMergeTolerance;
  std::vector<BorderCrossing> crossings;

  for (int c = 0; c < spec.phase_class_count(); ++c) {
    auto lat = [&](double t) { return latitude_at_arg(spec, row_arg_latitude_deg(spec, c, t)); };
    auto north = [&](double t) { return lat(t) - polar_border_deg; };
    auto south = [&](double t) { return lat(t) + polar_border_deg; };
    // Start one step early so a crossing exactly at t = 0 is bracketed.
    double t0 = -step;
    double n0 = north(t0), s0 = south(t0);
    while (t0 < horizon) {
      const double t1 = t0 + step;
      const double n1 = north(t1), s1 = south(t1);
      auto push = [&](Trigger kind, Pole pole, auto&& g) {
        double root = bisect(g, t0, t1);
        // Roots a hair before 0 belong to t = 0; their periodic image just
        // below the horizon is dropped to avoid counting one crossing twice.
        if (root < -kHalfMerge || root >= horizon - kHalfMerge || (only && *only != kind)) return;
        crossings.push_back({kind, pole, c, std::max(root, 0.0)});
      };
      if (n0 < 0.0 && n1 >= 0.0) push(Trigger::enter, Pole::north, north);
      if (n0 >= 0.0 && n1 < 0.0) push(Trigger::exit, Pole::north, north);
      if (s0 >= 0.0 && s1 < 0.0) push(Trigger::enter, Pole::south, south);
      if (s0 < 0.0 && s1 >= 0.0) push(Trigger::exit, Pole::south, south);
      t0 = t1;
      n0 = n1;
      s0 = s1;
    }
  }

  std::sort(crossings.begin(), crossings.end(), [](const BorderCrossing& a, const BorderCrossing& b) {
    if (a.time_s != b.time_s) return a.time_s < b.time_s;
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.pole != b.pole) return a.pole < b.pole;
    return a.phase_class < b.phase_class;
  });
  for (const auto& x : crossings) {
    if (events.empty() || x.time_s - events.back().time_s >= kEventMergeTolerance)
      events.push_back({x.time_s, {}});
    events.back().crossings.push_back(x);
  }
  return events;
}

namespace {

TopologySnapshot make_snapshot(double start, double end, TopologyEdgeSet edges) {
  TopologySnapshot s;
  s.start_s = start;
  s.end_s = end;
  s.inter_plane_count = static_cast<int>(edges.inter_plane_count());
  s.edges = std::move(edges);
  s.edges.generated_at = start;
  return s;
}

std::vector<double> event_times(const std::vector<PartitionEvent>& events) {
  std::vector<double> out;
  out.reserve(events.size());
  for (const auto& e : events) out.push_back(e.time_s);
  return out;
}

}  // namespace

SnapshotSequence partition_reassignment(const ConstellationSpec& spec, const VisibilityModel& vis, Trigger trigger) {
  const double period = orbit_period(spec);
  const auto all = event_times(enumerate_events(spec, vis.polar_border_deg, period));
  const auto triggers = enumerate_events(spec, vis.polar_border_deg, period, trigger);
  if (triggers.empty()) throw UnsupportedConfiguration("polar border is never crossed; nothing triggers reassignment");

  SnapshotSequence seq;
  seq.method = Method::reassignment;
  seq.trigger = trigger;
  seq.polar_border_deg = vis.polar_border_deg;
  seq.period_s = period;
  for (std::size_t k = 0; k < triggers.size(); ++k) {
    const double start = triggers[k].time_s;
    const double end = k + 1 < triggers.size() ? triggers[k + 1].time_s : triggers.front().time_s + period;
    // Row membership is read halfway to the next crossing of either kind,
    // where no row sits on a border.
    auto next = std::upper_bound(all.begin(), all.end(), start + kEventMergeTolerance);
    const double next_any = next != all.end() ? *next : all.front() + period;
    const LsState ls = build_ls_state(spec, vis, 0.5 * (start + next_any));
    seq.snapshots.push_back(make_snapshot(start, end, reassign_topology(spec, vis, ls, trigger)));
  }
  return seq;
}

SnapshotSequence partition_fixed(const ConstellationSpec& spec, const VisibilityModel& vis) {
  const double period = orbit_period(spec);
  const auto times = event_times(enumerate_events(spec, vis.polar_border_deg, period));

  SnapshotSequence seq;
  seq.method = Method::fixed;
  seq.polar_border_deg = vis.polar_border_deg;
  seq.period_s = period;
  if (times.empty()) {
    seq.snapshots.push_back(make_snapshot(0.0, period, fixed_topology(spec, vis, 0.0)));
    return seq;
  }

  const std::size_t n = times.size();
  std::vector<TopologyEdgeSet> sets;
  sets.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double end = k + 1 < n ? times[k + 1] : times.front() + period;
    sets.push_back(fixed_topology(spec, vis, 0.5 * (times[k] + end)));
  }
  std::vector<std::size_t> boundaries;
  for (std::size_t k = 0; k < n; ++k)
    if (!(sets[k] == sets[(k + n - 1) % n])) boundaries.push_back(k);
  if (boundaries.empty()) {
    seq.snapshots.push_back(make_snapshot(0.0, period, std::move(sets.front())));
    return seq;
  }
  for (std::size_t b = 0; b < boundaries.size(); ++b) {
    const std::size_t k = boundaries[b];
    const double end = b + 1 < boundaries.size() ? times[boundaries[b + 1]] : times[boundaries.front()] + period;
    seq.snapshots.push_back(make_snapshot(times[k], end, sets[k]));
  }
  return seq;
}

SnapshotSequence partition_equal_time(const ConstellationSpec& spec, const VisibilityModel& vis, double delta_s) {
  if (!(delta_s > 0.0)) throw DomainError("equal-time interval must be positive");
  const double period = orbit_period(spec);
  const auto times = event_times(enumerate_events(spec, vis.polar_border_deg, period));

  SnapshotSequence seq;
  seq.method = Method::equal_time;
  seq.polar_border_deg = vis.polar_border_deg;
  seq.period_s = period;

  const double ratio = period / delta_s;
  std::size_t count = static_cast<std::size_t>(std::llround(ratio));
  if (count == 0 || std::abs(ratio - std::round(ratio)) > 1e-6 * std::max(1.0, ratio)) {
    count = static_cast<std::size_t>(std::ceil(ratio));
    seq.truncated = true;
  }
  const TopologyEdgeSet intra = intra_plane_edges(spec);
  for (std::size_t k = 0; k < count; ++k) {
    const double a = static_cast<double>(k) * delta_s;
    const double b = k + 1 == count ? period : static_cast<double>(k + 1) * delta_s;
    // Split [a, b) at every border crossing and keep links present in all pieces.
    std::vector<double> cuts{a};
    for (double t : times)
      if (t > a + kEventMergeTolerance && t < b - kEventMergeTolerance) cuts.push_back(t);
    cuts.push_back(b);
    std::vector<IslEdge> survivors;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const auto piece = fixed_topology(spec, vis, 0.5 * (cuts[i] + cuts[i + 1])).inter_plane_edges();
      if (i == 0) {
        survivors = piece;
      } else {
        std::vector<IslEdge> keep;
        std::set_intersection(survivors.begin(), survivors.end(), piece.begin(), piece.end(), std::back_inserter(keep));
        survivors = std::move(keep);
      }
    }
    TopologyEdgeSet set = intra;
    set.method = Method::equal_time;
    for (const auto& e : survivors) set.add(e);
    set.normalize();
    seq.snapshots.push_back(make_snapshot(a, b, std::move(set)));
  }
  return seq;
}

std::optional<std::string> check_tiling(const SnapshotSequence& seq) {
  std::ostringstream os;
  if (seq.snapshots.empty()) return "sequence is empty";
  double total = 0.0;
  for (std::size_t k = 0; k < seq.snapshots.size(); ++k) {
    const auto& s = seq.snapshots[k];
    if (!(s.end_s > s.start_s)) {
      os << "snapshot " << k << " has non-positive duration";
      return os.str();
    }
    if (k > 0 && std::abs(s.start_s - seq.snapshots[k - 1].end_s) > kTilingTolerance) {
      os << "gap or overlap before snapshot " << k;
      return os.str();
    }
    if (s.inter_plane_count != static_cast<int>(s.edges.inter_plane_count())) {
      os << "snapshot " << k << " inter-plane count disagrees with its edges";
      return os.str();
    }
    total += s.duration();
  }
  const double first = seq.snapshots.front().start_s;
  if (first < -kTilingTolerance || first >= seq.period_s) return "first snapshot does not start inside the period";
  if (std::abs(total - seq.period_s) > kTilingTolerance) {
    os << "durations sum to " << total << " s, period is " << seq.period_s << " s";
    return os.str();
  }
  return std::nullopt;
}

}  // namespace polarsnap
