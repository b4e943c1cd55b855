#include "polarsnap/routing.hpp"

#include <cmath>
#include <limits>
#include <queue>

namespace polarsnap {

UtilizationReport utilization(const SnapshotSequence& seq, const ConstellationSpec& spec) {
  if (seq.snapshots.empty()) throw DomainError("utilization of an empty sequence");
  double link_time = 0.0;
  for (const auto& s : seq.snapshots) link_time += s.inter_plane_count * s.duration();
  const double capacity = static_cast<double>(spec.plane_count - 1) * spec.sats_per_plane * seq.period_s;
  return {seq.method, seq.polar_border_deg, link_time / capacity};
}

std::optional<SatId> attach_ground(const GroundStation& gs, double t, const ConstellationSpec& spec) {
  std::optional<SatId> best;
  double best_el = -std::numeric_limits<double>::infinity();
  // Plane-major iteration visits SatIds in increasing order, so a strict
  // improvement test keeps the lower id on ties.
  for (int k = 0; k < spec.satellite_count(); ++k) {
    const SatId sat = sat_from_linear(spec, k);
    const double el = elevation_angle(gs, satellite_state(spec, sat, t), t, spec.earth_radius_km);
    if (el + kElevationTieDeg < gs.min_elevation_deg) continue;
    if (!best || el > best_el + kElevationTieDeg) {
      best = sat;
      best_el = el;
    }
  }
  return best;
}

PathResult shortest_delay(const TopologySnapshot& snapshot, double t, const SatId& src, const SatId& dst,
                          const ConstellationSpec& spec) {
  if (t < snapshot.start_s || t >= snapshot.end_s) throw DomainError("shortest_delay: t outside the snapshot interval");
  check_sat(spec, src);
  check_sat(spec, dst);

  const int n = spec.satellite_count();
  std::vector<Position> pos(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) pos[static_cast<std::size_t>(k)] = satellite_position(spec, sat_from_linear(spec, k), t);

  std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(n));
  for (const auto& e : snapshot.edges.edges) {
    const int a = linear_index(spec, e.a), b = linear_index(spec, e.b);
    const double w = propagation_delay(pos[static_cast<std::size_t>(a)], pos[static_cast<std::size_t>(b)]);
    adj[static_cast<std::size_t>(a)].emplace_back(b, w);
    adj[static_cast<std::size_t>(b)].emplace_back(a, w);
  }

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<std::size_t>(n), inf);
  std::vector<int> prev(static_cast<std::size_t>(n), -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  const int s = linear_index(spec, src), d = linear_index(spec, dst);
  dist[static_cast<std::size_t>(s)] = 0.0;
  pq.emplace(0.0, s);
  while (!pq.empty()) {
    const auto [du, u] = pq.top();
    pq.pop();
    if (du > dist[static_cast<std::size_t>(u)]) continue;
    if (u == d) break;
    for (const auto& [v, w] : adj[static_cast<std::size_t>(u)]) {
      const double nd = du + w;
      // Ties resolve towards the lower predecessor for reproducible paths.
      auto& dv = dist[static_cast<std::size_t>(v)];
      auto& pv = prev[static_cast<std::size_t>(v)];
      if (nd < dv || (nd == dv && u < pv)) {
        dv = nd;
        pv = u;
        pq.emplace(nd, v);
      }
    }
  }

  PathResult r;
  if (dist[static_cast<std::size_t>(d)] == inf) return r;
  r.reachable = true;
  r.delay_s = dist[static_cast<std::size_t>(d)];
  for (int v = d; v != -1; v = prev[static_cast<std::size_t>(v)]) r.path.push_back(sat_from_linear(spec, v));
  std::reverse(r.path.begin(), r.path.end());
  return r;
}

DelaySeries delay_experiment(const ConstellationSpec& spec, const SnapshotSequence& seq, const GroundStation& src,
                             const GroundStation& dst, double duration_s, double interval_s) {
  if (!(duration_s > 0.0) || !(interval_s > 0.0)) throw DomainError("delay experiment needs positive duration and interval");
  src.validate();
  dst.validate();

  DelaySeries out;
  out.source = src;
  out.destination = dst;
  out.method = seq.method;
  out.polar_border_deg = seq.polar_border_deg;

  const auto count = static_cast<std::size_t>(std::ceil(duration_s / interval_s - 1e-9));
  double total = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    DelaySample sample;
    sample.send_time_s = static_cast<double>(k) * interval_s;
    const double t = sample.send_time_s;
    const auto up = attach_ground(src, t, spec);
    const auto down = attach_ground(dst, t, spec);
    if (up && down) {
      // Satellite motion repeats every period; the ground does not, so UDL
      // geometry uses the true send time.
      const double tau = seq.local_time(t);
      const auto& snap = seq.at(t);
      const PathResult path = shortest_delay(snap, tau, *up, *down, spec);
      if (path.reachable) {
        const double uplink = propagation_delay(ground_position(src, t, spec.earth_radius_km), satellite_position(spec, *up, t));
        const double downlink =
            propagation_delay(satellite_position(spec, *down, t), ground_position(dst, t, spec.earth_radius_km));
        sample.reachable = true;
        sample.delay_s = uplink + path.delay_s + downlink;
        sample.hops = static_cast<int>(path.path.size()) + 1;
        for (std::size_t i = 1; i < path.path.size(); ++i) {
          const auto& a = path.path[i - 1];
          const auto& b = path.path[i];
          if (std::abs(a.plane - b.plane) == 2) sample.uses_horizontal = true;
        }
        total += sample.delay_s;
      }
    }
    if (!sample.reachable) ++out.unreachable;
    out.samples.push_back(sample);
  }
  const std::size_t reached = out.samples.size() - out.unreachable;
  out.average_delay_s = reached ? total / static_cast<double>(reached) : 0.0;
  return out;
}

}  // namespace polarsnap
