#include "polarsnap/topology.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace polarsnap {

const char* to_string(LinkKind k) {
  switch (k) {
    case LinkKind::intra_plane: return "intra_plane";
    case LinkKind::oblique: return "oblique";
    case LinkKind::horizontal: return "horizontal";
  }
  return "?";
}

const char* to_string(Method m) {
  switch (m) {
    case Method::reassignment: return "reassignment";
    case Method::fixed: return "fixed";
    case Method::equal_time: return "equal_time";
  }
  return "?";
}

const char* to_string(Trigger t) { return t == Trigger::enter ? "enter" : "exit"; }

LinkKind parse_link_kind(const std::string& s) {
  if (s == "intra_plane") return LinkKind::intra_plane;
  if (s == "oblique") return LinkKind::oblique;
  if (s == "horizontal") return LinkKind::horizontal;
  throw ValidationError("unknown link kind '" + s + "'");
}

Method parse_method(const std::string& s) {
  if (s == "reassignment") return Method::reassignment;
  if (s == "fixed") return Method::fixed;
  if (s == "equal_time") return Method::equal_time;
  throw ValidationError("unknown method '" + s + "'");
}

Trigger parse_trigger(const std::string& s) {
  if (s == "enter") return Trigger::enter;
  if (s == "exit") return Trigger::exit;
  throw ValidationError("unknown trigger '" + s + "'");
}

IslEdge make_edge(SatId x, SatId y, LinkKind kind) {
  if (y < x) std::swap(x, y);
  return IslEdge{x, y, kind};
}

void TopologyEdgeSet::normalize() {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

std::size_t TopologyEdgeSet::count(LinkKind k) const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [k](const IslEdge& e) { return e.kind == k; }));
}

std::vector<IslEdge> TopologyEdgeSet::inter_plane_edges() const {
  std::vector<IslEdge> out;
  std::copy_if(edges.begin(), edges.end(), std::back_inserter(out),
               [](const IslEdge& e) { return e.kind != LinkKind::intra_plane; });
  return out;
}

TopologyEdgeSet intra_plane_edges(const ConstellationSpec& spec) {
  spec.validate();
  TopologyEdgeSet set;
  for (int p = 1; p <= spec.plane_count; ++p)
    for (int j = 1; j <= spec.sats_per_plane; ++j)
      set.add(make_edge({p, j}, {p, j % spec.sats_per_plane + 1}, LinkKind::intra_plane));
  set.normalize();
  return set;
}

namespace {

// Member of `first` or `second` lying in plane p.
SatId chain_member(const LsRow& first, const LsRow& second, int p) {
  for (const auto* row : {&first, &second})
    for (const auto& s : row->members)
      if (s.plane == p) return s;
  throw ValidationError("rows do not cover plane " + std::to_string(p));
}

bool row_in_polar(const ConstellationSpec& spec, const VisibilityModel& vis, int c, double t) {
  if (polar_border_arg_deg(spec, vis.polar_border_deg) >= 90.0) return false;
  return std::abs(latitude_at_arg(spec, row_arg_latitude_deg(spec, c, t))) >= vis.polar_border_deg;
}

}  // namespace

std::vector<IslEdge> fixed_oblique_pairs(const ConstellationSpec& spec) {
  std::vector<IslEdge> out;
  for (int k = 0; k < spec.sats_per_plane; ++k) {
    for (int p = 1; p < spec.plane_count; ++p) {
      const auto a = member_of_class(spec, p, 2 * k + (p - 1) % 2);
      const auto b = member_of_class(spec, p + 1, 2 * k + p % 2);
      out.push_back(make_edge(*a, *b, LinkKind::oblique));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

TopologyEdgeSet fixed_topology(const ConstellationSpec& spec, const VisibilityModel& vis, double t) {
  TopologyEdgeSet set = intra_plane_edges(spec);
  set.generated_at = t;
  set.method = Method::fixed;
  std::vector<char> polar(static_cast<std::size_t>(spec.phase_class_count()));
  for (int c = 0; c < spec.phase_class_count(); ++c) polar[static_cast<std::size_t>(c)] = row_in_polar(spec, vis, c, t);
  for (const auto& e : fixed_oblique_pairs(spec)) {
    if (!polar[static_cast<std::size_t>(phase_class(spec, e.a))] && !polar[static_cast<std::size_t>(phase_class(spec, e.b))])
      set.add(e);
  }
  set.normalize();
  return set;
}

std::vector<IslEdge> oblique_chain(const ConstellationSpec& spec, const LsRow& first, const LsRow& second) {
  if ((first.phase_class - second.phase_class) % 2 == 0)
    throw ValidationError("oblique chain needs rows of opposite plane parity");
  std::vector<IslEdge> out;
  SatId prev = chain_member(first, second, 1);
  for (int p = 2; p <= spec.plane_count; ++p) {
    const SatId cur = chain_member(first, second, p);
    out.push_back(make_edge(prev, cur, LinkKind::oblique));
    prev = cur;
  }
  return out;
}

std::vector<IslEdge> horizontal_chain(const LsRow& row) {
  std::vector<IslEdge> out;
  for (std::size_t k = 1; k < row.members.size(); ++k)
    out.push_back(make_edge(row.members[k - 1], row.members[k], LinkKind::horizontal));
  return out;
}

namespace {

void check_ls_state(const ConstellationSpec& spec, const LsState& st) {
  if (static_cast<int>(st.rows.size()) != spec.phase_class_count())
    throw ValidationError("ls_state: row count does not match 2M");
  for (const auto& r : st.rows) {
    if (static_cast<int>(r.members.size()) != spec.plane_count / 2)
      throw ValidationError("ls_state: row does not hold N/2 satellites");
    const double expect = row_arg_latitude_deg(spec, r.phase_class, st.time_s);
    double diff = std::abs(expect - r.arg_latitude_deg);
    diff = std::min(diff, 360.0 - diff);
    if (diff > 1e-6) throw ValidationError("ls_state: row phase inconsistent with its time stamp");
    for (const auto& s : r.members)
      if (phase_class(spec, s) != r.phase_class) throw ValidationError("ls_state: member outside its phase class");
  }
  if (st.ls_npa0_index < 0 || st.ls_npa0_descending_index < 0)
    throw UnsupportedConfiguration("reassignment needs a polar border that is crossed");
}

}  // namespace

TopologyEdgeSet reassign_topology(const ConstellationSpec& spec, const VisibilityModel& vis, const LsState& ls_state,
                                  Trigger trigger) {
  spec.validate();
  if (spec.plane_count % 2 != 0)
    throw UnsupportedConfiguration("link reassignment requires an even number of planes");
  check_ls_state(spec, ls_state);

  const bool drop_last = trigger == Trigger::exit && !is_uniform_distribution(spec, vis.polar_border_deg);

  TopologyEdgeSet set = intra_plane_edges(spec);
  set.generated_at = ls_state.time_s;
  set.method = Method::reassignment;
  for (auto h : {Hemisphere::ascending, Hemisphere::descending}) {
    auto rows = ls_state.nonpolar_rows(h);
    const int anchor = h == Hemisphere::ascending ? ls_state.ls_npa0_index : ls_state.ls_npa0_descending_index;
    if (rows.empty() || rows.front() != &ls_state.rows[static_cast<std::size_t>(anchor)])
      throw ValidationError("ls_state: LS_npa0 is not the first non-polar row");
    // The row about to enter the polar cap would break a link mid-snapshot.
    if (drop_last) rows.pop_back();
    std::size_t k = 0;
    for (; k + 1 < rows.size(); k += 2)
      for (const auto& e : oblique_chain(spec, *rows[k], *rows[k + 1])) set.add(e);
    if (k < rows.size())
      for (const auto& e : horizontal_chain(*rows[k])) set.add(e);
  }
  set.normalize();
  return set;
}

std::vector<Violation> validate_topology(const ConstellationSpec& spec, const VisibilityModel& vis,
                                         const TopologyEdgeSet& edges, double t) {
  std::vector<Violation> out;
  auto report = [&](const char* rule, const IslEdge& e, const std::string& what) {
    std::ostringstream os;
    os << to_string(e.kind) << ' ' << to_string(e.a) << '-' << to_string(e.b) << ": " << what;
    out.push_back({rule, os.str()});
  };

  const int n = spec.plane_count;
  const int m = spec.sats_per_plane;
  std::map<SatId, int> inter_degree;
  for (std::size_t k = 0; k < edges.edges.size(); ++k) {
    const auto& e = edges.edges[k];
    if (k > 0 && !(edges.edges[k - 1] < e)) report("duplicate", e, "edge list not a sorted set");
    try {
      check_sat(spec, e.a);
      check_sat(spec, e.b);
    } catch (const DomainError& err) {
      report("endpoint", e, err.what());
      continue;
    }
    const int dp = std::abs(e.a.plane - e.b.plane);
    const int dj = std::abs(e.a.index - e.b.index);
    switch (e.kind) {
      case LinkKind::intra_plane:
        if (dp != 0 || !(dj == 1 || dj == m - 1)) report("structure", e, "intra-plane link between non-adjacent satellites");
        break;
      case LinkKind::oblique:
        if (dp != 1) report("structure", e, "oblique link not between adjacent planes");
        break;
      case LinkKind::horizontal:
        if (dp != 2) report("structure", e, "horizontal link not two planes apart");
        if (phase_class(spec, e.a) != phase_class(spec, e.b)) report("structure", e, "horizontal endpoints in different rows");
        break;
    }
    if (e.kind == LinkKind::intra_plane) continue;
    if (n > 2 && dp == n - 1) report("seam", e, "link crosses the seam between the first and last plane");

    ++inter_degree[e.a];
    ++inter_degree[e.b];
    const SatState sa = satellite_state(spec, e.a, t);
    const SatState sb = satellite_state(spec, e.b, t);
    const double border = vis.polar_border_deg + kPolarLatitudeSlackDeg;
    if (std::abs(sa.latitude_deg) > border || std::abs(sb.latitude_deg) > border)
      report("polar", e, "endpoint inside a polar area");
    const double angle = geocentric_angle(sa.position, sb.position);
    if (angle > vis.theta_max_deg + 1e-9) report("visibility", e, "geocentric angle " + std::to_string(angle) + " exceeds theta_max");
    if (e.kind == LinkKind::horizontal) {
      const double floor = vis.horizontal_latitude_deg - kPolarLatitudeSlackDeg;
      if (std::abs(sa.latitude_deg) < floor || std::abs(sb.latitude_deg) < floor)
        report("horizontal_range", e, "endpoint below the horizontal survival latitude");
    }
  }
  for (const auto& [sat, deg] : inter_degree) {
    if (deg > 2) out.push_back({"degree", to_string(sat) + " has " + std::to_string(deg) + " inter-plane links"});
  }
  return out;
}

}  // namespace polarsnap
