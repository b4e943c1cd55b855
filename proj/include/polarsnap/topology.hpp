#pragma once

#include <string>
#include <vector>

#include "polarsnap/ls_state.hpp"

namespace polarsnap {

enum class LinkKind { intra_plane, oblique, horizontal };
enum class Method { reassignment, fixed, equal_time };
enum class Trigger { enter, exit };

const char* to_string(LinkKind k);
const char* to_string(Method m);
const char* to_string(Trigger t);
LinkKind parse_link_kind(const std::string& s);
Method parse_method(const std::string& s);
Trigger parse_trigger(const std::string& s);

// Undirected ISL; a < b after make_edge.
struct IslEdge {
  SatId a;
  SatId b;
  LinkKind kind = LinkKind::intra_plane;

  friend auto operator<=>(const IslEdge&, const IslEdge&) = default;
};

IslEdge make_edge(SatId x, SatId y, LinkKind kind);

struct TopologyEdgeSet {
  std::vector<IslEdge> edges;  // sorted, unique
  double generated_at = 0.0;
  Method method = Method::fixed;

  void add(const IslEdge& e) { edges.push_back(e); }
  // Restores set order and removes duplicates.
  void normalize();
  std::size_t count(LinkKind k) const;
  std::size_t inter_plane_count() const { return edges.size() - count(LinkKind::intra_plane); }
  std::vector<IslEdge> inter_plane_edges() const;

  friend bool operator==(const TopologyEdgeSet& x, const TopologyEdgeSet& y) { return x.edges == y.edges; }
};

TopologyEdgeSet intra_plane_edges(const ConstellationSpec& spec);

// Every zigzag chain of the baseline: phase classes (2k, 2k+1) wired across
// planes 1..N. Returned without regard to polar state.
std::vector<IslEdge> fixed_oblique_pairs(const ConstellationSpec& spec);

// Baseline assignment: a chain's oblique links are up while both of its
// rows are outside the polar areas.
TopologyEdgeSet fixed_topology(const ConstellationSpec& spec, const VisibilityModel& vis, double t);

// Oblique zigzag over two rows holding complementary plane parities.
std::vector<IslEdge> oblique_chain(const ConstellationSpec& spec, const LsRow& first, const LsRow& second);
// Links members of one row in planes two apart.
std::vector<IslEdge> horizontal_chain(const LsRow& row);

TopologyEdgeSet reassign_topology(const ConstellationSpec& spec, const VisibilityModel& vis, const LsState& ls_state,
                                  Trigger trigger);

struct Violation {
  std::string rule;
  std::string detail;
};

// Latitude slack used when testing polar membership; covers event-time
// root-solving error.
inline constexpr double kPolarLatitudeSlackDeg = 1e-6;

std::vector<Violation> validate_topology(const ConstellationSpec& spec, const VisibilityModel& vis,
                                         const TopologyEdgeSet& edges, double t);

}  // namespace polarsnap
