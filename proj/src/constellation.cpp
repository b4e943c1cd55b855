#include "polarsnap/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace polarsnap {

double wrap360(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  if (r >= 360.0) r -= 360.0;
  return r;
}

void ConstellationSpec::validate() const {
  if (plane_count < 2) throw DomainError("constellation: plane_count must be >= 2");
  if (sats_per_plane < 3) throw DomainError("constellation: sats_per_plane must be >= 3");
  if (!(inclination_deg > 0.0 && inclination_deg < 180.0))
    throw DomainError("constellation: inclination must lie in (0, 180) degrees");
  if (!(altitude_km > 0.0)) throw DomainError("constellation: altitude must be positive");
  if (!(earth_radius_km > 0.0)) throw DomainError("constellation: earth_radius must be positive");
  if (period_s && !(*period_s > 0.0)) throw DomainError("constellation: period must be positive");
  if (!(inter_plane_spacing_deg() > 0.0) || inter_plane_spacing_deg() * (plane_count - 1) >= 180.0)
    throw DomainError("constellation: planes must fit inside 180 degrees of right ascension");
  if (!(grazing_altitude_km >= 0.0 && grazing_altitude_km < altitude_km))
    throw DomainError("constellation: grazing altitude must lie in [0, altitude)");
}

ConstellationSpec iridium_spec() {
  ConstellationSpec s;
  s.name = "iridium";
  s.plane_count = 6;
  s.sats_per_plane = 11;
  s.inclination_deg = 86.4;
  s.altitude_km = 780.0;
  s.period_s = 100.45 * 60.0;
  s.plane_spacing_deg = 31.6;
  return s;
}

ConstellationSpec teledesic_spec() {
  ConstellationSpec s;
  s.name = "teledesic";
  s.plane_count = 12;
  s.sats_per_plane = 24;
  s.inclination_deg = 84.7;
  s.altitude_km = 1375.0;
  s.period_s = 113.23 * 60.0;
  s.plane_spacing_deg = 15.36;
  return s;
}

std::string to_string(const SatId& sat) {
  std::ostringstream os;
  os << 'S' << sat.plane << '.' << sat.index;
  return os.str();
}

void check_sat(const ConstellationSpec& spec, const SatId& sat) {
  if (sat.plane < 1 || sat.plane > spec.plane_count || sat.index < 1 || sat.index > spec.sats_per_plane)
    throw DomainError("invalid satellite id " + to_string(sat));
}

double orbit_period(const ConstellationSpec& spec) {
  if (spec.period_s) return *spec.period_s;
  const double a = spec.orbit_radius_km();
  return 2.0 * std::numbers::pi * std::sqrt(a * a * a / kEarthMu);
}

int phase_class(const ConstellationSpec& spec, const SatId& sat) {
  check_sat(spec, sat);
  return (2 * (sat.index - 1) + (sat.plane - 1)) % spec.phase_class_count();
}

std::optional<SatId> member_of_class(const ConstellationSpec& spec, int plane, int phase_class) {
  if ((plane - 1) % 2 != phase_class % 2) return std::nullopt;
  const int classes = spec.phase_class_count();
  const int offset = ((phase_class - (plane - 1)) % classes + classes) % classes;
  return SatId{plane, offset / 2 + 1};
}

double argument_of_latitude_deg(const ConstellationSpec& spec, const SatId& sat, double t) {
  const double u0 = phase_class(spec, sat) * spec.phase_offset_deg();
  return wrap360(u0 + 360.0 * t / orbit_period(spec));
}

double latitude_at_arg(const ConstellationSpec& spec, double u_deg) {
  const double s = std::sin(deg2rad(spec.effective_inclination_deg())) * std::sin(deg2rad(u_deg));
  return rad2deg(std::asin(std::clamp(s, -1.0, 1.0)));
}

Position satellite_position(const ConstellationSpec& spec, const SatId& sat, double t) {
  const double u = deg2rad(argument_of_latitude_deg(spec, sat, t));
  const double raan = deg2rad((sat.plane - 1) * spec.inter_plane_spacing_deg());
  const double inc = deg2rad(spec.effective_inclination_deg());
  const double cu = std::cos(u), su = std::sin(u);
  const double co = std::cos(raan), so = std::sin(raan);
  const double r = spec.orbit_radius_km();
  return Position{r * (cu * co - su * std::cos(inc) * so), r * (cu * so + su * std::cos(inc) * co),
                  r * su * std::sin(inc)};
}

SatState satellite_state(const ConstellationSpec& spec, const SatId& sat, double t) {
  check_sat(spec, sat);
  SatState st;
  st.sat = sat;
  st.time_s = t;
  st.position = satellite_position(spec, sat, t);
  const double u = argument_of_latitude_deg(spec, sat, t);
  st.latitude_deg = latitude_at_arg(spec, u);
  const double lon_inertial = rad2deg(std::atan2(st.position.y(), st.position.x()));
  double lon = wrap360(lon_inertial - rad2deg(kEarthRotationRadS * t));
  if (lon > 180.0) lon -= 360.0;
  st.longitude_deg = lon;
  st.ascending = u < 90.0 || u >= 270.0;
  return st;
}

double theta_max_deg(const ConstellationSpec& spec) {
  const double ratio = (spec.earth_radius_km + spec.grazing_altitude_km) / spec.orbit_radius_km();
  return 2.0 * rad2deg(std::acos(std::clamp(ratio, -1.0, 1.0)));
}

double horizontal_survival_latitude(double theta_max, double plane_spacing) {
  const double c2 = std::cos(deg2rad(2.0 * plane_spacing));
  const double arg = (std::cos(deg2rad(theta_max)) - c2) / (1.0 - c2);
  if (!(arg >= 0.0 && arg <= 1.0))
    throw InfeasibleGeometry("horizontal links are visible at every latitude (theta_max exceeds twice the plane spacing)");
  return rad2deg(std::asin(std::sqrt(arg)));
}

double horizontal_survival_latitude(const ConstellationSpec& spec, const VisibilityModel& vis) {
  return horizontal_survival_latitude(vis.theta_max_deg, spec.inter_plane_spacing_deg());
}

VisibilityModel make_visibility(const ConstellationSpec& spec, double polar_border_deg) {
  if (!(polar_border_deg > 0.0 && polar_border_deg < 90.0))
    throw DomainError("polar border latitude must lie in (0, 90) degrees");
  VisibilityModel vis;
  vis.theta_max_deg = theta_max_deg(spec);
  vis.polar_border_deg = polar_border_deg;
  try {
    vis.horizontal_latitude_deg = horizontal_survival_latitude(spec, vis);
  } catch (const InfeasibleGeometry&) {
    vis.horizontal_latitude_deg = 0.0;
  }
  return vis;
}

void GroundStation::validate() const {
  if (std::abs(latitude_deg) > 90.0) throw DomainError("ground station " + name + ": |latitude| > 90");
  if (min_elevation_deg < 0.0) throw DomainError("ground station " + name + ": negative min elevation");
}

GroundStation beijing() { return {"Beijing", 39.904, 116.407, 10.0}; }
GroundStation london() { return {"London", 51.507, -0.128, 10.0}; }

Position ground_position(const GroundStation& gs, double t, double earth_radius_km) {
  const double lat = deg2rad(gs.latitude_deg);
  const double lon = deg2rad(gs.longitude_deg) + kEarthRotationRadS * t;
  return earth_radius_km * Position{std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
}

double elevation_angle(const GroundStation& gs, const SatState& sat_state, double t, double earth_radius_km) {
  const Position g = ground_position(gs, t, earth_radius_km);
  const Position d = sat_state.position - g;
  const double dn = d.norm();
  if (dn == 0.0) return 90.0;
  const double s = d.dot(g.normalized()) / dn;
  return rad2deg(std::asin(std::clamp(s, -1.0, 1.0)));
}

}  // namespace polarsnap
