#pragma once

#include <Eigen/Dense>

#include <compare>
#include <numbers>
#include <optional>
#include <string>

#include "polarsnap/errors.hpp"

namespace polarsnap {

inline constexpr double kEarthRadiusKm = 6378.137;
inline constexpr double kEarthMu = 398600.4418;        // km^3 / s^2
inline constexpr double kSpeedOfLightKmS = 299792.458;
inline constexpr double kEarthRotationRadS = 7.2921159e-5;  // sidereal
// Calibrated so that the Iridium horizontal survival latitude is 32.81 deg.
inline constexpr double kDefaultGrazingAltitudeKm = 48.5;

inline constexpr double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / std::numbers::pi; }

// Wraps an angle into [0, 360).
double wrap360(double deg);

using Position = Eigen::Vector3d;

// Walker-star constellation: N planes spread over 180 deg of right ascension,
// M satellites per plane, adjacent planes phased by half the in-plane spacing.
struct ConstellationSpec {
  std::string name;
  int plane_count = 0;
  int sats_per_plane = 0;
  double inclination_deg = 90.0;
  double altitude_km = 0.0;
  std::optional<double> period_s;
  std::optional<double> plane_spacing_deg;  // defaults to 180 / N
  double earth_radius_km = kEarthRadiusKm;
  double grazing_altitude_km = kDefaultGrazingAltitudeKm;
  // Treat every plane as exactly polar (i = 90 deg) for all geometry.
  bool ideal_polar = false;

  double intra_plane_spacing_deg() const { return 360.0 / sats_per_plane; }
  double phase_offset_deg() const { return 180.0 / sats_per_plane; }
  double inter_plane_spacing_deg() const {
    return plane_spacing_deg.value_or(180.0 / plane_count);
  }
  double effective_inclination_deg() const { return ideal_polar ? 90.0 : inclination_deg; }
  double orbit_radius_km() const { return earth_radius_km + altitude_km; }
  int satellite_count() const { return plane_count * sats_per_plane; }
  int phase_class_count() const { return 2 * sats_per_plane; }

  // Throws DomainError on structurally invalid parameters.
  void validate() const;
};

ConstellationSpec iridium_spec();
ConstellationSpec teledesic_spec();

struct SatId {
  int plane = 1;  // 1..N
  int index = 1;  // 1..M

  friend auto operator<=>(const SatId&, const SatId&) = default;
};

std::string to_string(const SatId& sat);

void check_sat(const ConstellationSpec& spec, const SatId& sat);
// Dense 0-based index, plane-major.
inline int linear_index(const ConstellationSpec& spec, const SatId& sat) {
  return (sat.plane - 1) * spec.sats_per_plane + (sat.index - 1);
}
inline SatId sat_from_linear(const ConstellationSpec& spec, int k) {
  return SatId{k / spec.sats_per_plane + 1, k % spec.sats_per_plane + 1};
}

struct SatState {
  SatId sat;
  double time_s = 0.0;
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;  // Earth-fixed, (-180, 180]
  Position position = Position::Zero();  // inertial, km
  bool ascending = true;
};

double orbit_period(const ConstellationSpec& spec);

// Phase class c in [0, 2M): the satellite's argument of latitude at t = 0
// is c times the phase offset.
int phase_class(const ConstellationSpec& spec, const SatId& sat);
// Satellite of plane p that belongs to phase class c (planes whose parity
// does not match c have no member).
std::optional<SatId> member_of_class(const ConstellationSpec& spec, int plane, int phase_class);

double argument_of_latitude_deg(const ConstellationSpec& spec, const SatId& sat, double t);
// Latitude reached at argument of latitude u (independent of plane).
double latitude_at_arg(const ConstellationSpec& spec, double u_deg);

Position satellite_position(const ConstellationSpec& spec, const SatId& sat, double t);
SatState satellite_state(const ConstellationSpec& spec, const SatId& sat, double t);

// Angle subtended at the Earth's center by two position vectors, degrees.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar geocentric_angle(const Eigen::MatrixBase<DerivedA>& a,
                                           const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  const Scalar na = a.norm();
  const Scalar nb = b.norm();
  if (na == Scalar(0) || nb == Scalar(0)) throw DomainError("geocentric_angle: zero position vector");
  // atan2 form stays accurate near 0 and 180 degrees.
  const Scalar cross = a.cross(b).norm();
  const Scalar dot = a.dot(b);
  return std::atan2(cross, dot) * Scalar(180) / std::numbers::pi_v<Scalar>;
}

// One-way free-space propagation delay between two points, seconds.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar propagation_delay(const Eigen::MatrixBase<DerivedA>& a,
                                            const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  return (a - b).norm() / Scalar(kSpeedOfLightKmS);
}

struct VisibilityModel {
  double theta_max_deg = 0.0;
  double horizontal_latitude_deg = 0.0;  // 0 when horizontal links are always visible
  double polar_border_deg = 0.0;
};

// Largest geocentric separation at which the line of sight between two
// satellites clears the grazing altitude.
double theta_max_deg(const ConstellationSpec& spec);

double horizontal_survival_latitude(double theta_max_deg, double plane_spacing_deg);
double horizontal_survival_latitude(const ConstellationSpec& spec, const VisibilityModel& vis);

// theta_max from the grazing altitude, survival latitude (clamped to 0 when
// horizontal links never lose sight of each other) and the polar border.
VisibilityModel make_visibility(const ConstellationSpec& spec, double polar_border_deg);

struct GroundStation {
  std::string name;
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;
  double min_elevation_deg = 0.0;

  void validate() const;
};

GroundStation beijing();
GroundStation london();

// Inertial position of the station at t (Greenwich on the x axis at t = 0).
Position ground_position(const GroundStation& gs, double t, double earth_radius_km = kEarthRadiusKm);

double elevation_angle(const GroundStation& gs, const SatState& sat_state, double t,
                       double earth_radius_km = kEarthRadiusKm);

}  // namespace polarsnap
