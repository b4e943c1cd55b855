#include "polarsnap/ls_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polarsnap/partition.hpp"

namespace polarsnap {

const char* to_string(Hemisphere h) { return h == Hemisphere::ascending ? "ascending" : "descending"; }

double polar_border_arg_deg(const ConstellationSpec& spec, double polar_border_deg) {
  const double s = std::sin(deg2rad(polar_border_deg)) / std::sin(deg2rad(spec.effective_inclination_deg()));
  if (s >= 1.0) return 90.0;
  return rad2deg(std::asin(s));
}

double nonpolar_window_rows(const ConstellationSpec& spec, double polar_border_deg) {
  if (spec.ideal_polar) {
    // Exact rational form of 2 L_pa / w_f; avoids asin round-off.
    return 2.0 * polar_border_deg * spec.sats_per_plane / 180.0;
  }
  return 2.0 * polar_border_arg_deg(spec, polar_border_deg) / spec.phase_offset_deg();
}

int nonpolar_row_count(const ConstellationSpec& spec, double polar_border_deg) {
  const double x = nonpolar_window_rows(spec, polar_border_deg);
  return std::min(spec.sats_per_plane, static_cast<int>(std::floor(x + 1e-9)));
}

bool is_uniform_distribution(const ConstellationSpec& spec, double polar_border_deg) {
  const double x = nonpolar_window_rows(spec, polar_border_deg);
  const double row_time = orbit_period(spec) / spec.phase_class_count();
  return std::abs(x - std::round(x)) * row_time < kEventMergeTolerance;
}

double row_arg_latitude_deg(const ConstellationSpec& spec, int phase_class, double t) {
  return wrap360(phase_class * spec.phase_offset_deg() + 360.0 * t / orbit_period(spec));
}

std::vector<const LsRow*> LsState::nonpolar_rows(Hemisphere h) const {
  std::vector<const LsRow*> out;
  for (const auto& r : rows)
    if (!r.in_polar && r.hemisphere == h) out.push_back(&r);
  return out;
}

LsState build_ls_state(const ConstellationSpec& spec, const VisibilityModel& vis, double t) {
  spec.validate();
  if (spec.plane_count % 2 != 0)
    throw UnsupportedConfiguration("line-of-satellites model requires an even number of planes");

  const int classes = spec.phase_class_count();
  const double border_u = polar_border_arg_deg(spec, vis.polar_border_deg);
  const bool has_polar_area = border_u < 90.0;

  LsState st;
  st.time_s = t;
  st.nls = classes;
  st.nls_npa = nonpolar_row_count(spec, vis.polar_border_deg);
  st.nls_pa = spec.sats_per_plane - st.nls_npa;

  st.rows.reserve(static_cast<std::size_t>(classes));
  for (int c = 0; c < classes; ++c) {
    LsRow row;
    row.phase_class = c;
    row.arg_latitude_deg = row_arg_latitude_deg(spec, c, t);
    row.latitude_deg = latitude_at_arg(spec, row.arg_latitude_deg);
    row.hemisphere = (row.arg_latitude_deg < 90.0 || row.arg_latitude_deg >= 270.0) ? Hemisphere::ascending
                                                                                    : Hemisphere::descending;
    row.in_polar = has_polar_area && std::abs(row.latitude_deg) >= vis.polar_border_deg;
    for (int p = 1; p <= spec.plane_count; ++p)
      if (auto s = member_of_class(spec, p, c)) row.members.push_back(*s);
    st.rows.push_back(std::move(row));
  }
  std::sort(st.rows.begin(), st.rows.end(), [](const LsRow& a, const LsRow& b) {
    const double ka = wrap360(a.arg_latitude_deg + 90.0), kb = wrap360(b.arg_latitude_deg + 90.0);
    if (ka != kb) return ka < kb;
    return a.phase_class < b.phase_class;
  });

  if (!has_polar_area) return st;

  // Angular distance travelled since leaving the polar cap behind the row.
  auto since_exit = [&](const LsRow& r) {
    const double exit_u = r.hemisphere == Hemisphere::ascending ? -border_u : 180.0 - border_u;
    return wrap360(r.arg_latitude_deg - exit_u);
  };
  for (auto h : {Hemisphere::ascending, Hemisphere::descending}) {
    int best = -1;
    double best_since = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < st.rows.size(); ++k) {
      const auto& r = st.rows[k];
      if (r.in_polar || r.hemisphere != h) continue;
      const double d = since_exit(r);
      if (d < best_since || (d == best_since && r.phase_class < st.rows[static_cast<std::size_t>(best)].phase_class)) {
        best = static_cast<int>(k);
        best_since = d;
      }
    }
    (h == Hemisphere::ascending ? st.ls_npa0_index : st.ls_npa0_descending_index) = best;
  }
  return st;
}

}  // namespace polarsnap
