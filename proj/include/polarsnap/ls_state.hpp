#pragma once

#include <vector>

#include "polarsnap/constellation.hpp"

namespace polarsnap {

enum class Hemisphere { ascending, descending };

const char* to_string(Hemisphere h);

// A line of satellites: the N/2 satellites of one phase class. They share
// argument of latitude, hence latitude and direction of motion.
struct LsRow {
  int phase_class = 0;
  double arg_latitude_deg = 0.0;  // [0, 360)
  double latitude_deg = 0.0;
  Hemisphere hemisphere = Hemisphere::ascending;
  bool in_polar = false;
  std::vector<SatId> members;  // increasing plane order, planes of one parity
};

struct LsState {
  double time_s = 0.0;
  // Counted from the south pole in the ascending direction.
  std::vector<LsRow> rows;
  int nls = 0;
  int nls_pa = 0;
  int nls_npa = 0;
  // Rows that most recently left a polar area; -1 when the border is never
  // crossed.
  int ls_npa0_index = -1;             // ascending hemisphere (left the south cap)
  int ls_npa0_descending_index = -1;  // descending hemisphere (left the north cap)

  const LsRow& ls_npa0() const { return rows.at(static_cast<std::size_t>(ls_npa0_index)); }
  // Non-polar rows of one hemisphere, ordered from the exit border towards
  // the entry border.
  std::vector<const LsRow*> nonpolar_rows(Hemisphere h) const;
};

// Argument of latitude at which a row reaches the polar border; 90 when the
// border lies above the maximum reachable latitude.
double polar_border_arg_deg(const ConstellationSpec& spec, double polar_border_deg);

// Width of the non-polar window of one hemisphere measured in rows (2 u* / w_f).
double nonpolar_window_rows(const ConstellationSpec& spec, double polar_border_deg);

// Number of rows in one non-polar area.
int nonpolar_row_count(const ConstellationSpec& spec, double polar_border_deg);

// True when polar entries and exits coincide (2 u* / w_f is an integer, up
// to the event merge tolerance).
bool is_uniform_distribution(const ConstellationSpec& spec, double polar_border_deg);

// Argument of latitude of phase class c at time t.
double row_arg_latitude_deg(const ConstellationSpec& spec, int phase_class, double t);

// Requires an even plane count.
LsState build_ls_state(const ConstellationSpec& spec, const VisibilityModel& vis, double t);

}  // namespace polarsnap
