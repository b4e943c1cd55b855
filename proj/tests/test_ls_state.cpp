#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "polarsnap/ls_state.hpp"

using namespace polarsnap;
using doctest::Approx;

TEST_CASE("non-polar row counts") {
  const auto ir = iridium_spec();
  CHECK(nonpolar_row_count(ir, 60.0) == 7);
  CHECK(nonpolar_row_count(ir, 65.0) == 7);
  CHECK(nonpolar_row_count(ir, 70.0) == 8);
  CHECK(nonpolar_row_count(ir, 75.0) == 9);
  const auto te = teledesic_spec();
  CHECK(nonpolar_row_count(te, 75.0) == 20);
  CHECK(nonpolar_row_count(te, 60.0) == 16);

  auto ideal = te;
  ideal.ideal_polar = true;
  CHECK(nonpolar_window_rows(ideal, 60.0) == 16.0);
  CHECK(is_uniform_distribution(ideal, 60.0));
  CHECK(is_uniform_distribution(ideal, 75.0));
  CHECK_FALSE(is_uniform_distribution(ideal, 65.0));
  CHECK_FALSE(is_uniform_distribution(ir, 60.0));
}

TEST_CASE("polar border in argument of latitude") {
  auto s = iridium_spec();
  const double u = polar_border_arg_deg(s, 60.0);
  CHECK(latitude_at_arg(s, u) == Approx(60.0));
  CHECK(u > 60.0);
  CHECK(polar_border_arg_deg(s, 87.0) == 90.0);  // never reached
  s.ideal_polar = true;
  CHECK(polar_border_arg_deg(s, 60.0) == Approx(60.0));
}

TEST_CASE("LS state structure") {
  const auto ir = iridium_spec();
  const auto vis = make_visibility(ir, 70.0);
  for (double t : {0.0, 17.0, 999.5, 4321.0}) {
    const auto st = build_ls_state(ir, vis, t);
    REQUIRE(st.rows.size() == 22);
    CHECK(st.nls == 22);
    CHECK(st.nls_npa == 8);
    CHECK(st.nls_pa == 3);
    std::set<int> classes;
    double prev = -1.0;
    for (const auto& r : st.rows) {
      classes.insert(r.phase_class);
      REQUIRE(r.members.size() == 3);
      for (const auto& s : r.members) {
        CHECK(phase_class(ir, s) == r.phase_class);
        // every member of a line shares its latitude
        CHECK(satellite_state(ir, s, t).latitude_deg == Approx(r.latitude_deg));
      }
      CHECK(r.in_polar == (std::abs(r.latitude_deg) >= 70.0));
      const double key = wrap360(r.arg_latitude_deg + 90.0);
      CHECK(key > prev);
      prev = key;
    }
    CHECK(classes.size() == 22);
    REQUIRE(st.ls_npa0_index >= 0);
    REQUIRE(st.ls_npa0_descending_index >= 0);
    CHECK_FALSE(st.ls_npa0().in_polar);
    CHECK(st.ls_npa0().hemisphere == Hemisphere::ascending);
    // ascending list starts at LS_npa0 and runs north
    const auto asc = st.nonpolar_rows(Hemisphere::ascending);
    REQUIRE_FALSE(asc.empty());
    CHECK(asc.front() == &st.ls_npa0());
    for (std::size_t k = 1; k < asc.size(); ++k) CHECK(asc[k]->latitude_deg > asc[k - 1]->latitude_deg);
    const auto desc = st.nonpolar_rows(Hemisphere::descending);
    CHECK(desc.front() == &st.rows[static_cast<std::size_t>(st.ls_npa0_descending_index)]);
    for (std::size_t k = 1; k < desc.size(); ++k) CHECK(desc[k]->latitude_deg < desc[k - 1]->latitude_deg);
    // 7.x rows fit in the window, so a hemisphere holds 8 or 9 of them
    CHECK(asc.size() + desc.size() >= 16);
  }
}

TEST_CASE("odd plane count is rejected") {
  auto s = iridium_spec();
  s.plane_count = 5;
  s.plane_spacing_deg = 36.0;
  CHECK_THROWS_AS(build_ls_state(s, make_visibility(s, 60.0), 0.0), UnsupportedConfiguration);
}

TEST_CASE("no polar cap when the border is out of reach") {
  const auto ir = iridium_spec();
  const auto st = build_ls_state(ir, make_visibility(ir, 88.0), 100.0);
  CHECK(st.ls_npa0_index == -1);
  for (const auto& r : st.rows) CHECK_FALSE(r.in_polar);
}
