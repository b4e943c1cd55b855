#include "polarsnap/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "polarsnap/partition.hpp"

namespace polarsnap {

namespace {

std::string describe(const std::string& path, int line, const std::string& message) {
  std::ostringstream os;
  os << path;
  if (line > 0) os << ':' << line;
  os << ": " << message;
  return os.str();
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

}  // namespace

ScenarioError::ScenarioError(Kind kind, std::string path, int line, const std::string& message)
    : std::runtime_error(describe(path, line, message)), kind_(kind), path_(std::move(path)), line_(line) {}

bool ScenarioConfig::has_method(Method m) const { return std::find(methods.begin(), methods.end(), m) != methods.end(); }

double ScenarioConfig::equal_time_delta() const {
  return equal_time_delta_s.value_or(orbit_period(constellation) / (2.0 * constellation.sats_per_plane));
}

void ScenarioConfig::validate(const std::string& origin) const {
  auto fail = [&](const std::string& field, const std::string& what) {
    throw ScenarioError(ScenarioError::Kind::invalid, origin, 0, field + ": " + what);
  };
  try {
    constellation.validate();
  } catch (const DomainError& e) {
    fail("constellation", e.what());
  }
  if (polar_borders_deg.empty()) fail("polar_border_deg", "at least one polar border latitude is required");
  for (double l : polar_borders_deg)
    if (!(l > 0.0 && l < 90.0)) fail("polar_border_deg", "value " + std::to_string(l) + " outside (0, 90)");
  if (methods.empty()) fail("methods", "at least one method is required");
  if (equal_time_delta_s && !(*equal_time_delta_s > 0.0)) fail("equal_time_delta", "must be positive");
  if (ground) {
    try {
      ground->source.validate();
      ground->destination.validate();
    } catch (const DomainError& e) {
      fail("station", e.what());
    }
    if (!(ground->duration_s > 0.0)) fail("duration_s", "must be positive");
    if (!(ground->interval_s > 0.0)) fail("interval_s", "must be positive");
  }
}

ScenarioConfig parse_scenario(const std::string& text, const std::string& origin) {
  using Kind = ScenarioError::Kind;
  static const std::map<std::string, std::set<std::string>> kKeys = {
      {"constellation",
       {"name", "planes", "sats_per_plane", "inclination_deg", "altitude_km", "period_min", "period_s",
        "plane_spacing_deg", "earth_radius_km", "grazing_altitude_km", "ideal_polar"}},
      {"partition", {"polar_border_deg", "methods", "trigger", "equal_time_delta"}},
      {"ground", {"station", "duration_s", "interval_s"}},
      {"output", {"directory", "random_seed"}},
  };

  ScenarioConfig cfg;
  cfg.methods.clear();
  std::vector<GroundStation> stations;
  bool ground_seen = false;
  std::string section;
  std::set<std::string> seen;
  int lineno = 0;

  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    auto syntax = [&](const std::string& what) { return ScenarioError(Kind::syntax, origin, lineno, what); };
    auto invalid = [&](const std::string& what) { return ScenarioError(Kind::invalid, origin, lineno, what); };
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw syntax("unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!kKeys.count(section)) throw syntax("unknown section [" + section + "]");
      if (section == "ground") ground_seen = true;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw syntax("expected 'key = value'");
    if (section.empty()) throw syntax("key outside of any section");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (!kKeys.at(section).count(key)) throw syntax("unknown key '" + key + "' in [" + section + "]");
    if (key != "station" && !seen.insert(section + "." + key).second) throw syntax("duplicate key '" + key + "'");
    if (value.empty()) throw syntax("empty value for '" + key + "'");

    auto number = [&](const std::string& s) {
      double v = 0.0;
      const auto* end = s.data() + s.size();
      auto [p, ec] = std::from_chars(s.data(), end, v);
      if (ec != std::errc() || p != end) throw syntax("'" + key + "': not a number: '" + s + "'");
      return v;
    };
    auto integer = [&](const std::string& s) {
      const double v = number(s);
      if (v != static_cast<double>(static_cast<long>(v))) throw syntax("'" + key + "': expected an integer");
      return static_cast<int>(v);
    };
    auto boolean = [&](const std::string& s) {
      if (s == "true" || s == "yes" || s == "1") return true;
      if (s == "false" || s == "no" || s == "0") return false;
      throw syntax("'" + key + "': expected true or false");
    };

    auto& c = cfg.constellation;
    if (section == "constellation") {
      if (key == "name") c.name = value;
      else if (key == "planes") c.plane_count = integer(value);
      else if (key == "sats_per_plane") c.sats_per_plane = integer(value);
      else if (key == "inclination_deg") c.inclination_deg = number(value);
      else if (key == "altitude_km") c.altitude_km = number(value);
      else if (key == "period_min") c.period_s = number(value) * 60.0;
      else if (key == "period_s") c.period_s = number(value);
      else if (key == "plane_spacing_deg") c.plane_spacing_deg = number(value);
      else if (key == "earth_radius_km") c.earth_radius_km = number(value);
      else if (key == "grazing_altitude_km") c.grazing_altitude_km = number(value);
      else if (key == "ideal_polar") c.ideal_polar = boolean(value);
    } else if (section == "partition") {
      if (key == "polar_border_deg") {
        for (const auto& item : split_list(value)) {
          const double l = number(item);
          if (!(l > 0.0 && l < 90.0)) throw invalid("polar_border_deg: value " + item + " outside (0, 90)");
          cfg.polar_borders_deg.push_back(l);
        }
      } else if (key == "methods") {
        for (const auto& item : split_list(value)) {
          try {
            const Method m = parse_method(item);
            if (!cfg.has_method(m)) cfg.methods.push_back(m);
          } catch (const ValidationError& e) {
            throw invalid(std::string("methods: ") + e.what());
          }
        }
      } else if (key == "trigger") {
        try {
          cfg.trigger = parse_trigger(value);
        } catch (const ValidationError& e) {
          throw invalid(std::string("trigger: ") + e.what());
        }
      } else if (key == "equal_time_delta") {
        if (value == "match_reassignment")
          cfg.equal_time_delta_s.reset();
        else {
          const double d = number(value);
          if (!(d > 0.0)) throw invalid("equal_time_delta: must be positive");
          cfg.equal_time_delta_s = d;
        }
      }
    } else if (section == "ground") {
      if (!cfg.ground) cfg.ground.emplace();
      if (key == "station") {
        const auto parts = split_list(value);
        if (parts.size() != 4) throw syntax("station: expected 'name, latitude, longitude, min_elevation'");
        GroundStation gs{parts[0], number(parts[1]), number(parts[2]), number(parts[3])};
        try {
          gs.validate();
        } catch (const DomainError& e) {
          throw invalid(std::string("station: ") + e.what());
        }
        stations.push_back(gs);
      } else if (key == "duration_s") {
        cfg.ground->duration_s = number(value);
      } else if (key == "interval_s") {
        cfg.ground->interval_s = number(value);
      }
    } else if (section == "output") {
      if (key == "directory") cfg.output_directory = value;
      else if (key == "random_seed") cfg.random_seed = static_cast<unsigned long>(integer(value));
    }
  }

  if (ground_seen) {
    if (!cfg.ground) cfg.ground.emplace();
    if (stations.size() != 2)
      throw ScenarioError(Kind::invalid, origin, 0, "station: [ground] needs exactly two stations (source, destination)");
    cfg.ground->source = stations[0];
    cfg.ground->destination = stations[1];
  }
  if (cfg.methods.empty()) cfg.methods = {Method::reassignment, Method::fixed, Method::equal_time};
  cfg.validate(origin);
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(ScenarioError::Kind::io, path, 0, "cannot open scenario file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

}  // namespace polarsnap
