#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polarsnap/topology.hpp"

namespace polarsnap {

class ScenarioError : public std::runtime_error {
 public:
  enum class Kind { io, syntax, invalid };

  ScenarioError(Kind kind, std::string path, int line, const std::string& message);

  Kind kind() const { return kind_; }
  int line() const { return line_; }  // 0 when not tied to a line
  const std::string& path() const { return path_; }

 private:
  Kind kind_;
  std::string path_;
  int line_;
};

struct GroundExperiment {
  GroundStation source;
  GroundStation destination;
  double duration_s = 86400.0;
  double interval_s = 60.0;
};

struct ScenarioConfig {
  ConstellationSpec constellation;
  std::vector<double> polar_borders_deg;
  std::vector<Method> methods;
  Trigger trigger = Trigger::enter;
  // Unset means: use the reassignment snapshot duration T / (2M).
  std::optional<double> equal_time_delta_s;
  std::optional<GroundExperiment> ground;
  std::string output_directory = "out";
  unsigned long random_seed = 0;  // reserved

  bool has_method(Method m) const;
  double equal_time_delta() const;
  // Throws ScenarioError(invalid) naming the offending field.
  void validate(const std::string& origin = "") const;
};

ScenarioConfig parse_scenario(const std::string& text, const std::string& origin = "<string>");
ScenarioConfig load_scenario(const std::string& path);

}  // namespace polarsnap
