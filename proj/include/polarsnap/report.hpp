#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polarsnap/routing.hpp"
#include "polarsnap/scenario.hpp"

namespace polarsnap {

struct MethodStats {
  Method method = Method::fixed;
  std::optional<Trigger> trigger;
  std::size_t snapshot_count = 0;
  double delta_min_s = 0.0;
  double delta_max_s = 0.0;
  int nisl_min = 0;
  int nisl_max = 0;
  double utilization = 0.0;
  std::optional<double> average_delay_s;
  double unreachable_fraction = 0.0;
  // Reassignment only: simulated values agree with the closed form.
  std::optional<bool> matches_analytic;
  // Failed oracles (topology validation, tiling); empty when clean.
  std::vector<std::string> problems;
};

struct MethodRun {
  SnapshotSequence sequence;
  MethodStats stats;
  std::optional<DelaySeries> delays;
};

struct ReportRow {
  std::string system;
  double polar_border_deg = 0.0;
  AnalyticSummary analytic;
  std::vector<MethodStats> methods;  // in scenario order

  const MethodStats* find(Method m) const;
};

struct ComparisonReport {
  std::vector<ReportRow> rows;

  bool ok() const;
  std::vector<std::string> problems() const;
};

MethodStats summarize(const SnapshotSequence& seq, const ConstellationSpec& spec, const VisibilityModel& vis,
                      const std::optional<AnalyticSummary>& analytic);

// Partition (and, with a ground block and `with_delay`, the delay
// experiment) for one method at one polar border.
MethodRun run_method(const ScenarioConfig& cfg, double polar_border_deg, Method method, bool with_delay);

struct CompareOptions {
  bool with_delay = true;
  bool write_artifacts = true;
  std::optional<std::string> output_directory;  // overrides the scenario
};

// Runs every (polar border, method) of each scenario and writes snapshot
// CSVs, topology JSON, delay CSVs and per-scenario summaries.
ComparisonReport run_compare(const std::vector<ScenarioConfig>& scenarios, const CompareOptions& options);

std::string format_summary_table(const ComparisonReport& report);
std::string format_summary_json(const ComparisonReport& report);
std::string format_analytic_table(const ConstellationSpec& spec, const std::vector<double>& polar_borders_deg);

std::string snapshot_csv(const SnapshotSequence& seq);
std::string delay_csv(const DelaySeries& series);

// JSON document for one sequence; byte-stable for identical input.
std::string topology_json(const SnapshotSequence& seq, const ConstellationSpec& spec);
struct ImportedTopology {
  ConstellationSpec spec;
  SnapshotSequence sequence;
};
ImportedTopology parse_topology_json(const std::string& text);

void export_topology(const SnapshotSequence& seq, const ConstellationSpec& spec, const std::string& path);
ImportedTopology import_topology(const std::string& path);

// File name prefix for the artifacts of one (system, polar border, method).
std::string artifact_stem(const ScenarioConfig& cfg, double polar_border_deg, Method method);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace polarsnap
