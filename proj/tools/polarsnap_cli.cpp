// polarsnap: snapshot partitioning for polar-orbit LEO constellations.
//
//   polarsnap analyze  <scenario>           closed-form reassignment summary
//   polarsnap simulate <scenario>           partitions + CSV/JSON exports
//   polarsnap route    <scenario>           ground-to-ground delay experiment
//   polarsnap compare  <scenario> [...]     full comparison table

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "polarsnap/report.hpp"

using namespace polarsnap;

namespace {

struct Overrides {
  std::vector<double> polar_borders;
  std::vector<std::string> methods;
  std::string trigger;
  std::string out;
  std::string delta;
  bool ideal_polar = false;
  bool no_delay = false;
};

void add_overrides(CLI::App* app, Overrides& o, bool with_delay_flag) {
  app->add_option("--polar-border", o.polar_borders, "Polar border latitudes in degrees (replaces the scenario list)")
      ->delimiter(',');
  app->add_option("--methods", o.methods, "Partition methods: reassignment, fixed, equal_time")->delimiter(',');
  app->add_option("--trigger", o.trigger, "Reassignment trigger: enter or exit");
  app->add_option("--out", o.out, "Output directory");
  app->add_option("--equal-delta", o.delta, "Equal-time interval in seconds or 'match_reassignment'");
  app->add_flag("--ideal-polar", o.ideal_polar, "Force every plane to 90 degrees inclination");
  if (with_delay_flag) app->add_flag("--no-delay", o.no_delay, "Skip the ground delay experiment");
}

ScenarioConfig apply(ScenarioConfig cfg, const Overrides& o) {
  if (!o.polar_borders.empty()) cfg.polar_borders_deg = o.polar_borders;
  if (!o.methods.empty()) {
    cfg.methods.clear();
    for (const auto& m : o.methods) cfg.methods.push_back(parse_method(m));
  }
  if (!o.trigger.empty()) cfg.trigger = parse_trigger(o.trigger);
  if (!o.out.empty()) cfg.output_directory = o.out;
  if (!o.delta.empty()) {
    if (o.delta == "match_reassignment")
      cfg.equal_time_delta_s.reset();
    else
      cfg.equal_time_delta_s = std::stod(o.delta);
  }
  if (o.ideal_polar) cfg.constellation.ideal_polar = true;
  cfg.validate("command line");
  return cfg;
}

void print_problems(const ComparisonReport& report) {
  for (const auto& p : report.problems()) std::cerr << "validation: " << p << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Snapshot partitioning for polar-orbit LEO satellite constellations"};
  app.require_subcommand(1);

  Overrides o;
  std::vector<std::string> files;

  auto* analyze = app.add_subcommand("analyze", "Closed-form snapshot distribution of the reassignment method");
  analyze->add_option("scenario", files, "Scenario file(s)")->required()->check(CLI::ExistingFile);
  analyze->add_option("--polar-border", o.polar_borders, "Polar border latitudes in degrees")->delimiter(',');
  analyze->add_flag("--ideal-polar", o.ideal_polar, "Force every plane to 90 degrees inclination");

  auto* simulate = app.add_subcommand("simulate", "Event-driven partitions with snapshot CSV and topology JSON export");
  simulate->add_option("scenario", files, "Scenario file")->required()->check(CLI::ExistingFile);
  add_overrides(simulate, o, false);

  auto* route = app.add_subcommand("route", "Ground-to-ground propagation delay experiment");
  route->add_option("scenario", files, "Scenario file")->required()->check(CLI::ExistingFile);
  add_overrides(route, o, false);

  auto* compare = app.add_subcommand("compare", "Full comparison of all methods (summary table, CSV, JSON)");
  compare->add_option("scenario", files, "Scenario file(s)")->required()->check(CLI::ExistingFile);
  add_overrides(compare, o, true);

  CLI11_PARSE(app, argc, argv);

  try {
    std::vector<ScenarioConfig> scenarios;
    for (const auto& f : files) scenarios.push_back(apply(load_scenario(f), o));

    if (analyze->parsed()) {
      for (const auto& cfg : scenarios) std::cout << format_analytic_table(cfg.constellation, cfg.polar_borders_deg);
      return 0;
    }

    if (simulate->parsed()) {
      CompareOptions opts;
      opts.with_delay = false;
      const auto report = run_compare(scenarios, opts);
      std::cout << format_summary_table(report);
      print_problems(report);
      return report.ok() ? 0 : 1;
    }

    if (route->parsed()) {
      const auto& cfg = scenarios.front();
      if (!cfg.ground) {
        std::cerr << "error: scenario has no [ground] block\n";
        return 2;
      }
      std::printf("%-14s %6s %12s %12s %8s\n", "method", "L_pa", "avg_ms", "unreach_%", "samples");
      for (double l : cfg.polar_borders_deg) {
        for (Method m : cfg.methods) {
          const auto run = run_method(cfg, l, m, true);
          const auto& d = *run.delays;
          write_text_file(cfg.output_directory + "/" + artifact_stem(cfg, l, m) + "_delay.csv",
                          delay_csv(d));
          std::printf("%-14s %6g %12.3f %12.2f %8zu\n", to_string(m), l, d.average_delay_s * 1e3,
                      d.unreachable_fraction() * 100.0, d.samples.size());
        }
      }
      return 0;
    }

    CompareOptions opts;
    opts.with_delay = !o.no_delay;
    const auto report = run_compare(scenarios, opts);
    std::cout << format_summary_table(report);
    print_problems(report);
    return report.ok() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
