#include "polarsnap/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "json.hpp"

namespace polarsnap {

using nlohmann::json;

const MethodStats* ReportRow::find(Method m) const {
  for (const auto& s : methods)
    if (s.method == m) return &s;
  return nullptr;
}

bool ComparisonReport::ok() const { return problems().empty(); }

std::vector<std::string> ComparisonReport::problems() const {
  std::vector<std::string> out;
  for (const auto& r : rows)
    for (const auto& m : r.methods)
      for (const auto& p : m.problems) {
        char head[96];
        std::snprintf(head, sizeof head, "%s L_pa=%g %s: ", r.system.c_str(), r.polar_border_deg, to_string(m.method));
        out.push_back(head + p);
      }
  return out;
}

MethodStats summarize(const SnapshotSequence& seq, const ConstellationSpec& spec, const VisibilityModel& vis,
                      const std::optional<AnalyticSummary>& analytic) {
  MethodStats st;
  st.method = seq.method;
  st.trigger = seq.trigger;
  st.snapshot_count = seq.count();
  if (auto bad = check_tiling(seq)) st.problems.push_back("tiling: " + *bad);
  if (seq.snapshots.empty()) return st;

  st.delta_min_s = st.delta_max_s = seq.snapshots.front().duration();
  st.nisl_min = st.nisl_max = seq.snapshots.front().inter_plane_count;
  for (std::size_t k = 0; k < seq.snapshots.size(); ++k) {
    const auto& s = seq.snapshots[k];
    st.delta_min_s = std::min(st.delta_min_s, s.duration());
    st.delta_max_s = std::max(st.delta_max_s, s.duration());
    st.nisl_min = std::min(st.nisl_min, s.inter_plane_count);
    st.nisl_max = std::max(st.nisl_max, s.inter_plane_count);
    for (double t : {s.start_s, 0.5 * (s.start_s + s.end_s)}) {
      for (const auto& v : validate_topology(spec, vis, s.edges, t)) {
        std::ostringstream os;
        os << "snapshot " << k << " at t=" << t << ": " << v.rule << ": " << v.detail;
        st.problems.push_back(os.str());
      }
    }
  }
  st.utilization = utilization(seq, spec).utilization;
  if (analytic && seq.method == Method::reassignment) {
    const double rel = std::max(std::abs(st.delta_max_s - analytic->delta_s), std::abs(st.delta_min_s - analytic->delta_s)) /
                       analytic->delta_s;
    st.matches_analytic = static_cast<int>(st.snapshot_count) == analytic->snapshot_count && st.nisl_min == analytic->nisl &&
                          st.nisl_max == analytic->nisl && rel < 0.005;
  }
  return st;
}

MethodRun run_method(const ScenarioConfig& cfg, double polar_border_deg, Method method, bool with_delay) {
  const auto& spec = cfg.constellation;
  const VisibilityModel vis = make_visibility(spec, polar_border_deg);
  MethodRun run;
  switch (method) {
    case Method::reassignment: run.sequence = partition_reassignment(spec, vis, cfg.trigger); break;
    case Method::fixed: run.sequence = partition_fixed(spec, vis); break;
    case Method::equal_time: run.sequence = partition_equal_time(spec, vis, cfg.equal_time_delta()); break;
  }
  std::optional<AnalyticSummary> analytic;
  if (spec.plane_count % 2 == 0) analytic = analytic_summary(spec, polar_border_deg);
  run.stats = summarize(run.sequence, spec, vis, analytic);
  if (with_delay && cfg.ground) {
    run.delays = delay_experiment(spec, run.sequence, cfg.ground->source, cfg.ground->destination, cfg.ground->duration_s,
                                  cfg.ground->interval_s);
    run.stats.average_delay_s = run.delays->average_delay_s;
    run.stats.unreachable_fraction = run.delays->unreachable_fraction();
  }
  return run;
}

namespace {

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string artifact_stem(const ScenarioConfig& cfg, double polar_border_deg, Method method) {
  const std::string name = cfg.constellation.name.empty() ? "scenario" : cfg.constellation.name;
  return name + "_L" + fmt_g(polar_border_deg) + "_" + to_string(method);
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path);
}

ComparisonReport run_compare(const std::vector<ScenarioConfig>& scenarios, const CompareOptions& options) {
  ComparisonReport report;
  for (const auto& cfg : scenarios) {
    const std::string dir = options.output_directory.value_or(cfg.output_directory);
    std::vector<ReportRow> rows;
    std::vector<std::vector<std::future<MethodRun>>> jobs;
    for (double l : cfg.polar_borders_deg) {
      ReportRow row;
      row.system = cfg.constellation.name;
      row.polar_border_deg = l;
      if (cfg.constellation.plane_count % 2 == 0) row.analytic = analytic_summary(cfg.constellation, l);
      rows.push_back(row);
      auto& js = jobs.emplace_back();
      for (Method m : cfg.methods)
        js.push_back(std::async(std::launch::async, run_method, std::cref(cfg), l, m, options.with_delay));
    }
    // Single writer: artifacts and rows are assembled in scenario order.
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t k = 0; k < jobs[i].size(); ++k) {
        MethodRun run = jobs[i][k].get();
        const Method m = cfg.methods[k];
        if (options.write_artifacts) {
          const std::string base = dir + "/" + artifact_stem(cfg, rows[i].polar_border_deg, m);
          write_text_file(base + "_snapshots.csv", snapshot_csv(run.sequence));
          export_topology(run.sequence, cfg.constellation, base + "_topology.json");
          if (run.delays) write_text_file(base + "_delay.csv", delay_csv(*run.delays));
        }
        rows[i].methods.push_back(std::move(run.stats));
      }
    }
    if (options.write_artifacts) {
      ComparisonReport single{rows};
      const std::string name = cfg.constellation.name.empty() ? "scenario" : cfg.constellation.name;
      write_text_file(dir + "/" + name + "_summary.txt", format_summary_table(single));
      write_text_file(dir + "/" + name + "_summary.json", format_summary_json(single));
    }
    for (auto& r : rows) report.rows.push_back(std::move(r));
  }
  return report;
}

std::string format_summary_table(const ComparisonReport& report) {
  std::ostringstream os;
  char line[512];
  std::snprintf(line, sizeof line, "%-10s %5s | %15s %9s %7s | %8s %8s %7s %4s | %8s %7s %4s | %6s %6s %6s | %8s %8s %8s\n",
                "system", "L_pa", "d_reassign", "NISL", "S", "d_fix_mx", "d_fix_mn", "NISL_fx", "S_fx", "d_equal",
                "NISL_eq", "S_eq", "U_re", "U_fx", "U_eq", "ms_re", "ms_fx", "ms_eq");
  os << line;
  os << std::string(std::char_traits<char>::length(line) - 1, '-') << '\n';
  auto cell_u = [](const MethodStats* m) { return m ? fmt_g(std::round(m->utilization * 1e4) / 1e4) : std::string("-"); };
  auto cell_d = [](const MethodStats* m) {
    if (!m || !m->average_delay_s) return std::string("-");
    char b[32];
    std::snprintf(b, sizeof b, "%.2f", *m->average_delay_s * 1e3);
    return std::string(b);
  };
  for (const auto& r : report.rows) {
    const auto* re = r.find(Method::reassignment);
    const auto* fx = r.find(Method::fixed);
    const auto* eq = r.find(Method::equal_time);
    char a[64], b[64], c[64];
    // Reassignment columns pair the closed form with the simulation.
    if (re) {
      std::snprintf(a, sizeof a, "%.2f/%.2f", r.analytic.delta_s, re->delta_max_s);
      std::snprintf(b, sizeof b, "%d/%d", r.analytic.nisl, re->nisl_max);
      std::snprintf(c, sizeof c, "%d/%zu", r.analytic.snapshot_count, re->snapshot_count);
    } else {
      std::snprintf(a, sizeof a, "%.2f", r.analytic.delta_s);
      std::snprintf(b, sizeof b, "%d", r.analytic.nisl);
      std::snprintf(c, sizeof c, "%d", r.analytic.snapshot_count);
    }
    char f1[16] = "-", f2[16] = "-", f3[24] = "-", f4[16] = "-";
    if (fx) {
      std::snprintf(f1, sizeof f1, "%.2f", fx->delta_max_s);
      std::snprintf(f2, sizeof f2, "%.2f", fx->delta_min_s);
      std::snprintf(f3, sizeof f3, "%d/%d", fx->nisl_max, fx->nisl_min);
      std::snprintf(f4, sizeof f4, "%zu", fx->snapshot_count);
    }
    char e1[16] = "-", e2[24] = "-", e3[16] = "-";
    if (eq) {
      std::snprintf(e1, sizeof e1, "%.2f", eq->delta_max_s);
      std::snprintf(e2, sizeof e2, "%d/%d", eq->nisl_max, eq->nisl_min);
      std::snprintf(e3, sizeof e3, "%zu", eq->snapshot_count);
    }
    std::snprintf(line, sizeof line, "%-10s %5s | %15s %9s %7s | %8s %8s %7s %4s | %8s %7s %4s | %6s %6s %6s | %8s %8s %8s\n",
                  r.system.c_str(), fmt_g(r.polar_border_deg).c_str(), a, b, c, f1, f2, f3, f4, e1, e2, e3,
                  cell_u(re).c_str(), cell_u(fx).c_str(), cell_u(eq).c_str(), cell_d(re).c_str(), cell_d(fx).c_str(),
                  cell_d(eq).c_str());
    os << line;
  }
  return os.str();
}

std::string format_summary_json(const ComparisonReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    json row;
    row["system"] = r.system;
    row["polar_border_deg"] = r.polar_border_deg;
    row["analytic"] = {{"delta_s", r.analytic.delta_s},
                       {"snapshot_count", r.analytic.snapshot_count},
                       {"nisl", r.analytic.nisl},
                       {"nisl_oblique", r.analytic.nisl_oblique},
                       {"nisl_horizontal", r.analytic.nisl_horizontal},
                       {"nls_npa", r.analytic.nls_npa}};
    json methods = json::array();
    for (const auto& m : r.methods) {
      json j{{"method", to_string(m.method)},
             {"snapshot_count", m.snapshot_count},
             {"delta_min_s", m.delta_min_s},
             {"delta_max_s", m.delta_max_s},
             {"nisl_min", m.nisl_min},
             {"nisl_max", m.nisl_max},
             {"utilization", m.utilization},
             {"problems", m.problems}};
      j["trigger"] = m.trigger ? json(to_string(*m.trigger)) : json(nullptr);
      j["average_delay_s"] = m.average_delay_s ? json(*m.average_delay_s) : json(nullptr);
      j["unreachable_fraction"] = m.unreachable_fraction;
      j["matches_analytic"] = m.matches_analytic ? json(*m.matches_analytic) : json(nullptr);
      methods.push_back(std::move(j));
    }
    row["methods"] = std::move(methods);
    rows.push_back(std::move(row));
  }
  return json{{"rows", rows}}.dump(2) + "\n";
}

std::string format_analytic_table(const ConstellationSpec& spec, const std::vector<double>& polar_borders_deg) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %6s %8s %10s %8s %10s %12s %9s\n", "system", "L_pa", "NLS_npa", "delta_s", "S",
                "NISL", "NISL_obl", "NISL_hor");
  os << line;
  for (double l : polar_borders_deg) {
    const auto a = analytic_summary(spec, l);
    std::snprintf(line, sizeof line, "%-10s %6s %8d %10.2f %8d %10d %12d %9d\n", spec.name.c_str(), fmt_g(l).c_str(),
                  a.nls_npa, a.delta_s, a.snapshot_count, a.nisl, a.nisl_oblique, a.nisl_horizontal);
    os << line;
  }
  return os.str();
}

std::string snapshot_csv(const SnapshotSequence& seq) {
  std::ostringstream os;
  os << "method,index,start_s,end_s,duration_s,n_intra,n_oblique,n_horizontal,n_inter_total\n";
  for (std::size_t k = 0; k < seq.snapshots.size(); ++k) {
    const auto& s = seq.snapshots[k];
    os << to_string(seq.method) << ',' << k << ',' << full(s.start_s) << ',' << full(s.end_s) << ','
       << full(s.duration()) << ',' << s.edges.count(LinkKind::intra_plane) << ',' << s.edges.count(LinkKind::oblique)
       << ',' << s.edges.count(LinkKind::horizontal) << ',' << s.inter_plane_count << '\n';
  }
  return os.str();
}

std::string delay_csv(const DelaySeries& series) {
  std::ostringstream os;
  os << "send_time_s,method,L_pa_deg,delay_s,hops,reachable\n";
  for (const auto& s : series.samples) {
    os << full(s.send_time_s) << ',' << to_string(series.method) << ',' << fmt_g(series.polar_border_deg) << ','
       << (s.reachable ? full(s.delay_s) : std::string()) << ',' << s.hops << ',' << (s.reachable ? 1 : 0) << '\n';
  }
  return os.str();
}

namespace {

json spec_to_json(const ConstellationSpec& s) {
  json j{{"name", s.name},
         {"planes", s.plane_count},
         {"sats_per_plane", s.sats_per_plane},
         {"inclination_deg", s.inclination_deg},
         {"altitude_km", s.altitude_km},
         {"earth_radius_km", s.earth_radius_km},
         {"grazing_altitude_km", s.grazing_altitude_km},
         {"ideal_polar", s.ideal_polar}};
  j["period_s"] = s.period_s ? json(*s.period_s) : json(nullptr);
  j["plane_spacing_deg"] = s.plane_spacing_deg ? json(*s.plane_spacing_deg) : json(nullptr);
  return j;
}

ConstellationSpec spec_from_json(const json& j) {
  ConstellationSpec s;
  s.name = j.at("name").get<std::string>();
  s.plane_count = j.at("planes").get<int>();
  s.sats_per_plane = j.at("sats_per_plane").get<int>();
  s.inclination_deg = j.at("inclination_deg").get<double>();
  s.altitude_km = j.at("altitude_km").get<double>();
  s.earth_radius_km = j.at("earth_radius_km").get<double>();
  s.grazing_altitude_km = j.at("grazing_altitude_km").get<double>();
  s.ideal_polar = j.at("ideal_polar").get<bool>();
  if (!j.at("period_s").is_null()) s.period_s = j.at("period_s").get<double>();
  if (!j.at("plane_spacing_deg").is_null()) s.plane_spacing_deg = j.at("plane_spacing_deg").get<double>();
  return s;
}

}  // namespace

std::string topology_json(const SnapshotSequence& seq, const ConstellationSpec& spec) {
  if (seq.snapshots.empty()) throw ValidationError("refusing to export an empty snapshot sequence");
  json snaps = json::array();
  for (std::size_t k = 0; k < seq.snapshots.size(); ++k) {
    const auto& s = seq.snapshots[k];
    json edges = json::array();
    for (const auto& e : s.edges.edges) edges.push_back(json::array({e.a.plane, e.a.index, e.b.plane, e.b.index, to_string(e.kind)}));
    snaps.push_back(json{{"index", k},
                         {"start_s", s.start_s},
                         {"end_s", s.end_s},
                         {"inter_plane_count", s.inter_plane_count},
                         {"edges", std::move(edges)}});
  }
  json doc{{"format", "polarsnap-topology/1"},
           {"constellation", spec_to_json(spec)},
           {"method", to_string(seq.method)},
           {"polar_border_deg", seq.polar_border_deg},
           {"period_s", seq.period_s},
           {"truncated", seq.truncated},
           {"snapshots", std::move(snaps)}};
  doc["trigger"] = seq.trigger ? json(to_string(*seq.trigger)) : json(nullptr);
  return doc.dump(1) + "\n";
}

ImportedTopology parse_topology_json(const std::string& text) {
  ImportedTopology out;
  try {
    const json doc = json::parse(text);
    if (doc.at("format") != "polarsnap-topology/1") throw ValidationError("unsupported topology format");
    out.spec = spec_from_json(doc.at("constellation"));
    auto& seq = out.sequence;
    seq.method = parse_method(doc.at("method").get<std::string>());
    if (!doc.at("trigger").is_null()) seq.trigger = parse_trigger(doc.at("trigger").get<std::string>());
    seq.polar_border_deg = doc.at("polar_border_deg").get<double>();
    seq.period_s = doc.at("period_s").get<double>();
    seq.truncated = doc.at("truncated").get<bool>();
    for (const auto& js : doc.at("snapshots")) {
      TopologySnapshot s;
      s.start_s = js.at("start_s").get<double>();
      s.end_s = js.at("end_s").get<double>();
      s.inter_plane_count = js.at("inter_plane_count").get<int>();
      s.edges.method = seq.method;
      s.edges.generated_at = s.start_s;
      for (const auto& e : js.at("edges"))
        s.edges.add(make_edge({e.at(0).get<int>(), e.at(1).get<int>()}, {e.at(2).get<int>(), e.at(3).get<int>()},
                              parse_link_kind(e.at(4).get<std::string>())));
      s.edges.normalize();
      seq.snapshots.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed topology document: ") + e.what());
  }
  return out;
}

void export_topology(const SnapshotSequence& seq, const ConstellationSpec& spec, const std::string& path) {
  // Serialize first so a failure never leaves an empty file behind.
  const std::string doc = topology_json(seq, spec);
  write_text_file(path, doc);
}

ImportedTopology import_topology(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_topology_json(buf.str());
}

}  // namespace polarsnap
