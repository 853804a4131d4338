#pragma once

// End-to-end run: extremes, facets, partition, then the three measures for
// every DMU, collected into a plain-data report that serializes to JSON and
// to a Table-4-shaped CSV.

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "facetbench/dataset.hpp"
#include "facetbench/error.hpp"
#include "facetbench/facets.hpp"
#include "facetbench/lp.hpp"
#include "facetbench/measures.hpp"
#include "facetbench/partition.hpp"
#include "facetbench/robust.hpp"

namespace facetbench {

enum class MeasureSelection { robust, closest, russell, all };

inline const char* to_string(MeasureSelection m) {
  switch (m) {
    case MeasureSelection::robust: return "robust";
    case MeasureSelection::closest: return "closest";
    case MeasureSelection::russell: return "russell";
    case MeasureSelection::all: return "all";
  }
  return "?";
}

inline std::optional<MeasureSelection> parse_measure(const std::string& s) {
  if (s == "robust") return MeasureSelection::robust;
  if (s == "closest") return MeasureSelection::closest;
  if (s == "russell") return MeasureSelection::russell;
  if (s == "all") return MeasureSelection::all;
  return std::nullopt;
}

inline std::optional<SupportScope> parse_scope(const std::string& s) {
  if (s == "extremes") return SupportScope::extremes;
  if (s == "all") return SupportScope::all;
  return std::nullopt;
}

// Extreme set used by the university reproduction profile.
inline const std::vector<std::string>& paper985_extremes() {
  static const std::vector<std::string> names{"CQU", "OUC", "WHU", "CUN", "BUAA", "HIT",
                                              "XMU", "BNU", "NEU", "SJTU", "FDU"};
  return names;
}

struct RunConfig {
  std::string data_label;  // echoed, usually the file name
  std::optional<std::string> profile;
  std::optional<std::vector<std::string>> pinned_extremes;
  SupportScope scope = SupportScope::extremes;
  MeasureSelection measure = MeasureSelection::all;
  FacetTolerances facet_tol;
  RobustConfig robust;
  std::optional<std::uint64_t> seed;

  // Applies a named profile; unknown names are a data error.
  void apply_profile(const std::string& name) {
    if (name != "paper-985") throw DataError("unknown profile '" + name + "' (known: paper-985)");
    profile = name;
    pinned_extremes = paper985_extremes();
    scope = SupportScope::extremes;
    robust.aggregation = Aggregation::table4_max;
  }
};

// ---- report records -------------------------------------------------------

struct ConfigEcho {
  std::string data;
  std::optional<std::string> profile;
  std::string support_scope;
  std::string aggregation;
  std::string measure;
  double rank_tol = 0, residual_tol = 0, positivity_tol = 0, dedup_tol = 0;
  double feasibility_tol = 0, optimality_tol = 0;
  double priority_weight = 0;
  std::string big_m_policy;
  double shrinkage_fraction = 0, zero_tol = 0;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const ConfigEcho&, const ConfigEcho&) = default;
};

struct ExtremeRecord {
  std::vector<std::string> computed;
  std::optional<std::vector<std::string>> pinned;
  std::vector<std::string> in_use;
  std::vector<std::string> only_computed;
  std::vector<std::string> only_pinned;
  bool discrepancy = false;

  friend bool operator==(const ExtremeRecord&, const ExtremeRecord&) = default;
};

struct FacetRecord {
  std::size_t id = 0;
  std::vector<std::string> members;
  std::vector<double> u, v;
  double max_residual = 0;

  friend bool operator==(const FacetRecord&, const FacetRecord&) = default;
};

struct GroupRecord {
  std::vector<std::size_t> facets;
  std::vector<std::string> members;

  friend bool operator==(const GroupRecord&, const GroupRecord&) = default;
};

struct PartitionRecord {
  std::map<std::string, std::size_t> counts;  // |K(d)| for DMUs on some facet
  std::size_t maxcount = 0;
  std::vector<std::string> robust;
  std::vector<GroupRecord> groups;

  friend bool operator==(const PartitionRecord&, const PartitionRecord&) = default;
};

struct RobustRecord {
  double theta = 0;
  std::vector<double> slacks;
  std::size_t chosen_group = 0;  // 1-based
  std::vector<double> group_thetas;
  std::map<std::string, double> lambda;
  std::vector<double> target;
  std::vector<std::string> readings;
  bool alternate_optima = false;

  friend bool operator==(const RobustRecord&, const RobustRecord&) = default;
};

struct MeasureRecord {
  std::string status;
  std::optional<double> theta;
  std::vector<double> slacks;
  std::optional<std::size_t> facet;

  friend bool operator==(const MeasureRecord&, const MeasureRecord&) = default;
};

struct DmuRecord {
  std::string dmu;
  std::optional<RobustRecord> robust;
  std::optional<MeasureRecord> closest;
  std::optional<MeasureRecord> russell;
  std::vector<std::string> errors;

  friend bool operator==(const DmuRecord&, const DmuRecord&) = default;
};

struct WarningRecord {
  std::string kind;
  std::string subject;
  std::string message;

  friend bool operator==(const WarningRecord&, const WarningRecord&) = default;
};

struct RunReport {
  ConfigEcho config;
  std::vector<std::string> inputs, outputs;
  std::size_t dmus = 0;
  ExtremeRecord extremes;
  std::size_t subsets_examined = 0;
  std::vector<FacetRecord> facets;
  PartitionRecord partition;
  std::vector<DmuRecord> results;
  std::vector<WarningRecord> warnings;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

// ---- pipeline -------------------------------------------------------------

namespace detail {

inline std::vector<std::string> names_of(const Dataset& ds, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (auto j : idx) out.push_back(ds.name(j));
  return out;
}

inline MeasureRecord measure_record(const MeasureResult& r) {
  MeasureRecord m;
  m.status = to_string(r.status);
  if (!std::isnan(r.theta)) m.theta = r.theta;
  m.slacks = r.slacks;
  m.facet = r.facet;
  return m;
}

}  // namespace detail

inline ConfigEcho echo_config(const RunConfig& cfg) {
  ConfigEcho e;
  e.data = cfg.data_label;
  e.profile = cfg.profile;
  e.support_scope = to_string(cfg.scope);
  e.aggregation = to_string(cfg.robust.aggregation);
  e.measure = to_string(cfg.measure);
  e.rank_tol = cfg.facet_tol.rank;
  e.residual_tol = cfg.facet_tol.residual;
  e.positivity_tol = cfg.facet_tol.positivity;
  e.dedup_tol = cfg.facet_tol.dedup;
  e.feasibility_tol = cfg.robust.solver.feasibility_tol;
  e.optimality_tol = cfg.robust.solver.optimality_tol;
  e.priority_weight = cfg.robust.solver.priority_weight;
  e.big_m_policy = "sign-pattern enumeration (no M); oracle M = " +
                   detail::format_number(cfg.robust.solver.big_m_factor) + " x max output";
  e.shrinkage_fraction = cfg.robust.shrinkage_fraction;
  e.zero_tol = cfg.robust.zero_tol;
  e.seed = cfg.seed;
  return e;
}

enum class Stage { extremes, facets, partition, measures };

// Runs extremes, facets, partition and the selected measures, stopping after
// `last`. Data problems in individual DMUs are recorded per row; structural
// failures throw.
inline RunReport run_pipeline(const Dataset& ds, const RunConfig& cfg, Stage last = Stage::measures) {
  const auto violations = validate_dataset(ds);
  if (!violations.empty()) throw DataError(violations.front().message);

  RunReport rep;
  rep.config = echo_config(cfg);
  rep.inputs = ds.input_labels();
  rep.outputs = ds.output_labels();
  rep.dmus = ds.size();

  const auto sel = extreme_set(ds, cfg.pinned_extremes, cfg.robust.solver);
  rep.extremes.computed = detail::names_of(ds, sel.computed);
  if (sel.pinned) rep.extremes.pinned = detail::names_of(ds, sel.extremes);
  rep.extremes.in_use = detail::names_of(ds, sel.extremes);
  rep.extremes.only_computed = detail::names_of(ds, sel.only_computed);
  rep.extremes.only_pinned = detail::names_of(ds, sel.only_pinned);
  rep.extremes.discrepancy = sel.discrepancy();
  for (auto j : sel.only_computed)
    rep.warnings.push_back({"extreme-discrepancy", ds.name(j), "passes the extreme test but is not in the pinned set"});
  for (auto j : sel.only_pinned)
    rep.warnings.push_back({"extreme-discrepancy", ds.name(j), "pinned but fails the extreme test"});
  if (last == Stage::extremes) return rep;

  const auto fs = enumerate_facets(ds, sel.extremes, cfg.scope, cfg.facet_tol);
  rep.subsets_examined = fs.subsets_examined;
  for (const auto& f : fs.facets) {
    FacetRecord fr;
    fr.id = f.id;
    fr.members = member_names(ds, f);
    fr.u.assign(f.u.data(), f.u.data() + f.u.size());
    fr.v.assign(f.v.data(), f.v.data() + f.v.size());
    for (double r : f.residuals) fr.max_residual = std::max(fr.max_residual, std::abs(r));
    rep.facets.push_back(std::move(fr));
  }
  for (const auto& w : fs.warnings)
    rep.warnings.push_back({"regularity", "facet " + std::to_string(w.facet_id),
                            "coincident spanning sets over " + std::to_string(w.members.size()) + " DMUs"});
  if (last == Stage::facets) return rep;

  const auto part = partition_robust(fs);
  for (const auto& [d, ks] : part.membership) rep.partition.counts[ds.name(d)] = ks.size();
  rep.partition.maxcount = part.maxcount;
  rep.partition.robust = detail::names_of(ds, part.robust);
  for (const auto& g : part.groups)
    rep.partition.groups.push_back({std::vector<std::size_t>(g.facets.begin(), g.facets.end()),
                                    detail::names_of(ds, g.members)});
  if (last == Stage::partition) return rep;

  const bool want_robust = cfg.measure == MeasureSelection::robust || cfg.measure == MeasureSelection::all;
  const bool want_closest = cfg.measure == MeasureSelection::closest || cfg.measure == MeasureSelection::all;
  const bool want_russell = cfg.measure == MeasureSelection::russell || cfg.measure == MeasureSelection::all;

  for (std::size_t o = 0; o < ds.size(); ++o) {
    DmuRecord row;
    row.dmu = ds.name(o);
    if (want_robust) {
      try {
        auto res = robust_efficiency(ds, part, o, cfg.robust);
        const auto& g = res.chosen();
        RobustRecord rr;
        rr.theta = res.theta;
        rr.slacks = g.slacks;
        rr.chosen_group = res.chosen_group + 1;
        for (const auto& gp : res.groups) rr.group_thetas.push_back(gp.theta);
        for (std::size_t j = 0; j < g.members.size(); ++j)
          if (g.lambda[j] != 0.0) rr.lambda[ds.name(g.members[j])] = g.lambda[j];
        rr.target = g.target;
        for (auto r : res.readings) rr.readings.push_back(to_string(r));
        rr.alternate_optima = g.alternate_optima;
        for (const auto& w : res.warnings) rep.warnings.push_back({"lambda-shrinkage", row.dmu, w});
        row.robust = std::move(rr);
      } catch (const DataError& e) {
        row.errors.push_back(std::string("robust: ") + e.what());
      }
    }
    if (want_closest) {
      auto res = closest_on_efpps(fs, ds, o, cfg.robust.solver);
      if (res.status == MeasureStatus::out_of_envelope)
        rep.warnings.push_back({"out-of-envelope", row.dmu,
                                "lies above the hyperplane of facet " + std::to_string(*res.facet) +
                                    "; closest measure not scored"});
      row.closest = detail::measure_record(res);
    }
    if (want_russell) row.russell = detail::measure_record(russell_farthest(ds, o, cfg.robust.solver));
    rep.results.push_back(std::move(row));
  }
  return rep;
}

// ---- JSON -----------------------------------------------------------------

namespace detail {

template <class T>
void put_opt(nlohmann::json& j, const char* key, const std::optional<T>& v) {
  if (v)
    j[key] = *v;
  else
    j[key] = nullptr;
}

template <class T>
std::optional<T> get_opt(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace detail

inline void to_json(nlohmann::json& j, const ConfigEcho& c) {
  j = {{"data", c.data},
       {"support_scope", c.support_scope},
       {"aggregation", c.aggregation},
       {"measure", c.measure},
       {"tolerances",
        {{"rank", c.rank_tol},
         {"residual", c.residual_tol},
         {"positivity", c.positivity_tol},
         {"dedup", c.dedup_tol},
         {"feasibility", c.feasibility_tol},
         {"optimality", c.optimality_tol},
         {"zero_slack", c.zero_tol}}},
       {"priority_weight", c.priority_weight},
       {"big_m_policy", c.big_m_policy},
       {"shrinkage_fraction", c.shrinkage_fraction}};
  detail::put_opt(j, "profile", c.profile);
  detail::put_opt(j, "seed", c.seed);
}

inline void from_json(const nlohmann::json& j, ConfigEcho& c) {
  c.data = j.at("data").get<std::string>();
  c.profile = detail::get_opt<std::string>(j, "profile");
  c.support_scope = j.at("support_scope").get<std::string>();
  c.aggregation = j.at("aggregation").get<std::string>();
  c.measure = j.at("measure").get<std::string>();
  const auto& t = j.at("tolerances");
  c.rank_tol = t.at("rank").get<double>();
  c.residual_tol = t.at("residual").get<double>();
  c.positivity_tol = t.at("positivity").get<double>();
  c.dedup_tol = t.at("dedup").get<double>();
  c.feasibility_tol = t.at("feasibility").get<double>();
  c.optimality_tol = t.at("optimality").get<double>();
  c.zero_tol = t.at("zero_slack").get<double>();
  c.priority_weight = j.at("priority_weight").get<double>();
  c.big_m_policy = j.at("big_m_policy").get<std::string>();
  c.shrinkage_fraction = j.at("shrinkage_fraction").get<double>();
  c.seed = detail::get_opt<std::uint64_t>(j, "seed");
}

inline void to_json(nlohmann::json& j, const ExtremeRecord& e) {
  j = {{"computed", e.computed},     {"in_use", e.in_use},           {"only_computed", e.only_computed},
       {"only_pinned", e.only_pinned}, {"discrepancy", e.discrepancy}};
  detail::put_opt(j, "pinned", e.pinned);
}

inline void from_json(const nlohmann::json& j, ExtremeRecord& e) {
  e.computed = j.at("computed").get<std::vector<std::string>>();
  e.pinned = detail::get_opt<std::vector<std::string>>(j, "pinned");
  e.in_use = j.at("in_use").get<std::vector<std::string>>();
  e.only_computed = j.at("only_computed").get<std::vector<std::string>>();
  e.only_pinned = j.at("only_pinned").get<std::vector<std::string>>();
  e.discrepancy = j.at("discrepancy").get<bool>();
}

inline void to_json(nlohmann::json& j, const FacetRecord& f) {
  j = {{"id", f.id}, {"members", f.members}, {"u", f.u}, {"v", f.v}, {"max_residual", f.max_residual}};
}

inline void from_json(const nlohmann::json& j, FacetRecord& f) {
  f.id = j.at("id").get<std::size_t>();
  f.members = j.at("members").get<std::vector<std::string>>();
  f.u = j.at("u").get<std::vector<double>>();
  f.v = j.at("v").get<std::vector<double>>();
  f.max_residual = j.at("max_residual").get<double>();
}

inline void to_json(nlohmann::json& j, const GroupRecord& g) { j = {{"facets", g.facets}, {"members", g.members}}; }

inline void from_json(const nlohmann::json& j, GroupRecord& g) {
  g.facets = j.at("facets").get<std::vector<std::size_t>>();
  g.members = j.at("members").get<std::vector<std::string>>();
}

inline void to_json(nlohmann::json& j, const PartitionRecord& p) {
  j = {{"counts", p.counts}, {"maxcount", p.maxcount}, {"robust", p.robust}, {"groups", p.groups}};
}

inline void from_json(const nlohmann::json& j, PartitionRecord& p) {
  p.counts = j.at("counts").get<std::map<std::string, std::size_t>>();
  p.maxcount = j.at("maxcount").get<std::size_t>();
  p.robust = j.at("robust").get<std::vector<std::string>>();
  p.groups = j.at("groups").get<std::vector<GroupRecord>>();
}

inline void to_json(nlohmann::json& j, const RobustRecord& r) {
  j = {{"theta", r.theta},   {"slacks", r.slacks},     {"chosen_group", r.chosen_group},
       {"group_thetas", r.group_thetas}, {"lambda", r.lambda}, {"target", r.target},
       {"readings", r.readings}, {"alternate_optima", r.alternate_optima}};
}

inline void from_json(const nlohmann::json& j, RobustRecord& r) {
  r.theta = j.at("theta").get<double>();
  r.slacks = j.at("slacks").get<std::vector<double>>();
  r.chosen_group = j.at("chosen_group").get<std::size_t>();
  r.group_thetas = j.at("group_thetas").get<std::vector<double>>();
  r.lambda = j.at("lambda").get<std::map<std::string, double>>();
  r.target = j.at("target").get<std::vector<double>>();
  r.readings = j.at("readings").get<std::vector<std::string>>();
  r.alternate_optima = j.at("alternate_optima").get<bool>();
}

inline void to_json(nlohmann::json& j, const MeasureRecord& m) {
  j = {{"status", m.status}, {"slacks", m.slacks}};
  detail::put_opt(j, "theta", m.theta);
  detail::put_opt(j, "facet", m.facet);
}

inline void from_json(const nlohmann::json& j, MeasureRecord& m) {
  m.status = j.at("status").get<std::string>();
  m.theta = detail::get_opt<double>(j, "theta");
  m.slacks = j.at("slacks").get<std::vector<double>>();
  m.facet = detail::get_opt<std::size_t>(j, "facet");
}

inline void to_json(nlohmann::json& j, const DmuRecord& d) {
  j = {{"dmu", d.dmu}, {"errors", d.errors}};
  detail::put_opt(j, "robust", d.robust);
  detail::put_opt(j, "closest", d.closest);
  detail::put_opt(j, "russell", d.russell);
}

inline void from_json(const nlohmann::json& j, DmuRecord& d) {
  d.dmu = j.at("dmu").get<std::string>();
  d.errors = j.at("errors").get<std::vector<std::string>>();
  d.robust = detail::get_opt<RobustRecord>(j, "robust");
  d.closest = detail::get_opt<MeasureRecord>(j, "closest");
  d.russell = detail::get_opt<MeasureRecord>(j, "russell");
}

inline void to_json(nlohmann::json& j, const WarningRecord& w) {
  j = {{"kind", w.kind}, {"subject", w.subject}, {"message", w.message}};
}

inline void from_json(const nlohmann::json& j, WarningRecord& w) {
  w.kind = j.at("kind").get<std::string>();
  w.subject = j.at("subject").get<std::string>();
  w.message = j.at("message").get<std::string>();
}

inline void to_json(nlohmann::json& j, const RunReport& r) {
  j = {{"config", r.config},
       {"dataset", {{"dmus", r.dmus}, {"inputs", r.inputs}, {"outputs", r.outputs}}},
       {"extremes", r.extremes},
       {"facets", {{"subsets_examined", r.subsets_examined}, {"table", r.facets}}},
       {"partition", r.partition},
       {"results", r.results},
       {"warnings", r.warnings}};
}

inline void from_json(const nlohmann::json& j, RunReport& r) {
  r.config = j.at("config").get<ConfigEcho>();
  const auto& d = j.at("dataset");
  r.dmus = d.at("dmus").get<std::size_t>();
  r.inputs = d.at("inputs").get<std::vector<std::string>>();
  r.outputs = d.at("outputs").get<std::vector<std::string>>();
  r.extremes = j.at("extremes").get<ExtremeRecord>();
  r.subsets_examined = j.at("facets").at("subsets_examined").get<std::size_t>();
  r.facets = j.at("facets").at("table").get<std::vector<FacetRecord>>();
  r.partition = j.at("partition").get<PartitionRecord>();
  r.results = j.at("results").get<std::vector<DmuRecord>>();
  r.warnings = j.at("warnings").get<std::vector<WarningRecord>>();
}

inline std::string report_json(const RunReport& r) { return nlohmann::json(r).dump(2) + "\n"; }

inline RunReport parse_report(const std::string& text) {
  try {
    return nlohmann::json::parse(text).get<RunReport>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("report: ") + e.what());
  }
}

// ---- CSV ------------------------------------------------------------------

// One row per DMU: dmu, signed slack per output (robust target), robust,
// closest and Russell theta, chosen group, warning kinds. Missing values are
// empty cells.
inline void write_table_csv(std::ostream& out, const RunReport& r) {
  using detail::csv_cell;
  using detail::format_number;
  out << "dmu";
  for (const auto& o : r.outputs) out << ',' << csv_cell("slack:" + o);
  out << ",robust_theta,closest_theta,russell_theta,chosen_group,warnings\n";
  for (const auto& row : r.results) {
    out << csv_cell(row.dmu);
    for (std::size_t k = 0; k < r.outputs.size(); ++k) {
      out << ',';
      if (row.robust) out << format_number(row.robust->slacks[k]);
    }
    out << ',';
    if (row.robust) out << format_number(row.robust->theta);
    out << ',';
    if (row.closest && row.closest->theta) out << format_number(*row.closest->theta);
    out << ',';
    if (row.russell && row.russell->theta) out << format_number(*row.russell->theta);
    out << ',';
    if (row.robust) out << row.robust->chosen_group;
    std::string kinds;
    for (const auto& w : r.warnings) {
      if (w.subject != row.dmu) continue;
      if (!kinds.empty()) kinds += ';';
      kinds += w.kind;
    }
    for (const auto& e : row.errors) {
      if (!kinds.empty()) kinds += ';';
      kinds += "error";
      (void)e;
    }
    out << ',' << csv_cell(kinds) << '\n';
  }
}

enum class ReportFormat { json, csv };

inline std::optional<ReportFormat> parse_format(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  return std::nullopt;
}

inline void emit_report(const RunReport& r, ReportFormat fmt, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  if (fmt == ReportFormat::json)
    out << report_json(r);
  else
    write_table_csv(out, r);
  if (!out) throw DataError("write to '" + path + "' failed");
}

}  // namespace facetbench
