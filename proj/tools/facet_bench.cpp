// facet-bench: command-line front end.
//
// Exit codes: 0 success, 1 data or usage error, 2 solver or internal error.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "facetbench/facetbench.hpp"

namespace fb = facetbench;
using nlohmann::json;

namespace {

struct Options {
  std::string data;
  std::string extremes;
  std::string profile;
  std::string scope = "extremes";
  std::string aggregation = "table4-max";
  std::string measure = "all";
  std::string prices;
  std::vector<double> delta;
  std::string target;
  std::vector<std::string> strategies;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
};

fb::RunConfig make_config(const Options& o) {
  fb::RunConfig cfg;
  cfg.data_label = o.data;
  if (!o.profile.empty()) cfg.apply_profile(o.profile);
  if (!o.extremes.empty()) cfg.pinned_extremes = fb::read_name_list(o.extremes);
  auto scope = fb::parse_scope(o.scope);
  if (!scope) throw fb::DataError("--support-scope must be extremes or all");
  auto agg = fb::parse_aggregation(o.aggregation);
  if (!agg) throw fb::DataError("--aggregation must be table4-max or paper-min");
  auto measure = fb::parse_measure(o.measure);
  if (!measure) throw fb::DataError("--measure must be robust, closest, russell or all");
  // A profile fixes scope and aggregation unless they were given explicitly.
  if (!cfg.profile || o.scope != "extremes") cfg.scope = *scope;
  if (!cfg.profile || o.aggregation != "table4-max") cfg.robust.aggregation = *agg;
  cfg.measure = *measure;
  return cfg;
}

void write_output(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw fb::DataError("cannot write '" + o.out + "'");
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json vec(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

int cmd_validate(const Options& o) {
  auto ds = fb::load_dataset(o.data);
  auto v = fb::validate_dataset(ds);
  for (const auto& e : v) std::cerr << o.data << ": " << e.rule << ": " << e.message << "\n";
  if (!v.empty()) return 1;
  std::ostringstream msg;
  msg << "ok: " << ds.size() << " DMUs, " << ds.num_inputs() << " inputs, " << ds.num_outputs() << " outputs\n";
  write_output(o, msg.str());
  return 0;
}

int cmd_stage(const Options& o, fb::Stage stage) {
  auto ds = fb::load_dataset(o.data);
  auto rep = fb::run_pipeline(ds, make_config(o), stage);
  json full = rep;
  json j;
  j["config"] = full["config"];
  j["extremes"] = full["extremes"];
  if (stage != fb::Stage::extremes) j["facets"] = full["facets"];
  if (stage == fb::Stage::partition) j["partition"] = full["partition"];
  j["warnings"] = full["warnings"];
  write_output(o, dump(j));
  return 0;
}

int cmd_report(const Options& o) {
  auto fmt = fb::parse_format(o.format);
  if (!fmt) throw fb::DataError("--format must be json or csv");
  auto ds = fb::load_dataset(o.data);
  auto rep = fb::run_pipeline(ds, make_config(o));
  if (!o.out.empty()) {
    fb::emit_report(rep, *fmt, o.out);
    return 0;
  }
  if (*fmt == fb::ReportFormat::json)
    std::cout << fb::report_json(rep);
  else
    fb::write_table_csv(std::cout, rep);
  return 0;
}

fb::FacetSet facets_for(const fb::Dataset& ds, const fb::RunConfig& cfg) {
  auto sel = fb::extreme_set(ds, cfg.pinned_extremes, cfg.robust.solver);
  auto fs = fb::enumerate_facets(ds, sel.extremes, cfg.scope, cfg.facet_tol);
  if (fs.empty()) throw fb::DataError("no efficient facets found in '" + cfg.data_label + "'");
  return fs;
}

int cmd_scenario(const Options& o) {
  if (o.prices.empty()) throw fb::DataError("scenario needs --prices");
  if (o.target.empty()) throw fb::DataError("scenario needs --target");
  if (o.delta.empty() || o.delta.size() > 2) throw fb::DataError("--delta takes one value, or two for a shock d0 d1");
  auto ds = fb::load_dataset(o.data);
  auto cfg = make_config(o);
  auto sc = fb::load_scenario(o.prices);
  if (sc.num_outputs() != ds.num_outputs()) throw fb::DataError("price file and dataset differ in output count");
  auto fs = facets_for(ds, cfg);
  const auto t = ds.require_index(o.target);
  const Eigen::VectorXd xbar = ds.input(t), yhat = ds.output(t);

  json j;
  j["target"] = o.target;
  j["xbar"] = vec(xbar);
  j["yhat"] = vec(yhat);
  json evals = json::array();
  for (double d : o.delta) {
    json e;
    e["delta"] = d;
    e["prices"] = vec(fb::price_at(sc, d));
    e["target_revenue"] = fb::revenue(yhat, sc, d);
    json per = json::array();
    for (const auto& f : fs.facets) {
      json fj;
      fj["facet"] = f.id;
      fj["members"] = fb::member_names(ds, f);
      try {
        auto pt = fb::facet_optimum(f, ds, xbar, sc, d, cfg.robust.solver);
        fj["revenue"] = pt.revenue;
        fj["outputs"] = vec(pt.outputs);
        fj["uniqueness"] = fb::to_string(pt.uniqueness);
        fj["diagnosis"] = fb::to_string(fb::uniqueness_diagnostics(f, ds, xbar, sc, d).shape);
      } catch (const fb::DataError&) {
        fj["revenue"] = nullptr;
      }
      per.push_back(fj);
    }
    e["facets"] = per;
    auto g = fb::global_optimum(fs, ds, xbar, sc, d, cfg.robust.solver);
    e["global"] = {{"revenue", g.point.revenue}, {"outputs", vec(g.point.outputs)}, {"owners", g.owners}};
    evals.push_back(e);
  }
  j["evaluations"] = evals;

  if (o.delta.size() == 2) {
    const double d0 = o.delta[0], d1 = o.delta[1];
    auto a = fb::check_assumptions(sc, fs, ds, yhat, xbar, d0, d1, cfg.robust.solver);
    json s;
    s["delta0"] = d0;
    s["delta1"] = d1;
    s["assumptions"] = {{"containing_facets", a.containing},
                        {"monotone_revenue", a.monotone_revenue},
                        {"bounded_recovery", a.bounded_recovery},
                        {"bounded_recovery_all_facets", a.bounded_recovery_all},
                        {"violations", a.violations}};
    json per = json::array();
    for (auto id : a.containing) {
      const auto& f = fs.by_id(id);
      auto w = fb::withstand_capacity(f, ds, yhat, xbar, sc, d0, d1, cfg.robust.solver);
      auto l = fb::risk_losses(fs, f, ds, yhat, xbar, sc, d0, d1, cfg.robust.solver);
      per.push_back({{"facet", id},
                     {"withstand_capacity", w.wr},
                     {"bound", w.bound},
                     {"within_bound", w.within_bound},
                     {"post_risk_facet_optimum", w.post_risk_optimum},
                     {"pre_risk_loss", l.pre_risk},
                     {"single_facet_residual_loss", l.single_facet},
                     {"multi_facet_residual_loss", l.multi_facet}});
    }
    s["facets"] = per;
    j["shock"] = s;
  }
  write_output(o, dump(j));
  return 0;
}

std::vector<fb::FacetIds> parse_strategies(const std::vector<std::string>& specs) {
  std::vector<fb::FacetIds> out;
  for (const auto& spec : specs) {
    fb::FacetIds k;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      auto v = fb::detail::parse_number(tok);
      if (!v || *v < 1 || *v != static_cast<double>(static_cast<std::size_t>(*v)))
        throw fb::DataError("--strategy '" + spec + "': facet ids must be positive integers");
      k.insert(static_cast<std::size_t>(*v));
    }
    out.push_back(std::move(k));
  }
  return out;
}

int cmd_coverage(const Options& o) {
  auto ds = fb::load_dataset(o.data);
  auto cfg = make_config(o);
  cfg.seed = o.seed;
  auto fs = facets_for(ds, cfg);
  std::size_t t = 0;
  fb::FacetIds robust_facets;
  if (!o.target.empty()) {
    t = ds.require_index(o.target);
  } else {
    auto part = fb::partition_robust(fs);
    t = part.robust.front();
    robust_facets = part.membership.at(t);
  }
  auto strategies = parse_strategies(o.strategies);
  if (strategies.empty()) {
    // Each facet alone, the target's facets, and the whole configuration.
    for (const auto& f : fs.facets) strategies.push_back({f.id});
    if (robust_facets.size() > 1) strategies.push_back(robust_facets);
    fb::FacetIds all;
    for (const auto& f : fs.facets) all.insert(f.id);
    if (fs.size() > 1 && all != robust_facets) strategies.push_back(all);
  }
  auto rep = fb::simulate_coverage(fs, ds, ds.input(t), strategies, {}, o.trials, o.seed, cfg.robust.solver);
  json j = fb::coverage_to_json(rep);
  j["xbar_from"] = ds.name(t);
  write_output(o, dump(j));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Facet-based DEA benchmarking: robust targets, efficiency measures, risk scenarios"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--data", o.data, "DMU table (CSV)")->required();
    sub->add_option("--out", o.out, "output file (default stdout)");
  };
  auto structural = [&](CLI::App* sub) {
    common(sub);
    sub->add_option("--extremes", o.extremes, "file of DMU names pinning the extreme set");
    sub->add_option("--support-scope", o.scope, "extremes|all")->capture_default_str();
    sub->add_option("--profile", o.profile, "named settings bundle (paper-985)");
  };
  auto scoring = [&](CLI::App* sub) {
    structural(sub);
    sub->add_option("--aggregation", o.aggregation, "table4-max|paper-min")->capture_default_str();
    sub->add_option("--measure", o.measure, "robust|closest|russell|all")->capture_default_str();
    sub->add_option("--format", o.format, "json|csv")->capture_default_str();
  };

  auto* validate = app.add_subcommand("validate", "check a dataset");
  common(validate);
  auto* extremes = app.add_subcommand("extremes", "extreme-efficient DMUs");
  structural(extremes);
  auto* facets = app.add_subcommand("facets", "full-dimensional efficient facets");
  structural(facets);
  auto* partition = app.add_subcommand("partition", "robust points and their groups");
  structural(partition);
  auto* efficiency = app.add_subcommand("efficiency", "per-DMU efficiency scores");
  scoring(efficiency);
  auto* report = app.add_subcommand("report", "full pipeline report");
  scoring(report);
  auto* scenario = app.add_subcommand("scenario", "revenue optima and withstand capacity under a price scenario");
  structural(scenario);
  scenario->add_option("--prices", o.prices, "price scenario (JSON)");
  scenario->add_option("--delta", o.delta, "risk parameter; give two values for a shock d0 d1")->expected(1, 2);
  scenario->add_option("--target", o.target, "DMU supplying yhat and xbar");
  auto* coverage = app.add_subcommand("coverage", "seeded price sampling over facet strategies");
  structural(coverage);
  coverage->add_option("--strategy", o.strategies, "comma-separated facet ids; repeatable");
  coverage->add_option("--trials", o.trials, "number of samples")->capture_default_str();
  coverage->add_option("--seed", o.seed, "stream seed")->capture_default_str();
  coverage->add_option("--target", o.target, "DMU supplying xbar (default: first robust point)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*extremes) return cmd_stage(o, fb::Stage::extremes);
    if (*facets) return cmd_stage(o, fb::Stage::facets);
    if (*partition) return cmd_stage(o, fb::Stage::partition);
    if (*efficiency || *report) return cmd_report(o);
    if (*scenario) return cmd_scenario(o);
    if (*coverage) return cmd_coverage(o);
  } catch (const fb::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const fb::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
