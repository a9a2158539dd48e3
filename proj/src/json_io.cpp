#include "netmig/json_io.hpp"

#include "json.hpp"

namespace netmig {

namespace {

using json = nlohmann::ordered_json;

const char* status_str(RunStatus s) {
  switch (s) {
    case RunStatus::Optimal:
      return "optimal";
    case RunStatus::GapReached:
      return "gap_reached";
    case RunStatus::Infeasible:
      return "infeasible";
    case RunStatus::TimedOut:
      return "timed_out";
  }
  return "unknown";
}

RunStatus status_from(const std::string& s) {
  if (s == "optimal") return RunStatus::Optimal;
  if (s == "gap_reached") return RunStatus::GapReached;
  if (s == "infeasible") return RunStatus::Infeasible;
  if (s == "timed_out") return RunStatus::TimedOut;
  throw ValidationError("unknown status: " + s);
}

const char* pricing_str(PricingMode m) {
  switch (m) {
    case PricingMode::OrderedOnly:
      return "ordered";
    case PricingMode::Hybrid:
      return "hybrid";
    case PricingMode::GeneralOnly:
      return "general";
  }
  return "hybrid";
}

json plan_to_json(const Plan& plan, const Instance& inst) {
  json jp;
  jp["shifts"] = json::array();
  for (const TechShift& s : plan.shifts) {
    json js;
    js["region"] = s.region;
    js["duration_min"] = s.duration;
    js["visits"] = json::array();
    for (const Visit& v : s.visits) {
      json jv;
      jv["site"] = v.site;
      jv["start_min"] = v.start;
      jv["end_min"] = v.end;
      jv["counts"] = json::array();
      for (const VisitCount& c : v.counts) {
        const SitePair& sp = inst.network.pairs[c.pair];
        jv["counts"].push_back({{"pair", {sp.lo, sp.hi}}, {"n", c.n}});
      }
      js["visits"].push_back(std::move(jv));
    }
    jp["shifts"].push_back(std::move(js));
  }
  jp["cost_cents"] = plan.cost;
  return jp;
}

Plan plan_from_json(const json& jp, const Instance& inst) {
  Plan plan;
  std::vector<int> tech_count(inst.network.num_regions, 0);
  for (const auto& js : jp.at("shifts")) {
    TechShift s;
    s.region = js.at("region").get<int>();
    s.duration = js.at("duration_min").get<Minutes>();
    if (s.region >= 0 && s.region < inst.network.num_regions)
      s.tech = tech_count[s.region]++;
    for (const auto& jv : js.at("visits")) {
      Visit v;
      v.site = jv.at("site").get<int>();
      v.start = jv.at("start_min").get<Minutes>();
      v.end = jv.at("end_min").get<Minutes>();
      for (const auto& jc : jv.at("counts")) {
        const auto ends = jc.at("pair").get<std::vector<int>>();
        if (ends.size() != 2) throw ValidationError("plan JSON: bad pair");
        const int p = inst.network.pair_between(ends[0], ends[1]);
        if (p < 0) throw ValidationError("plan JSON: unknown pair");
        v.counts.push_back({p, jc.at("n").get<int>()});
      }
      s.visits.push_back(std::move(v));
    }
    plan.shifts.push_back(std::move(s));
  }
  plan.cost = jp.at("cost_cents").get<Cents>();
  return plan;
}

}  // namespace

std::string solution_to_json(const Instance& inst, const Config& config,
                             const SolveReport& solution, const Report& summary) {
  json j;
  j["instance"] = json::parse(instance_to_json(inst));
  j["config"] = {{"target_gap", config.target_gap},
                 {"time_limit_s", config.time_limit_s},
                 {"propagate", config.propagate},
                 {"pricing", pricing_str(config.pricing)},
                 {"keep_columns", config.keep_columns},
                 {"seed", config.seed}};
  j["status"] = status_str(solution.status);
  if (solution.has_incumbent)
    j["cost_cents"] = solution.upper_bound;
  else
    j["cost_cents"] = nullptr;
  j["lower_bound_cents"] = solution.lower_bound;
  if (solution.gap == kInf)
    j["gap"] = nullptr;
  else
    j["gap"] = solution.gap;
  j["iterations"] = solution.iterations;
  j["cuts"] = {{"benders_feas", solution.cuts_benders_feas},
               {"benders_opt", solution.cuts_benders_opt},
               {"lbbd_feas", solution.cuts_lbbd_feas},
               {"lbbd_opt", solution.cuts_lbbd_opt}};
  j["columns"] = solution.columns;
  j["master_nodes"] = solution.master_nodes;
  j["m"] = json::array();
  for (const WindowDemand& d : solution.m) j["m"].push_back(d.m);
  j["plans"] = json::array();
  for (const Plan& p : solution.plans) j["plans"].push_back(plan_to_json(p, inst));
  json hist = json::object();
  for (auto [d, n] : summary.duration_histogram) hist[std::to_string(d)] = n;
  json windows = json::array();
  for (const auto& w : summary.windows)
    windows.push_back(
        {{"cost_cents", w.cost}, {"shifts", w.shifts}, {"working_fraction", w.working_fraction}});
  j["summary"] = {{"cost_cents", summary.cost},
                  {"shifts", summary.shifts},
                  {"duration_histogram", hist},
                  {"working_fraction", summary.working_fraction},
                  {"windows", windows}};
  return j.dump(2);
}

SolutionDoc solution_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("solution JSON parse error: ") + e.what());
  }
  SolutionDoc doc;
  try {
    doc.instance = instance_from_json(j.at("instance").dump());
    doc.solution.status = status_from(j.at("status").get<std::string>());
    if (!j.at("cost_cents").is_null()) {
      doc.solution.has_incumbent = true;
      doc.solution.upper_bound = j.at("cost_cents").get<Cents>();
    }
    doc.solution.lower_bound = j.at("lower_bound_cents").get<double>();
    doc.solution.gap = j.at("gap").is_null() ? kInf : j.at("gap").get<double>();
    doc.solution.iterations = j.at("iterations").get<int>();
    doc.solution.cuts_benders_feas = j.at("cuts").at("benders_feas").get<long>();
    doc.solution.cuts_benders_opt = j.at("cuts").at("benders_opt").get<long>();
    doc.solution.cuts_lbbd_feas = j.at("cuts").at("lbbd_feas").get<long>();
    doc.solution.cuts_lbbd_opt = j.at("cuts").at("lbbd_opt").get<long>();
    doc.solution.columns = j.at("columns").get<long>();
    doc.solution.master_nodes = j.at("master_nodes").get<long>();
    for (const auto& jm : j.at("m"))
      doc.solution.m.push_back(WindowDemand{jm.get<std::vector<int>>()});
    for (const auto& jp : j.at("plans"))
      doc.solution.plans.push_back(plan_from_json(jp, doc.instance));
    const auto& js = j.at("summary");
    doc.summary.cost = js.at("cost_cents").get<Cents>();
    doc.summary.shifts = js.at("shifts").get<long>();
    for (auto it = js.at("duration_histogram").begin();
         it != js.at("duration_histogram").end(); ++it)
      doc.summary.duration_histogram[std::stoi(it.key())] = it.value().get<long>();
    doc.summary.working_fraction = js.at("working_fraction").get<double>();
    for (const auto& jw : js.at("windows")) {
      Report::WindowRow row;
      row.cost = jw.at("cost_cents").get<Cents>();
      row.shifts = jw.at("shifts").get<long>();
      row.working_fraction = jw.at("working_fraction").get<double>();
      doc.summary.windows.push_back(row);
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("solution schema error: ") + e.what());
  }
  return doc;
}

}  // namespace netmig
