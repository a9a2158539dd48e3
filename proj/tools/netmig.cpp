#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "netmig/json_io.hpp"
#include "netmig/oracle.hpp"

namespace {

using namespace netmig;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (text.empty() || text.back() != '\n') out << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Topology topology_by_name(const std::string& spec) {
  if (spec == "eunetworks") return eunetworks_topology();
  // Otherwise a JSON file: {"name", "coords": [[x,y],...], "edges": [[a,b],...]}
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(spec));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("topology parse error: ") + e.what());
  }
  Topology t;
  try {
    t.name = j.value("name", "custom");
    for (const auto& c : j.at("coords"))
      t.coords.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
    for (const auto& e : j.at("edges"))
      t.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("topology schema error: ") + e.what());
  }
  return t;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Exact solver for the network migration planning problem"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a synthetic instance");
  std::string gen_topology = "eunetworks";
  std::string gen_out = "instance.json";
  GenParams params;
  gen->add_option("--topology", gen_topology, "Builtin name or topology JSON file");
  gen->add_option("--mu", params.mu, "Mean endpoints per site");
  gen->add_option("--sigma", params.sigma, "Stddev of endpoints per site");
  gen->add_option("--seed", params.seed, "RNG seed");
  gen->add_option("--windows", params.windows, "Number of maintenance windows");
  gen->add_option("--eta-cir", params.eta_cir, "Circuits per window cap");
  gen->add_option("--eta-tech", params.eta_tech, "Technicians per region");
  gen->add_option("--eta-eng", params.eta_eng, "Engineers per window");
  gen->add_option("--alpha-eng", params.alpha_eng, "Technicians per engineer");
  gen->add_option("--theta", params.theta, "Minutes per endpoint");
  gen->add_option("--durations", params.durations, "Allowed shift durations (minutes)");
  gen->add_option("--cluster-km", params.cluster_km, "QT clustering threshold");
  gen->add_option("--out", gen_out, "Output instance file");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance with the LBBD algorithm");
  std::string solve_instance, solve_out = "solution.json", solve_csv, config_path;
  Config config;
  std::string pricing = "hybrid";
  bool no_propagate = false, drop_columns = false;
  solve->add_option("--instance", solve_instance, "Instance JSON")->required();
  solve->add_option("--out", solve_out, "Solution JSON output");
  solve->add_option("--report", solve_csv, "Also write a CSV report here");
  solve->add_option("--gap", config.target_gap, "Target optimality gap");
  solve->add_option("--time-limit", config.time_limit_s, "Time limit in seconds");
  solve->add_flag("--no-propagate", no_propagate, "Disable Benders cut propagation");
  solve->add_option("--pricing", pricing, "ordered|hybrid|general");
  solve->add_flag("--drop-columns", drop_columns, "Do not keep CG columns between calls");
  solve->add_option("--seed", config.seed, "Seed echoed into the solution");
  solve->add_option("--config", config_path, "JSON config file (flags override)");

  // oracle
  auto* orc = app.add_subcommand("oracle", "Exact brute-force solve (tiny instances)");
  std::string orc_instance, orc_out;
  OracleLimits limits;
  std::vector<int> limit_vec;
  orc->add_option("--instance", orc_instance, "Instance JSON")->required();
  orc->add_option("--out", orc_out, "Write the oracle result as JSON");
  orc->add_option("--oracle-limits", limit_vec,
                  "Limits: max_sites max_circuits max_windows max_tech_per_region");

  // report
  auto* rpt = app.add_subcommand("report", "Re-summarize a solution file as CSV");
  std::string rpt_solution, rpt_out;
  rpt->add_option("--solution", rpt_solution, "Solution JSON")->required();
  rpt->add_option("--out", rpt_out, "CSV output (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    Instance inst = generate_instance(topology_by_name(gen_topology), params);
    write_file(gen_out, instance_to_json(inst));
    log_info("wrote " + gen_out);
    return 0;
  }

  if (solve->parsed()) {
    if (!config_path.empty()) {
      nlohmann::json j = nlohmann::json::parse(read_file(config_path));
      config.target_gap = j.value("target_gap", config.target_gap);
      config.time_limit_s = j.value("time_limit_s", config.time_limit_s);
      config.propagate = j.value("propagate", config.propagate);
      config.keep_columns = j.value("keep_columns", config.keep_columns);
      config.seed = j.value("seed", config.seed);
      pricing = j.value("pricing_mode", pricing);
    }
    if (no_propagate) config.propagate = false;
    if (drop_columns) config.keep_columns = false;
    if (pricing == "ordered")
      config.pricing = PricingMode::OrderedOnly;
    else if (pricing == "general")
      config.pricing = PricingMode::GeneralOnly;
    else if (pricing == "hybrid")
      config.pricing = PricingMode::Hybrid;
    else
      throw ValidationError("unknown pricing mode: " + pricing);

    Instance inst = load_instance(solve_instance);
    SolveReport solution = run(inst, config);
    Report summary = summarize(solution, inst);
    write_file(solve_out, solution_to_json(inst, config, solution, summary));
    if (!solve_csv.empty())
      write_file(solve_csv,
                 report_csv_header() + "\n" + report_csv_row(inst.name, solution, summary));
    log_info("wrote " + solve_out);
    return 0;
  }

  if (orc->parsed()) {
    if (!limit_vec.empty()) {
      if (limit_vec.size() != 4)
        throw ValidationError("--oracle-limits needs exactly 4 integers");
      limits = OracleLimits{limit_vec[0], limit_vec[1], limit_vec[2], limit_vec[3]};
    }
    Instance inst = load_instance(orc_instance);
    OracleResult result = solve_exact(inst, limits);
    nlohmann::ordered_json j;
    j["feasible"] = result.feasible;
    if (result.feasible) {
      j["cost_cents"] = result.cost;
      j["m"] = nlohmann::ordered_json::array();
      for (const WindowDemand& d : result.m) j["m"].push_back(d.m);
    }
    j["nodes"] = result.nodes;
    const std::string text = j.dump(2);
    if (orc_out.empty())
      std::cout << text << "\n";
    else
      write_file(orc_out, text);
    return 0;
  }

  if (rpt->parsed()) {
    SolutionDoc doc = solution_from_json(read_file(rpt_solution));
    Report summary = summarize(doc.solution, doc.instance);
    const std::string text =
        report_csv_header() + "\n" + report_csv_row(doc.instance.name, doc.solution, summary);
    if (rpt_out.empty())
      std::cout << text << "\n";
    else
      write_file(rpt_out, text);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const LimitError& e) {
    std::cerr << "limit error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
