/*
 * Copyright (C) 2026 The mrta-planner Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
*/

// Command-line front end: generate, plan, validate, export-milp, simulate,
// repair, bench, bench-repair, gantt.
//
// Exit codes: 0 success, 1 domain failure (invalid plan, irreparable delay,
// infeasible scenario, failed mission), 2 usage or input error.

#include <mrta/gantt.hpp>
#include <mrta/heuristic.hpp>
#include <mrta/json_io.hpp>
#include <mrta/metrics.hpp>
#include <mrta/milp.hpp>
#include <mrta/repair.hpp>
#include <mrta/report_io.hpp>
#include <mrta/scenario_gen.hpp>
#include <mrta/simulator.hpp>
#include <mrta/validator.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mrta;

namespace {

enum Exit
{
  ok = 0,
  domain_failure = 1,
  usage_error = 2
};

/// Writes @p text to @p out. Without -o the file goes to $MRTA_OUTPUT_DIR
/// under @p fallback, or to stdout when the variable is unset.
void emit(const std::string& out, const std::string& fallback, const std::string& text)
{
  fs::path path = out;
  if (out.empty())
  {
    const char* dir = std::getenv("MRTA_OUTPUT_DIR");
    if (!dir || !*dir)
    {
      std::cout << text;
      return;
    }
    path = fs::path(dir) / fallback;
  }
  if (path.has_parent_path())
    fs::create_directories(path.parent_path());
  write_file_atomic(path, text);
}

std::string dump(const json& j)
{
  return j.dump(2) + "\n";
}

Scenario load_scenario(const std::string& path)
{
  Scenario s = scenario_from_json(read_json_file(path));
  check_scenario(s);
  return s;
}

Plan load_plan(const std::string& path)
{
  return plan_from_json(read_json_file(path));
}

std::pair<int, int> parse_size(const std::string& s)
{
  const auto x = s.find('x');
  try
  {
    if (x == std::string::npos)
      throw std::invalid_argument(s);
    std::size_t used = 0;
    const int robots = std::stoi(s.substr(0, x), &used);
    const int tasks = std::stoi(s.substr(x + 1));
    if (robots < 1 || tasks < 1 || used != x)
      throw std::invalid_argument(s);
    return {robots, tasks};
  }
  catch (const std::exception&)
  {
    throw InputError("size '" + s + "' is not ROBOTSxTASKS");
  }
}

std::string csv_number(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

//==============================================================================
struct GenerateArgs
{
  GenConfig config;
  std::string out;
};

int run_generate(const GenerateArgs& a)
{
  const Scenario s = generate(a.config);
  emit(a.out, "scenario.json", dump(to_json(s)));
  return ok;
}

struct PlanArgs
{
  std::string scenario, out, strategy = "heuristic";
  std::uint64_t seed = 0;
  bool serial = false, json = false;
};

int run_plan(const PlanArgs& a)
{
  const Scenario s = load_scenario(a.scenario);
  PlannerOptions options;
  options.strategy = strategy_from_string(a.strategy);
  options.seed = a.seed;
  options.parallel = !a.serial;
  const auto t0 = std::chrono::steady_clock::now();
  Plan p;
  try
  {
    p = plan(s, options);
  }
  catch (const PlanningError& e)
  {
    std::cerr << "planning failed: " << e.what() << "\n";
    return domain_failure;
  }
  const double ct = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(a.out, "plan.json", dump(to_json(p)));
  if (a.json)
    std::cout << dump(to_json(plan_metrics(s, p, ct)));
  return ok;
}

struct ValidateArgs
{
  std::string scenario, plan;
  bool json = false;
};

int run_validate(const ValidateArgs& a)
{
  const Scenario s = load_scenario(a.scenario);
  const Plan p = load_plan(a.plan);
  ValidationReport report;
  try
  {
    report = validate_plan(s, p);
  }
  catch (const PlanStructureError& e)
  {
    report.valid = false;
    report.violations.push_back({"structure", e.what(), 0.0});
  }
  if (a.json)
  {
    std::cout << dump(to_json(report));
  }
  else
  {
    std::cout << (report.valid ? "valid" : "invalid") << "\n";
    for (const auto& v : report.violations)
      std::cout << "  " << v.family << " at " << v.location << " (" << v.magnitude << ")\n";
    for (const auto& v : report.deadline_overruns)
      std::cout << "  deadline overrun at " << v.location << " (" << v.magnitude << " s)\n";
    if (report.valid)
      std::cout << "  f = " << report.objective.f << "\n";
  }
  return report.valid ? ok : domain_failure;
}

struct ExportArgs
{
  std::string scenario, out;
  bool json = false;
};

int run_export(const ExportArgs& a)
{
  const Scenario s = load_scenario(a.scenario);
  const auto instance = milp::build_instance(s);
  for (const auto& w : instance.warnings)
    std::cerr << "warning: " << w << "\n";
  emit(a.out, "model.lp", milp::export_lp(instance));
  if (a.json)
  {
    const auto r = milp::size_report(instance);
    std::cout << dump({{"variables", r.variables}, {"constraints", r.constraints},
      {"linearization_variable_share", r.linearization_variable_share()},
      {"linearization_constraint_share", r.linearization_constraint_share()}});
  }
  return ok;
}

struct SimulateArgs
{
  std::string scenario, plan, events, out, policy = "combined";
  bool json = false;
};

int run_simulate(const SimulateArgs& a)
{
  const Scenario s = load_scenario(a.scenario);
  const Plan p = load_plan(a.plan);
  std::vector<Disturbance> events;
  if (!a.events.empty())
    events = disturbances_from_json(read_json_file(a.events));
  const auto trace = simulate(s, p, events, policy_from_string(a.policy));
  emit(a.out, "trace.json", dump(to_json(trace)));
  if (a.json)
  {
    std::cout << dump({{"completed", trace.completed}, {"repairs", trace.repairs},
      {"replans", trace.replans}, {"metrics", to_json(trace.metrics)}});
  }
  if (!trace.completed)
    std::cerr << "mission failed: " << trace.failure << "\n";
  return trace.completed ? ok : domain_failure;
}

struct RepairArgs
{
  std::string scenario, plan, out;
  std::uint32_t robot = 0;
  int slot = 0;
  double delay = 0.0;
  bool json = false;
};

int run_repair(const RepairArgs& a)
{
  const Scenario s = load_scenario(a.scenario);
  const Plan p = load_plan(a.plan);
  if (!p.slot({RobotId{a.robot}, a.slot}))
    throw InputError("plan has no slot " + std::to_string(a.slot) + " for robot "
      + std::to_string(a.robot));
  const auto result = repair_plans(s, p, RobotId{a.robot}, a.slot, a.delay);
  if (a.json)
    std::cout << dump({{"success", result.success}, {"reason", result.reason},
      {"makespan_increase", result.makespan_increase}});
  if (!result.success)
  {
    std::cerr << "irreparable: " << result.reason << "\n";
    return domain_failure;
  }
  emit(a.out, "repaired.json", dump(to_json(result.plan)));
  return ok;
}

struct BenchArgs
{
  std::string sizes = "5x10,10x20", out;
  int trials = 20;
  std::uint64_t seed = 0;
  bool json = false;
};

int run_bench(const BenchArgs& a)
{
  std::vector<std::pair<int, int>> sizes;
  std::stringstream list(a.sizes);
  for (std::string item; std::getline(list, item, ',');)
    sizes.push_back(parse_size(item));
  if (a.trials < 1)
    throw InputError("--trials must be positive");

  const Strategy strategies[] = {
    Strategy::Heuristic, Strategy::Greedy, Strategy::PseudoRandom, Strategy::Random};
  std::string csv = "size,strategy,attempts,solved,SR,RR,NR,NR_sd,f,f_sd,f1,f2,f3,f4,Z,Z_sd,WTR,CSD,CBT,WD,CT\n";
  json rows = json::array();
  for (const auto& [robots, tasks] : sizes)
  {
    for (const auto strategy : strategies)
    {
      std::vector<std::optional<MetricsReport>> runs(static_cast<std::size_t>(a.trials));
#pragma omp parallel for schedule(dynamic)
      for (int k = 0; k < a.trials; ++k)
      {
        GenConfig c;
        c.seed = a.seed + static_cast<std::uint64_t>(k);
        c.n_robots = robots;
        c.n_tasks = tasks;
        const Scenario s = generate(c);
        const auto t0 = std::chrono::steady_clock::now();
        try
        {
          const Plan p = plan_variant(s, strategy, c.seed);
          const double ct =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
          runs[static_cast<std::size_t>(k)] = plan_metrics(s, p, ct);
        }
        catch (const PlanningError&)
        {
        }
      }
      const auto b = batch_metrics(runs);
      const std::string size = std::to_string(robots) + "x" + std::to_string(tasks);
      csv += size + "," + to_string(strategy) + "," + std::to_string(b.attempts) + ","
        + std::to_string(b.solved);
      for (const double v : {b.success_rate, b.recharge_rate, b.recharges.mean, b.recharges.stddev,
             b.f.mean, b.f.stddev, b.f1.mean, b.f2.mean, b.f3.mean, b.f4.mean, b.makespan.mean,
             b.makespan.stddev, b.waiting_rate.mean, b.coalition_deviation.mean,
             b.battery_time.mean, b.workload.mean, b.computation_time.mean})
        csv += "," + csv_number(v);
      csv += "\n";
      rows.push_back({{"size", size}, {"strategy", to_string(strategy)}, {"attempts", b.attempts},
        {"solved", b.solved}, {"SR", b.success_rate}, {"RR", b.recharge_rate},
        {"NR", b.recharges.mean}, {"f", b.f.mean}, {"f_sd", b.f.stddev},
        {"Z", b.makespan.mean}, {"WTR", b.waiting_rate.mean}, {"CSD", b.coalition_deviation.mean},
        {"CBT", b.battery_time.mean}, {"WD", b.workload.mean}, {"CT", b.computation_time.mean}});
    }
  }
  emit(a.out, "bench.csv", csv);
  if (a.json)
    std::cout << dump(rows);
  return ok;
}

struct BenchRepairArgs
{
  DelayExperimentConfig config;
  std::string delay_class = "short", out;
  bool json = false;
};

int run_bench_repair(BenchRepairArgs a)
{
  a.config.delay_class = delay_class_from_string(a.delay_class);
  const auto result = run_delay_experiment(a.config);
  emit(a.out, "repair.csv", delay_experiment_csv(result));
  if (a.json)
  {
    json summary = json::object();
    for (const auto& [policy, s] : result.summary)
    {
      json inc = json::object();
      for (const auto& [name, v] : s.increments)
        inc[name] = {{"mean", v.first}, {"se", v.second}};
      summary[to_string(policy)] = {{"trials", s.trials}, {"successes", s.successes},
        {"SR", s.success_rate}, {"increments", inc}};
    }
    std::cout << dump(summary);
  }
  return ok;
}

struct GanttArgs
{
  std::string plan, out, title;
  double width = 1200.0;
};

int run_gantt(const GanttArgs& a)
{
  json j = read_json_file(a.plan);
  // A simulation trace carries the flown plan under "executed".
  if (j.is_object() && j.contains("executed") && !j.contains("schedules"))
    j = j.at("executed");
  GanttOptions options;
  options.width = a.width;
  options.title = a.title;
  emit(a.out, "plan.svg", render_gantt_svg(plan_from_json(j), options));
  return ok;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Multi-robot task allocation with recharges, relays and coalitions"};
  app.require_subcommand(1);
  std::function<int()> action;

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Draw a random scenario");
  g->add_option("--seed", gen.config.seed, "Random seed");
  g->add_option("--robots", gen.config.n_robots, "Number of robots");
  g->add_option("--tasks", gen.config.n_tasks, "Number of tasks");
  g->add_option("--deadline", gen.config.deadline, "Task deadline (s)");
  g->add_option("--hardware-types", gen.config.hardware_type_count, "Robot hardware types");
  g->add_flag("--all-compatible", gen.config.all_compatible, "Every robot fits every task");
  g->add_option("-o,--output", gen.out, "Scenario file");
  g->callback([&] { action = [&] { check_config(gen.config); return run_generate(gen); }; });

  PlanArgs pl;
  auto* p = app.add_subcommand("plan", "Compute a plan");
  p->add_option("scenario", pl.scenario, "Scenario file")->required();
  p->add_option("--strategy", pl.strategy, "heuristic, random, pseudo or greedy");
  p->add_option("--seed", pl.seed, "Seed for the randomized strategies");
  p->add_flag("--serial", pl.serial, "Use the serial candidate kernel");
  p->add_flag("--json", pl.json, "Print plan metrics as JSON");
  p->add_option("-o,--output", pl.out, "Plan file");
  p->callback([&] { action = [&] { return run_plan(pl); }; });

  ValidateArgs va;
  auto* v = app.add_subcommand("validate", "Check a plan against every model constraint");
  v->add_option("scenario", va.scenario, "Scenario file")->required();
  v->add_option("plan", va.plan, "Plan file")->required();
  v->add_flag("--json", va.json, "Print the report as JSON");
  v->callback([&] { action = [&] { return run_validate(va); }; });

  ExportArgs ex;
  auto* e = app.add_subcommand("export-milp", "Write the MILP in LP format");
  e->add_option("scenario", ex.scenario, "Scenario file")->required();
  e->add_option("-o,--output", ex.out, "LP file");
  e->add_flag("--json", ex.json, "Print model sizes as JSON");
  e->callback([&] { action = [&] { return run_export(ex); }; });

  SimulateArgs si;
  auto* s = app.add_subcommand("simulate", "Execute a plan with injected disturbances");
  s->add_option("scenario", si.scenario, "Scenario file")->required();
  s->add_option("plan", si.plan, "Plan file")->required();
  s->add_option("--events", si.events, "Disturbance file");
  s->add_option("--policy", si.policy, "repair, replan or combined");
  s->add_flag("--json", si.json, "Print a summary as JSON");
  s->add_option("-o,--output", si.out, "Trace file");
  s->callback([&] { action = [&] { return run_simulate(si); }; });

  RepairArgs re;
  auto* r = app.add_subcommand("repair", "Absorb a delay at the end of one slot");
  r->add_option("scenario", re.scenario, "Scenario file")->required();
  r->add_option("plan", re.plan, "Plan file")->required();
  r->add_option("--robot", re.robot, "Delayed robot id")->required();
  r->add_option("--slot", re.slot, "Delayed slot (0-based)")->required();
  r->add_option("--delay", re.delay, "Delay in seconds (negative: early)")->required();
  r->add_flag("--json", re.json, "Print the outcome as JSON");
  r->add_option("-o,--output", re.out, "Repaired plan file");
  r->callback([&] { action = [&] { return run_repair(re); }; });

  BenchArgs be;
  auto* b = app.add_subcommand("bench", "Compare planning strategies on random scenarios");
  b->add_option("--sizes", be.sizes, "Comma-separated ROBOTSxTASKS list");
  b->add_option("--trials", be.trials, "Scenarios per size");
  b->add_option("--seed", be.seed, "First scenario seed");
  b->add_flag("--json", be.json, "Print the table as JSON");
  b->add_option("-o,--output", be.out, "CSV file");
  b->callback([&] { action = [&] { return run_bench(be); }; });

  BenchRepairArgs br;
  auto* d = app.add_subcommand("bench-repair", "Delay experiment: repair vs replan vs combined");
  d->add_option("--seed", br.config.seed, "First scenario seed");
  d->add_option("--trials", br.config.scenarios, "Number of scenarios");
  d->add_option("--robots", br.config.robots, "Robots per scenario");
  d->add_option("--tasks", br.config.tasks, "Tasks per scenario");
  d->add_option("--class", br.delay_class, "short or long");
  d->add_flag("--json", br.json, "Print the summary as JSON");
  d->add_option("-o,--output", br.out, "CSV file");
  d->callback([&] { action = [&] { return run_bench_repair(br); }; });

  GanttArgs ga;
  auto* gt = app.add_subcommand("gantt", "Render a plan or trace as SVG");
  gt->add_option("plan", ga.plan, "Plan or trace file")->required();
  gt->add_option("--title", ga.title, "Chart title");
  gt->add_option("--width", ga.width, "Width in pixels");
  gt->add_option("-o,--output", ga.out, "SVG file");
  gt->callback([&] { action = [&] { return run_gantt(ga); }; });

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::Success& ok_exit)
  {
    return app.exit(ok_exit);
  }
  catch (const CLI::ParseError& err)
  {
    app.exit(err);
    return usage_error;
  }

  try
  {
    return action();
  }
  catch (const InputError& err)
  {
    std::cerr << "error: " << err.what() << "\n";
    return usage_error;
  }
  catch (const ConfigError& err)
  {
    std::cerr << "error: " << err.what() << "\n";
    return usage_error;
  }
  catch (const PlanStructureError& err)
  {
    std::cerr << "invalid plan: " << err.what() << "\n";
    return domain_failure;
  }
  catch (const fs::filesystem_error& err)
  {
    std::cerr << "error: " << err.what() << "\n";
    return usage_error;
  }
}
