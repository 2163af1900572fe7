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

#include <mrta/simulator.hpp>

#include <mrta/heuristic.hpp>
#include <mrta/rng.hpp>
#include <mrta/scenario_gen.hpp>

#include <cmath>
#include <cstdio>
#include <optional>

namespace mrta {

std::string to_string(DelayClass c)
{
  return c == DelayClass::Short ? "short" : "long";
}

DelayClass delay_class_from_string(const std::string& s)
{
  if (s == "short")
    return DelayClass::Short;
  if (s == "long")
    return DelayClass::Long;
  throw InputError("unknown delay class '" + s + "' (short, long)");
}

const std::vector<std::string>& increment_names()
{
  static const std::vector<std::string> names{"f", "Z", "WTR", "CBT", "WD"};
  return names;
}

namespace {

const Policy policies[] = {Policy::RepairOnly, Policy::ReplanOnly, Policy::Combined};

std::map<std::string, double> metric_values(const MetricsReport& m)
{
  return {{"f", m.objective.f}, {"Z", m.makespan}, {"WTR", m.waiting_rate},
    {"CBT", m.battery_time}, {"WD", m.workload}};
}

// Short delays hit the end of a task slot, long ones a recharge.
std::optional<DelayTrial> run_trial(const DelayExperimentConfig& config, std::uint64_t seed)
{
  GenConfig gen;
  gen.seed = seed;
  gen.n_robots = config.robots;
  gen.n_tasks = config.tasks;
  const Scenario scenario = generate(gen);
  Plan base;
  try
  {
    base = plan(scenario);
  }
  catch (const PlanningError&)
  {
    return std::nullopt;
  }

  const bool long_delay = config.delay_class == DelayClass::Long;
  std::vector<SlotRef> candidates;
  for (const auto& s : base.schedules)
  {
    for (const auto& e : s.slots)
    {
      if (long_delay ? e.is_recharge() : e.is_task())
        candidates.push_back({s.robot, e.slot});
    }
  }
  if (candidates.empty())
    return std::nullopt;

  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const auto pick = candidates[rng.index(candidates.size())];
  std::vector<double> magnitudes = config.magnitudes;
  if (magnitudes.empty())
    magnitudes = long_delay ? std::vector{600.0, 900.0, 1200.0} : std::vector{30.0, 60.0, 120.0};
  const auto level = rng.index(magnitudes.size());

  DelayTrial trial;
  trial.scenario_seed = seed;
  trial.robot = pick.robot;
  trial.slot = pick.slot;
  trial.delay = magnitudes[level];

  const auto before = metric_values(plan_metrics(scenario, base));
  const std::vector<Disturbance> disturbances{
    Disturbance::delay(trial.robot, trial.slot, trial.delay)};
  for (const auto policy : policies)
  {
    const auto trace = simulate(scenario, base, disturbances, policy);
    trial.success[policy] = trace.completed;
    if (!trace.completed)
      continue;
    const auto after = metric_values(trace.metrics);
    for (const auto& name : increment_names())
    {
      const double old = before.at(name);
      if (std::abs(old) > 1e-12)
        trial.increments[policy][name] = 100.0 * (after.at(name) - old) / old;
    }
  }
  return trial;
}

} // namespace

DelayExperimentResult run_delay_experiment(const DelayExperimentConfig& config)
{
  if (config.scenarios < 0 || config.robots < 1 || config.tasks < 1)
    throw ConfigError("delay experiment needs scenarios >= 0, robots >= 1, tasks >= 1");

  std::vector<std::optional<DelayTrial>> slots(static_cast<std::size_t>(config.scenarios));
#pragma omp parallel for schedule(dynamic) if (config.parallel)
  for (int k = 0; k < config.scenarios; ++k)
    slots[static_cast<std::size_t>(k)] = run_trial(config, config.seed + static_cast<std::uint64_t>(k));

  DelayExperimentResult result;
  for (auto& t : slots)
  {
    if (t)
      result.trials.push_back(std::move(*t));
  }

  for (const auto policy : policies)
  {
    ApproachSummary s;
    std::map<std::string, std::vector<double>> samples;
    for (const auto& t : result.trials)
    {
      ++s.trials;
      if (!t.success.at(policy))
        continue;
      ++s.successes;
      if (const auto it = t.increments.find(policy); it != t.increments.end())
      {
        for (const auto& [name, v] : it->second)
          samples[name].push_back(v);
      }
    }
    s.success_rate = s.trials > 0 ? 100.0 * s.successes / s.trials : 0.0;
    for (const auto& [name, v] : samples)
    {
      double mean = 0.0;
      for (const double x : v)
        mean += x;
      mean /= static_cast<double>(v.size());
      double var = 0.0;
      for (const double x : v)
        var += (x - mean) * (x - mean);
      const double n = static_cast<double>(v.size());
      const double se = v.size() > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
      s.increments[name] = {mean, se};
    }
    result.summary[policy] = std::move(s);
  }
  return result;
}

std::string delay_experiment_csv(const DelayExperimentResult& result)
{
  std::string out = "metric";
  for (const auto policy : policies)
    out += "," + to_string(policy) + "_mean," + to_string(policy) + "_se";
  out += "\n";

  char buf[64];
  out += "SR";
  for (const auto policy : policies)
  {
    const auto it = result.summary.find(policy);
    std::snprintf(buf, sizeof buf, ",%.4f,", it == result.summary.end() ? 0.0 : it->second.success_rate);
    out += buf;
  }
  out += "\n";
  for (const auto& name : increment_names())
  {
    out += name;
    for (const auto policy : policies)
    {
      const auto it = result.summary.find(policy);
      if (it == result.summary.end() || !it->second.increments.count(name))
      {
        out += ",,";
        continue;
      }
      const auto [mean, se] = it->second.increments.at(name);
      std::snprintf(buf, sizeof buf, ",%.4f,%.4f", mean, se);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

} // namespace mrta
