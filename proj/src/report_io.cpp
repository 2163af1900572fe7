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

#include <mrta/report_io.hpp>

#include <mrta/json_io.hpp>

#include <cmath>

namespace mrta {

using nlohmann::json;

namespace {

json violation(const Violation& v)
{
  return {{"family", v.family}, {"location", v.location}, {"magnitude", v.magnitude}};
}

template <class T>
T get(const json& j, const char* key, const std::string& ctx)
{
  if (!j.is_object() || !j.contains(key))
    throw InputError(ctx + ": missing field '" + key + "'");
  try
  {
    return j.at(key).get<T>();
  }
  catch (const json::exception&)
  {
    throw InputError(ctx + ": field '" + key + "' has the wrong type");
  }
}

} // namespace

json to_json(const ObjectiveBreakdown& o)
{
  return {{"f", o.f}, {"f1", o.f1}, {"f2", o.f2}, {"f3", o.f3}, {"f4", o.f4}};
}

json to_json(const ValidationReport& report)
{
  json violations = json::array();
  for (const auto& v : report.violations)
    violations.push_back(violation(v));
  json overruns = json::array();
  for (const auto& v : report.deadline_overruns)
    overruns.push_back(violation(v));
  return {
    {"valid", report.valid},
    {"violations", violations},
    {"deadline_overruns", overruns},
    {"objective", to_json(report.objective)},
  };
}

json to_json(const MetricsReport& m)
{
  return {
    {"NR", m.recharges},
    {"f", m.objective.f},
    {"f1", m.objective.f1},
    {"f2", m.objective.f2},
    {"f3", m.objective.f3},
    {"f4", m.objective.f4},
    {"Z", m.makespan},
    {"WTR", m.waiting_rate},
    {"CSD", m.coalition_deviation},
    {"CBT", m.battery_time},
    {"WD", m.workload},
    {"CT", m.computation_time},
  };
}

json to_json(const RepairResult& result)
{
  json j = {{"success", result.success}, {"makespan_increase", result.makespan_increase}};
  if (!result.success)
    j["reason"] = result.reason;
  j["plan"] = to_json(result.plan);
  return j;
}

json to_json(const ExecutionTrace& trace)
{
  json events = json::array();
  for (const auto& e : trace.events)
  {
    json o = {{"time", e.time}, {"event", to_string(e.kind)}};
    if (e.robot)
      o["robot"] = e.robot->value;
    if (e.slot >= 0)
      o["slot"] = e.slot;
    if (e.task)
    {
      o["task"] = e.task->value;
      o["fragment"] = e.fragment;
    }
    if (!e.detail.empty())
      o["detail"] = e.detail;
    events.push_back(std::move(o));
  }
  json work = json::array();
  for (const auto& [task, seconds] : trace.work)
    work.push_back({{"task", task.value}, {"exec_time", seconds}});
  json j = {
    {"completed", trace.completed},
    {"repairs", trace.repairs},
    {"replans", trace.replans},
    {"events", events},
    {"work", work},
    {"metrics", to_json(trace.metrics)},
    {"executed", to_json(trace.executed)},
  };
  if (!trace.completed)
    j["failure"] = trace.failure;
  return j;
}

std::vector<Disturbance> disturbances_from_json(const json& j)
{
  const json* list = &j;
  if (j.is_object() && j.contains("events"))
    list = &j.at("events");
  if (!list->is_array())
    throw InputError("events: expected an array");

  std::vector<Disturbance> out;
  for (const auto& e : *list)
  {
    const std::string ctx = "event";
    const auto kind = get<std::string>(e, "kind", ctx);
    if (kind == "delay")
    {
      const auto seconds = get<double>(e, "seconds", ctx);
      if (!std::isfinite(seconds))
        throw InputError("event: delay must be finite");
      out.push_back(Disturbance::delay(
        RobotId{get<std::uint32_t>(e, "robot", ctx)}, get<int>(e, "slot", ctx), seconds));
      continue;
    }
    const auto time = get<double>(e, "time", ctx);
    if (!(time >= 0.0) || !std::isfinite(time))
      throw InputError("event: time must be finite and non-negative");
    if (kind == "failure")
      out.push_back(Disturbance::failure(RobotId{get<std::uint32_t>(e, "robot", ctx)}, time));
    else if (kind == "new_task")
    {
      if (!e.contains("task"))
        throw InputError("event: new_task needs a 'task' object");
      out.push_back(Disturbance::new_task(task_from_json(e.at("task")), time));
    }
    else
      throw InputError("event: unknown kind '" + kind + "' (delay, failure, new_task)");
  }
  return out;
}

} // namespace mrta
