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

#include <mrta/json_io.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace mrta {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what)
{
  throw InputError(what);
}

const json& field(const json& j, const char* key, const std::string& ctx)
{
  if (!j.is_object())
    bad(ctx + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end())
    bad(ctx + ": missing field '" + key + "'");
  return *it;
}

double number(const json& j, const char* key, const std::string& ctx)
{
  const auto& v = field(j, key, ctx);
  if (!v.is_number())
    bad(ctx + ": field '" + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d))
    bad(ctx + ": field '" + key + "' must be finite");
  return d;
}

double number_or(const json& j, const char* key, double fallback,
  const std::string& ctx)
{
  if (!j.contains(key))
    return fallback;
  return number(j, key, ctx);
}

std::uint32_t identifier(const json& j, const char* key, const std::string& ctx)
{
  const auto& v = field(j, key, ctx);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    bad(ctx + ": field '" + key + "' must be a non-negative integer");
  return static_cast<std::uint32_t>(v.get<long long>());
}

int integer(const json& j, const char* key, const std::string& ctx)
{
  const auto& v = field(j, key, ctx);
  if (!v.is_number_integer())
    bad(ctx + ": field '" + key + "' must be an integer");
  return v.get<int>();
}

std::string text(const json& j, const char* key, const std::string& ctx)
{
  const auto& v = field(j, key, ctx);
  if (!v.is_string())
    bad(ctx + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

Position position(const json& j, const std::string& ctx)
{
  return {number(j, "x", ctx), number(j, "y", ctx), number_or(j, "z", 0.0, ctx)};
}

std::set<std::string> labels(const json& j, const char* key, const std::string& ctx)
{
  std::set<std::string> out;
  if (!j.contains(key))
    return out;
  const auto& v = j.at(key);
  if (!v.is_array())
    bad(ctx + ": field '" + key + "' must be an array of strings");
  for (const auto& s : v)
  {
    if (!s.is_string())
      bad(ctx + ": field '" + key + "' must be an array of strings");
    out.insert(s.get<std::string>());
  }
  return out;
}

const json& array(const json& j, const char* key, const std::string& ctx)
{
  const auto& v = field(j, key, ctx);
  if (!v.is_array())
    bad(ctx + ": field '" + key + "' must be an array");
  return v;
}

json slot_ref(const SlotRef& r)
{
  return {{"robot", r.robot.value}, {"slot", r.slot}};
}

SlotRef slot_ref(const json& j, const std::string& ctx)
{
  return {RobotId{identifier(j, "robot", ctx)}, integer(j, "slot", ctx)};
}

std::vector<SlotRef> slot_refs(const json& j, const char* key, const std::string& ctx)
{
  std::vector<SlotRef> out;
  for (const auto& e : array(j, key, ctx))
    out.push_back(slot_ref(e, ctx));
  return out;
}

} // namespace

//==============================================================================
std::string to_string(Decomposability d)
{
  switch (d)
  {
    case Decomposability::NonDecomposable:
      return "non_decomposable";
    case Decomposability::Fragmentable:
      return "fragmentable";
    case Decomposability::Relayable:
      return "relayable";
  }
  return "?";
}

std::string to_string(CoalitionFlexibility::Kind k)
{
  switch (k)
  {
    case CoalitionFlexibility::Kind::Fixed:
      return "fixed";
    case CoalitionFlexibility::Kind::Variable:
      return "variable";
    case CoalitionFlexibility::Kind::Unspecified:
      return "unspecified";
  }
  return "?";
}

std::string to_string(SlotKind k)
{
  switch (k)
  {
    case SlotKind::Task:
      return "task";
    case SlotKind::Recharge:
      return "recharge";
    case SlotKind::Empty:
      return "empty";
  }
  return "?";
}

json to_json(const Position& p)
{
  return {{"x", p.x}, {"y", p.y}, {"z", p.z}};
}

json to_json(const Task& t)
{
  json coalition = {{"kind", to_string(t.coalition.kind)}};
  if (t.coalition.kind != CoalitionFlexibility::Kind::Unspecified)
    coalition["size"] = t.coalition.size;
  return {
    {"id", t.id.value},
    {"location", to_json(t.location)},
    {"exec_time", t.exec_time},
    {"deadline", t.deadline},
    {"decomposability", to_string(t.decomposability)},
    {"coalition", coalition},
    {"required_hardware", t.required_hardware},
  };
}

Task task_from_json(const json& t)
{
  const std::string tc = "task";
  Task task;
  task.id = TaskId{identifier(t, "id", tc)};
  task.location = position(field(t, "location", tc), tc);
  task.exec_time = number(t, "exec_time", tc);
  task.deadline = number(t, "deadline", tc);
  const auto d = text(t, "decomposability", tc);
  if (d == "non_decomposable")
    task.decomposability = Decomposability::NonDecomposable;
  else if (d == "fragmentable")
    task.decomposability = Decomposability::Fragmentable;
  else if (d == "relayable")
    task.decomposability = Decomposability::Relayable;
  else
    bad("task: unknown decomposability '" + d + "'");
  const auto& c = field(t, "coalition", tc);
  const auto kind = text(c, "kind", tc);
  if (kind == "fixed")
    task.coalition = CoalitionFlexibility::fixed(integer(c, "size", tc));
  else if (kind == "variable")
    task.coalition = CoalitionFlexibility::variable(integer(c, "size", tc));
  else if (kind == "unspecified")
    task.coalition = CoalitionFlexibility::unspecified();
  else
    bad("task: unknown coalition kind '" + kind + "'");
  task.required_hardware = labels(t, "required_hardware", tc);
  return task;
}

json to_json(const Scenario& scenario)
{
  json robots = json::array();
  for (const auto& r : scenario.robots)
  {
    json o = {
      {"id", r.id.value},
      {"start", to_json(r.start)},
      {"speed", r.speed},
      {"battery_max", r.battery_max},
      {"battery_initial", r.battery_initial},
      {"battery_safety", r.battery_safety},
      {"hardware", r.hardware},
    };
    if (r.ready_time != 0.0)
      o["ready_time"] = r.ready_time;
    robots.push_back(std::move(o));
  }

  json tasks = json::array();
  for (const auto& t : scenario.tasks)
    tasks.push_back(to_json(t));

  json stations = json::array();
  for (const auto& s : scenario.stations)
    stations.push_back(to_json(s));

  return {
    {"robots", robots},
    {"tasks", tasks},
    {"stations", stations},
    {"recharge_time", scenario.recharge_time},
    {"max_fragments", scenario.max_fragments},
    {"slots_per_robot", scenario.slots_per_robot},
  };
}

Scenario scenario_from_json(const json& j)
{
  Scenario s;
  const std::string ctx = "scenario";
  for (const auto& r : array(j, "robots", ctx))
  {
    const std::string rc = "robot";
    Robot robot;
    robot.id = RobotId{identifier(r, "id", rc)};
    robot.start = position(field(r, "start", rc), rc);
    robot.speed = number(r, "speed", rc);
    robot.battery_max = number(r, "battery_max", rc);
    robot.battery_initial = number_or(r, "battery_initial", 0.0, rc);
    robot.battery_safety = number_or(r, "battery_safety", 0.0, rc);
    robot.hardware = labels(r, "hardware", rc);
    robot.ready_time = number_or(r, "ready_time", 0.0, rc);
    s.robots.push_back(std::move(robot));
  }
  for (const auto& t : array(j, "tasks", ctx))
    s.tasks.push_back(task_from_json(t));
  for (const auto& p : array(j, "stations", ctx))
    s.stations.push_back(position(p, "station"));
  s.recharge_time = number(j, "recharge_time", ctx);

  derive_horizon(s);
  if (j.contains("max_fragments"))
    s.max_fragments = integer(j, "max_fragments", ctx);
  if (j.contains("slots_per_robot"))
    s.slots_per_robot = integer(j, "slots_per_robot", ctx);
  return s;
}

//==============================================================================
json to_json(const Plan& plan)
{
  json schedules = json::array();
  for (const auto& s : plan.schedules)
  {
    json slots = json::array();
    for (const auto& e : s.slots)
    {
      json o = {{"slot", e.slot}, {"kind", to_string(e.kind)}};
      if (e.is_task())
      {
        o["task"] = e.task.value;
        o["fragment"] = e.fragment;
      }
      if (!e.is_empty())
      {
        o["travel"] = e.travel;
        o["wait"] = e.wait;
        o["exec"] = e.exec;
        o["finish"] = e.finish;
        o["battery"] = e.battery;
        if (e.deviation != 0.0)
          o["deviation"] = e.deviation;
        o["pre_location"] = to_json(e.pre_location);
        o["post_location"] = to_json(e.post_location);
      }
      slots.push_back(std::move(o));
    }
    schedules.push_back({{"robot", s.robot.value}, {"slots", slots}});
  }

  json links = json::array();
  for (const auto& l : plan.links)
  {
    if (l.kind == CoordinationLink::Kind::Synch)
    {
      json members = json::array();
      for (const auto& m : l.members)
        members.push_back(slot_ref(m));
      links.push_back({{"kind", "synch"}, {"members", members}});
    }
    else
    {
      json pred = json::array();
      json succ = json::array();
      for (const auto& m : l.predecessors)
        pred.push_back(slot_ref(m));
      for (const auto& m : l.successors)
        succ.push_back(slot_ref(m));
      links.push_back(
        {{"kind", "relay"}, {"predecessors", pred}, {"successors", succ}});
    }
  }

  json tasks = json::array();
  for (const auto& a : plan.tasks)
  {
    tasks.push_back({
      {"task", a.task.value},
      {"fragments", a.fragments},
      {"coalition", a.coalition},
      {"appearances", a.appearances},
      {"queues", a.queues},
    });
  }

  return {{"schedules", schedules}, {"links", links}, {"tasks", tasks}};
}

Plan plan_from_json(const json& j)
{
  Plan plan;
  const std::string ctx = "plan";
  for (const auto& s : array(j, "schedules", ctx))
  {
    RobotSchedule schedule;
    schedule.robot = RobotId{identifier(s, "robot", "schedule")};
    for (const auto& e : array(s, "slots", "schedule"))
    {
      const std::string sc = "slot";
      SlotEntry entry;
      entry.slot = integer(e, "slot", sc);
      const auto kind = text(e, "kind", sc);
      if (kind == "task")
        entry.kind = SlotKind::Task;
      else if (kind == "recharge")
        entry.kind = SlotKind::Recharge;
      else if (kind == "empty")
        entry.kind = SlotKind::Empty;
      else
        bad("slot: unknown kind '" + kind + "'");
      if (entry.is_task())
      {
        entry.task = TaskId{identifier(e, "task", sc)};
        entry.fragment = e.contains("fragment") ? integer(e, "fragment", sc) : 1;
      }
      if (!entry.is_empty())
      {
        entry.travel = number(e, "travel", sc);
        entry.wait = number(e, "wait", sc);
        entry.exec = number(e, "exec", sc);
        entry.finish = number(e, "finish", sc);
        entry.battery = number(e, "battery", sc);
        entry.deviation = number_or(e, "deviation", 0.0, sc);
        entry.pre_location = position(field(e, "pre_location", sc), sc);
        entry.post_location = position(field(e, "post_location", sc), sc);
      }
      schedule.slots.push_back(entry);
    }
    plan.schedules.push_back(std::move(schedule));
  }

  if (j.contains("links"))
  {
    for (const auto& l : array(j, "links", ctx))
    {
      CoordinationLink link;
      const auto kind = text(l, "kind", "link");
      if (kind == "synch")
      {
        link.kind = CoordinationLink::Kind::Synch;
        link.members = slot_refs(l, "members", "link");
      }
      else if (kind == "relay")
      {
        link.kind = CoordinationLink::Kind::Relay;
        link.predecessors = slot_refs(l, "predecessors", "link");
        link.successors = slot_refs(l, "successors", "link");
        if (link.predecessors.size() != link.successors.size())
          bad("link: relay predecessors and successors differ in length");
      }
      else
      {
        bad("link: unknown kind '" + kind + "'");
      }
      plan.links.push_back(std::move(link));
    }
  }

  if (j.contains("tasks"))
  {
    for (const auto& a : array(j, "tasks", ctx))
    {
      const std::string ac = "task allocation";
      TaskAllocation alloc;
      alloc.task = TaskId{identifier(a, "task", ac)};
      alloc.fragments = integer(a, "fragments", ac);
      alloc.coalition = integer(a, "coalition", ac);
      alloc.appearances = a.contains("appearances") ? integer(a, "appearances", ac) : 0;
      alloc.queues = a.contains("queues") ? integer(a, "queues", ac) : 0;
      plan.tasks.push_back(alloc);
    }
  }
  return plan;
}

//==============================================================================
json read_json_file(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open " + path.string());
  try
  {
    return json::parse(in);
  }
  catch (const json::exception& e)
  {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& text)
{
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw InputError("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out)
      throw InputError("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
  {
    std::filesystem::remove(tmp);
    throw InputError("cannot rename into " + path.string() + ": " + ec.message());
  }
}

} // namespace mrta
