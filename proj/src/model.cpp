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

#include <mrta/geometry.hpp>
#include <mrta/model.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <type_traits>

namespace mrta {

double distance(const Position& a, const Position& b)
{
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

//==============================================================================
const Robot* Scenario::find_robot(RobotId id) const
{
  for (const auto& r : robots)
  {
    if (r.id == id)
      return &r;
  }
  return nullptr;
}

const Task* Scenario::find_task(TaskId id) const
{
  for (const auto& t : tasks)
  {
    if (t.id == id)
      return &t;
  }
  return nullptr;
}

const Robot& Scenario::robot(RobotId id) const
{
  if (const auto* r = find_robot(id))
    return *r;
  throw PlanStructureError("unknown robot id " + std::to_string(id.value));
}

const Task& Scenario::task(TaskId id) const
{
  if (const auto* t = find_task(id))
    return *t;
  throw PlanStructureError("unknown task id " + std::to_string(id.value));
}

bool compatible(const Robot& robot, const Task& task)
{
  return std::includes(
    robot.hardware.begin(), robot.hardware.end(),
    task.required_hardware.begin(), task.required_hardware.end());
}

int compatible_count(const Scenario& scenario, const Task& task)
{
  int n = 0;
  for (const auto& r : scenario.robots)
  {
    if (compatible(r, task))
      ++n;
  }
  return n;
}

void derive_horizon(Scenario& scenario)
{
  int nf = 1;
  for (const auto& t : scenario.tasks)
  {
    double min_bmax = std::numeric_limits<double>::infinity();
    double max_bmin = 0.0;
    for (const auto& r : scenario.robots)
    {
      if (!compatible(r, t))
        continue;
      min_bmax = std::min(min_bmax, r.battery_max);
      max_bmin = std::max(max_bmin, r.battery_safety);
    }
    const double usable = min_bmax - max_bmin;
    if (!std::isfinite(usable) || usable <= 0.0)
      continue;
    const int tours = static_cast<int>(std::ceil(t.exec_time / usable - 1e-9));
    nf = std::max(nf, tours + 1);
  }
  scenario.max_fragments = nf;
  const auto m = static_cast<int>(scenario.tasks.size());
  scenario.slots_per_robot = std::max(1, m * (nf + 1));
}

void check_scenario(const Scenario& scenario)
{
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };

  if (scenario.stations.empty())
    fail("scenario has no recharge station");
  if (!(scenario.recharge_time > 0.0))
    fail("recharge_time must be positive");
  if (scenario.max_fragments < 1 || scenario.slots_per_robot < 1)
    fail("max_fragments and slots_per_robot must be positive");

  auto finite = [](const Position& p)
  { return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z); };

  std::set<RobotId> robot_ids;
  for (const auto& r : scenario.robots)
  {
    const auto name = "robot " + std::to_string(r.id.value);
    if (!robot_ids.insert(r.id).second)
      fail("duplicate " + name);
    if (!finite(r.start))
      fail(name + " has a non-finite start position");
    if (!(r.speed > 0.0))
      fail(name + " must have a positive speed");
    if (!(r.battery_max > 0.0) || r.battery_initial < 0.0
      || r.battery_safety < 0.0)
      fail(name + " has invalid battery parameters");
    if (!(r.battery_initial < r.battery_max - r.battery_safety))
      fail(name + " starts with no usable battery");
    if (r.ready_time < 0.0)
      fail(name + " has a negative ready time");
  }

  std::set<TaskId> task_ids;
  for (const auto& t : scenario.tasks)
  {
    const auto name = "task " + std::to_string(t.id.value);
    if (!task_ids.insert(t.id).second)
      fail("duplicate " + name);
    if (!finite(t.location))
      fail(name + " has a non-finite location");
    if (!(t.exec_time > 0.0))
      fail(name + " must have a positive execution time");
    if (!(t.deadline > 0.0))
      fail(name + " must have a positive deadline");
    if (t.coalition.kind != CoalitionFlexibility::Kind::Unspecified
      && t.coalition.size < 1)
      fail(name + " must have a coalition size of at least 1");
    if (compatible_count(scenario, t) == 0)
      fail(name + " is not compatible with any robot");
  }

  for (const auto& s : scenario.stations)
  {
    if (!finite(s))
      fail("station with a non-finite position");
  }
}

//==============================================================================
const RobotSchedule* Plan::find_schedule(RobotId id) const
{
  for (const auto& s : schedules)
  {
    if (s.robot == id)
      return &s;
  }
  return nullptr;
}

RobotSchedule* Plan::find_schedule(RobotId id)
{
  for (auto& s : schedules)
  {
    if (s.robot == id)
      return &s;
  }
  return nullptr;
}

const TaskAllocation* Plan::find_allocation(TaskId id) const
{
  for (const auto& a : tasks)
  {
    if (a.task == id)
      return &a;
  }
  return nullptr;
}

namespace {

template <class Schedule>
auto* find_slot(Schedule* s, int index)
{
  using Entry = std::remove_reference_t<decltype(s->slots[0])>;
  Entry* found = nullptr;
  if (!s || index < 0)
    return found;
  const auto pos = static_cast<std::size_t>(index);
  if (pos < s->slots.size() && s->slots[pos].slot == index)
    return &s->slots[pos];
  for (auto& e : s->slots)
  {
    if (e.slot == index)
      return &e;
  }
  return found;
}

} // namespace

const SlotEntry* Plan::slot(const SlotRef& ref) const
{
  return find_slot(find_schedule(ref.robot), ref.slot);
}

SlotEntry* Plan::slot(const SlotRef& ref)
{
  return find_slot(find_schedule(ref.robot), ref.slot);
}

double schedule_finish(const RobotSchedule& schedule, double ready_time)
{
  double finish = ready_time;
  for (const auto& e : schedule.slots)
  {
    if (!e.is_empty())
      finish = e.finish;
  }
  return finish;
}

double makespan(const Plan& plan)
{
  double z = 0.0;
  for (const auto& s : plan.schedules)
    z = std::max(z, schedule_finish(s));
  return z;
}

void refresh_counts(Plan& plan)
{
  std::map<TaskId, std::pair<int, std::set<RobotId>>> seen;
  for (const auto& s : plan.schedules)
  {
    for (const auto& e : s.slots)
    {
      if (!e.is_task())
        continue;
      auto& entry = seen[e.task];
      ++entry.first;
      entry.second.insert(s.robot);
    }
  }
  for (auto& a : plan.tasks)
  {
    const auto it = seen.find(a.task);
    a.appearances = it == seen.end() ? 0 : it->second.first;
    a.queues =
      it == seen.end() ? 0 : static_cast<int>(it->second.second.size());
  }
}

//==============================================================================
double travel_time(const Robot& robot, const Position& from, const Position& to)
{
  return distance(from, to) / robot.speed;
}

std::size_t nearest_station_index(const Scenario& scenario, const Position& from)
{
  if (scenario.stations.empty())
    throw ConfigError("scenario has no recharge station");

  std::size_t best = 0;
  double best_d = distance(from, scenario.stations[0]);
  for (std::size_t i = 1; i < scenario.stations.size(); ++i)
  {
    const double d = distance(from, scenario.stations[i]);
    if (d < best_d)
    {
      best = i;
      best_d = d;
    }
  }
  return best;
}

const Position& nearest_station(const Scenario& scenario, const Position& from)
{
  return scenario.stations[nearest_station_index(scenario, from)];
}

double time_to_station(
  const Scenario& scenario, const Robot& robot, const Position& from)
{
  return travel_time(robot, from, nearest_station(scenario, from));
}

} // namespace mrta
