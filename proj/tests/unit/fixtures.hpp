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

#ifndef MRTA_TESTS_FIXTURES_HPP
#define MRTA_TESTS_FIXTURES_HPP

#include <mrta/geometry.hpp>
#include <mrta/model.hpp>

#include <string>
#include <vector>

namespace fixtures {

using namespace mrta;

inline Robot robot(std::uint32_t id, Position start = {}, double battery_max = 1200.0,
  double battery_initial = 0.0, double speed = 5.0)
{
  Robot r;
  r.id = RobotId{id};
  r.start = start;
  r.speed = speed;
  r.battery_max = battery_max;
  r.battery_initial = battery_initial;
  return r;
}

inline Task task(std::uint32_t id, Position at, double exec, Decomposability d = Decomposability::NonDecomposable,
  CoalitionFlexibility c = CoalitionFlexibility::fixed(1), double deadline = 6000.0)
{
  Task t;
  t.id = TaskId{id};
  t.location = at;
  t.exec_time = exec;
  t.deadline = deadline;
  t.decomposability = d;
  t.coalition = c;
  return t;
}

inline Scenario scenario(std::vector<Robot> robots, std::vector<Task> tasks,
  std::vector<Position> stations = {{0.0, 0.0, 0.0}}, double recharge = 300.0)
{
  Scenario s;
  s.robots = std::move(robots);
  s.tasks = std::move(tasks);
  s.stations = std::move(stations);
  s.recharge_time = recharge;
  derive_horizon(s);
  return s;
}

/// Appends a slot to @p robot's schedule, deriving travel, finish and battery
/// from the previous slot. Fragment execution time is T^e / n^f.
inline SlotEntry& append(Plan& plan, const Scenario& sc, RobotId robot, SlotKind kind,
  TaskId task = {}, int fragment = 1, double wait = 0.0, int fragments = 1)
{
  auto* s = plan.find_schedule(robot);
  if (!s)
  {
    plan.schedules.push_back({robot, {}});
    s = &plan.schedules.back();
  }
  const Robot& r = sc.robot(robot);
  SlotEntry e;
  e.slot = static_cast<int>(s->slots.size());
  e.kind = kind;
  e.task = task;
  e.fragment = fragment;
  const bool first = s->slots.empty();
  e.pre_location = first ? r.start : s->slots.back().post_location;
  const double start = first ? r.ready_time : s->slots.back().finish;
  double carried = first ? r.battery_initial : s->slots.back().battery;
  if (!first && s->slots.back().is_recharge())
    carried = 0.0;
  if (kind == SlotKind::Task)
  {
    e.post_location = sc.task(task).location;
    e.exec = sc.task(task).exec_time / fragments;
  }
  else
  {
    e.post_location = nearest_station(sc, e.pre_location);
    e.exec = sc.recharge_time;
  }
  e.travel = distance(e.pre_location, e.post_location) / r.speed;
  e.wait = wait;
  e.finish = start + e.travel + e.wait + e.exec;
  e.battery = carried + e.travel + (kind == SlotKind::Recharge ? 0.0 : e.wait + e.exec);
  s->slots.push_back(e);
  return s->slots.back();
}

inline void allocate(Plan& plan, TaskId task, int fragments, int coalition)
{
  TaskAllocation a;
  a.task = task;
  a.fragments = fragments;
  a.coalition = coalition;
  plan.tasks.push_back(a);
  refresh_counts(plan);
}

inline CoordinationLink synch(std::vector<SlotRef> members)
{
  CoordinationLink l;
  l.kind = CoordinationLink::Kind::Synch;
  l.members = std::move(members);
  return l;
}

inline CoordinationLink relay(std::vector<SlotRef> from, std::vector<SlotRef> to)
{
  CoordinationLink l;
  l.kind = CoordinationLink::Kind::Relay;
  l.predecessors = std::move(from);
  l.successors = std::move(to);
  return l;
}

} // namespace fixtures

#endif // MRTA_TESTS_FIXTURES_HPP
