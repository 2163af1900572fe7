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

#include "internal.hpp"

#include <algorithm>
#include <map>

namespace mrta {

using detail::planning_eps;

PlannerState::PlannerState(const Scenario& scenario)
: scenario_(&scenario), fragments_done_(scenario.tasks.size(), 0)
{
  for (const auto& r : scenario.robots)
  {
    Robot state;
    state.spec = &r;
    state.position = r.start;
    state.finish = r.ready_time;
    state.battery = r.battery_initial;
    robots_.push_back(std::move(state));
  }
}

double PlannerState::makespan() const
{
  double z = 0.0;
  for (const auto& r : robots_)
  {
    if (!r.slots.empty())
      z = std::max(z, r.finish);
  }
  return z;
}

namespace {

std::size_t robot_index(const PlannerState& state, RobotId id)
{
  for (std::size_t i = 0; i < state.robots().size(); ++i)
  {
    if (state.robots()[i].spec->id == id)
      return i;
  }
  throw PlanStructureError("unknown robot id " + std::to_string(id.value));
}

SlotRef push_slot(PlannerState::Robot& r, SlotKind kind, TaskId task, int fragment,
  const Position& target, double wait, double exec)
{
  SlotEntry e;
  e.slot = static_cast<int>(r.slots.size());
  e.kind = kind;
  e.task = task;
  e.fragment = fragment;
  e.pre_location = r.position;
  e.post_location = target;
  e.travel = travel_time(*r.spec, r.position, target);
  e.wait = wait;
  e.exec = exec;
  e.finish = r.finish + e.travel + e.wait + e.exec;
  e.battery = r.consumed() + e.travel
    + (kind == SlotKind::Recharge ? 0.0 : e.wait + e.exec);
  r.slots.push_back(e);
  r.position = target;
  r.finish = e.finish;
  r.battery = e.battery;
  r.last_recharge = kind == SlotKind::Recharge;
  return {r.spec->id, e.slot};
}

/// Places a coordination wait before the robot's next task: inside a new
/// pre-recharge, inside a trailing recharge, or at the task location.
/// Returns the wait left for the task slot itself.
double place_wait(const Scenario& scenario, PlannerState::Robot& r, bool pre_recharge,
  double wait)
{
  if (pre_recharge)
  {
    push_slot(r, SlotKind::Recharge, TaskId{}, 1, nearest_station(scenario, r.position),
      wait, scenario.recharge_time);
    return 0.0;
  }
  if (r.last_recharge && !r.slots.empty())
  {
    auto& last = r.slots.back();
    last.wait += wait;
    last.finish += wait;
    r.finish = last.finish;
    return 0.0;
  }
  return wait;
}

} // namespace

void PlannerState::append_recharge(std::size_t robot)
{
  auto& r = robots_[robot];
  push_slot(r, SlotKind::Recharge, TaskId{}, 1,
    nearest_station(*scenario_, r.position), 0.0, scenario_->recharge_time);
}

void PlannerState::commit(const CoalitionChoice& choice)
{
  const Task& task = scenario_->tasks[choice.task_index];
  auto& done = fragments_done_[choice.task_index];

  if (!choice.pattern)
  {
    const int fragment = ++done;
    CoordinationLink synch;
    for (std::size_t i = 0; i < choice.robots.size(); ++i)
    {
      auto& r = robots_[robot_index(*this, choice.robots[i])];
      const double wait =
        place_wait(*scenario_, r, choice.pre_recharge[i], choice.waits[i]);
      synch.members.push_back(push_slot(
        r, SlotKind::Task, task.id, fragment, task.location, wait, choice.duration));
    }
    if (synch.members.size() >= 2)
      links_.push_back(std::move(synch));
    return;
  }

  const auto& p = *choice.pattern;
  const double d = choice.duration;
  std::vector<std::vector<SlotRef>> columns(static_cast<std::size_t>(p.columns));
  for (std::size_t i = 0; i < p.rows.size(); ++i)
  {
    auto& r = robots_[robot_index(*this, choice.robots[i])];
    const auto& cells = p.rows[i];
    int c = p.first_fragment(i);
    double wait = place_wait(*scenario_, r, choice.pre_recharge[i], choice.waits[i]);
    while (c < p.columns)
    {
      const auto cell = cells[static_cast<std::size_t>(c)];
      if (cell == RelayPattern::Cell::Fragment)
      {
        columns[static_cast<std::size_t>(c)].push_back(
          push_slot(r, SlotKind::Task, task.id, c + 1, task.location, wait, d));
        wait = 0.0;
        ++c;
        continue;
      }
      if (cell == RelayPattern::Cell::Empty)
        break;
      int next = c;
      while (next < p.columns
        && cells[static_cast<std::size_t>(next)] == RelayPattern::Cell::Recharge)
        ++next;
      const auto& station = nearest_station(*scenario_, r.position);
      const double out = travel_time(*r.spec, r.position, station);
      const double back = travel_time(*r.spec, station, task.location);
      const double resume = choice.pattern_start + next * d;
      const double slack =
        std::max(0.0, resume - (r.finish + out + scenario_->recharge_time + back));
      push_slot(r, SlotKind::Recharge, TaskId{}, 1, station, slack,
        scenario_->recharge_time);
      c = next;
    }
  }
  done = p.columns;

  for (std::size_t c = 0; c < columns.size(); ++c)
  {
    if (columns[c].size() >= 2)
    {
      CoordinationLink synch;
      synch.members = columns[c];
      links_.push_back(std::move(synch));
    }
    if (c + 1 == columns.size())
      continue;
    // Robots staying on the task relay themselves; the others pair by id.
    auto before = columns[c];
    auto after = columns[c + 1];
    CoordinationLink relay;
    relay.kind = CoordinationLink::Kind::Relay;
    for (auto it = before.begin(); it != before.end();)
    {
      const auto same = std::find_if(after.begin(), after.end(),
        [&](const SlotRef& s) { return s.robot == it->robot; });
      if (same == after.end())
      {
        ++it;
        continue;
      }
      relay.predecessors.push_back(*it);
      relay.successors.push_back(*same);
      after.erase(same);
      it = before.erase(it);
    }
    std::sort(before.begin(), before.end());
    std::sort(after.begin(), after.end());
    for (std::size_t k = 0; k < before.size() && k < after.size(); ++k)
    {
      relay.predecessors.push_back(before[k]);
      relay.successors.push_back(after[k]);
    }
    links_.push_back(std::move(relay));
  }
}

Plan PlannerState::to_plan(const std::vector<FragmentInfo>& info) const
{
  Plan plan;
  for (const auto& r : robots_)
    plan.schedules.push_back({r.spec->id, r.slots});
  plan.links = links_;
  for (std::size_t i = 0; i < scenario_->tasks.size(); ++i)
  {
    TaskAllocation a;
    a.task = scenario_->tasks[i].id;
    a.coalition = info[i].coalition;
    a.fragments = fragments_done_[i] > 0 ? fragments_done_[i] : info[i].fragments;
    plan.tasks.push_back(a);
  }
  refresh_counts(plan);
  return plan;
}

} // namespace mrta
