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
#include <cmath>
#include <limits>
#include <numeric>

namespace mrta {
namespace detail {

Approach approach(const Scenario& scenario, const PlannerState::Robot& robot,
  const Position& target, double stint, bool pre_recharge)
{
  const auto& spec = *robot.spec;
  const double budget = spec.battery_budget() + planning_eps;
  const double back = time_to_station(scenario, spec, target);
  Approach a;
  if (pre_recharge)
  {
    if (robot.last_recharge)
      return a;
    const auto& station = nearest_station(scenario, robot.position);
    const double leg1 = travel_time(spec, robot.position, station);
    const double leg2 = travel_time(spec, station, target);
    if (robot.consumed() + leg1 > budget || leg2 + stint + back > budget)
      return a;
    a.feasible = true;
    a.arrival = robot.finish + leg1 + scenario.recharge_time + leg2;
    a.travel = leg1 + leg2;
    return a;
  }
  const double leg = travel_time(spec, robot.position, target);
  a.feasible = robot.consumed() + leg + stint + back <= budget;
  a.arrival = robot.finish + leg;
  a.travel = leg;
  return a;
}

bool needs_recharge(const Scenario& scenario, const PlannerState::Robot& robot,
  const Position& target, double stint, double wait)
{
  if (robot.last_recharge)
    return false;
  const auto& spec = *robot.spec;
  const double leg = travel_time(spec, robot.position, target);
  const double back = time_to_station(scenario, spec, target);
  return robot.consumed() + leg + wait + stint + back
    > spec.battery_budget() + planning_eps;
}

bool can_work(const Scenario& scenario, const PlannerState::Robot& robot,
  const Position& target, double stint)
{
  const auto& spec = *robot.spec;
  const double leg = time_to_station(scenario, spec, target);
  return 2.0 * leg + stint <= spec.battery_budget() + planning_eps;
}

namespace {

struct Member
{
  std::size_t robot = 0;
  bool flag = false;
  double arrival = 0.0;
  double travel = 0.0;
};

/// Earliest approach of a robot for a stint, preferring no recharge.
std::optional<Member> first_approach(const Scenario& scenario,
  const PlannerState::Robot& robot, std::size_t index, const Position& target,
  double stint)
{
  Member m;
  m.robot = index;
  m.flag = needs_recharge(scenario, robot, target, stint, 0.0);
  auto a = approach(scenario, robot, target, stint, m.flag);
  if (!a.feasible && !m.flag)
  {
    m.flag = true;
    a = approach(scenario, robot, target, stint, true);
  }
  if (!a.feasible)
    return std::nullopt;
  m.arrival = a.arrival;
  m.travel = a.travel;
  return m;
}

bool earlier(const PlannerState& state, const Member& a, const Member& b,
  double stint)
{
  const double fa = a.arrival + stint;
  const double fb = b.arrival + stint;
  if (fa != fb)
    return fa < fb;
  return state.robots()[a.robot].spec->id < state.robots()[b.robot].spec->id;
}

//==============================================================================
std::optional<CoalitionChoice> evaluate_single(const PlannerState& state,
  const FragmentInfo& info, std::size_t task_index, double makespan,
  const Selection& selection)
{
  const auto& scenario = state.scenario();
  const Task& task = scenario.tasks[task_index];
  const double d = task.exec_time / info.fragments;
  const int n = info.coalition;

  std::vector<std::size_t> pool = selection.mode == Selection::Mode::Ordered
    ? selection.order
    : eligible_robots(state, info);
  std::vector<Member> members;
  for (const auto r : pool)
  {
    if (auto m = first_approach(scenario, state.robots()[r], r, task.location, d))
      members.push_back(*m);
  }
  if (static_cast<int>(members.size()) < n)
    return std::nullopt;
  if (selection.mode == Selection::Mode::Ordered)
    members.resize(static_cast<std::size_t>(n));

  auto pick = [&]()
  {
    std::vector<std::size_t> idx(members.size());
    std::iota(idx.begin(), idx.end(), 0);
    if (selection.mode == Selection::Mode::Earliest)
    {
      std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b)
        { return earlier(state, members[a], members[b], d); });
    }
    idx.resize(static_cast<std::size_t>(n));
    return idx;
  };
  auto coordination = [&](const std::vector<std::size_t>& chosen)
  {
    double t = 0.0;
    for (const auto i : chosen)
      t = std::max(t, members[i].arrival + d);
    return t;
  };

  auto chosen = pick();
  double finish = coordination(chosen);
  int iterations = 0;
  for (;;)
  {
    bool flagged = false;
    for (const auto i : chosen)
    {
      auto& m = members[i];
      if (m.flag)
        continue;
      const auto& robot = state.robots()[m.robot];
      const double wait = finish - (m.arrival + d);
      if (!needs_recharge(scenario, robot, task.location, d, wait))
        continue;
      const auto a = approach(scenario, robot, task.location, d, true);
      if (!a.feasible)
        return std::nullopt;
      m.flag = true;
      m.arrival = a.arrival;
      m.travel = a.travel;
      flagged = true;
    }
    auto next = pick();
    const double next_finish = coordination(next);
    const bool moved = next != chosen;
    if (flagged || moved)
      ++iterations;
    if (!moved && next_finish == finish)
      break;
    chosen = std::move(next);
    finish = next_finish;
  }

  CoalitionChoice c;
  c.task = task.id;
  c.task_index = task_index;
  c.coalition = n;
  c.fragments = info.fragments;
  c.duration = d;
  c.finish = finish;
  c.iterations = iterations;
  for (const auto i : chosen)
  {
    const auto& m = members[i];
    const double wait = std::max(0.0, finish - (m.arrival + d));
    c.robots.push_back(state.robots()[m.robot].spec->id);
    c.pre_recharge.push_back(m.flag);
    c.waits.push_back(wait);
    c.delta_wait += wait;
    c.displacement += m.travel;
  }
  c.delta_makespan = std::max(0.0, finish - makespan);
  return c;
}

//==============================================================================
struct RowShape
{
  int first = 0;
  int first_run = 0;
};

RowShape shape(const RelayPattern& p, std::size_t row)
{
  RowShape s;
  s.first = p.first_fragment(row);
  const auto& cells = p.rows[row];
  for (int c = s.first; c < p.columns
       && cells[static_cast<std::size_t>(c)] == RelayPattern::Cell::Fragment; ++c)
    ++s.first_run;
  return s;
}

/// Checks the later stints of a row: each recharge leaves enough time to fly
/// to the station and back, and each stint fits in the battery.
bool rows_feasible(const PlannerState& state, const Task& task,
  const RelayPattern& p, const std::vector<std::size_t>& robots, double d,
  std::vector<double>& recharge_waits)
{
  const auto& scenario = state.scenario();
  recharge_waits.clear();
  for (std::size_t i = 0; i < p.rows.size(); ++i)
  {
    const auto& spec = *state.robots()[robots[i]].spec;
    const auto& station = nearest_station(scenario, task.location);
    const double out = travel_time(spec, task.location, station);
    const double back = travel_time(spec, station, task.location);
    const auto& cells = p.rows[i];
    int c = shape(p, i).first;
    bool first_stint = true;
    while (c < p.columns)
    {
      int run = 0;
      while (c < p.columns && cells[static_cast<std::size_t>(c)] == RelayPattern::Cell::Fragment)
      {
        ++run;
        ++c;
      }
      if (!first_stint && back + run * d + out > spec.battery_budget() + planning_eps)
        return false;
      first_stint = false;
      int gap = 0;
      while (c < p.columns && cells[static_cast<std::size_t>(c)] == RelayPattern::Cell::Recharge)
      {
        ++gap;
        ++c;
      }
      if (gap == 0)
        break;
      const double slack = gap * d - (out + scenario.recharge_time + back);
      if (slack < -planning_eps)
        return false;
      recharge_waits.push_back(std::max(0.0, slack));
    }
  }
  return true;
}

std::optional<CoalitionChoice> evaluate_pattern(const PlannerState& state,
  const FragmentInfo& info, std::size_t task_index, double makespan,
  const Selection& selection)
{
  const auto& scenario = state.scenario();
  const Task& task = scenario.tasks[task_index];
  const auto& station = nearest_station(scenario, task.location);

  double round_trip = 0.0;
  for (const auto& r : state.robots())
  {
    if (compatible(*r.spec, task))
    {
      round_trip = std::max(round_trip,
        travel_time(*r.spec, task.location, station) + scenario.recharge_time
          + travel_time(*r.spec, station, task.location));
    }
  }

  constexpr int max_attempts = 48;
  int fragments = info.fragments;
  for (int attempt = 0; attempt < max_attempts; ++attempt, ++fragments)
  {
    const double d = task.exec_time / fragments;
    const int frequency = attempt == 0
      ? info.frequency
      : static_cast<int>(std::floor(info.battery_bound / d + 1e-9));
    if (frequency < 1)
      continue;
    const int span = std::max(1, static_cast<int>(std::ceil(round_trip / d - 1e-9)));
    const double longest = frequency * d;

    std::vector<std::size_t> pool;
    const auto base = selection.mode == Selection::Mode::Ordered
      ? selection.order
      : eligible_robots(state, info);
    for (const auto r : base)
    {
      if (can_work(scenario, state.robots()[r], task.location, longest))
        pool.push_back(r);
    }
    if (static_cast<int>(pool.size()) < info.coalition)
      return std::nullopt;

    RelayPattern pattern;
    try
    {
      pattern = build_relay_pattern(fragments, frequency,
        static_cast<int>(pool.size()), info.coalition, span);
    }
    catch (const PatternError&)
    {
      continue;
    }

    // Robots sorted by finish time take rows sorted by start column.
    std::vector<Member> members;
    for (const auto r : pool)
    {
      if (auto m = first_approach(scenario, state.robots()[r], r, task.location, longest))
        members.push_back(*m);
    }
    if (members.size() < pattern.rows.size())
      continue;
    if (selection.mode == Selection::Mode::Earliest)
    {
      std::stable_sort(members.begin(), members.end(),
        [&](const Member& a, const Member& b) { return earlier(state, a, b, 0.0); });
    }
    members.resize(pattern.rows.size());
    std::vector<std::size_t> robots;
    for (const auto& m : members)
      robots.push_back(m.robot);

    std::vector<double> recharge_waits;
    if (!rows_feasible(state, task, pattern, robots, d, recharge_waits))
      continue;

    // Per-row first stint, then iterate start time and pre-recharges.
    std::vector<RowShape> shapes;
    bool ok = true;
    for (std::size_t i = 0; i < members.size(); ++i)
    {
      shapes.push_back(shape(pattern, i));
      const double stint = shapes[i].first_run * d;
      auto m = first_approach(
        scenario, state.robots()[members[i].robot], members[i].robot, task.location, stint);
      if (!m)
      {
        ok = false;
        break;
      }
      members[i] = *m;
    }
    if (!ok)
      continue;

    auto start_time = [&]()
    {
      double t0 = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < members.size(); ++i)
        t0 = std::max(t0, members[i].arrival - shapes[i].first * d);
      return t0;
    };
    double t0 = start_time();
    int iterations = 0;
    for (;;)
    {
      bool flagged = false;
      for (std::size_t i = 0; i < members.size(); ++i)
      {
        auto& m = members[i];
        if (m.flag)
          continue;
        const auto& robot = state.robots()[m.robot];
        const double stint = shapes[i].first_run * d;
        const double wait = t0 + shapes[i].first * d - m.arrival;
        if (!needs_recharge(scenario, robot, task.location, stint, wait))
          continue;
        const auto a = approach(scenario, robot, task.location, stint, true);
        if (!a.feasible)
        {
          ok = false;
          break;
        }
        m.flag = true;
        m.arrival = a.arrival;
        m.travel = a.travel;
        flagged = true;
      }
      if (!ok)
        break;
      const double next = start_time();
      if (flagged)
        ++iterations;
      if (next == t0)
        break;
      t0 = next;
    }
    if (!ok)
      continue;

    CoalitionChoice c;
    c.task = task.id;
    c.task_index = task_index;
    c.coalition = info.coalition;
    c.fragments = fragments;
    c.duration = d;
    c.pattern_start = t0;
    c.finish = t0 + fragments * d;
    c.iterations = iterations;
    for (std::size_t i = 0; i < members.size(); ++i)
    {
      const auto& m = members[i];
      const double wait = std::max(0.0, t0 + shapes[i].first * d - m.arrival);
      c.robots.push_back(state.robots()[m.robot].spec->id);
      c.pre_recharge.push_back(m.flag);
      c.waits.push_back(wait);
      c.delta_wait += wait;
      c.displacement += m.travel;
    }
    for (const double w : recharge_waits)
      c.delta_wait += w;
    c.delta_makespan = std::max(0.0, c.finish - makespan);
    c.pattern = std::move(pattern);
    return c;
  }
  return std::nullopt;
}

} // namespace

std::optional<CoalitionChoice> evaluate(const PlannerState& state,
  const FragmentInfo& info, std::size_t task_index, double makespan,
  const Selection& selection)
{
  const Task& task = state.scenario().tasks[task_index];
  if (uses_pattern(task, info))
    return evaluate_pattern(state, info, task_index, makespan, selection);
  return evaluate_single(state, info, task_index, makespan, selection);
}

} // namespace detail

//==============================================================================
std::vector<std::size_t> eligible_robots(
  const PlannerState& state, const FragmentInfo& info)
{
  const auto& scenario = state.scenario();
  const Task& task = scenario.task(info.task);
  const double stint = detail::uses_pattern(task, info)
    ? 0.0
    : task.exec_time / info.fragments;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < state.robots().size(); ++i)
  {
    const auto& r = state.robots()[i];
    if (compatible(*r.spec, task) && detail::can_work(scenario, r, task.location, stint))
      out.push_back(i);
  }
  return out;
}

std::optional<CoalitionChoice> select_robots(const PlannerState& state,
  const FragmentInfo& info, std::size_t task_index, double makespan)
{
  return detail::evaluate(state, info, task_index, makespan, {});
}

std::optional<CoalitionChoice> time_fixed_coalition(const PlannerState& state,
  const FragmentInfo& info, std::size_t task_index, double makespan,
  const std::vector<std::size_t>& robots)
{
  detail::Selection s;
  s.mode = detail::Selection::Mode::Ordered;
  s.order = robots;
  return detail::evaluate(state, info, task_index, makespan, s);
}

} // namespace mrta
