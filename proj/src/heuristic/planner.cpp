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

#include <mrta/rng.hpp>

#include <algorithm>
#include <deque>
#include <limits>

#ifdef MRTA_HAVE_OPENMP
#include <omp.h>
#endif

namespace mrta {

std::string to_string(Strategy s)
{
  switch (s)
  {
    case Strategy::Heuristic:
      return "heuristic";
    case Strategy::Random:
      return "random";
    case Strategy::PseudoRandom:
      return "pseudo";
    case Strategy::Greedy:
      return "greedy";
  }
  return "?";
}

Strategy strategy_from_string(const std::string& s)
{
  if (s == "heuristic")
    return Strategy::Heuristic;
  if (s == "random")
    return Strategy::Random;
  if (s == "pseudo" || s == "pseudo-random" || s == "pseudorandom")
    return Strategy::PseudoRandom;
  if (s == "greedy")
    return Strategy::Greedy;
  throw InputError("unknown strategy '" + s + "'");
}

//==============================================================================
std::vector<std::optional<CoalitionChoice>> evaluate_candidates_serial(
  const PlannerState& state, const std::vector<FragmentInfo>& info,
  const std::vector<std::size_t>& tasks, double makespan)
{
  std::vector<std::optional<CoalitionChoice>> out(tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i)
    out[i] = select_robots(state, info[tasks[i]], tasks[i], makespan);
  return out;
}

std::vector<std::optional<CoalitionChoice>> evaluate_candidates_parallel(
  const PlannerState& state, const std::vector<FragmentInfo>& info,
  const std::vector<std::size_t>& tasks, double makespan)
{
  std::vector<std::optional<CoalitionChoice>> out(tasks.size());
  const auto n = static_cast<std::ptrdiff_t>(tasks.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i)
  {
    const auto k = static_cast<std::size_t>(i);
    out[k] = select_robots(state, info[tasks[k]], tasks[k], makespan);
  }
  return out;
}

bool higher_priority(const Scenario& scenario, const std::vector<FragmentInfo>& info,
  const CoalitionChoice& a, const CoalitionChoice& b, double window)
{
  const Task& ta = scenario.tasks[a.task_index];
  const Task& tb = scenario.tasks[b.task_index];

  // 1) Tasks that still meet their deadline now but would miss it if another
  // element went first, least slack first.
  const double slack_a = ta.deadline - a.finish;
  const double slack_b = tb.deadline - b.finish;
  const bool urgent_a = slack_a >= 0.0 && slack_a < window;
  const bool urgent_b = slack_b >= 0.0 && slack_b < window;
  if (urgent_a != urgent_b)
    return urgent_a;
  if (urgent_a && slack_a != slack_b)
    return slack_a < slack_b;

  // 2) Makespan increase, 3) added waiting time.
  if (a.delta_makespan != b.delta_makespan)
    return a.delta_makespan < b.delta_makespan;
  if (a.delta_wait != b.delta_wait)
    return a.delta_wait < b.delta_wait;

  // 4) Longer fragments first.
  if (a.duration != b.duration)
    return a.duration > b.duration;

  // 5) Larger share of the compatible robots.
  const auto& ia = info[a.task_index];
  const auto& ib = info[b.task_index];
  const double share_a = static_cast<double>(ia.coalition) / std::max(ia.compatible, 1);
  const double share_b = static_cast<double>(ib.coalition) / std::max(ib.compatible, 1);
  if (share_a != share_b)
    return share_a > share_b;

  // 6) Less displacement.
  if (a.displacement != b.displacement)
    return a.displacement < b.displacement;
  return a.task < b.task;
}

//==============================================================================
namespace {

std::vector<int> element_counts(const Scenario& scenario, const std::vector<FragmentInfo>& info)
{
  std::vector<int> counts(scenario.tasks.size(), 1);
  for (std::size_t i = 0; i < counts.size(); ++i)
  {
    if (scenario.tasks[i].decomposability == Decomposability::Fragmentable)
      counts[i] = info[i].fragments;
  }
  return counts;
}

std::vector<std::size_t> element_list(const std::vector<int>& counts)
{
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < counts.size(); ++i)
    out.insert(out.end(), static_cast<std::size_t>(counts[i]), i);
  return out;
}

[[noreturn]] void unallocatable(const Scenario& scenario, std::size_t task)
{
  throw PlanningError(scenario.tasks[task].id, "no feasible coalition");
}

void plan_heuristic(PlannerState& state, const std::vector<FragmentInfo>& info,
  std::vector<int> remaining, bool parallel)
{
  const auto& scenario = state.scenario();
  for (;;)
  {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < remaining.size(); ++i)
    {
      if (remaining[i] > 0)
        open.push_back(i);
    }
    if (open.empty())
      return;

    const double z = state.makespan();
    const auto candidates = parallel
      ? evaluate_candidates_parallel(state, info, open, z)
      : evaluate_candidates_serial(state, info, open, z);

    double window = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < open.size(); ++k)
    {
      if (!candidates[k])
        unallocatable(scenario, open[k]);
      window = std::min(window, candidates[k]->delta_makespan);
    }
    const CoalitionChoice* best = nullptr;
    for (std::size_t k = 0; k < open.size(); ++k)
    {
      if (!best || higher_priority(scenario, info, *candidates[k], *best, window))
        best = &*candidates[k];
    }
    state.commit(*best);
    --remaining[best->task_index];
  }
}

void plan_shuffled(PlannerState& state, const std::vector<FragmentInfo>& info,
  const std::vector<int>& counts, bool random_robots, std::uint64_t seed)
{
  Rng rng(seed);
  auto elements = element_list(counts);
  rng.shuffle(elements);
  for (const auto i : elements)
  {
    const double z = state.makespan();
    std::optional<CoalitionChoice> choice;
    if (random_robots)
    {
      auto robots = eligible_robots(state, info[i]);
      rng.shuffle(robots);
      choice = time_fixed_coalition(state, info[i], i, z, robots);
    }
    else
    {
      choice = select_robots(state, info[i], i, z);
    }
    if (!choice)
      unallocatable(state.scenario(), i);
    state.commit(*choice);
  }
}

void plan_greedy(PlannerState& state, const std::vector<FragmentInfo>& info,
  const std::vector<int>& counts)
{
  const auto& scenario = state.scenario();
  auto elements = element_list(counts);
  // Task queue in descending order of the execution time each element adds
  // to the plan, counting every coalition member.
  auto work = [&](std::size_t i)
  {
    const Task& t = scenario.tasks[i];
    const double d =
      detail::uses_pattern(t, info[i]) ? t.exec_time : t.exec_time / info[i].fragments;
    return d * info[i].coalition;
  };
  std::stable_sort(elements.begin(), elements.end(),
    [&](std::size_t a, std::size_t b) { return work(a) > work(b); });

  std::deque<std::size_t> queue;
  for (std::size_t r = 0; r < state.robots().size(); ++r)
    queue.push_back(r);
  std::stable_sort(queue.begin(), queue.end(), [&](std::size_t a, std::size_t b)
    { return state.robots()[a].spec->id < state.robots()[b].spec->id; });

  for (const auto i : elements)
  {
    const Task& task = scenario.tasks[i];
    const bool pattern = detail::uses_pattern(task, info[i]);
    const double d = task.exec_time / info[i].fragments;
    std::vector<std::size_t> order;
    for (bool rotated = true; rotated;)
    {
      rotated = false;
      const auto eligible = eligible_robots(state, info[i]);
      order.clear();
      for (const auto r : queue)
      {
        if (std::find(eligible.begin(), eligible.end(), r) != eligible.end())
          order.push_back(r);
      }
      if (pattern)
        break;
      // Robots that cannot take the task on their current charge recharge
      // and move to the back of the queue.
      const auto n = std::min(order.size(), static_cast<std::size_t>(info[i].coalition));
      for (std::size_t k = 0; k < n; ++k)
      {
        const auto r = order[k];
        if (!detail::needs_recharge(scenario, state.robots()[r], task.location, d, 0.0))
          continue;
        state.append_recharge(r);
        queue.erase(std::find(queue.begin(), queue.end(), r));
        queue.push_back(r);
        rotated = true;
        break;
      }
    }
    auto choice = time_fixed_coalition(state, info[i], i, state.makespan(), order);
    if (!choice)
      unallocatable(scenario, i);
    state.commit(*choice);
  }
}

} // namespace

Plan plan(const Scenario& scenario, const PlannerOptions& options)
{
  check_scenario(scenario);
  const auto info = estimate_fragments(scenario);
  const auto counts = element_counts(scenario, info);
  PlannerState state(scenario);
  switch (options.strategy)
  {
    case Strategy::Heuristic:
      plan_heuristic(state, info, counts, options.parallel);
      break;
    case Strategy::PseudoRandom:
      plan_shuffled(state, info, counts, false, options.seed);
      break;
    case Strategy::Random:
      plan_shuffled(state, info, counts, true, options.seed);
      break;
    case Strategy::Greedy:
      plan_greedy(state, info, counts);
      break;
  }
  return state.to_plan(info);
}

Plan plan_variant(const Scenario& scenario, Strategy strategy, std::uint64_t seed)
{
  PlannerOptions options;
  options.strategy = strategy;
  options.seed = seed;
  return plan(scenario, options);
}

} // namespace mrta
