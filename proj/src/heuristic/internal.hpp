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

#ifndef MRTA_SRC_HEURISTIC_INTERNAL_HPP
#define MRTA_SRC_HEURISTIC_INTERNAL_HPP

#include <mrta/geometry.hpp>
#include <mrta/heuristic.hpp>

#include <optional>
#include <vector>

namespace mrta::detail {

/// Slack on battery comparisons inside the planner, well below the
/// validator tolerance.
inline constexpr double planning_eps = 1e-9;

/// How a robot reaches a task: directly or through a recharge first.
struct Approach
{
  bool feasible = false;
  /// Earliest arrival at the task location.
  double arrival = 0.0;
  /// Flight time into the task (both legs when recharging first).
  double travel = 0.0;
};

Approach approach(const Scenario& scenario, const PlannerState::Robot& robot,
  const Position& target, double stint, bool pre_recharge);

/// True when waiting @p wait at the target and then working @p stint would
/// leave the robot unable to reach a station without a recharge first.
bool needs_recharge(const Scenario& scenario, const PlannerState::Robot& robot,
  const Position& target, double stint, double wait);

/// True when the robot could work @p stint at @p target starting from a
/// full battery at the nearest station.
bool can_work(const Scenario& scenario, const PlannerState::Robot& robot,
  const Position& target, double stint);

/// Robot-selection policy for one evaluation.
struct Selection
{
  enum class Mode
  {
    /// Coalition search: earliest-finishing robots, recomputed until stable.
    Earliest,
    /// Use robots in the given order, never changing the set.
    Ordered
  };

  Mode mode = Mode::Earliest;
  std::vector<std::size_t> order;
};

std::optional<CoalitionChoice> evaluate(const PlannerState& state,
  const FragmentInfo& info, std::size_t task_index, double makespan,
  const Selection& selection);

/// True when @p info describes a relayed task allocated through a pattern.
inline bool uses_pattern(const Task& task, const FragmentInfo& info)
{
  return task.decomposability == Decomposability::Relayable && info.fragments > 1;
}

} // namespace mrta::detail

#endif // MRTA_SRC_HEURISTIC_INTERNAL_HPP
