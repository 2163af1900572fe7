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

#include <mrta/heuristic.hpp>

#include <mrta/geometry.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace mrta {

namespace {

int ceil_ratio(double a, double b)
{
  return static_cast<int>(std::ceil(a / b - 1e-9));
}

int floor_ratio(double a, double b)
{
  return static_cast<int>(std::floor(a / b + 1e-9));
}

} // namespace

FragmentInfo estimate_fragments(const Scenario& scenario, const Task& task)
{
  FragmentInfo info;
  info.task = task.id;
  info.coalition = task.coalition.kind == CoalitionFlexibility::Kind::Fixed
    ? task.coalition.size
    : 1;

  double bound = std::numeric_limits<double>::infinity();
  for (const auto& r : scenario.robots)
  {
    if (!compatible(r, task))
      continue;
    ++info.compatible;
    double farthest = 0.0;
    for (const auto& other : scenario.tasks)
      farthest = std::max(farthest, travel_time(r, other.location, task.location));
    for (const auto& station : scenario.stations)
      farthest = std::max(farthest, travel_time(r, station, task.location));
    bound = std::min(bound, r.battery_budget() - 2.0 * farthest);
  }
  info.battery_bound = bound;

  if (task.decomposability == Decomposability::NonDecomposable
    || task.exec_time <= bound)
    return info;

  if (!(bound > 0.0))
    throw PlanningError(task.id, "no compatible robot has battery left to work on it");

  if (task.decomposability == Decomposability::Fragmentable)
  {
    info.fragments = ceil_ratio(task.exec_time, bound);
    return info;
  }

  const int excess = info.compatible - info.coalition;
  if (excess <= 0)
    throw PlanningError(task.id, "insufficient robots for relays");
  const int cf = (info.coalition + excess - 1) / excess;
  info.fragments = ceil_ratio(cf * task.exec_time, bound);
  info.frequency = floor_ratio(bound, task.exec_time / info.fragments);
  return info;
}

std::vector<FragmentInfo> estimate_fragments(const Scenario& scenario)
{
  std::vector<FragmentInfo> out;
  out.reserve(scenario.tasks.size());
  for (const auto& t : scenario.tasks)
    out.push_back(estimate_fragments(scenario, t));
  return out;
}

} // namespace mrta
