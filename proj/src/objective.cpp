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

#include <mrta/objective.hpp>

#include <mrta/geometry.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace mrta {

Normalizers normalizers(const Scenario& scenario)
{
  Normalizers n;
  double eta1 = 0.0;
  for (const auto& t : scenario.tasks)
  {
    double slowest = std::numeric_limits<double>::infinity();
    for (const auto& r : scenario.robots)
    {
      if (compatible(r, t))
        slowest = std::min(slowest, r.speed);
    }
    double travel = 0.0;
    if (std::isfinite(slowest) && !scenario.stations.empty())
      travel = distance(nearest_station(scenario, t.location), t.location) / slowest;
    eta1 += 2.0 * travel + t.exec_time + scenario.recharge_time;
  }
  double eta2 = 0.0;
  for (const auto& t : scenario.tasks)
    eta2 = std::max(eta2, t.deadline);
  double eta3 = 0.0;
  for (const auto& r : scenario.robots)
    eta3 = std::max(eta3, r.battery_max);
  double eta4 = 0.0;
  for (const auto& t : scenario.tasks)
    eta4 += std::max(t.coalition.required_size() - 1, 0);

  n.eta1 = eta1 > 0.0 ? eta1 : 1.0;
  n.eta2 = eta2 > 0.0 ? eta2 : 1.0;
  n.eta3 = eta3 > 0.0 ? eta3 : 1.0;
  n.eta4 = eta4 > 0.0 ? eta4 : 1.0;
  return n;
}

double coalition_deviation(const Task& task, int coalition)
{
  if (task.coalition.kind != CoalitionFlexibility::Kind::Variable)
    return 0.0;
  return std::max(0, task.coalition.size - coalition);
}

ObjectiveBreakdown compute_objective(const Scenario& scenario, const Plan& plan)
{
  const auto eta = normalizers(scenario);
  double z = 0.0;
  double delays = 0.0;
  double waits = 0.0;
  for (const auto& s : plan.schedules)
  {
    scenario.robot(s.robot);
    for (const auto& e : s.slots)
    {
      if (e.is_empty())
        continue;
      z = std::max(z, e.finish);
      waits += e.wait;
      if (e.is_task())
        delays += std::max(0.0, e.finish - scenario.task(e.task).deadline);
    }
  }
  double deviation = 0.0;
  for (const auto& a : plan.tasks)
    deviation += coalition_deviation(scenario.task(a.task), a.coalition);

  ObjectiveBreakdown o;
  o.f1 = z / eta.eta1;
  o.f2 = delays / eta.eta2;
  o.f3 = waits / eta.eta3;
  o.f4 = deviation / eta.eta4;
  o.f = o.f1 + o.f2 + o.f3 + o.f4;
  return o;
}

} // namespace mrta
