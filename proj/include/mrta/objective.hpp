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

#ifndef MRTA_OBJECTIVE_HPP
#define MRTA_OBJECTIVE_HPP

#include <mrta/model.hpp>

namespace mrta {

/// Scale factors that bring the four cost terms to comparable magnitudes.
struct Normalizers
{
  /// Makespan of one slowest robot doing every task alone, flying from the
  /// station before each task and recharging after it.
  double eta1 = 1.0;
  /// Latest task deadline.
  double eta2 = 1.0;
  /// Largest battery autonomy.
  double eta3 = 1.0;
  /// Sum of the largest possible coalition deviations, N_t - 1.
  double eta4 = 1.0;
};

Normalizers normalizers(const Scenario& scenario);

struct ObjectiveBreakdown
{
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
  double f4 = 0.0;
  double f = 0.0;
};

/// Coalition deviation V_t of a task executed by @p coalition robots. Only
/// tasks with a variable coalition size are penalized.
double coalition_deviation(const Task& task, int coalition);

/// Evaluates the cost terms of @p plan. Throws PlanStructureError on
/// dangling ids.
ObjectiveBreakdown compute_objective(const Scenario& scenario, const Plan& plan);

} // namespace mrta

#endif // MRTA_OBJECTIVE_HPP
