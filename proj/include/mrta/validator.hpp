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

#ifndef MRTA_VALIDATOR_HPP
#define MRTA_VALIDATOR_HPP

#include <mrta/model.hpp>
#include <mrta/objective.hpp>

#include <string>
#include <vector>

namespace mrta {

/// Absolute tolerance, in seconds, for every time and battery comparison.
inline constexpr double time_tolerance = 1e-6;

struct Violation
{
  /// Constraint family, e.g. "battery_limit" or "synchronization".
  std::string family;
  /// Human-readable position of the violation.
  std::string location;
  /// Size of the violation (seconds, count difference, or 1 for boolean
  /// conditions).
  double magnitude = 0.0;
};

struct ValidationReport
{
  bool valid = true;
  std::vector<Violation> violations;
  /// Soft deadline overruns. They are priced by f2 and never invalidate a
  /// plan.
  std::vector<Violation> deadline_overruns;
  ObjectiveBreakdown objective;
};

/// Checks every constraint family directly on the plan. Throws
/// PlanStructureError when the plan refers to robots, tasks or slots that do
/// not exist.
ValidationReport validate_plan(const Scenario& scenario, const Plan& plan);

} // namespace mrta

#endif // MRTA_VALIDATOR_HPP
