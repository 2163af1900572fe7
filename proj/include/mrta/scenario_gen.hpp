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

#ifndef MRTA_SCENARIO_GEN_HPP
#define MRTA_SCENARIO_GEN_HPP

#include <mrta/model.hpp>

#include <cstdint>

namespace mrta {

/// Parameters of the random scenario recipe. Defaults describe a fleet of
/// small UAVs working on a 200 x 300 m solar plant.
struct GenConfig
{
  std::uint64_t seed = 0;
  int n_robots = 3;
  int n_tasks = 2;
  double width = 200.0;
  double height = 300.0;
  double battery_max = 1200.0;
  double battery_safety = 0.0;
  double speed = 5.0;
  double recharge_time = 300.0;
  double deadline = 6000.0;
  int hardware_type_count = 3;
  /// Give every robot every capability (small-scale experiments).
  bool all_compatible = false;
};

/// Throws ConfigError when a field is out of range.
void check_config(const GenConfig& config);

/// Draws a scenario. Draw order is fixed: for each robot its x, y, initial
/// battery level and hardware type; then for each task its x, y,
/// decomposability, coalition flexibility, duration level, compatible type
/// mask (redrawn until a fleet type matches) and coalition size.
Scenario generate(const GenConfig& config);

} // namespace mrta

#endif // MRTA_SCENARIO_GEN_HPP
