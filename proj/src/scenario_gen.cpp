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

#include <mrta/scenario_gen.hpp>

#include <mrta/rng.hpp>

#include <string>

namespace mrta {

namespace {

/// Capability label shared by every hardware type whose bit is in @p mask.
std::string kit_label(unsigned mask)
{
  return "kit" + std::to_string(mask);
}

} // namespace

void check_config(const GenConfig& c)
{
  if (c.n_robots < 1)
    throw ConfigError("the fleet needs at least one robot");
  if (c.n_tasks < 0)
    throw ConfigError("the number of tasks cannot be negative");
  if (!(c.width > 0.0) || !(c.height > 0.0))
    throw ConfigError("area dimensions must be positive");
  if (!(c.battery_max > 0.0) || c.battery_safety < 0.0
    || !(c.battery_safety < 0.5 * c.battery_max))
    throw ConfigError("invalid battery parameters");
  if (!(c.speed > 0.0) || !(c.recharge_time > 0.0) || !(c.deadline > 0.0))
    throw ConfigError("speed, recharge time and deadline must be positive");
  if (c.hardware_type_count < 1 || c.hardware_type_count > 16)
    throw ConfigError("hardware_type_count must be in [1, 16]");
}

Scenario generate(const GenConfig& c)
{
  check_config(c);
  Rng rng(c.seed);
  Scenario s;
  s.recharge_time = c.recharge_time;
  s.stations.push_back({c.width / 2.0, c.height / 2.0, 0.0});

  const unsigned type_count = static_cast<unsigned>(c.hardware_type_count);
  const unsigned all_types = (1u << type_count) - 1u;

  constexpr double initial_levels[] = {0.0, 0.25, 0.5};
  std::vector<unsigned> robot_type;
  unsigned fleet_types = 0;
  for (int i = 0; i < c.n_robots; ++i)
  {
    Robot r;
    r.id = RobotId{static_cast<std::uint32_t>(i)};
    r.start.x = rng.uniform(0.0, c.width);
    r.start.y = rng.uniform(0.0, c.height);
    r.speed = c.speed;
    r.battery_max = c.battery_max;
    r.battery_safety = c.battery_safety;
    r.battery_initial = initial_levels[rng.index(3)] * c.battery_max;
    const auto type = static_cast<unsigned>(rng.index(type_count));
    robot_type.push_back(type);
    fleet_types |= 1u << type;
    for (unsigned mask = 1; mask <= all_types; ++mask)
    {
      if (c.all_compatible || (mask & (1u << type)))
        r.hardware.insert(kit_label(mask));
    }
    s.robots.push_back(std::move(r));
  }

  constexpr double duration_levels[] = {0.35, 1.25, 2.5};
  constexpr double short_level = 0.35;
  for (int i = 0; i < c.n_tasks; ++i)
  {
    Task t;
    t.id = TaskId{static_cast<std::uint32_t>(i)};
    t.location.x = rng.uniform(0.0, c.width);
    t.location.y = rng.uniform(0.0, c.height);
    t.deadline = c.deadline;
    t.decomposability = static_cast<Decomposability>(rng.index(3));
    const auto flexibility = rng.index(3);
    t.exec_time = duration_levels[rng.index(3)] * c.battery_max;

    unsigned mask = 0;
    do
    {
      mask = 0;
      for (unsigned k = 0; k < type_count; ++k)
      {
        if (rng.bernoulli(0.5))
          mask |= 1u << k;
      }
    } while ((mask & fleet_types) == 0);
    t.required_hardware.insert(kit_label(mask));

    int n_compatible = 0;
    for (std::size_t r = 0; r < s.robots.size(); ++r)
    {
      if (c.all_compatible || (mask & (1u << robot_type[r])))
        ++n_compatible;
    }
    const int size = rng.between(1, n_compatible);
    switch (flexibility)
    {
      case 0:
        t.coalition = CoalitionFlexibility::fixed(size);
        break;
      case 1:
        t.coalition = CoalitionFlexibility::variable(size);
        break;
      default:
        t.coalition = CoalitionFlexibility::unspecified();
        break;
    }

    // Tasks that cannot be split keep a duration that fits in one flight.
    // A relayed coalition also needs enough spare robots to cover the crew
    // while the others fly to the station and recharge; when the fleet cannot
    // sustain that rotation the task gets the short duration as well.
    const int crew =
      t.coalition.kind == CoalitionFlexibility::Kind::Fixed ? size : 1;
    const double leg = distance(t.location, s.stations.front()) / c.speed;
    const double stint = c.battery_max - c.battery_safety - 2.0 * leg;
    const double rotation = stint + 2.0 * leg + c.recharge_time;
    const bool relay_blocked = t.decomposability == Decomposability::Relayable
      && n_compatible * stint < crew * rotation;
    if (t.decomposability == Decomposability::NonDecomposable || relay_blocked)
      t.exec_time = short_level * c.battery_max;

    s.tasks.push_back(std::move(t));
  }

  derive_horizon(s);
  return s;
}

} // namespace mrta
