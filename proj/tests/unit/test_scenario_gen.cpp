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

#include <mrta/json_io.hpp>
#include <mrta/scenario_gen.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace mrta;

TEST_CASE("generator defaults describe the solar plant use case")
{
  const GenConfig c;
  CHECK(c.battery_max == 1200.0);
  CHECK(c.speed == 5.0);
  CHECK(c.recharge_time == 300.0);
  CHECK(c.deadline == 6000.0);
  CHECK(c.width == 200.0);
  CHECK(c.height == 300.0);

  GenConfig g;
  g.n_robots = 4;
  g.n_tasks = 6;
  const Scenario s = generate(g);
  REQUIRE(s.stations.size() == 1);
  CHECK(s.stations[0] == Position{100.0, 150.0, 0.0});
  CHECK(s.recharge_time == 300.0);
}

TEST_CASE("same seed gives byte-identical scenarios")
{
  GenConfig c;
  c.seed = 99;
  c.n_robots = 5;
  c.n_tasks = 8;
  CHECK(to_json(generate(c)).dump() == to_json(generate(c)).dump());
  c.seed = 100;
  GenConfig d = c;
  d.seed = 99;
  CHECK(to_json(generate(c)).dump() != to_json(generate(d)).dump());
}

TEST_CASE("zero tasks")
{
  GenConfig c;
  c.n_tasks = 0;
  const Scenario s = generate(c);
  CHECK(s.tasks.empty());
  CHECK(s.robots.size() == 3);
}

TEST_CASE("generator recipe holds over many seeds")
{
  for (std::uint64_t seed = 0; seed < 60; ++seed)
  {
    GenConfig c;
    c.seed = seed;
    c.n_robots = 1 + static_cast<int>(seed % 10);
    c.n_tasks = 1 + static_cast<int>(seed % 7);
    const Scenario s = generate(c);
    CAPTURE(seed);
    CHECK_NOTHROW(check_scenario(s));
    for (const auto& r : s.robots)
    {
      CHECK(r.battery_max == 1200.0);
      const bool level = r.battery_initial == 0.0 || r.battery_initial == 300.0
        || r.battery_initial == 600.0;
      CHECK(level);
      CHECK(r.start.x >= 0.0);
      CHECK(r.start.x <= 200.0);
      CHECK(r.start.y >= 0.0);
      CHECK(r.start.y <= 300.0);
    }
    for (const auto& t : s.tasks)
    {
      CHECK(t.deadline == 6000.0);
      const int n = compatible_count(s, t);
      CHECK(n >= 1);
      if (t.decomposability == Decomposability::NonDecomposable)
        CHECK(t.exec_time == doctest::Approx(420.0));
      else
      {
        const bool level = std::abs(t.exec_time - 420.0) < 1e-9
          || std::abs(t.exec_time - 1500.0) < 1e-9 || std::abs(t.exec_time - 3000.0) < 1e-9;
        CHECK(level);
      }
      if (t.coalition.kind != CoalitionFlexibility::Kind::Unspecified)
      {
        CHECK(t.coalition.size >= 1);
        CHECK(t.coalition.size <= n);
      }
    }
  }
}

TEST_CASE("all-compatible fleets fit every task")
{
  GenConfig c;
  c.n_robots = 3;
  c.n_tasks = 5;
  c.all_compatible = true;
  const Scenario s = generate(c);
  for (const auto& t : s.tasks)
    CHECK(compatible_count(s, t) == 3);
}

TEST_CASE("configuration errors")
{
  GenConfig c;
  c.n_robots = 0;
  CHECK_THROWS_AS(check_config(c), ConfigError);
  c = GenConfig{};
  c.speed = -1.0;
  CHECK_THROWS_AS(generate(c), ConfigError);
  c = GenConfig{};
  c.n_tasks = -2;
  CHECK_THROWS_AS(generate(c), ConfigError);
}
