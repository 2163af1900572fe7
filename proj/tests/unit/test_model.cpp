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

#include "fixtures.hpp"

#include <mrta/json_io.hpp>

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace mrta;
using namespace fixtures;

TEST_CASE("travel time is distance over speed")
{
  const Robot r = robot(0, {}, 1200.0, 0.0, 5.0);
  CHECK(travel_time(r, {0, 0, 0}, {300, 400, 0}) == doctest::Approx(100.0));
  CHECK(travel_time(r, {7, 8, 9}, {7, 8, 9}) == 0.0);
  CHECK(travel_time(r, {0, 0, 0}, {0, 150, 0}) == doctest::Approx(30.0));
}

TEST_CASE("nearest station prefers the lower index on ties")
{
  Scenario s = scenario({robot(0)}, {}, {{0, 0, 0}, {100, 0, 0}});
  CHECK(nearest_station(s, {10, 0, 0}) == Position{0, 0, 0});
  CHECK(nearest_station(s, {90, 0, 0}) == Position{100, 0, 0});
  CHECK(nearest_station_index(s, {50, 0, 0}) == 0);

  s.stations = {{5, 5, 0}};
  CHECK(nearest_station(s, {1000, 0, 0}) == Position{5, 5, 0});

  s.stations.clear();
  CHECK_THROWS_AS(nearest_station(s, {0, 0, 0}), ConfigError);
}

TEST_CASE("horizon from the weakest battery")
{
  Robot a = robot(0, {}, 1200.0);
  Robot b = robot(1, {}, 1000.0);
  b.battery_safety = 100.0;
  // Usable bound 1000 - 100 = 900; 2000 / 900 -> 3 fragments, plus one.
  Scenario s = scenario({a, b}, {task(0, {10, 0, 0}, 2000.0), task(1, {0, 10, 0}, 100.0)});
  CHECK(s.max_fragments == 4);
  CHECK(s.slots_per_robot == 2 * (4 + 1));

  Scenario empty = scenario({a}, {});
  CHECK(empty.slots_per_robot >= 1);
}

TEST_CASE("scenario checks")
{
  const Scenario ok = scenario({robot(0)}, {task(0, {10, 0, 0}, 60.0)});
  CHECK_NOTHROW(check_scenario(ok));

  SUBCASE("no station")
  {
    Scenario s = ok;
    s.stations.clear();
    CHECK_THROWS_AS(check_scenario(s), ConfigError);
  }
  SUBCASE("duplicate robot")
  {
    Scenario s = ok;
    s.robots.push_back(robot(0));
    CHECK_THROWS_AS(check_scenario(s), ConfigError);
  }
  SUBCASE("battery already exhausted")
  {
    Scenario s = ok;
    s.robots[0].battery_initial = s.robots[0].battery_max;
    CHECK_THROWS_AS(check_scenario(s), ConfigError);
  }
  SUBCASE("zero speed")
  {
    Scenario s = ok;
    s.robots[0].speed = 0.0;
    CHECK_THROWS_AS(check_scenario(s), ConfigError);
  }
  SUBCASE("non-positive execution time")
  {
    Scenario s = ok;
    s.tasks[0].exec_time = 0.0;
    CHECK_THROWS_AS(check_scenario(s), ConfigError);
  }
}

TEST_CASE("hardware compatibility is set inclusion")
{
  Robot r = robot(0);
  r.hardware = {"camera", "gripper"};
  Task t = task(0, {}, 10.0);
  CHECK(compatible(r, t));
  t.required_hardware = {"camera"};
  CHECK(compatible(r, t));
  t.required_hardware = {"camera", "lidar"};
  CHECK_FALSE(compatible(r, t));
}

TEST_CASE("makespan and counts from a hand-built plan")
{
  const Scenario s = scenario({robot(0), robot(1, {0, 100, 0})},
    {task(0, {300, 400, 0}, 100.0, Decomposability::NonDecomposable, CoalitionFlexibility::fixed(2))});
  Plan p;
  append(p, s, RobotId{0}, SlotKind::Task, TaskId{0});
  append(p, s, RobotId{1}, SlotKind::Task, TaskId{0});
  allocate(p, TaskId{0}, 1, 2);
  CHECK(p.tasks[0].appearances == 2);
  CHECK(p.tasks[0].queues == 2);
  // Robot 0 flies 500 m (100 s) then executes 100 s.
  CHECK(schedule_finish(p.schedules[0]) == doctest::Approx(200.0));
  CHECK(makespan(p) == doctest::Approx(200.0));
  CHECK(schedule_finish(RobotSchedule{RobotId{5}, {}}, 42.0) == 42.0);
}

TEST_CASE("json round trip")
{
  Robot r = robot(3, {1, 2, 3}, 900.0, 225.0, 4.0);
  r.hardware = {"kit1", "kit3"};
  r.ready_time = 12.5;
  Task t = task(7, {10, 20, 0}, 500.0, Decomposability::Relayable, CoalitionFlexibility::variable(2), 3600.0);
  t.required_hardware = {"kit1"};
  Task u = task(8, {5, 5, 0}, 50.0, Decomposability::Fragmentable, CoalitionFlexibility::unspecified());
  const Scenario s = scenario({r}, {t, u}, {{0, 0, 0}, {50, 50, 0}});

  const auto j = to_json(s);
  const Scenario back = scenario_from_json(nlohmann::json::parse(j.dump()));
  CHECK(to_json(back) == j);
  CHECK(back.robots[0].ready_time == 12.5);
  CHECK(back.tasks[1].coalition.kind == CoalitionFlexibility::Kind::Unspecified);

  Plan p;
  append(p, s, RobotId{3}, SlotKind::Task, TaskId{8}, 1, 3.0, 2);
  append(p, s, RobotId{3}, SlotKind::Recharge);
  append(p, s, RobotId{3}, SlotKind::Task, TaskId{8}, 2, 0.0, 2);
  p.links.push_back(relay({{RobotId{3}, 0}}, {{RobotId{3}, 2}}));
  p.links.push_back(synch({{RobotId{3}, 0}, {RobotId{3}, 2}}));
  allocate(p, TaskId{8}, 2, 1);
  const auto pj = to_json(p);
  CHECK(to_json(plan_from_json(nlohmann::json::parse(pj.dump()))) == pj);
}

TEST_CASE("json schema errors are input errors")
{
  CHECK_THROWS_AS(scenario_from_json(nlohmann::json::parse(R"({"robots": []})")), InputError);
  CHECK_THROWS_AS(scenario_from_json(nlohmann::json::parse(
                    R"({"robots": [{"id": -1}], "tasks": [], "stations": [], "recharge_time": 1})")),
    InputError);
  CHECK_THROWS_AS(plan_from_json(nlohmann::json::parse(R"({"schedules": 3})")), InputError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), InputError);
}

TEST_CASE("atomic write leaves no temporary behind")
{
  const auto dir = std::filesystem::temp_directory_path() / "mrta_atomic_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.txt";
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text == "second");
  CHECK_FALSE(std::filesystem::exists(dir / "out.txt.tmp"));
  std::filesystem::remove_all(dir);
}
