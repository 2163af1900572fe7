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

#include <mrta/validator.hpp>

#include <doctest.h>

#include <set>
#include <string>

using namespace mrta;
using namespace fixtures;

namespace {

std::set<std::string> families(const ValidationReport& r)
{
  std::set<std::string> out;
  for (const auto& v : r.violations)
    out.insert(v.family);
  return out;
}

const Position far_task{300.0, 400.0, 0.0};

// One robot, one task 100 s from the station.
struct Single
{
  Scenario sc = scenario({robot(0)}, {task(0, far_task, 100.0)});
  Plan plan;

  Single()
  {
    append(plan, sc, RobotId{0}, SlotKind::Task, TaskId{0});
    allocate(plan, TaskId{0}, 1, 1);
  }
};

// Two robots on a synchronized task; robot 1 starts closer and waits.
struct Pair
{
  Scenario sc = scenario({robot(0), robot(1, {0.0, 100.0, 0.0})},
    {task(0, far_task, 200.0, Decomposability::NonDecomposable, CoalitionFlexibility::fixed(2))});
  Plan plan;

  Pair()
  {
    append(plan, sc, RobotId{0}, SlotKind::Task, TaskId{0});
    const double near = distance({0.0, 100.0, 0.0}, far_task) / 5.0;
    append(plan, sc, RobotId{1}, SlotKind::Task, TaskId{0}, 1, 100.0 - near);
    plan.links.push_back(synch({{RobotId{0}, 0}, {RobotId{1}, 0}}));
    allocate(plan, TaskId{0}, 1, 2);
  }
};

// A relayable task split in two fragments, the second flown by robot 1.
struct Relay
{
  Scenario sc = scenario({robot(0), robot(1, {0.0, 100.0, 0.0})},
    {task(0, far_task, 400.0, Decomposability::Relayable, CoalitionFlexibility::fixed(1))});
  Plan plan;

  Relay()
  {
    append(plan, sc, RobotId{0}, SlotKind::Task, TaskId{0}, 1, 0.0, 2);
    const double near = distance({0.0, 100.0, 0.0}, far_task) / 5.0;
    append(plan, sc, RobotId{1}, SlotKind::Task, TaskId{0}, 2, 300.0 - near, 2);
    plan.links.push_back(relay({{RobotId{0}, 0}}, {{RobotId{1}, 0}}));
    allocate(plan, TaskId{0}, 2, 1);
  }
};

} // namespace

TEST_CASE("hand-built plans are valid")
{
  Single s;
  auto r = validate_plan(s.sc, s.plan);
  CHECK(r.valid);
  CHECK(r.violations.empty());
  CHECK(r.objective.f == doctest::Approx(200.0 / 600.0));

  Pair p;
  r = validate_plan(p.sc, p.plan);
  CHECK_MESSAGE(r.valid, families(r).size());

  Relay q;
  r = validate_plan(q.sc, q.plan);
  CHECK_MESSAGE(r.valid, families(r).size());
}

TEST_CASE("fragmented task with a recharge in between")
{
  Scenario sc = scenario({robot(0)}, {task(0, far_task, 1500.0, Decomposability::Fragmentable)});
  Plan plan;
  append(plan, sc, RobotId{0}, SlotKind::Task, TaskId{0}, 1, 0.0, 2);
  append(plan, sc, RobotId{0}, SlotKind::Recharge);
  append(plan, sc, RobotId{0}, SlotKind::Task, TaskId{0}, 2, 0.0, 2);
  allocate(plan, TaskId{0}, 2, 1);
  const auto r = validate_plan(sc, plan);
  CHECK(r.valid);
  // 100 + 750, then back to the station, recharge, and out again.
  CHECK(makespan(plan) == doctest::Approx(850.0 + 100.0 + 300.0 + 100.0 + 750.0));
}

TEST_CASE("schedule violations")
{
  SUBCASE("two entries in one slot")
  {
    Single s;
    s.plan.schedules[0].slots.push_back(s.plan.schedules[0].slots[0]);
    refresh_counts(s.plan);
    CHECK(families(validate_plan(s.sc, s.plan)).count("slot_uniqueness"));
  }
  SUBCASE("gap in the queue")
  {
    Single s;
    append(s.plan, s.sc, RobotId{0}, SlotKind::Recharge).slot = 3;
    CHECK(families(validate_plan(s.sc, s.plan)).count("continuity"));
  }
  SUBCASE("back-to-back recharges")
  {
    Single s;
    append(s.plan, s.sc, RobotId{0}, SlotKind::Recharge);
    append(s.plan, s.sc, RobotId{0}, SlotKind::Recharge);
    CHECK(families(validate_plan(s.sc, s.plan)).count("no_consecutive_recharge"));
  }
  SUBCASE("missing hardware")
  {
    Single s;
    s.sc.tasks[0].required_hardware = {"thermal"};
    CHECK(families(validate_plan(s.sc, s.plan)).count("hardware"));
  }
  SUBCASE("recharge away from a station")
  {
    Single s;
    auto& e = append(s.plan, s.sc, RobotId{0}, SlotKind::Recharge);
    e.post_location = {10.0, 10.0, 0.0};
    CHECK(families(validate_plan(s.sc, s.plan)).count("location"));
  }
  SUBCASE("timing fields")
  {
    Single s;
    auto& e = s.plan.schedules[0].slots[0];
    e.travel += 5.0;
    auto f = families(validate_plan(s.sc, s.plan));
    CHECK(f.count("travel_time"));
    e.travel -= 5.0;
    e.exec = 50.0;
    f = families(validate_plan(s.sc, s.plan));
    CHECK(f.count("execution_time"));
    e.exec = 100.0;
    e.finish += 1.0;
    f = families(validate_plan(s.sc, s.plan));
    CHECK(f.count("finish_time"));
    e.finish -= 1.0;
    e.wait = -1.0;
    f = families(validate_plan(s.sc, s.plan));
    CHECK(f.count("waiting_time"));
  }
}

TEST_CASE("battery violations")
{
  SUBCASE("limit")
  {
    Scenario sc = scenario({robot(0, {}, 1200.0, 1100.0)}, {task(0, far_task, 100.0)});
    Plan plan;
    append(plan, sc, RobotId{0}, SlotKind::Task, TaskId{0});
    allocate(plan, TaskId{0}, 1, 1);
    const auto r = validate_plan(sc, plan);
    CHECK_FALSE(r.valid);
    CHECK(families(r).count("battery_limit"));
  }
  SUBCASE("recursion")
  {
    Single s;
    s.plan.schedules[0].slots[0].battery = 10.0;
    CHECK(families(validate_plan(s.sc, s.plan)).count("battery_recursion"));
  }
  SUBCASE("a recharge resets the battery")
  {
    Scenario sc = scenario({robot(0, {}, 1200.0, 900.0)}, {task(0, far_task, 100.0)});
    Plan plan;
    append(plan, sc, RobotId{0}, SlotKind::Recharge);
    append(plan, sc, RobotId{0}, SlotKind::Task, TaskId{0});
    allocate(plan, TaskId{0}, 1, 1);
    CHECK(validate_plan(sc, plan).valid);
  }
}

TEST_CASE("counting and coalition violations")
{
  SUBCASE("fixed coalition too small")
  {
    Single s;
    s.sc.tasks[0].coalition = CoalitionFlexibility::fixed(2);
    CHECK(families(validate_plan(s.sc, s.plan)).count("coalition_size"));
  }
  SUBCASE("variable coalition too small is priced, not invalid")
  {
    Single s;
    s.sc.tasks[0].coalition = CoalitionFlexibility::variable(2);
    const auto r = validate_plan(s.sc, s.plan);
    CHECK(r.valid);
    CHECK(r.objective.f4 == doctest::Approx(1.0));
  }
  SUBCASE("appearance count mismatch")
  {
    Single s;
    s.plan.tasks[0].appearances = 2;
    CHECK(families(validate_plan(s.sc, s.plan)).count("counting"));
  }
  SUBCASE("non-decomposable task fragmented")
  {
    Scenario sc = scenario({robot(0)}, {task(0, far_task, 100.0)});
    Plan plan;
    append(plan, sc, RobotId{0}, SlotKind::Task, TaskId{0}, 1, 0.0, 2);
    append(plan, sc, RobotId{0}, SlotKind::Task, TaskId{0}, 2, 0.0, 2);
    allocate(plan, TaskId{0}, 2, 1);
    CHECK(families(validate_plan(sc, plan)).count("counting"));
  }
  SUBCASE("unallocated task")
  {
    Single s;
    s.sc.tasks.push_back(task(1, far_task, 10.0));
    CHECK(families(validate_plan(s.sc, s.plan)).count("counting"));
  }
}

TEST_CASE("coordination violations")
{
  SUBCASE("unsynchronized finish")
  {
    Pair p;
    auto& e = p.plan.schedules[1].slots[0];
    e.wait += 5.0;
    e.finish += 5.0;
    e.battery += 5.0;
    CHECK(families(validate_plan(p.sc, p.plan)).count("synchronization"));
  }
  SUBCASE("missing synch link")
  {
    Pair p;
    p.plan.links.clear();
    CHECK(families(validate_plan(p.sc, p.plan)).count("synch_flow"));
  }
  SUBCASE("relay gap")
  {
    Relay q;
    auto& e = q.plan.schedules[1].slots[0];
    e.wait += 5.0;
    e.finish += 5.0;
    e.battery += 5.0;
    CHECK(families(validate_plan(q.sc, q.plan)).count("relay_timing"));
  }
  SUBCASE("missing relay")
  {
    Relay q;
    q.plan.links.clear();
    CHECK(families(validate_plan(q.sc, q.plan)).count("relay_count"));
  }
  SUBCASE("relay on a fragmentable task")
  {
    Relay q;
    q.sc.tasks[0].decomposability = Decomposability::Fragmentable;
    CHECK(families(validate_plan(q.sc, q.plan)).count("link_task"));
  }
  SUBCASE("slot relayed twice")
  {
    Relay q;
    q.plan.links.push_back(relay({{RobotId{0}, 0}}, {{RobotId{1}, 0}}));
    CHECK(families(validate_plan(q.sc, q.plan)).count("relay_flow"));
  }
}

TEST_CASE("deadline overruns are soft")
{
  Single s;
  s.sc.tasks[0].deadline = 150.0;
  const auto r = validate_plan(s.sc, s.plan);
  CHECK(r.valid);
  REQUIRE(r.deadline_overruns.size() == 1);
  CHECK(r.deadline_overruns[0].magnitude == doctest::Approx(50.0));
  CHECK(r.objective.f2 == doctest::Approx(50.0 / 150.0));
}

TEST_CASE("dangling ids raise a structure error")
{
  Single s;
  s.plan.schedules[0].robot = RobotId{7};
  CHECK_THROWS_AS(validate_plan(s.sc, s.plan), PlanStructureError);
  Single t;
  t.plan.schedules[0].slots[0].task = TaskId{9};
  CHECK_THROWS_AS(validate_plan(t.sc, t.plan), PlanStructureError);
  Pair p;
  p.plan.links[0].members[1].slot = 4;
  CHECK_THROWS_AS(validate_plan(p.sc, p.plan), PlanStructureError);
}
