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

#include <mrta/metrics.hpp>

#include <doctest.h>

#include <cmath>

using namespace mrta;
using namespace fixtures;

namespace {

MetricsReport with_recharges(int n)
{
  MetricsReport m;
  m.recharges = n;
  m.makespan = 100.0;
  return m;
}

} // namespace

TEST_CASE("single robot, single task")
{
  const auto s = scenario({robot(0)}, {task(0, {300, 400, 0}, 100.0)});
  Plan p;
  append(p, s, RobotId{0}, SlotKind::Task, TaskId{0});
  allocate(p, TaskId{0}, 1, 1);
  const auto m = plan_metrics(s, p, 0.25);
  CHECK(m.recharges == 0);
  CHECK(m.makespan == doctest::Approx(200.0));
  CHECK(m.workload == doctest::Approx(100.0));
  CHECK(m.waiting_rate == doctest::Approx(0.0));
  CHECK(m.battery_time == doctest::Approx(200.0));
  CHECK(m.coalition_deviation == 0.0);
  CHECK(m.computation_time == 0.25);
}

TEST_CASE("waiting, workload, recharges and coalition deviation")
{
  const auto s = scenario({robot(0), robot(1, {0, 100, 0}), robot(2, {0, 200, 0})},
    {task(0, {300, 400, 0}, 100.0, Decomposability::NonDecomposable, CoalitionFlexibility::variable(3)),
      task(1, {0, 0, 0}, 50.0)});
  Plan p;
  // Robots 0 and 1 synchronize on task 0; robot 1 is closer and waits.
  append(p, s, RobotId{0}, SlotKind::Task, TaskId{0});
  const double near = distance({0, 100, 0}, {300, 400, 0}) / 5.0;
  append(p, s, RobotId{1}, SlotKind::Task, TaskId{0}, 1, 100.0 - near);
  append(p, s, RobotId{1}, SlotKind::Recharge);
  // Robot 2 flies 40 s to the station and works 50 s there.
  append(p, s, RobotId{2}, SlotKind::Task, TaskId{1});
  p.links.push_back(synch({{RobotId{0}, 0}, {RobotId{1}, 0}}));
  allocate(p, TaskId{0}, 1, 2);
  allocate(p, TaskId{1}, 1, 1);

  const auto m = plan_metrics(s, p);
  CHECK(m.recharges == 1);
  // Robot 1 returns 100 s to the station and recharges 300 s.
  const double z = 200.0 + distance({300, 400, 0}, {0, 0, 0}) / 5.0 + 300.0;
  CHECK(m.makespan == doctest::Approx(z));
  CHECK(m.waiting_rate == doctest::Approx(100.0 * (100.0 - near) / z / 3.0));
  CHECK(m.workload == doctest::Approx((200.0 + z + 90.0) / z * 100.0 / 3.0));
  // Battery: 200 + (200 + 100) + 90.
  CHECK(m.battery_time == doctest::Approx((200.0 + 300.0 + 90.0) / 3.0));
  // One missing member out of three.
  CHECK(m.coalition_deviation == doctest::Approx(1.0 / 3.0));
  CHECK(m.objective.f == doctest::Approx(compute_objective(s, p).f));
}

TEST_CASE("idle robots do not count")
{
  const auto s = scenario({robot(0), robot(1)}, {task(0, {300, 400, 0}, 100.0)});
  Plan p;
  append(p, s, RobotId{0}, SlotKind::Task, TaskId{0});
  p.schedules.push_back({RobotId{1}, {}});
  allocate(p, TaskId{0}, 1, 1);
  const auto m = plan_metrics(s, p);
  CHECK(m.workload == doctest::Approx(100.0));
  CHECK(m.battery_time == doctest::Approx(200.0));
}

TEST_CASE("recharge rate over solved scenarios")
{
  std::vector<std::optional<MetricsReport>> runs;
  for (int i = 0; i < 18; ++i)
    runs.push_back(with_recharges(i == 4 ? 1 : 0));
  runs.push_back(std::nullopt);
  runs.push_back(std::nullopt);
  const auto b = batch_metrics(runs);
  CHECK(b.defined);
  CHECK(b.attempts == 20);
  CHECK(b.solved == 18);
  CHECK(b.success_rate == doctest::Approx(90.0));
  CHECK(b.recharge_rate == doctest::Approx(100.0 / 18.0));
  CHECK(b.recharge_rate == doctest::Approx(5.56).epsilon(1e-3));
  CHECK(b.recharges.mean == doctest::Approx(1.0 / 18.0));
  CHECK(b.makespan.mean == doctest::Approx(100.0));
  CHECK(b.makespan.stddev == doctest::Approx(0.0));
}

TEST_CASE("sample standard deviation")
{
  std::vector<std::optional<MetricsReport>> runs;
  for (const double z : {2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0})
  {
    MetricsReport m;
    m.makespan = z;
    runs.push_back(m);
  }
  const auto b = batch_metrics(runs);
  CHECK(b.makespan.mean == doctest::Approx(5.0));
  CHECK(b.makespan.stddev == doctest::Approx(std::sqrt(32.0 / 7.0)));
}

TEST_CASE("empty and unsolved batches")
{
  CHECK_FALSE(batch_metrics({}).defined);
  const auto b = batch_metrics({std::nullopt, std::nullopt});
  CHECK(b.attempts == 2);
  CHECK(b.solved == 0);
  CHECK(b.success_rate == 0.0);
}

TEST_CASE("csv layout")
{
  const std::string csv = metrics_csv({"a", "b"}, {with_recharges(2), std::nullopt});
  CHECK(csv.rfind("label,solved,NR,f,f1,f2,f3,f4,Z,WTR,CSD,CBT,WD,CT\n", 0) == 0);
  CHECK(csv.find("\na,1,2,") != std::string::npos);
  CHECK(csv.find("\nb,0") != std::string::npos);
  CHECK(csv.find("\nmean,") != std::string::npos);
}
