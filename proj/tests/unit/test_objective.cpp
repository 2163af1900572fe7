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

#include <mrta/objective.hpp>

#include <doctest.h>

using namespace mrta;
using namespace fixtures;

namespace {

// Station at the origin, task 500 m away: 100 s each way at 5 m/s.
Scenario single()
{
  return scenario({robot(0)}, {task(0, {300, 400, 0}, 100.0)});
}

} // namespace

TEST_CASE("normalizers")
{
  const auto eta = normalizers(single());
  CHECK(eta.eta1 == doctest::Approx(100.0 + 100.0 + 100.0 + 300.0));
  CHECK(eta.eta2 == 6000.0);
  CHECK(eta.eta3 == 1200.0);
  // No multi-robot task: the guard keeps the term finite.
  CHECK(eta.eta4 == 1.0);
}

TEST_CASE("plan with no waits, delays or missing members costs Z / eta1")
{
  const Scenario s = single();
  Plan p;
  append(p, s, RobotId{0}, SlotKind::Task, TaskId{0});
  allocate(p, TaskId{0}, 1, 1);
  const auto o = compute_objective(s, p);
  CHECK(o.f1 == doctest::Approx(200.0 / 600.0));
  CHECK(o.f2 == 0.0);
  CHECK(o.f3 == 0.0);
  CHECK(o.f4 == 0.0);
  CHECK(o.f == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("late finish and waits are priced")
{
  Scenario s = single();
  s.tasks[0].deadline = 150.0;
  Plan p;
  append(p, s, RobotId{0}, SlotKind::Task, TaskId{0}, 1, 60.0);
  allocate(p, TaskId{0}, 1, 1);
  const auto o = compute_objective(s, p);
  CHECK(o.f1 == doctest::Approx(260.0 / 600.0));
  CHECK(o.f2 == doctest::Approx(110.0 / 150.0));
  CHECK(o.f3 == doctest::Approx(60.0 / 1200.0));
  CHECK(o.f == doctest::Approx(o.f1 + o.f2 + o.f3 + o.f4));
}

TEST_CASE("coalition deviation only for variable coalitions")
{
  const Task v = task(0, {}, 10.0, Decomposability::NonDecomposable, CoalitionFlexibility::variable(3));
  CHECK(coalition_deviation(v, 2) == 1.0);
  CHECK(coalition_deviation(v, 3) == 0.0);
  const Task f = task(1, {}, 10.0, Decomposability::NonDecomposable, CoalitionFlexibility::fixed(3));
  CHECK(coalition_deviation(f, 2) == 0.0);
  const Task u = task(2, {}, 10.0, Decomposability::NonDecomposable, CoalitionFlexibility::unspecified());
  CHECK(coalition_deviation(u, 4) == 0.0);
}

TEST_CASE("variable coalition run short by one")
{
  const Scenario s = scenario({robot(0), robot(1)},
    {task(0, {300, 400, 0}, 100.0, Decomposability::NonDecomposable, CoalitionFlexibility::variable(3))});
  Plan p;
  append(p, s, RobotId{0}, SlotKind::Task, TaskId{0});
  append(p, s, RobotId{1}, SlotKind::Task, TaskId{0});
  p.links.push_back(synch({{RobotId{0}, 0}, {RobotId{1}, 0}}));
  allocate(p, TaskId{0}, 1, 2);
  const auto o = compute_objective(s, p);
  // V_t = 1 over eta4 = N_t - 1 = 2.
  CHECK(o.f4 == doctest::Approx(0.5));
}
