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

#include <mrta/milp.hpp>
#include <mrta/validator.hpp>

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mrta;
using namespace fixtures;

namespace {

Scenario tiny()
{
  return scenario({robot(0), robot(1, {0.0, 100.0, 0.0})},
    {task(0, {300, 400, 0}, 100.0), task(1, {100, 0, 0}, 50.0)});
}

} // namespace

TEST_CASE("LP export has every section")
{
  const auto in = milp::build_instance(tiny());
  const std::string lp = milp::export_lp(in);
  for (const char* section : {"Minimize", "Subject To", "Bounds", "Binaries", "Generals", "End"})
    CHECK(lp.find(section) != std::string::npos);
  // One line per constraint name.
  for (const auto& c : in.constraints)
    CHECK(lp.find(" " + c.name + ":") != std::string::npos);
}

TEST_CASE("variable bounds and index")
{
  const auto in = milp::build_instance(tiny());
  REQUIRE_FALSE(in.variables.empty());
  for (std::size_t i = 0; i < in.variables.size(); ++i)
  {
    const auto& v = in.variables[i];
    CHECK(in.find(v.name) == i);
    CHECK(v.lower <= v.upper);
    if (v.kind == milp::VarKind::Binary)
    {
      CHECK(v.lower == 0.0);
      CHECK(v.upper == 1.0);
    }
  }
  CHECK(in.time_bound > 0.0);
  CHECK(in.slots == in.scenario.slots_per_robot);
}

TEST_CASE("size report")
{
  const auto in = milp::build_instance(tiny());
  const auto r = milp::size_report(in);
  CHECK(r.variables == in.variables.size());
  CHECK(r.constraints == in.constraints.size());
  std::size_t v = 0;
  std::size_t c = 0;
  for (const auto& [k, n] : r.variables_by_category)
    v += n;
  for (const auto& [k, n] : r.constraints_by_category)
    c += n;
  CHECK(v == r.variables);
  CHECK(c == r.constraints);
  CHECK(r.integer_variables + r.real_variables == r.variables);
  CHECK(r.linearization_variable_share() > 0.0);
  CHECK(r.linearization_variable_share() < 100.0);
  CHECK(r.linearization_constraint_share() > 0.0);
  CHECK(r.linearization_constraint_share() < 100.0);
}

TEST_CASE("model grows with the scenario")
{
  Scenario a = tiny();
  Scenario b = tiny();
  b.robots.push_back(robot(2, {50, 50, 0}));
  derive_horizon(b);
  CHECK(milp::size_report(milp::build_instance(b)).variables
    > milp::size_report(milp::build_instance(a)).variables);
}

TEST_CASE("no tasks")
{
  const auto s = scenario({robot(0)}, {});
  const auto in = milp::build_instance(s);
  CHECK_FALSE(in.variables.empty());
  CHECK(milp::export_lp(in).find("End") != std::string::npos);
}

TEST_CASE("task no robot can run is reported")
{
  Scenario s = tiny();
  s.tasks[1].required_hardware = {"lidar"};
  const auto in = milp::build_instance(s);
  CHECK_FALSE(in.warnings.empty());
}

TEST_CASE("assignment parsing")
{
  const auto a = milp::read_assignment("# objective 1\nZ 12.5\n\nx_0 1\n");
  CHECK(a.size() == 2);
  CHECK(a.at("Z") == 12.5);
  CHECK_THROWS_AS(milp::read_assignment("Z\n"), InputError);
  CHECK_THROWS_AS(milp::read_assignment("Z twelve\n"), InputError);
}

TEST_CASE("decode rejects incomplete or fractional assignments")
{
  const auto in = milp::build_instance(tiny());
  CHECK_THROWS_AS(milp::decode_solution(in, {}), DecodeError);
  milp::Assignment all;
  for (const auto& v : in.variables)
    all[v.name] = v.kind == milp::VarKind::Real ? 0.0 : 0.5;
  CHECK_THROWS_AS(milp::decode_solution(in, all), DecodeError);
}

#ifdef MRTA_PYTHON
TEST_CASE("solved instance decodes to a valid plan with the solver's cost")
{
  const auto in = milp::build_instance(tiny());
  const auto dir = std::filesystem::temp_directory_path() / "mrta_unit_milp";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "m.lp") << milp::export_lp(in);
  }
  const std::string cmd = std::string(MRTA_PYTHON) + " " + MRTA_SOLVE_SCRIPT + " "
    + (dir / "m.lp").string() + " " + (dir / "m.sol").string() + " --time-limit 120";
  const int rc = std::system(cmd.c_str());
  if (rc != 0)
  {
    MESSAGE("solver unavailable, skipped");
    return;
  }
  std::ifstream f(dir / "m.sol");
  std::stringstream text;
  text << f.rdbuf();
  const auto values = milp::read_assignment(text.str());
  CHECK(milp::max_violation(in, values) < 1e-5);
  const Plan p = milp::decode_solution(in, values);
  const auto r = validate_plan(in.scenario, p);
  CHECK(r.valid);
  CHECK(r.objective.f == doctest::Approx(milp::evaluate_objective(in, values)).epsilon(1e-6));
  // Each robot takes the task nearest to it: robot 1 flies 84.9 s.
  CHECK(makespan(p) == doctest::Approx(distance({0, 100, 0}, {300, 400, 0}) / 5.0 + 100.0));
  std::filesystem::remove_all(dir);
}
#endif
