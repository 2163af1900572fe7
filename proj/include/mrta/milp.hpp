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

#ifndef MRTA_MILP_HPP
#define MRTA_MILP_HPP

#include <mrta/model.hpp>

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace mrta {

/// An external solution cannot be turned into a plan (missing values,
/// fractional binaries).
class DecodeError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

namespace milp {

enum class VarKind
{
  Binary,
  Integer,
  Real
};

/// Size-report grouping, following the basic / time / coordination split of
/// the model.
enum class Category
{
  Basic,
  Time,
  Coordination
};

/// What a variable stands for. Indices are positions in the scenario vectors;
/// task == number of tasks denotes the recharge task. Slots are 1-based, as
/// in the model (slot 0 is the robot's start).
struct Meaning
{
  enum class Role
  {
    Assign,        // x[r,t,s]
    FragmentFlag,  // one-hot of n^f_t: k = index
    Fragments,     // n^f_t
    Appearances,   // n_t
    Queues,        // n^q_t
    Coalition,     // n^r_t
    InQueue,       // n^q[r,t]
    Deviation,     // V_t
    Makespan,      // Z
    Wait,
    Travel,
    Exec,
    Finish,
    Battery,
    Delay,         // dT^max[r,s]
    Synch,         // y[t,r,s,r2,s2]
    Relay,         // z[t,r,s,r2,s2]
    Product        // linearization auxiliary
  };

  Role role = Role::Product;
  int robot = -1;
  int task = -1;
  int slot = -1;
  int robot2 = -1;
  int slot2 = -1;
  int k = -1;
};

struct Variable
{
  std::string name;
  VarKind kind = VarKind::Real;
  double lower = 0.0;
  double upper = 0.0;
  Category category = Category::Basic;
  bool linearization = false;
  Meaning meaning;
};

struct Term
{
  std::size_t var = 0;
  double coef = 0.0;
};

enum class Sense
{
  LessEqual,
  GreaterEqual,
  Equal
};

struct Constraint
{
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::Equal;
  double rhs = 0.0;
  Category category = Category::Basic;
  bool linearization = false;
};

/// Solver-agnostic model: variables, linear constraints and a linear
/// objective to minimize.
struct Instance
{
  Scenario scenario;
  int slots = 0;
  int max_fragments = 0;
  /// Upper bound used for every time variable.
  double time_bound = 0.0;
  std::vector<Variable> variables;
  std::vector<Constraint> constraints;
  std::vector<Term> objective;
  std::vector<std::string> warnings;
  std::map<std::string, std::size_t> index;

  std::size_t find(const std::string& name) const;
};

struct SizeReport
{
  std::size_t variables = 0;
  std::size_t constraints = 0;
  std::map<Category, std::size_t> variables_by_category;
  std::map<Category, std::size_t> constraints_by_category;
  std::size_t linearization_variables = 0;
  std::size_t linearization_constraints = 0;
  std::size_t integer_variables = 0;
  std::size_t real_variables = 0;

  double linearization_variable_share() const;
  double linearization_constraint_share() const;
};

std::string to_string(Category c);

/// Builds the complete linearized model of the scenario. Tasks that no robot
/// can execute produce a warning; the model is still built.
Instance build_instance(const Scenario& scenario);

SizeReport size_report(const Instance& instance);

/// CPLEX LP text of the instance.
std::string export_lp(const Instance& instance);

using Assignment = std::map<std::string, double>;

/// Objective value of an assignment.
double evaluate_objective(const Instance& instance, const Assignment& values);

/// Largest violation of any constraint or bound under @p values.
double max_violation(const Instance& instance, const Assignment& values);

/// Turns a solver assignment into a plan. Throws DecodeError when a variable
/// is missing or an integer variable is fractional beyond 1e-6.
Plan decode_solution(const Instance& instance, const Assignment& values);

/// Reads "name value" pairs, one per line ('#' starts a comment).
Assignment read_assignment(const std::string& text);

} // namespace milp
} // namespace mrta

#endif // MRTA_MILP_HPP
