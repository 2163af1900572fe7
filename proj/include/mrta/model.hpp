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

#ifndef MRTA_MODEL_HPP
#define MRTA_MODEL_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace mrta {

//==============================================================================
// Errors

/// Invalid scenario or configuration (e.g. no recharge station).
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file or command-line argument.
class InputError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A plan refers to robots, tasks or slots that do not exist.
class PlanStructureError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

//==============================================================================
// Identifiers

template <class Tag>
struct Id
{
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(const Id&, const Id&) = default;
};

using RobotId = Id<struct RobotTag>;
using TaskId = Id<struct TaskTag>;

//==============================================================================
struct Position
{
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr bool operator==(const Position&, const Position&) = default;
};

double distance(const Position& a, const Position& b);

//==============================================================================
struct Robot
{
  RobotId id;
  Position start;
  /// Travel speed in m/s.
  double speed = 1.0;
  /// Battery autonomy, in seconds of operation.
  double battery_max = 0.0;
  /// Battery time already consumed at the start of the plan.
  double battery_initial = 0.0;
  /// Battery time that must always remain available.
  double battery_safety = 0.0;
  std::set<std::string> hardware;
  /// Instant at which the robot becomes available. Zero for fresh missions;
  /// replanning during execution sets it to the robot's release time.
  double ready_time = 0.0;

  double battery_budget() const { return battery_max - battery_safety; }
};

enum class Decomposability
{
  NonDecomposable,
  Fragmentable,
  Relayable
};

struct CoalitionFlexibility
{
  enum class Kind
  {
    Fixed,
    Variable,
    Unspecified
  };

  Kind kind = Kind::Fixed;
  int size = 1;

  /// Specified coalition size N_t. Unspecified tasks use the N_t = 0
  /// convention.
  int required_size() const { return kind == Kind::Unspecified ? 0 : size; }

  static CoalitionFlexibility fixed(int n) { return {Kind::Fixed, n}; }
  static CoalitionFlexibility variable(int n) { return {Kind::Variable, n}; }
  static CoalitionFlexibility unspecified() { return {Kind::Unspecified, 0}; }
};

struct Task
{
  TaskId id;
  Position location;
  double exec_time = 0.0;
  double deadline = 0.0;
  Decomposability decomposability = Decomposability::NonDecomposable;
  CoalitionFlexibility coalition;
  std::set<std::string> required_hardware;
};

struct Scenario
{
  std::vector<Robot> robots;
  std::vector<Task> tasks;
  std::vector<Position> stations;
  double recharge_time = 0.0;
  /// Upper bound N_f on the number of fragments of any task (MILP horizon).
  int max_fragments = 1;
  /// Number of slots |S| in every robot queue (MILP horizon).
  int slots_per_robot = 1;

  const Robot* find_robot(RobotId id) const;
  const Task* find_task(TaskId id) const;
  const Robot& robot(RobotId id) const;
  const Task& task(TaskId id) const;
};

bool compatible(const Robot& robot, const Task& task);

/// Number of robots in the scenario with the hardware required by @p task.
int compatible_count(const Scenario& scenario, const Task& task);

/// Recomputes N_f and |S| from the robots and tasks.
void derive_horizon(Scenario& scenario);

/// Throws ConfigError when the scenario breaks a model invariant.
void check_scenario(const Scenario& scenario);

//==============================================================================
// Plans

enum class SlotKind
{
  Task,
  Recharge,
  Empty
};

struct SlotRef
{
  RobotId robot;
  int slot = 0;

  friend constexpr auto operator<=>(const SlotRef&, const SlotRef&) = default;
};

/// One position of a robot queue. Times are absolute mission seconds.
struct SlotEntry
{
  int slot = 0;
  SlotKind kind = SlotKind::Empty;
  TaskId task;
  int fragment = 1;
  double travel = 0.0;
  double wait = 0.0;
  double exec = 0.0;
  double finish = 0.0;
  /// Battery time accumulated at the end of the slot (on arrival for
  /// recharges).
  double battery = 0.0;
  /// Realized deviation from the scheduled finish, recorded by execution
  /// monitoring. Zero for freshly computed plans.
  double deviation = 0.0;
  Position pre_location;
  Position post_location;

  bool is_task() const { return kind == SlotKind::Task; }
  bool is_recharge() const { return kind == SlotKind::Recharge; }
  bool is_empty() const { return kind == SlotKind::Empty; }
  double exec_start() const { return finish - deviation - exec; }
  double planned_finish() const { return finish - deviation; }
};

struct RobotSchedule
{
  RobotId robot;
  std::vector<SlotEntry> slots;
};

struct CoordinationLink
{
  enum class Kind
  {
    Synch,
    Relay
  };

  Kind kind = Kind::Synch;
  /// Synchronized slots (Synch only).
  std::vector<SlotRef> members;
  /// Relayed slots; predecessors[i] is relayed by successors[i].
  std::vector<SlotRef> predecessors;
  std::vector<SlotRef> successors;
};

/// Per-task bookkeeping: n^f_t, n^r_t, n_t and n^q_t.
struct TaskAllocation
{
  TaskId task;
  int fragments = 1;
  int coalition = 1;
  int appearances = 0;
  int queues = 0;
};

struct Plan
{
  std::vector<RobotSchedule> schedules;
  std::vector<CoordinationLink> links;
  std::vector<TaskAllocation> tasks;

  const RobotSchedule* find_schedule(RobotId id) const;
  RobotSchedule* find_schedule(RobotId id);
  const TaskAllocation* find_allocation(TaskId id) const;
  const SlotEntry* slot(const SlotRef& ref) const;
  SlotEntry* slot(const SlotRef& ref);
};

/// Finish time of the last non-empty slot of a schedule (or the robot's
/// ready time when the schedule is empty).
double schedule_finish(const RobotSchedule& schedule, double ready_time = 0.0);

/// Latest finish time over all schedules.
double makespan(const Plan& plan);

/// Recomputes n_t and n^q_t of every allocation from the schedules.
void refresh_counts(Plan& plan);

} // namespace mrta

#endif // MRTA_MODEL_HPP
