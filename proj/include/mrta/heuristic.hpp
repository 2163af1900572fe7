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

#ifndef MRTA_HEURISTIC_HPP
#define MRTA_HEURISTIC_HPP

#include <mrta/model.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mrta {

/// No valid allocation exists for a task. No partial plan is returned.
class PlanningError : public std::runtime_error
{
public:
  PlanningError(TaskId task, const std::string& what)
  : std::runtime_error("task " + std::to_string(task.value) + ": " + what),
    task_(task)
  {
  }

  TaskId task() const { return task_; }

private:
  TaskId task_;
};

//==============================================================================
// Fragment estimation

struct FragmentInfo
{
  TaskId task;
  /// n^r_t
  int coalition = 1;
  /// n^f_t
  int fragments = 1;
  /// f_t, fragments a robot runs in a row before recharging. Zero unless the
  /// task is relayed.
  int frequency = 0;
  /// n^c_t
  int compatible = 0;
  /// Remaining battery bound of the weakest compatible robot.
  double battery_bound = 0.0;
};

/// Coalition size, fragment count and relay frequency of every task, in
/// scenario order. Throws PlanningError when a relayable task needs relays
/// but every compatible robot is already in the coalition.
std::vector<FragmentInfo> estimate_fragments(const Scenario& scenario);

FragmentInfo estimate_fragments(const Scenario& scenario, const Task& task);

//==============================================================================
// Relay pattern

class PatternError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct RelayPattern
{
  enum class Cell : std::uint8_t
  {
    Empty,
    Fragment,
    Recharge
  };

  int columns = 0;
  /// One row per robot, each with @c columns cells. Rows are sorted by their
  /// first Fragment column.
  std::vector<std::vector<Cell>> rows;

  int first_fragment(std::size_t row) const;
  int fragments_in_column(int column) const;
  /// Longest run of consecutive Fragment cells in a row.
  int longest_run(std::size_t row) const;
  /// Renders rows as text, e.g. "FF-RF..".
  std::string to_string() const;
};

/// Builds the allocation pattern of a relayed task with @p fragments columns
/// and @p coalition fragments per column. Each robot runs up to @p frequency
/// fragments, then leaves for at least @p recharge_span columns. Throws
/// PatternError when the compatible robots cannot cover every column.
RelayPattern build_relay_pattern(int fragments, int frequency, int compatible,
  int coalition, int recharge_span = 1);

//==============================================================================
// Planner

enum class Strategy
{
  Heuristic,
  Random,
  PseudoRandom,
  Greedy
};

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

struct PlannerOptions
{
  Strategy strategy = Strategy::Heuristic;
  std::uint64_t seed = 0;
  /// Evaluate candidate coalitions with the OpenMP kernel. Results are
  /// identical to the serial path.
  bool parallel = true;
};

/// Best coalition for one element of the allocation list.
struct CoalitionChoice
{
  TaskId task;
  std::size_t task_index = 0;
  int coalition = 1;
  int fragments = 1;
  /// Execution time of one fragment.
  double duration = 0.0;
  std::vector<RobotId> robots;
  std::vector<bool> pre_recharge;
  /// Coordination wait of each robot (for relay rows, before the first
  /// fragment).
  std::vector<double> waits;
  /// Coordination time T^f_t.
  double finish = 0.0;
  double delta_makespan = 0.0;
  double delta_wait = 0.0;
  /// Travel time of the coalition to the task.
  double displacement = 0.0;
  /// Passes of the selection loop that changed a flag or the coalition.
  int iterations = 0;
  /// Set for relayed tasks: row i is executed by robots[i].
  std::optional<RelayPattern> pattern;
  /// Start of the first pattern column.
  double pattern_start = 0.0;
};

/// Mutable planning state: one growing schedule per robot.
class PlannerState
{
public:
  explicit PlannerState(const Scenario& scenario);

  struct Robot
  {
    const mrta::Robot* spec = nullptr;
    std::vector<SlotEntry> slots;
    Position position;
    double finish = 0.0;
    /// Battery time consumed at the end of the last slot.
    double battery = 0.0;
    bool last_recharge = false;

    /// Battery time consumed when the next slot starts.
    double consumed() const { return last_recharge ? 0.0 : battery; }
  };

  const Scenario& scenario() const { return *scenario_; }
  const std::vector<Robot>& robots() const { return robots_; }
  std::vector<Robot>& robots() { return robots_; }
  double makespan() const;

  /// Appends the slots described by @p choice and its coordination links.
  void commit(const CoalitionChoice& choice);

  /// Appends a recharge to the end of a robot's queue.
  void append_recharge(std::size_t robot);

  Plan to_plan(const std::vector<FragmentInfo>& info) const;

private:
  const Scenario* scenario_;
  std::vector<Robot> robots_;
  std::vector<CoordinationLink> links_;
  std::vector<int> fragments_done_;
};

/// Iterative coalition selection for an element of @p task. Returns nothing when
/// no feasible coalition exists.
std::optional<CoalitionChoice> select_robots(const PlannerState& state,
  const FragmentInfo& info, std::size_t task_index, double makespan);

/// Timing for a fixed robot set (rows matched in the given order for relayed
/// tasks).
std::optional<CoalitionChoice> time_fixed_coalition(const PlannerState& state,
  const FragmentInfo& info, std::size_t task_index, double makespan,
  const std::vector<std::size_t>& robots);

/// Robots (state indices) able to execute an element of the task.
std::vector<std::size_t> eligible_robots(
  const PlannerState& state, const FragmentInfo& info);

/// Evaluates select_robots for every listed task. The parallel kernel and the
/// serial reference return identical vectors.
std::vector<std::optional<CoalitionChoice>> evaluate_candidates_serial(
  const PlannerState& state, const std::vector<FragmentInfo>& info,
  const std::vector<std::size_t>& tasks, double makespan);
std::vector<std::optional<CoalitionChoice>> evaluate_candidates_parallel(
  const PlannerState& state, const std::vector<FragmentInfo>& info,
  const std::vector<std::size_t>& tasks, double makespan);

/// Lexicographic allocation priority: true when @p a is allocated before @p b.
/// A candidate is urgent when it meets its deadline now with less slack than
/// @p window, the smallest makespan increase among the open candidates.
bool higher_priority(const Scenario& scenario, const std::vector<FragmentInfo>& info,
  const CoalitionChoice& a, const CoalitionChoice& b, double window);

/// Plans every task of the scenario. Throws PlanningError when a task cannot
/// be allocated.
Plan plan(const Scenario& scenario, const PlannerOptions& options = {});

Plan plan_variant(const Scenario& scenario, Strategy strategy, std::uint64_t seed);

} // namespace mrta

#endif // MRTA_HEURISTIC_HPP
