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

#ifndef MRTA_SIMULATOR_HPP
#define MRTA_SIMULATOR_HPP

#include <mrta/metrics.hpp>
#include <mrta/model.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mrta {

struct Disturbance
{
  enum class Kind
  {
    Delay,
    RobotFailure,
    NewTask
  };

  Kind kind = Kind::Delay;
  RobotId robot;
  /// Delay: index of the robot's executed slot (counted from 0 over the
  /// whole mission) whose end is late by @p seconds (negative: early).
  int slot = 0;
  double seconds = 0.0;
  /// RobotFailure, NewTask: mission time of the event.
  double time = 0.0;
  /// NewTask: the arriving task. Its deadline is absolute.
  Task task;

  static Disturbance delay(RobotId robot, int slot, double seconds);
  static Disturbance failure(RobotId robot, double time);
  static Disturbance new_task(const Task& task, double time);
};

enum class Policy
{
  RepairOnly,
  ReplanOnly,
  Combined
};

std::string to_string(Policy p);
Policy policy_from_string(const std::string& s);

enum class EventKind
{
  TravelStart,
  WaitStart,
  ExecStart,
  ExecEnd,
  RechargeStart,
  RechargeEnd,
  RepairApplied,
  ReplanTriggered,
  FailureHandled,
  MissionComplete,
  MissionFailed
};

std::string to_string(EventKind k);

struct TraceEvent
{
  double time = 0.0;
  EventKind kind = EventKind::MissionComplete;
  std::optional<RobotId> robot;
  /// Executed-slot index of the robot (slot events only).
  int slot = -1;
  std::optional<TaskId> task;
  int fragment = 0;
  std::string detail;
};

struct ExecutionTrace
{
  std::vector<TraceEvent> events;
  bool completed = false;
  std::string failure;
  int repairs = 0;
  int replans = 0;
  /// Slots as they were actually flown, renumbered per robot.
  Plan executed;
  /// Original tasks plus the ones that arrived during the mission.
  Scenario world;
  /// Execution time credited to each task (fragments counted once).
  std::map<TaskId, double> work;
  MetricsReport metrics;
};

/// Runs @p plan on @p scenario, injecting @p disturbances. Deterministic.
/// Throws InputError when a disturbance refers to an unknown robot or reuses
/// a task id.
ExecutionTrace simulate(const Scenario& scenario, const Plan& plan,
  const std::vector<Disturbance>& disturbances, Policy policy);

enum class DelayClass
{
  Short,
  Long
};

std::string to_string(DelayClass c);
DelayClass delay_class_from_string(const std::string& s);

struct DelayExperimentConfig
{
  std::uint64_t seed = 1;
  int scenarios = 200;
  int robots = 10;
  int tasks = 50;
  DelayClass delay_class = DelayClass::Short;
  /// Delay magnitudes drawn uniformly, in seconds. Empty: 30, 60 and 120 s
  /// for short delays, 10, 15 and 20 min for long ones.
  std::vector<double> magnitudes;
  bool parallel = true;
};

/// Relative increments (percent) of the executed plan over the original one.
struct DelayTrial
{
  std::uint64_t scenario_seed = 0;
  RobotId robot;
  int slot = 0;
  double delay = 0.0;
  std::map<Policy, bool> success;
  std::map<Policy, std::map<std::string, double>> increments;
};

struct ApproachSummary
{
  int trials = 0;
  int successes = 0;
  double success_rate = 0.0;
  /// Metric name -> (mean, standard error) over successful trials.
  std::map<std::string, std::pair<double, double>> increments;
};

struct DelayExperimentResult
{
  std::vector<DelayTrial> trials;
  std::map<Policy, ApproachSummary> summary;
};

/// Names of the compared increments: f, Z, WTR, CBT, WD.
const std::vector<std::string>& increment_names();

DelayExperimentResult run_delay_experiment(const DelayExperimentConfig& config);

/// One row per metric, mean and standard error per approach.
std::string delay_experiment_csv(const DelayExperimentResult& result);

} // namespace mrta

#endif // MRTA_SIMULATOR_HPP
