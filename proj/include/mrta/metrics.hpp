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

#ifndef MRTA_METRICS_HPP
#define MRTA_METRICS_HPP

#include <mrta/model.hpp>
#include <mrta/objective.hpp>

#include <optional>
#include <string>
#include <vector>

namespace mrta {

/// Per-plan evaluation metrics. Percentages are in [0, 100].
struct MetricsReport
{
  int recharges = 0;         // NR
  ObjectiveBreakdown objective;
  double makespan = 0.0;     // Z, seconds
  double waiting_rate = 0.0; // WTR
  /// CSD: mean V_t / N_t over variable-coalition tasks, in [0, 1].
  double coalition_deviation = 0.0;
  double battery_time = 0.0; // CBT, seconds per robot
  double workload = 0.0;     // WD
  double computation_time = 0.0; // CT, seconds
};

MetricsReport plan_metrics(const Scenario& scenario, const Plan& plan,
  double computation_time = 0.0);

/// Battery time consumed by one schedule: travel plus waiting and execution
/// outside recharges.
double consumed_battery(const RobotSchedule& schedule);

struct Statistic
{
  double mean = 0.0;
  double stddev = 0.0;
};

struct BatchReport
{
  int attempts = 0;
  int solved = 0;
  /// False for an empty batch; the rates are meaningless then.
  bool defined = false;
  double success_rate = 0.0;  // SR
  double recharge_rate = 0.0; // RR, over solved scenarios
  Statistic recharges, f, f1, f2, f3, f4, makespan, waiting_rate, coalition_deviation,
    battery_time, workload, computation_time;
};

/// Aggregates one entry per attempt; nullopt marks an unsolved scenario.
BatchReport batch_metrics(const std::vector<std::optional<MetricsReport>>& runs);

/// CSV with one row per attempt and a final "mean" row.
std::string metrics_csv(const std::vector<std::string>& labels,
  const std::vector<std::optional<MetricsReport>>& runs);

} // namespace mrta

#endif // MRTA_METRICS_HPP
