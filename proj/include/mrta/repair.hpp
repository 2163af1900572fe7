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

#ifndef MRTA_REPAIR_HPP
#define MRTA_REPAIR_HPP

#include <mrta/model.hpp>

#include <set>
#include <string>
#include <vector>

namespace mrta {

/// Delay bookkeeping shared by the repair steps. Vectors are indexed like
/// Plan::schedules.
struct RepairState
{
  /// Latest slot updated so far for each robot (-1: none).
  std::vector<int> last_slot;
  /// Remaining delay carried past last_slot.
  std::vector<double> delay;
  /// Robots whose delay is not yet absorbed.
  std::set<std::size_t> delayed;
  /// Slots up to this index were already executed and cannot change.
  std::vector<int> executed;
  /// Slots taking part in any coordination point. Padding moves to an
  /// earlier recharge only across slots outside this set.
  std::set<SlotRef> coordinated;
  /// Set when a coordination point needs an executed slot to move.
  bool broken = false;
};

/// A synchronization (relayed empty) or a relay point.
struct CoordinationPoint
{
  CoordinationLink::Kind kind = CoordinationLink::Kind::Synch;
  TaskId task;
  /// Relaying robots, or the coalition members of a synchronization.
  std::vector<SlotRef> relaying;
  /// Robots being relayed.
  std::vector<SlotRef> relayed;
  /// Scheduled start of the relaying slots before repair.
  double time = 0.0;
};

/// Coordination points of @p plan that still involve unexecuted slots,
/// ordered by time (per-robot slot order always respected; ties by task id).
/// Pairwise synchronization links over shared slots are merged, and relay
/// links of one task at one instant form a single point.
std::vector<CoordinationPoint> coordination_points(const Plan& plan,
  const std::vector<int>& executed);

/// Index of the last slot of each schedule finished by @p t0 (-1: none).
std::vector<int> executed_slots(const Plan& plan, double t0);

/// Propagates robot @p robot's delay through slots (last_slot, s_f],
/// absorbing it into waiting times.
void update_time_vars(Plan& plan, std::size_t robot, int s_f, RepairState& state);

/// Resynchronizes a coalition on the latest member.
void update_synch_task(Plan& plan, const std::vector<SlotRef>& members, RepairState& state);

/// Moves a relay instant to the latest of the relayed and relaying robots.
void update_relay_task(Plan& plan, const std::vector<SlotRef>& relayed,
  const std::vector<SlotRef>& relaying, RepairState& state);

struct RepairResult
{
  bool success = false;
  /// Repaired plan on success, the untouched input otherwise.
  Plan plan;
  std::string reason;
  double makespan_increase = 0.0;
};

/// Repairs @p plan after robot @p robot finished slot @p slot with a signed
/// deviation @p delay (positive: late). Other robots are taken to have
/// executed the slots listed in @p executed; when empty, every slot whose
/// scheduled finish is not after the delayed robot's actual finish counts as
/// executed. Task assignment never changes.
RepairResult repair_plans(const Scenario& scenario, const Plan& plan, RobotId robot, int slot,
  double delay, std::vector<int> executed = {});

/// Recomputes the battery field of every slot of @p schedule and returns
/// false when a value exceeds the robot's usable battery.
bool refresh_battery(const Robot& robot, RobotSchedule& schedule);

} // namespace mrta

#endif // MRTA_REPAIR_HPP
