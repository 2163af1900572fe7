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

#include <mrta/validator.hpp>

#include <mrta/geometry.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace mrta {

namespace {

std::string where(RobotId r, int slot)
{
  return "robot " + std::to_string(r.value) + " slot " + std::to_string(slot);
}

std::string where(const SlotRef& ref)
{
  return where(ref.robot, ref.slot);
}

std::string where(TaskId t)
{
  return "task " + std::to_string(t.value);
}

class Checker
{
public:
  Checker(const Scenario& scenario, const Plan& plan)
  : scenario_(scenario), plan_(plan)
  {
  }

  ValidationReport run()
  {
    check_structure();
    for (const auto& s : plan_.schedules)
      check_schedule(s);
    check_counting();
    check_links();
    report_.objective = compute_objective(scenario_, plan_);
    report_.valid = report_.violations.empty();
    return std::move(report_);
  }

private:
  void violate(std::string family, std::string location, double magnitude)
  {
    report_.violations.push_back(
      {std::move(family), std::move(location), magnitude});
  }

  void check_structure()
  {
    std::set<RobotId> seen;
    for (const auto& s : plan_.schedules)
    {
      scenario_.robot(s.robot);
      if (!seen.insert(s.robot).second)
        throw PlanStructureError(
          "robot " + std::to_string(s.robot.value) + " has two schedules");
      for (const auto& e : s.slots)
      {
        if (e.is_task())
          scenario_.task(e.task);
      }
    }
    std::set<TaskId> allocated;
    for (const auto& a : plan_.tasks)
    {
      scenario_.task(a.task);
      if (!allocated.insert(a.task).second)
        throw PlanStructureError(where(a.task) + " is listed twice");
    }
    for (const auto& l : plan_.links)
    {
      auto check = [&](const SlotRef& ref)
      {
        if (!plan_.slot(ref))
          throw PlanStructureError("link refers to missing " + where(ref));
      };
      std::for_each(l.members.begin(), l.members.end(), check);
      std::for_each(l.predecessors.begin(), l.predecessors.end(), check);
      std::for_each(l.successors.begin(), l.successors.end(), check);
      if (l.predecessors.size() != l.successors.size())
        throw PlanStructureError("relay link with unpaired slots");
    }
  }

  void check_schedule(const RobotSchedule& schedule)
  {
    const Robot& robot = scenario_.robot(schedule.robot);
    const double budget = robot.battery_budget();

    std::vector<const SlotEntry*> entries;
    for (const auto& e : schedule.slots)
      entries.push_back(&e);
    std::stable_sort(entries.begin(), entries.end(),
      [](const SlotEntry* a, const SlotEntry* b) { return a->slot < b->slot; });

    // One entry per slot index.
    for (std::size_t i = 1; i < entries.size(); ++i)
    {
      if (entries[i]->slot == entries[i - 1]->slot
        && !(entries[i]->is_empty() && entries[i - 1]->is_empty()))
        violate("slot_uniqueness", where(robot.id, entries[i]->slot), 1.0);
    }

    // Active slots occupy indices 0..k-1 without gaps.
    int expected = 0;
    bool seen_empty = false;
    for (const auto* e : entries)
    {
      if (e->is_empty())
      {
        seen_empty = true;
        continue;
      }
      if (seen_empty || e->slot != expected)
        violate("continuity", where(robot.id, e->slot), 1.0);
      expected = e->slot + 1;
    }

    Position here = robot.start;
    double finish = robot.ready_time;
    double battery = robot.battery_initial;
    bool previous_recharge = false;
    bool first = true;
    for (const auto* e : entries)
    {
      if (e->is_empty())
        continue;
      const auto loc = where(robot.id, e->slot);

      // No two recharges in a row.
      if (e->is_recharge() && previous_recharge && !first)
        violate("no_consecutive_recharge", loc, 1.0);

      Position target;
      double exec = 0.0;
      if (e->is_task())
      {
        const Task& task = scenario_.task(e->task);
        // Hardware compatibility.
        if (!compatible(robot, task))
          violate("hardware", loc, 1.0);
        target = task.location;
        const auto* alloc = plan_.find_allocation(e->task);
        const int nf = alloc ? std::max(alloc->fragments, 1) : 1;
        exec = task.exec_time / nf;
        if (alloc && (e->fragment < 1 || e->fragment > nf))
          violate("counting", loc + " fragment index", 1.0);
      }
      else
      {
        target = e->post_location;
        const bool at_station = std::any_of(
          scenario_.stations.begin(), scenario_.stations.end(),
          [&](const Position& p) { return distance(p, target) <= time_tolerance; });
        if (!at_station)
          violate("location", loc + " recharge away from a station", 1.0);
        exec = scenario_.recharge_time;
      }

      const double moved = distance(e->pre_location, here);
      if (moved > time_tolerance)
        violate("location", loc + " departs from the wrong position", moved);
      const double landed = distance(e->post_location, target);
      if (landed > time_tolerance)
        violate("location", loc + " ends at the wrong position", landed);

      // Time recursion.
      const double travel = travel_time(robot, here, target);
      if (std::abs(e->travel - travel) > time_tolerance)
        violate("travel_time", loc, std::abs(e->travel - travel));
      if (e->wait < -time_tolerance)
        violate("waiting_time", loc, -e->wait);
      if (std::abs(e->exec - exec) > time_tolerance)
        violate("execution_time", loc, std::abs(e->exec - exec));
      const double expected_finish =
        finish + e->travel + e->wait + e->exec + e->deviation;
      if (std::abs(e->finish - expected_finish) > time_tolerance)
        violate("finish_time", loc, std::abs(e->finish - expected_finish));

      // Battery recursion. A recharge resets what the next slot carries.
      const double carried = previous_recharge && !first ? 0.0 : battery;
      const double expected_battery = carried + e->travel
        + (e->is_recharge() ? 0.0 : e->wait + e->exec + e->deviation);
      if (std::abs(e->battery - expected_battery) > time_tolerance)
        violate("battery_recursion", loc,
          std::abs(e->battery - expected_battery));
      if (e->battery > budget + time_tolerance)
        violate("battery_limit", loc, e->battery - budget);

      if (e->is_task())
      {
        const double over = e->finish - scenario_.task(e->task).deadline;
        if (over > time_tolerance)
          report_.deadline_overruns.push_back({"deadline", loc, over});
      }

      here = e->post_location;
      finish = e->finish;
      battery = e->battery;
      previous_recharge = e->is_recharge();
      first = false;
    }
  }

  void check_counting()
  {
    std::map<TaskId, int> appearances;
    std::map<TaskId, std::set<RobotId>> queues;
    for (const auto& s : plan_.schedules)
    {
      for (const auto& e : s.slots)
      {
        if (!e.is_task())
          continue;
        ++appearances[e.task];
        queues[e.task].insert(s.robot);
      }
    }

    for (const auto& task : scenario_.tasks)
    {
      const auto loc = where(task.id);
      const auto* alloc = plan_.find_allocation(task.id);
      const int n = appearances[task.id];
      const int nq = static_cast<int>(queues[task.id].size());
      if (!alloc)
      {
        violate("counting", loc + " has no allocation record", 1.0);
        continue;
      }
      if (alloc->appearances != n)
        violate("counting", loc + " n_t", std::abs(alloc->appearances - n));
      if (alloc->queues != nq)
        violate("counting", loc + " n^q_t", std::abs(alloc->queues - nq));
      if (alloc->fragments < 1)
        violate("counting", loc + " n^f_t < 1", 1.0);
      if (alloc->coalition < 1)
        violate("counting", loc + " is not assigned", 1.0);
      if (alloc->coalition > nq)
        violate("counting", loc + " n^r_t > n^q_t", alloc->coalition - nq);
      if (n != alloc->coalition * alloc->fragments)
        violate("counting", loc + " n_t != n^r_t * n^f_t",
          std::abs(n - alloc->coalition * alloc->fragments));
      if (task.decomposability == Decomposability::NonDecomposable
        && alloc->fragments != 1)
        violate("counting", loc + " non-decomposable task fragmented", 1.0);

      // Coalition-size deviation V_t.
      using Kind = CoalitionFlexibility::Kind;
      if (task.coalition.kind == Kind::Fixed
        && alloc->coalition != task.coalition.size)
        violate("coalition_size", loc,
          std::abs(alloc->coalition - task.coalition.size));
      if (task.coalition.kind == Kind::Variable
        && alloc->coalition > task.coalition.size)
        violate("coalition_size", loc, alloc->coalition - task.coalition.size);
    }
  }

  void check_links()
  {
    std::map<SlotRef, std::set<SlotRef>> partners;
    std::map<SlotRef, int> relayed_by;
    std::map<SlotRef, int> relaying;
    std::map<TaskId, int> relay_count;

    auto task_of = [&](const SlotRef& ref) -> const SlotEntry*
    {
      const auto* e = plan_.slot(ref);
      return e && e->is_task() ? e : nullptr;
    };

    for (const auto& l : plan_.links)
    {
      if (l.kind == CoordinationLink::Kind::Synch)
      {
        if (l.members.size() < 2)
        {
          violate("link_task", "synch link with fewer than two members", 1.0);
          continue;
        }
        const SlotEntry* head = task_of(l.members.front());
        std::set<RobotId> robots;
        for (const auto& m : l.members)
        {
          const auto* e = task_of(m);
          // Both slots hold the coordinated task.
          if (!e || !head || e->task != head->task)
          {
            violate("link_task", where(m), 1.0);
            continue;
          }
          if (!robots.insert(m.robot).second)
            violate("synchronization", where(m) + " synchronizes with itself", 1.0);
          // Synchronized slots end together.
          const double gap = std::abs(e->planned_finish() - head->planned_finish());
          if (gap > time_tolerance)
            violate("synchronization", where(m), gap);
        }
        for (const auto& a : l.members)
        {
          for (const auto& b : l.members)
          {
            if (!(a == b))
              partners[a].insert(b);
          }
        }
        continue;
      }

      for (std::size_t i = 0; i < l.predecessors.size(); ++i)
      {
        const auto& p = l.predecessors[i];
        const auto& q = l.successors[i];
        const auto* ep = task_of(p);
        const auto* eq = task_of(q);
        if (!ep || !eq || ep->task != eq->task || p == q)
        {
          violate("link_task", where(p) + " -> " + where(q), 1.0);
          continue;
        }
        if (scenario_.task(ep->task).decomposability != Decomposability::Relayable)
          violate("link_task", where(p) + " relays a task that is not relayable", 1.0);
        // The successor starts when the relayed fragment ends.
        const double gap =
          std::abs(ep->planned_finish() - (eq->planned_finish() - eq->exec));
        if (gap > time_tolerance)
          violate("relay_timing", where(p) + " -> " + where(q), gap);
        ++relayed_by[p];
        ++relaying[q];
        ++relay_count[ep->task];
      }
    }

    // Each slot is relayed at most once and relays at most one slot.
    for (const auto& [ref, n] : relayed_by)
    {
      if (n > 1)
        violate("relay_flow", where(ref) + " relayed more than once", n - 1);
    }
    for (const auto& [ref, n] : relaying)
    {
      if (n > 1)
        violate("relay_flow", where(ref) + " relays more than one slot", n - 1);
    }

    // Every task slot synchronizes with exactly n^r - 1 others.
    for (const auto& s : plan_.schedules)
    {
      for (const auto& e : s.slots)
      {
        if (!e.is_task())
          continue;
        const SlotRef ref{s.robot, e.slot};
        const auto* alloc = plan_.find_allocation(e.task);
        if (!alloc)
          continue;
        const auto it = partners.find(ref);
        const int have = it == partners.end() ? 0 : static_cast<int>(it->second.size());
        if (have != alloc->coalition - 1)
          violate("synch_flow", where(ref), std::abs(have - (alloc->coalition - 1)));
        if (it != partners.end())
        {
          std::set<RobotId> robots;
          for (const auto& p : it->second)
            robots.insert(p.robot);
          if (static_cast<int>(robots.size()) != have || robots.count(s.robot))
            violate("synch_flow", where(ref) + " partners share a robot", 1.0);
        }
      }
    }

    // A relayed task carries n_t - n^r relays; other tasks none.
    for (const auto& task : scenario_.tasks)
    {
      const auto* alloc = plan_.find_allocation(task.id);
      if (!alloc)
        continue;
      int n = 0;
      for (const auto& sch : plan_.schedules)
      {
        n += static_cast<int>(std::count_if(sch.slots.begin(), sch.slots.end(),
          [&](const SlotEntry& e) { return e.is_task() && e.task == task.id; }));
      }
      const int have = relay_count[task.id];
      const int want = task.decomposability == Decomposability::Relayable
        ? n - alloc->coalition
        : 0;
      if (have != want)
        violate("relay_count", where(task.id), std::abs(have - want));
    }
  }

  const Scenario& scenario_;
  const Plan& plan_;
  ValidationReport report_;
};

} // namespace

ValidationReport validate_plan(const Scenario& scenario, const Plan& plan)
{
  return Checker(scenario, plan).run();
}

} // namespace mrta
