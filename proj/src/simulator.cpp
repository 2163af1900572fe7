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

#include <mrta/simulator.hpp>

#include <mrta/geometry.hpp>
#include <mrta/heuristic.hpp>
#include <mrta/repair.hpp>
#include <mrta/validator.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

namespace mrta {

Disturbance Disturbance::delay(RobotId robot, int slot, double seconds)
{
  Disturbance d;
  d.kind = Kind::Delay;
  d.robot = robot;
  d.slot = slot;
  d.seconds = seconds;
  return d;
}

Disturbance Disturbance::failure(RobotId robot, double time)
{
  Disturbance d;
  d.kind = Kind::RobotFailure;
  d.robot = robot;
  d.time = time;
  return d;
}

Disturbance Disturbance::new_task(const Task& task, double time)
{
  Disturbance d;
  d.kind = Kind::NewTask;
  d.task = task;
  d.time = time;
  return d;
}

std::string to_string(Policy p)
{
  switch (p)
  {
    case Policy::RepairOnly:
      return "repair";
    case Policy::ReplanOnly:
      return "replan";
    case Policy::Combined:
      return "combined";
  }
  return "?";
}

Policy policy_from_string(const std::string& s)
{
  if (s == "repair" || s == "repair-only")
    return Policy::RepairOnly;
  if (s == "replan" || s == "replan-only" || s == "replanning")
    return Policy::ReplanOnly;
  if (s == "combined")
    return Policy::Combined;
  throw InputError("unknown policy '" + s + "' (repair, replan, combined)");
}

std::string to_string(EventKind k)
{
  switch (k)
  {
    case EventKind::TravelStart:
      return "travel_start";
    case EventKind::WaitStart:
      return "wait_start";
    case EventKind::ExecStart:
      return "exec_start";
    case EventKind::ExecEnd:
      return "exec_end";
    case EventKind::RechargeStart:
      return "recharge_start";
    case EventKind::RechargeEnd:
      return "recharge_end";
    case EventKind::RepairApplied:
      return "repair_applied";
    case EventKind::ReplanTriggered:
      return "replan_triggered";
    case EventKind::FailureHandled:
      return "failure_handled";
    case EventKind::MissionComplete:
      return "mission_complete";
    case EventKind::MissionFailed:
      return "mission_failed";
  }
  return "?";
}

namespace {

constexpr double tolerance = 1e-6;

struct Committed
{
  SlotEntry entry;
  int generation = 0;
};

struct RobotRun
{
  Robot spec;
  bool alive = true;
  /// Next slot of the current plan's schedule.
  int next = 0;
  /// In-flight slot kept across a replan; executed before the current plan.
  std::vector<Committed> prefix;
  Position position;
  double battery = 0.0;
  double free_time = 0.0;
  int executed = 0;
  std::vector<SlotEntry> flown;
};

class Simulation
{
public:
  Simulation(const Scenario& scenario, const Plan& plan,
    const std::vector<Disturbance>& disturbances, Policy policy)
  : world_(scenario), current_scenario_(scenario), current_(plan), policy_(policy)
  {
    for (const auto& r : scenario.robots)
    {
      RobotRun run;
      run.spec = r;
      run.position = r.start;
      run.battery = r.battery_initial;
      run.free_time = r.ready_time;
      robots_.push_back(run);
    }
    std::set<TaskId> ids;
    for (const auto& t : scenario.tasks)
    {
      ids.insert(t.id);
      incarnation_[t.id] = 0;
      trace_.work[t.id] = 0.0;
    }
    for (const auto& d : disturbances)
    {
      switch (d.kind)
      {
        case Disturbance::Kind::Delay:
          index_of(d.robot);
          if (!std::isfinite(d.seconds))
            throw InputError("delay magnitude must be finite");
          delays_[{d.robot, d.slot}] += d.seconds;
          break;
        case Disturbance::Kind::RobotFailure:
          index_of(d.robot);
          if (!(d.time >= 0.0))
            throw InputError("failure time must be non-negative");
          timed_.push_back(d);
          break;
        case Disturbance::Kind::NewTask:
          if (!ids.insert(d.task.id).second)
            throw InputError("new task reuses id " + std::to_string(d.task.id.value));
          if (!(d.time >= 0.0))
            throw InputError("new task time must be non-negative");
          timed_.push_back(d);
          break;
      }
    }
    std::stable_sort(timed_.begin(), timed_.end(),
      [](const Disturbance& a, const Disturbance& b) { return a.time < b.time; });
    snapshot_generation();
  }

  ExecutionTrace run()
  {
    std::size_t pending = 0;
    while (!failed_)
    {
      const auto [robot, when] = next_completion();
      if (pending < timed_.size() && (robot < 0 || timed_[pending].time <= when))
      {
        handle(timed_[pending++]);
        continue;
      }
      if (robot < 0)
        break;
      complete(static_cast<std::size_t>(robot));
    }
    return finish();
  }

private:
  std::size_t index_of(RobotId id) const
  {
    for (std::size_t i = 0; i < robots_.size(); ++i)
    {
      if (robots_[i].spec.id == id)
        return i;
    }
    throw InputError("disturbance refers to unknown robot " + std::to_string(id.value));
  }

  void emit(double time, EventKind kind, std::optional<RobotId> robot, int slot = -1,
    std::optional<TaskId> task = std::nullopt, int fragment = 0, std::string detail = {})
  {
    trace_.events.push_back({time, kind, robot, slot, task, fragment, std::move(detail)});
  }

  void snapshot_generation()
  {
    generation_incarnation_.push_back(incarnation_);
    for (const auto& a : current_.tasks)
      last_allocation_[a.task] = a;
  }

  SlotEntry* current_slot(const RobotRun& r)
  {
    return current_.slot({r.spec.id, r.next});
  }

  // Robot whose next slot ends first, and that end time (delay included).
  std::pair<long, double> next_completion()
  {
    long best = -1;
    double when = 0.0;
    for (std::size_t i = 0; i < robots_.size(); ++i)
    {
      auto& r = robots_[i];
      if (!r.alive)
        continue;
      const SlotEntry* e = r.prefix.empty() ? current_slot(r) : &r.prefix.front().entry;
      if (!e)
        continue;
      double t = e->finish;
      if (const auto it = delays_.find({r.spec.id, r.executed}); it != delays_.end())
        t += it->second;
      if (best < 0 || t < when)
      {
        best = static_cast<long>(i);
        when = t;
      }
    }
    return {best, when};
  }

  void complete(std::size_t i)
  {
    auto& r = robots_[i];
    const bool committed = !r.prefix.empty();
    int generation = generation_;
    SlotEntry* e = nullptr;
    if (committed)
    {
      e = &r.prefix.front().entry;
      generation = r.prefix.front().generation;
    }
    else
    {
      e = current_slot(r);
    }

    const auto id = r.spec.id;
    const std::optional<TaskId> task = e->is_task() ? std::optional(e->task) : std::nullopt;
    const double depart = r.free_time;
    emit(depart, EventKind::TravelStart, id, r.executed, task, e->fragment);
    emit(depart + e->travel, EventKind::WaitStart, id, r.executed, task, e->fragment);
    emit(e->exec_start(), e->is_task() ? EventKind::ExecStart : EventKind::RechargeStart, id,
      r.executed, task, e->fragment);

    bool replan_after = false;
    if (const auto it = delays_.find({id, r.executed}); it != delays_.end() && it->second != 0.0)
    {
      const double delay = it->second;
      const double t0 = e->finish + delay;
      bool repaired = false;
      if (!committed && policy_ != Policy::ReplanOnly)
      {
        std::vector<int> executed;
        for (const auto& s : current_.schedules)
        {
          const auto& other = robots_[index_of(s.robot)];
          executed.push_back(other.prefix.empty() ? other.next - 1 : -1);
        }
        executed[schedule_position(id)] = e->slot;
        auto result = repair_plans(current_scenario_, current_, id, e->slot, delay, executed);
        if (result.success)
        {
          current_ = std::move(result.plan);
          e = current_slot(r);
          repaired = true;
          ++trace_.repairs;
          emit(t0, EventKind::RepairApplied, id, r.executed, task, e->fragment,
            "makespan +" + std::to_string(result.makespan_increase) + " s");
        }
        else if (policy_ == Policy::RepairOnly)
        {
          fail(t0, "repair failed: " + result.reason);
          return;
        }
      }
      else if (policy_ == Policy::RepairOnly)
      {
        fail(t0, "delay on a slot outside the current plan");
        return;
      }
      if (!repaired)
      {
        e->finish += delay;
        e->deviation += delay;
        replan_after = true;
      }
    }

    if (replan_after && !e->is_recharge())
    {
      const double budget = r.spec.battery_budget();
      const double drained = r.battery + e->travel + e->wait + e->exec + e->deviation;
      if (drained > budget + tolerance)
      {
        // The battery runs out while the robot is still on the late slot.
        lose_robot(i, e->finish - (drained - budget), task,
          "robot " + std::to_string(id.value) + " ran out of battery");
        return;
      }
    }

    emit(e->finish, e->is_task() ? EventKind::ExecEnd : EventKind::RechargeEnd, id,
      r.executed, task, e->fragment);

    // Physical state after the slot.
    r.battery = e->is_recharge() ? 0.0
                                 : r.battery + e->travel + e->wait + e->exec + e->deviation;
    r.position = e->post_location;
    r.free_time = e->finish;
    SlotEntry flown = *e;
    flown.slot = r.executed;
    r.flown.push_back(flown);
    if (task)
      credit(*task, generation, e->fragment, e->exec);
    ++r.executed;
    if (committed)
      r.prefix.erase(r.prefix.begin());
    else
      ++r.next;

    if (!replan_after)
      return;
    if (r.battery + time_to_station(world_, r.spec, r.position)
      > r.spec.battery_budget() + tolerance)
    {
      r.alive = false;
      emit(r.free_time, EventKind::FailureHandled, id, -1, std::nullopt, 0,
        "cannot reach a station after the delay");
    }
    replan(r.free_time, "delay of robot " + std::to_string(id.value));
  }

  std::size_t schedule_position(RobotId id) const
  {
    for (std::size_t k = 0; k < current_.schedules.size(); ++k)
    {
      if (current_.schedules[k].robot == id)
        return k;
    }
    throw PlanStructureError("robot without schedule");
  }

  void credit(TaskId task, int generation, int fragment, double exec)
  {
    const auto& inc = generation_incarnation_[static_cast<std::size_t>(generation)];
    const auto it = inc.find(task);
    if (it == inc.end() || it->second != incarnation_[task])
      return;
    if (counted_.insert({task, generation, fragment}).second)
      trace_.work[task] += exec;
  }

  // Work that committed slots will add once they finish.
  double committed_work(TaskId task) const
  {
    std::set<std::pair<int, int>> seen;
    double total = 0.0;
    for (const auto& r : robots_)
    {
      if (!r.alive)
        continue;
      for (const auto& c : r.prefix)
      {
        if (!c.entry.is_task() || c.entry.task != task)
          continue;
        const auto& inc = generation_incarnation_[static_cast<std::size_t>(c.generation)];
        const auto it = inc.find(task);
        if (it == inc.end() || it->second != incarnation_.at(task))
          continue;
        if (counted_.count({task, c.generation, c.entry.fragment}))
          continue;
        if (seen.insert({c.generation, c.entry.fragment}).second)
          total += c.entry.exec;
      }
    }
    return total;
  }

  void fail(double time, std::string why)
  {
    failed_ = true;
    trace_.failure = why;
    emit(time, EventKind::MissionFailed, std::nullopt, -1, std::nullopt, 0, std::move(why));
  }

  void handle(const Disturbance& d)
  {
    if (d.kind == Disturbance::Kind::NewTask)
    {
      world_.tasks.push_back(d.task);
      incarnation_[d.task.id] = 0;
      trace_.work[d.task.id] = 0.0;
      replan(d.time, "new task " + std::to_string(d.task.id.value));
      return;
    }

    auto& r = robots_[index_of(d.robot)];
    if (!r.alive)
      return;
    r.alive = false;
    const auto id = r.spec.id;

    // The slot being flown is lost; its task starts over.
    std::optional<TaskId> lost;
    if (!r.prefix.empty())
    {
      if (r.prefix.front().entry.is_task())
        lost = r.prefix.front().entry.task;
      r.prefix.clear();
    }
    else if (const SlotEntry* e = current_slot(r); e && r.free_time < d.time - tolerance)
    {
      if (e->is_task())
        lost = e->task;
    }
    if (lost)
    {
      lose_robot(index_of(id), d.time, lost,
        "robot " + std::to_string(id.value) + " failed during a task");
      return;
    }

    Plan candidate = current_;
    bool has_tasks = false;
    if (auto* s = candidate.find_schedule(id))
    {
      const int cut = r.next;
      for (const auto& e : s->slots)
        has_tasks |= e.slot >= cut && e.is_task();
      std::erase_if(s->slots, [&](const SlotEntry& e) { return e.slot >= cut; });
      const auto gone = [&](const SlotRef& ref) { return ref.robot == id && ref.slot >= cut; };
      bool broken = false;
      for (auto& l : candidate.links)
      {
        std::erase_if(l.members, gone);
        for (std::size_t k = 0; k < l.predecessors.size(); ++k)
          broken |= gone(l.predecessors[k]) || gone(l.successors[k]);
      }
      std::erase_if(candidate.links, [](const CoordinationLink& l) {
        return l.kind == CoordinationLink::Kind::Synch && l.members.size() < 2;
      });
      if (has_tasks)
      {
        std::set<TaskId> affected;
        for (const auto& e : current_.find_schedule(id)->slots)
        {
          if (e.slot >= cut && e.is_task())
            affected.insert(e.task);
        }
        for (auto& a : candidate.tasks)
        {
          if (!affected.count(a.task))
            continue;
          const Task& t = current_scenario_.task(a.task);
          broken |= t.coalition.kind == CoalitionFlexibility::Kind::Fixed;
          a.coalition -= 1;
          broken |= a.coalition < 1;
        }
        refresh_counts(candidate);
        if (broken || !validate_plan(current_scenario_, candidate).valid)
        {
          replan(d.time, "robot " + std::to_string(id.value) + " failed");
          return;
        }
      }
    }
    current_ = std::move(candidate);
    emit(d.time, EventKind::FailureHandled, id, -1, std::nullopt, 0,
      has_tasks ? "coalitions shrink" : "no pending tasks");
  }

  // Robot @p i stops at @p time; the task it was flying starts over.
  void lose_robot(std::size_t i, double time, std::optional<TaskId> lost, const std::string& why)
  {
    robots_[i].alive = false;
    robots_[i].prefix.clear();
    if (lost)
    {
      ++incarnation_[*lost];
      trace_.work[*lost] = 0.0;
    }
    replan(time, why);
  }

  void replan(double t, const std::string& why)
  {
    ++trace_.replans;
    emit(t, EventKind::ReplanTriggered, std::nullopt, -1, std::nullopt, 0, why);

    Scenario sub;
    sub.stations = world_.stations;
    sub.recharge_time = world_.recharge_time;
    for (auto& r : robots_)
    {
      if (!r.alive)
        continue;
      if (r.prefix.empty() && r.free_time < t - tolerance)
      {
        if (const SlotEntry* e = current_slot(r))
          r.prefix.push_back({*e, generation_});
      }
      Robot spec = r.spec;
      spec.start = r.position;
      spec.battery_initial = r.battery;
      spec.ready_time = std::max(t, r.free_time);
      for (const auto& c : r.prefix)
      {
        const auto& e = c.entry;
        spec.battery_initial = e.is_recharge()
          ? 0.0 : spec.battery_initial + e.travel + e.wait + e.exec + e.deviation;
        spec.start = e.post_location;
        spec.ready_time = e.finish;
      }
      sub.robots.push_back(spec);
    }
    for (const auto& task : world_.tasks)
    {
      const double left = task.exec_time - trace_.work[task.id] - committed_work(task.id);
      if (left <= tolerance)
        continue;
      Task rest = task;
      rest.exec_time = left;
      sub.tasks.push_back(rest);
    }
    derive_horizon(sub);

    Plan next;
    if (!sub.tasks.empty())
    {
      try
      {
        next = plan(sub);
      }
      catch (const PlanningError& e)
      {
        fail(t, std::string("replanning failed: ") + e.what());
        return;
      }
      catch (const ConfigError& e)
      {
        fail(t, std::string("replanning failed: ") + e.what());
        return;
      }
    }
    else
    {
      for (const auto& r : sub.robots)
        next.schedules.push_back({r.id, {}});
    }
    current_scenario_ = std::move(sub);
    current_ = std::move(next);
    ++generation_;
    for (auto& r : robots_)
      r.next = 0;
    snapshot_generation();
  }

  ExecutionTrace finish()
  {
    double end = 0.0;
    for (const auto& r : robots_)
      end = std::max(end, r.free_time);
    if (!failed_)
    {
      bool done = true;
      for (const auto& t : world_.tasks)
        done &= trace_.work[t.id] >= t.exec_time - tolerance;
      if (done)
      {
        trace_.completed = true;
        emit(end, EventKind::MissionComplete, std::nullopt);
      }
      else
      {
        fail(end, "tasks left unexecuted");
      }
    }

    Plan executed;
    for (std::size_t i = 0; i < robots_.size(); ++i)
    {
      RobotSchedule s{robots_[i].spec.id, robots_[i].flown};
      refresh_battery(world_.robots[i], s);
      executed.schedules.push_back(std::move(s));
    }
    for (const auto& t : world_.tasks)
    {
      TaskAllocation a;
      a.task = t.id;
      if (const auto it = last_allocation_.find(t.id); it != last_allocation_.end())
        a = it->second;
      executed.tasks.push_back(a);
    }
    // Without replanning the flown slots keep their plan numbering, so the
    // coordination links still apply and the executed plan stays checkable.
    if (generation_ == 0)
      executed.links = current_.links;
    refresh_counts(executed);
    trace_.executed = std::move(executed);
    trace_.world = world_;
    trace_.metrics = plan_metrics(world_, trace_.executed);
    std::stable_sort(trace_.events.begin(), trace_.events.end(),
      [](const TraceEvent& a, const TraceEvent& b) { return a.time < b.time; });
    return std::move(trace_);
  }

  Scenario world_;
  Scenario current_scenario_;
  Plan current_;
  Policy policy_;
  std::vector<RobotRun> robots_;
  std::map<std::pair<RobotId, int>, double> delays_;
  std::vector<Disturbance> timed_;
  std::map<TaskId, int> incarnation_;
  std::vector<std::map<TaskId, int>> generation_incarnation_;
  std::map<TaskId, TaskAllocation> last_allocation_;
  std::set<std::tuple<TaskId, int, int>> counted_;
  int generation_ = 0;
  bool failed_ = false;
  ExecutionTrace trace_;
};

} // namespace

ExecutionTrace simulate(const Scenario& scenario, const Plan& plan,
  const std::vector<Disturbance>& disturbances, Policy policy)
{
  return Simulation(scenario, plan, disturbances, policy).run();
}

} // namespace mrta
