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

#include <mrta/repair.hpp>

#include <mrta/validator.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>

namespace mrta {

namespace {

constexpr double tolerance = 1e-6;

std::size_t schedule_index(const Plan& plan, RobotId id)
{
  for (std::size_t i = 0; i < plan.schedules.size(); ++i)
  {
    if (plan.schedules[i].robot == id)
      return i;
  }
  throw PlanStructureError("no schedule for robot " + std::to_string(id.value));
}

SlotEntry* entry(RobotSchedule& s, int slot)
{
  for (auto& e : s.slots)
  {
    if (e.slot == slot && !e.is_empty())
      return &e;
  }
  return nullptr;
}

int last_index(const RobotSchedule& s)
{
  int last = -1;
  for (const auto& e : s.slots)
  {
    if (!e.is_empty())
      last = std::max(last, e.slot);
  }
  return last;
}

double start_of(const SlotEntry& e)
{
  return e.planned_finish() - e.exec;
}

// Both coordination updates share this body; a synchronization is a relay
// point without relayed robots.
void coordinate(Plan& plan, const std::vector<SlotRef>& relayed,
  const std::vector<SlotRef>& relaying, RepairState& state)
{
  for (const auto& ref : relaying)
    update_time_vars(plan, schedule_index(plan, ref.robot), ref.slot - 1, state);
  for (const auto& ref : relayed)
    update_time_vars(plan, schedule_index(plan, ref.robot), ref.slot, state);

  for (const auto& ref : relaying)
  {
    const auto r = schedule_index(plan, ref.robot);
    if (state.last_slot[r] >= ref.slot)
      continue;
    SlotEntry* e = entry(plan.schedules[r], ref.slot);
    double d = state.delay[r];
    if (e && state.delayed.count(r))
    {
      if (e->wait > d)
      {
        e->wait -= d;
        d = 0.0;
      }
      else
      {
        d -= e->wait;
        e->wait = 0.0;
        e->finish += d;
      }
    }
    state.last_slot[r] = ref.slot;
    state.delay[r] = d;
  }

  // Earliest participating slot of every robot: padding goes there so that
  // a robot relaying itself keeps both of its slots aligned.
  std::map<std::size_t, int> first;
  for (const auto* list : {&relayed, &relaying})
  {
    for (const auto& ref : *list)
    {
      const auto r = schedule_index(plan, ref.robot);
      const auto it = first.find(r);
      if (it == first.end() || ref.slot < it->second)
        first[r] = ref.slot;
    }
  }
  // Executed slots keep their scheduled coordination instant; the delay a
  // robot carries out of them belongs to its later slots.
  const auto carried = [&](std::size_t r, int s) {
    return s <= state.executed[r] ? 0.0 : state.delay[r];
  };
  double latest = 0.0;
  for (const auto& [r, s] : first)
    latest = std::max(latest, carried(r, s));

  if (latest <= 0.0)
  {
    for (const auto& [r, s] : first)
    {
      if (s > state.executed[r])
        state.delayed.erase(r);
    }
    return;
  }
  for (const auto& [r, s] : first)
  {
    if (s <= state.executed[r])
    {
      if (latest > 0.0)
        state.broken = true;
      continue;
    }
    const double pad = latest - state.delay[r];
    if (pad > 0.0)
    {
      // Wait on the ground when a recharge precedes the slot and nothing
      // coordinated lies in between.
      int at = s;
      const RobotId id = plan.schedules[r].robot;
      for (int k = s - 1; k > state.executed[r]; --k)
      {
        const SlotEntry* e = entry(plan.schedules[r], k);
        if (!e || state.coordinated.count({id, k}))
          break;
        if (e->is_recharge())
        {
          at = k;
          break;
        }
      }
      for (int k = at; k <= state.last_slot[r]; ++k)
      {
        if (SlotEntry* e = entry(plan.schedules[r], k))
        {
          if (k == at)
            e->wait += pad;
          e->finish += pad;
        }
      }
    }
    state.delay[r] = latest;
    state.delayed.insert(r);
  }
}

} // namespace

std::vector<int> executed_slots(const Plan& plan, double t0)
{
  std::vector<int> out;
  for (const auto& s : plan.schedules)
  {
    int last = -1;
    for (const auto& e : s.slots)
    {
      if (!e.is_empty() && e.finish <= t0 + tolerance)
        last = std::max(last, e.slot);
    }
    out.push_back(last);
  }
  return out;
}

std::vector<CoordinationPoint> coordination_points(const Plan& plan,
  const std::vector<int>& executed)
{
  const auto pending = [&](const SlotRef& ref) {
    return ref.slot > executed[schedule_index(plan, ref.robot)];
  };
  const auto slot_at = [&](const SlotRef& ref) -> const SlotEntry& {
    const SlotEntry* e = plan.slot(ref);
    if (!e)
      throw PlanStructureError("link refers to a missing slot");
    return *e;
  };

  std::vector<CoordinationPoint> points;

  // Synchronizations: union of links sharing a slot.
  std::map<SlotRef, SlotRef> parent;
  const auto find = [&](SlotRef a) {
    while (parent.at(a) != a)
      a = parent[a] = parent.at(parent.at(a));
    return a;
  };
  for (const auto& l : plan.links)
  {
    if (l.kind != CoordinationLink::Kind::Synch)
      continue;
    for (const auto& m : l.members)
      parent.emplace(m, m);
    for (std::size_t i = 1; i < l.members.size(); ++i)
      parent[find(l.members[i])] = find(l.members.front());
  }
  std::map<SlotRef, std::vector<SlotRef>> groups;
  for (const auto& [ref, p] : parent)
    groups[find(ref)].push_back(ref);
  for (auto& [root, members] : groups)
  {
    if (std::none_of(members.begin(), members.end(), pending))
      continue;
    CoordinationPoint c;
    c.kind = CoordinationLink::Kind::Synch;
    c.task = slot_at(root).task;
    c.time = start_of(slot_at(root));
    c.relaying = members;
    points.push_back(std::move(c));
  }

  // Relays: one point per task and instant.
  std::vector<CoordinationPoint> relays;
  for (const auto& l : plan.links)
  {
    if (l.kind != CoordinationLink::Kind::Relay || l.successors.empty())
      continue;
    const auto& head = slot_at(l.successors.front());
    const double instant = start_of(head);
    auto it = std::find_if(relays.begin(), relays.end(), [&](const CoordinationPoint& c) {
      return c.task == head.task && std::abs(c.time - instant) <= tolerance;
    });
    if (it == relays.end())
    {
      CoordinationPoint c;
      c.kind = CoordinationLink::Kind::Relay;
      c.task = head.task;
      c.time = instant;
      relays.push_back(c);
      it = std::prev(relays.end());
    }
    for (const auto& p : l.predecessors)
    {
      if (std::find(it->relayed.begin(), it->relayed.end(), p) == it->relayed.end())
        it->relayed.push_back(p);
    }
    for (const auto& s : l.successors)
    {
      if (std::find(it->relaying.begin(), it->relaying.end(), s) == it->relaying.end())
        it->relaying.push_back(s);
    }
  }
  for (auto& c : relays)
  {
    if (std::any_of(c.relaying.begin(), c.relaying.end(), pending)
      || std::any_of(c.relayed.begin(), c.relayed.end(), pending))
      points.push_back(std::move(c));
  }

  // Time order, made consistent with every robot's slot order: a point is
  // released once all points on earlier slots of its robots are done.
  const auto before = [&](std::size_t a, std::size_t b) {
    const auto& x = points[a];
    const auto& y = points[b];
    if (std::abs(x.time - y.time) > tolerance)
      return x.time < y.time;
    if (x.task != y.task)
      return x.task < y.task;
    return x.kind == CoordinationLink::Kind::Relay && y.kind == CoordinationLink::Kind::Synch;
  };
  std::map<RobotId, std::vector<std::pair<int, std::size_t>>> per_robot;
  for (std::size_t i = 0; i < points.size(); ++i)
  {
    std::map<RobotId, int> lowest;
    for (const auto* list : {&points[i].relayed, &points[i].relaying})
    {
      for (const auto& ref : *list)
      {
        const auto it = lowest.find(ref.robot);
        if (it == lowest.end() || ref.slot < it->second)
          lowest[ref.robot] = ref.slot;
      }
    }
    for (const auto& [robot, slot] : lowest)
      per_robot[robot].push_back({slot, i});
  }
  std::vector<std::set<std::size_t>> after(points.size());
  std::vector<int> blockers(points.size(), 0);
  for (auto& [robot, list] : per_robot)
  {
    std::sort(list.begin(), list.end());
    for (std::size_t k = 1; k < list.size(); ++k)
    {
      if (list[k - 1].second != list[k].second
        && after[list[k - 1].second].insert(list[k].second).second)
        ++blockers[list[k].second];
    }
  }
  const auto later = [&](std::size_t a, std::size_t b) { return before(b, a); };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(later)> ready(later);
  for (std::size_t i = 0; i < points.size(); ++i)
  {
    if (blockers[i] == 0)
      ready.push(i);
  }
  std::vector<CoordinationPoint> ordered;
  std::vector<bool> done(points.size(), false);
  while (ordered.size() < points.size())
  {
    std::size_t next = 0;
    if (!ready.empty())
    {
      next = ready.top();
      ready.pop();
    }
    else
    {
      // Only reachable for inconsistent plans; fall back to time order.
      std::vector<std::size_t> rest;
      for (std::size_t i = 0; i < points.size(); ++i)
        if (!done[i])
          rest.push_back(i);
      next = *std::min_element(rest.begin(), rest.end(), before);
    }
    if (done[next])
      continue;
    done[next] = true;
    ordered.push_back(points[next]);
    for (const auto n : after[next])
    {
      if (--blockers[n] == 0 && !done[n])
        ready.push(n);
    }
  }
  return ordered;
}

void update_time_vars(Plan& plan, std::size_t robot, int s_f, RepairState& state)
{
  auto& schedule = plan.schedules[robot];
  s_f = std::min(s_f, last_index(schedule));
  if (state.last_slot[robot] >= s_f)
    return;
  int s = state.last_slot[robot];
  double d = state.delay[robot];
  while (s < s_f && d > 0.0)
  {
    ++s;
    SlotEntry* e = entry(schedule, s);
    if (!e)
      continue;
    if (e->wait > 0.0)
    {
      if (e->wait > d)
      {
        e->wait -= d;
        d = 0.0;
      }
      else
      {
        d -= e->wait;
        e->wait = 0.0;
      }
    }
    e->finish += d;
  }
  state.last_slot[robot] = s_f;
  state.delay[robot] = d;
  if (d == 0.0)
    state.delayed.erase(robot);
}

void update_synch_task(Plan& plan, const std::vector<SlotRef>& members, RepairState& state)
{
  coordinate(plan, {}, members, state);
}

void update_relay_task(Plan& plan, const std::vector<SlotRef>& relayed,
  const std::vector<SlotRef>& relaying, RepairState& state)
{
  coordinate(plan, relayed, relaying, state);
}

bool refresh_battery(const Robot& robot, RobotSchedule& schedule)
{
  std::vector<SlotEntry*> active;
  for (auto& e : schedule.slots)
  {
    if (!e.is_empty())
      active.push_back(&e);
  }
  std::stable_sort(active.begin(), active.end(),
    [](const SlotEntry* a, const SlotEntry* b) { return a->slot < b->slot; });
  double battery = robot.battery_initial;
  bool previous_recharge = false;
  bool ok = true;
  for (auto* e : active)
  {
    const double carried = previous_recharge ? 0.0 : battery;
    e->battery =
      carried + e->travel + (e->is_recharge() ? 0.0 : e->wait + e->exec + e->deviation);
    if (e->battery > robot.battery_budget() + tolerance)
      ok = false;
    battery = e->battery;
    previous_recharge = e->is_recharge();
  }
  return ok;
}

RepairResult repair_plans(const Scenario& scenario, const Plan& plan, RobotId robot, int slot,
  double delay, std::vector<int> executed)
{
  RepairResult result;
  result.plan = plan;
  const auto fail = [&](std::string why) {
    result.success = false;
    result.plan = plan;
    result.reason = std::move(why);
    result.makespan_increase = 0.0;
    return result;
  };

  Plan work = plan;
  const auto rd = schedule_index(work, robot);
  SlotEntry* done = entry(work.schedules[rd], slot);
  if (!done)
    throw PlanStructureError("robot " + std::to_string(robot.value) + " has no slot "
      + std::to_string(slot));
  if (!std::isfinite(delay))
    throw InputError("delay must be finite");

  if (executed.empty())
    executed = executed_slots(work, done->finish + delay);
  if (executed.size() != work.schedules.size())
    throw InputError("executed slot list does not match the plan");
  executed[rd] = slot;

  done->finish += delay;
  done->deviation += delay;

  if (delay <= 0.0)
  {
    // Ahead of schedule: wait before the next slot.
    if (SlotEntry* next = entry(work.schedules[rd], slot + 1))
    {
      next->wait += -delay;
    }
  }
  else
  {
    RepairState state;
    state.last_slot = executed;
    state.executed = executed;
    state.delay.assign(work.schedules.size(), 0.0);
    state.delay[rd] = delay;
    state.delayed.insert(rd);

    const auto points = coordination_points(work, executed);
    for (const auto& c : points)
    {
      state.coordinated.insert(c.relayed.begin(), c.relayed.end());
      state.coordinated.insert(c.relaying.begin(), c.relaying.end());
    }
    for (const auto& c : points)
    {
      coordinate(work, c.relayed, c.relaying, state);
      if (state.broken)
        return fail("a coordination point would move an executed slot");
      if (state.delayed.empty())
        break;
    }
    const std::vector<std::size_t> remaining(state.delayed.begin(), state.delayed.end());
    for (const auto r : remaining)
      update_time_vars(work, r, last_index(work.schedules[r]), state);
  }

  for (auto& s : work.schedules)
  {
    if (!refresh_battery(scenario.robot(s.robot), s))
      return fail("battery limit exceeded by robot " + std::to_string(s.robot.value));
  }
  const auto report = validate_plan(scenario, work);
  if (!report.valid)
  {
    const auto& v = report.violations.front();
    return fail("repaired plan violates " + v.family + " (" + v.location + ")");
  }

  result.success = true;
  result.makespan_increase = makespan(work) - makespan(plan);
  result.plan = std::move(work);
  return result;
}

} // namespace mrta
