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

#include <mrta/milp.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

namespace mrta::milp {

namespace {

constexpr double integrality_tolerance = 1e-6;

std::string number(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Appends " + 3 x" style terms, wrapping lines before they get long.
void write_terms(std::ostringstream& out, const Instance& in, const std::vector<Term>& terms)
{
  std::size_t width = 0;
  bool first = true;
  for (const auto& t : terms)
  {
    if (t.coef == 0.0)
      continue;
    std::string piece = t.coef < 0.0 ? " - " : (first ? " " : " + ");
    const double mag = std::abs(t.coef);
    if (mag != 1.0)
      piece += number(mag) + " ";
    piece += in.variables[t.var].name;
    if (width + piece.size() > 200)
    {
      out << "\n  ";
      width = 0;
    }
    out << piece;
    width += piece.size();
    first = false;
  }
  if (first)
    out << " 0 " << in.variables.front().name;
}

double lhs(const std::vector<double>& x, const std::vector<Term>& terms)
{
  double s = 0.0;
  for (const auto& t : terms)
    s += t.coef * x[t.var];
  return s;
}

std::vector<double> dense(const Instance& in, const Assignment& values, bool strict)
{
  std::vector<double> x(in.variables.size(), 0.0);
  for (std::size_t i = 0; i < in.variables.size(); ++i)
  {
    const auto& v = in.variables[i];
    const auto it = values.find(v.name);
    if (it == values.end())
    {
      if (strict)
        throw DecodeError("missing value for " + v.name);
      continue;
    }
    x[i] = it->second;
  }
  return x;
}

} // namespace

std::string export_lp(const Instance& in)
{
  const auto report = size_report(in);
  std::ostringstream out;
  out << "\\ variables " << report.variables << " (integer " << report.integer_variables
      << ", real " << report.real_variables << ")\n";
  out << "\\ constraints " << report.constraints << "\n";
  out << "\\ robots " << in.scenario.robots.size() << ", tasks " << in.scenario.tasks.size()
      << ", slots " << in.slots << ", fragments " << in.max_fragments << "\n";
  for (const auto& w : in.warnings)
    out << "\\ warning: " << w << "\n";

  out << "Minimize\n obj:";
  write_terms(out, in, in.objective);
  out << "\nSubject To\n";
  for (const auto& c : in.constraints)
  {
    out << " " << c.name << ":";
    write_terms(out, in, c.terms);
    switch (c.sense)
    {
      case Sense::LessEqual:
        out << " <= ";
        break;
      case Sense::GreaterEqual:
        out << " >= ";
        break;
      case Sense::Equal:
        out << " = ";
        break;
    }
    out << number(c.rhs) << "\n";
  }
  out << "Bounds\n";
  for (const auto& v : in.variables)
  {
    if (v.kind == VarKind::Binary)
      continue;
    out << " " << number(v.lower) << " <= " << v.name << " <= " << number(v.upper) << "\n";
  }
  const auto list = [&](const char* header, VarKind kind) {
    out << header << "\n";
    std::size_t width = 0;
    for (const auto& v : in.variables)
    {
      if (v.kind != kind)
        continue;
      if (width + v.name.size() > 200)
      {
        out << "\n";
        width = 0;
      }
      out << " " << v.name;
      width += v.name.size() + 1;
    }
    out << "\n";
  };
  list("Binaries", VarKind::Binary);
  list("Generals", VarKind::Integer);
  out << "End\n";
  return out.str();
}

double evaluate_objective(const Instance& in, const Assignment& values)
{
  return lhs(dense(in, values, false), in.objective);
}

double max_violation(const Instance& in, const Assignment& values)
{
  const auto x = dense(in, values, false);
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    const auto& v = in.variables[i];
    worst = std::max({worst, v.lower - x[i], x[i] - v.upper});
    if (v.kind != VarKind::Real)
      worst = std::max(worst, std::abs(x[i] - std::round(x[i])));
  }
  for (const auto& c : in.constraints)
  {
    const double d = lhs(x, c.terms) - c.rhs;
    switch (c.sense)
    {
      case Sense::LessEqual:
        worst = std::max(worst, d);
        break;
      case Sense::GreaterEqual:
        worst = std::max(worst, -d);
        break;
      case Sense::Equal:
        worst = std::max(worst, std::abs(d));
        break;
    }
  }
  return worst;
}

Assignment read_assignment(const std::string& text)
{
  Assignment values;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line))
  {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream fields(line);
    std::string name;
    if (!(fields >> name))
      continue;
    double value = 0.0;
    std::string extra;
    if (!(fields >> value) || (fields >> extra))
      throw InputError("assignment line " + std::to_string(number) + ": expected 'name value'");
    values[name] = value;
  }
  return values;
}

Plan decode_solution(const Instance& in, const Assignment& values)
{
  auto x = dense(in, values, true);
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    const auto& v = in.variables[i];
    if (v.kind == VarKind::Real)
      continue;
    const double r = std::round(x[i]);
    if (std::abs(x[i] - r) > integrality_tolerance)
      throw DecodeError("fractional value " + number(x[i]) + " for " + v.name);
    x[i] = r;
  }

  const Scenario& sc = in.scenario;
  const int n = static_cast<int>(sc.robots.size());
  const int m = static_cast<int>(sc.tasks.size());
  const int S = in.slots;

  // Per-slot task and timing, indexed [robot][slot-1].
  std::vector<std::vector<int>> task_at(static_cast<std::size_t>(n),
    std::vector<int>(static_cast<std::size_t>(S), -1));
  struct Timing
  {
    double wait = 0, travel = 0, exec = 0, finish = 0, battery = 0;
  };
  std::vector<std::vector<Timing>> timing(static_cast<std::size_t>(n),
    std::vector<Timing>(static_cast<std::size_t>(S)));
  std::vector<int> fragments(static_cast<std::size_t>(m), 1);
  std::vector<int> coalition(static_cast<std::size_t>(m), 1);
  struct Pair
  {
    int task, r1, s1, r2, s2;
  };
  std::vector<Pair> synch;
  std::vector<Pair> relay;

  for (std::size_t i = 0; i < x.size(); ++i)
  {
    const auto& mean = in.variables[i].meaning;
    const auto ur = static_cast<std::size_t>(mean.robot);
    const auto us = static_cast<std::size_t>(mean.slot - 1);
    switch (mean.role)
    {
      case Meaning::Role::Assign:
        if (x[i] > 0.5)
          task_at[ur][us] = mean.task;
        break;
      case Meaning::Role::Fragments:
        fragments[static_cast<std::size_t>(mean.task)] = static_cast<int>(x[i]);
        break;
      case Meaning::Role::Coalition:
        coalition[static_cast<std::size_t>(mean.task)] = static_cast<int>(x[i]);
        break;
      case Meaning::Role::Wait:
        timing[ur][us].wait = x[i];
        break;
      case Meaning::Role::Travel:
        timing[ur][us].travel = x[i];
        break;
      case Meaning::Role::Exec:
        timing[ur][us].exec = x[i];
        break;
      case Meaning::Role::Finish:
        timing[ur][us].finish = x[i];
        break;
      case Meaning::Role::Battery:
        timing[ur][us].battery = x[i];
        break;
      case Meaning::Role::Synch:
        if (x[i] > 0.5 && std::make_pair(mean.robot, mean.slot)
            < std::make_pair(mean.robot2, mean.slot2))
          synch.push_back({mean.task, mean.robot, mean.slot, mean.robot2, mean.slot2});
        break;
      case Meaning::Role::Relay:
        if (x[i] > 0.5)
          relay.push_back({mean.task, mean.robot, mean.slot, mean.robot2, mean.slot2});
        break;
      default:
        break;
    }
  }

  // Fragment indices: slots of a task joined by synchronization form one
  // fragment; fragments are numbered by execution start.
  std::map<std::pair<int, int>, int> fragment_of;
  {
    std::map<std::pair<int, int>, std::pair<int, int>> parent;
    const std::function<std::pair<int, int>(std::pair<int, int>)> root =
      [&](std::pair<int, int> k) {
        auto it = parent.find(k);
        if (it == parent.end() || it->second == k)
          return k;
        return it->second = root(it->second);
      };
    for (const auto& p : synch)
      parent[root({p.r2, p.s2})] = root({p.r1, p.s1});
    for (int t = 0; t < m; ++t)
    {
      std::map<std::pair<int, int>, double> start;
      for (int r = 0; r < n; ++r)
        for (int s = 1; s <= S; ++s)
        {
          if (task_at[static_cast<std::size_t>(r)][static_cast<std::size_t>(s - 1)] != t)
            continue;
          const auto& tm = timing[static_cast<std::size_t>(r)][static_cast<std::size_t>(s - 1)];
          const auto key = root({r, s});
          const double begin = tm.finish - tm.exec;
          const auto it = start.find(key);
          start[key] = it == start.end() ? begin : std::min(it->second, begin);
        }
      std::vector<std::pair<double, std::pair<int, int>>> order;
      for (const auto& [key, begin] : start)
        order.push_back({begin, key});
      std::sort(order.begin(), order.end());
      std::map<std::pair<int, int>, int> rank;
      for (std::size_t i = 0; i < order.size(); ++i)
        rank[order[i].second] = std::min(static_cast<int>(i) + 1,
          std::max(1, fragments[static_cast<std::size_t>(t)]));
      for (int r = 0; r < n; ++r)
        for (int s = 1; s <= S; ++s)
          if (task_at[static_cast<std::size_t>(r)][static_cast<std::size_t>(s - 1)] == t)
            fragment_of[{r, s}] = rank.at(root({r, s}));
    }
  }

  Plan plan;
  for (int r = 0; r < n; ++r)
  {
    const auto& robot = sc.robots[static_cast<std::size_t>(r)];
    RobotSchedule schedule{robot.id, {}};
    Position here = robot.start;
    for (int s = 1; s <= S; ++s)
    {
      const int t = task_at[static_cast<std::size_t>(r)][static_cast<std::size_t>(s - 1)];
      if (t < 0)
        continue;
      const auto& tm = timing[static_cast<std::size_t>(r)][static_cast<std::size_t>(s - 1)];
      SlotEntry e;
      e.slot = s - 1;
      e.travel = tm.travel;
      e.wait = tm.wait;
      e.exec = tm.exec;
      e.finish = tm.finish;
      e.battery = tm.battery;
      e.pre_location = here;
      if (t == m)
      {
        e.kind = SlotKind::Recharge;
        e.post_location = sc.stations.front();
      }
      else
      {
        e.kind = SlotKind::Task;
        e.task = sc.tasks[static_cast<std::size_t>(t)].id;
        e.fragment = fragment_of.at({r, s});
        e.post_location = sc.tasks[static_cast<std::size_t>(t)].location;
      }
      here = e.post_location;
      schedule.slots.push_back(e);
    }
    plan.schedules.push_back(std::move(schedule));
  }

  const auto ref = [&](int r, int s) {
    return SlotRef{sc.robots[static_cast<std::size_t>(r)].id, s - 1};
  };
  for (const auto& p : synch)
  {
    CoordinationLink l;
    l.kind = CoordinationLink::Kind::Synch;
    l.members = {ref(p.r1, p.s1), ref(p.r2, p.s2)};
    plan.links.push_back(std::move(l));
  }
  for (const auto& p : relay)
  {
    CoordinationLink l;
    l.kind = CoordinationLink::Kind::Relay;
    l.predecessors = {ref(p.r1, p.s1)};
    l.successors = {ref(p.r2, p.s2)};
    plan.links.push_back(std::move(l));
  }
  for (int t = 0; t < m; ++t)
  {
    TaskAllocation a;
    a.task = sc.tasks[static_cast<std::size_t>(t)].id;
    a.fragments = fragments[static_cast<std::size_t>(t)];
    a.coalition = coalition[static_cast<std::size_t>(t)];
    plan.tasks.push_back(a);
  }
  refresh_counts(plan);
  return plan;
}

} // namespace mrta::milp
