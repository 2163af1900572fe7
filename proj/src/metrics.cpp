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

#include <mrta/metrics.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace mrta {

double consumed_battery(const RobotSchedule& schedule)
{
  double total = 0.0;
  for (const auto& e : schedule.slots)
  {
    if (e.is_empty())
      continue;
    total += e.travel;
    if (!e.is_recharge())
      total += e.wait + e.exec + e.deviation;
  }
  return total;
}

MetricsReport plan_metrics(const Scenario& scenario, const Plan& plan, double computation_time)
{
  MetricsReport m;
  m.objective = compute_objective(scenario, plan);
  m.makespan = makespan(plan);
  m.computation_time = computation_time;

  int active = 0;
  for (const auto& s : plan.schedules)
  {
    const Robot& robot = scenario.robot(s.robot);
    double waits = 0.0;
    bool any = false;
    for (const auto& e : s.slots)
    {
      if (e.is_empty())
        continue;
      any = true;
      waits += e.wait;
      if (e.is_recharge())
        ++m.recharges;
    }
    if (!any)
      continue;
    ++active;
    const double duration = schedule_finish(s, robot.ready_time) - robot.ready_time;
    if (duration > 0.0)
      m.waiting_rate += 100.0 * waits / duration;
    if (m.makespan > 0.0)
      m.workload += 100.0 * schedule_finish(s, robot.ready_time) / m.makespan;
    m.battery_time += consumed_battery(s);
  }
  if (active > 0)
  {
    m.waiting_rate /= active;
    m.workload /= active;
    m.battery_time /= active;
  }

  int variable = 0;
  for (const auto& a : plan.tasks)
  {
    const Task& t = scenario.task(a.task);
    if (t.coalition.kind != CoalitionFlexibility::Kind::Variable || t.coalition.size <= 0)
      continue;
    ++variable;
    m.coalition_deviation += coalition_deviation(t, a.coalition) / t.coalition.size;
  }
  if (variable > 0)
    m.coalition_deviation /= variable;
  return m;
}

namespace {

template <class Get>
Statistic statistic(const std::vector<const MetricsReport*>& reports, Get get)
{
  Statistic s;
  if (reports.empty())
    return s;
  for (const auto* r : reports)
    s.mean += get(*r);
  s.mean /= static_cast<double>(reports.size());
  if (reports.size() > 1)
  {
    double sq = 0.0;
    for (const auto* r : reports)
      sq += (get(*r) - s.mean) * (get(*r) - s.mean);
    s.stddev = std::sqrt(sq / static_cast<double>(reports.size() - 1));
  }
  return s;
}

std::string number(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const char* const header =
  "label,solved,NR,f,f1,f2,f3,f4,Z,WTR,CSD,CBT,WD,CT\n";

void row(std::ostringstream& out, const std::string& label, const MetricsReport& m)
{
  out << label << ",1," << m.recharges << ',' << number(m.objective.f) << ','
      << number(m.objective.f1) << ',' << number(m.objective.f2) << ','
      << number(m.objective.f3) << ',' << number(m.objective.f4) << ','
      << number(m.makespan) << ',' << number(m.waiting_rate) << ','
      << number(m.coalition_deviation) << ',' << number(m.battery_time) << ','
      << number(m.workload) << ',' << number(m.computation_time) << '\n';
}

} // namespace

BatchReport batch_metrics(const std::vector<std::optional<MetricsReport>>& runs)
{
  BatchReport b;
  b.attempts = static_cast<int>(runs.size());
  std::vector<const MetricsReport*> ok;
  for (const auto& r : runs)
  {
    if (r)
      ok.push_back(&*r);
  }
  b.solved = static_cast<int>(ok.size());
  b.defined = b.attempts > 0;
  if (!b.defined)
    return b;
  b.success_rate = 100.0 * b.solved / b.attempts;
  if (!ok.empty())
  {
    const auto with = std::count_if(
      ok.begin(), ok.end(), [](const MetricsReport* r) { return r->recharges > 0; });
    b.recharge_rate = 100.0 * static_cast<double>(with) / static_cast<double>(ok.size());
  }
  b.recharges = statistic(ok, [](const MetricsReport& r) { return double(r.recharges); });
  b.f = statistic(ok, [](const MetricsReport& r) { return r.objective.f; });
  b.f1 = statistic(ok, [](const MetricsReport& r) { return r.objective.f1; });
  b.f2 = statistic(ok, [](const MetricsReport& r) { return r.objective.f2; });
  b.f3 = statistic(ok, [](const MetricsReport& r) { return r.objective.f3; });
  b.f4 = statistic(ok, [](const MetricsReport& r) { return r.objective.f4; });
  b.makespan = statistic(ok, [](const MetricsReport& r) { return r.makespan; });
  b.waiting_rate = statistic(ok, [](const MetricsReport& r) { return r.waiting_rate; });
  b.coalition_deviation =
    statistic(ok, [](const MetricsReport& r) { return r.coalition_deviation; });
  b.battery_time = statistic(ok, [](const MetricsReport& r) { return r.battery_time; });
  b.workload = statistic(ok, [](const MetricsReport& r) { return r.workload; });
  b.computation_time =
    statistic(ok, [](const MetricsReport& r) { return r.computation_time; });
  return b;
}

std::string metrics_csv(const std::vector<std::string>& labels,
  const std::vector<std::optional<MetricsReport>>& runs)
{
  if (labels.size() != runs.size())
    throw std::invalid_argument("metrics_csv: one label per run required");
  std::ostringstream out;
  out << header;
  for (std::size_t i = 0; i < runs.size(); ++i)
  {
    if (runs[i])
      row(out, labels[i], *runs[i]);
    else
      out << labels[i] << ",0,,,,,,,,,,,,\n";
  }
  const auto b = batch_metrics(runs);
  out << "mean," << b.solved << ',' << number(b.recharges.mean) << ',' << number(b.f.mean)
      << ',' << number(b.f1.mean) << ',' << number(b.f2.mean) << ',' << number(b.f3.mean)
      << ',' << number(b.f4.mean) << ',' << number(b.makespan.mean) << ','
      << number(b.waiting_rate.mean) << ',' << number(b.coalition_deviation.mean) << ','
      << number(b.battery_time.mean) << ',' << number(b.workload.mean) << ','
      << number(b.computation_time.mean) << '\n';
  return out.str();
}

} // namespace mrta
