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

#include <mrta/gantt.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace mrta {

namespace {

const char* const travel_colour = "#9ecae1";
const char* const wait_colour = "#fdd0a2";
const char* const exec_colour = "#31a354";
const char* const recharge_colour = "#756bb1";
const char* const deviation_colour = "#de2d26";

std::string fmt(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s)
{
  std::string out;
  for (const char c : s)
  {
    switch (c)
    {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// 1, 2 or 5 times a power of ten, giving at most ~10 ticks.
double tick_step(double span)
{
  if (span <= 0.0)
    return 1.0;
  const double raw = span / 10.0;
  const double base = std::pow(10.0, std::floor(std::log10(raw)));
  for (const double m : {1.0, 2.0, 5.0})
  {
    if (base * m >= raw)
      return base * m;
  }
  return base * 10.0;
}

} // namespace

std::string render_gantt_svg(const Plan& plan, const GanttOptions& options)
{
  const double left = 80.0;
  const double right = 20.0;
  const double top = options.title.empty() ? 20.0 : 44.0;
  const double lane = options.lane_height;
  const double legend = 30.0;
  const double axis = 30.0;

  double span = 0.0;
  double origin = 0.0;
  bool any = false;
  for (const auto& s : plan.schedules)
  {
    for (const auto& e : s.slots)
    {
      if (e.is_empty())
        continue;
      const double start = e.exec_start() - e.wait - e.travel;
      origin = any ? std::min(origin, start) : start;
      span = std::max(span, e.finish);
      any = true;
    }
  }
  origin = std::min(origin, 0.0);
  span = std::max(span - origin, 1.0);

  const double plot = std::max(options.width - left - right, 100.0);
  const auto x = [&](double t) { return left + (t - origin) / span * plot; };
  std::map<RobotId, double> lane_y;
  for (std::size_t i = 0; i < plan.schedules.size(); ++i)
    lane_y[plan.schedules[i].robot] = top + static_cast<double>(i) * lane;

  const double height = top + lane * static_cast<double>(plan.schedules.size()) + axis + legend;
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(options.width)
    + "\" height=\"" + fmt(height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!options.title.empty())
    svg += "<text x=\"" + fmt(left) + "\" y=\"24\" font-size=\"14\">" + escape(options.title) + "</text>\n";

  const auto rect = [&](double t0, double t1, double y, const char* colour, const std::string& tip)
  {
    if (t1 - t0 <= 0.0)
      return;
    svg += "<rect x=\"" + fmt(x(t0)) + "\" y=\"" + fmt(y + 4) + "\" width=\""
      + fmt(std::max(x(t1) - x(t0), 0.5)) + "\" height=\"" + fmt(lane - 8) + "\" fill=\"" + colour
      + "\"><title>" + escape(tip) + "</title></rect>\n";
  };

  for (const auto& s : plan.schedules)
  {
    const double y = lane_y[s.robot];
    svg += "<text x=\"8\" y=\"" + fmt(y + lane / 2 + 4) + "\">robot " + std::to_string(s.robot.value) + "</text>\n";
    svg += "<line x1=\"" + fmt(left) + "\" y1=\"" + fmt(y + lane) + "\" x2=\"" + fmt(left + plot)
      + "\" y2=\"" + fmt(y + lane) + "\" stroke=\"#eee\"/>\n";
    for (const auto& e : s.slots)
    {
      if (e.is_empty())
        continue;
      const double exec0 = e.exec_start();
      const double wait0 = exec0 - e.wait;
      const double travel0 = wait0 - e.travel;
      const std::string what = e.is_task()
        ? "task " + std::to_string(e.task.value) + " fragment " + std::to_string(e.fragment)
        : std::string("recharge");
      rect(travel0, wait0, y, travel_colour, "travel to " + what);
      rect(wait0, exec0, y, wait_colour, "wait before " + what);
      rect(exec0, e.planned_finish(), y, e.is_task() ? exec_colour : recharge_colour, what);
      if (e.deviation > 0.0)
        rect(e.planned_finish(), e.finish, y, deviation_colour, "delay on " + what);
      if (e.is_task() && x(e.planned_finish()) - x(exec0) > 24.0)
      {
        svg += "<text x=\"" + fmt(x(exec0) + 2) + "\" y=\"" + fmt(y + lane / 2 + 4)
          + "\" fill=\"white\">" + std::to_string(e.task.value) + "." + std::to_string(e.fragment)
          + "</text>\n";
      }
    }
  }

  const auto connector = [&](double t, double y0, double y1, const char* colour, const char* dash)
  {
    svg += "<line x1=\"" + fmt(x(t)) + "\" y1=\"" + fmt(y0) + "\" x2=\"" + fmt(x(t)) + "\" y2=\""
      + fmt(y1) + "\" stroke=\"" + colour + "\" stroke-width=\"1.5\"" + dash + "/>\n";
  };
  for (const auto& l : plan.links)
  {
    if (l.kind == CoordinationLink::Kind::Synch)
    {
      double lo = 1e300, hi = -1e300, t = 0.0;
      for (const auto& m : l.members)
      {
        const auto* e = plan.slot(m);
        if (!e || !lane_y.count(m.robot))
          continue;
        t = e->exec_start();
        lo = std::min(lo, lane_y[m.robot] + lane / 2);
        hi = std::max(hi, lane_y[m.robot] + lane / 2);
      }
      if (hi > lo)
        connector(t, lo, hi, "black", "");
      continue;
    }
    for (std::size_t k = 0; k < l.predecessors.size() && k < l.successors.size(); ++k)
    {
      const auto* a = plan.slot(l.predecessors[k]);
      const auto* b = plan.slot(l.successors[k]);
      if (!a || !b || l.predecessors[k].robot == l.successors[k].robot)
        continue;
      const double ya = lane_y[l.predecessors[k].robot] + lane / 2;
      const double yb = lane_y[l.successors[k].robot] + lane / 2;
      connector(b->exec_start(), std::min(ya, yb), std::max(ya, yb), "#555", " stroke-dasharray=\"4 3\"");
    }
  }

  const double axis_y = top + lane * static_cast<double>(plan.schedules.size());
  svg += "<line x1=\"" + fmt(left) + "\" y1=\"" + fmt(axis_y) + "\" x2=\"" + fmt(left + plot)
    + "\" y2=\"" + fmt(axis_y) + "\" stroke=\"black\"/>\n";
  const double step = tick_step(span);
  for (double t = std::ceil(origin / step) * step; t <= origin + span + 1e-9; t += step)
  {
    svg += "<line x1=\"" + fmt(x(t)) + "\" y1=\"" + fmt(axis_y) + "\" x2=\"" + fmt(x(t)) + "\" y2=\""
      + fmt(axis_y + 4) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(x(t)) + "\" y=\"" + fmt(axis_y + 16) + "\" text-anchor=\"middle\">"
      + fmt(t).substr(0, fmt(t).find('.')) + "</text>\n";
  }

  double lx = left;
  const double ly = axis_y + axis;
  for (const auto& [colour, name] : {std::pair{travel_colour, "travel"}, {wait_colour, "wait"},
         {exec_colour, "execution"}, {recharge_colour, "recharge"}, {deviation_colour, "delay"}})
  {
    svg += "<rect x=\"" + fmt(lx) + "\" y=\"" + fmt(ly) + "\" width=\"12\" height=\"12\" fill=\""
      + colour + "\"/><text x=\"" + fmt(lx + 16) + "\" y=\"" + fmt(ly + 10) + "\">" + name + "</text>\n";
    lx += 90.0;
  }
  svg += "</svg>\n";
  return svg;
}

} // namespace mrta
