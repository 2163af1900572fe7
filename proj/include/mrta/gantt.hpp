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

#ifndef MRTA_GANTT_HPP
#define MRTA_GANTT_HPP

#include <mrta/model.hpp>

#include <string>

namespace mrta {

struct GanttOptions
{
  double width = 1200.0;
  double lane_height = 28.0;
  std::string title;
};

/// Standalone SVG with one lane per robot. Travel, wait, execution, recharge
/// and realized deviation segments get distinct colours; synch links are
/// drawn as vertical connectors at the common start, relays as connectors
/// from the relayed fragment's end to the successor's start.
std::string render_gantt_svg(const Plan& plan, const GanttOptions& options = {});

} // namespace mrta

#endif // MRTA_GANTT_HPP
