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

#ifndef MRTA_GEOMETRY_HPP
#define MRTA_GEOMETRY_HPP

#include <mrta/model.hpp>

#include <cstddef>

namespace mrta {

/// Straight-line travel time of @p robot between two points, in seconds.
double travel_time(const Robot& robot, const Position& from, const Position& to);

/// Index of the station closest to @p from. Ties go to the lowest index.
/// Throws ConfigError when the scenario has no stations.
std::size_t nearest_station_index(const Scenario& scenario, const Position& from);

const Position& nearest_station(const Scenario& scenario, const Position& from);

/// Travel time from @p from to its nearest station.
double time_to_station(
  const Scenario& scenario, const Robot& robot, const Position& from);

} // namespace mrta

#endif // MRTA_GEOMETRY_HPP
