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

#ifndef MRTA_REPORT_IO_HPP
#define MRTA_REPORT_IO_HPP

#include <mrta/metrics.hpp>
#include <mrta/repair.hpp>
#include <mrta/simulator.hpp>
#include <mrta/validator.hpp>

#include <json.hpp>

#include <vector>

namespace mrta {

nlohmann::json to_json(const ObjectiveBreakdown& objective);
nlohmann::json to_json(const ValidationReport& report);
nlohmann::json to_json(const MetricsReport& metrics);
nlohmann::json to_json(const RepairResult& result);
nlohmann::json to_json(const ExecutionTrace& trace);

/// Parses an event file: an array (or {"events": [...]}) of
///   {"kind": "delay", "robot": R, "slot": S, "seconds": D}
///   {"kind": "failure", "robot": R, "time": T}
///   {"kind": "new_task", "time": T, "task": {...}}
/// Throws InputError on schema violations, negative times or non-finite
/// delays.
std::vector<Disturbance> disturbances_from_json(const nlohmann::json& j);

} // namespace mrta

#endif // MRTA_REPORT_IO_HPP
