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

#ifndef MRTA_JSON_IO_HPP
#define MRTA_JSON_IO_HPP

#include <mrta/model.hpp>

#include <json.hpp>

#include <filesystem>
#include <string>

namespace mrta {

nlohmann::json to_json(const Position& p);
nlohmann::json to_json(const Task& task);
nlohmann::json to_json(const Scenario& scenario);

/// Parses one task. Throws InputError on schema violations.
Task task_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Plan& plan);

/// Parses a scenario. N_f and |S| are derived when absent. Throws InputError
/// on schema violations.
Scenario scenario_from_json(const nlohmann::json& j);

/// Parses a plan. Throws InputError on schema violations.
Plan plan_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::filesystem::path& path);

/// Writes @p text to a temporary sibling of @p path and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& text);

std::string to_string(Decomposability d);
std::string to_string(CoalitionFlexibility::Kind k);
std::string to_string(SlotKind k);

} // namespace mrta

#endif // MRTA_JSON_IO_HPP
