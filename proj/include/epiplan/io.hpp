#pragma once

#include <string>

#include "epiplan/encodings.hpp"
#include "epiplan/planner.hpp"

#include <json.hpp>

namespace epiplan {

using nlohmann::json;

LogicSpec logic_from_json(const json& j);
json logic_to_json(const LogicSpec& spec);

// State / action objects need the surrounding task's universe.
EpistemicState state_from_json(const json& j, UniversePtr uni);
json state_to_json(const EpistemicState& s);

Action action_from_json(const json& j, UniversePtr uni);
json action_to_json(const Action& a);

// Full task file.  Validates (L-state initial, L-actions, caps for S5).
PlanningTask task_from_json(const json& j);
json task_to_json(const PlanningTask& t);

PlanningTask load_task_file(const std::string& path);

TwoCounterMachine machine_from_json(const json& j);
TwoCounterMachine load_machine_file(const std::string& path);

}  // namespace epiplan
