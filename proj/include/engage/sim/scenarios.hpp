#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "engage/sim/script.hpp"

namespace engage::sim {

// Parameterized builtin scripts. The variant index perturbs doors, paths,
// speeds and dwell times deterministically.

// One participant crosses the room between two doors, passing within a meter
// of the robot, with no wish of interacting.
ScenarioScript pass_by(std::uint32_t variant);

// Enter, wander, walk straight to the robot while speaking, play on the
// tablet, leave.
ScenarioScript approach_interact_leave(std::uint32_t variant);

// Three seated participants chat; one is dispatched to the robot mid-scene.
ScenarioScript cards_multiuser(std::uint32_t variant);

// Several close tangential passes followed by a direct approach; exercises
// single-foot occlusions and identity keeping.
ScenarioScript occlusion_approach(std::uint32_t variant);

std::vector<std::string> builtin_scenario_names();
ScenarioScript builtin_scenario(const std::string& name, std::uint32_t variant);

}  // namespace engage::sim
