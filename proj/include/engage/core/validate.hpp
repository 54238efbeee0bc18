#pragma once

#include <string>
#include <vector>

#include "engage/core/manifest.hpp"
#include "engage/core/types.hpp"

namespace engage {

// Empty iff the frame satisfies the type invariants: vector arity matches the
// manifest, every feature of an absent channel holds its neutral value, and
// the timestamp lies on the 80 ms master grid.
std::vector<std::string> validate_frame(const SyncedFrame& frame,
                                        const FeatureManifest& manifest);

}  // namespace engage
