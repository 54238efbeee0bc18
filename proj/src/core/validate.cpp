#include "engage/core/validate.hpp"

namespace engage {

std::vector<std::string> validate_frame(const SyncedFrame& frame,
                                        const FeatureManifest& manifest) {
  std::vector<std::string> violations;
  if (frame.features.values.size() != manifest.size()) {
    violations.push_back("length mismatch: " + std::to_string(frame.features.values.size()) +
                         " values under a " + std::to_string(manifest.size()) +
                         "-feature manifest");
    return violations;
  }
  if (frame.t % kTickUs != 0) {
    violations.push_back("timestamp " + std::to_string(frame.t) +
                         " not aligned to the 80 ms master grid");
  }
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    const FeatureDef& f = manifest.at(i);
    if (!frame.features.channel_present(f.channel) &&
        frame.features.values[i] != f.neutral) {
      violations.push_back("neutral violation: " + f.id);
    }
  }
  return violations;
}

}  // namespace engage
