#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "engage/core/manifest.hpp"
#include "engage/core/types.hpp"

namespace engage::io {

// Fused dataset CSV: optional '#' header comments, then a header row with the
// manifest ids in order plus `t` and `label`, then one row per synced frame.
// Doubles are written in shortest round-trip form, so replay is byte-exact.

void write_fused_csv(const std::filesystem::path& path,
                     const std::vector<SyncedFrame>& frames,
                     const FeatureManifest& manifest, const std::string& header_comment);

struct FusedDataset {
  std::vector<SyncedFrame> frames;
  Edition edition = Edition::Selected32;
};

FusedDataset read_fused_csv(const std::filesystem::path& path);

std::string format_double(double v);

}  // namespace engage::io
