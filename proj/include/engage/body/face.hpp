#pragma once

#include <optional>
#include <vector>

#include "engage/core/types.hpp"

namespace engage::body {

// Detection box in top-left pixel coordinates (square of side `size`).
struct FaceBox {
  double px = 0.0;
  double py = 0.0;
  double size = 0.0;
};

// Image-centered face position; y grows downward, as in the pixel frame.
struct FaceFeatures {
  double face_x = 0.0;
  double face_y = 0.0;
  double face_size = 0.0;
};

struct FaceRecord {
  Timestamp t = 0;
  FaceBox box;
  int image_width = 640;
  int image_height = 480;
};

// Centers the box on the image midpoint. Rejects (nullopt) boxes that stick
// out of the image.
std::optional<FaceFeatures> face_features(const FaceBox& box, int image_width,
                                          int image_height);

// Frames can carry several detections; the feature set has a single face
// slot, filled from the largest box.
std::optional<FaceFeatures> select_face(const std::vector<FaceBox>& boxes, int image_width,
                                        int image_height);

}  // namespace engage::body
