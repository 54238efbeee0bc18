#include "engage/body/face.hpp"

namespace engage::body {

std::optional<FaceFeatures> face_features(const FaceBox& box, int image_width,
                                          int image_height) {
  if (box.size <= 0.0) return std::nullopt;
  if (box.px < 0.0 || box.py < 0.0 || box.px + box.size > image_width ||
      box.py + box.size > image_height) {
    return std::nullopt;
  }
  FaceFeatures f;
  f.face_x = box.px + box.size / 2.0 - image_width / 2.0;
  f.face_y = box.py + box.size / 2.0 - image_height / 2.0;
  f.face_size = box.size;
  return f;
}

std::optional<FaceFeatures> select_face(const std::vector<FaceBox>& boxes, int image_width,
                                        int image_height) {
  const FaceBox* best = nullptr;
  for (const FaceBox& b : boxes) {
    if (best == nullptr || b.size > best->size) best = &b;
  }
  if (best == nullptr) return std::nullopt;
  return face_features(*best, image_width, image_height);
}

}  // namespace engage::body
