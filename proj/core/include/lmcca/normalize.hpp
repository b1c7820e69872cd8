#pragma once

#include <vector>

#include "lmcca/types.hpp"

namespace lmcca {

/// A landmark set with translation and scale removed: centroid at the
/// origin, RMS radius 1. Rotation and non-uniform deformation survive.
struct NormalizedSet {
  std::string image_id;
  std::vector<Vec2> points;
  Vec2 applied_center;    // centroid subtracted, in px
  double applied_scale = 1.0;  // RMS radius divided out, in px
};

struct NormalizedDataset {
  std::string format_name;
  std::vector<NormalizedSet> sets;

  std::size_t num_images() const { return sets.size(); }
  std::size_t num_landmarks() const { return sets.empty() ? 0 : sets.front().points.size(); }
};

/// Centroid of a point set.
Vec2 centroid(const std::vector<Vec2>& pts);

/// Root-mean-square distance of the points to `center`.
double rms_radius(const std::vector<Vec2>& pts, Vec2 center);

/// Removes translation (centroid) and scale (RMS radius). Throws
/// DegenerateDataError when all points coincide.
NormalizedSet normalize(const LandmarkSet& set);

/// Normalizes `set` with center/scale measured on `reference` instead of on
/// itself. Used for predictions paired with ground truth, so prediction
/// errors do not leak into the normalization statistics.
NormalizedSet normalize_with_reference(const LandmarkSet& set, const LandmarkSet& reference);

NormalizedDataset normalize_dataset(const Dataset& d);

}  // namespace lmcca
