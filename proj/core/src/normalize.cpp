#include "lmcca/normalize.hpp"

#include <cmath>

namespace lmcca {

Vec2 centroid(const std::vector<Vec2>& pts) {
  Vec2 c{0, 0};
  for (const Vec2& p : pts) {
    c.x += p.x;
    c.y += p.y;
  }
  double n = static_cast<double>(pts.size());
  return {c.x / n, c.y / n};
}

double rms_radius(const std::vector<Vec2>& pts, Vec2 center) {
  double acc = 0;
  for (const Vec2& p : pts) {
    double dx = p.x - center.x;
    double dy = p.y - center.y;
    acc += dx * dx + dy * dy;
  }
  return std::sqrt(acc / static_cast<double>(pts.size()));
}

namespace {

NormalizedSet apply(const LandmarkSet& set, Vec2 center, double scale) {
  NormalizedSet out;
  out.image_id = set.image_id;
  out.applied_center = center;
  out.applied_scale = scale;
  out.points.reserve(set.points.size());
  for (const Vec2& p : set.points)
    out.points.push_back({(p.x - center.x) / scale, (p.y - center.y) / scale});
  return out;
}

}  // namespace

NormalizedSet normalize(const LandmarkSet& set) {
  if (set.points.empty())
    throw ValidationError("cannot normalize empty landmark set '" + set.image_id + "'");
  Vec2 c = centroid(set.points);
  double r = rms_radius(set.points, c);
  if (!(r > 0) || !std::isfinite(r))
    throw DegenerateDataError("degenerate landmark set '" + set.image_id +
                              "': all points coincident");
  return apply(set, c, r);
}

NormalizedSet normalize_with_reference(const LandmarkSet& set, const LandmarkSet& reference) {
  if (set.points.size() != reference.points.size())
    throw ValidationError("record '" + set.image_id + "' and reference '" + reference.image_id +
                          "' have different landmark counts");
  Vec2 c = centroid(reference.points);
  double r = rms_radius(reference.points, c);
  if (!(r > 0) || !std::isfinite(r))
    throw DegenerateDataError("degenerate reference landmark set '" + reference.image_id + "'");
  return apply(set, c, r);
}

NormalizedDataset normalize_dataset(const Dataset& d) {
  NormalizedDataset out;
  out.format_name = d.format_name;
  out.sets.reserve(d.sets.size());
  for (const LandmarkSet& s : d.sets) out.sets.push_back(normalize(s));
  return out;
}

}  // namespace lmcca
