#pragma once

#include <string>
#include <vector>

#include "lmcca/format_search.hpp"
#include "lmcca/matrix.hpp"
#include "lmcca/normalize.hpp"

namespace lmcca {

enum class HeatmapKind { kAffinity, kAme, kStd };

struct RenderSpec {
  HeatmapKind kind = HeatmapKind::kAffinity;
  // Color range. For kAme the range is symmetric about zero; when lo == hi
  // the range is data-driven: [0, 1] for affinity, [0, max] for std,
  // [-max|v|, +max|v|] for AME.
  double lo = 0;
  double hi = 0;
  bool one_based_labels = false;
  std::string title;
};

/// Heatmap SVG. Affinity and std matrices use a sequential dark-blue to
/// bright-yellow map; AME uses a diverging red-white-green map centered at
/// zero. Includes axis index labels and a colorbar. Output is a pure
/// function of the inputs (no timestamps).
std::string heatmap_svg(const SquareMatrix& m, const RenderSpec& spec);

/// Sweep curve SVG: mean line with a +-1 standard deviation band.
std::string curve_svg(const SweepCurve& curve, const std::string& title = "");

/// Mean shape with the selected landmark subset highlighted.
std::string overlay_svg(const std::vector<Vec2>& mean_shape, const std::vector<int>& selected,
                        bool one_based_labels = false);

// Colormap helpers exposed for tests.
struct Rgb {
  int r = 0, g = 0, b = 0;
};
Rgb sequential_color(double t);  // t in [0, 1], dark blue -> bright yellow
Rgb diverging_color(double t);   // t in [-1, 1], red -> white -> green

}  // namespace lmcca
