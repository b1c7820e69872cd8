#pragma once

#include <string>
#include <vector>

#include "lmcca/cca.hpp"
#include "lmcca/matrix.hpp"
#include "lmcca/types.hpp"

namespace lmcca {

/// Affinity matrix error: affinity of the prediction minus affinity of the
/// ground truth. Records are aligned by image_id; both datasets are
/// normalized with the ground-truth center/scale so prediction errors do
/// not leak into the normalization itself.
AmeMatrix ame(const Dataset& pred, const Dataset& gt, double ridge = kDefaultRidge,
              int threads = 0);

AmeMatrix ame_of(const AffinityMatrix& pred, const AffinityMatrix& gt);

/// Elementwise population standard deviation over a stack of >= 2 matrices.
AffinityStdMatrix affinity_std(const std::vector<AffinityMatrix>& stack);

struct BlockPairStats {
  std::string block_a;
  std::string block_b;
  long cell_count = 0;  // cells of the submatrix, matrix diagonal excluded
  double mean = 0;
  double min = 0;
  double max = 0;
};

/// Per unordered block pair (self-pairs included), statistics over the
/// corresponding submatrix excluding the matrix diagonal. Pairs whose
/// submatrix is empty (a one-landmark block against itself) are skipped.
std::vector<BlockPairStats> block_summary(const SquareMatrix& m,
                                          const std::vector<ComponentBlock>& blocks);

/// Normalized mean error in percent: mean over images of the mean landmark
/// Euclidean error divided by the inter-ocular distance. The inter-ocular
/// distance is measured between the two eye-group centroids on the
/// ground-truth pixel coordinates.
double nme(const Dataset& pred, const Dataset& gt, const FormatDescriptor& fmt);

}  // namespace lmcca
