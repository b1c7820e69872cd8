#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "lmcca/types.hpp"

namespace lmcca {

/// Dense square matrix of doubles, row-major.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int size, double fill = 0.0)
      : size_(size), data_(static_cast<std::size_t>(size) * size, fill) {}

  int size() const { return size_; }
  double& at(int i, int j) { return data_[static_cast<std::size_t>(i) * size_ + j]; }
  double at(int i, int j) const { return data_[static_cast<std::size_t>(i) * size_ + j]; }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool all_finite() const {
    for (double v : data_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  bool operator==(const SquareMatrix& o) const = default;

 private:
  int size_ = 0;
  std::vector<double> data_;
};

/// M x M matrix of mean absolute canonical correlations.
/// Symmetric, unit diagonal, entries in [0, 1].
struct AffinityMatrix {
  SquareMatrix values;
  int size() const { return values.size(); }
  double at(int i, int j) const { return values.at(i, j); }
};

/// Elementwise difference of two affinity matrices (prediction minus
/// ground truth). Symmetric, zero diagonal, entries in [-1, 1].
struct AmeMatrix {
  SquareMatrix values;
  int size() const { return values.size(); }
  double at(int i, int j) const { return values.at(i, j); }
};

/// Elementwise standard deviation over a stack of affinity matrices.
struct AffinityStdMatrix {
  SquareMatrix values;
  int size() const { return values.size(); }
  double at(int i, int j) const { return values.at(i, j); }
};

/// Checks the AffinityMatrix invariants; throws ValidationError on failure.
/// Used when accepting matrices from files rather than from affinity_matrix().
void validate_affinity(const SquareMatrix& m);

}  // namespace lmcca
