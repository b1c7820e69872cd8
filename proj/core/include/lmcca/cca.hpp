#pragma once

#include <span>
#include <vector>

#include "lmcca/matrix.hpp"
#include "lmcca/normalize.hpp"
#include "lmcca/types.hpp"

namespace lmcca {

/// 2x2 real matrix, row-major: [[a, b], [c, d]].
struct Mat2 {
  double a = 0, b = 0, c = 0, d = 0;

  double trace() const { return a + d; }
  double det() const { return a * d - b * c; }
  Mat2 transposed() const { return {a, c, b, d}; }

  friend Mat2 operator*(const Mat2& m, const Mat2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }
  friend Vec2 operator*(const Mat2& m, Vec2 v) {
    return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y};
  }
};

/// Sorted eigenvalues (hi >= lo) and the rotation angle of the leading
/// eigenvector for a symmetric 2x2 matrix.
struct SymEig2 {
  double hi = 0, lo = 0;
  double angle = 0;  // leading eigenvector is (cos angle, sin angle)
};
SymEig2 sym_eig(const Mat2& s);

/// Inverse symmetric square root of a symmetric positive definite matrix.
/// Throws DegenerateDataError when the matrix is numerically singular.
Mat2 inv_sqrt_spd(const Mat2& s);

/// Singular values (hi >= lo, both >= 0) and the leading right singular
/// vector of a general 2x2 matrix, all in closed form.
struct Svd2 {
  double hi = 0, lo = 0;
  Vec2 right;  // leading right singular vector, unit norm
  Vec2 left;   // leading left singular vector, unit norm
};
Svd2 svd2(const Mat2& m);

/// One landmark observed across the dataset: N samples of (x, y).
using LandmarkColumn = std::vector<Vec2>;

LandmarkColumn landmark_column(const NormalizedDataset& d, int landmark);

/// Sample cross-covariance with 1/(N-1) normalization.
Mat2 covariance(std::span<const Vec2> u, std::span<const Vec2> v);

struct CcaResult {
  double rho1 = 0;      // leading canonical coefficient, in [0, 1]
  double rho2 = 0;      // second coefficient, rho2 <= rho1
  double mean_abs = 0;  // (|rho1| + |rho2|) / 2
  Vec2 direction_u;     // leading canonical direction for u
  Vec2 direction_v;     // leading canonical direction for v
};

/// Relative ridge coefficient: the Tikhonov term added to a covariance
/// block is ridge * trace(block)/2 * I, keeping the result scale-free.
inline constexpr double kDefaultRidge = 1e-9;

/// Canonical correlation of two 2-D variables, solved in closed form:
/// whiten both blocks with their inverse symmetric square roots, then take
/// the singular values of T = Suu^-1/2 Suv Svv^-1/2. Coefficients are the
/// singular values clamped to [0, 1].
///
/// Throws DegenerateDataError when a covariance block is singular even
/// after the ridge (a constant column, or ridge 0 on a collinear one);
/// `label_u`/`label_v` name the offending landmark in the message.
CcaResult cca_pair(std::span<const Vec2> u, std::span<const Vec2> v,
                   double ridge = kDefaultRidge, int label_u = -1, int label_v = -1);

/// Affinity matrix over a normalized dataset: entry (i, j) is the mean
/// absolute canonical coefficient of landmarks i and j. Pairs are computed
/// once for i < j and mirrored; the diagonal is exactly 1. `threads <= 0`
/// uses the hardware count. Scheduling never affects the result.
AffinityMatrix affinity_matrix(const NormalizedDataset& d, double ridge = kDefaultRidge,
                               int threads = 0);

}  // namespace lmcca
