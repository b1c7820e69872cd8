#include "lmcca/cca.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>

#include "parallel.hpp"

namespace lmcca {

namespace {

// Relative eigenvalue floor below which a covariance block counts as
// singular. Whitening across a wider dynamic range than this is numerically
// meaningless in double precision.
constexpr double kSingularRel = 1e-14;

Mat2 rotation_sandwich(double angle, double dhi, double dlo) {
  // R(angle) * diag(dhi, dlo) * R(angle)^T
  double c = std::cos(angle), s = std::sin(angle);
  return {c * c * dhi + s * s * dlo, c * s * (dhi - dlo),
          c * s * (dhi - dlo), s * s * dhi + c * c * dlo};
}

}  // namespace

SymEig2 sym_eig(const Mat2& s) {
  double p = s.a, q = 0.5 * (s.b + s.c), r = s.d;
  double mean = 0.5 * (p + r);
  double disc = std::hypot(0.5 * (p - r), q);
  SymEig2 e;
  e.hi = mean + disc;
  e.lo = mean - disc;
  e.angle = 0.5 * std::atan2(2.0 * q, p - r);
  return e;
}

Mat2 inv_sqrt_spd(const Mat2& s) {
  SymEig2 e = sym_eig(s);
  if (!(e.hi > 0) || !(e.lo > e.hi * kSingularRel))
    throw DegenerateDataError("covariance not invertible");
  return rotation_sandwich(e.angle, 1.0 / std::sqrt(e.hi), 1.0 / std::sqrt(e.lo));
}

Svd2 svd2(const Mat2& m) {
  // Singular values via the rotation decomposition; accurate for both the
  // large and the small value.
  double e = 0.5 * (m.a + m.d), f = 0.5 * (m.a - m.d);
  double g = 0.5 * (m.c + m.b), h = 0.5 * (m.c - m.b);
  double q = std::hypot(e, h), r = std::hypot(f, g);
  Svd2 out;
  out.hi = q + r;
  out.lo = std::abs(q - r);

  // Leading right singular vector from M^T M.
  Mat2 mtm = m.transposed() * m;
  SymEig2 eig = sym_eig(mtm);
  out.right = {std::cos(eig.angle), std::sin(eig.angle)};
  Vec2 mv = m * out.right;
  double n = std::hypot(mv.x, mv.y);
  out.left = n > 0 ? Vec2{mv.x / n, mv.y / n} : Vec2{1, 0};
  return out;
}

LandmarkColumn landmark_column(const NormalizedDataset& d, int landmark) {
  LandmarkColumn col;
  col.reserve(d.sets.size());
  for (const NormalizedSet& s : d.sets) col.push_back(s.points.at(static_cast<std::size_t>(landmark)));
  return col;
}

Mat2 covariance(std::span<const Vec2> u, std::span<const Vec2> v) {
  if (u.size() != v.size())
    throw ValidationError("covariance: column length mismatch (" + std::to_string(u.size()) +
                          " vs " + std::to_string(v.size()) + ")");
  if (u.size() < 2) throw ValidationError("covariance needs at least 2 samples");
  double mux = 0, muy = 0, mvx = 0, mvy = 0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    mux += u[k].x;
    muy += u[k].y;
    mvx += v[k].x;
    mvy += v[k].y;
  }
  double n = static_cast<double>(u.size());
  mux /= n;
  muy /= n;
  mvx /= n;
  mvy /= n;
  Mat2 s;
  for (std::size_t k = 0; k < u.size(); ++k) {
    double ux = u[k].x - mux, uy = u[k].y - muy;
    double vx = v[k].x - mvx, vy = v[k].y - mvy;
    s.a += ux * vx;
    s.b += ux * vy;
    s.c += uy * vx;
    s.d += uy * vy;
  }
  double w = 1.0 / (n - 1.0);
  return {s.a * w, s.b * w, s.c * w, s.d * w};
}

namespace {

std::string landmark_label(int label) {
  return label >= 0 ? "landmark " + std::to_string(label) : "column";
}

Mat2 whiten_block(const Mat2& cov, double ridge, int label) {
  double r = ridge * cov.trace() * 0.5;
  Mat2 ridged{cov.a + r, cov.b, cov.c, cov.d + r};
  try {
    return inv_sqrt_spd(ridged);
  } catch (const DegenerateDataError&) {
    throw DegenerateDataError(landmark_label(label) +
                              ": covariance not invertible even after ridge");
  }
}

}  // namespace

CcaResult cca_pair(std::span<const Vec2> u, std::span<const Vec2> v, double ridge, int label_u,
                   int label_v) {
  if (u.size() != v.size())
    throw ValidationError("cca_pair: column length mismatch");
  if (u.size() < 3) throw ValidationError("cca_pair needs at least 3 samples");
  if (ridge < 0) throw ValidationError("ridge must be nonnegative");
  for (std::size_t k = 0; k < u.size(); ++k)
    if (!std::isfinite(u[k].x) || !std::isfinite(u[k].y) || !std::isfinite(v[k].x) ||
        !std::isfinite(v[k].y))
      throw ValidationError("cca_pair: non-finite input sample");

  Mat2 suu = covariance(u, u);
  Mat2 svv = covariance(v, v);
  Mat2 suv = covariance(u, v);
  Mat2 wu = whiten_block(suu, ridge, label_u);
  Mat2 wv = whiten_block(svv, ridge, label_v);

  Svd2 sv = svd2(wu * suv * wv);
  CcaResult res;
  res.rho1 = std::clamp(sv.hi, 0.0, 1.0);
  res.rho2 = std::clamp(sv.lo, 0.0, 1.0);
  res.mean_abs = 0.5 * (std::abs(res.rho1) + std::abs(res.rho2));

  Vec2 a = wu * sv.left;
  Vec2 b = wv * sv.right;
  double na = std::hypot(a.x, a.y), nb = std::hypot(b.x, b.y);
  if (na > 0) a = {a.x / na, a.y / na};
  if (nb > 0) b = {b.x / nb, b.y / nb};
  if (a.x < 0 || (a.x == 0 && a.y < 0)) {  // canonical sign, flipped as a pair
    a = {-a.x, -a.y};
    b = {-b.x, -b.y};
  }
  res.direction_u = a;
  res.direction_v = b;
  return res;
}

AffinityMatrix affinity_matrix(const NormalizedDataset& d, double ridge, int threads) {
  int m = static_cast<int>(d.num_landmarks());
  int n = static_cast<int>(d.num_images());
  if (n < 3) throw ValidationError("affinity matrix needs at least 3 images, got " +
                                   std::to_string(n));
  if (m < 1) throw ValidationError("affinity matrix needs at least 1 landmark");

  std::vector<LandmarkColumn> cols;
  cols.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) cols.push_back(landmark_column(d, i));

  // Check every column up front so degeneracy errors name the lowest
  // offending landmark regardless of pair scheduling.
  for (int i = 0; i < m; ++i) whiten_block(covariance(cols[i], cols[i]), ridge, i);

  struct Pair {
    int i, j;
  };
  std::vector<Pair> pairs;
  pairs.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) pairs.push_back({i, j});

  std::vector<double> result(pairs.size(), 0.0);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  detail::parallel_for(pairs.size(), threads, [&](std::size_t k) {
    try {
      result[k] = cca_pair(cols[pairs[k].i], cols[pairs[k].j], ridge, pairs[k].i, pairs[k].j)
                      .mean_abs;
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  });
  if (first_error) std::rethrow_exception(first_error);

  AffinityMatrix a{SquareMatrix(m)};
  for (int i = 0; i < m; ++i) a.values.at(i, i) = 1.0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    a.values.at(pairs[k].i, pairs[k].j) = result[k];
    a.values.at(pairs[k].j, pairs[k].i) = result[k];
  }
  return a;
}

}  // namespace lmcca
