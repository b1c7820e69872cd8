#pragma once

#include <span>
#include <vector>

#include "lmcca/matrix.hpp"
#include "lmcca/types.hpp"

namespace lmcca {
// Independent brute-force reference implementations. These deliberately
// share no code with cca.cpp / format_search.cpp: covariances are
// re-derived with plain two-pass loops, the correlation maximum is found by
// scanning directions, and the subset optimum by exhaustive enumeration.
namespace oracle {

/// Mean of both canonical coefficients found by grid search over the
/// direction of a (10^4 angles plus golden-section refinement; the optimal
/// b for a fixed a is closed-form least squares). The second coefficient
/// comes from the covariance-orthogonal complement of the leading pair.
double oracle_cca(std::span<const Vec2> u, std::span<const Vec2> v);

/// Leading coefficient only, same method.
double oracle_cca_leading(std::span<const Vec2> u, std::span<const Vec2> v);

struct ExhaustiveResult {
  double c_star = 0;
  std::vector<int> best;  // lexicographically smallest optimal subset
};

/// True maximin optimum by enumeration of all C(M, budget) subsets.
/// Refuses instances with more than 10^6 subsets.
ExhaustiveResult oracle_search(const AffinityMatrix& affinity, int budget_m);

/// Literal min-over-unselected of max-over-selected double loop.
double oracle_evaluate(const AffinityMatrix& affinity, const std::vector<int>& selected);

}  // namespace oracle
}  // namespace lmcca
