#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <vector>

#include "lmcca/cca.hpp"
#include "lmcca/matrix.hpp"
#include "lmcca/types.hpp"

namespace lmcca {

struct SearchProblem {
  AffinityMatrix affinity;
  int budget_m = 1;  // in [1, M]
};

/// A selected m-subset of landmarks plus the induced assignment: every
/// landmark maps to the selected landmark with the highest affinity
/// (itself when selected). c_hat is the minimum affinity over unselected
/// landmarks, 1 when everything is selected.
struct SparseFormat {
  std::vector<int> selected;      // sorted ascending, size budget_m
  std::vector<int> assignment;    // assignment[j] in selected; assignment[i] = i for selected i
  double c_hat = 0;
  bool optimal = false;
  double gap = 0;                 // upper bound on optimum minus c_hat; 0 when optimal
};

struct EvaluatedFormat {
  double c = 0;
  std::vector<int> assignment;
};

/// Evaluates a fixed selection: assignment[j] = argmax over selected i of
/// A[i][j] (ties to the lowest index), c = min over unselected j of the
/// assigned affinity; c = 1 for the full selection.
EvaluatedFormat evaluate_format(const AffinityMatrix& affinity, const std::vector<int>& selected);

/// Exact maximin selection. Binary-searches the sorted unique off-diagonal
/// affinity values; a threshold t is feasible iff some m-subset dominates
/// every landmark through edges A[i][j] >= t (self-loops included), decided
/// by branch and bound. Returns the lexicographically smallest optimal
/// subset. If the time limit expires, returns the best selection found with
/// optimal = false and gap = (largest threshold not proven infeasible) - c_hat.
SparseFormat search_exact(const SearchProblem& p,
                          std::chrono::milliseconds time_limit = std::chrono::milliseconds::max());

/// Farthest-first heuristic in distance 1 - A (initial center: landmark
/// maximizing its row-minimum affinity), then single-swap local search
/// until no improvement. Deterministic; optimal is set only when the
/// selection covers all landmarks (budget m = M).
SparseFormat search_greedy(const SearchProblem& p);

enum class SearchMethod { kExact, kGreedy, kAuto };

/// kAuto runs search_exact when M <= 100, else search_greedy.
SparseFormat run_search(const SearchProblem& p, SearchMethod method,
                        std::chrono::milliseconds time_limit = std::chrono::milliseconds::max());

struct SweepPoint {
  int m = 0;
  double c_hat_mean = 0;
  double c_hat_var = 0;  // population variance across runs
  int runs = 0;
};

struct SweepCurve {
  std::vector<SweepPoint> points;
  double sampling_ratio = 1.0;
  std::uint64_t seed = 0;
};

struct SweepOptions {
  int m_lo = 1;
  int m_hi = 1;
  double ratio = 1.0;      // fraction of images densely annotated, in (0, 1]
  int runs = 1;
  std::uint64_t seed = 0;
  SearchMethod method = SearchMethod::kAuto;
  double ridge = kDefaultRidge;
  int threads = 0;
  std::chrono::milliseconds time_limit = std::chrono::milliseconds::max();
};

/// For each run: subsample ceil(ratio * N) images without replacement
/// (seeded, run-indexed), normalize, build one affinity matrix, and search
/// every budget in [m_lo, m_hi] on it. Reports per-budget mean and variance
/// of c_hat across runs. Deterministic for a fixed seed and thread count
/// independent: subsets are drawn up front.
SweepCurve sweep(const Dataset& d, const SweepOptions& opts);

struct FormatComparison {
  double c_existing = 0;
  double c_hat = 0;
  double delta = 0;  // c_hat - c_existing
};

/// Compares a searched format against an existing subset of equal size on
/// the same affinity matrix.
FormatComparison compare_format(const AffinityMatrix& affinity, const std::vector<int>& existing,
                                const SparseFormat& searched);

std::string serialize_sparse_format_json(const SparseFormat& f, std::uint64_t seed,
                                         double sampling_ratio);
SparseFormat parse_sparse_format_json(std::string_view text);

}  // namespace lmcca
