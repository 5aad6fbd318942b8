#ifndef MORBDD_METRICS_HPP_
#define MORBDD_METRICS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "morbdd/pareto.hpp"

namespace morbdd {

// Percentage of the exact frontier's vectors recovered by the approximation.
double cardinality(const Frontier& approx, const Frontier& exact);

// Dimension-sweep recursion, exact for up to four objectives.  All points
// must weakly dominate the reference.
double hypervolume_exact(const std::vector<ObjectiveVector>& points,
                         const ObjectiveVector& reference);

// Multiplicative (1 +- epsilon) estimate with confidence 1 - delta via hit
// sampling inside the reference box; the sample count follows the plug-in
// Chernoff bound 3 ln(2/delta) / (epsilon^2 p-hat), capped at 2^26 draws.
double hypervolume_mc(const std::vector<ObjectiveVector>& points,
                      const ObjectiveVector& reference, double epsilon,
                      double delta, std::uint64_t seed);

// Exact when affordable (always for K <= 3, small frontiers for K = 4),
// Monte Carlo with pinned parameters otherwise.
double frontier_hypervolume(const Frontier& frontier,
                            const ObjectiveVector& reference);

struct RunStats {
  std::int64_t inc = 0;    // exact BDD nodes
  std::int64_t rnc = 0;    // nodes actually enumerated
  std::int64_t comp = 0;   // pairwise dominance comparisons
  double time_s = 0.0;
};

struct MethodRun {
  const Frontier* frontier = nullptr;
  RunStats stats;
};

// Percentages are method over exact; hypervolumes are normalized by the
// box spanned by the exact frontier's ideal point and the reference.
struct EvalReport {
  double inc_pct = 0.0;
  double rnc_pct = 0.0;
  double comp_pct = 0.0;
  double time_s = 0.0;
  double exact_time_s = 0.0;
  double cardinality_pct = 0.0;
  double hv = 0.0;
  double exact_hv = 0.0;
};

EvalReport evaluate_run(const MethodRun& exact_run, const MethodRun& method_run,
                        const ObjectiveVector& reference);

struct Aggregate {
  std::size_t instances = 0;
  double inc_pct = 0.0;
  double rnc_pct = 0.0;
  double comp_pct = 0.0;
  double time_s = 0.0;
  double exact_time_s = 0.0;
  double cardinality_pct = 0.0;
  double hv = 0.0;
  double exact_hv = 0.0;
  // The hv mean is restricted to instances where the exact estimate exceeds
  // the method's (everywhere else sparsification lost nothing); hv_count
  // says how many that was.  Falls back to all instances when none qualify.
  std::size_t hv_count = 0;
};

Aggregate aggregate_reports(std::span<const EvalReport> reports);

// Fixed-width summary: one exact row (from the first aggregate's baseline
// columns), then one row per named method.
std::string format_aggregate_table(
    std::span<const std::pair<std::string, Aggregate>> rows);

// Two-row convenience form (exact, then the named method).
std::string format_aggregate_table(const Aggregate& aggregate,
                                   const std::string& method_name);

}  // namespace morbdd

#endif  // MORBDD_METRICS_HPP_
