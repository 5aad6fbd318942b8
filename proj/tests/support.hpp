#ifndef MORBDD_TESTS_SUPPORT_HPP_
#define MORBDD_TESTS_SUPPORT_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "morbdd/bdd.hpp"
#include "morbdd/instance.hpp"
#include "morbdd/pareto.hpp"

// Cross-check oracles.  Each one reimplements the property it checks with a
// different algorithm than the library, so the two sides can catch each
// other's mistakes.  All of them are exponential or quadratic and meant for
// small inputs only.

namespace morbdd::test {

// Objective vector of one 0-1 assignment.
ObjectiveVector evaluate_solution(const Instance& inst,
                                  const std::vector<std::uint8_t>& solution);

bool solution_feasible(const Instance& inst,
                       const std::vector<std::uint8_t>& solution);

// All feasible assignments of an instance, by scanning all 2^N masks.
std::vector<std::vector<std::uint8_t>> feasible_set(const Instance& inst);

// Quadratic all-pairs nondominance scan (keeps duplicates collapsed).
std::vector<ObjectiveVector> oracle_filter(
    const std::vector<ObjectiveVector>& vectors);

// Breadth-first reachability sweep over a keep-set.
struct OracleConnectivity {
  bool connected = false;
  int last_connected_layer = 0;
};
OracleConnectivity oracle_connectivity(const Bdd& bdd, const KeepSet& keep);

// One root-terminal path: the decisions taken and the nodes visited.
struct BddPath {
  std::vector<std::uint8_t> solution;
  std::vector<NodeId> nodes;
};

// Every root-terminal path, by depth-first traversal.
std::vector<BddPath> enumerate_paths(const Bdd& bdd);

// Pareto nodes and per-node frontier-path counts by exhaustive path
// enumeration: decode every path, keep those whose objective vector is
// nondominated over the whole feasible set, and mark/count their nodes.
struct OracleMarks {
  std::set<NodeId> pareto_nodes;
  std::map<NodeId, double> path_counts;
  std::vector<ObjectiveVector> frontier;
};
OracleMarks oracle_marks(const Instance& inst, const Bdd& bdd);

// Minimum-resistance connected superset of the fixed nodes by trying all
// subsets of the positive-resistance nodes.  A selection is feasible when
// every selected node lies on a root-terminal path within the selection.
struct OracleStitch {
  double objective = 0.0;
  bool feasible = false;
};
OracleStitch oracle_stitch(const Bdd& bdd,
                           const std::vector<double>& resistance,
                           const KeepSet& fixed);

// Rank-statistic area under the ROC curve; ties contribute half.
double auc(const std::vector<double>& scores,
           const std::vector<std::uint8_t>& labels);

}  // namespace morbdd::test

#endif  // MORBDD_TESTS_SUPPORT_HPP_
