#ifndef MORBDD_STITCH_HPP_
#define MORBDD_STITCH_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "morbdd/bdd.hpp"
#include "morbdd/pareto.hpp"
#include "morbdd/sparsifier.hpp"

namespace morbdd {

// Connectivity repair: pick a superset of the thresholded keep-set that is
// root-terminal connected while paying the least total resistance, where a
// node's resistance is max(0, tau - score).

struct StitchArc {
  NodeId tail = kNoNode;
  NodeId head = kNoNode;
  std::uint8_t domain = 0;
};

// Binary program over node vars x and arc vars y, where y_a stands for
// "both endpoints kept" (an arc of the induced sub-BDD):
//   minimize    sum_n r_n x_n
//   subject to  x_n <= sum of outgoing y      (kept nodes reach downward)
//               x_n <= sum of incoming y      (kept non-root nodes reach up)
//               incoming y sum <= indeg * x_n
//               outgoing y sum <= outdeg * x_n
//               x_n = 1 for every node of the thresholded keep-set
// A 0-1 point is feasible iff every kept node lies on a root-terminal path
// inside the kept set.
struct StitchModel {
  std::vector<NodeId> nodes;             // x variables, terminal excluded
  std::vector<StitchArc> arcs;           // y variables
  std::vector<double> node_resistance;   // indexed by node id
  KeepSet fixed;                         // x_n = 1 constraints
  std::vector<NodeId> topo;              // all nodes, layer-ascending
  NodeId root = kNoNode;
  NodeId terminal = kNoNode;
  std::int32_t id_bound = 0;
};

StitchModel build_stitch_model(const Bdd& bdd, const NodeScores& scores,
                               double tau);

inline constexpr std::int64_t kDefaultStitchBudget = 500;

struct StitchSolution {
  KeepSet keep;               // selected nodes plus the terminal
  double objective = 0.0;     // total resistance of selected nodes
  std::uint64_t explored = 0; // branch-and-bound nodes visited
};

// Depth-first branch and bound.  The incumbent comes from greedily wiring
// the fixed nodes along cheapest chains; the lower bound prices, for every
// selected node, the cheapest way to reach the root and the terminal
// through undecided nodes, and branching follows those chains.
// Deterministic.  Refuses models with more than `node_budget` x variables;
// export the model and hand it to an external solver instead.
StitchSolution solve_stitch_exact(const StitchModel& model,
                                  std::int64_t node_budget = kDefaultStitchBudget);

// CPLEX LP text format.
void export_stitch_model(const StitchModel& model, std::ostream& out);
void export_stitch_model(const StitchModel& model,
                         const std::filesystem::path& path);

// Window heuristic: from the kept nodes still reachable in the last
// connected layer, enumerate every down-path spanning `alpha` layers and
// add all paths of minimum total resistance, counting already-kept nodes
// as free.  The window widens when no path reaches its far edge.  Requires
// a disconnected keep-set and guarantees the last connected layer advances.
KeepSet min_resistance_stitch(const Bdd& bdd, const NodeScores& scores,
                              const KeepSet& keep, double tau, int alpha);

enum class Stitcher { mip, min_resistance, none };

std::string to_string(Stitcher stitcher);
Stitcher stitcher_from_string(const std::string& name);

struct DeployConfig {
  double tau = 0.5;
  Stitcher stitcher = Stitcher::min_resistance;
  int alpha = 2;
  std::int64_t mip_node_budget = kDefaultStitchBudget;
  CompileOptions compile;
};

struct DeployReport {
  std::int64_t inc = 0;         // exact BDD nodes
  std::int64_t rnc = 0;         // sparsified BDD nodes
  std::int64_t comp = 0;        // pairwise dominance comparisons
  double time_ms = 0.0;
  int stitch_iterations = 0;
  std::string stitcher;
  double tau = 0.0;
  std::size_t frontier_size = 0;
  bool connected = true;
  int last_connected_layer = 0;  // only meaningful when not connected
};

struct DeployResult {
  Frontier frontier;
  DeployReport report;
  KeepSet keep;
};

// Compile exact, score, threshold, stitch until connected, then enumerate
// on the induced sub-BDD.  With Stitcher::none a disconnected keep-set is
// reported as such and the frontier stays empty.
DeployResult deploy(const Instance& inst, const SparsifierModel& model,
                    const DeployConfig& config = {});

}  // namespace morbdd

#endif  // MORBDD_STITCH_HPP_
