#ifndef MORBDD_PARETO_HPP_
#define MORBDD_PARETO_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "morbdd/bdd.hpp"

namespace morbdd {

using ObjectiveVector = std::vector<std::int32_t>;

// Maximization dominance: a >= b in every coordinate, strictly in one.
bool dominates(std::span<const std::int32_t> a, std::span<const std::int32_t> b);

struct FilterResult {
  std::vector<ObjectiveVector> nondominated;  // lexicographically ascending
  std::int64_t comparisons = 0;               // dominates() invocations
};

// Quadratic-free filter: sort descending, then test each candidate against
// the accepted set only.  Duplicates collapse to one copy.
FilterResult filter_nondominated(const std::vector<ObjectiveVector>& vectors);

struct Frontier {
  int num_objectives = 0;
  int num_items = 0;
  std::vector<ObjectiveVector> vectors;  // lexicographically ascending
  // One representative 0-1 solution per vector, aligned with `vectors`.
  std::vector<std::vector<std::uint8_t>> solutions;
  std::int64_t comparison_count = 0;

  std::size_t size() const { return vectors.size(); }
};

// Nondominated prefix-sum label sets per node, flat with stride
// num_objectives, sorted lexicographically descending.
struct NodeLabels {
  int num_objectives = 0;
  std::vector<std::vector<std::int32_t>> flat;  // indexed by node id

  std::size_t count(NodeId id) const {
    return flat[static_cast<std::size_t>(id)].size() /
           static_cast<std::size_t>(num_objectives);
  }
  std::span<const std::int32_t> label(NodeId id, std::size_t i) const {
    const auto k = static_cast<std::size_t>(num_objectives);
    return {flat[static_cast<std::size_t>(id)].data() + i * k, k};
  }
};

// `unpruned` keeps every distinct partial sum at interior nodes (duplicates
// still collapse) and filters only at the terminal; it exists to witness
// that dominance pruning is exact and is only affordable on tiny instances.
enum class Propagation { pruned, unpruned };

struct EnumerationResult {
  Frontier frontier;
  NodeLabels labels;
};

// Multicriteria forward pass from root to terminal.  Requires a connected
// BDD; a disconnected input raises a contract violation naming the last
// connected layer.  comparison_count aggregates dominates() calls across
// all per-node filters and is deterministic for a fixed BDD.
EnumerationResult enumerate_frontier(const Bdd& bdd,
                                     Propagation mode = Propagation::pruned);

// Backward useful-pair sweep.  A node is a Pareto node iff one of its labels
// extends to a frontier point through some child.  The result always
// contains the root and the terminal.
KeepSet mark_pareto_nodes(const Bdd& bdd, const NodeLabels& labels,
                          const Frontier& frontier);

double pareto_node_fraction(const Bdd& bdd, const KeepSet& marks);

// Number of frontier-realizing root-terminal paths through each node
// (doubles: counts are sums of nonnegative products and only their relative
// per-layer magnitude is consumed downstream).
std::vector<double> count_pareto_paths(const Bdd& bdd, const NodeLabels& labels,
                                       const Frontier& frontier);

// CSV: K objective columns then N solution-bit columns, header row, rows in
// ascending lexicographic order of the objective vector.  Optional leading
// '#' comment carries run provenance.
void write_frontier_csv(const Frontier& frontier, std::ostream& out,
                        const std::string& comment = "");
void write_frontier_csv(const Frontier& frontier,
                        const std::filesystem::path& path,
                        const std::string& comment = "");
Frontier read_frontier_csv(std::istream& in);
Frontier read_frontier_csv(const std::filesystem::path& path);

}  // namespace morbdd

#endif  // MORBDD_PARETO_HPP_
