#ifndef MORBDD_BDD_HPP_
#define MORBDD_BDD_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "morbdd/instance.hpp"

namespace morbdd {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

// Layered DAG for a knapsack instance.  Layer l (1-based) holds the states
// reachable after deciding items 1..l-1; the root sits alone in layer 1 and
// layer N+1 collapses into the single terminal.  A node's state is its
// accumulated weight.  Arc values are implicit: the one-arc leaving layer l
// carries the profit column of item l, the zero-arc carries zeros.
struct Node {
  std::int64_t state = 0;
  std::int32_t layer = 0;  // 1-based; 0 marks a node removed from a sub-BDD
  NodeId zero_child = kNoNode;
  NodeId one_child = kNoNode;
};

struct InArc {
  NodeId parent = kNoNode;
  std::uint8_t domain = 0;  // decision carried by the arc: 0 or 1
};

// Subset of the node ids of a source BDD.
class KeepSet {
 public:
  KeepSet() = default;
  explicit KeepSet(std::size_t universe) : bits_(universe, 0) {}

  void insert(NodeId id) {
    if (!bits_[static_cast<std::size_t>(id)]) {
      bits_[static_cast<std::size_t>(id)] = 1;
      ++count_;
    }
  }
  bool contains(NodeId id) const {
    return bits_[static_cast<std::size_t>(id)] != 0;
  }
  std::size_t size() const { return count_; }
  std::size_t universe_size() const { return bits_.size(); }
  std::vector<NodeId> sorted_ids() const;

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t count_ = 0;
};

struct CompileOptions {
  std::int64_t max_nodes = 20'000'000;  // budget before a resource error
};

class Bdd {
 public:
  const Instance& instance() const { return instance_; }
  int num_layers() const { return static_cast<int>(layers_.size()); }
  NodeId root() const { return root_; }
  NodeId terminal() const { return terminal_; }

  // Number of nodes present (sub-BDDs may be sparser than the id space).
  std::size_t node_count() const { return present_count_; }
  // One past the largest node id; sizes per-id arrays.
  std::size_t id_bound() const { return nodes_.size(); }

  bool contains(NodeId id) const {
    return id >= 0 && static_cast<std::size_t>(id) < nodes_.size() &&
           nodes_[static_cast<std::size_t>(id)].layer != 0;
  }
  const Node& node(NodeId id) const {
    return nodes_[static_cast<std::size_t>(id)];
  }
  std::span<const NodeId> layer(int l) const {  // 1-based
    return layers_[static_cast<std::size_t>(l - 1)];
  }
  std::span<const InArc> in_arcs(NodeId id) const {
    const auto i = static_cast<std::size_t>(id);
    return {in_arcs_.data() + in_offsets_[i],
            static_cast<std::size_t>(in_offsets_[i + 1] - in_offsets_[i])};
  }
  // Profit of objective k on the one-arc leaving layer l (decides item l).
  std::int32_t arc_profit(int k, int l) const {
    return instance_.profits[static_cast<std::size_t>(k)]
                            [static_cast<std::size_t>(l - 1)];
  }

 private:
  Bdd() = default;
  static Bdd compile(const Instance& inst, std::int64_t maxwidth,
                     const CompileOptions& options);
  void rebuild_in_arcs();

  Instance instance_;
  std::vector<Node> nodes_;
  std::vector<std::vector<NodeId>> layers_;  // layers_[l-1], length N+1
  std::vector<std::int64_t> in_offsets_;
  std::vector<InArc> in_arcs_;
  NodeId root_ = kNoNode;
  NodeId terminal_ = kNoNode;
  std::size_t present_count_ = 0;

  friend Bdd compile_exact(const Instance&, const CompileOptions&);
  friend Bdd compile_restricted_width(const Instance&, int,
                                      const CompileOptions&);
  friend Bdd induced_subbdd(const Bdd&, const KeepSet&);
  friend Bdd read_bdd_dump(std::istream&, const Instance&);
};

struct ConnectivityReport {
  bool connected = false;
  int last_connected_layer = 0;  // deepest layer reachable from the root
};

struct BddStats {
  std::size_t node_count = 0;
  std::size_t max_width = 0;
  std::vector<std::size_t> layer_widths;  // length N+1
};

// Top-down dynamic-programming compilation with equal-state merging.  The
// zero-arc always exists; the one-arc exists iff state + weight fits the
// capacity.  Node ids are dense and assigned in compilation order, so
// recompiling an instance reproduces ids exactly.
Bdd compile_exact(const Instance& inst, const CompileOptions& options = {});

// Same construction, but any layer wider than
// ceil(beta_percent/100 * exact max width) is truncated to the nodes with
// the smallest states (ties by insertion order).  The exact compile runs
// first to establish the width baseline.  beta_percent in [1, 100].
Bdd compile_restricted_width(const Instance& inst, int beta_percent,
                             const CompileOptions& options = {});

// Sub-BDD induced by a keep-set: nodes outside it are removed together with
// their incident arcs.  Node ids are preserved, no path pruning happens, so
// the result may be disconnected.  The keep-set must contain the root and
// the terminal and match the source id space.
Bdd induced_subbdd(const Bdd& bdd, const KeepSet& keep);

// A BDD is connected iff some root-terminal path exists.  The report names
// the deepest layer still reachable from the root either way.
ConnectivityReport is_connected(const Bdd& bdd);

// Connectivity of the sub-BDD induced by `keep`, computed without
// materializing it.
ConnectivityReport keep_connectivity(const Bdd& bdd, const KeepSet& keep);

BddStats bdd_stats(const Bdd& bdd);

// Debug dump: a header echoing the instance hash, then per layer one line
// `id state zero_child one_child` with '-' for absent arcs.
void write_bdd_dump(const Bdd& bdd, std::ostream& out);
void write_bdd_dump(const Bdd& bdd, const std::filesystem::path& path);
Bdd read_bdd_dump(std::istream& in, const Instance& inst);
Bdd read_bdd_dump(const std::filesystem::path& path, const Instance& inst);

}  // namespace morbdd

#endif  // MORBDD_BDD_HPP_
