#include "support.hpp"

#include <algorithm>
#include <stdexcept>

namespace morbdd::test {

ObjectiveVector evaluate_solution(const Instance& inst,
                                  const std::vector<std::uint8_t>& solution) {
  ObjectiveVector value(static_cast<std::size_t>(inst.num_objectives), 0);
  for (int k = 0; k < inst.num_objectives; ++k)
    for (int i = 0; i < inst.num_items; ++i)
      if (solution[static_cast<std::size_t>(i)])
        value[static_cast<std::size_t>(k)] +=
            inst.profits[static_cast<std::size_t>(k)]
                        [static_cast<std::size_t>(i)];
  return value;
}

bool solution_feasible(const Instance& inst,
                       const std::vector<std::uint8_t>& solution) {
  std::int64_t load = 0;
  for (int i = 0; i < inst.num_items; ++i)
    if (solution[static_cast<std::size_t>(i)])
      load += inst.weights[static_cast<std::size_t>(i)];
  return load <= inst.capacity;
}

std::vector<std::vector<std::uint8_t>> feasible_set(const Instance& inst) {
  if (inst.num_items > 20)
    throw std::invalid_argument("feasible_set: instance too large");
  std::vector<std::vector<std::uint8_t>> result;
  const std::uint32_t limit = 1u << inst.num_items;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    std::vector<std::uint8_t> solution(
        static_cast<std::size_t>(inst.num_items), 0);
    for (int i = 0; i < inst.num_items; ++i)
      solution[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
    if (solution_feasible(inst, solution)) result.push_back(solution);
  }
  return result;
}

std::vector<ObjectiveVector> oracle_filter(
    const std::vector<ObjectiveVector>& vectors) {
  auto dominates = [](const ObjectiveVector& a, const ObjectiveVector& b) {
    bool strict = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k] < b[k]) return false;
      if (a[k] > b[k]) strict = true;
    }
    return strict;
  };
  std::vector<ObjectiveVector> result;
  for (const auto& candidate : vectors) {
    bool dominated = false;
    for (const auto& other : vectors)
      if (dominates(other, candidate)) {
        dominated = true;
        break;
      }
    if (!dominated &&
        std::find(result.begin(), result.end(), candidate) == result.end())
      result.push_back(candidate);
  }
  std::sort(result.begin(), result.end());
  return result;
}

OracleConnectivity oracle_connectivity(const Bdd& bdd, const KeepSet& keep) {
  std::vector<char> reachable(bdd.id_bound(), 0);
  if (keep.contains(bdd.root()))
    reachable[static_cast<std::size_t>(bdd.root())] = 1;
  OracleConnectivity result;
  result.last_connected_layer =
      reachable[static_cast<std::size_t>(bdd.root())] ? 1 : 0;
  for (int l = 1; l < bdd.num_layers(); ++l) {
    bool any_next = false;
    for (NodeId id : bdd.layer(l)) {
      if (!reachable[static_cast<std::size_t>(id)]) continue;
      const Node& node = bdd.node(id);
      for (NodeId child : {node.zero_child, node.one_child}) {
        if (child == kNoNode || !keep.contains(child)) continue;
        reachable[static_cast<std::size_t>(child)] = 1;
        any_next = true;
      }
    }
    if (any_next) result.last_connected_layer = l + 1;
  }
  result.connected = reachable[static_cast<std::size_t>(bdd.terminal())] != 0;
  return result;
}

std::vector<BddPath> enumerate_paths(const Bdd& bdd) {
  std::vector<BddPath> paths;
  BddPath current;
  auto descend = [&](auto&& self, NodeId id) -> void {
    current.nodes.push_back(id);
    if (id == bdd.terminal()) {
      paths.push_back(current);
    } else {
      const Node& node = bdd.node(id);
      for (int bit = 0; bit <= 1; ++bit) {
        const NodeId child = bit ? node.one_child : node.zero_child;
        if (child == kNoNode) continue;
        current.solution.push_back(static_cast<std::uint8_t>(bit));
        self(self, child);
        current.solution.pop_back();
      }
    }
    current.nodes.pop_back();
  };
  descend(descend, bdd.root());
  return paths;
}

OracleMarks oracle_marks(const Instance& inst, const Bdd& bdd) {
  OracleMarks result;
  std::vector<ObjectiveVector> all;
  for (const auto& solution : feasible_set(inst))
    all.push_back(evaluate_solution(inst, solution));
  result.frontier = oracle_filter(all);
  auto on_frontier = [&](const ObjectiveVector& v) {
    return std::binary_search(result.frontier.begin(), result.frontier.end(),
                              v);
  };
  for (const BddPath& path : enumerate_paths(bdd)) {
    if (!on_frontier(evaluate_solution(inst, path.solution))) continue;
    for (NodeId id : path.nodes) {
      result.pareto_nodes.insert(id);
      result.path_counts[id] += 1.0;
    }
  }
  return result;
}

OracleStitch oracle_stitch(const Bdd& bdd,
                           const std::vector<double>& resistance,
                           const KeepSet& fixed) {
  std::vector<NodeId> free_nodes;
  for (NodeId id = 0; id < static_cast<NodeId>(bdd.id_bound()); ++id) {
    if (!bdd.contains(id) || id == bdd.terminal()) continue;
    if (fixed.contains(id)) continue;
    free_nodes.push_back(id);
  }
  if (free_nodes.size() > 22)
    throw std::invalid_argument("oracle_stitch: too many free nodes");

  // Selection is feasible iff every selected node sits on a root-terminal
  // path within the selection; equivalently each is reachable from the root
  // and reaches the terminal through selected nodes.
  auto feasible = [&](const KeepSet& keep) {
    const auto conn = oracle_connectivity(bdd, keep);
    if (!conn.connected) return false;
    std::vector<char> down(bdd.id_bound(), 0);
    std::vector<char> up(bdd.id_bound(), 0);
    down[static_cast<std::size_t>(bdd.root())] = 1;
    for (int l = 1; l < bdd.num_layers(); ++l)
      for (NodeId id : bdd.layer(l)) {
        if (!keep.contains(id) || !down[static_cast<std::size_t>(id)])
          continue;
        const Node& node = bdd.node(id);
        for (NodeId child : {node.zero_child, node.one_child})
          if (child != kNoNode && keep.contains(child))
            down[static_cast<std::size_t>(child)] = 1;
      }
    up[static_cast<std::size_t>(bdd.terminal())] = 1;
    for (int l = bdd.num_layers() - 1; l >= 1; --l)
      for (NodeId id : bdd.layer(l)) {
        if (!keep.contains(id)) continue;
        const Node& node = bdd.node(id);
        for (NodeId child : {node.zero_child, node.one_child})
          if (child != kNoNode && up[static_cast<std::size_t>(child)]) {
            up[static_cast<std::size_t>(id)] = 1;
            break;
          }
      }
    for (NodeId id = 0; id < static_cast<NodeId>(bdd.id_bound()); ++id) {
      if (!bdd.contains(id) || !keep.contains(id)) continue;
      if (!down[static_cast<std::size_t>(id)] ||
          !up[static_cast<std::size_t>(id)])
        return false;
    }
    return true;
  };

  OracleStitch best;
  const std::uint32_t limit = 1u << free_nodes.size();
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    KeepSet keep(bdd.id_bound());
    for (NodeId id : fixed.sorted_ids()) keep.insert(id);
    keep.insert(bdd.terminal());
    double objective = 0.0;
    for (std::size_t i = 0; i < free_nodes.size(); ++i)
      if ((mask >> i) & 1u) {
        keep.insert(free_nodes[i]);
        objective += resistance[static_cast<std::size_t>(free_nodes[i])];
      }
    if (best.feasible && objective >= best.objective) continue;
    if (!feasible(keep)) continue;
    best.feasible = true;
    best.objective = objective;
  }
  return best;
}

double auc(const std::vector<double>& scores,
           const std::vector<std::uint8_t>& labels) {
  double wins = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!labels[i]) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j]) continue;
      ++pairs;
      if (scores[i] > scores[j])
        wins += 1.0;
      else if (scores[i] == scores[j])
        wins += 0.5;
    }
  }
  return pairs ? wins / static_cast<double>(pairs) : 0.5;
}

}  // namespace morbdd::test
