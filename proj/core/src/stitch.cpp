#include "morbdd/stitch.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include "morbdd/errors.hpp"

namespace morbdd {

namespace {

constexpr std::uint64_t kSearchCap = std::uint64_t{1} << 23;

// Kept nodes reachable from the root through kept nodes only.
std::vector<std::uint8_t> kept_reach(const Bdd& bdd, const KeepSet& keep) {
  std::vector<std::uint8_t> reach(static_cast<std::size_t>(bdd.id_bound()), 0);
  if (!keep.contains(bdd.root())) return reach;
  reach[static_cast<std::size_t>(bdd.root())] = 1;
  for (int l = 1; l < bdd.num_layers(); ++l) {
    for (NodeId id : bdd.layer(l)) {
      if (!reach[static_cast<std::size_t>(id)]) continue;
      const Node& node = bdd.node(id);
      for (NodeId child : {node.zero_child, node.one_child})
        if (child != kNoNode && bdd.contains(child) && keep.contains(child))
          reach[static_cast<std::size_t>(child)] = 1;
    }
  }
  return reach;
}

}  // namespace

StitchModel build_stitch_model(const Bdd& bdd, const NodeScores& scores,
                               double tau) {
  if (scores.values.size() != static_cast<std::size_t>(bdd.id_bound()) ||
      scores.root != bdd.root() || scores.terminal != bdd.terminal())
    throw ContractViolation("build_stitch_model: scores do not cover the BDD");

  StitchModel model;
  model.root = bdd.root();
  model.terminal = bdd.terminal();
  model.id_bound = bdd.id_bound();
  model.node_resistance.assign(static_cast<std::size_t>(bdd.id_bound()), 0.0);
  model.fixed = KeepSet(static_cast<std::size_t>(bdd.id_bound()));

  const KeepSet kept = threshold_keepset(scores, tau);
  for (NodeId id = 0; id < bdd.id_bound(); ++id) {
    if (!bdd.contains(id) || id == bdd.terminal()) continue;
    model.nodes.push_back(id);
    if (id != bdd.root())
      model.node_resistance[static_cast<std::size_t>(id)] =
          resistance(scores.at(id), tau);
    if (kept.contains(id)) model.fixed.insert(id);
    const Node& node = bdd.node(id);
    if (node.zero_child != kNoNode && bdd.contains(node.zero_child))
      model.arcs.push_back({id, node.zero_child, 0});
    if (node.one_child != kNoNode && bdd.contains(node.one_child))
      model.arcs.push_back({id, node.one_child, 1});
  }
  for (int l = 1; l <= bdd.num_layers(); ++l)
    for (NodeId id : bdd.layer(l)) model.topo.push_back(id);
  return model;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class StitchSearch {
 public:
  explicit StitchSearch(const StitchModel& model) : model_(model) {
    const auto bound = static_cast<std::size_t>(model.id_bound);
    children_.resize(bound);
    parents_.resize(bound);
    for (const StitchArc& arc : model.arcs) {
      children_[static_cast<std::size_t>(arc.tail)].push_back(arc.head);
      parents_[static_cast<std::size_t>(arc.head)].push_back(arc.tail);
    }
    status_.assign(bound, 0);
    status_[static_cast<std::size_t>(model.terminal)] = 1;
    for (NodeId id : model.nodes)
      status_[static_cast<std::size_t>(id)] =
          model.fixed.contains(id) ? 1 : 2;
    for (NodeId id : model.nodes)
      if (!model.fixed.contains(id)) free_.push_back(id);
    up_.resize(bound);
    down_.resize(bound);
    via_up_.resize(bound);
    via_down_.resize(bound);
  }

  StitchSolution run() {
    seed_greedy();
    dfs(0.0);
    if (!found_)
      throw ContractViolation("solve_stitch_exact: model is infeasible");

    StitchSolution solution;
    solution.keep = KeepSet(static_cast<std::size_t>(model_.id_bound));
    solution.objective = best_;
    solution.explored = explored_;
    solution.keep.insert(model_.terminal);
    for (NodeId id : model_.nodes)
      if (best_selection_[static_cast<std::size_t>(id)])
        solution.keep.insert(id);
    return solution;
  }

 private:
  double resistance_of(NodeId id) const {
    return model_.node_resistance[static_cast<std::size_t>(id)];
  }

  // Wires every fixed node through its cheapest up and down chain, in
  // topological order.  Later additions never unwire earlier nodes, so one
  // pass yields a feasible (rarely optimal) incumbent.
  void seed_greedy() {
    const auto bound = static_cast<std::size_t>(model_.id_bound);
    std::vector<std::uint8_t> sel(bound, 0);
    sel[static_cast<std::size_t>(model_.terminal)] = 1;
    for (NodeId id : model_.fixed.sorted_ids())
      sel[static_cast<std::size_t>(id)] = 1;
    std::vector<double> up(bound), down(bound);
    std::vector<NodeId> via_up(bound), via_down(bound);
    auto price = [&](NodeId id) {
      return sel[static_cast<std::size_t>(id)] ? 0.0 : resistance_of(id);
    };

    for (NodeId u : model_.topo) {
      if (!sel[static_cast<std::size_t>(u)] || u == model_.terminal) continue;
      for (NodeId id : model_.topo) {
        const auto i = static_cast<std::size_t>(id);
        if (id == model_.root) {
          up[i] = 0.0;
          continue;
        }
        up[i] = kInf;
        via_up[i] = kNoNode;
        for (NodeId p : parents_[i]) {
          const double c = up[static_cast<std::size_t>(p)] + price(p);
          if (c < up[i]) {
            up[i] = c;
            via_up[i] = p;
          }
        }
      }
      for (auto it = model_.topo.rbegin(); it != model_.topo.rend(); ++it) {
        const auto i = static_cast<std::size_t>(*it);
        if (*it == model_.terminal) {
          down[i] = 0.0;
          continue;
        }
        down[i] = kInf;
        via_down[i] = kNoNode;
        for (NodeId c : children_[i]) {
          const double v = down[static_cast<std::size_t>(c)] + price(c);
          if (v < down[i]) {
            down[i] = v;
            via_down[i] = c;
          }
        }
      }
      if (up[static_cast<std::size_t>(u)] == kInf ||
          down[static_cast<std::size_t>(u)] == kInf)
        return;  // infeasible; the search proves it
      for (NodeId at = u; at != model_.root;
           at = via_up[static_cast<std::size_t>(at)])
        sel[static_cast<std::size_t>(
            via_up[static_cast<std::size_t>(at)])] = 1;
      for (NodeId at = u; at != model_.terminal;
           at = via_down[static_cast<std::size_t>(at)])
        sel[static_cast<std::size_t>(
            via_down[static_cast<std::size_t>(at)])] = 1;
    }

    double cost = 0.0;
    for (NodeId id : free_)
      if (sel[static_cast<std::size_t>(id)]) cost += resistance_of(id);
    best_ = cost;
    best_selection_ = std::move(sel);
    found_ = true;
  }

  // Least cost still required to wire every selected node to both the root
  // and the terminal through non-excluded nodes, taking the worst single
  // node; infinity when some selected node cannot be wired at all.  A bound
  // of 0 means the current selection is feasible as it stands.  Fills the
  // cheapest-chain links and the worst node for branching.
  double wiring_bound() {
    auto price = [&](NodeId id) -> double {
      const auto i = static_cast<std::size_t>(id);
      return status_[i] == 1 ? 0.0 : resistance_of(id);
    };
    for (NodeId id : model_.topo) {
      const auto i = static_cast<std::size_t>(id);
      if (id == model_.root) {
        up_[i] = status_[i] == 0 ? kInf : 0.0;
        continue;
      }
      up_[i] = kInf;
      via_up_[i] = kNoNode;
      if (status_[i] == 0) continue;
      for (NodeId p : parents_[i]) {
        if (status_[static_cast<std::size_t>(p)] == 0) continue;
        const double c = up_[static_cast<std::size_t>(p)] + price(p);
        if (c < up_[i]) {
          up_[i] = c;
          via_up_[i] = p;
        }
      }
    }
    for (auto it = model_.topo.rbegin(); it != model_.topo.rend(); ++it) {
      const auto i = static_cast<std::size_t>(*it);
      if (*it == model_.terminal) {
        down_[i] = 0.0;
        continue;
      }
      down_[i] = kInf;
      via_down_[i] = kNoNode;
      if (status_[i] == 0) continue;
      for (NodeId c : children_[i]) {
        if (status_[static_cast<std::size_t>(c)] == 0) continue;
        const double v = down_[static_cast<std::size_t>(c)] + price(c);
        if (v < down_[i]) {
          down_[i] = v;
          via_down_[i] = c;
        }
      }
    }
    double bound = 0.0;
    worst_ = kNoNode;
    for (NodeId id : model_.nodes) {
      const auto i = static_cast<std::size_t>(id);
      if (status_[i] != 1) continue;
      const double need = up_[i] + down_[i];
      if (need == kInf) return kInf;
      if (need > bound) {
        bound = need;
        worst_ = id;
      }
    }
    return bound;
  }

  // First undecided node on the worst node's cheapest wiring chain.
  NodeId branch_node() const {
    for (NodeId at = worst_; at != model_.root;
         at = via_up_[static_cast<std::size_t>(at)]) {
      const NodeId p = via_up_[static_cast<std::size_t>(at)];
      if (status_[static_cast<std::size_t>(p)] == 2) return p;
    }
    for (NodeId at = worst_; at != model_.terminal;
         at = via_down_[static_cast<std::size_t>(at)]) {
      const NodeId c = via_down_[static_cast<std::size_t>(at)];
      if (status_[static_cast<std::size_t>(c)] == 2) return c;
    }
    throw ContractViolation("solve_stitch_exact: branching invariant broken");
  }

  void dfs(double cost) {
    if (++explored_ > kSearchCap)
      throw ResourceError("solve_stitch_exact: search budget exhausted");
    if (cost >= best_ - 1e-12) return;
    const double bound = wiring_bound();
    if (bound == kInf || cost + bound >= best_ - 1e-12) return;
    if (bound == 0.0) {
      // Every selected node is wired; dropping all undecided nodes is the
      // cheapest completion of this subtree.
      best_ = cost;
      best_selection_.assign(status_.size(), 0);
      for (std::size_t i = 0; i < status_.size(); ++i)
        if (status_[i] == 1) best_selection_[i] = 1;
      found_ = true;
      return;
    }
    const NodeId id = branch_node();
    auto& slot = status_[static_cast<std::size_t>(id)];
    slot = 1;
    dfs(cost + resistance_of(id));
    slot = 0;
    dfs(cost);
    slot = 2;
  }

  const StitchModel& model_;
  std::vector<std::vector<NodeId>> children_, parents_;
  std::vector<std::uint8_t> status_;  // 0 excluded, 1 selected, 2 undecided
  std::vector<NodeId> free_;
  std::vector<double> up_, down_;
  std::vector<NodeId> via_up_, via_down_;
  NodeId worst_ = kNoNode;
  std::vector<std::uint8_t> best_selection_;
  double best_ = std::numeric_limits<double>::infinity();
  bool found_ = false;
  std::uint64_t explored_ = 0;
};

}  // namespace

StitchSolution solve_stitch_exact(const StitchModel& model,
                                  std::int64_t node_budget) {
  if (static_cast<std::int64_t>(model.nodes.size()) > node_budget)
    throw ResourceError(
        "solve_stitch_exact: model has " + std::to_string(model.nodes.size()) +
        " nodes, over the budget of " + std::to_string(node_budget) +
        "; export it with export_stitch_model and use an external solver");
  return StitchSearch(model).run();
}

namespace {

void write_arc_sum(std::ostream& out, const std::vector<std::int32_t>& arcs) {
  for (std::int32_t a : arcs) out << " - y" << a;
}

}  // namespace

void export_stitch_model(const StitchModel& model, std::ostream& out) {
  std::vector<std::vector<std::int32_t>> out_arcs(
      static_cast<std::size_t>(model.id_bound));
  std::vector<std::vector<std::int32_t>> in_arcs(
      static_cast<std::size_t>(model.id_bound));
  for (std::size_t a = 0; a < model.arcs.size(); ++a) {
    out_arcs[static_cast<std::size_t>(model.arcs[a].tail)].push_back(
        static_cast<std::int32_t>(a));
    in_arcs[static_cast<std::size_t>(model.arcs[a].head)].push_back(
        static_cast<std::int32_t>(a));
  }

  out << "\\ morbdd stitch model: minimum-resistance connected keep-set\n";
  out << "Minimize\n obj:";
  bool any = false;
  for (NodeId id : model.nodes) {
    const double r = model.node_resistance[static_cast<std::size_t>(id)];
    if (r == 0.0) continue;
    out << (any ? " + " : " ") << r << " x" << id;
    any = true;
  }
  if (!any) out << " 0 x" << model.nodes.front();
  out << "\nSubject To\n";
  for (NodeId id : model.nodes) {
    const auto i = static_cast<std::size_t>(id);
    out << " out_" << id << ": x" << id;
    write_arc_sum(out, out_arcs[i]);
    out << " <= 0\n";
    if (!out_arcs[i].empty()) {
      out << " out_ub_" << id << ":";
      for (std::int32_t a : out_arcs[i]) out << " + y" << a;
      out << " - " << out_arcs[i].size() << " x" << id << " <= 0\n";
    }
    if (id != model.root) {
      out << " in_" << id << ": x" << id;
      write_arc_sum(out, in_arcs[i]);
      out << " <= 0\n";
    }
    if (!in_arcs[i].empty()) {
      out << " in_ub_" << id << ":";
      for (std::int32_t a : in_arcs[i]) out << " + y" << a;
      out << " - " << in_arcs[i].size() << " x" << id << " <= 0\n";
    }
  }
  out << "Bounds\n";
  for (NodeId id : model.fixed.sorted_ids()) out << " x" << id << " = 1\n";
  out << "Binaries\n";
  for (NodeId id : model.nodes) out << " x" << id << "\n";
  for (std::size_t a = 0; a < model.arcs.size(); ++a) out << " y" << a << "\n";
  out << "End\n";
}

void export_stitch_model(const StitchModel& model,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  export_stitch_model(model, out);
  if (!out.flush()) throw IoError("failed writing " + path.string());
}

namespace {

class WindowSearch {
 public:
  WindowSearch(const Bdd& bdd, const NodeScores& scores, const KeepSet& keep,
               double tau)
      : bdd_(bdd), scores_(scores), keep_(keep), tau_(tau) {}

  // All minimum-cost down-paths from `start` to `target_layer`, where
  // already-kept nodes cost nothing.
  void search(NodeId start, int target_layer) {
    target_ = target_layer;
    path_.clear();
    dfs(start, bdd_.node(start).layer, 0.0);
  }

  bool found() const { return !best_paths_.empty(); }
  double cost() const { return best_cost_; }
  const std::vector<std::vector<NodeId>>& paths() const { return best_paths_; }

 private:
  double price(NodeId id) const {
    if (keep_.contains(id) || id == bdd_.root() || id == bdd_.terminal())
      return 0.0;
    return resistance(scores_.at(id), tau_);
  }

  void dfs(NodeId at, int layer, double cost) {
    path_.push_back(at);
    if (layer == target_) {
      if (cost < best_cost_) {
        best_cost_ = cost;
        best_paths_.clear();
      }
      if (cost == best_cost_) best_paths_.push_back(path_);
      path_.pop_back();
      return;
    }
    const Node& node = bdd_.node(at);
    for (NodeId child : {node.zero_child, node.one_child})
      if (child != kNoNode && bdd_.contains(child))
        dfs(child, layer + 1, cost + price(child));
    path_.pop_back();
  }

  const Bdd& bdd_;
  const NodeScores& scores_;
  const KeepSet& keep_;
  double tau_;
  int target_ = 0;
  std::vector<NodeId> path_;
  std::vector<std::vector<NodeId>> best_paths_;
  double best_cost_ = std::numeric_limits<double>::infinity();
};

}  // namespace

KeepSet min_resistance_stitch(const Bdd& bdd, const NodeScores& scores,
                              const KeepSet& keep, double tau, int alpha) {
  if (alpha < 1)
    throw ValidationError("min_resistance_stitch: alpha must be >= 1");
  const ConnectivityReport conn = keep_connectivity(bdd, keep);
  if (conn.connected)
    throw ContractViolation(
        "min_resistance_stitch: keep-set is already connected");

  const std::vector<std::uint8_t> reach = kept_reach(bdd, keep);
  const int frontier_layer = conn.last_connected_layer;
  std::vector<NodeId> starts;
  for (NodeId id : bdd.layer(frontier_layer))
    if (keep.contains(id) && reach[static_cast<std::size_t>(id)])
      starts.push_back(id);
  if (starts.empty())
    throw ContractViolation("min_resistance_stitch: keep-set has no root");

  WindowSearch window(bdd, scores, keep, tau);
  int target = std::min(frontier_layer + alpha, bdd.num_layers());
  while (true) {
    for (NodeId start : starts) window.search(start, target);
    if (window.found()) break;
    if (target == bdd.num_layers())
      throw ContractViolation(
          "min_resistance_stitch: no down-path reaches the terminal layer");
    target = std::min(target + 1, bdd.num_layers());
  }

  KeepSet out = keep;
  for (const auto& path : window.paths())
    for (NodeId id : path) out.insert(id);

  const ConnectivityReport after = keep_connectivity(bdd, out);
  if (!after.connected && after.last_connected_layer <= frontier_layer)
    throw ContractViolation("min_resistance_stitch: no progress made");
  return out;
}

std::string to_string(Stitcher stitcher) {
  switch (stitcher) {
    case Stitcher::mip: return "mip";
    case Stitcher::min_resistance: return "mr";
    case Stitcher::none: return "none";
  }
  return "none";
}

Stitcher stitcher_from_string(const std::string& name) {
  if (name == "mip") return Stitcher::mip;
  if (name == "mr" || name == "min_resistance") return Stitcher::min_resistance;
  if (name == "none") return Stitcher::none;
  throw ValidationError("unknown stitcher '" + name + "'");
}

DeployResult deploy(const Instance& inst, const SparsifierModel& model,
                    const DeployConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  const Bdd bdd = compile_exact(inst, config.compile);
  const NodeScores scores = score_bdd(model, bdd);
  KeepSet keep = threshold_keepset(scores, config.tau);

  DeployResult result;
  DeployReport& report = result.report;
  report.inc = bdd.node_count();
  report.tau = config.tau;
  report.stitcher = to_string(config.stitcher);

  ConnectivityReport conn = keep_connectivity(bdd, keep);
  while (!conn.connected && config.stitcher != Stitcher::none) {
    if (report.stitch_iterations >= bdd.num_layers())
      throw ContractViolation("deploy: stitching failed to converge");
    if (config.stitcher == Stitcher::mip) {
      const StitchModel stitch_model = build_stitch_model(bdd, scores, config.tau);
      const StitchSolution solution =
          solve_stitch_exact(stitch_model, config.mip_node_budget);
      keep = solution.keep;
      ++report.stitch_iterations;
      conn = keep_connectivity(bdd, keep);
      if (!conn.connected)
        throw ContractViolation("deploy: stitch solution is disconnected");
    } else {
      keep = min_resistance_stitch(bdd, scores, keep, config.tau, config.alpha);
      ++report.stitch_iterations;
      conn = keep_connectivity(bdd, keep);
    }
  }

  report.connected = conn.connected;
  report.last_connected_layer = conn.last_connected_layer;
  if (conn.connected) {
    const Bdd sub = induced_subbdd(bdd, keep);
    report.rnc = sub.node_count();
    EnumerationResult enumeration = enumerate_frontier(sub);
    report.comp = enumeration.frontier.comparison_count;
    report.frontier_size = enumeration.frontier.size();
    result.frontier = std::move(enumeration.frontier);
  } else {
    report.rnc = static_cast<std::int64_t>(keep.size());
  }
  result.keep = std::move(keep);
  report.time_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return result;
}

}  // namespace morbdd
