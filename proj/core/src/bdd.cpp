#include "morbdd/bdd.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>

#include "morbdd/errors.hpp"

namespace morbdd {

std::vector<NodeId> KeepSet::sorted_ids() const {
  std::vector<NodeId> ids;
  ids.reserve(count_);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) ids.push_back(static_cast<NodeId>(i));
  return ids;
}

void Bdd::rebuild_in_arcs() {
  in_offsets_.assign(nodes_.size() + 1, 0);
  for (const auto& node : nodes_) {
    if (node.layer == 0) continue;
    if (node.zero_child != kNoNode) ++in_offsets_[node.zero_child + 1];
    if (node.one_child != kNoNode) ++in_offsets_[node.one_child + 1];
  }
  std::partial_sum(in_offsets_.begin(), in_offsets_.end(), in_offsets_.begin());
  in_arcs_.resize(static_cast<std::size_t>(in_offsets_.back()));
  std::vector<std::int64_t> cursor(in_offsets_.begin(), in_offsets_.end() - 1);
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    const auto& node = nodes_[id];
    if (node.layer == 0) continue;
    if (node.zero_child != kNoNode)
      in_arcs_[cursor[node.zero_child]++] = {static_cast<NodeId>(id), 0};
    if (node.one_child != kNoNode)
      in_arcs_[cursor[node.one_child]++] = {static_cast<NodeId>(id), 1};
  }
}

// Shared top-down construction.  maxwidth <= 0 disables truncation.
Bdd Bdd::compile(const Instance& inst, std::int64_t maxwidth,
                 const CompileOptions& options) {
  validate_instance(inst);
  const int n = inst.num_items;

  Bdd bdd;
  bdd.instance_ = inst;
  bdd.layers_.resize(static_cast<std::size_t>(n) + 1);
  auto& nodes = bdd.nodes_;

  auto require_budget = [&](int layer) {
    if (static_cast<std::int64_t>(nodes.size()) >= options.max_nodes)
      throw ResourceError("compile: node budget of " +
                          std::to_string(options.max_nodes) +
                          " exceeded at layer " + std::to_string(layer));
  };

  nodes.push_back(Node{0, 1, kNoNode, kNoNode});
  bdd.root_ = 0;
  bdd.layers_[0] = {0};

  struct Candidate {
    std::int64_t state;
    NodeId zero_parent = kNoNode;
    NodeId one_parent = kNoNode;
  };

  for (int l = 1; l <= n; ++l) {
    const std::int64_t w = inst.weights[static_cast<std::size_t>(l - 1)];
    const auto& current = bdd.layers_[static_cast<std::size_t>(l - 1)];

    if (l == n) {
      require_budget(n + 1);
      const NodeId t = static_cast<NodeId>(nodes.size());
      nodes.push_back(Node{0, n + 1, kNoNode, kNoNode});
      for (NodeId id : current) {
        nodes[static_cast<std::size_t>(id)].zero_child = t;
        if (nodes[static_cast<std::size_t>(id)].state + w <= inst.capacity)
          nodes[static_cast<std::size_t>(id)].one_child = t;
      }
      bdd.layers_[static_cast<std::size_t>(n)] = {t};
      bdd.terminal_ = t;
      break;
    }

    // Collect next-layer states in first-seen order.  Each state has at most
    // one zero-arc parent and one one-arc parent because states within a
    // layer are distinct.
    std::vector<Candidate> candidates;
    std::unordered_map<std::int64_t, std::int32_t> index;
    candidates.reserve(current.size() * 2);
    index.reserve(current.size() * 2);
    for (NodeId id : current) {
      const std::int64_t s = nodes[static_cast<std::size_t>(id)].state;
      auto [zero_it, zero_fresh] =
          index.try_emplace(s, static_cast<std::int32_t>(candidates.size()));
      if (zero_fresh) candidates.push_back(Candidate{s});
      candidates[static_cast<std::size_t>(zero_it->second)].zero_parent = id;
      if (s + w <= inst.capacity) {
        auto [one_it, one_fresh] = index.try_emplace(
            s + w, static_cast<std::int32_t>(candidates.size()));
        if (one_fresh) candidates.push_back(Candidate{s + w});
        candidates[static_cast<std::size_t>(one_it->second)].one_parent = id;
      }
    }

    // Width restriction: keep the maxwidth smallest states, ties by
    // insertion order, then renumber survivors in insertion order.
    std::vector<std::uint8_t> kept(candidates.size(), 1);
    if (maxwidth > 0 &&
        static_cast<std::int64_t>(candidates.size()) > maxwidth) {
      std::vector<std::int32_t> by_state(candidates.size());
      std::iota(by_state.begin(), by_state.end(), 0);
      std::sort(by_state.begin(), by_state.end(),
                [&](std::int32_t a, std::int32_t b) {
                  const auto sa = candidates[static_cast<std::size_t>(a)].state;
                  const auto sb = candidates[static_cast<std::size_t>(b)].state;
                  return sa != sb ? sa < sb : a < b;
                });
      std::fill(kept.begin(), kept.end(), 0);
      for (std::int64_t i = 0; i < maxwidth; ++i)
        kept[static_cast<std::size_t>(by_state[static_cast<std::size_t>(i)])] = 1;
    }

    auto& next = bdd.layers_[static_cast<std::size_t>(l)];
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (!kept[c]) continue;
      require_budget(l + 1);
      const NodeId id = static_cast<NodeId>(nodes.size());
      nodes.push_back(Node{candidates[c].state, l + 1, kNoNode, kNoNode});
      next.push_back(id);
      if (candidates[c].zero_parent != kNoNode)
        nodes[static_cast<std::size_t>(candidates[c].zero_parent)].zero_child = id;
      if (candidates[c].one_parent != kNoNode)
        nodes[static_cast<std::size_t>(candidates[c].one_parent)].one_child = id;
    }
  }

  bdd.present_count_ = bdd.nodes_.size();
  bdd.rebuild_in_arcs();
  return bdd;
}

Bdd compile_exact(const Instance& inst, const CompileOptions& options) {
  return Bdd::compile(inst, 0, options);
}

Bdd compile_restricted_width(const Instance& inst, int beta_percent,
                             const CompileOptions& options) {
  if (beta_percent < 1 || beta_percent > 100)
    throw ValidationError("compile_restricted_width: beta_percent must be in [1, 100]");
  const Bdd exact = compile_exact(inst, options);
  const std::size_t exact_max_width = bdd_stats(exact).max_width;
  const std::int64_t maxwidth =
      (static_cast<std::int64_t>(beta_percent) *
           static_cast<std::int64_t>(exact_max_width) + 99) / 100;
  return Bdd::compile(inst, maxwidth, options);
}

Bdd induced_subbdd(const Bdd& bdd, const KeepSet& keep) {
  if (keep.universe_size() != bdd.id_bound())
    throw ContractViolation("induced_subbdd: keep-set universe does not match the BDD");
  if (!keep.contains(bdd.root()) || !keep.contains(bdd.terminal()))
    throw ContractViolation("induced_subbdd: keep-set must contain root and terminal");

  Bdd out;
  out.instance_ = bdd.instance_;
  out.nodes_ = bdd.nodes_;
  out.layers_.resize(bdd.layers_.size());
  out.root_ = bdd.root_;
  out.terminal_ = bdd.terminal_;

  for (std::size_t id = 0; id < out.nodes_.size(); ++id) {
    if (!bdd.contains(static_cast<NodeId>(id)) ||
        !keep.contains(static_cast<NodeId>(id)))
      out.nodes_[id] = Node{};
  }
  std::size_t count = 0;
  for (int l = 1; l <= bdd.num_layers(); ++l) {
    auto& list = out.layers_[static_cast<std::size_t>(l - 1)];
    for (NodeId id : bdd.layer(l)) {
      if (out.nodes_[static_cast<std::size_t>(id)].layer == 0) continue;
      list.push_back(id);
      ++count;
    }
  }
  for (auto& node : out.nodes_) {
    if (node.layer == 0) continue;
    if (node.zero_child != kNoNode && !out.contains(node.zero_child))
      node.zero_child = kNoNode;
    if (node.one_child != kNoNode && !out.contains(node.one_child))
      node.one_child = kNoNode;
  }
  out.present_count_ = count;
  out.rebuild_in_arcs();
  return out;
}

namespace {

ConnectivityReport connectivity_impl(const Bdd& bdd, const KeepSet* keep) {
  auto present = [&](NodeId id) {
    return bdd.contains(id) && (keep == nullptr || keep->contains(id));
  };
  ConnectivityReport report;
  if (!present(bdd.root())) return report;

  std::vector<std::uint8_t> reach(bdd.id_bound(), 0);
  reach[static_cast<std::size_t>(bdd.root())] = 1;
  report.last_connected_layer = 1;
  for (int l = 1; l < bdd.num_layers(); ++l) {
    bool next_reached = false;
    for (NodeId id : bdd.layer(l)) {
      if (!present(id) || !reach[static_cast<std::size_t>(id)]) continue;
      const Node& node = bdd.node(id);
      if (node.zero_child != kNoNode && present(node.zero_child)) {
        reach[static_cast<std::size_t>(node.zero_child)] = 1;
        next_reached = true;
      }
      if (node.one_child != kNoNode && present(node.one_child)) {
        reach[static_cast<std::size_t>(node.one_child)] = 1;
        next_reached = true;
      }
    }
    if (!next_reached) break;
    report.last_connected_layer = l + 1;
  }
  report.connected = reach[static_cast<std::size_t>(bdd.terminal())] != 0;
  return report;
}

}  // namespace

ConnectivityReport is_connected(const Bdd& bdd) {
  return connectivity_impl(bdd, nullptr);
}

ConnectivityReport keep_connectivity(const Bdd& bdd, const KeepSet& keep) {
  if (keep.universe_size() != bdd.id_bound())
    throw ContractViolation("keep_connectivity: keep-set universe does not match the BDD");
  return connectivity_impl(bdd, &keep);
}

BddStats bdd_stats(const Bdd& bdd) {
  BddStats stats;
  stats.node_count = bdd.node_count();
  stats.layer_widths.reserve(static_cast<std::size_t>(bdd.num_layers()));
  for (int l = 1; l <= bdd.num_layers(); ++l) {
    stats.layer_widths.push_back(bdd.layer(l).size());
    stats.max_width = std::max(stats.max_width, bdd.layer(l).size());
  }
  return stats;
}

// ---------------------------------------------------------------- dump io

void write_bdd_dump(const Bdd& bdd, std::ostream& out) {
  out << "morbdd-bdd v1\n";
  out << "instance " << std::hex << instance_hash(bdd.instance()) << std::dec
      << '\n';
  out << "layers " << bdd.num_layers() << '\n';
  for (int l = 1; l <= bdd.num_layers(); ++l) {
    out << "layer " << l << '\n';
    for (NodeId id : bdd.layer(l)) {
      const Node& node = bdd.node(id);
      out << id << ' ' << node.state << ' ';
      if (node.zero_child == kNoNode) out << '-'; else out << node.zero_child;
      out << ' ';
      if (node.one_child == kNoNode) out << '-'; else out << node.one_child;
      out << '\n';
    }
  }
}

void write_bdd_dump(const Bdd& bdd, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  write_bdd_dump(bdd, out);
  if (!out) throw IoError("write failed: " + path.string());
}

namespace {

NodeId parse_child(const std::string& token, int line_no) {
  if (token == "-") return kNoNode;
  try {
    return static_cast<NodeId>(std::stol(token));
  } catch (const std::exception&) {
    throw ParseError("bdd dump:" + std::to_string(line_no) +
                     ": bad child id '" + token + "'");
  }
}

}  // namespace

Bdd read_bdd_dump(std::istream& in, const Instance& inst) {
  std::string line;
  int line_no = 0;
  auto next_line = [&]() {
    if (!std::getline(in, line))
      throw ParseError("bdd dump:" + std::to_string(line_no + 1) +
                       ": unexpected end of file");
    ++line_no;
  };

  next_line();
  if (line != "morbdd-bdd v1")
    throw ParseError("bdd dump:1: bad magic line");
  next_line();
  {
    std::istringstream ls(line);
    std::string key, hash;
    ls >> key >> hash;
    std::ostringstream expect;
    expect << std::hex << instance_hash(inst);
    if (key != "instance" || hash != expect.str())
      throw ValidationError("bdd dump: instance hash mismatch");
  }
  next_line();
  int num_layers = 0;
  {
    std::istringstream ls(line);
    std::string key;
    ls >> key >> num_layers;
    if (key != "layers" || num_layers != inst.num_items + 1)
      throw ValidationError("bdd dump: layer count does not match the instance");
  }

  struct RawNode {
    NodeId id;
    std::int64_t state;
    NodeId zero_child;
    NodeId one_child;
    int layer;
  };
  std::vector<RawNode> raw;
  NodeId max_id = -1;
  int current_layer = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string first;
    ls >> first;
    if (first == "layer") {
      int l = 0;
      ls >> l;
      if (l != current_layer + 1)
        throw ParseError("bdd dump:" + std::to_string(line_no) +
                         ": layers must appear in order");
      current_layer = l;
      continue;
    }
    if (current_layer == 0)
      throw ParseError("bdd dump:" + std::to_string(line_no) +
                       ": node line before any layer marker");
    std::int64_t state;
    std::string zero_tok, one_tok;
    ls >> state >> zero_tok >> one_tok;
    if (!ls)
      throw ParseError("bdd dump:" + std::to_string(line_no) +
                       ": expected 'id state zero one'");
    RawNode node{static_cast<NodeId>(std::stol(first)), state,
                 parse_child(zero_tok, line_no), parse_child(one_tok, line_no),
                 current_layer};
    max_id = std::max(max_id, node.id);
    raw.push_back(node);
  }
  if (current_layer != num_layers)
    throw ValidationError("bdd dump: missing layers");

  Bdd bdd;
  bdd.instance_ = inst;
  bdd.nodes_.assign(static_cast<std::size_t>(max_id) + 1, Node{});
  bdd.layers_.resize(static_cast<std::size_t>(num_layers));
  for (const auto& node : raw) {
    if (bdd.nodes_[static_cast<std::size_t>(node.id)].layer != 0)
      throw ValidationError("bdd dump: duplicate node id " +
                            std::to_string(node.id));
    bdd.nodes_[static_cast<std::size_t>(node.id)] =
        Node{node.state, node.layer, node.zero_child, node.one_child};
    bdd.layers_[static_cast<std::size_t>(node.layer - 1)].push_back(node.id);
  }
  if (bdd.layers_.front().size() != 1 || bdd.layers_.back().size() != 1)
    throw ValidationError("bdd dump: root and terminal layers must hold one node");
  bdd.root_ = bdd.layers_.front().front();
  bdd.terminal_ = bdd.layers_.back().front();
  bdd.present_count_ = raw.size();
  for (const auto& node : raw) {
    for (NodeId child : {node.zero_child, node.one_child}) {
      if (child == kNoNode) continue;
      if (!bdd.contains(child) ||
          bdd.node(child).layer != node.layer + 1)
        throw ValidationError("bdd dump: dangling or cross-layer arc from node " +
                              std::to_string(node.id));
    }
  }
  bdd.rebuild_in_arcs();
  return bdd;
}

Bdd read_bdd_dump(const std::filesystem::path& path, const Instance& inst) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  return read_bdd_dump(in, inst);
}

}  // namespace morbdd
