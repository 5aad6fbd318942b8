#include "morbdd/pareto.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "morbdd/errors.hpp"

namespace morbdd {

namespace {

inline int lex_compare(const std::int32_t* a, const std::int32_t* b, int k) {
  for (int i = 0; i < k; ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

inline bool dominates_raw(const std::int32_t* a, const std::int32_t* b, int k) {
  bool strict = false;
  for (int i = 0; i < k; ++i) {
    if (a[i] < b[i]) return false;
    if (a[i] > b[i]) strict = true;
  }
  return strict;
}

// Index of `vec` in a stride-k array sorted lexicographically descending,
// or -1 when absent.
std::int64_t find_label(const std::vector<std::int32_t>& flat,
                        const std::int32_t* vec, int k) {
  const auto sk = static_cast<std::size_t>(k);
  std::size_t lo = 0, hi = flat.size() / sk;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (lex_compare(flat.data() + mid * sk, vec, k) > 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo * sk < flat.size() && lex_compare(flat.data() + lo * sk, vec, k) == 0)
    return static_cast<std::int64_t>(lo);
  return -1;
}

// Streaming nondominated filter.  Candidates must arrive lexicographically
// descending with duplicates already collapsed; then no candidate can
// dominate an accepted survivor, so testing against survivors suffices.
// For two objectives the last survivor carries the running second-coordinate
// maximum and a single test decides; otherwise survivors are scanned, with a
// componentwise-maximum screen to skip candidates nothing can dominate.
class StreamFilter {
 public:
  StreamFilter(std::vector<std::int32_t>& out, int k, std::int64_t& comparisons)
      : out_(out), k_(k), comparisons_(comparisons), max_rest_(
            static_cast<std::size_t>(k), std::numeric_limits<std::int32_t>::min()) {}

  void push(const std::int32_t* cand) {
    const auto sk = static_cast<std::size_t>(k_);
    if (!out_.empty()) {
      if (k_ == 2) {
        ++comparisons_;
        if (dominates_raw(out_.data() + out_.size() - sk, cand, k_)) return;
      } else {
        bool screened = false;
        for (int i = 1; i < k_; ++i) {
          if (cand[i] > max_rest_[static_cast<std::size_t>(i)]) {
            screened = true;
            break;
          }
        }
        if (!screened) {
          for (std::size_t pos = out_.size(); pos != 0; pos -= sk) {
            ++comparisons_;
            if (dominates_raw(out_.data() + pos - sk, cand, k_)) return;
          }
        }
      }
    }
    out_.insert(out_.end(), cand, cand + sk);
    for (int i = 1; i < k_; ++i)
      max_rest_[static_cast<std::size_t>(i)] =
          std::max(max_rest_[static_cast<std::size_t>(i)], cand[i]);
  }

 private:
  std::vector<std::int32_t>& out_;
  int k_;
  std::int64_t& comparisons_;
  std::vector<std::int32_t> max_rest_;
};

}  // namespace

bool dominates(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  if (a.size() != b.size() || a.empty())
    throw ContractViolation("dominates: vectors must share a positive length");
  return dominates_raw(a.data(), b.data(), static_cast<int>(a.size()));
}

FilterResult filter_nondominated(const std::vector<ObjectiveVector>& vectors) {
  FilterResult result;
  if (vectors.empty()) return result;
  const int k = static_cast<int>(vectors.front().size());
  if (k == 0) throw ContractViolation("filter_nondominated: empty vectors");
  for (const auto& v : vectors)
    if (static_cast<int>(v.size()) != k)
      throw ContractViolation("filter_nondominated: inconsistent vector lengths");

  const auto sk = static_cast<std::size_t>(k);
  std::vector<std::int32_t> flat(vectors.size() * sk);
  for (std::size_t i = 0; i < vectors.size(); ++i)
    std::copy(vectors[i].begin(), vectors[i].end(), flat.begin() + i * sk);
  std::vector<std::int32_t> order(vectors.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
    return lex_compare(flat.data() + static_cast<std::size_t>(a) * sk,
                       flat.data() + static_cast<std::size_t>(b) * sk, k) > 0;
  });

  std::vector<std::int32_t> survivors;
  StreamFilter filter(survivors, k, result.comparisons);
  const std::int32_t* prev = nullptr;
  for (auto idx : order) {
    const std::int32_t* cand = flat.data() + static_cast<std::size_t>(idx) * sk;
    if (prev != nullptr && lex_compare(prev, cand, k) == 0) continue;
    filter.push(cand);
    prev = cand;
  }

  const std::size_t count = survivors.size() / sk;
  result.nondominated.reserve(count);
  for (std::size_t i = count; i != 0; --i) {  // descending -> ascending
    const auto* row = survivors.data() + (i - 1) * sk;
    result.nondominated.emplace_back(row, row + sk);
  }
  return result;
}

// ------------------------------------------------------------ enumeration

namespace {

// Merge the label sets of a node's parents, each shifted by its arc value,
// into the node's own filtered label set.  Parent sets are sorted, so two
// streams merge linearly; wider in-degrees (the terminal) gather and sort.
class NodePropagator {
 public:
  NodePropagator(const Bdd& bdd, NodeLabels& labels, bool prune)
      : bdd_(bdd), labels_(labels), prune_(prune),
        k_(labels.num_objectives), sk_(static_cast<std::size_t>(k_)) {}

  void set_layer(int l) {
    one_offset_.resize(sk_);
    for (int i = 0; i < k_; ++i)
      one_offset_[static_cast<std::size_t>(i)] =
          bdd_.arc_profit(i, l - 1);  // arcs into layer l decide item l-1
    zero_offset_.assign(sk_, 0);
  }

  void propagate(NodeId id, std::int64_t& comparisons) {
    auto arcs = bdd_.in_arcs(id);
    out_.clear();
    if (arcs.empty()) {  // unreachable within a connected BDD: no labels
      labels_.flat[static_cast<std::size_t>(id)].clear();
      return;
    }
    if (arcs.size() <= 2)
      merge_two(arcs, comparisons);
    else
      gather_sort(arcs, comparisons);
    labels_.flat[static_cast<std::size_t>(id)].assign(out_.begin(), out_.end());
  }

 private:
  struct Cursor {
    const std::int32_t* cur = nullptr;
    const std::int32_t* end = nullptr;
    const std::int32_t* off = nullptr;
    std::int32_t head[8];

    bool empty() const { return cur == end; }
    void load(int k) {
      for (int i = 0; i < k; ++i) head[i] = cur[i] + off[i];
    }
    void advance(int k) {
      cur += k;
      if (cur != end) load(k);
    }
  };

  Cursor make_cursor(const InArc& arc) const {
    Cursor c;
    const auto& src = labels_.flat[static_cast<std::size_t>(arc.parent)];
    c.cur = src.data();
    c.end = src.data() + src.size();
    c.off = arc.domain ? one_offset_.data() : zero_offset_.data();
    if (!c.empty()) c.load(k_);
    return c;
  }

  void merge_two(std::span<const InArc> arcs, std::int64_t& comparisons) {
    Cursor a = make_cursor(arcs[0]);
    Cursor b = arcs.size() == 2 ? make_cursor(arcs[1]) : Cursor{};
    StreamFilter filter(out_, k_, comparisons);
    auto emit_one = [&](const std::int32_t* cand) {
      if (prune_)
        filter.push(cand);
      else
        out_.insert(out_.end(), cand, cand + sk_);
    };
    while (!a.empty() && !b.empty()) {
      const int c = lex_compare(a.head, b.head, k_);
      if (c > 0) {
        emit_one(a.head);
        a.advance(k_);
      } else if (c < 0) {
        emit_one(b.head);
        b.advance(k_);
      } else {  // duplicate across streams: emit once
        emit_one(a.head);
        a.advance(k_);
        b.advance(k_);
      }
    }
    for (Cursor* rest : {&a, &b}) {
      while (!rest->empty()) {
        emit_one(rest->head);
        rest->advance(k_);
      }
    }
  }

  void gather_sort(std::span<const InArc> arcs, std::int64_t& comparisons) {
    scratch_.clear();
    for (const auto& arc : arcs) {
      const auto& src = labels_.flat[static_cast<std::size_t>(arc.parent)];
      const std::int32_t* off =
          arc.domain ? one_offset_.data() : zero_offset_.data();
      for (std::size_t pos = 0; pos < src.size(); pos += sk_)
        for (std::size_t i = 0; i < sk_; ++i)
          scratch_.push_back(src[pos + i] + off[i]);
    }
    const std::size_t count = scratch_.size() / sk_;
    order_.resize(count);
    std::iota(order_.begin(), order_.end(), 0);
    std::sort(order_.begin(), order_.end(), [&](std::int64_t x, std::int64_t y) {
      const int c = lex_compare(
          scratch_.data() + static_cast<std::size_t>(x) * sk_,
          scratch_.data() + static_cast<std::size_t>(y) * sk_, k_);
      return c != 0 ? c > 0 : x < y;
    });
    StreamFilter filter(out_, k_, comparisons);
    const std::int32_t* prev = nullptr;
    for (auto idx : order_) {
      const std::int32_t* cand =
          scratch_.data() + static_cast<std::size_t>(idx) * sk_;
      if (prev != nullptr && lex_compare(prev, cand, k_) == 0) continue;
      if (prune_)
        filter.push(cand);
      else
        out_.insert(out_.end(), cand, cand + sk_);
      prev = cand;
    }
  }

  const Bdd& bdd_;
  NodeLabels& labels_;
  bool prune_;
  int k_;
  std::size_t sk_;
  std::vector<std::int32_t> zero_offset_;
  std::vector<std::int32_t> one_offset_;
  std::vector<std::int32_t> out_;
  std::vector<std::int32_t> scratch_;
  std::vector<std::int64_t> order_;
};

}  // namespace

EnumerationResult enumerate_frontier(const Bdd& bdd, Propagation mode) {
  const auto conn = is_connected(bdd);
  if (!conn.connected)
    throw ContractViolation(
        "enumerate_frontier: disconnected BDD, last connected layer " +
        std::to_string(conn.last_connected_layer));

  const Instance& inst = bdd.instance();
  const int k = inst.num_objectives;
  if (k > 8)
    throw ContractViolation("enumerate_frontier: at most 8 objectives supported");
  const auto sk = static_cast<std::size_t>(k);

  EnumerationResult result;
  NodeLabels& labels = result.labels;
  labels.num_objectives = k;
  labels.flat.assign(bdd.id_bound(), {});
  labels.flat[static_cast<std::size_t>(bdd.root())].assign(sk, 0);

  std::int64_t comparisons = 0;
  NodePropagator propagator(bdd, labels, mode == Propagation::pruned);
  for (int l = 2; l <= bdd.num_layers(); ++l) {
    propagator.set_layer(l);
    for (NodeId id : bdd.layer(l)) propagator.propagate(id, comparisons);
  }

  // The terminal's labels are the frontier; in unpruned mode filter them now.
  const auto& terminal_flat =
      labels.flat[static_cast<std::size_t>(bdd.terminal())];
  std::vector<std::int32_t> frontier_flat;
  if (mode == Propagation::pruned) {
    frontier_flat = terminal_flat;
  } else {
    StreamFilter filter(frontier_flat, k, comparisons);
    for (std::size_t pos = 0; pos < terminal_flat.size(); pos += sk)
      filter.push(terminal_flat.data() + pos);
  }

  Frontier& frontier = result.frontier;
  frontier.num_objectives = k;
  frontier.num_items = inst.num_items;
  frontier.comparison_count = comparisons;
  const std::size_t fcount = frontier_flat.size() / sk;
  frontier.vectors.reserve(fcount);
  for (std::size_t i = fcount; i != 0; --i) {  // descending -> ascending
    const auto* row = frontier_flat.data() + (i - 1) * sk;
    frontier.vectors.emplace_back(row, row + sk);
  }

  // -------- representative solutions by backtracking through the labels

  auto frontier_index = [&](const std::int32_t* vec) -> std::int64_t {
    std::size_t lo = 0, hi = frontier.vectors.size();
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (lex_compare(frontier.vectors[mid].data(), vec, k) < 0)
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo < frontier.vectors.size() &&
        lex_compare(frontier.vectors[lo].data(), vec, k) == 0)
      return static_cast<std::int64_t>(lo);
    return -1;
  };

  // First hop terminal -> layer N resolved in one sweep over layer N labels.
  const int num_layers = bdd.num_layers();
  std::vector<NodeId> entry_parent(fcount, kNoNode);
  std::vector<std::uint8_t> entry_domain(fcount, 0);
  if (num_layers >= 2 && fcount > 0) {
    std::vector<std::int32_t> shifted(sk);
    std::vector<std::int32_t> one_off(sk);
    for (int i = 0; i < k; ++i)
      one_off[static_cast<std::size_t>(i)] = bdd.arc_profit(i, num_layers - 1);
    for (NodeId pid : bdd.layer(num_layers - 1)) {
      const Node& parent = bdd.node(pid);
      const auto& src = labels.flat[static_cast<std::size_t>(pid)];
      for (std::size_t pos = 0; pos < src.size(); pos += sk) {
        for (int domain = 0; domain <= 1; ++domain) {
          const NodeId child =
              domain == 0 ? parent.zero_child : parent.one_child;
          if (child != bdd.terminal()) continue;
          for (std::size_t i = 0; i < sk; ++i)
            shifted[i] = src[pos + i] + (domain ? one_off[i] : 0);
          const auto fi = frontier_index(shifted.data());
          if (fi >= 0 && entry_parent[static_cast<std::size_t>(fi)] == kNoNode) {
            entry_parent[static_cast<std::size_t>(fi)] = pid;
            entry_domain[static_cast<std::size_t>(fi)] =
                static_cast<std::uint8_t>(domain);
          }
        }
      }
    }
  }

  frontier.solutions.assign(fcount,
                            std::vector<std::uint8_t>(
                                static_cast<std::size_t>(inst.num_items), 0));
  std::vector<std::int32_t> current(sk), target(sk);
  for (std::size_t f = 0; f < fcount; ++f) {
    auto& bits = frontier.solutions[f];
    if (entry_parent[f] == kNoNode)
      throw ContractViolation("enumerate_frontier: frontier vector without a terminal arc");
    NodeId at = entry_parent[f];
    std::copy(frontier.vectors[f].begin(), frontier.vectors[f].end(),
              current.begin());
    if (entry_domain[f]) {
      for (int i = 0; i < k; ++i)
        current[static_cast<std::size_t>(i)] -= bdd.arc_profit(i, num_layers - 1);
      bits[static_cast<std::size_t>(inst.num_items - 1)] = 1;
    }
    for (int l = num_layers - 1; l >= 2; --l) {
      bool found = false;
      for (const auto& arc : bdd.in_arcs(at)) {
        for (int i = 0; i < k; ++i)
          target[static_cast<std::size_t>(i)] =
              current[static_cast<std::size_t>(i)] -
              (arc.domain ? bdd.arc_profit(i, l - 1) : 0);
        const auto j =
            find_label(labels.flat[static_cast<std::size_t>(arc.parent)],
                       target.data(), k);
        if (j >= 0) {
          bits[static_cast<std::size_t>(l - 2)] = arc.domain;
          at = arc.parent;
          current = target;
          found = true;
          break;
        }
      }
      if (!found)
        throw ContractViolation("enumerate_frontier: backtracking failed");
    }
  }
  return result;
}

// ------------------------------------------------------- marking, counting

namespace {

void check_label_consistency(const Bdd& bdd, const NodeLabels& labels,
                             const Frontier& frontier) {
  if (labels.flat.size() != bdd.id_bound())
    throw ContractViolation("labels do not cover the BDD id space");
  if (labels.num_objectives != bdd.instance().num_objectives)
    throw ContractViolation("labels and BDD disagree on objective count");
  const auto& root = labels.flat[static_cast<std::size_t>(bdd.root())];
  if (root.size() != static_cast<std::size_t>(labels.num_objectives) ||
      std::any_of(root.begin(), root.end(), [](std::int32_t v) { return v != 0; }))
    throw ContractViolation("root label set must be the single zero vector");
  if (labels.count(bdd.terminal()) != frontier.size())
    throw ContractViolation("terminal labels do not match the frontier");
}

}  // namespace

KeepSet mark_pareto_nodes(const Bdd& bdd, const NodeLabels& labels,
                          const Frontier& frontier) {
  check_label_consistency(bdd, labels, frontier);
  const int k = labels.num_objectives;
  const auto sk = static_cast<std::size_t>(k);
  const int num_layers = bdd.num_layers();

  KeepSet marks(bdd.id_bound());
  marks.insert(bdd.root());
  marks.insert(bdd.terminal());

  // useful[id][i] = label i of node id extends to a frontier point.
  std::vector<std::vector<std::uint8_t>> useful(bdd.id_bound());
  useful[static_cast<std::size_t>(bdd.terminal())].assign(frontier.size(), 1);

  std::vector<std::int32_t> target(sk);
  for (int l = num_layers - 1; l >= 1; --l) {
    for (NodeId id : bdd.layer(l)) {
      const auto& mine = labels.flat[static_cast<std::size_t>(id)];
      const std::size_t count = mine.size() / sk;
      auto& mask = useful[static_cast<std::size_t>(id)];
      mask.assign(count, 0);
      if (count == 0) continue;
      const Node& node = bdd.node(id);
      bool any = false;
      for (std::size_t i = 0; i < count; ++i) {
        const std::int32_t* vec = mine.data() + i * sk;
        for (int domain = 0; domain <= 1; ++domain) {
          const NodeId child = domain == 0 ? node.zero_child : node.one_child;
          if (child == kNoNode) continue;
          for (int c = 0; c < k; ++c)
            target[static_cast<std::size_t>(c)] =
                vec[c] + (domain ? bdd.arc_profit(c, l) : 0);
          const auto j = find_label(labels.flat[static_cast<std::size_t>(child)],
                                    target.data(), k);
          if (j >= 0 && useful[static_cast<std::size_t>(child)]
                              [static_cast<std::size_t>(j)]) {
            mask[i] = 1;
            any = true;
            break;
          }
        }
      }
      if (any) marks.insert(id);
    }
    // The masks of layer l+1 are no longer needed.
    if (l + 1 <= num_layers)
      for (NodeId id : bdd.layer(l + 1)) {
        auto& done = useful[static_cast<std::size_t>(id)];
        done.clear();
        done.shrink_to_fit();
      }
  }
  return marks;
}

double pareto_node_fraction(const Bdd& bdd, const KeepSet& marks) {
  if (bdd.node_count() == 0)
    throw ContractViolation("pareto_node_fraction: empty BDD");
  return static_cast<double>(marks.size()) /
         static_cast<double>(bdd.node_count());
}

std::vector<double> count_pareto_paths(const Bdd& bdd, const NodeLabels& labels,
                                       const Frontier& frontier) {
  check_label_consistency(bdd, labels, frontier);
  const int k = labels.num_objectives;
  const auto sk = static_cast<std::size_t>(k);
  const int num_layers = bdd.num_layers();

  // Backward: completions of each label that land on the frontier.
  std::vector<std::vector<double>> down(bdd.id_bound());
  down[static_cast<std::size_t>(bdd.terminal())].assign(frontier.size(), 1.0);
  std::vector<std::int32_t> target(sk);
  for (int l = num_layers - 1; l >= 1; --l) {
    for (NodeId id : bdd.layer(l)) {
      const auto& mine = labels.flat[static_cast<std::size_t>(id)];
      const std::size_t count = mine.size() / sk;
      auto& mine_down = down[static_cast<std::size_t>(id)];
      mine_down.assign(count, 0.0);
      const Node& node = bdd.node(id);
      for (std::size_t i = 0; i < count; ++i) {
        const std::int32_t* vec = mine.data() + i * sk;
        for (int domain = 0; domain <= 1; ++domain) {
          const NodeId child = domain == 0 ? node.zero_child : node.one_child;
          if (child == kNoNode) continue;
          for (int c = 0; c < k; ++c)
            target[static_cast<std::size_t>(c)] =
                vec[c] + (domain ? bdd.arc_profit(c, l) : 0);
          const auto j = find_label(labels.flat[static_cast<std::size_t>(child)],
                                    target.data(), k);
          if (j >= 0)
            mine_down[i] +=
                down[static_cast<std::size_t>(child)][static_cast<std::size_t>(j)];
        }
      }
    }
  }

  // Forward: root paths realizing each label, combined on the fly.
  std::vector<double> through(bdd.id_bound(), 0.0);
  std::vector<std::vector<double>> up(bdd.id_bound());
  up[static_cast<std::size_t>(bdd.root())].assign(1, 1.0);
  through[static_cast<std::size_t>(bdd.root())] =
      down[static_cast<std::size_t>(bdd.root())].empty()
          ? 0.0
          : down[static_cast<std::size_t>(bdd.root())][0];
  for (int l = 2; l <= num_layers; ++l) {
    for (NodeId id : bdd.layer(l)) {
      const auto& mine = labels.flat[static_cast<std::size_t>(id)];
      const std::size_t count = mine.size() / sk;
      auto& mine_up = up[static_cast<std::size_t>(id)];
      mine_up.assign(count, 0.0);
      for (std::size_t i = 0; i < count; ++i) {
        const std::int32_t* vec = mine.data() + i * sk;
        for (const auto& arc : bdd.in_arcs(id)) {
          for (int c = 0; c < k; ++c)
            target[static_cast<std::size_t>(c)] =
                vec[c] - (arc.domain ? bdd.arc_profit(c, l - 1) : 0);
          const auto j =
              find_label(labels.flat[static_cast<std::size_t>(arc.parent)],
                         target.data(), k);
          if (j >= 0)
            mine_up[i] += up[static_cast<std::size_t>(arc.parent)]
                            [static_cast<std::size_t>(j)];
        }
        through[static_cast<std::size_t>(id)] +=
            mine_up[i] * down[static_cast<std::size_t>(id)][i];
      }
    }
    // Up-counts of the grandparent layer are no longer needed.
    if (l >= 3)
      for (NodeId id : bdd.layer(l - 2)) {
        auto& done = up[static_cast<std::size_t>(id)];
        done.clear();
        done.shrink_to_fit();
      }
  }
  return through;
}

// -------------------------------------------------------------- csv io

void write_frontier_csv(const Frontier& frontier, std::ostream& out,
                        const std::string& comment) {
  if (!comment.empty()) out << "# " << comment << '\n';
  for (int i = 1; i <= frontier.num_objectives; ++i)
    out << "obj_" << i << ',';
  for (int i = 1; i <= frontier.num_items; ++i)
    out << "x_" << i << (i == frontier.num_items ? '\n' : ',');
  for (std::size_t f = 0; f < frontier.vectors.size(); ++f) {
    for (auto v : frontier.vectors[f]) out << v << ',';
    const auto& bits = frontier.solutions[f];
    for (std::size_t i = 0; i < bits.size(); ++i)
      out << static_cast<int>(bits[i]) << (i + 1 == bits.size() ? '\n' : ',');
  }
}

void write_frontier_csv(const Frontier& frontier,
                        const std::filesystem::path& path,
                        const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  write_frontier_csv(frontier, out, comment);
  if (!out) throw IoError("write failed: " + path.string());
}

Frontier read_frontier_csv(std::istream& in) {
  Frontier frontier;
  std::string line;
  int line_no = 0;
  // header (skipping comments)
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '#') continue;
    break;
  }
  if (line.empty()) throw ParseError("frontier csv: missing header");
  {
    std::istringstream header(line);
    std::string column;
    while (std::getline(header, column, ',')) {
      if (column.rfind("obj_", 0) == 0)
        ++frontier.num_objectives;
      else if (column.rfind("x_", 0) == 0)
        ++frontier.num_items;
      else
        throw ParseError("frontier csv:" + std::to_string(line_no) +
                         ": unexpected column '" + column + "'");
    }
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    ObjectiveVector vec;
    std::vector<std::uint8_t> bits;
    while (std::getline(row, cell, ',')) {
      try {
        const long value = std::stol(cell);
        if (static_cast<int>(vec.size()) < frontier.num_objectives)
          vec.push_back(static_cast<std::int32_t>(value));
        else
          bits.push_back(static_cast<std::uint8_t>(value));
      } catch (const std::exception&) {
        throw ParseError("frontier csv:" + std::to_string(line_no) +
                         ": bad cell '" + cell + "'");
      }
    }
    if (static_cast<int>(vec.size()) != frontier.num_objectives ||
        static_cast<int>(bits.size()) != frontier.num_items)
      throw ParseError("frontier csv:" + std::to_string(line_no) +
                       ": wrong column count");
    frontier.vectors.push_back(std::move(vec));
    frontier.solutions.push_back(std::move(bits));
  }
  return frontier;
}

Frontier read_frontier_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  return read_frontier_csv(in);
}

}  // namespace morbdd
