#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "doctest.h"
#include "morbdd/bdd.hpp"
#include "morbdd/errors.hpp"
#include "morbdd/instance.hpp"
#include "morbdd/pareto.hpp"
#include "support.hpp"

using namespace morbdd;

namespace {

// Five items saturating the capacity at x1 = x2 = x3 = 1.
Instance saturating_fixture() {
  Instance inst;
  inst.num_objectives = 2;
  inst.num_items = 5;
  inst.weights = {3, 1, 6, 4, 5};
  inst.capacity = 10;
  inst.profits = {{1, 2, 3, 4, 5}, {5, 4, 3, 2, 1}};
  return inst;
}

// Eleven-node BDD with two frontier points that touch six of the nodes.
Instance eleven_node_fixture() {
  Instance inst;
  inst.num_objectives = 2;
  inst.num_items = 4;
  inst.weights = {2, 2, 2, 2};
  inst.capacity = 6;
  inst.profits = {{5, 4, 1, 2}, {5, 1, 4, 4}};
  return inst;
}

std::string dump_string(const Bdd& bdd) {
  std::ostringstream out;
  write_bdd_dump(bdd, out);
  return out.str();
}

std::set<std::vector<std::uint8_t>> path_solutions(const Bdd& bdd) {
  std::set<std::vector<std::uint8_t>> found;
  for (const auto& path : test::enumerate_paths(bdd))
    found.insert(path.solution);
  return found;
}

}  // namespace

TEST_SUITE("bdd") {

TEST_CASE("exact compilation merges equal states layer by layer") {
  const Instance inst = saturating_fixture();
  const Bdd bdd = compile_exact(inst);

  REQUIRE(bdd.num_layers() == inst.num_items + 1);
  CHECK(bdd.layer(1).size() == 1);
  CHECK(bdd.layer(bdd.num_layers()).size() == 1);
  CHECK(bdd.root() == bdd.layer(1)[0]);
  CHECK(bdd.terminal() == bdd.layer(bdd.num_layers())[0]);
  CHECK(bdd.node(bdd.root()).state == 0);

  for (int l = 1; l <= bdd.num_layers(); ++l) {
    std::set<std::int64_t> states;
    for (NodeId id : bdd.layer(l)) {
      const Node& node = bdd.node(id);
      CHECK(node.layer == l);
      CHECK(node.state >= 0);
      CHECK(node.state <= inst.capacity);
      CHECK(states.insert(node.state).second);
      if (l <= inst.num_items) {
        REQUIRE(node.zero_child != kNoNode);
        CHECK(bdd.node(node.zero_child).layer == l + 1);
        const bool fits =
            node.state + inst.weights[static_cast<std::size_t>(l - 1)] <=
            inst.capacity;
        CHECK((node.one_child != kNoNode) == fits);
        if (node.one_child != kNoNode)
          CHECK(bdd.node(node.one_child).layer == l + 1);
      } else {
        CHECK(node.zero_child == kNoNode);
        CHECK(node.one_child == kNoNode);
      }
    }
  }
}

TEST_CASE("the saturated layer-4 node has no one-arc") {
  const Bdd bdd = compile_exact(saturating_fixture());
  bool found = false;
  for (NodeId id : bdd.layer(4)) {
    if (bdd.node(id).state != 10) continue;
    found = true;
    CHECK(bdd.node(id).one_child == kNoNode);
    CHECK(bdd.node(id).zero_child != kNoNode);
  }
  CHECK(found);
}

TEST_CASE("a single item yields just the root and the terminal") {
  Instance inst;
  inst.num_objectives = 3;
  inst.num_items = 1;
  inst.capacity = 1;
  inst.weights = {1};
  inst.profits = {{7}, {8}, {9}};
  const Bdd bdd = compile_exact(inst);

  CHECK(bdd.node_count() == 2);
  CHECK(bdd.num_layers() == 2);
  CHECK(bdd.node(bdd.root()).zero_child == bdd.terminal());
  CHECK(bdd.node(bdd.root()).one_child == bdd.terminal());
  const auto solutions = path_solutions(bdd);
  CHECK(solutions == std::set<std::vector<std::uint8_t>>{{0}, {1}});
}

TEST_CASE("path set equals the brute-force feasible set") {
  const Instance inst = generate_instance(2, 10, 4242);
  const Bdd bdd = compile_exact(inst);

  std::set<std::vector<std::uint8_t>> oracle;
  for (const auto& solution : test::feasible_set(inst))
    oracle.insert(solution);
  CHECK(path_solutions(bdd) == oracle);
}

TEST_CASE("in-arcs mirror the child pointers") {
  const Bdd bdd = compile_exact(generate_instance(2, 12, 7));
  std::int64_t down_arcs = 0, up_arcs = 0;
  for (NodeId id = 0; id < static_cast<NodeId>(bdd.id_bound()); ++id) {
    if (!bdd.contains(id)) continue;
    const Node& node = bdd.node(id);
    down_arcs += (node.zero_child != kNoNode) + (node.one_child != kNoNode);
    for (const InArc& arc : bdd.in_arcs(id)) {
      ++up_arcs;
      const Node& parent = bdd.node(arc.parent);
      CHECK(parent.layer + 1 == node.layer);
      CHECK((arc.domain ? parent.one_child : parent.zero_child) == id);
    }
  }
  CHECK(down_arcs == up_arcs);
  CHECK(bdd.in_arcs(bdd.root()).empty());
}

TEST_CASE("arc profits come straight from the profit matrix") {
  const Instance inst = saturating_fixture();
  const Bdd bdd = compile_exact(inst);
  for (int k = 0; k < inst.num_objectives; ++k)
    for (int l = 1; l <= inst.num_items; ++l)
      CHECK(bdd.arc_profit(k, l) ==
            inst.profits[static_cast<std::size_t>(k)]
                        [static_cast<std::size_t>(l - 1)]);
}

TEST_CASE("compiling twice reproduces the graph bit for bit") {
  const Instance inst = generate_instance(3, 15, 31);
  CHECK(dump_string(compile_exact(inst)) == dump_string(compile_exact(inst)));
}

TEST_CASE("node budget exhaustion raises a resource error naming the layer") {
  CompileOptions options;
  options.max_nodes = 4;
  try {
    compile_exact(generate_instance(2, 12, 5), options);
    FAIL("expected a resource error");
  } catch (const ResourceError& err) {
    CHECK(std::string(err.what()).find("layer") != std::string::npos);
  }
}

TEST_CASE("width 100 restriction reproduces the exact graph") {
  const Instance inst = generate_instance(2, 14, 88);
  CHECK(dump_string(compile_restricted_width(inst, 100)) ==
        dump_string(compile_exact(inst)));
}

TEST_CASE("restricted compilation respects the width bound") {
  const Instance inst = generate_instance(2, 12, 19);
  const std::size_t exact_width = bdd_stats(compile_exact(inst)).max_width;
  for (int beta : {20, 50, 80}) {
    const Bdd restricted = compile_restricted_width(inst, beta);
    const std::size_t bound =
        (static_cast<std::size_t>(beta) * exact_width + 99) / 100;
    CHECK(bdd_stats(restricted).max_width <= bound);
  }
  CHECK_THROWS_AS(compile_restricted_width(inst, 0), ValidationError);
  CHECK_THROWS_AS(compile_restricted_width(inst, 101), ValidationError);
}

TEST_CASE("every restricted path is feasible and realizable") {
  const Instance inst = generate_instance(2, 12, 2024);
  std::set<ObjectiveVector> reachable;
  for (const auto& solution : test::feasible_set(inst))
    reachable.insert(test::evaluate_solution(inst, solution));

  const Bdd restricted = compile_restricted_width(inst, 20);
  for (const auto& path : test::enumerate_paths(restricted))
    CHECK(test::solution_feasible(inst, path.solution));
  const EnumerationResult result = enumerate_frontier(restricted);
  for (const ObjectiveVector& vec : result.frontier.vectors)
    CHECK(reachable.count(vec) == 1);
}

TEST_CASE("keeping every node reproduces the input graph") {
  const Bdd bdd = compile_exact(generate_instance(2, 10, 64));
  KeepSet keep(bdd.id_bound());
  for (NodeId id = 0; id < static_cast<NodeId>(bdd.id_bound()); ++id)
    keep.insert(id);
  CHECK(dump_string(induced_subbdd(bdd, keep)) == dump_string(bdd));
}

TEST_CASE("removed nodes lose their ids and incident arcs") {
  const Bdd bdd = compile_exact(generate_instance(2, 8, 11));
  REQUIRE(bdd.layer(3).size() >= 2);
  const NodeId removed = bdd.layer(3)[0];

  KeepSet keep(bdd.id_bound());
  for (NodeId id = 0; id < static_cast<NodeId>(bdd.id_bound()); ++id)
    if (id != removed) keep.insert(id);
  const Bdd sub = induced_subbdd(bdd, keep);

  CHECK_FALSE(sub.contains(removed));
  CHECK(sub.node_count() == bdd.node_count() - 1);
  for (NodeId id = 0; id < static_cast<NodeId>(sub.id_bound()); ++id) {
    if (!sub.contains(id)) continue;
    CHECK(sub.node(id).zero_child != removed);
    CHECK(sub.node(id).one_child != removed);
    for (const InArc& arc : sub.in_arcs(id)) CHECK(arc.parent != removed);
  }
}

TEST_CASE("the marked sub-BDD still carries both frontier points") {
  const Instance inst = eleven_node_fixture();
  const Bdd bdd = compile_exact(inst);
  CHECK(bdd.node_count() == 11);

  const EnumerationResult exact = enumerate_frontier(bdd);
  REQUIRE(exact.frontier.vectors ==
          std::vector<ObjectiveVector>{{8, 13}, {11, 10}});

  const KeepSet marks =
      mark_pareto_nodes(bdd, exact.labels, exact.frontier);
  CHECK(marks.size() == 6);
  const test::OracleMarks oracle = test::oracle_marks(inst, bdd);
  CHECK(marks.size() == oracle.pareto_nodes.size());

  const Bdd sub = induced_subbdd(bdd, marks);
  CHECK(enumerate_frontier(sub).frontier.vectors == exact.frontier.vectors);
}

TEST_CASE("keep-sets missing an endpoint are rejected") {
  const Bdd bdd = compile_exact(generate_instance(2, 6, 3));
  KeepSet no_terminal(bdd.id_bound());
  no_terminal.insert(bdd.root());
  CHECK_THROWS_AS(induced_subbdd(bdd, no_terminal), ContractViolation);

  KeepSet no_root(bdd.id_bound());
  no_root.insert(bdd.terminal());
  CHECK_THROWS_AS(induced_subbdd(bdd, no_root), ContractViolation);
}

TEST_CASE("exact BDDs are connected through the last layer") {
  const Bdd bdd = compile_exact(generate_instance(3, 9, 15));
  const ConnectivityReport report = is_connected(bdd);
  CHECK(report.connected);
  CHECK(report.last_connected_layer == bdd.num_layers());
}

TEST_CASE("emptying a middle layer disconnects at the layer above") {
  const Bdd bdd = compile_exact(generate_instance(2, 7, 23));
  KeepSet keep(bdd.id_bound());
  for (NodeId id = 0; id < static_cast<NodeId>(bdd.id_bound()); ++id)
    if (bdd.contains(id) && bdd.node(id).layer != 3) keep.insert(id);

  const ConnectivityReport direct = keep_connectivity(bdd, keep);
  CHECK_FALSE(direct.connected);
  CHECK(direct.last_connected_layer == 2);

  const ConnectivityReport induced = is_connected(induced_subbdd(bdd, keep));
  CHECK_FALSE(induced.connected);
  CHECK(induced.last_connected_layer == 2);
}

TEST_CASE("randomized keep-sets match the reachability oracle") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 40; ++round) {
    const Instance inst =
        generate_instance(2, 6 + round % 5, 500 + (std::uint64_t)round);
    const Bdd bdd = compile_exact(inst);
    KeepSet keep(bdd.id_bound());
    keep.insert(bdd.root());
    keep.insert(bdd.terminal());
    for (NodeId id = 0; id < static_cast<NodeId>(bdd.id_bound()); ++id)
      if (bdd.contains(id) && rng() % 100 < 55) keep.insert(id);

    const test::OracleConnectivity oracle = test::oracle_connectivity(bdd, keep);
    const ConnectivityReport fast = keep_connectivity(bdd, keep);
    CHECK(fast.connected == oracle.connected);
    CHECK(fast.last_connected_layer == oracle.last_connected_layer);

    const ConnectivityReport slow = is_connected(induced_subbdd(bdd, keep));
    CHECK(slow.connected == oracle.connected);
    CHECK(slow.last_connected_layer == oracle.last_connected_layer);
  }
}

TEST_CASE("stats add up") {
  const Instance inst = generate_instance(3, 20, 77);
  const Bdd bdd = compile_exact(inst);
  const BddStats stats = bdd_stats(bdd);

  CHECK(stats.node_count == bdd.node_count());
  CHECK(stats.layer_widths.size() ==
        static_cast<std::size_t>(bdd.num_layers()));
  std::size_t total = 0, widest = 0;
  for (std::size_t width : stats.layer_widths) {
    total += width;
    widest = std::max(widest, width);
  }
  CHECK(stats.node_count == total);
  CHECK(stats.max_width == widest);
  CHECK(stats.max_width <= static_cast<std::size_t>(inst.capacity) + 1);
}

TEST_CASE("dump round-trips through text") {
  const Instance inst = generate_instance(2, 11, 1234);
  const Bdd bdd = compile_exact(inst);
  const std::string dump = dump_string(bdd);
  CHECK(dump.find(instance_hash_hex(inst)) != std::string::npos);

  std::istringstream in(dump);
  const Bdd reread = read_bdd_dump(in, inst);
  CHECK(dump_string(reread) == dump);
  CHECK(reread.node_count() == bdd.node_count());
  CHECK(path_solutions(reread) == path_solutions(bdd));
}

}  // TEST_SUITE
