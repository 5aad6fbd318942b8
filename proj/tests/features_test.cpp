#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "doctest.h"
#include "morbdd/bdd.hpp"
#include "morbdd/errors.hpp"
#include "morbdd/features.hpp"
#include "morbdd/instance.hpp"
#include "morbdd/pareto.hpp"
#include "support.hpp"

using namespace morbdd;

namespace {

// Interior state equal to the capacity shows up in layer 3 (x1 = x2 = 1).
Instance capacity_touch_fixture() {
  Instance inst;
  inst.num_objectives = 2;
  inst.num_items = 3;
  inst.capacity = 2;
  inst.weights = {1, 1, 2};
  inst.profits = {{3, 1, 4}, {1, 5, 9}};
  return inst;
}

struct Labeled {
  Instance inst;
  Bdd bdd;
  KeepSet marks;
  std::vector<double> paths;

  explicit Labeled(const Instance& source)
      : inst(source), bdd(compile_exact(inst)) {
    const EnumerationResult res = enumerate_frontier(bdd);
    marks = mark_pareto_nodes(bdd, res.labels, res.frontier);
    paths = count_pareto_paths(bdd, res.labels, res.frontier);
  }

  LabeledInstance view(const std::string& id) const {
    return {&inst, &bdd, &marks, &paths, id};
  }
};

std::vector<NodeId> interior_nodes(const Bdd& bdd) {
  std::vector<NodeId> out;
  for (NodeId id = 0; id < static_cast<NodeId>(bdd.id_bound()); ++id)
    if (bdd.contains(id) && id != bdd.root() && id != bdd.terminal())
      out.push_back(id);
  return out;
}

}  // namespace

TEST_SUITE("features") {

TEST_CASE("the layout has 44 uniquely named entries") {
  CHECK(kFeatureCount == 44);
  const auto names = feature_names();
  REQUIRE(names.size() == 44);
  std::set<std::string> unique;
  for (const char* name : names) {
    CHECK(*name != '\0');
    CHECK(unique.insert(name).second);
  }
}

TEST_CASE("state ratios and the layer index are normalized") {
  const Instance inst = capacity_touch_fixture();
  const Bdd bdd = compile_exact(inst);

  bool saw_full_state = false;
  for (NodeId id : interior_nodes(bdd)) {
    const Node& node = bdd.node(id);
    const FeatureVector f = extract_features(inst, bdd, id);
    CHECK(f[27] == doctest::Approx(node.state / 4.0));
    CHECK(f[28] == doctest::Approx(node.state / 2.0));
    CHECK(f[29] == doctest::Approx((node.layer - 1) / 3.0));
    CHECK(f[29] > 0.0);
    CHECK(f[29] < 1.0);
    if (node.state == inst.capacity) {
      saw_full_state = true;
      CHECK(f[28] == 1.0);
    }
  }
  CHECK(saw_full_state);
}

TEST_CASE("instance block repeats and variable blocks track the layer") {
  const Instance inst = capacity_touch_fixture();
  const Bdd bdd = compile_exact(inst);
  const std::vector<NodeId> interior = interior_nodes(bdd);
  REQUIRE(interior.size() >= 2);

  const FeatureVector first = extract_features(inst, bdd, interior[0]);
  for (NodeId id : interior) {
    const FeatureVector f = extract_features(inst, bdd, id);
    for (int i = 0; i < 19; ++i) CHECK(f[i] == first[i]);

    const int item = bdd.node(id).layer - 2;  // decision entering the layer
    CHECK(f[19] == doctest::Approx(inst.weights[item] / 1000.0));
    const double mean =
        (inst.profits[0][item] + inst.profits[1][item]) / 2.0;
    CHECK(f[20] == doctest::Approx(mean / 1000.0));
    CHECK(f[24] == doctest::Approx(mean / inst.weights[item]));

    if (bdd.node(id).layer == 2) {
      for (int i = 30; i < 38; ++i) CHECK(f[i] == 0.0);
    } else {
      const int parent_item = item - 1;
      CHECK(f[30] == doctest::Approx(inst.weights[parent_item] / 1000.0));
    }
  }

  CHECK(first[0] == doctest::Approx(inst.num_objectives / 10.0));
  CHECK(first[1] == doctest::Approx(inst.num_items / 100.0));
  CHECK(first[2] == doctest::Approx(inst.capacity / 4.0));
}

TEST_CASE("parent aggregates are split by arc domain") {
  const Instance inst = generate_instance(2, 9, 17);
  const Bdd bdd = compile_exact(inst);
  for (NodeId id : interior_nodes(bdd)) {
    const FeatureVector f = extract_features(inst, bdd, id);
    double state_sum[2] = {0, 0}, count[2] = {0, 0};
    for (const InArc& arc : bdd.in_arcs(id)) {
      state_sum[arc.domain] += static_cast<double>(bdd.node(arc.parent).state);
      count[arc.domain] += 1.0;
    }
    const double width_above =
        static_cast<double>(bdd.layer(bdd.node(id).layer - 1).size());
    const double total = static_cast<double>(inst.total_weight());
    for (int d : {1, 0}) {
      const int base = d == 1 ? 38 : 41;
      if (count[d] == 0) {
        CHECK(f[base] == 0.0);
        CHECK(f[base + 1] == 0.0);
      } else {
        CHECK(f[base] ==
              doctest::Approx(state_sum[d] / count[d] / total));
        CHECK(f[base + 1] == doctest::Approx(state_sum[d] / count[d] /
                                             (double)inst.capacity));
      }
      CHECK(f[base + 2] == doctest::Approx(count[d] / width_above));
    }
  }
}

TEST_CASE("root and terminal carry no features") {
  const Instance inst = capacity_touch_fixture();
  const Bdd bdd = compile_exact(inst);
  CHECK_THROWS_AS(extract_features(inst, bdd, bdd.root()), ContractViolation);
  CHECK_THROWS_AS(extract_features(inst, bdd, bdd.terminal()),
                  ContractViolation);
}

TEST_CASE("the cached extractor matches the one-shot form") {
  const Instance inst = generate_instance(3, 12, 5);
  const Bdd bdd = compile_exact(inst);
  const FeatureExtractor extract(bdd);
  for (NodeId id : interior_nodes(bdd))
    CHECK(extract(id) == extract_features(inst, bdd, id));
}

TEST_CASE("all features are finite and ratios stay in range") {
  const Instance inst = generate_instance(3, 18, 99);
  const Bdd bdd = compile_exact(inst);
  for (NodeId id : interior_nodes(bdd)) {
    const FeatureVector f = extract_features(inst, bdd, id);
    for (double v : f) CHECK(std::isfinite(v));
    for (int i = 0; i < 44; ++i) {
      const bool value_per_weight_ratio =
          (i >= 24 && i <= 26) || (i >= 35 && i <= 37);
      if (value_per_weight_ratio) continue;
      CHECK(f[i] >= 0.0);
      CHECK(f[i] <= 1.0);
    }
  }
}

TEST_CASE("datasets are balanced per instance") {
  const Labeled a(generate_instance(2, 12, 301));
  const Labeled b(generate_instance(2, 11, 302));
  const LabeledInstance sources[] = {a.view("a"), b.view("b")};
  const Dataset dataset = build_dataset(sources, 11);

  CHECK(dataset.warnings.empty());
  REQUIRE(dataset.instance_ids == std::vector<std::string>{"a", "b"});
  for (int index : {0, 1}) {
    const Labeled& src = index == 0 ? a : b;
    std::set<NodeId> pos, neg;
    for (const Dataset::Row& row : dataset.rows) {
      if (row.instance != index) continue;
      (row.label ? pos : neg).insert(row.node);
      if (row.label) {
        CHECK(src.marks.contains(row.node));
        CHECK(row.weight >= 1e-3f);
        CHECK(row.weight <= 1.0f);
      } else {
        CHECK_FALSE(src.marks.contains(row.node));
        CHECK(row.weight == 1.0f);
      }
      CHECK(row.node != src.bdd.root());
      CHECK(row.node != src.bdd.terminal());
    }
    CHECK(pos.size() == neg.size());
    CHECK(pos.size() == src.marks.size() - 2);
  }
}

TEST_CASE("positive weights follow the per-layer path-count profile") {
  const Labeled src(generate_instance(2, 10, 640));
  const LabeledInstance sources[] = {src.view("x")};
  const Dataset dataset = build_dataset(sources, 3);

  const test::OracleMarks oracle = test::oracle_marks(src.inst, src.bdd);
  std::map<int, double> layer_max;
  for (const auto& [id, count] : oracle.path_counts) {
    const int l = src.bdd.node(id).layer;
    layer_max[l] = std::max(layer_max[l], count);
  }

  std::map<int, float> layer_peak_weight;
  for (const Dataset::Row& row : dataset.rows) {
    if (!row.label) continue;
    const int l = src.bdd.node(row.node).layer;
    const double expected =
        std::clamp(oracle.path_counts.at(row.node) / layer_max.at(l), 1e-3, 1.0);
    CHECK(row.weight == doctest::Approx(expected));
    auto [it, inserted] = layer_peak_weight.try_emplace(l, row.weight);
    if (!inserted) it->second = std::max(it->second, row.weight);
  }
  for (const auto& [layer, peak] : layer_peak_weight)
    CHECK(peak == doctest::Approx(1.0));
}

TEST_CASE("instances without interior Pareto nodes are skipped") {
  Instance inst;
  inst.num_objectives = 2;
  inst.num_items = 1;
  inst.capacity = 1;
  inst.weights = {1};
  inst.profits = {{4}, {6}};
  const Labeled src(inst);
  const LabeledInstance sources[] = {src.view("tiny")};
  const Dataset dataset = build_dataset(sources, 1);

  CHECK(dataset.rows.empty());
  CHECK(dataset.instance_ids.empty());
  REQUIRE(dataset.warnings.size() == 1);
  CHECK(dataset.warnings[0].find("tiny") != std::string::npos);
}

TEST_CASE("incomplete sources are rejected") {
  const Labeled src(generate_instance(2, 8, 12));
  LabeledInstance broken = src.view("b");
  broken.pareto_paths = nullptr;
  CHECK_THROWS_AS(build_dataset({&broken, 1}, 0), ContractViolation);

  const Labeled other(generate_instance(2, 9, 13));
  LabeledInstance mismatched = src.view("m");
  mismatched.pareto = &other.marks;
  CHECK_THROWS_AS(build_dataset({&mismatched, 1}, 0), ContractViolation);
}

TEST_CASE("dataset construction is deterministic in the seed") {
  const Labeled src(generate_instance(2, 12, 77));
  const LabeledInstance sources[] = {src.view("d")};
  const Dataset first = build_dataset(sources, 21);
  const Dataset second = build_dataset(sources, 21);
  REQUIRE(first.rows.size() == second.rows.size());
  for (std::size_t i = 0; i < first.rows.size(); ++i) {
    CHECK(first.rows[i].node == second.rows[i].node);
    CHECK(first.rows[i].label == second.rows[i].label);
    CHECK(first.rows[i].weight == second.rows[i].weight);
    CHECK(first.rows[i].features == second.rows[i].features);
  }
}

TEST_CASE("dataset csv round-trips bit for bit") {
  const Labeled a(generate_instance(2, 10, 31));
  const Labeled b(generate_instance(3, 9, 32));
  const LabeledInstance sources[] = {a.view("first"), b.view("second")};
  const Dataset dataset = build_dataset(sources, 5);
  REQUIRE_FALSE(dataset.rows.empty());

  std::ostringstream out;
  write_dataset_csv(dataset, out);
  const std::string text = out.str();
  CHECK(text.find(kFeatureLayoutVersion) != std::string::npos);

  std::istringstream in(text);
  const Dataset reread = read_dataset_csv(in);
  CHECK(reread.instance_ids == dataset.instance_ids);
  REQUIRE(reread.rows.size() == dataset.rows.size());
  for (std::size_t i = 0; i < dataset.rows.size(); ++i) {
    CHECK(reread.rows[i].features == dataset.rows[i].features);
    CHECK(reread.rows[i].weight == dataset.rows[i].weight);
    CHECK(reread.rows[i].label == dataset.rows[i].label);
    CHECK(reread.rows[i].instance == dataset.rows[i].instance);
    CHECK(reread.rows[i].node == dataset.rows[i].node);
  }

  std::istringstream bad("x,y\n1,2\n");
  CHECK_THROWS_AS(read_dataset_csv(bad), ParseError);
}

}  // TEST_SUITE
