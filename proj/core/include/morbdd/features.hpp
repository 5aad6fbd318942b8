#ifndef MORBDD_FEATURES_HPP_
#define MORBDD_FEATURES_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "morbdd/bdd.hpp"
#include "morbdd/instance.hpp"

namespace morbdd {

// Fixed 44-entry layout, versioned so models refuse mismatched inputs:
//   [0..18]  instance: K/10, N/100, W/sum(w), weight stats, value stats
//   [19..26] variable of the decision entering the node's layer
//   [27..29] node: state/sum(w), state/W, (layer-1)/N
//   [30..37] previous layer's variable (zeros in layer 2)
//   [38..43] parent aggregates over one-arc then zero-arc parents
// Count-like inputs are scaled by documented constants (coefficients by
// 1000, K by 10, N by 100); statistics use the population convention.
inline constexpr int kFeatureCount = 44;
inline constexpr const char* kFeatureLayoutVersion = "morbdd-features-v1";
inline constexpr double kCoefficientScale = 1000.0;
inline constexpr double kObjectiveCountScale = 10.0;
inline constexpr double kItemCountScale = 100.0;

using FeatureVector = std::array<double, kFeatureCount>;

std::span<const char* const> feature_names();

// Features are defined for interior nodes only; the root and terminal have
// no deciding variable and requesting them is a contract violation.
FeatureVector extract_features(const Instance& inst, const Bdd& bdd,
                               NodeId node);

// Amortizes the instance and per-item blocks across many nodes of one BDD.
class FeatureExtractor {
 public:
  explicit FeatureExtractor(const Bdd& bdd);
  FeatureVector operator()(NodeId node) const;

 private:
  const Bdd& bdd_;
  std::array<double, 19> instance_block_;
  std::vector<std::array<double, 8>> variable_blocks_;  // per item
  double total_weight_;
};

struct Dataset {
  struct Row {
    std::array<float, kFeatureCount> features{};
    float weight = 1.0f;
    std::int32_t instance = 0;  // index into instance_ids
    NodeId node = kNoNode;
    std::uint8_t label = 0;
  };
  std::vector<std::string> instance_ids;
  std::vector<Row> rows;
  std::vector<std::string> warnings;
};

// One labeled training source: an exact BDD with its Pareto marks and
// per-node frontier path counts.
struct LabeledInstance {
  const Instance* instance = nullptr;
  const Bdd* bdd = nullptr;
  const KeepSet* pareto = nullptr;
  const std::vector<double>* pareto_paths = nullptr;
  std::string id;
};

// Balanced per instance: every interior Pareto node is a positive; an equal
// number of non-Pareto interior nodes is drawn uniformly without
// replacement.  Positive sample weights are the node's Pareto path count
// over its layer maximum, clamped to [1e-3, 1]; negatives weigh 1.
// Instances without interior Pareto nodes are skipped with a warning.
Dataset build_dataset(std::span<const LabeledInstance> sources,
                      std::uint64_t seed);

// CSV: 44 feature columns, then label, weight, instance_id, node_id.  A
// leading '#' line records the layout version and scaling constants.
void write_dataset_csv(const Dataset& dataset, std::ostream& out);
void write_dataset_csv(const Dataset& dataset,
                       const std::filesystem::path& path);
Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_csv(const std::filesystem::path& path);

}  // namespace morbdd

#endif  // MORBDD_FEATURES_HPP_
