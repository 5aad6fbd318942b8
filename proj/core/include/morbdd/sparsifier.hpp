#ifndef MORBDD_SPARSIFIER_HPP_
#define MORBDD_SPARSIFIER_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "morbdd/bdd.hpp"
#include "morbdd/features.hpp"

namespace morbdd {

enum class ModelFamily { gbdt, logistic };

std::string to_string(ModelFamily family);
ModelFamily model_family_from_string(const std::string& name);

struct Hyperparams {
  ModelFamily family = ModelFamily::gbdt;
  int rounds = 200;
  int max_depth = 6;
  double learning_rate = 0.1;
  double reg_lambda = 0.0;
  int max_bins = 256;  // includes the overflow bin; at most 255 edges
  double min_child_hessian = 1e-6;
  int logistic_iterations = 500;
  double logistic_learning_rate = 0.5;
};

struct TreeNode {
  std::int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;     // x <= threshold goes left
  std::int32_t left = -1;
  std::int32_t right = -1;
  double value = 0.0;

  bool is_leaf() const { return feature < 0; }
};

struct Tree {
  std::vector<TreeNode> nodes;  // node 0 is the tree root
};

struct SparsifierModel {
  ModelFamily family = ModelFamily::gbdt;
  Hyperparams hyperparams;
  std::uint64_t seed = 0;
  double base_score = 0.0;                // log-odds offset
  std::vector<Tree> trees;                // gbdt
  std::vector<double> coefficients;       // logistic: 44 weights + intercept

  // Filled by train(), not serialized.
  std::vector<double> training_curve;     // weighted train loss per round
  double train_loss = 0.0;
  double train_accuracy = 0.0;
  double valid_loss = 0.0;                // NaN without a validation set
  double valid_accuracy = 0.0;
};

// Deterministic for fixed inputs: histogram construction, split selection
// and tie-breaking involve no randomness, and `seed` is only recorded for
// provenance.  Throws ValidationError on empty or single-class data.
SparsifierModel train(const Dataset& train_data, const Hyperparams& params,
                      std::uint64_t seed, const Dataset* valid_data = nullptr);

// Trains one model per configuration and keeps the lowest validation loss;
// ties resolve to the earliest configuration.
SparsifierModel grid_search(const Dataset& train_data,
                            const Dataset& valid_data,
                            std::span<const Hyperparams> grid,
                            std::uint64_t seed);

// Probability that the node is Pareto-optimal, in [0, 1].
double predict(const SparsifierModel& model, const FeatureVector& features);
std::vector<double> predict(const SparsifierModel& model,
                            const Dataset& dataset);

struct NodeScores {
  std::vector<double> values;  // indexed by node id, NaN off the interior
  NodeId root = kNoNode;
  NodeId terminal = kNoNode;

  double at(NodeId id) const;
};

NodeScores score_bdd(const SparsifierModel& model, const Bdd& bdd);

// Interior nodes scoring at least tau, plus the root and terminal.
KeepSet threshold_keepset(const NodeScores& scores, double tau);

inline double resistance(double score, double tau) {
  return score >= tau ? 0.0 : tau - score;
}

// Text format with hex floats, so read(write(m)) reproduces predictions
// bit for bit.  Readers reject files whose feature layout tag differs.
void write_model(const SparsifierModel& model, std::ostream& out);
void write_model(const SparsifierModel& model,
                 const std::filesystem::path& path);
SparsifierModel read_model(std::istream& in);
SparsifierModel read_model(const std::filesystem::path& path);

}  // namespace morbdd

#endif  // MORBDD_SPARSIFIER_HPP_
