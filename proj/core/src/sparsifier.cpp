#include "morbdd/sparsifier.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "morbdd/errors.hpp"

namespace morbdd {

namespace {

constexpr double kMinSplitGain = 1e-12;
constexpr double kProbClamp = 1e-15;

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double clamp_prob(double p) {
  return std::clamp(p, kProbClamp, 1.0 - kProbClamp);
}

void check_hyperparams(const Hyperparams& hp) {
  if (hp.rounds < 1) throw ValidationError("hyperparams: rounds must be >= 1");
  if (hp.max_depth < 1)
    throw ValidationError("hyperparams: max_depth must be >= 1");
  if (hp.max_bins < 2 || hp.max_bins > 256)
    throw ValidationError("hyperparams: max_bins must lie in [2, 256]");
  if (!(hp.learning_rate > 0.0))
    throw ValidationError("hyperparams: learning_rate must be positive");
  if (hp.reg_lambda < 0.0)
    throw ValidationError("hyperparams: reg_lambda must be >= 0");
  if (hp.logistic_iterations < 1)
    throw ValidationError("hyperparams: logistic_iterations must be >= 1");
  if (!(hp.logistic_learning_rate > 0.0))
    throw ValidationError("hyperparams: logistic_learning_rate must be positive");
}

// Weighted log odds of the positive class.
double base_log_odds(const Dataset& data) {
  double wsum = 0.0, wpos = 0.0;
  for (const Dataset::Row& row : data.rows) {
    wsum += row.weight;
    if (row.label) wpos += row.weight;
  }
  const double p = clamp_prob(wpos / wsum);
  return std::log(p / (1.0 - p));
}

struct Metrics {
  double loss = 0.0;
  double accuracy = 0.0;
};

Metrics dataset_metrics(const Dataset& data, const std::vector<double>& prob) {
  Metrics m;
  double wsum = 0.0, loss = 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    const Dataset::Row& row = data.rows[i];
    const double p = clamp_prob(prob[i]);
    loss -= row.weight *
            (row.label ? std::log(p) : std::log(1.0 - p));
    wsum += row.weight;
    if ((prob[i] >= 0.5) == (row.label != 0)) ++correct;
  }
  m.loss = loss / wsum;
  m.accuracy = static_cast<double>(correct) /
               static_cast<double>(data.rows.size());
  return m;
}

// Quantile bin edges per feature; edge values are drawn from the data so
// duplicating every row reproduces them exactly.
std::vector<std::vector<double>> build_edges(const Dataset& data,
                                             int max_bins) {
  std::vector<std::vector<double>> edges(kFeatureCount);
  std::vector<double> column(data.rows.size());
  for (int f = 0; f < kFeatureCount; ++f) {
    for (std::size_t i = 0; i < data.rows.size(); ++i)
      column[i] = static_cast<double>(data.rows[i].features[static_cast<std::size_t>(f)]);
    std::sort(column.begin(), column.end());
    std::vector<double> uniq(column);
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    if (static_cast<int>(uniq.size()) <= max_bins - 1) {
      edges[static_cast<std::size_t>(f)] = std::move(uniq);
      continue;
    }
    std::vector<double>& e = edges[static_cast<std::size_t>(f)];
    const std::size_t n = column.size();
    for (int b = 1; b < max_bins; ++b) {
      const std::size_t at =
          static_cast<std::size_t>(b) * n / static_cast<std::size_t>(max_bins);
      e.push_back(column[at]);
    }
    e.erase(std::unique(e.begin(), e.end()), e.end());
  }
  return edges;
}

// code = number of edges strictly below x, so code <= s  <=>  x <= edges[s].
std::vector<std::uint8_t> encode_rows(
    const Dataset& data, const std::vector<std::vector<double>>& edges) {
  std::vector<std::uint8_t> codes(data.rows.size() * kFeatureCount);
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    const auto& x = data.rows[i].features;
    std::uint8_t* out = codes.data() + i * kFeatureCount;
    for (int f = 0; f < kFeatureCount; ++f) {
      const auto& e = edges[static_cast<std::size_t>(f)];
      const double v = static_cast<double>(x[static_cast<std::size_t>(f)]);
      out[f] = static_cast<std::uint8_t>(
          std::lower_bound(e.begin(), e.end(), v) - e.begin());
    }
  }
  return codes;
}

struct GbdtTrainer {
  const Dataset& data;
  const Hyperparams& hp;
  std::vector<std::vector<double>> edges;
  std::vector<std::uint8_t> codes;
  std::vector<double> grad, hess, score;
  std::vector<std::uint32_t> rows, scratch;
  // Flat 44 x 256 histograms, cleared per tree node.
  std::vector<double> hist_g, hist_h;
  std::vector<std::uint32_t> hist_c;

  GbdtTrainer(const Dataset& d, const Hyperparams& p, double base)
      : data(d),
        hp(p),
        edges(build_edges(d, p.max_bins)),
        codes(encode_rows(d, edges)),
        grad(d.rows.size()),
        hess(d.rows.size()),
        score(d.rows.size(), base),
        rows(d.rows.size()),
        hist_g(kFeatureCount * 256),
        hist_h(kFeatureCount * 256),
        hist_c(kFeatureCount * 256) {}

  void refresh_gradients() {
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
      const Dataset::Row& row = data.rows[i];
      const double p = sigmoid(score[i]);
      grad[i] = row.weight * (p - (row.label ? 1.0 : 0.0));
      hess[i] = std::max(row.weight * p * (1.0 - p), 1e-16);
    }
  }

  Tree grow_tree() {
    Tree tree;
    struct Pending {
      std::int32_t node;
      std::size_t begin, end;
      int depth;
      double g, h;
    };
    std::vector<Pending> queue;
    for (std::size_t i = 0; i < rows.size(); ++i)
      rows[i] = static_cast<std::uint32_t>(i);
    double g0 = 0.0, h0 = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      g0 += grad[i];
      h0 += hess[i];
    }
    tree.nodes.emplace_back();
    queue.push_back({0, 0, rows.size(), 0, g0, h0});

    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const Pending job = queue[qi];
      const std::size_t count = job.end - job.begin;
      if (job.depth >= hp.max_depth || count < 2) {
        make_leaf(tree.nodes[static_cast<std::size_t>(job.node)], job);
        continue;
      }

      std::fill(hist_g.begin(), hist_g.end(), 0.0);
      std::fill(hist_h.begin(), hist_h.end(), 0.0);
      std::fill(hist_c.begin(), hist_c.end(), 0u);
      for (std::size_t r = job.begin; r < job.end; ++r) {
        const std::uint32_t row = rows[r];
        const std::uint8_t* c = codes.data() + std::size_t{row} * kFeatureCount;
        const double g = grad[row];
        const double h = hess[row];
        for (int f = 0; f < kFeatureCount; ++f) {
          const std::size_t at = static_cast<std::size_t>(f) * 256 + c[f];
          hist_g[at] += g;
          hist_h[at] += h;
          hist_c[at] += 1;
        }
      }

      const double parent_score = job.g * job.g / (job.h + hp.reg_lambda);
      double best_gain = kMinSplitGain;
      int best_feature = -1;
      int best_split = -1;
      double best_gl = 0.0, best_hl = 0.0;
      for (int f = 0; f < kFeatureCount; ++f) {
        const auto n_edges =
            static_cast<int>(edges[static_cast<std::size_t>(f)].size());
        double gl = 0.0, hl = 0.0;
        std::size_t cl = 0;
        const std::size_t base = static_cast<std::size_t>(f) * 256;
        for (int s = 0; s < n_edges; ++s) {
          gl += hist_g[base + static_cast<std::size_t>(s)];
          hl += hist_h[base + static_cast<std::size_t>(s)];
          cl += hist_c[base + static_cast<std::size_t>(s)];
          if (cl == 0) continue;
          if (cl >= count) break;
          const double hr = job.h - hl;
          if (hl < hp.min_child_hessian || hr < hp.min_child_hessian) continue;
          const double gr = job.g - gl;
          const double gain = gl * gl / (hl + hp.reg_lambda) +
                              gr * gr / (hr + hp.reg_lambda) - parent_score;
          if (gain > best_gain) {
            best_gain = gain;
            best_feature = f;
            best_split = s;
            best_gl = gl;
            best_hl = hl;
          }
        }
      }
      if (best_feature < 0) {
        make_leaf(tree.nodes[static_cast<std::size_t>(job.node)], job);
        continue;
      }

      scratch.clear();
      std::size_t mid = job.begin;
      for (std::size_t r = job.begin; r < job.end; ++r) {
        const std::uint32_t row = rows[r];
        if (codes[std::size_t{row} * kFeatureCount +
                  static_cast<std::size_t>(best_feature)] <=
            static_cast<std::uint8_t>(best_split))
          rows[mid++] = row;
        else
          scratch.push_back(row);
      }
      std::copy(scratch.begin(), scratch.end(), rows.begin() + static_cast<std::ptrdiff_t>(mid));

      const std::int32_t left = static_cast<std::int32_t>(tree.nodes.size());
      tree.nodes.emplace_back();
      tree.nodes.emplace_back();
      TreeNode& node = tree.nodes[static_cast<std::size_t>(job.node)];
      node.feature = best_feature;
      node.threshold = edges[static_cast<std::size_t>(best_feature)]
                            [static_cast<std::size_t>(best_split)];
      node.left = left;
      node.right = left + 1;
      queue.push_back({left, job.begin, mid, job.depth + 1, best_gl, best_hl});
      queue.push_back({left + 1, mid, job.end, job.depth + 1,
                       job.g - best_gl, job.h - best_hl});
    }
    return tree;
  }

  void make_leaf(TreeNode& node, double g, double h, std::size_t begin,
                 std::size_t end) {
    node.feature = -1;
    node.value = -hp.learning_rate * g / (h + hp.reg_lambda);
    for (std::size_t r = begin; r < end; ++r) score[rows[r]] += node.value;
  }

  template <typename Job>
  void make_leaf(TreeNode& node, const Job& job) {
    make_leaf(node, job.g, job.h, job.begin, job.end);
  }

  double weighted_loss() const {
    double wsum = 0.0, loss = 0.0;
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
      const Dataset::Row& row = data.rows[i];
      const double p = clamp_prob(sigmoid(score[i]));
      loss -= row.weight * (row.label ? std::log(p) : std::log(1.0 - p));
      wsum += row.weight;
    }
    return loss / wsum;
  }
};

FeatureVector promote(const Dataset::Row& row) {
  FeatureVector x;
  for (int f = 0; f < kFeatureCount; ++f)
    x[static_cast<std::size_t>(f)] =
        static_cast<double>(row.features[static_cast<std::size_t>(f)]);
  return x;
}

void train_logistic(SparsifierModel& model, const Dataset& data) {
  const Hyperparams& hp = model.hyperparams;
  std::vector<double> coef(kFeatureCount + 1, 0.0);
  coef[kFeatureCount] = model.base_score;
  double wsum = 0.0;
  for (const Dataset::Row& row : data.rows) wsum += row.weight;

  std::vector<double> gradient(kFeatureCount + 1);
  for (int it = 0; it < hp.logistic_iterations; ++it) {
    std::fill(gradient.begin(), gradient.end(), 0.0);
    double loss = 0.0;
    for (const Dataset::Row& row : data.rows) {
      double z = coef[kFeatureCount];
      for (int f = 0; f < kFeatureCount; ++f)
        z += coef[static_cast<std::size_t>(f)] *
             static_cast<double>(row.features[static_cast<std::size_t>(f)]);
      const double p = sigmoid(z);
      const double d = row.weight * (p - (row.label ? 1.0 : 0.0));
      for (int f = 0; f < kFeatureCount; ++f)
        gradient[static_cast<std::size_t>(f)] +=
            d * static_cast<double>(row.features[static_cast<std::size_t>(f)]);
      gradient[kFeatureCount] += d;
      const double pc = clamp_prob(p);
      loss -= row.weight * (row.label ? std::log(pc) : std::log(1.0 - pc));
    }
    for (std::size_t f = 0; f < coef.size(); ++f)
      coef[f] -= hp.logistic_learning_rate * gradient[f] / wsum;
    model.training_curve.push_back(loss / wsum);
  }
  model.coefficients = std::move(coef);
  model.base_score = 0.0;
}

}  // namespace

std::string to_string(ModelFamily family) {
  return family == ModelFamily::gbdt ? "gbdt" : "logistic";
}

ModelFamily model_family_from_string(const std::string& name) {
  if (name == "gbdt") return ModelFamily::gbdt;
  if (name == "logistic") return ModelFamily::logistic;
  throw ValidationError("unknown model family '" + name + "'");
}

namespace {

// Pruning a Pareto node severs every frontier path through it, while a kept
// non-Pareto node only costs extra comparisons, so the loss prices recall
// above specificity: positives are scaled to hold kPositiveClassEmphasis
// times the negative mass.  The per-row dataset weights survive as ranking
// within the positive class, and the scale depends only on the mass ratio,
// so duplicating rows changes nothing.
constexpr double kPositiveClassEmphasis = 16.0;

Dataset rebalanced(const Dataset& data) {
  double pos = 0.0, neg = 0.0;
  for (const Dataset::Row& row : data.rows)
    (row.label ? pos : neg) += row.weight;
  Dataset out = data;
  if (pos <= 0.0 || neg <= 0.0) return out;
  const float scale = static_cast<float>(kPositiveClassEmphasis * neg / pos);
  for (Dataset::Row& row : out.rows)
    if (row.label) row.weight *= scale;
  return out;
}

}  // namespace

SparsifierModel train(const Dataset& train_data, const Hyperparams& params,
                      std::uint64_t seed, const Dataset* valid_data) {
  check_hyperparams(params);
  if (train_data.rows.empty())
    throw ValidationError("train: dataset is empty");
  bool has_pos = false, has_neg = false;
  for (const Dataset::Row& row : train_data.rows)
    (row.label ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg)
    throw ValidationError("train: dataset holds a single class");
  const Dataset data = rebalanced(train_data);

  SparsifierModel model;
  model.family = params.family;
  model.hyperparams = params;
  model.seed = seed;
  model.base_score = base_log_odds(data);
  model.valid_loss = std::numeric_limits<double>::quiet_NaN();
  model.valid_accuracy = std::numeric_limits<double>::quiet_NaN();

  if (params.family == ModelFamily::gbdt) {
    GbdtTrainer trainer(data, params, model.base_score);
    model.trees.reserve(static_cast<std::size_t>(params.rounds));
    for (int round = 0; round < params.rounds; ++round) {
      trainer.refresh_gradients();
      model.trees.push_back(trainer.grow_tree());
      model.training_curve.push_back(trainer.weighted_loss());
    }
  } else {
    train_logistic(model, data);
  }

  const Metrics train_metrics = dataset_metrics(data, predict(model, data));
  model.train_loss = train_metrics.loss;
  model.train_accuracy = train_metrics.accuracy;
  if (valid_data != nullptr && !valid_data->rows.empty()) {
    const Dataset valid = rebalanced(*valid_data);
    const Metrics valid_metrics =
        dataset_metrics(valid, predict(model, valid));
    model.valid_loss = valid_metrics.loss;
    model.valid_accuracy = valid_metrics.accuracy;
  }
  return model;
}

SparsifierModel grid_search(const Dataset& train_data,
                            const Dataset& valid_data,
                            std::span<const Hyperparams> grid,
                            std::uint64_t seed) {
  if (grid.empty()) throw ValidationError("grid_search: empty grid");
  if (valid_data.rows.empty())
    throw ValidationError("grid_search: validation set is empty");
  SparsifierModel best;
  bool have_best = false;
  for (const Hyperparams& hp : grid) {
    SparsifierModel candidate = train(train_data, hp, seed, &valid_data);
    if (!have_best || candidate.valid_loss < best.valid_loss) {
      best = std::move(candidate);
      have_best = true;
    }
  }
  return best;
}

double predict(const SparsifierModel& model, const FeatureVector& features) {
  if (model.family == ModelFamily::gbdt) {
    double z = model.base_score;
    for (const Tree& tree : model.trees) {
      std::int32_t at = 0;
      while (!tree.nodes[static_cast<std::size_t>(at)].is_leaf()) {
        const TreeNode& node = tree.nodes[static_cast<std::size_t>(at)];
        at = features[static_cast<std::size_t>(node.feature)] <= node.threshold
                 ? node.left
                 : node.right;
      }
      z += tree.nodes[static_cast<std::size_t>(at)].value;
    }
    return sigmoid(z);
  }
  if (model.coefficients.size() != kFeatureCount + 1)
    throw ContractViolation("predict: logistic model has no coefficients");
  double z = model.coefficients[kFeatureCount];
  for (int f = 0; f < kFeatureCount; ++f)
    z += model.coefficients[static_cast<std::size_t>(f)] *
         features[static_cast<std::size_t>(f)];
  return sigmoid(z);
}

std::vector<double> predict(const SparsifierModel& model,
                            const Dataset& dataset) {
  std::vector<double> out(dataset.rows.size());
  for (std::size_t i = 0; i < dataset.rows.size(); ++i)
    out[i] = predict(model, promote(dataset.rows[i]));
  return out;
}

double NodeScores::at(NodeId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= values.size())
    throw ContractViolation("NodeScores: node id out of range");
  const double v = values[static_cast<std::size_t>(id)];
  if (std::isnan(v))
    throw ContractViolation("NodeScores: node " + std::to_string(id) +
                            " has no score");
  return v;
}

NodeScores score_bdd(const SparsifierModel& model, const Bdd& bdd) {
  NodeScores scores;
  scores.values.assign(static_cast<std::size_t>(bdd.id_bound()),
                       std::numeric_limits<double>::quiet_NaN());
  scores.root = bdd.root();
  scores.terminal = bdd.terminal();
  FeatureExtractor extract(bdd);
  for (NodeId id = 0; id < bdd.id_bound(); ++id) {
    if (!bdd.contains(id) || id == bdd.root() || id == bdd.terminal())
      continue;
    scores.values[static_cast<std::size_t>(id)] = predict(model, extract(id));
  }
  return scores;
}

KeepSet threshold_keepset(const NodeScores& scores, double tau) {
  KeepSet keep(scores.values.size());
  keep.insert(scores.root);
  keep.insert(scores.terminal);
  for (std::size_t id = 0; id < scores.values.size(); ++id)
    if (scores.values[id] >= tau) keep.insert(static_cast<NodeId>(id));
  return keep;
}

namespace {

std::string hex_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::hex);
  return std::string(buf, res.ptr);
}

double parse_hex_double(const std::string& token) {
  double v = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), v,
                             std::chars_format::hex);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
    throw ParseError("model: bad hex float '" + token + "'");
  return v;
}

std::string expect_field(std::istream& in, const std::string& key) {
  std::string name, value;
  if (!(in >> name >> value) || name != key)
    throw ParseError("model: expected field '" + key + "'");
  return value;
}

long parse_long(const std::string& token, const std::string& what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ParseError("model: bad " + what + " '" + token + "'");
  }
}

}  // namespace

void write_model(const SparsifierModel& model, std::ostream& out) {
  const Hyperparams& hp = model.hyperparams;
  out << "morbdd-model v1\n";
  out << "layout " << kFeatureLayoutVersion << "\n";
  out << "family " << to_string(model.family) << "\n";
  out << "seed " << model.seed << "\n";
  out << "rounds " << hp.rounds << "\n";
  out << "max_depth " << hp.max_depth << "\n";
  out << "max_bins " << hp.max_bins << "\n";
  out << "learning_rate " << hex_double(hp.learning_rate) << "\n";
  out << "reg_lambda " << hex_double(hp.reg_lambda) << "\n";
  out << "min_child_hessian " << hex_double(hp.min_child_hessian) << "\n";
  out << "logistic_iterations " << hp.logistic_iterations << "\n";
  out << "logistic_learning_rate " << hex_double(hp.logistic_learning_rate)
      << "\n";
  out << "base_score " << hex_double(model.base_score) << "\n";
  out << "trees " << model.trees.size() << "\n";
  for (std::size_t t = 0; t < model.trees.size(); ++t) {
    const Tree& tree = model.trees[t];
    out << "tree " << t << " " << tree.nodes.size() << "\n";
    for (const TreeNode& node : tree.nodes) {
      if (node.is_leaf())
        out << "l " << hex_double(node.value) << "\n";
      else
        out << "s " << node.feature << " " << hex_double(node.threshold) << " "
            << node.left << " " << node.right << "\n";
    }
  }
  out << "coefficients " << model.coefficients.size() << "\n";
  for (double c : model.coefficients) out << hex_double(c) << "\n";
  out << "end\n";
}

void write_model(const SparsifierModel& model,
                 const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_model(model, out);
  if (!out.flush()) throw IoError("failed writing " + path.string());
}

SparsifierModel read_model(std::istream& in) {
  std::string magic, version;
  if (!(in >> magic >> version) || magic != "morbdd-model" || version != "v1")
    throw ParseError("model: unrecognized header");
  const std::string layout = expect_field(in, "layout");
  if (layout != kFeatureLayoutVersion)
    throw ValidationError("model: feature layout '" + layout +
                          "' does not match '" + kFeatureLayoutVersion + "'");

  SparsifierModel model;
  model.family = model_family_from_string(expect_field(in, "family"));
  Hyperparams& hp = model.hyperparams;
  hp.family = model.family;
  model.seed = static_cast<std::uint64_t>(
      std::stoull(expect_field(in, "seed")));
  hp.rounds = static_cast<int>(parse_long(expect_field(in, "rounds"), "rounds"));
  hp.max_depth =
      static_cast<int>(parse_long(expect_field(in, "max_depth"), "max_depth"));
  hp.max_bins =
      static_cast<int>(parse_long(expect_field(in, "max_bins"), "max_bins"));
  hp.learning_rate = parse_hex_double(expect_field(in, "learning_rate"));
  hp.reg_lambda = parse_hex_double(expect_field(in, "reg_lambda"));
  hp.min_child_hessian =
      parse_hex_double(expect_field(in, "min_child_hessian"));
  hp.logistic_iterations = static_cast<int>(
      parse_long(expect_field(in, "logistic_iterations"), "logistic_iterations"));
  hp.logistic_learning_rate =
      parse_hex_double(expect_field(in, "logistic_learning_rate"));
  model.base_score = parse_hex_double(expect_field(in, "base_score"));

  const long tree_count = parse_long(expect_field(in, "trees"), "tree count");
  if (tree_count < 0) throw ParseError("model: negative tree count");
  model.trees.resize(static_cast<std::size_t>(tree_count));
  for (long t = 0; t < tree_count; ++t) {
    std::string tag, index_token, count_token;
    if (!(in >> tag >> index_token >> count_token) || tag != "tree")
      throw ParseError("model: expected tree " + std::to_string(t));
    if (parse_long(index_token, "tree index") != t)
      throw ParseError("model: tree indices out of order");
    const long node_count = parse_long(count_token, "tree size");
    if (node_count < 1) throw ParseError("model: empty tree");
    Tree& tree = model.trees[static_cast<std::size_t>(t)];
    tree.nodes.resize(static_cast<std::size_t>(node_count));
    for (long i = 0; i < node_count; ++i) {
      std::string kind;
      if (!(in >> kind)) throw ParseError("model: truncated tree");
      TreeNode& node = tree.nodes[static_cast<std::size_t>(i)];
      if (kind == "l") {
        std::string value;
        in >> value;
        node.feature = -1;
        node.value = parse_hex_double(value);
      } else if (kind == "s") {
        std::string feature, threshold, left, right;
        if (!(in >> feature >> threshold >> left >> right))
          throw ParseError("model: truncated split node");
        node.feature =
            static_cast<std::int32_t>(parse_long(feature, "feature index"));
        if (node.feature < 0 || node.feature >= kFeatureCount)
          throw ParseError("model: feature index out of range");
        node.threshold = parse_hex_double(threshold);
        node.left = static_cast<std::int32_t>(parse_long(left, "child index"));
        node.right =
            static_cast<std::int32_t>(parse_long(right, "child index"));
        if (node.left <= i || node.right <= i || node.left >= node_count ||
            node.right >= node_count)
          throw ParseError("model: child index out of range");
      } else {
        throw ParseError("model: unknown node kind '" + kind + "'");
      }
    }
  }

  const long coef_count =
      parse_long(expect_field(in, "coefficients"), "coefficient count");
  if (coef_count < 0) throw ParseError("model: negative coefficient count");
  if (model.family == ModelFamily::logistic &&
      coef_count != kFeatureCount + 1)
    throw ParseError("model: logistic model needs " +
                     std::to_string(kFeatureCount + 1) + " coefficients");
  model.coefficients.resize(static_cast<std::size_t>(coef_count));
  for (long i = 0; i < coef_count; ++i) {
    std::string token;
    if (!(in >> token)) throw ParseError("model: truncated coefficients");
    model.coefficients[static_cast<std::size_t>(i)] = parse_hex_double(token);
  }
  std::string tail;
  if (!(in >> tail) || tail != "end")
    throw ParseError("model: missing end marker");
  model.valid_loss = std::numeric_limits<double>::quiet_NaN();
  model.valid_accuracy = std::numeric_limits<double>::quiet_NaN();
  return model;
}

SparsifierModel read_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_model(in);
}

}  // namespace morbdd
