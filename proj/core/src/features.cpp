#include "morbdd/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "morbdd/errors.hpp"
#include "morbdd/rng.hpp"

namespace morbdd {

namespace {

constexpr const char* kNames[kFeatureCount] = {
    "inst_obj_count",    "inst_item_count",   "inst_capacity_ratio",
    "inst_weight_mean",  "inst_weight_min",   "inst_weight_max",
    "inst_weight_std",   "inst_vmean_mean",   "inst_vmean_min",
    "inst_vmean_max",    "inst_vmean_std",    "inst_vmin_mean",
    "inst_vmin_min",     "inst_vmin_max",     "inst_vmin_std",
    "inst_vmax_mean",    "inst_vmax_min",     "inst_vmax_max",
    "inst_vmax_std",     "var_weight",        "var_value_mean",
    "var_value_max",     "var_value_min",     "var_value_std",
    "var_ratio_mean",    "var_ratio_max",     "var_ratio_min",
    "node_state_total",  "node_state_capacity", "node_layer",
    "pvar_weight",       "pvar_value_mean",   "pvar_value_max",
    "pvar_value_min",    "pvar_value_std",    "pvar_ratio_mean",
    "pvar_ratio_max",    "pvar_ratio_min",    "pnode_one_state_total",
    "pnode_one_state_capacity", "pnode_one_indegree", "pnode_zero_state_total",
    "pnode_zero_state_capacity", "pnode_zero_indegree",
};

struct SeriesStats {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double std = 0.0;
};

SeriesStats series_stats(const std::vector<double>& values) {
  SeriesStats s;
  if (values.empty()) return s;
  s.min = values[0];
  s.max = values[0];
  double sum = 0.0;
  for (double v : values) {
    sum += v;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  s.mean = sum / static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(var / static_cast<double>(values.size()));
  return s;
}

void fill_quad(double* out, const SeriesStats& s, double scale) {
  out[0] = s.mean / scale;
  out[1] = s.min / scale;
  out[2] = s.max / scale;
  out[3] = s.std / scale;
}

std::array<double, 19> instance_block(const Instance& inst,
                                      double total_weight) {
  std::array<double, 19> out{};
  out[0] = inst.num_objectives / kObjectiveCountScale;
  out[1] = inst.num_items / kItemCountScale;
  out[2] = static_cast<double>(inst.capacity) / total_weight;

  std::vector<double> weights(inst.weights.begin(), inst.weights.end());
  fill_quad(out.data() + 3, series_stats(weights), kCoefficientScale);

  std::vector<double> vmean(inst.num_items), vmin(inst.num_items),
      vmax(inst.num_items);
  for (int i = 0; i < inst.num_items; ++i) {
    double lo = inst.profits[0][i];
    double hi = lo;
    double sum = 0.0;
    for (int k = 0; k < inst.num_objectives; ++k) {
      double v = inst.profits[k][i];
      sum += v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    vmean[i] = sum / inst.num_objectives;
    vmin[i] = lo;
    vmax[i] = hi;
  }
  fill_quad(out.data() + 7, series_stats(vmean), kCoefficientScale);
  fill_quad(out.data() + 11, series_stats(vmin), kCoefficientScale);
  fill_quad(out.data() + 15, series_stats(vmax), kCoefficientScale);
  return out;
}

std::array<double, 8> variable_block(const Instance& inst, int item) {
  std::array<double, 8> out{};
  double weight = inst.weights[item];
  std::vector<double> values(inst.num_objectives);
  for (int k = 0; k < inst.num_objectives; ++k)
    values[k] = inst.profits[k][item];
  SeriesStats s = series_stats(values);
  out[0] = weight / kCoefficientScale;
  out[1] = s.mean / kCoefficientScale;
  out[2] = s.max / kCoefficientScale;
  out[3] = s.min / kCoefficientScale;
  out[4] = s.std / kCoefficientScale;
  out[5] = s.mean / weight;
  out[6] = s.max / weight;
  out[7] = s.min / weight;
  return out;
}

}  // namespace

std::span<const char* const> feature_names() {
  return std::span<const char* const>(kNames, kFeatureCount);
}

FeatureExtractor::FeatureExtractor(const Bdd& bdd) : bdd_(bdd) {
  const Instance& inst = bdd.instance();
  total_weight_ = static_cast<double>(
      std::accumulate(inst.weights.begin(), inst.weights.end(),
                      std::int64_t{0}));
  instance_block_ = instance_block(inst, total_weight_);
  variable_blocks_.resize(inst.num_items);
  for (int i = 0; i < inst.num_items; ++i)
    variable_blocks_[i] = variable_block(inst, i);
}

FeatureVector FeatureExtractor::operator()(NodeId id) const {
  if (!bdd_.contains(id))
    throw ContractViolation("extract_features: node " + std::to_string(id) +
                            " is not present in the BDD");
  const Node& node = bdd_.node(id);
  if (id == bdd_.root() || id == bdd_.terminal())
    throw ContractViolation(
        "extract_features: the root and terminal carry no features");

  const Instance& inst = bdd_.instance();
  const int layer = node.layer;
  FeatureVector out{};
  std::copy(instance_block_.begin(), instance_block_.end(), out.begin());

  const auto& var = variable_blocks_[layer - 2];
  std::copy(var.begin(), var.end(), out.begin() + 19);

  out[27] = static_cast<double>(node.state) / total_weight_;
  out[28] = static_cast<double>(node.state) /
            static_cast<double>(inst.capacity);
  out[29] = static_cast<double>(layer - 1) / inst.num_items;

  if (layer > 2) {
    const auto& pvar = variable_blocks_[layer - 3];
    std::copy(pvar.begin(), pvar.end(), out.begin() + 30);
  }

  double state_sum[2] = {0.0, 0.0};
  double count[2] = {0.0, 0.0};
  for (const InArc& arc : bdd_.in_arcs(id)) {
    state_sum[arc.domain] += static_cast<double>(bdd_.node(arc.parent).state);
    count[arc.domain] += 1.0;
  }
  const double width_above =
      static_cast<double>(bdd_.layer(layer - 1).size());
  for (int d = 1; d >= 0; --d) {
    double* slot = out.data() + (d == 1 ? 38 : 41);
    if (count[d] > 0.0) {
      slot[0] = state_sum[d] / count[d] / total_weight_;
      slot[1] = state_sum[d] / count[d] /
                static_cast<double>(inst.capacity);
    }
    slot[2] = count[d] / width_above;
  }
  return out;
}

FeatureVector extract_features(const Instance& inst, const Bdd& bdd,
                               NodeId node) {
  if (&inst != &bdd.instance() && instance_hash(inst) != instance_hash(bdd.instance()))
    throw ContractViolation(
        "extract_features: instance does not match the BDD's instance");
  return FeatureExtractor(bdd)(node);
}

Dataset build_dataset(std::span<const LabeledInstance> sources,
                      std::uint64_t seed) {
  Dataset out;
  for (std::size_t si = 0; si < sources.size(); ++si) {
    const LabeledInstance& src = sources[si];
    if (src.instance == nullptr || src.bdd == nullptr ||
        src.pareto == nullptr || src.pareto_paths == nullptr)
      throw ContractViolation("build_dataset: incomplete labeled instance");
    const Bdd& bdd = *src.bdd;
    if (src.pareto->universe_size() != static_cast<std::size_t>(bdd.id_bound()) ||
        src.pareto_paths->size() != static_cast<std::size_t>(bdd.id_bound()))
      throw ContractViolation(
          "build_dataset: marks and path counts must cover the BDD");

    std::vector<NodeId> positives;
    std::vector<NodeId> pool;
    for (NodeId id = 0; id < bdd.id_bound(); ++id) {
      if (!bdd.contains(id) || id == bdd.root() || id == bdd.terminal())
        continue;
      if (src.pareto->contains(id))
        positives.push_back(id);
      else
        pool.push_back(id);
    }
    std::string name = src.id.empty()
                           ? instance_hash_hex(*src.instance)
                           : src.id;
    if (positives.empty()) {
      out.warnings.push_back("instance " + name +
                             ": no interior Pareto-optimal nodes, skipped");
      continue;
    }

    std::vector<double> layer_max(bdd.num_layers() + 1, 0.0);
    for (NodeId id : positives) {
      const int l = bdd.node(id).layer;
      layer_max[l] = std::max(layer_max[l], (*src.pareto_paths)[id]);
    }

    Rng rng(derive_seed(seed, si));
    const std::size_t want = std::min(positives.size(), pool.size());
    for (std::size_t i = 0; i < want; ++i) {
      std::size_t j = static_cast<std::size_t>(uniform_int(
          rng, static_cast<std::uint64_t>(i),
          static_cast<std::uint64_t>(pool.size() - 1)));
      std::swap(pool[i], pool[j]);
    }
    std::vector<NodeId> negatives(pool.begin(),
                                  pool.begin() + static_cast<std::ptrdiff_t>(want));
    std::sort(negatives.begin(), negatives.end());

    const auto instance_index = static_cast<std::int32_t>(out.instance_ids.size());
    out.instance_ids.push_back(std::move(name));
    FeatureExtractor extract(bdd);
    auto emit = [&](NodeId id, std::uint8_t label, float weight) {
      Dataset::Row row;
      const FeatureVector features = extract(id);
      for (int f = 0; f < kFeatureCount; ++f)
        row.features[f] = static_cast<float>(features[f]);
      row.label = label;
      row.weight = weight;
      row.instance = instance_index;
      row.node = id;
      out.rows.push_back(row);
    };
    for (NodeId id : positives) {
      const double peak = layer_max[bdd.node(id).layer];
      if (peak <= 0.0)
        throw ContractViolation(
            "build_dataset: Pareto node with no frontier paths");
      const double w = std::clamp((*src.pareto_paths)[id] / peak, 1e-3, 1.0);
      emit(id, 1, static_cast<float>(w));
    }
    for (NodeId id : negatives) emit(id, 0, 1.0f);
  }
  return out;
}

namespace {

void append_float(std::string& line, float value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  line.append(buf, res.ptr);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

float parse_float_field(const std::string& field, int lineno) {
  float value = 0.0f;
  auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
    throw ParseError("dataset line " + std::to_string(lineno) +
                     ": bad numeric field '" + field + "'");
  return value;
}

}  // namespace

void write_dataset_csv(const Dataset& dataset, std::ostream& out) {
  out << "# " << kFeatureLayoutVersion
      << " coefficient_scale=" << static_cast<int>(kCoefficientScale)
      << " objective_scale=" << static_cast<int>(kObjectiveCountScale)
      << " item_scale=" << static_cast<int>(kItemCountScale) << "\n";
  for (int f = 0; f < kFeatureCount; ++f) out << kNames[f] << ",";
  out << "label,weight,instance_id,node_id\n";
  std::string line;
  for (const Dataset::Row& row : dataset.rows) {
    line.clear();
    for (int f = 0; f < kFeatureCount; ++f) {
      append_float(line, row.features[f]);
      line.push_back(',');
    }
    line.push_back(row.label ? '1' : '0');
    line.push_back(',');
    append_float(line, row.weight);
    line.push_back(',');
    line += dataset.instance_ids[static_cast<std::size_t>(row.instance)];
    line.push_back(',');
    line += std::to_string(row.node);
    line.push_back('\n');
    out << line;
  }
}

void write_dataset_csv(const Dataset& dataset,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_dataset_csv(dataset, out);
  if (!out.flush()) throw IoError("failed writing " + path.string());
}

Dataset read_dataset_csv(std::istream& in) {
  Dataset out;
  std::unordered_map<std::string, std::int32_t> id_index;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      const auto fields = split_csv(line);
      if (fields.size() != kFeatureCount + 4 || fields[0] != kNames[0])
        throw ParseError("dataset line " + std::to_string(lineno) +
                         ": unrecognized header");
      continue;
    }
    const auto fields = split_csv(line);
    if (fields.size() != kFeatureCount + 4)
      throw ParseError("dataset line " + std::to_string(lineno) + ": expected " +
                       std::to_string(kFeatureCount + 4) + " fields, got " +
                       std::to_string(fields.size()));
    Dataset::Row row;
    for (int f = 0; f < kFeatureCount; ++f)
      row.features[f] = parse_float_field(fields[f], lineno);
    const std::string& label = fields[kFeatureCount];
    if (label != "0" && label != "1")
      throw ParseError("dataset line " + std::to_string(lineno) +
                       ": label must be 0 or 1");
    row.label = label == "1" ? 1 : 0;
    row.weight = parse_float_field(fields[kFeatureCount + 1], lineno);
    const std::string& id = fields[kFeatureCount + 2];
    auto [it, inserted] =
        id_index.try_emplace(id, static_cast<std::int32_t>(out.instance_ids.size()));
    if (inserted) out.instance_ids.push_back(id);
    row.instance = it->second;
    try {
      row.node = static_cast<NodeId>(std::stol(fields[kFeatureCount + 3]));
    } catch (const std::exception&) {
      throw ParseError("dataset line " + std::to_string(lineno) +
                       ": bad node id");
    }
    out.rows.push_back(row);
  }
  return out;
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_dataset_csv(in);
}

}  // namespace morbdd
