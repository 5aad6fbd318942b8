#include "morbdd/instance.hpp"

#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "morbdd/errors.hpp"
#include "morbdd/rng.hpp"

namespace morbdd {

namespace {

constexpr std::int32_t kCoefficientLo = 1;
constexpr std::int32_t kCoefficientHi = 1000;

std::string canonical_data(const Instance& inst) {
  std::ostringstream out;
  out << inst.num_objectives << ' ' << inst.num_items << ' ' << inst.capacity
      << '\n';
  for (int i = 0; i < inst.num_items; ++i)
    out << inst.weights[i] << (i + 1 == inst.num_items ? '\n' : ' ');
  for (int k = 0; k < inst.num_objectives; ++k)
    for (int i = 0; i < inst.num_items; ++i)
      out << inst.profits[k][i] << (i + 1 == inst.num_items ? '\n' : ' ');
  return out.str();
}

}  // namespace

std::int64_t Instance::total_weight() const {
  return std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
}

void validate_instance(const Instance& inst) {
  if (inst.num_objectives < 1)
    throw ValidationError("instance: num_objectives must be >= 1");
  if (inst.num_items < 1)
    throw ValidationError("instance: num_items must be >= 1");
  if (inst.capacity < 0)
    throw ValidationError("instance: capacity must be >= 0");
  if (static_cast<int>(inst.weights.size()) != inst.num_items)
    throw ValidationError("instance: weight count does not match num_items");
  if (static_cast<int>(inst.profits.size()) != inst.num_objectives)
    throw ValidationError("instance: profit row count does not match num_objectives");

  constexpr std::int64_t kSumCap = std::numeric_limits<std::int32_t>::max();
  std::int64_t weight_sum = 0;
  for (auto w : inst.weights) {
    if (w < 1) throw ValidationError("instance: weights must be positive");
    weight_sum += w;
  }
  if (weight_sum > kSumCap)
    throw ValidationError("instance: total weight exceeds 32-bit range");
  for (const auto& row : inst.profits) {
    if (static_cast<int>(row.size()) != inst.num_items)
      throw ValidationError("instance: profit row length does not match num_items");
    std::int64_t profit_sum = 0;
    for (auto p : row) {
      if (p < 1) throw ValidationError("instance: profits must be positive");
      profit_sum += p;
    }
    if (profit_sum > kSumCap)
      throw ValidationError("instance: per-objective profit total exceeds 32-bit range");
  }
}

std::uint64_t instance_hash(const Instance& inst) {
  const std::string data = canonical_data(inst);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string instance_hash_hex(const Instance& inst) {
  std::ostringstream out;
  out << std::hex << instance_hash(inst);
  return out.str();
}

Instance generate_instance(int num_objectives, int num_items,
                           std::uint64_t seed) {
  if (num_objectives < 1 || num_items < 1)
    throw ValidationError("generate_instance: sizes must be >= 1");

  Rng rng(seed);
  Instance inst;
  inst.num_objectives = num_objectives;
  inst.num_items = num_items;
  inst.weights.resize(num_items);
  for (auto& w : inst.weights)
    w = static_cast<std::int32_t>(uniform_int(rng, kCoefficientLo, kCoefficientHi));
  inst.profits.assign(num_objectives, std::vector<std::int32_t>(num_items));
  for (auto& row : inst.profits)
    for (auto& p : row)
      p = static_cast<std::int32_t>(uniform_int(rng, kCoefficientLo, kCoefficientHi));
  inst.capacity = (inst.total_weight() + 1) / 2;

  std::ostringstream note;
  note << "# seed=" << seed << " size=" << num_objectives << '_' << num_items
       << " generator=mt19937_64";
  inst.comments.push_back(note.str());

  validate_instance(inst);
  return inst;
}

void write_instance(const Instance& inst, std::ostream& out) {
  out << canonical_data(inst);
  for (const auto& line : inst.comments) out << line << '\n';
}

void write_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  write_instance(inst, out);
  if (!out) throw IoError("write failed: " + path.string());
}

namespace {

ParseError parse_error_at(const std::string& name, int line_no,
                          const std::string& detail) {
  std::ostringstream msg;
  msg << name << ":" << line_no << ": " << detail;
  return ParseError(msg.str());
}

std::vector<std::int64_t> parse_int_line(const std::string& line,
                                         const std::string& name,
                                         int line_no) {
  std::vector<std::int64_t> values;
  std::istringstream in(line);
  std::int64_t v;
  while (in >> v) values.push_back(v);
  if (!in.eof()) {
    std::string tail;
    in.clear();
    in >> tail;
    throw parse_error_at(name, line_no, "expected integer, got '" + tail + "'");
  }
  return values;
}

}  // namespace

Instance read_instance(std::istream& in, const std::string& name) {
  Instance inst;
  std::string line;
  int line_no = 0;

  auto next_data_line = [&](const char* what) {
    if (!std::getline(in, line))
      throw parse_error_at(name, line_no + 1, std::string("missing ") + what);
    ++line_no;
  };

  next_data_line("header line 'K N W'");
  auto header = parse_int_line(line, name, line_no);
  if (header.size() != 3)
    throw parse_error_at(name, line_no, "header must be 'K N W'");
  inst.num_objectives = static_cast<int>(header[0]);
  inst.num_items = static_cast<int>(header[1]);
  inst.capacity = header[2];
  if (inst.num_objectives < 1 || inst.num_objectives > 1000000)
    throw parse_error_at(name, line_no, "objective count out of range");
  if (inst.num_items < 1 || inst.num_items > 1000000)
    throw parse_error_at(name, line_no, "item count out of range");

  auto read_row = [&](const char* what) {
    next_data_line(what);
    auto values = parse_int_line(line, name, line_no);
    if (static_cast<int>(values.size()) != inst.num_items)
      throw parse_error_at(name, line_no,
                           std::string(what) + ": expected " +
                               std::to_string(inst.num_items) + " values, got " +
                               std::to_string(values.size()));
    std::vector<std::int32_t> row(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] < std::numeric_limits<std::int32_t>::min() ||
          values[i] > std::numeric_limits<std::int32_t>::max())
        throw parse_error_at(name, line_no, "coefficient exceeds 32-bit range");
      row[i] = static_cast<std::int32_t>(values[i]);
    }
    return row;
  };

  inst.weights = read_row("weight line");
  inst.profits.reserve(inst.num_objectives);
  for (int k = 0; k < inst.num_objectives; ++k)
    inst.profits.push_back(read_row("profit line"));

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] != '#')
      throw parse_error_at(name, line_no, "unexpected trailing data line");
    inst.comments.push_back(line);
  }

  try {
    validate_instance(inst);
  } catch (const ValidationError& e) {
    throw ValidationError(name + ": " + e.what());
  }
  return inst;
}

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  return read_instance(in, path.string());
}

}  // namespace morbdd
