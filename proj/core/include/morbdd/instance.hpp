#ifndef MORBDD_INSTANCE_HPP_
#define MORBDD_INSTANCE_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace morbdd {

// A multiobjective 0-1 knapsack instance: maximize `num_objectives` profit
// sums subject to one capacity constraint.  Coefficients are positive
// integers; per-objective profit totals and the weight total are validated
// to fit in 32 bits so partial sums never overflow.
struct Instance {
  int num_objectives = 0;                         // K
  int num_items = 0;                              // N
  std::int64_t capacity = 0;                      // W
  std::vector<std::int32_t> weights;              // size N
  std::vector<std::vector<std::int32_t>> profits; // K rows of size N
  // Comment lines carried verbatim at the end of the file ('#' included).
  std::vector<std::string> comments;

  std::int64_t total_weight() const;
};

// Throws ValidationError when dimensions or coefficient ranges are off.
void validate_instance(const Instance& inst);

// FNV-1a over the canonical data lines (comments excluded), so the hash
// identifies the mathematical instance.
std::uint64_t instance_hash(const Instance& inst);
std::string instance_hash_hex(const Instance& inst);

// Weights and profits drawn uniformly from {1..1000} with the pinned
// generator, capacity = ceil(total weight / 2).  The seed is recorded in a
// trailing comment.  Draw order: weights, then profit rows.
Instance generate_instance(int num_objectives, int num_items,
                           std::uint64_t seed);

// Canonical text form:
//   line 1:        K N W
//   line 2:        N weights
//   lines 3..K+2:  N profits per objective
//   then any comment lines, each starting with '#'.
// Rewriting a read file reproduces it byte for byte.
void write_instance(const Instance& inst, std::ostream& out);
void write_instance(const Instance& inst, const std::filesystem::path& path);

// Parse errors name the 1-based line they occurred on.
Instance read_instance(std::istream& in, const std::string& name = "<stream>");
Instance read_instance(const std::filesystem::path& path);

}  // namespace morbdd

#endif  // MORBDD_INSTANCE_HPP_
