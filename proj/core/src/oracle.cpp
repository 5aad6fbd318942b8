#include "morbdd/oracle.hpp"

#include <algorithm>
#include <cstdint>

#include "morbdd/errors.hpp"

namespace morbdd {

namespace {

// a >= b in every coordinate (equality allowed everywhere).
bool covers(const ObjectiveVector& a, const ObjectiveVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

}  // namespace

Frontier brute_force_frontier(const Instance& inst) {
  validate_instance(inst);
  if (inst.num_items > kBruteForceItemLimit)
    throw ValidationError("brute_force_frontier: limited to " +
                          std::to_string(kBruteForceItemLimit) + " items");
  const int n = inst.num_items;
  const int k = inst.num_objectives;

  struct Entry {
    ObjectiveVector value;
    std::uint32_t mask;
  };
  std::vector<Entry> archive;
  const std::uint32_t limit = std::uint32_t{1} << n;
  ObjectiveVector value(static_cast<std::size_t>(k));
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    std::int64_t weight = 0;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1u) weight += inst.weights[static_cast<std::size_t>(i)];
    if (weight > inst.capacity) continue;
    std::fill(value.begin(), value.end(), 0);
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1u)
        for (int kk = 0; kk < k; ++kk)
          value[static_cast<std::size_t>(kk)] +=
              inst.profits[static_cast<std::size_t>(kk)][static_cast<std::size_t>(i)];

    bool absorbed = false;
    for (const Entry& e : archive)
      if (covers(e.value, value)) {  // dominated or duplicate
        absorbed = true;
        break;
      }
    if (absorbed) continue;
    std::erase_if(archive,
                  [&](const Entry& e) { return covers(value, e.value); });
    archive.push_back({value, mask});
  }

  std::sort(archive.begin(), archive.end(),
            [](const Entry& a, const Entry& b) { return a.value < b.value; });

  Frontier out;
  out.num_objectives = k;
  out.num_items = n;
  out.vectors.reserve(archive.size());
  out.solutions.reserve(archive.size());
  for (const Entry& e : archive) {
    out.vectors.push_back(e.value);
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
      bits[static_cast<std::size_t>(i)] =
          static_cast<std::uint8_t>(e.mask >> i & 1u);
    out.solutions.push_back(std::move(bits));
  }
  return out;
}

}  // namespace morbdd
