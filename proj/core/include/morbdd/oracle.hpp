#ifndef MORBDD_ORACLE_HPP_
#define MORBDD_ORACLE_HPP_

#include "morbdd/instance.hpp"
#include "morbdd/pareto.hpp"

namespace morbdd {

// Enumerates all 2^N assignments and keeps the nondominated feasible ones
// via incremental archive updates.  Deliberately shares no code with the
// BDD enumeration path so the two can check each other.  Refuses instances
// with more than 20 items.
Frontier brute_force_frontier(const Instance& inst);

inline constexpr int kBruteForceItemLimit = 20;

}  // namespace morbdd

#endif  // MORBDD_ORACLE_HPP_
