#include "morbdd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "morbdd/errors.hpp"
#include "morbdd/rng.hpp"

namespace morbdd {

double cardinality(const Frontier& approx, const Frontier& exact) {
  if (approx.num_objectives != exact.num_objectives)
    throw ContractViolation("cardinality: objective counts differ");
  if (exact.vectors.empty())
    throw ContractViolation("cardinality: exact frontier is empty");
  std::vector<ObjectiveVector> a = approx.vectors;
  std::vector<ObjectiveVector> b = exact.vectors;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t shared = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j])
      ++i;
    else if (b[j] < a[i])
      ++j;
    else {
      ++shared;
      ++i;
      ++j;
    }
  }
  return 100.0 * static_cast<double>(shared) /
         static_cast<double>(b.size());
}

namespace {

void check_reference(const std::vector<ObjectiveVector>& points,
                     const ObjectiveVector& reference) {
  const std::size_t k = reference.size();
  if (k < 1) throw ContractViolation("hypervolume: empty reference point");
  for (const ObjectiveVector& p : points) {
    if (p.size() != k)
      throw ContractViolation("hypervolume: dimension mismatch");
    for (std::size_t i = 0; i < k; ++i)
      if (p[i] < reference[i])
        throw ContractViolation(
            "hypervolume: point below the reference point");
  }
}

// Union volume of [ref, p] boxes by sweeping the last coordinate downward;
// each slab contributes its thickness times the (k-1)-volume of the points
// above it.
double sweep(std::vector<const std::int32_t*>& pts, int k,
             const ObjectiveVector& reference) {
  if (pts.empty()) return 0.0;
  if (k == 1) {
    std::int32_t best = reference[0];
    for (const std::int32_t* p : pts) best = std::max(best, p[0]);
    return static_cast<double>(best) - static_cast<double>(reference[0]);
  }
  std::sort(pts.begin(), pts.end(),
            [k](const std::int32_t* a, const std::int32_t* b) {
              return a[k - 1] > b[k - 1];
            });
  double volume = 0.0;
  std::vector<const std::int32_t*> prefix;
  prefix.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::int32_t z = pts[i][k - 1];
    const std::int32_t z_next =
        i + 1 < pts.size() ? pts[i + 1][k - 1] : reference[k - 1];
    prefix.push_back(pts[i]);
    if (z > z_next) {
      std::vector<const std::int32_t*> slab(prefix);
      volume += (static_cast<double>(z) - static_cast<double>(z_next)) *
                sweep(slab, k - 1, reference);
    }
  }
  return volume;
}

}  // namespace

double hypervolume_exact(const std::vector<ObjectiveVector>& points,
                         const ObjectiveVector& reference) {
  check_reference(points, reference);
  const int k = static_cast<int>(reference.size());
  if (k > 4)
    throw ContractViolation(
        "hypervolume_exact: supports up to 4 objectives, use hypervolume_mc");
  if (points.empty()) return 0.0;
  std::vector<const std::int32_t*> pts;
  pts.reserve(points.size());
  for (const ObjectiveVector& p : points) pts.push_back(p.data());
  return sweep(pts, k, reference);
}

double hypervolume_mc(const std::vector<ObjectiveVector>& points,
                      const ObjectiveVector& reference, double epsilon,
                      double delta, std::uint64_t seed) {
  check_reference(points, reference);
  if (!(epsilon > 0.0) || !(delta > 0.0) || delta >= 1.0)
    throw ValidationError("hypervolume_mc: need epsilon > 0 and delta in (0,1)");
  if (points.empty()) return 0.0;

  const std::size_t k = reference.size();
  ObjectiveVector ideal(reference);
  for (const ObjectiveVector& p : points)
    for (std::size_t i = 0; i < k; ++i) ideal[i] = std::max(ideal[i], p[i]);
  double box = 1.0;
  for (std::size_t i = 0; i < k; ++i)
    box *= static_cast<double>(ideal[i]) - static_cast<double>(reference[i]);
  if (box == 0.0) return 0.0;

  std::vector<const std::int32_t*> pts;
  pts.reserve(points.size());
  for (const ObjectiveVector& p : points) pts.push_back(p.data());
  std::sort(pts.begin(), pts.end(),
            [](const std::int32_t* a, const std::int32_t* b) {
              return a[0] > b[0];
            });

  constexpr std::uint64_t kBlock = 4096;
  constexpr std::uint64_t kSampleCap = std::uint64_t{1} << 26;
  const double need_factor = 3.0 * std::log(2.0 / delta) / (epsilon * epsilon);

  Rng rng(seed);
  std::vector<double> x(k);
  std::uint64_t drawn = 0, hits = 0;
  while (true) {
    for (std::uint64_t s = 0; s < kBlock; ++s) {
      for (std::size_t i = 0; i < k; ++i)
        x[i] = static_cast<double>(reference[i]) +
               uniform_unit(rng) * (static_cast<double>(ideal[i]) -
                                    static_cast<double>(reference[i]));
      for (const std::int32_t* p : pts) {
        if (static_cast<double>(p[0]) < x[0]) break;
        bool covered = true;
        for (std::size_t i = 1; i < k; ++i)
          if (static_cast<double>(p[i]) < x[i]) {
            covered = false;
            break;
          }
        if (covered) {
          ++hits;
          break;
        }
      }
    }
    drawn += kBlock;
    const double rate =
        std::max(static_cast<double>(hits) / static_cast<double>(drawn), 1e-9);
    if (static_cast<double>(drawn) >= need_factor / rate) break;
    if (drawn >= kSampleCap) break;
  }
  return box * static_cast<double>(hits) / static_cast<double>(drawn);
}

namespace {

constexpr double kMcEpsilon = 0.05;
constexpr double kMcDelta = 0.05;
constexpr std::uint64_t kMcSeed = 0x6d6f72626464ULL;
constexpr std::size_t kExact4dLimit = 400;

}  // namespace

double frontier_hypervolume(const Frontier& frontier,
                            const ObjectiveVector& reference) {
  const int k = frontier.num_objectives;
  if (k <= 3 || (k == 4 && frontier.vectors.size() <= kExact4dLimit))
    return hypervolume_exact(frontier.vectors, reference);
  return hypervolume_mc(frontier.vectors, reference, kMcEpsilon, kMcDelta,
                        kMcSeed);
}

EvalReport evaluate_run(const MethodRun& exact_run, const MethodRun& method_run,
                        const ObjectiveVector& reference) {
  if (exact_run.frontier == nullptr || method_run.frontier == nullptr)
    throw ContractViolation("evaluate_run: missing frontier");
  const Frontier& exact = *exact_run.frontier;
  const Frontier& method = *method_run.frontier;
  if (exact.vectors.empty())
    throw ContractViolation("evaluate_run: exact frontier is empty");
  if (exact_run.stats.inc <= 0 || exact_run.stats.rnc <= 0 ||
      exact_run.stats.comp <= 0)
    throw ContractViolation("evaluate_run: exact run stats must be positive");

  EvalReport report;
  report.inc_pct = 100.0 * static_cast<double>(method_run.stats.inc) /
                   static_cast<double>(exact_run.stats.inc);
  report.rnc_pct = 100.0 * static_cast<double>(method_run.stats.rnc) /
                   static_cast<double>(exact_run.stats.rnc);
  report.comp_pct = 100.0 * static_cast<double>(method_run.stats.comp) /
                    static_cast<double>(exact_run.stats.comp);
  report.time_s = method_run.stats.time_s;
  report.exact_time_s = exact_run.stats.time_s;
  report.cardinality_pct = cardinality(method, exact);

  ObjectiveVector ideal(reference);
  for (const ObjectiveVector& p : exact.vectors)
    for (std::size_t i = 0; i < ideal.size(); ++i)
      ideal[i] = std::max(ideal[i], p[i]);
  double box = 1.0;
  for (std::size_t i = 0; i < ideal.size(); ++i)
    box *= static_cast<double>(ideal[i]) - static_cast<double>(reference[i]);
  if (box > 0.0) {
    report.exact_hv = frontier_hypervolume(exact, reference) / box;
    report.hv = frontier_hypervolume(method, reference) / box;
  }
  return report;
}

Aggregate aggregate_reports(std::span<const EvalReport> reports) {
  Aggregate agg;
  if (reports.empty()) return agg;
  agg.instances = reports.size();
  double hv_selected = 0.0;
  double hv_all = 0.0;
  for (const EvalReport& r : reports) {
    agg.inc_pct += r.inc_pct;
    agg.rnc_pct += r.rnc_pct;
    agg.comp_pct += r.comp_pct;
    agg.time_s += r.time_s;
    agg.exact_time_s += r.exact_time_s;
    agg.cardinality_pct += r.cardinality_pct;
    agg.exact_hv += r.exact_hv;
    hv_all += r.hv;
    if (r.exact_hv > r.hv) {
      hv_selected += r.hv;
      ++agg.hv_count;
    }
  }
  const auto n = static_cast<double>(reports.size());
  agg.inc_pct /= n;
  agg.rnc_pct /= n;
  agg.comp_pct /= n;
  agg.time_s /= n;
  agg.exact_time_s /= n;
  agg.cardinality_pct /= n;
  agg.exact_hv /= n;
  agg.hv = agg.hv_count > 0
               ? hv_selected / static_cast<double>(agg.hv_count)
               : hv_all / n;
  return agg;
}

std::string format_aggregate_table(
    std::span<const std::pair<std::string, Aggregate>> rows) {
  char line[256];
  std::ostringstream out;
  std::snprintf(line, sizeof(line), "%-14s %8s %8s %8s %10s %8s %8s\n",
                "method", "INC%", "RNC%", "Comp%", "Time[s]", "Card%", "HV");
  out << line;
  if (!rows.empty()) {
    const Aggregate& first = rows.front().second;
    std::snprintf(line, sizeof(line),
                  "%-14s %8.1f %8.1f %8.1f %10.2f %8.1f %8.4f\n", "exact",
                  100.0, 100.0, 100.0, first.exact_time_s, 100.0,
                  first.exact_hv);
    out << line;
  }
  for (const auto& [name, aggregate] : rows) {
    if (name == "exact") continue;
    std::snprintf(line, sizeof(line),
                  "%-14s %8.1f %8.1f %8.1f %10.2f %8.1f %8.4f\n", name.c_str(),
                  aggregate.inc_pct, aggregate.rnc_pct, aggregate.comp_pct,
                  aggregate.time_s, aggregate.cardinality_pct, aggregate.hv);
    out << line;
  }
  return out.str();
}

std::string format_aggregate_table(const Aggregate& aggregate,
                                   const std::string& method_name) {
  const std::pair<std::string, Aggregate> row{method_name, aggregate};
  return format_aggregate_table({&row, 1});
}

}  // namespace morbdd
