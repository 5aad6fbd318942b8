#ifndef MORBDD_TOOLS_PIPELINE_HPP_
#define MORBDD_TOOLS_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "morbdd/instance.hpp"

namespace morbdd::tools {

using json = nlohmann::json;

struct SizeSpec {
  int num_objectives = 0;
  int num_items = 0;
};

// "K,N" with both parts positive integers.
SizeSpec parse_size(const std::string& text);

// Directory key for one size, e.g. "3_40".
std::string size_key(const SizeSpec& size);

// Resolution order: --data flag, then MORBDD_DATA_DIR, then ./data.
std::filesystem::path resolve_data_root(const std::string& flag);

// manifest.json at the data root; absent file yields a fresh skeleton.
json load_manifest(const std::filesystem::path& root);
void save_manifest(const std::filesystem::path& root, const json& manifest);

// Instance paths of one size/split recorded in the manifest, in order.
std::vector<std::filesystem::path> manifest_files(
    const std::filesystem::path& root, const SizeSpec& size,
    const std::string& split);

// Pretty-printed JSON run report; wall-clock durations all live under the
// "timing" key so determinism checks can strip them.
void write_report(const std::filesystem::path& path, const json& report);

// Runs fn(0..count-1) on `workers` threads (serial when workers <= 1).
// The first exception, if any, is rethrown after all jobs finish.
void run_parallel(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace morbdd::tools

#endif  // MORBDD_TOOLS_PIPELINE_HPP_
