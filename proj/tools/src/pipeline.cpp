#include "pipeline.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <thread>

#include "morbdd/errors.hpp"

namespace morbdd::tools {

SizeSpec parse_size(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw ValidationError("--size expects K,N, got '" + text + "'");
  SizeSpec size;
  try {
    size.num_objectives = std::stoi(text.substr(0, comma));
    size.num_items = std::stoi(text.substr(comma + 1));
  } catch (const std::exception&) {
    throw ValidationError("--size expects K,N, got '" + text + "'");
  }
  if (size.num_objectives < 1 || size.num_items < 1)
    throw ValidationError("--size expects positive K,N, got '" + text + "'");
  return size;
}

std::string size_key(const SizeSpec& size) {
  return std::to_string(size.num_objectives) + "_" +
         std::to_string(size.num_items);
}

std::filesystem::path resolve_data_root(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("MORBDD_DATA_DIR"); env && *env)
    return env;
  return "data";
}

json load_manifest(const std::filesystem::path& root) {
  const auto path = root / "manifest.json";
  if (!std::filesystem::exists(path))
    return json{{"format", "morbdd-data-v1"}, {"sizes", json::object()}};
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json manifest;
  try {
    in >> manifest;
  } catch (const json::parse_error& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  if (manifest.value("format", "") != "morbdd-data-v1")
    throw ValidationError(path.string() + ": unknown manifest format");
  return manifest;
}

void save_manifest(const std::filesystem::path& root, const json& manifest) {
  std::filesystem::create_directories(root);
  const auto path = root / "manifest.json";
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << manifest.dump(2) << '\n';
  if (!out) throw IoError("short write to " + path.string());
}

std::vector<std::filesystem::path> manifest_files(
    const std::filesystem::path& root, const SizeSpec& size,
    const std::string& split) {
  const json manifest = load_manifest(root);
  const std::string key = size_key(size);
  if (!manifest["sizes"].contains(key))
    throw ValidationError("manifest has no size " + key +
                          "; run `morbdd generate --size " +
                          std::to_string(size.num_objectives) + "," +
                          std::to_string(size.num_items) + "` first");
  const json& entry = manifest["sizes"][key];
  if (!entry["splits"].contains(split))
    throw ValidationError("manifest size " + key + " has no split " + split);
  std::vector<std::filesystem::path> files;
  for (const auto& rel : entry["splits"][split]["files"])
    files.push_back(root / rel.get<std::string>());
  return files;
}

void write_report(const std::filesystem::path& path, const json& report) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << report.dump(2) << '\n';
  if (!out) throw IoError("short write to " + path.string());
}

void run_parallel(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int spawn = std::min<int>(workers, static_cast<int>(count));
  pool.reserve(static_cast<std::size_t>(spawn));
  for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
  for (auto& thread : pool) thread.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace morbdd::tools
