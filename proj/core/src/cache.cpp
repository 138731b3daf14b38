#include "hilbcalc/cache.hpp"

#include "hilbcalc/hash.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace hilbcalc {

namespace fs = std::filesystem;

std::optional<std::string> MemoryStore::get(const std::string& key) {
  std::lock_guard lock(mutex_);
  auto it = data_.find(key);
  if (it == data_.end()) return std::nullopt;
  return it->second;
}

void MemoryStore::put(const std::string& key, const std::string& value) {
  std::lock_guard lock(mutex_);
  data_[key] = value;
}

std::size_t MemoryStore::size() const {
  std::lock_guard lock(mutex_);
  return data_.size();
}

FileStore::FileStore(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

fs::path FileStore::path_for(const std::string& key) const {
  const std::string h = sha256_hex(key);
  return dir_ / h.substr(0, 2) / (h + ".json");
}

std::optional<std::string> FileStore::get(const std::string& key) {
  const auto path = path_for(key);
  std::ifstream in(path);
  std::optional<std::string> result;
  if (in) {
    try {
      const auto doc = nlohmann::json::parse(in);
      if (doc.at("version").get<int>() == kVersion && doc.at("key").get<std::string>() == key)
        result = doc.at("value").get<std::string>();
    } catch (const std::exception&) {
      // unreadable entries count as misses and get overwritten
    }
  }
  std::lock_guard lock(mutex_);
  ++(result ? hits_ : misses_);
  return result;
}

void FileStore::put(const std::string& key, const std::string& value) {
  static std::atomic<unsigned> counter{0};
  const auto path = path_for(key);
  fs::create_directories(path.parent_path());
  std::ostringstream tmpname;
  tmpname << path.filename().string() << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "."
          << counter++;
  const auto tmp = path.parent_path() / tmpname.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;  // a read-only cache just stops caching
    out << nlohmann::json{{"version", kVersion}, {"key", key}, {"value", value}}.dump();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      return;
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) fs::remove(tmp, ec);
}

fs::path default_cache_dir() {
  if (const char* env = std::getenv("HILBCALC_CACHE"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "hilbcalc";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "hilbcalc";
  return fs::temp_directory_path() / "hilbcalc-cache";
}

}  // namespace hilbcalc
