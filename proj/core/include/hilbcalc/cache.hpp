#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

namespace hilbcalc {

/// Key/value persistence for expensive intermediate results. Values are opaque strings.
class Store {
 public:
  virtual ~Store() = default;
  virtual std::optional<std::string> get(const std::string& key) = 0;
  /// Writing the same value twice is harmless.
  virtual void put(const std::string& key, const std::string& value) = 0;
};

class MemoryStore : public Store {
 public:
  std::optional<std::string> get(const std::string& key) override;
  void put(const std::string& key, const std::string& value) override;
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::string, std::string> data_;
};

/// One file per entry, named by the SHA-256 of the key. Each file holds
/// {"version", "key", "value"}; entries with another version or key are ignored.
/// Writes go through a temporary file and a rename, so readers never see partial data.
class FileStore : public Store {
 public:
  static constexpr int kVersion = 1;

  explicit FileStore(std::filesystem::path dir);
  std::optional<std::string> get(const std::string& key) override;
  void put(const std::string& key, const std::string& value) override;
  const std::filesystem::path& dir() const { return dir_; }

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  std::filesystem::path path_for(const std::string& key) const;

  std::filesystem::path dir_;
  std::size_t hits_ = 0, misses_ = 0;
  std::mutex mutex_;
};

/// HILBCALC_CACHE if set, else $XDG_CACHE_HOME/hilbcalc, else ~/.cache/hilbcalc.
std::filesystem::path default_cache_dir();

}  // namespace hilbcalc
