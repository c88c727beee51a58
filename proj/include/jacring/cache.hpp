#pragma once

// Content-addressed store of result documents. Readers never lock; writers
// serialize on a lockfile and publish with an atomic rename.

#include <filesystem>
#include <optional>
#include <string>

namespace jacring {

class ResultCache {
 public:
  /// JACRING_CACHE_DIR, else $HOME/.cache/jacring.
  static std::filesystem::path default_dir();

  explicit ResultCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }

  static std::string key(const std::string& spec_hash, const std::string& command, const std::string& args);

  std::optional<std::string> get(const std::string& key) const;
  /// Best effort; returns false when the directory is not writable.
  bool put(const std::string& key, const std::string& content) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace jacring
