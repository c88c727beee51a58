#include "jacring/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include "jacring/specfile.hpp"

namespace jacring {

namespace fs = std::filesystem;

fs::path ResultCache::default_dir() {
  if (const char* env = std::getenv("JACRING_CACHE_DIR"); env && *env) return fs::path(env);
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "jacring";
  return fs::temp_directory_path() / "jacring-cache";
}

ResultCache::ResultCache(fs::path dir) : dir_(std::move(dir)) {}

std::string ResultCache::key(const std::string& spec_hash, const std::string& command, const std::string& args) {
  return sha256_hex(spec_hash + "\n" + command + "\n" + args);
}

std::optional<std::string> ResultCache::get(const std::string& key) const {
  std::ifstream in(dir_ / (key + ".json"), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

class FileLock {
 public:
  explicit FileLock(const fs::path& p) : fd_(::open(p.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644)) {
    if (fd_ >= 0 && ::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      fd_ = -1;
    }
  }
  ~FileLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;
  bool ok() const { return fd_ >= 0; }

 private:
  int fd_;
};

}  // namespace

bool ResultCache::put(const std::string& key, const std::string& content) const {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) return false;
  FileLock lock(dir_ / ".lock");
  if (!lock.ok()) return false;
  const fs::path final_path = dir_ / (key + ".json");
  const fs::path tmp = dir_ / (key + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << content;
    if (!out.flush()) return false;
  }
  fs::rename(tmp, final_path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    return false;
  }
  return true;
}

}  // namespace jacring
