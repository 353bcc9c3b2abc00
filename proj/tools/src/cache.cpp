#include "cache.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace ahlab::cli {

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string cache_key(const nlohmann::json& fields) { return fnv1a_hex(fields.dump()); }

ReportCache::ReportCache(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  file_ = dir / "reports.jsonl";
  std::ifstream in(file_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    // a torn or foreign line is skipped rather than poisoning the whole cache
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("key") || !j.contains("report")) continue;
    index_[j["key"].get<std::string>()] = j["report"];
  }
}

std::optional<std::filesystem::path> ReportCache::resolve_dir(const std::string& flag) {
  if (!flag.empty()) return std::filesystem::path(flag);
  if (const char* env = std::getenv("AHLAB_CACHE_DIR"); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

std::optional<nlohmann::json> ReportCache::lookup(const std::string& key) const {
  std::lock_guard<std::mutex> lock(mu_);
  const auto it = index_.find(key);
  std::optional<nlohmann::json> out;
  if (it != index_.end()) out.emplace(it->second);
  return out;
}

void ReportCache::append(const std::string& key, const std::string& command, const nlohmann::json& fields,
                         const nlohmann::json& report) {
  if (!enabled()) return;
  const nlohmann::json entry = {
      {"key", key}, {"command", command}, {"fields", fields}, {"timestamp", utc_timestamp()}, {"report", report}};
  const std::string line = entry.dump() + "\n";
  std::lock_guard<std::mutex> lock(mu_);
  const int fd = ::open(file_.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) throw std::runtime_error("cannot open cache file " + file_.string() + ": " + std::strerror(errno));
  const ssize_t written = ::write(fd, line.data(), line.size());
  ::close(fd);
  if (written != static_cast<ssize_t>(line.size())) throw std::runtime_error("short write to cache file");
  index_[key] = report;
}

}  // namespace ahlab::cli
