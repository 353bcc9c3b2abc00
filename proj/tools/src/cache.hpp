#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace ahlab::cli {

/// 64-bit FNV-1a, as 16 hex digits.
std::string fnv1a_hex(const std::string& data);

/// Key for a set of fields: the hash of their canonical JSON dump.
std::string cache_key(const nlohmann::json& fields);

/// Append-only JSON-lines store of reports in `<dir>/reports.jsonl`. Each
/// line is {key, command, fields, timestamp, report}; on read the last line
/// for a key wins. A default-constructed cache is disabled.
class ReportCache {
 public:
  ReportCache() = default;
  explicit ReportCache(const std::filesystem::path& dir);

  /// The --cache-dir flag if set, else AHLAB_CACHE_DIR, else nothing.
  static std::optional<std::filesystem::path> resolve_dir(const std::string& flag);

  bool enabled() const { return !file_.empty(); }
  const std::filesystem::path& file() const { return file_; }

  std::optional<nlohmann::json> lookup(const std::string& key) const;

  /// Writes one line with a single append-mode write.
  void append(const std::string& key, const std::string& command, const nlohmann::json& fields,
              const nlohmann::json& report);

 private:
  std::filesystem::path file_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, nlohmann::json> index_;
};

}  // namespace ahlab::cli
