#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

namespace cachegame {

/// Bumped whenever the serialized solution format changes.
inline constexpr const char* kCacheFormat = "cachegame-solution-v1";

/// On-disk results keyed by the SHA-256 of a request's canonical JSON.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// Cache directory from --cache-dir, else $CACHEGAME_CACHE_DIR, else ".cache".
  static std::filesystem::path resolve_dir(const std::string& flag_value);

  /// Hex digest of the canonical request, which carries kCacheFormat.
  static std::string key(const nlohmann::json& request);

  std::optional<std::string> load(const nlohmann::json& request) const;
  void store(const nlohmann::json& request, const std::string& content) const;

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path path_for(const nlohmann::json& request) const;
  std::filesystem::path dir_;
};

}  // namespace cachegame
