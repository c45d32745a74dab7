#include "cachegame/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

namespace cachegame {

std::filesystem::path ResultCache::resolve_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("CACHEGAME_CACHE_DIR"); env && *env) return env;
  return ".cache";
}

std::string ResultCache::key(const nlohmann::json& request) {
  nlohmann::json keyed = request;
  keyed["format"] = kCacheFormat;
  const std::string canonical = keyed.dump();  // object keys are sorted

  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(canonical.data(), canonical.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

std::filesystem::path ResultCache::path_for(const nlohmann::json& request) const {
  return dir_ / (key(request) + ".json");
}

std::optional<std::string> ResultCache::load(const nlohmann::json& request) const {
  std::ifstream in(path_for(request), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void ResultCache::store(const nlohmann::json& request, const std::string& content) const {
  std::filesystem::create_directories(dir_);
  const auto target = path_for(request);
  const auto tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache entry " + tmp);
    out << content;
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace cachegame
