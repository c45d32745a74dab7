#include <cstdlib>
#include <filesystem>

#include <gtest/gtest.h>

#include "cachegame/cache.hpp"

using cachegame::ResultCache;
namespace fs = std::filesystem;

TEST(ResultCache, RoundTrip) {
  const fs::path dir = fs::temp_directory_path() / "cachegame_cache_test";
  fs::remove_all(dir);
  ResultCache cache(dir);
  const nlohmann::json req = {{"command", "solve"}, {"n", 2}, {"k", 2}, {"h", "3/2"}, {"m", 2}};
  EXPECT_FALSE(cache.load(req));
  cache.store(req, "{\"value\":\"1/2\"}\n");
  ASSERT_TRUE(cache.load(req));
  EXPECT_EQ(*cache.load(req), "{\"value\":\"1/2\"}\n");
  nlohmann::json other = req;
  other["m"] = 4;
  EXPECT_FALSE(cache.load(other));
  fs::remove_all(dir);
}

TEST(ResultCache, KeyIsCanonical) {
  const nlohmann::json a = {{"n", 2}, {"k", 2}};
  const nlohmann::json b = nlohmann::json::parse(R"({"k":2,"n":2})");
  EXPECT_EQ(ResultCache::key(a), ResultCache::key(b));
  EXPECT_EQ(ResultCache::key(a).size(), 64u);
  EXPECT_NE(ResultCache::key(a), ResultCache::key({{"n", 3}, {"k", 2}}));
}

TEST(ResultCache, DirectoryResolution) {
  ::setenv("CACHEGAME_CACHE_DIR", "/tmp/from-env", 1);
  EXPECT_EQ(ResultCache::resolve_dir("/tmp/from-flag"), fs::path("/tmp/from-flag"));
  EXPECT_EQ(ResultCache::resolve_dir(""), fs::path("/tmp/from-env"));
  ::unsetenv("CACHEGAME_CACHE_DIR");
  EXPECT_EQ(ResultCache::resolve_dir(""), fs::path(".cache"));
}
