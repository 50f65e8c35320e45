#pragma once

// Content-addressed storage of minimal resolutions.

#include <filesystem>
#include <optional>
#include <string>

#include "gdual/resolution.hpp"

namespace gdual {

inline constexpr const char* kAlgorithmVersion = "gdual-resolution/1";

/// $GDUAL_CACHE_DIR, else $XDG_CACHE_HOME/gdual, else ~/.cache/gdual.
std::filesystem::path default_cache_dir();

struct CacheOutcome {
  bool hit = false;
  std::string key;
  std::string warning;  // set when a stored file failed validation
};

class ResolutionCache {
 public:
  explicit ResolutionCache(std::filesystem::path dir, std::string version = kAlgorithmVersion);

  const std::filesystem::path& dir() const noexcept { return dir_; }
  const std::string& version() const noexcept { return version_; }

  /// SHA-256 over the canonical presentation, the window and the version.
  std::string key(const Presentation& pres, int hom_bound, int deg_bound) const;
  std::filesystem::path path_for(const std::string& key) const;

  void store(const FreeResolution& res) const;
  /// nullopt on a miss; throws CacheCorrupt when the file fails to parse or d^2 != 0.
  std::optional<FreeResolution> load(const Presentation& pres, int hom_bound, int deg_bound) const;

  /// Load, or compute and store. A corrupt file is replaced.
  FreeResolution resolve(const Presentation& pres, int hom_bound, int deg_bound, CacheOutcome* outcome = nullptr) const;

 private:
  std::filesystem::path dir_;
  std::string version_;
};

}  // namespace gdual
