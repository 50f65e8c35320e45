#include "gdual/cache.hpp"

#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "gdual/presentation_io.hpp"

namespace gdual {

namespace {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw AlgebraError("CacheError", "sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

nlohmann::json to_json(const FreeResolution& res, const std::string& key, const std::string& version) {
  nlohmann::json j;
  j["key"] = key;
  j["version"] = version;
  j["presentation"] = print_presentation(res.algebra().presentation());
  j["hom_bound"] = res.hom_bound();
  j["deg_bound"] = res.deg_bound();
  auto& stages = j["stages"] = nlohmann::json::array();
  for (const auto& st : res.stages()) {
    nlohmann::json js;
    js["weights"] = st.generator_weights;
    auto& imgs = js["images"] = nlohmann::json::array();
    for (const auto& v : st.images) {
      std::vector<Scalar> entries(v.data(), v.data() + v.size());
      imgs.push_back(entries);
    }
    stages.push_back(std::move(js));
  }
  return j;
}

}  // namespace

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("GDUAL_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "gdual";
  if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "gdual";
  return std::filesystem::temp_directory_path() / "gdual-cache";
}

ResolutionCache::ResolutionCache(std::filesystem::path dir, std::string version)
    : dir_(std::move(dir)), version_(std::move(version)) {}

std::string ResolutionCache::key(const Presentation& pres, int hom_bound, int deg_bound) const {
  std::ostringstream os;
  os << print_presentation(pres) << "\n--\nhom_bound=" << hom_bound << "\ndeg_bound=" << deg_bound
     << "\nversion=" << version_ << "\n";
  return sha256_hex(os.str());
}

std::filesystem::path ResolutionCache::path_for(const std::string& key) const {
  return dir_ / (key.substr(0, 2)) / (key + ".json");
}

void ResolutionCache::store(const FreeResolution& res) const {
  const std::string k = key(res.algebra().presentation(), res.hom_bound(), res.deg_bound());
  const auto path = path_for(k);
  std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + "." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw AlgebraError("CacheError", "cannot write " + tmp);
    out << to_json(res, k, version_).dump() << "\n";
  }
  std::filesystem::rename(tmp, path);
}

std::optional<FreeResolution> ResolutionCache::load(const Presentation& pres, int hom_bound, int deg_bound) const {
  const std::string k = key(pres, hom_bound, deg_bound);
  const auto path = path_for(k);
  if (!std::filesystem::exists(path)) return std::nullopt;
  try {
    std::ifstream in(path, std::ios::binary);
    const auto j = nlohmann::json::parse(in);
    if (j.at("key").get<std::string>() != k || j.at("version").get<std::string>() != version_)
      throw AlgebraError("CacheCorrupt", "key mismatch in " + path.string());
    if (j.at("hom_bound").get<int>() != hom_bound || j.at("deg_bound").get<int>() != deg_bound)
      throw AlgebraError("CacheCorrupt", "window mismatch in " + path.string());
    if (j.at("presentation").get<std::string>() != print_presentation(pres))
      throw AlgebraError("CacheCorrupt", "presentation mismatch in " + path.string());
    auto alg = std::make_shared<const GradedAlgebra>(pres, deg_bound);
    std::vector<ResolutionStage> stages;
    for (const auto& js : j.at("stages")) {
      ResolutionStage st;
      st.generator_weights = js.at("weights").get<std::vector<int>>();
      for (const auto& v : js.at("images")) {
        auto entries = v.get<std::vector<Scalar>>();
        RowVector row(static_cast<Index>(entries.size()));
        for (std::size_t i = 0; i < entries.size(); ++i) {
          if (entries[i] < 0 || entries[i] >= alg->field().p())
            throw AlgebraError("CacheCorrupt", "coefficient out of range in " + path.string());
          row[static_cast<Index>(i)] = entries[i];
        }
        st.images.push_back(std::move(row));
      }
      if (st.images.size() != (stages.empty() ? 0 : st.generator_weights.size()))
        throw AlgebraError("CacheCorrupt", "stage shape mismatch in " + path.string());
      stages.push_back(std::move(st));
    }
    if (stages.empty()) throw AlgebraError("CacheCorrupt", "no stages in " + path.string());
    for (std::size_t s = 1; s < stages.size(); ++s) {
      const auto& st = stages[s];
      FreeResolution prefix(alg, hom_bound, deg_bound, std::vector<ResolutionStage>(stages.begin(), stages.begin() + static_cast<std::ptrdiff_t>(s)));
      for (std::size_t i = 0; i < st.images.size(); ++i)
        if (st.images[i].size() != prefix.module_dim(static_cast<int>(s) - 1, st.generator_weights[i]))
          throw AlgebraError("CacheCorrupt", "image length mismatch in " + path.string());
    }
    FreeResolution res(alg, hom_bound, deg_bound, std::move(stages));
    if (!res.composites_vanish()) throw AlgebraError("CacheCorrupt", "d^2 != 0 in " + path.string());
    return res;
  } catch (const AlgebraError& e) {
    if (e.kind() == "CacheCorrupt") throw;
    throw AlgebraError("CacheCorrupt", path.string() + ": " + e.what());
  } catch (const std::exception& e) {
    throw AlgebraError("CacheCorrupt", path.string() + ": " + e.what());
  }
}

FreeResolution ResolutionCache::resolve(const Presentation& pres, int hom_bound, int deg_bound, CacheOutcome* outcome) const {
  CacheOutcome local;
  local.key = key(pres, hom_bound, deg_bound);
  try {
    if (auto res = load(pres, hom_bound, deg_bound)) {
      local.hit = true;
      if (outcome) *outcome = local;
      return std::move(*res);
    }
  } catch (const AlgebraError& e) {
    local.warning = e.what();
    std::cerr << "warning: " << e.what() << "; recomputing\n";
  }
  FreeResolution res = minimal_resolution(pres, hom_bound, deg_bound);
  try {
    store(res);
  } catch (const std::exception& e) {
    std::cerr << "warning: cache store failed: " << e.what() << "\n";
  }
  if (outcome) *outcome = local;
  return res;
}

}  // namespace gdual
