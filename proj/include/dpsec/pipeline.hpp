#pragma once

#include "dpsec/serialize.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>

namespace dp {

// Environment variable naming the cache directory when --cache-dir is absent.
inline constexpr const char* kCacheEnv = "DPSEC_CACHE_DIR";

// Content-addressed store. An entry is <kind>-<fnv>.key (the exact input bytes) plus
// <kind>-<fnv>.payload (a checksum line, then the payload). A hit needs a byte-exact key.
class Cache {
 public:
  explicit Cache(std::string dir = {});
  // flag beats the environment; empty means caching is off
  static Cache resolve(const std::string& flag);
  bool enabled() const { return !dir_.empty(); }
  const std::string& dir() const { return dir_; }
  std::optional<std::string> get(const std::string& key, const std::string& kind) const;
  void put(const std::string& key, const std::string& kind, const std::string& payload) const;

 private:
  std::string dir_;
};

struct RunConfig {
  BoundaryInput input;
  int workers = 1;
  long max_level = 2;   // cocycle battery points and theta tables
  int cap = 6;          // largest k with full chamber enumeration
  bool weyl = true;     // Weyl equivariance at k <= 5
  std::string cache_dir;
};

struct ReportBundle {
  std::string hash;                          // fnv1a of the canonical input and options
  std::map<std::string, std::string> files;  // file name -> content
  nlohmann::json summary;
  bool cache_hit = false;
};

// delpezzo -> secfan -> thetaalg -> toricstack. Stage failures are rethrown with the stage
// name prefixed, keeping the exception type.
ReportBundle run_pipeline(const RunConfig& cfg);

// Individual fans with metadata, as used by `fan mori|movsec|secondary`.
std::string fan_artifact(const BoundaryInput& in, const std::string& kind, const std::string& format, int workers,
                         int cap, const Cache& cache);

}  // namespace dp
