#pragma once
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>

#include "json.hpp"
#include "kac/boundary.hpp"
#include "kac/weights.hpp"

namespace kac {

// Non-finite doubles are stored as the strings "inf", "-inf", "nan"; finite
// ones as shortest round-trip numbers, so a re-read is bit-identical.
nlohmann::json encode(double x);
double decode(const nlohmann::json& j);

nlohmann::json to_json(const BoundaryFit& f);
BoundaryFit boundary_fit_from_json(const nlohmann::json& j);
nlohmann::json to_json(const WeightTable& t);
WeightTable weight_table_from_json(const nlohmann::json& j);

// Structured-text cache. An entry is used only when the params hash stored in
// the file and the checksum of its payload both match.
class CacheStore {
 public:
  static constexpr int kVersion = 1;
  explicit CacheStore(std::filesystem::path dir);

  std::filesystem::path path(const std::string& kind, const std::string& key) const;
  // Payload or null when absent; CacheCorruption on hash or checksum mismatch.
  nlohmann::json load(const std::string& kind, const std::string& key, std::uint64_t params_hash) const;
  void store(const std::string& kind, const std::string& key, std::uint64_t params_hash,
             const nlohmann::json& payload) const;

  BoundaryFit boundary_fit(const BlockSpace& bs, int n_min, int n_max, int n_table, int gauge_ref = -1);
  WeightTable weight_table(const AtomKernel& k, const BoundaryFit& fit, int R_trunc, int R_enum = 24);

  int hits = 0, misses = 0;

 private:
  std::filesystem::path dir_;
};

}  // namespace kac
