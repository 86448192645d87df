#include "kac/cache.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "kac/errors.hpp"
#include "kac/params.hpp"

namespace kac {

using nlohmann::json;

json encode(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double decode(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  if (s == "nan") return std::nan("");
  throw CacheCorruption("bad number in cache: " + s);
}

namespace {

json vec(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(encode(x));
  return a;
}

std::vector<double> unvec(const json& a) {
  std::vector<double> v;
  v.reserve(a.size());
  for (const auto& x : a) v.push_back(decode(x));
  return v;
}

json mat(const std::vector<std::vector<double>>& m) {
  json a = json::array();
  for (const auto& r : m) a.push_back(vec(r));
  return a;
}

std::vector<std::vector<double>> unmat(const json& a) {
  std::vector<std::vector<double>> m;
  for (const auto& r : a) m.push_back(unvec(r));
  return m;
}

std::uint64_t fnv(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

json to_json(const BoundaryFit& f) {
  return {{"n_min", f.n_min}, {"n_max", f.n_max}, {"n_table", f.n_table}, {"gauge_ref", f.gauge_ref},
          {"p_plus", encode(f.p_plus)}, {"d", f.d}, {"states", f.states}, {"F1", vec(f.F1)}, {"F2", vec(f.F2)},
          {"logZ", mat(f.logZ)}, {"G", mat(f.G)}, {"A", vec(f.A)}, {"params_hash", hex64(f.params_hash)}};
}

BoundaryFit boundary_fit_from_json(const json& j) {
  BoundaryFit f;
  f.n_min = j.at("n_min");
  f.n_max = j.at("n_max");
  f.n_table = j.at("n_table");
  f.gauge_ref = j.at("gauge_ref");
  f.p_plus = decode(j.at("p_plus"));
  f.d = j.at("d");
  f.states = j.at("states").get<std::vector<int>>();
  f.F1 = unvec(j.at("F1"));
  f.F2 = unvec(j.at("F2"));
  f.logZ = unmat(j.at("logZ"));
  f.G = unmat(j.at("G"));
  f.A = unvec(j.at("A"));
  f.params_hash = std::stoull(j.at("params_hash").get<std::string>(), nullptr, 16);
  return f;
}

json to_json(const WeightTable& t) {
  json entries = json::array();
  for (const auto& [u, w] : t.entries) entries.push_back({{"rows", u.rows}, {"w", encode(w)}});
  return {{"R_trunc", t.R_trunc}, {"R_enum", t.R_enum}, {"tilt", encode(t.tilt)}, {"shells", vec(t.shells)},
          {"entries", entries}, {"tail_c", encode(t.tail_c)}, {"tail_delta", encode(t.tail_delta)},
          {"params_hash", hex64(t.params_hash)}, {"fit_hash", hex64(t.fit_hash)}};
}

WeightTable weight_table_from_json(const json& j) {
  WeightTable t;
  t.R_trunc = j.at("R_trunc");
  t.R_enum = j.at("R_enum");
  t.tilt = decode(j.at("tilt"));
  t.shells = unvec(j.at("shells"));
  for (const auto& e : j.at("entries")) {
    Quadruple u;
    u.rows = e.at("rows").get<std::vector<std::array<int, 4>>>();
    t.entries[u] = decode(e.at("w"));
  }
  t.tail_c = decode(j.at("tail_c"));
  t.tail_delta = decode(j.at("tail_delta"));
  t.params_hash = std::stoull(j.at("params_hash").get<std::string>(), nullptr, 16);
  t.fit_hash = std::stoull(j.at("fit_hash").get<std::string>(), nullptr, 16);
  return t;
}

CacheStore::CacheStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path CacheStore::path(const std::string& kind, const std::string& key) const {
  return dir_ / (kind + "-" + key + ".json");
}

json CacheStore::load(const std::string& kind, const std::string& key, std::uint64_t params_hash) const {
  const auto p = path(kind, key);
  std::ifstream in(p);
  if (!in) return nullptr;
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw CacheCorruption("unparsable cache file " + p.string());
  }
  if (doc.value("version", -1) != kVersion || doc.value("kind", "") != kind)
    throw CacheCorruption("cache file " + p.string() + " has the wrong version or kind");
  if (doc.value("params_hash", "") != hex64(params_hash))
    throw CacheCorruption("params hash mismatch in " + p.string());
  const auto& payload = doc.at("payload");
  if (doc.value("checksum", "") != hex64(fnv(payload.dump())))
    throw CacheCorruption("checksum mismatch in " + p.string());
  return payload;
}

void CacheStore::store(const std::string& kind, const std::string& key, std::uint64_t params_hash,
                       const json& payload) const {
  std::filesystem::create_directories(dir_);
  json doc = {{"version", kVersion}, {"kind", kind}, {"params_hash", hex64(params_hash)},
              {"checksum", hex64(fnv(payload.dump()))}, {"payload", payload}};
  const auto p = path(kind, key);
  const auto tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << doc.dump() << "\n";
    if (!out) throw CacheCorruption("cannot write cache file " + tmp);
  }
  std::filesystem::rename(tmp, p);
}

BoundaryFit CacheStore::boundary_fit(const BlockSpace& bs, int n_min, int n_max, int n_table, int gauge_ref) {
  const auto ph = params_hash(bs.p);
  std::ostringstream key;
  key << hex64(ph) << "-" << n_min << "-" << n_max << "-" << n_table << "-" << gauge_ref;
  auto cached = load("fit", key.str(), ph);
  if (!cached.is_null()) {
    ++hits;
    return boundary_fit_from_json(cached);
  }
  ++misses;
  auto f = fit_boundary(bs, n_min, n_max, n_table, gauge_ref);
  store("fit", key.str(), ph, to_json(f));
  return f;
}

WeightTable CacheStore::weight_table(const AtomKernel& k, const BoundaryFit& fit, int R_trunc, int R_enum) {
  const auto ph = fit.params_hash;
  char tilt[32];
  std::snprintf(tilt, sizeof tilt, "%a", k.tilt);
  std::ostringstream key;
  key << hex64(ph) << "-" << hex64(fit.hash()) << "-R" << R_trunc << "-E" << R_enum << "-t" << hex64(fnv(tilt));
  auto cached = load("weights", key.str(), ph);
  if (!cached.is_null()) {
    ++hits;
    return weight_table_from_json(cached);
  }
  ++misses;
  auto t = build_weight_table(k, R_trunc, R_enum);
  t.params_hash = ph;
  t.fit_hash = fit.hash();
  store("weights", key.str(), ph, to_json(t));
  return t;
}

}  // namespace kac
