#include "kac/params.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace kac {

std::string kernel_name(Kernel k) {
  switch (k) {
    case Kernel::triangular: return "triangular";
    case Kernel::uniform: return "uniform";
    case Kernel::parabolic: return "parabolic";
  }
  return "triangular";
}

Kernel kernel_from_name(const std::string& name) {
  if (name == "triangular") return Kernel::triangular;
  if (name == "uniform") return Kernel::uniform;
  if (name == "parabolic") return Kernel::parabolic;
  throw ParamError("unknown kernel '" + name + "'");
}

double kernel_shape(Kernel k, double r) {
  if (r < 0.0 || r > 1.0) return 0.0;
  switch (k) {
    case Kernel::triangular: return 1.0 - r;
    case Kernel::uniform: return 1.0;
    case Kernel::parabolic: return 1.0 - r * r;
  }
  return 0.0;
}

double solve_m_beta(double beta) {
  if (beta <= 1.0) return 0.0;
  auto g = [beta](double m) { return m - std::tanh(beta * m); };
  // g < 0 just above 0 and g(1) > 0 for beta > 1.
  double lo = 1e-300, hi = 1.0;
  double probe = 0.5;
  while (g(probe) > 0.0 && probe > 1e-300) probe *= 0.5;
  lo = probe;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) < 0.0) lo = mid; else hi = mid;
    if (hi - lo < 1e-16) break;
  }
  double m = 0.5 * (lo + hi);
  for (int it = 0; it < 5; ++it) {
    double t = std::tanh(beta * m);
    double d = 1.0 - beta * (1.0 - t * t);
    if (d == 0.0) break;
    double next = m - (m - t) / d;
    if (!(next > 0.0 && next <= 1.0)) break;
    m = next;
  }
  return m;
}

ModelParams build_params(const RawParams& raw) {
  if (!(raw.beta > 1.0)) throw ParamError("beta must exceed 1");
  if (!(raw.zeta > 0.0)) throw ParamError("zeta must be positive");
  if (raw.len_cg < 1 || raw.len_minus < 1 || raw.range < 1 || raw.len_plus < 1)
    throw ParamError("lengths must be positive integers");
  if (raw.len_minus % raw.len_cg != 0 || raw.range % raw.len_minus != 0 ||
      raw.len_plus % raw.range != 0)
    throw DivisibilityError("lengths must satisfy len_cg | len_minus | range | len_plus");
  if (raw.len_plus > 14) throw EnumerationCapError("len_plus must not exceed 14");
  ModelParams p;
  p.beta = raw.beta;
  p.zeta = raw.zeta;
  p.len_cg = raw.len_cg;
  p.len_minus = raw.len_minus;
  p.range = raw.range;
  p.len_plus = raw.len_plus;
  p.kernel = kernel_from_name(raw.kernel);
  p.m_beta = solve_m_beta(p.beta);
  // The two bands [+-m_beta - zeta, +-m_beta + zeta] are disjoint.
  if (!(p.zeta < p.m_beta)) throw ParamError("zeta must be below m_beta");
  std::vector<double> shape(p.range + 1, 0.0);
  double mass = 0.0;
  for (int d = 1; d <= p.range; ++d) {
    shape[d] = kernel_shape(p.kernel, double(d) / p.range);
    mass += 2.0 * shape[d];
  }
  if (!(mass > 0.0)) throw ParamError("kernel has no mass on the lattice");
  p.c_gamma = 1.0 / mass;
  p.coupling.assign(p.range + 1, 0.0);
  for (int d = 1; d <= p.range; ++d) p.coupling[d] = shape[d] * p.c_gamma;
  return p;
}

RawParams raw_of(const ModelParams& p) {
  RawParams r;
  r.beta = p.beta;
  r.zeta = p.zeta;
  r.len_cg = p.len_cg;
  r.len_minus = p.len_minus;
  r.range = p.range;
  r.len_plus = p.len_plus;
  r.kernel = kernel_name(p.kernel);
  return r;
}

namespace {
std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}
}  // namespace

std::string serialize_params(const ModelParams& p) {
  std::ostringstream os;
  os << "beta = " << fmt_double(p.beta) << "\n";
  os << "zeta = " << fmt_double(p.zeta) << "\n";
  os << "len_cg = " << p.len_cg << "\n";
  os << "len_minus = " << p.len_minus << "\n";
  os << "range = " << p.range << "\n";
  os << "len_plus = " << p.len_plus << "\n";
  os << "kernel = " << kernel_name(p.kernel) << "\n";
  return os.str();
}

ModelParams parse_params(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  static const char* keys[] = {"beta", "zeta", "len_cg", "len_minus", "range", "len_plus", "kernel"};
  for (auto& [k, v] : kv) {
    bool known = false;
    for (auto* key : keys) known |= (k == key);
    if (!known) throw ConfigError("unknown parameter key '" + k + "'");
  }
  for (auto* key : keys)
    if (!kv.count(key)) throw ConfigError(std::string("missing parameter key '") + key + "'");
  RawParams r;
  try {
    r.beta = std::stod(kv["beta"]);
    r.zeta = std::stod(kv["zeta"]);
    r.len_cg = std::stoi(kv["len_cg"]);
    r.len_minus = std::stoi(kv["len_minus"]);
    r.range = std::stoi(kv["range"]);
    r.len_plus = std::stoi(kv["len_plus"]);
  } catch (const std::logic_error&) {
    throw ConfigError("malformed numeric parameter");
  }
  r.kernel = kv["kernel"];
  return build_params(r);
}

std::uint64_t params_hash(const ModelParams& p) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : serialize_params(p)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[i] = digits[h & 0xf];
  return s;
}

double energy(const ModelParams& p, const Window& w) {
  const int R = p.range;
  if (int(w.left.size()) < R || int(w.right.size()) < R)
    throw BoundaryError("boundary must cover " + std::to_string(R) + " sites on each side");
  const int n = int(w.values.size());
  const int nl = int(w.left.size());
  // Site x in [-nl, n + nr): left spins at negative indices.
  auto spin = [&](int x) -> int {
    if (x < 0) return w.left[nl + x];
    if (x < n) return w.values[x];
    return w.right[x - n];
  };
  double e = 0.0;
  // Each unordered pair {x, y} with x < y and at least one inside is visited once.
  for (int x = -R; x < n; ++x)
    for (int d = 1; d <= R; ++d) {
      int y = x + d;
      if (x < 0 && y < 0) continue;
      if (y >= n + R) continue;
      if (x >= n) continue;
      e -= p.j(d) * spin(x) * spin(y);
    }
  return e;
}

double energy_pbc(const ModelParams& p, const Spins& torus) {
  const int L = int(torus.size());
  if (L <= 2 * p.range) throw TorusTooSmall("torus must exceed twice the range");
  double e = 0.0;
  for (int x = 0; x < L; ++x)
    for (int d = 1; d <= p.range; ++d) e -= p.j(d) * torus[x] * torus[(x + d) % L];
  return e;
}

}  // namespace kac
