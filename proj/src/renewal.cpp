#include "kac/renewal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kac/errors.hpp"
#include "kac/transfer.hpp"

namespace kac {

int LocalEvent::span() const {
  int s = 0;
  for (int l : lengths) s += l;
  return s;
}

bool LocalEvent::possible() const {
  if (lengths.empty()) return false;
  for (size_t i = 0; i < lengths.size(); ++i)
    if (lengths[i] < min_atom_length(kind(int(i)))) return false;
  return true;
}

LocalEvent LocalEvent::flipped() const {
  LocalEvent e = *this;
  e.first = flip_kind(first);
  return e;
}

LocalEvent LocalEvent::shifted(int dx) const {
  LocalEvent e = *this;
  e.x0 += dx;
  return e;
}

std::string event_str(const LocalEvent& e) {
  std::ostringstream os;
  os << atom_kind_name(e.first) << '@' << e.x0 << ':';
  for (size_t i = 0; i < e.lengths.size(); ++i) os << (i ? "-" : "") << e.lengths[i];
  return os.str();
}

LocalEvent parse_event(const std::string& s) {
  const auto at = s.find('@'), colon = s.find(':');
  if (at == std::string::npos || colon == std::string::npos || colon < at)
    throw ConfigError("event must look like kind@x0:l1-l2-...: " + s);
  LocalEvent e;
  e.first = atom_kind_from_name(s.substr(0, at));
  e.x0 = std::stoi(s.substr(at + 1, colon - at - 1));
  std::stringstream ls(s.substr(colon + 1));
  std::string tok;
  while (std::getline(ls, tok, '-')) e.lengths.push_back(std::stoi(tok));
  if (e.lengths.empty()) throw ConfigError("event has no atoms: " + s);
  return e;
}

bool event_holds(const IntervalPartition& w, const LocalEvent& e) {
  const int na = int(w.atoms.size());
  const int j = int(e.lengths.size());
  if (na == 0) return false;
  if (w.cyclic) {
    const int n = w.size;
    if (e.span() >= n || j >= na) return false;
    const int x0 = ((e.x0 % n) + n) % n;
    for (int i = 0; i < na; ++i) {
      const Atom& a = w.atoms[i];
      if (((a.left % n) + n) % n != x0 || a.kind != e.first) continue;
      for (int t = 0; t < j; ++t)
        if (w.atoms[(i + t) % na].length != e.lengths[t]) return false;
      return true;
    }
    return false;
  }
  for (int i = 0; i < na; ++i) {
    const Atom& a = w.atoms[i];
    if (a.left != e.x0) continue;
    // The implied endpoint must be an observed atom boundary.
    if (a.kind != e.first || i + j >= na) return false;
    for (int t = 0; t < j; ++t)
      if (w.atoms[i + t].length != e.lengths[t]) return false;
    return true;
  }
  return false;
}

TiltedAtoms::TiltedAtoms(const AtomKernel& k, double lam, int r) : d(k.d), R(r), lambda(lam) {
  if (r > k.max_len) throw TableMissError("kernel table shorter than the requested range");
  plus.assign(r + 1, Eigen::MatrixXd::Zero(d, d));
  K = plus;
  iface = plus;
  eA.assign(r + 1, 0.0);
  for (int u = 1; u <= r; ++u) {
    const double f = std::exp(-(lam - k.tilt) * u);
    plus[u] = k.plus[u] * f;
    K[u] = k.K[u] * f;
    eA[u] = k.eA[u] * f;
    if (u >= 2) iface[u] = k.iface[u] * f;
  }
}

namespace {

using Row = Eigen::RowVectorXd;
using Col = Eigen::VectorXd;

AtomKind prev_kind(AtomKind k) { return AtomKind((int(k) + 3) % 4); }

// Sums of unmarked atom sequences ending right before a mark: [kind][n].
std::vector<std::vector<Col>> completions(const TiltedAtoms& t, int R) {
  std::vector<std::vector<Col>> C(4, std::vector<Col>(R + 1, Col::Zero(t.d)));
  for (int n = 0; n <= R; ++n) {
    if (n == 0) C[0][0] = Col::Ones(t.d);
    for (int kind = 3; kind >= 0; --kind) {
      const AtomKind ak = AtomKind(kind);
      const int nk = (kind + 1) % 4;
      for (int u = min_atom_length(ak); u <= n; ++u) {
        const Col& rest = C[nk][n - u];
        if (rest.isZero(0.0)) continue;
        C[kind][n].noalias() += t.unmarked(ak, u) * rest;
      }
    }
  }
  return C;
}

}  // namespace

EventProbability local_event_probability(const AtomKernel& k, const RenewalLaw& law, const LocalEvent& e, int R) {
  if (!e.possible()) return {0.0, 0.0, R};
  int need = R;
  for (int l : e.lengths) need = std::max(need, l);
  TiltedAtoms t(k, law.lambda, need);
  const int d = t.d;
  // Left partial rows: a marked plus atom at y, then unmarked atoms up to x0.
  std::vector<std::vector<Row>> L(4, std::vector<Row>(R + 1, Row::Zero(d)));
  for (int u = 3; u <= R; ++u) L[0][u] = t.eA[u] * Row::Ones(d);
  for (int n = 1; n <= R; ++n)
    for (int kind = 0; kind < 4; ++kind) {
      if (L[kind][n].isZero(0.0)) continue;
      const AtomKind nk = next_kind(AtomKind(kind));
      for (int u = min_atom_length(nk); n + u <= R; ++u) L[int(nk)][n + u].noalias() += L[kind][n] * t.unmarked(nk, u);
    }
  auto left_sum = [&](AtomKind kind) {
    Row s = Row::Zero(d);
    for (int n = 1; n <= R; ++n) s += L[int(kind)][n];
    return s;
  };
  auto C = completions(t, R);
  const int j = int(e.lengths.size());
  const int l1 = e.lengths[0];
  Row rho = left_sum(prev_kind(e.first)) * t.unmarked(e.first, l1);
  if (e.first == AtomKind::plus && l1 >= 3) rho += t.eA[l1] * Row::Ones(d);
  for (int i = 1; i < j; ++i) rho = rho * t.full(e.kind(i), e.lengths[i]);
  Col right = Col::Zero(d);
  for (int n = 0; n <= R; ++n) right += C[int(e.kind(j))][n];
  EventProbability out;
  out.R = R;
  out.p = law.alpha * rho.dot(right);
  long double tail = law.tail_moment;
  for (int n = R + 1; n < int(law.shells.size()); ++n) tail += (long double)n * law.shells[n];
  out.residual = 2.0 * double(tail);
  return out;
}

double torus_event_probability(const AtomKernel& k, const LocalEvent& e, int L, double log_pbc_rel) {
  if (!e.possible()) return 0.0;
  const int rest = L - e.span();
  if (rest < 1) throw WindowError("event does not fit in the torus");
  TiltedAtoms t(k, k.tilt, L);
  const int d = t.d;
  const int j = int(e.lengths.size());
  Eigen::MatrixXd W = Eigen::MatrixXd::Identity(d, d);
  for (int i = 0; i < j; ++i) W = W * t.full(e.kind(i), e.lengths[i]);
  // Complement: atoms from kind(j) around to the kind before `first`, total `rest`.
  const AtomKind start = e.kind(j), stop = prev_kind(e.first);
  std::vector<std::vector<Eigen::MatrixXd>> D(4, std::vector<Eigen::MatrixXd>(rest + 1, Eigen::MatrixXd::Zero(d, d)));
  for (int u = min_atom_length(start); u <= rest; ++u) D[int(start)][u] = t.full(start, u);
  for (int n = 1; n <= rest; ++n)
    for (int kind = 0; kind < 4; ++kind) {
      if (D[kind][n].isZero(0.0)) continue;
      const AtomKind nk = next_kind(AtomKind(kind));
      for (int u = min_atom_length(nk); n + u <= rest; ++u) D[int(nk)][n + u].noalias() += D[kind][n] * t.full(nk, u);
    }
  const double tr = (W * D[int(stop)][rest]).trace();
  if (!(tr > 0.0)) return 0.0;
  return std::exp(std::log(tr) + k.tilt * L - log_pbc_rel);
}

RodSampler::RodSampler(const AtomKernel& k, const RenewalLaw& law, int R) : t_(k, law.lambda, R), R_(R) {
  C_ = completions(t_, R);
  shells_.assign(R + 1, 0.0);
  for (int n = 8; n <= R; ++n) {
    long double s = 0.0L;
    for (int u = 3; u <= n - 5; ++u) s += t_.eA[u] * C_[1][n - u].sum();
    shells_[n] = double(s);
  }
  cum_.assign(R + 1, 0.0);
  cum_biased_.assign(R + 1, 0.0);
  for (int n = 1; n <= R; ++n) {
    cum_[n] = cum_[n - 1] + shells_[n];
    cum_biased_[n] = cum_biased_[n - 1] + n * shells_[n];
  }
}

namespace {

int pick(const std::vector<double>& weights, std::mt19937_64& rng) {
  double total = 0.0;
  for (double w : weights) total += w;
  double x = uniform01(rng) * total;
  for (size_t i = 0; i < weights.size(); ++i) {
    if (x < weights[i]) return int(i);
    x -= weights[i];
  }
  for (size_t i = weights.size(); i-- > 0;)
    if (weights[i] > 0.0) return int(i);
  return 0;
}

}  // namespace

Quadruple RodSampler::sample(std::mt19937_64& rng, bool length_biased) const {
  const auto& cum = length_biased ? cum_biased_ : cum_;
  const double x = uniform01(rng) * cum[R_];
  int n = int(std::upper_bound(cum.begin(), cum.end(), x) - cum.begin());
  n = std::clamp(n, 8, R_);
  while (shells_[n] == 0.0 && n < R_) ++n;
  return sample_length(rng, n);
}

Quadruple RodSampler::sample_length(std::mt19937_64& rng, int n) const {
  const int d = t_.d;
  Quadruple q;
  std::vector<double> w;
  for (int u = 3; u <= n - 5; ++u) w.push_back(t_.eA[u] * C_[1][n - u].sum());
  const int u11 = 3 + pick(w, rng);
  q.rows.push_back({u11, 0, 0, 0});
  Row rho = Row::Ones(d);
  int left = n - u11;
  int kind = 1;
  while (!(kind == 0 && left == 0)) {
    const AtomKind ak = AtomKind(kind);
    const int nk = (kind + 1) % 4;
    w.clear();
    const int lo = min_atom_length(ak);
    for (int u = lo; u <= left; ++u) w.push_back((rho * t_.unmarked(ak, u)).dot(C_[nk][left - u]));
    const int u = lo + pick(w, rng);
    rho = rho * t_.unmarked(ak, u);
    const double s = rho.sum();
    if (s > 0.0) rho /= s;
    if (kind == 0) q.rows.push_back({u, 0, 0, 0});
    else q.rows.back()[kind] = u;
    left -= u;
    kind = nk;
  }
  return q;
}

RodSequence sample_stationary_renewal(const RodSampler& s, int window, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RodSequence seq;
  seq.cyclic = false;
  seq.size = window;
  Quadruple u = s.sample(rng, true);
  int x = -int(uniform01(rng) * u.length());
  seq.rods.push_back({u, x});
  x += u.length();
  while (x < window) {
    Quadruple v = s.sample(rng, false);
    seq.rods.push_back({v, x});
    x += v.length();
  }
  return seq;
}

}  // namespace kac
