#include "kac/phase.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kac {

std::vector<int> eta_labels(const Spins& sigma, const ModelParams& p) {
  const int lm = p.len_minus;
  if (sigma.size() % lm != 0) throw AlignmentError("window is not a multiple of len_minus");
  std::vector<int> eta(sigma.size() / lm);
  for (size_t b = 0; b < eta.size(); ++b) {
    int sum = 0;
    for (int k = 0; k < lm; ++k) sum += sigma[b * lm + k];
    double mean = double(sum) / lm;
    if (std::abs(mean - p.m_beta) <= p.zeta) eta[b] = 1;
    else if (std::abs(mean + p.m_beta) <= p.zeta) eta[b] = -1;
    else eta[b] = 0;
  }
  return eta;
}

PhaseLabels theta_and_Theta(const std::vector<int>& eta, const ModelParams& p, bool cyclic) {
  const int q = p.blocks_minus_per_plus();
  if (eta.size() % q != 0) throw AlignmentError("eta length is not a multiple of len_plus/len_minus");
  PhaseLabels out;
  out.eta = eta;
  const int n = int(eta.size()) / q;
  out.theta.resize(n);
  for (int i = 0; i < n; ++i) {
    bool all_plus = true, all_minus = true;
    for (int k = 0; k < q; ++k) {
      all_plus &= eta[i * q + k] == 1;
      all_minus &= eta[i * q + k] == -1;
    }
    out.theta[i] = all_plus ? 1 : (all_minus ? -1 : 0);
  }
  if (cyclic) {
    out.origin = 0;
    out.big_theta.resize(n);
    for (int i = 0; i < n; ++i)
      out.big_theta[i] = big_theta_of(out.theta[(i + n - 1) % n], out.theta[i], out.theta[(i + 1) % n]);
  } else {
    out.origin = 1;
    for (int i = 1; i + 1 < n; ++i)
      out.big_theta.push_back(big_theta_of(out.theta[i - 1], out.theta[i], out.theta[i + 1]));
  }
  return out;
}

PhaseLabels phase_labels(const Spins& sigma, const ModelParams& p, bool cyclic) {
  if (sigma.size() % p.len_plus != 0) throw AlignmentError("window is not a multiple of len_plus");
  return theta_and_Theta(eta_labels(sigma, p), p, cyclic);
}

std::string atom_kind_name(AtomKind k) {
  switch (k) {
    case AtomKind::plus: return "plus";
    case AtomKind::iface_pm: return "iface_pm";
    case AtomKind::minus: return "minus";
    case AtomKind::iface_mp: return "iface_mp";
  }
  return "?";
}

AtomKind atom_kind_from_name(const std::string& s) {
  for (int k = 0; k < 4; ++k)
    if (atom_kind_name(AtomKind(k)) == s) return AtomKind(k);
  throw LabelError("unknown atom kind '" + s + "'");
}

namespace {

// Atoms between consecutive nonzero labels at cyclic positions a < b
// (b may exceed n). Same sign: both belong to one phase interval.
struct Run {
  int start;  // unwrapped position
  int end;    // inclusive
  int sign;
};

}  // namespace

IntervalPartition decompose(const std::vector<int>& T, bool cyclic) {
  const int n = int(T.size());
  std::vector<int> nz;
  bool has_plus = false, has_minus = false;
  for (int i = 0; i < n; ++i)
    if (T[i] != 0) {
      nz.push_back(i);
      has_plus |= T[i] == 1;
      has_minus |= T[i] == -1;
    }
  if (nz.empty()) throw NoPhaseError("no phase label present");
  if (!(has_plus && has_minus)) throw SinglePhaseError("only one phase present");
  // Phase runs: maximal groups of consecutive nonzero labels with one sign.
  std::vector<Run> runs;
  const int m = int(nz.size());
  // Cyclic: begin at a nonzero label whose predecessor nonzero has the other sign.
  int first = 0;
  if (cyclic) {
    for (int k = 0; k < m; ++k)
      if (T[nz[(k + m - 1) % m]] != T[nz[k]]) { first = k; break; }
  }
  for (int step = 0; step < m; ++step) {
    int k = (first + step) % m;
    int pos = nz[k];
    if (cyclic && k < first) pos += n;
    if (!runs.empty() && runs.back().sign == T[nz[k]]) runs.back().end = pos;
    else runs.push_back({pos, pos, T[nz[k]]});
  }
  IntervalPartition w;
  w.size = n;
  w.cyclic = cyclic;
  const int R = int(runs.size());
  auto kind_of_run = [](int s) { return s == 1 ? AtomKind::plus : AtomKind::minus; };
  std::vector<Atom> atoms;
  for (int r = 0; r < R; ++r) {
    const Run& cur = runs[r];
    atoms.push_back({kind_of_run(cur.sign), cur.start, cur.end - cur.start + 1});
    bool has_next = cyclic || r + 1 < R;
    if (!has_next) break;
    int next_start = (r + 1 < R) ? runs[r + 1].start : runs[0].start + n;
    int gap = next_start - cur.end - 1;
    if (gap < 2) throw LabelError("opposite phases separated by fewer than two blocks");
    atoms.push_back({cur.sign == 1 ? AtomKind::iface_pm : AtomKind::iface_mp, cur.end + 1, gap});
  }
  if (cyclic) {
    // Anchor at the atom containing index 0 (or index n, equivalently).
    for (auto& a : atoms) {
      a.left %= n;
      if (a.left < 0) a.left += n;
    }
    size_t anchor = 0;
    for (size_t i = 0; i < atoms.size(); ++i) {
      int l = atoms[i].left, e = l + atoms[i].length - 1;
      if (l == 0 || (l > 0 && e >= n)) { anchor = i; break; }
    }
    std::rotate(atoms.begin(), atoms.begin() + anchor, atoms.end());
    if (atoms[0].left != 0) atoms[0].left -= n;
    for (size_t i = 1; i < atoms.size(); ++i) atoms[i].left = atoms[i - 1].left + atoms[i - 1].length;
  }
  w.atoms = atoms;
  return w;
}

IntervalPartition flip(const IntervalPartition& w) {
  IntervalPartition out = w;
  for (auto& a : out.atoms) a.kind = flip_kind(a.kind);
  return out;
}

std::string serialize_partition(const IntervalPartition& w) {
  std::ostringstream os;
  os << "# size=" << w.size << " cyclic=" << (w.cyclic ? 1 : 0) << "\n";
  os << "kind\tleft\tlength\n";
  for (auto& a : w.atoms) os << atom_kind_name(a.kind) << "\t" << a.left << "\t" << a.length << "\n";
  return os.str();
}

IntervalPartition parse_partition(const std::string& text) {
  IntervalPartition w;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      int cyc = 1;
      std::sscanf(line.c_str(), "# size=%d cyclic=%d", &w.size, &cyc);
      w.cyclic = cyc != 0;
      continue;
    }
    if (line.rfind("kind", 0) == 0) continue;
    std::istringstream ls(line);
    std::string kind;
    Atom a{};
    ls >> kind >> a.left >> a.length;
    a.kind = atom_kind_from_name(kind);
    w.atoms.push_back(a);
  }
  return w;
}

std::string pbc_class_name(PbcClass c) {
  switch (c) {
    case PbcClass::g: return "g";
    case PbcClass::X0: return "X0";
    case PbcClass::Xplus: return "Xplus";
    case PbcClass::Xminus: return "Xminus";
  }
  return "?";
}

PbcClass classify_pbc(const std::vector<int>& T) {
  bool plus = false, minus = false;
  for (int t : T) {
    plus |= t == 1;
    minus |= t == -1;
  }
  if (plus && minus) return PbcClass::g;
  if (plus) return PbcClass::Xplus;
  if (minus) return PbcClass::Xminus;
  return PbcClass::X0;
}

int Quadruple::length() const {
  int s = 0;
  for (auto& r : rows) s += r[0] + r[1] + r[2] + r[3];
  return s;
}

bool Quadruple::valid() const {
  if (rows.empty() || rows[0][0] < 3) return false;
  for (auto& r : rows)
    if (r[0] < 1 || r[1] < 2 || r[2] < 1 || r[3] < 2) return false;
  return true;
}

std::string quadruple_str(const Quadruple& u) {
  std::ostringstream os;
  os << "(";
  for (size_t l = 0; l < u.rows.size(); ++l) {
    if (l) os << ",";
    os << "(" << u.rows[l][0] << "," << u.rows[l][1] << "," << u.rows[l][2] << "," << u.rows[l][3] << ")";
  }
  os << ")";
  return os.str();
}

namespace {
bool is_mark(const Atom& a) { return a.kind == AtomKind::plus && a.length >= 3; }

Quadruple quadruple_of(const std::vector<Atom>& atoms, size_t begin, size_t count) {
  Quadruple u;
  for (size_t i = 0; i < count; i += 4) {
    std::array<int, 4> row{};
    for (int m = 0; m < 4; ++m) row[m] = atoms[begin + i + m].length;
    u.rows.push_back(row);
  }
  return u;
}
}  // namespace

RodSequence mark_rods(const IntervalPartition& w) {
  const auto& A = w.atoms;
  std::vector<size_t> marks;
  for (size_t i = 0; i < A.size(); ++i)
    if (is_mark(A[i])) marks.push_back(i);
  if (marks.empty()) throw NoAnchorError("no plus interval of length >= 3");
  RodSequence r;
  r.size = w.size;
  r.cyclic = w.cyclic;
  const size_t na = A.size();
  if (w.cyclic) {
    // Atoms in cyclic order starting at the first mark, positions unwrapped.
    std::vector<Atom> seq;
    for (size_t i = 0; i < na; ++i) seq.push_back(A[(marks[0] + i) % na]);
    for (size_t i = 1; i < na; ++i) seq[i].left = seq[i - 1].left + seq[i - 1].length;
    std::vector<Rod> rods;
    for (size_t k = 0; k < marks.size(); ++k) {
      size_t b = marks[k] - marks[0];
      size_t e = (k + 1 < marks.size()) ? marks[k + 1] - marks[0] : na;
      rods.push_back({quadruple_of(seq, b, e - b), seq[b].left});
    }
    // Start with the rod containing index 0 (mod size).
    const int n = w.size;
    size_t anchor = 0;
    for (size_t k = 0; k < rods.size(); ++k) {
      int l = ((rods[k].x % n) + n) % n;
      if (l == 0 || l + rods[k].u.length() - 1 >= n) { anchor = k; break; }
    }
    std::rotate(rods.begin(), rods.begin() + anchor, rods.end());
    int l0 = ((rods[0].x % n) + n) % n;
    rods[0].x = l0 == 0 ? 0 : l0 - n;
    for (size_t k = 1; k < rods.size(); ++k) rods[k].x = rods[k - 1].x + rods[k - 1].u.length();
    r.rods = rods;
  } else {
    r.head.assign(A.begin(), A.begin() + marks[0]);
    for (size_t k = 0; k < marks.size(); ++k) {
      size_t b = marks[k];
      size_t e = (k + 1 < marks.size()) ? marks[k + 1] : b + 4 * ((na - b) / 4);
      if (e <= b) break;
      r.rods.push_back({quadruple_of(A, b, e - b), A[b].left});
      if (k + 1 == marks.size()) r.tail.assign(A.begin() + e, A.end());
    }
  }
  return r;
}

IntervalPartition forget_marks(const RodSequence& r) {
  std::vector<Atom> atoms = r.head;
  for (auto& rod : r.rods) {
    int x = rod.x;
    for (auto& row : rod.u.rows)
      for (int m = 0; m < 4; ++m) {
        atoms.push_back({AtomKind(m), x, row[m]});
        x += row[m];
      }
  }
  for (auto& a : r.tail) atoms.push_back(a);
  IntervalPartition w;
  w.size = r.size;
  w.cyclic = r.cyclic;
  if (r.cyclic) {
    const int n = r.size;
    for (auto& a : atoms) a.left = ((a.left % n) + n) % n;
    size_t anchor = 0;
    for (size_t i = 0; i < atoms.size(); ++i) {
      int l = atoms[i].left;
      if (l == 0 || l + atoms[i].length - 1 >= n) { anchor = i; break; }
    }
    std::rotate(atoms.begin(), atoms.begin() + anchor, atoms.end());
    if (atoms[0].left != 0) atoms[0].left -= n;
    for (size_t i = 1; i < atoms.size(); ++i) atoms[i].left = atoms[i - 1].left + atoms[i - 1].length;
  }
  w.atoms = atoms;
  return w;
}

}  // namespace kac
