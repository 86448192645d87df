#pragma once
#include <array>
#include <string>
#include <vector>

#include "kac/params.hpp"

namespace kac {

struct LabelError : Error {
  using Error::Error;
};

// eta over len_minus blocks of the spin window.
std::vector<int> eta_labels(const Spins& sigma, const ModelParams& p);

// Theta_i from (theta_{i-1}, theta_i, theta_{i+1}).
inline int big_theta_of(int a, int b, int c) { return (a == b && b == c) ? b : 0; }

struct PhaseLabels {
  std::vector<int> eta;
  std::vector<int> theta;
  std::vector<int> big_theta;
  // theta index of big_theta[0]: 0 on a torus, 1 on an open window.
  int origin = 0;
};

PhaseLabels theta_and_Theta(const std::vector<int>& eta, const ModelParams& p, bool cyclic);
PhaseLabels phase_labels(const Spins& sigma, const ModelParams& p, bool cyclic);

enum class AtomKind { plus = 0, iface_pm = 1, minus = 2, iface_mp = 3 };
std::string atom_kind_name(AtomKind k);
AtomKind atom_kind_from_name(const std::string& s);
inline AtomKind next_kind(AtomKind k) { return AtomKind((int(k) + 1) % 4); }
inline AtomKind flip_kind(AtomKind k) { return AtomKind((int(k) + 2) % 4); }
inline int min_atom_length(AtomKind k) { return (int(k) % 2 == 0) ? 1 : 2; }

struct Atom {
  AtomKind kind;
  int left;
  int length;
  bool operator==(const Atom& o) const {
    return kind == o.kind && left == o.left && length == o.length;
  }
};

// Cyclic partitions list atoms starting with the one containing index 0;
// its left endpoint may be negative. Linear partitions cover the span from
// the first to the last nonzero label.
struct IntervalPartition {
  std::vector<Atom> atoms;
  int size = 0;
  bool cyclic = true;
  bool operator==(const IntervalPartition& o) const {
    return atoms == o.atoms && size == o.size && cyclic == o.cyclic;
  }
};

IntervalPartition decompose(const std::vector<int>& big_theta, bool cyclic = true);
IntervalPartition flip(const IntervalPartition& w);
std::string serialize_partition(const IntervalPartition& w);
IntervalPartition parse_partition(const std::string& text);

enum class PbcClass { g, X0, Xplus, Xminus };
std::string pbc_class_name(PbcClass c);
PbcClass classify_pbc(const std::vector<int>& big_theta);

struct Quadruple {
  std::vector<std::array<int, 4>> rows;
  int length() const;
  int k() const { return int(rows.size()); }
  bool valid() const;
  bool operator==(const Quadruple& o) const { return rows == o.rows; }
  bool operator<(const Quadruple& o) const { return rows < o.rows; }
};
std::string quadruple_str(const Quadruple& u);

struct Rod {
  Quadruple u;
  int x;
};

// Cyclic sequences start with the rod containing index 0. Linear
// sequences keep the atoms before the first and after the last mark.
struct RodSequence {
  std::vector<Rod> rods;
  std::vector<Atom> head;
  std::vector<Atom> tail;
  int size = 0;
  bool cyclic = true;
};

RodSequence mark_rods(const IntervalPartition& w);
// Forgets the marks (the phi map).
IntervalPartition forget_marks(const RodSequence& r);

}  // namespace kac
