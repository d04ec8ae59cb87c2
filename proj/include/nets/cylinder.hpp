#pragma once

#include <numeric>
#include <string>

#include "nets/net.hpp"

namespace nets {

// Exact rational in lowest terms; circle points are rationals in [0,1)
// measured in turns, increasing = clockwise.
struct Rat {
  long long num = 0;
  long long den = 1;

  Rat() = default;
  Rat(long long n, long long d);
  static Rat fromString(const std::string& s);  // "p/q" or "p"

  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  auto operator<=>(const Rat& o) const {
    return num * o.den <=> o.num * den;
  }
  bool operator==(const Rat& o) const = default;

  Rat mod1() const;  // representative in [0,1)
  std::string str() const;
};

// N marker points on the circle plus an optional finer grid.
struct MarkedCircle {
  std::vector<Rat> markers;
  std::vector<Rat> grid;

  int N() const { return static_cast<int>(markers.size()); }
};

MarkedCircle make_marked_circle(std::vector<Rat> markers,
                                std::vector<Rat> grid = {});
// Markers plus a uniform k-point grid; throws GridTooCoarse if the grid
// misses a marker or leaves fewer than two interior points in some gap.
MarkedCircle uniform_grid_circle(std::vector<Rat> markers, int gridPoints);

Report validate_circle(const MarkedCircle& mc);

// Open clockwise arc from u to v; u == v means the circle minus the point.
bool arc_contains_point(const Rat& u, const Rat& v, const Rat& x);
bool arc_closure_contains_point(const Rat& u, const Rat& v, const Rat& x);
// (a,b) as a subset of (c,d).
bool arc_subset(const Rat& a, const Rat& b, const Rat& c, const Rat& d);
// cl((a,b)) as a subset of (c,d); requires a != b.
bool arc_closure_subset(const Rat& a, const Rat& b, const Rat& c,
                        const Rat& d);

// The N x N cylinder: elements (i,l), i,l in 1..N, with covers
// (i,l) < (i,l+1) and (i,l) < ((i-1)_N, l+1).
struct CylinderPoset {
  int N = 0;
  Poset poset;

  int index(int i, int l) const { return (i - 1) * N + (l - 1); }
  std::pair<int, int> coords(int idx) const {
    return {idx / N + 1, idx % N + 1};
  }
};

CylinderPoset cylinder_poset(int N);

// Poset of the N*N marker intervals (x_i, x_k), ordered by arc inclusion.
struct IntervalPosetPN {
  MarkedCircle mc;
  Poset poset;

  int index(int i, int k) const { return (i - 1) * mc.N() + (k - 1); }
  std::pair<int, int> coords(int idx) const {
    return {idx / mc.N() + 1, idx % mc.N() + 1};
  }
};

IntervalPosetPN interval_poset(const MarkedCircle& mc);

// Interval length: the number of minimal intervals it contains, (k-i)_N
// with (0)_N = N.
int interval_length(int N, int i, int k);

// Order isomorphism (x_i,x_k) -> (i, length), with inverse.
struct PnCnIso {
  IntervalPosetPN pn;
  CylinderPoset cn;
  PosetMorphism to;    // P_N -> C_N
  PosetMorphism from;  // C_N -> P_N
};

PnCnIso iso_pn_cn(const IntervalPosetPN& pn);

// Poset of open grid arcs whose closure misses at least one marker.
struct GridIntervalPoset {
  MarkedCircle mc;
  Poset poset;
  std::vector<std::pair<Rat, Rat>> arcs;  // per element (u, v)

  int find(const Rat& u, const Rat& v) const;
};

GridIntervalPoset grid_interval_poset(const MarkedCircle& mc);

// Membership in the marker-avoiding family: some marker outside cl(o).
bool in_IN(const Rat& u, const Rat& v, const MarkedCircle& mc);

// The unique marker interval (x_i, x_k) whose open arc contains cl(o) while
// all of its interior markers lie in cl(o). Returns 1-based (i, k).
// Throws NotInIN / NoAdmissibleTarget.
std::pair<int, int> quotient_rf(const Rat& u, const Rat& v,
                                const MarkedCircle& mc);

// Faithful symbolic representation of a net over C_N: column reps restrict
// the canonical rep of the column's top fibre, same-column cover operators
// are trivial, cross-column operators are solved once at the top row and
// reused down the column.
SymbolicNetRep build_cylinder_rep(const Net& n, const CylinderPoset& cn);

// Pushforward of a net along a poset isomorphism (relabeling only).
Net transport_net(const Net& n, const PosetMorphism& iso);

// Embedding of a grid net into a net over P_N: each interval fibre is the
// fibre at the maximum grid arc strictly inside it, inclusions are derived,
// and eta carries each grid fibre into its quotient-image fibre.
struct PnEmbedding {
  Net pnNet;             // over IntervalPosetPN.poset
  PosetMorphism rf;      // grid poset -> P_N poset
  std::vector<StarHom> eta;  // grid fibre -> pn fibre at rf(o)
  std::vector<int> maxElement;  // per P_N element, grid index of the maximum
};

PnEmbedding embed_into_PN(const Net& n, const GridIntervalPoset& gp,
                          const IntervalPosetPN& pn);

}  // namespace nets
