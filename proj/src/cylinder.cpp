#include "nets/cylinder.hpp"

#include <algorithm>
#include <stdexcept>

namespace nets {

Rat::Rat(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("Rat: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rat Rat::fromString(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(std::stoll(s), 1);
  return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

Rat Rat::operator+(const Rat& o) const {
  return Rat(num * o.den + o.num * den, den * o.den);
}

Rat Rat::operator-(const Rat& o) const {
  return Rat(num * o.den - o.num * den, den * o.den);
}

Rat Rat::mod1() const {
  long long m = num % den;
  if (m < 0) m += den;
  return Rat(m, den);
}

std::string Rat::str() const {
  if (num == 0) return "0";
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

MarkedCircle make_marked_circle(std::vector<Rat> markers,
                                std::vector<Rat> grid) {
  for (auto& m : markers) m = m.mod1();
  for (auto& g : grid) g = g.mod1();
  std::sort(markers.begin(), markers.end());
  std::sort(grid.begin(), grid.end());
  markers.erase(std::unique(markers.begin(), markers.end()), markers.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return {std::move(markers), std::move(grid)};
}

MarkedCircle uniform_grid_circle(std::vector<Rat> markers, int gridPoints) {
  std::vector<Rat> grid;
  grid.reserve(gridPoints);
  for (int t = 0; t < gridPoints; ++t) grid.push_back(Rat(t, gridPoints));
  MarkedCircle mc = make_marked_circle(std::move(markers), std::move(grid));
  Report r = validate_circle(mc);
  if (!r.ok()) throw std::runtime_error("GridTooCoarse");
  return mc;
}

Report validate_circle(const MarkedCircle& mc) {
  Report r;
  bool ok = !mc.markers.empty();
  for (size_t i = 0; ok && i < mc.markers.size(); ++i) {
    const Rat& m = mc.markers[i];
    if (m < Rat(0, 1) || !(m < Rat(1, 1))) ok = false;
    if (i > 0 && !(mc.markers[i - 1] < m)) ok = false;
  }
  r.add("markers_ordered", ok);
  if (mc.grid.empty() || !ok) return r;
  bool gridOk = true;
  for (const Rat& m : mc.markers)
    if (std::find(mc.grid.begin(), mc.grid.end(), m) == mc.grid.end())
      gridOk = false;
  // Refinement invariant: at least two grid points strictly inside every
  // consecutive marker gap.
  const int N = mc.N();
  for (int i = 0; i < N && gridOk; ++i) {
    const Rat& a = mc.markers[i];
    const Rat& b = mc.markers[(i + 1) % N];
    int interior = 0;
    for (const Rat& g : mc.grid)
      if (arc_contains_point(a, b, g)) ++interior;
    if (interior < 2) gridOk = false;
  }
  r.add("grid_refines_markers", gridOk);
  return r;
}

namespace {

// Clockwise offset from base to x, in [0,1).
Rat offset(const Rat& base, const Rat& x) { return (x - base).mod1(); }

}  // namespace

bool arc_contains_point(const Rat& u, const Rat& v, const Rat& x) {
  if (u == v) return !(offset(u, x) == Rat(0, 1));
  Rat X = offset(u, x), L = offset(u, v);
  return Rat(0, 1) < X && X < L;
}

bool arc_closure_contains_point(const Rat& u, const Rat& v, const Rat& x) {
  if (u == v) return true;
  Rat X = offset(u, x), L = offset(u, v);
  return X <= L;
}

bool arc_subset(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
  if (a == b) return c == d && a.mod1() == c.mod1();
  if (c == d) return !arc_contains_point(a, b, c);
  Rat A = offset(c, a), L = offset(a, b), D = offset(c, d);
  return A + L <= D;
}

bool arc_closure_subset(const Rat& a, const Rat& b, const Rat& c,
                        const Rat& d) {
  if (a == b) throw std::invalid_argument("arc_closure_subset: full closure");
  if (c == d) return !arc_closure_contains_point(a, b, c);
  Rat A = offset(c, a), L = offset(a, b), D = offset(c, d);
  return Rat(0, 1) < A && A + L < D;
}

CylinderPoset cylinder_poset(int N) {
  if (N < 2) throw std::invalid_argument("cylinder_poset: NTooSmall");
  std::vector<std::string> labels(N * N);
  std::vector<std::pair<int, int>> covers;
  auto idx = [N](int i, int l) { return (i - 1) * N + (l - 1); };
  for (int i = 1; i <= N; ++i)
    for (int l = 1; l <= N; ++l) {
      labels[idx(i, l)] =
          "(" + std::to_string(i) + "," + std::to_string(l) + ")";
      if (l < N) {
        covers.push_back({idx(i, l), idx(i, l + 1)});
        int j = (i == 1) ? N : i - 1;
        covers.push_back({idx(i, l), idx(j, l + 1)});
      }
    }
  return {N, Poset(std::move(labels), std::move(covers))};
}

namespace {

// Poset from a strict containment matrix via transitive reduction.
Poset hasse_from_order(std::vector<std::string> labels,
                       const std::vector<std::vector<bool>>& lt) {
  const int n = static_cast<int>(labels.size());
  std::vector<std::pair<int, int>> covers;
  for (int o = 0; o < n; ++o)
    for (int a = 0; a < n; ++a) {
      if (!lt[o][a]) continue;
      bool direct = true;
      for (int m = 0; m < n; ++m)
        if (lt[o][m] && lt[m][a]) {
          direct = false;
          break;
        }
      if (direct) covers.push_back({o, a});
    }
  return Poset(std::move(labels), std::move(covers));
}

}  // namespace

int interval_length(int N, int i, int k) {
  int r = ((k - i) % N + N) % N;
  return r == 0 ? N : r;
}

IntervalPosetPN interval_poset(const MarkedCircle& mc) {
  Report v = validate_circle(mc);
  if (!v.ok()) throw std::invalid_argument("interval_poset: bad circle");
  const int N = mc.N();
  std::vector<std::string> labels(N * N);
  std::vector<std::pair<Rat, Rat>> arcs(N * N);
  for (int i = 1; i <= N; ++i)
    for (int k = 1; k <= N; ++k) {
      int idx = (i - 1) * N + (k - 1);
      labels[idx] = "(x" + std::to_string(i) + ",x" + std::to_string(k) + ")";
      arcs[idx] = {mc.markers[i - 1], mc.markers[k - 1]};
    }
  std::vector<std::vector<bool>> lt(N * N, std::vector<bool>(N * N, false));
  for (int o = 0; o < N * N; ++o)
    for (int a = 0; a < N * N; ++a)
      if (o != a)
        lt[o][a] = arc_subset(arcs[o].first, arcs[o].second, arcs[a].first,
                              arcs[a].second);
  return {mc, hasse_from_order(std::move(labels), lt)};
}

PnCnIso iso_pn_cn(const IntervalPosetPN& pn) {
  const int N = pn.mc.N();
  CylinderPoset cn = cylinder_poset(N);
  std::vector<int> to(N * N), from(N * N);
  for (int i = 1; i <= N; ++i)
    for (int k = 1; k <= N; ++k)
      to[pn.index(i, k)] = cn.index(i, interval_length(N, i, k));
  for (int i = 1; i <= N; ++i)
    for (int l = 1; l <= N; ++l) {
      int k = (i + l - 1) % N + 1;
      from[cn.index(i, l)] = pn.index(i, k);
    }
  PnCnIso iso{pn, cn,
              {pn.poset, cn.poset, std::move(to)},
              {cn.poset, pn.poset, std::move(from)}};
  return iso;
}

bool in_IN(const Rat& u, const Rat& v, const MarkedCircle& mc) {
  for (const Rat& m : mc.markers)
    if (!arc_closure_contains_point(u, v, m)) return true;
  return false;
}

GridIntervalPoset grid_interval_poset(const MarkedCircle& mc) {
  if (mc.grid.empty())
    throw std::invalid_argument("grid_interval_poset: no grid");
  std::vector<std::string> labels;
  std::vector<std::pair<Rat, Rat>> arcs;
  for (const Rat& u : mc.grid)
    for (const Rat& v : mc.grid) {
      if (u == v) continue;
      if (!in_IN(u, v, mc)) continue;
      labels.push_back("(" + u.str() + "," + v.str() + ")");
      arcs.push_back({u, v});
    }
  const int n = static_cast<int>(arcs.size());
  std::vector<std::vector<bool>> lt(n, std::vector<bool>(n, false));
  for (int o = 0; o < n; ++o)
    for (int a = 0; a < n; ++a)
      if (o != a)
        lt[o][a] = arc_subset(arcs[o].first, arcs[o].second, arcs[a].first,
                              arcs[a].second);
  GridIntervalPoset gp{mc, hasse_from_order(std::move(labels), lt),
                       std::move(arcs)};
  return gp;
}

int GridIntervalPoset::find(const Rat& u, const Rat& v) const {
  for (size_t i = 0; i < arcs.size(); ++i)
    if (arcs[i].first == u.mod1() && arcs[i].second == v.mod1())
      return static_cast<int>(i);
  throw std::out_of_range("GridIntervalPoset: arc not present");
}

std::pair<int, int> quotient_rf(const Rat& u, const Rat& v,
                                const MarkedCircle& mc) {
  if (!in_IN(u, v, mc)) throw std::runtime_error("NotInIN");
  const int N = mc.N();
  std::vector<std::pair<int, int>> hits;
  for (int i = 1; i <= N; ++i)
    for (int k = 1; k <= N; ++k) {
      const Rat& xi = mc.markers[i - 1];
      const Rat& xk = mc.markers[k - 1];
      if (!arc_closure_subset(u, v, xi, xk)) continue;
      bool interiorCovered = true;
      for (const Rat& m : mc.markers)
        if (arc_contains_point(xi, xk, m) &&
            !arc_closure_contains_point(u, v, m)) {
          interiorCovered = false;
          break;
        }
      if (interiorCovered) hits.push_back({i, k});
    }
  if (hits.empty()) throw std::runtime_error("NoAdmissibleTarget");
  if (hits.size() > 1)
    throw std::logic_error("quotient_rf: target not unique");
  return hits.front();
}

SymbolicNetRep build_cylinder_rep(const Net& n, const CylinderPoset& cn) {
  Report v = validate_net(n);
  if (!v.ok())
    throw std::invalid_argument("build_cylinder_rep: " +
                                v.firstFailure()->name);
  const int N = cn.N;
  SymbolicNetRep out;
  out.net = n;
  out.pi.resize(N * N);
  std::vector<CMRep> ambient(N + 1);
  for (int i = 1; i <= N; ++i) {
    ambient[i] = cm_rep(n.fibre[cn.index(i, N)]);
    for (int l = 1; l <= N; ++l)
      out.pi[cn.index(i, l)] = restrict_cm(
          ambient[i], derived_inclusion(n, cn.index(i, l), cn.index(i, N)));
  }
  for (int i = 1; i <= N; ++i) {
    int j = (i == 1) ? N : i - 1;
    // Solve the column-change operator at the top cover and reuse it on
    // every lower cover of the same column pair.
    RestrictedCMRep r1 = out.pi[cn.index(i, N - 1)];
    RestrictedCMRep r2 = restrict_cm(
        ambient[j], n.coverInc(cn.index(i, N - 1), cn.index(j, N)));
    SymbolicUnitary vij = solve_intertwiner_cm(r1, r2);
    for (int l = 1; l < N; ++l) {
      out.U[{cn.index(i, l), cn.index(i, l + 1)}] = identity_unitary();
      out.U[{cn.index(i, l), cn.index(j, l + 1)}] = vij;
    }
  }
  return out;
}

Net transport_net(const Net& n, const PosetMorphism& iso) {
  const int sz = n.poset.size();
  if (iso.target.size() != sz)
    throw std::invalid_argument("transport_net: not a bijection");
  std::vector<int> inv(sz, -1);
  for (int i = 0; i < sz; ++i) {
    if (inv[iso.map[i]] >= 0)
      throw std::invalid_argument("transport_net: not a bijection");
    inv[iso.map[i]] = i;
  }
  Net out{iso.target, std::vector<FinDimAlgebra>(sz), {}};
  for (int i = 0; i < sz; ++i) out.fibre[iso.map[i]] = n.fibre[i];
  for (auto [lo, hi] : iso.target.covers())
    out.inc.emplace(std::make_pair(lo, hi),
                    derived_inclusion(n, inv[lo], inv[hi]));
  return out;
}

PnEmbedding embed_into_PN(const Net& n, const GridIntervalPoset& gp,
                          const IntervalPosetPN& pn) {
  const int N = pn.mc.N();
  const MarkedCircle& mc = pn.mc;
  PnEmbedding out;
  out.maxElement.assign(N * N, -1);
  // Maximum of the truncated directed family inside each marker interval:
  // first grid point strictly after x_i, last strictly before x_k.
  for (int i = 1; i <= N; ++i)
    for (int k = 1; k <= N; ++k) {
      const Rat& xi = mc.markers[i - 1];
      const Rat& xk = mc.markers[k - 1];
      Rat D = (xk - xi).mod1();
      if (D == Rat(0, 1)) D = Rat(1, 1);
      const Rat* best_u = nullptr;
      const Rat* best_v = nullptr;
      Rat off_u(2, 1), off_v(-1, 1);
      for (const Rat& g : mc.grid) {
        Rat o = (g - xi).mod1();
        if (Rat(0, 1) < o && o < D) {
          if (o < off_u) {
            off_u = o;
            best_u = &g;
          }
          if (off_v < o) {
            off_v = o;
            best_v = &g;
          }
        }
      }
      if (!best_u || !best_v || *best_u == *best_v)
        throw std::runtime_error("GridTooCoarse");
      out.maxElement[pn.index(i, k)] = gp.find(*best_u, *best_v);
    }
  out.pnNet.poset = pn.poset;
  out.pnNet.fibre.resize(N * N);
  for (int e = 0; e < N * N; ++e)
    out.pnNet.fibre[e] = n.fibre[out.maxElement[e]];
  for (auto [lo, hi] : pn.poset.covers())
    out.pnNet.inc.emplace(
        std::make_pair(lo, hi),
        derived_inclusion(n, out.maxElement[lo], out.maxElement[hi]));

  std::vector<int> rfmap(gp.poset.size());
  out.eta.reserve(gp.poset.size());
  for (int o = 0; o < gp.poset.size(); ++o) {
    auto [i, k] = quotient_rf(gp.arcs[o].first, gp.arcs[o].second, mc);
    rfmap[o] = pn.index(i, k);
    out.eta.push_back(derived_inclusion(n, o, out.maxElement[rfmap[o]]));
  }
  out.rf = {gp.poset, pn.poset, std::move(rfmap)};
  return out;
}

}  // namespace nets
