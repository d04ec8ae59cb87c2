#include "nets/net.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace nets {

const StarHom& Net::coverInc(int lo, int hi) const {
  auto it = inc.find({lo, hi});
  if (it == inc.end())
    throw std::out_of_range("Net: no inclusion for cover (" +
                            poset.label(lo) + "," + poset.label(hi) + ")");
  return it->second;
}

namespace {

// Elements in a topological order (lower before upper).
std::vector<int> topo_order(const Poset& p) {
  const int n = p.size();
  std::vector<int> indeg(n, 0), out;
  for (auto [lo, hi] : p.covers()) ++indeg[hi];
  std::queue<int> q;
  for (int i = 0; i < n; ++i)
    if (indeg[i] == 0) q.push(i);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    out.push_back(v);
    for (int w : p.upperCovers(v))
      if (--indeg[w] == 0) q.push(w);
  }
  return out;
}

}  // namespace

Report validate_net(const Net& n, double tol) {
  Report r;
  const Poset& p = n.poset;
  if (static_cast<int>(n.fibre.size()) != p.size()) {
    r.add("fibres_total", false, 0, 0, "one fibre per element required");
    return r;
  }
  bool coversOk = true;
  for (auto [lo, hi] : p.covers()) {
    auto it = n.inc.find({lo, hi});
    if (it == n.inc.end()) {
      r.add("inclusion_missing", false, 0, 0,
            "(" + p.label(lo) + "," + p.label(hi) + ")");
      coversOk = false;
      continue;
    }
    const StarHom& f = it->second;
    if (!(f.src == n.fibre[lo]) || !(f.tgt == n.fibre[hi])) {
      r.add("inclusion_mismatch", false, 0, 0,
            "(" + p.label(lo) + "," + p.label(hi) + ")");
      coversOk = false;
      continue;
    }
    Report hv = validate_hom(f);
    if (!hv.ok()) {
      r.add("inclusion_invalid", false, 0, 0,
            "(" + p.label(lo) + "," + p.label(hi) + "): " +
                hv.firstFailure()->name);
      coversOk = false;
    }
    if (!f.injective()) {
      r.add("NotMono", false, 0, 0,
            "(" + p.label(lo) + "," + p.label(hi) + ")");
      coversOk = false;
    }
    if (!f.unital()) {
      r.add("NotUnital", false, 0, 0,
            "(" + p.label(lo) + "," + p.label(hi) + ")");
      coversOk = false;
    }
  }
  if (coversOk) r.add("cover_inclusions", true);
  if (!coversOk) return r;

  // Path independence: for every comparable pair, the compositions through
  // all upper covers of the lower element must agree.
  auto order = topo_order(p);
  std::map<std::pair<int, int>, StarHom> derived;
  bool pathOk = true;
  double worst = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int o = *it;
    derived.emplace(std::make_pair(o, o), identity_hom(n.fibre[o]));
    for (int a : p.upSet(o)) {
      if (a == o) continue;
      bool have = false;
      for (int u : p.upperCovers(o)) {
        if (!p.leq(u, a)) continue;
        StarHom cand = compose_hom(derived.at({u, a}), n.coverInc(o, u));
        auto cur = derived.find({o, a});
        if (cur == derived.end()) {
          derived.emplace(std::make_pair(o, a), std::move(cand));
          have = true;
        } else {
          double d = hom_distance(cur->second, cand);
          worst = std::max(worst, d);
          if (d > tol) {
            r.add("NetRelationViolated", false, d, tol,
                  "(" + p.label(o) + "," + p.label(a) + ") via " + p.label(u));
            pathOk = false;
          }
        }
      }
      (void)have;
    }
  }
  r.add("net_relations", pathOk, worst, tol);
  return r;
}

StarHom derived_inclusion(const Net& n, int o, int a) {
  if (!n.poset.leq(o, a))
    throw std::invalid_argument("derived_inclusion: NotComparable");
  StarHom acc = identity_hom(n.fibre[o]);
  int v = o;
  while (v != a) {
    int next = -1;
    for (int u : n.poset.upperCovers(v))
      if (n.poset.leq(u, a)) {
        next = u;
        break;
      }
    if (next < 0) throw std::logic_error("derived_inclusion: no cover path");
    acc = compose_hom(n.coverInc(v, next), acc);
    v = next;
  }
  return acc;
}

bool is_bundle(const Net& n) {
  for (const auto& [e, f] : n.inc) {
    if (!(f.src.blocks == f.tgt.blocks)) {
      // An isomorphism requires a multiplicity permutation; quick check via
      // equal sorted block lists.
      auto a = f.src.blocks, b = f.tgt.blocks;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) return false;
    }
    Eigen::MatrixXi m = f.mult;
    if (m.rows() != m.cols()) return false;
    for (int i = 0; i < m.rows(); ++i)
      if (m.row(i).sum() != 1 || m.col(i).sum() != 1) return false;
  }
  return true;
}

namespace {

// Step operator across a spanning-tree edge, as hom fibre_v -> fibre_p.
StarHom tree_step(const Net& n, int v, int p) {
  if (n.poset.lt(v, p)) return derived_inclusion(n, v, p);
  return invert_iso(derived_inclusion(n, p, v));
}

// Hom fibre_v -> fibre_base along the spanning tree of the presentation.
std::vector<StarHom> tree_transport(const Net& n,
                                    const GroupPresentation& pres) {
  const int nn = n.poset.size();
  std::vector<StarHom> t(nn, identity_hom(n.fibre[pres.basePoint]));
  // Children must see the parent's transport first; resolve by repeated
  // sweeps over treeParent (tree depth passes).
  std::vector<bool> done(nn, false);
  done[pres.basePoint] = true;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int v = 0; v < nn; ++v) {
      if (done[v] || pres.treeParent[v] < 0) continue;
      int p = pres.treeParent[v];
      if (!done[p]) continue;
      t[v] = compose_hom(t[p], tree_step(n, v, p));
      done[v] = true;
      progress = true;
    }
  }
  for (int v = 0; v < nn; ++v)
    if (!done[v]) throw std::invalid_argument("holonomy: disconnected tree");
  return t;
}

}  // namespace

StarHom evaluate_loop(const Net& bundle, const EdgePath& loop) {
  if (!loop.valid()) throw std::invalid_argument("evaluate_loop: invalid path");
  StarHom acc = identity_hom(bundle.fibre[loop.vertices.front()]);
  for (size_t i = 0; i < loop.uppers.size(); ++i) {
    int a = loop.vertices[i], o = loop.uppers[i], b = loop.vertices[i + 1];
    if (a != o) acc = compose_hom(derived_inclusion(bundle, a, o), acc);
    if (o != b) acc = compose_hom(invert_iso(derived_inclusion(bundle, b, o)), acc);
  }
  return acc;
}

Mat evaluate_loop(const NetRep& rep, const EdgePath& loop) {
  if (!loop.valid()) throw std::invalid_argument("evaluate_loop: invalid path");
  Mat acc = Mat::Identity(rep.pi[loop.vertices.front()].dim(),
                          rep.pi[loop.vertices.front()].dim());
  for (size_t i = 0; i < loop.uppers.size(); ++i) {
    int a = loop.vertices[i], o = loop.uppers[i], b = loop.vertices[i + 1];
    if (a != o) acc = derived_operator(rep, a, o) * acc;
    if (o != b) acc = derived_operator(rep, b, o).adjoint() * acc;
  }
  return acc;
}

std::vector<StarHom> holonomy(const Net& bundle, int base,
                              const GroupPresentation& pres, double tol) {
  if (pres.basePoint != base)
    throw std::invalid_argument("holonomy: presentation based elsewhere");
  auto t = tree_transport(bundle, pres);
  std::vector<StarHom> gens;
  for (auto [lo, hi] : pres.generatorEdges) {
    // base -> lo (tree), ascend the generator edge, hi -> base (tree).
    StarHom g = compose_hom(derived_inclusion(bundle, lo, hi), invert_iso(t[lo]));
    gens.push_back(compose_hom(t[hi], g));
  }
  StarHom id = identity_hom(bundle.fibre[base]);
  for (const Word& rel : pres.relators) {
    StarHom acc = id;
    for (int l : rel)
      acc = compose_hom(l > 0 ? gens[l - 1] : invert_iso(gens[-l - 1]), acc);
    if (hom_distance(acc, id) > tol)
      throw std::runtime_error("RelatorViolated");
  }
  return gens;
}

std::vector<Mat> holonomy(const NetRep& rep, int base,
                          const GroupPresentation& pres, double tol) {
  if (pres.basePoint != base)
    throw std::invalid_argument("holonomy: presentation based elsewhere");
  const int nn = rep.net.poset.size();
  const int dim = rep.pi[base].dim();
  // Unitary pi_v-space -> pi_base-space along the spanning tree.
  std::vector<Mat> t(nn);
  std::vector<bool> done(nn, false);
  t[base] = Mat::Identity(dim, dim);
  done[base] = true;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int v = 0; v < nn; ++v) {
      if (done[v] || pres.treeParent[v] < 0) continue;
      int p = pres.treeParent[v];
      if (!done[p]) continue;
      Mat step = rep.net.poset.lt(v, p)
                     ? derived_operator(rep, v, p)
                     : Mat(derived_operator(rep, p, v).adjoint());
      t[v] = t[p] * step;
      done[v] = true;
      progress = true;
    }
  }
  std::vector<Mat> gens;
  for (auto [lo, hi] : pres.generatorEdges)
    gens.push_back(t[hi] * derived_operator(rep, lo, hi) * t[lo].adjoint());
  for (const Word& rel : pres.relators) {
    Mat acc = Mat::Identity(dim, dim);
    for (int l : rel)
      acc = (l > 0 ? gens[l - 1] : Mat(gens[-l - 1].adjoint())) * acc;
    if ((acc - Mat::Identity(dim, dim)).norm() > tol * dim)
      throw std::runtime_error("RelatorViolated");
  }
  return gens;
}

SymbolicNetRep canonical_symbolic_rep(const Net& n) {
  SymbolicNetRep out;
  out.net = n;
  out.pi.resize(n.poset.size());
  for (int o = 0; o < n.poset.size(); ++o)
    out.pi[o] = restrict_cm(cm_rep(n.fibre[o]), identity_hom(n.fibre[o]));
  for (auto [lo, hi] : n.poset.covers()) {
    RestrictedCMRep r2 = restrict_cm(cm_rep(n.fibre[hi]), n.coverInc(lo, hi));
    out.U[{lo, hi}] = solve_intertwiner_cm(out.pi[lo], r2);
  }
  return out;
}

Report validate_rep(const NetRep& r, double tol) {
  Report rep;
  const Poset& p = r.net.poset;
  bool structOk = true;
  for (int o = 0; o < p.size(); ++o)
    if (!(r.pi[o].hom.src == r.net.fibre[o])) {
      rep.add("rep_fibre_mismatch", false, 0, 0, p.label(o));
      structOk = false;
    }
  for (auto [lo, hi] : p.covers())
    if (!r.U.count({lo, hi})) {
      rep.add("operator_missing", false, 0, 0,
              "(" + p.label(lo) + "," + p.label(hi) + ")");
      structOk = false;
    }
  if (!structOk) return rep;
  rep.add("rep_structure", true);

  bool intertwineOk = true;
  double worstI = 0;
  for (auto [lo, hi] : p.covers()) {
    const Mat& u = r.U.at({lo, hi});
    const StarHom& j = r.net.coverInc(lo, hi);
    double d = (u * u.adjoint() - Mat::Identity(u.rows(), u.rows())).norm();
    if (d > tol * u.rows()) {
      rep.add("OperatorNotUnitary", false, d, tol,
              "(" + p.label(lo) + "," + p.label(hi) + ")");
      intertwineOk = false;
    }
    const FinDimAlgebra& alg = r.net.fibre[lo];
    for (int s = 0; s < alg.numBlocks(); ++s)
      for (int i = 0; i < alg.blocks[s]; ++i)
        for (int k = 0; k < alg.blocks[s]; ++k) {
          AlgElement e = matrix_unit(alg, s, i, k);
          Mat lhs = u * r.pi[lo](e);
          Mat rhs = r.pi[hi](j(e)) * u;
          double res = (lhs - rhs).norm();
          worstI = std::max(worstI, res);
          if (res > tol) {
            rep.add("IntertwineViolated", false, res, tol,
                    "(" + p.label(lo) + "," + p.label(hi) + ")");
            intertwineOk = false;
          }
        }
  }
  rep.add("intertwining", intertwineOk, worstI, tol);

  // Cocycle path independence of composed operators.
  auto order = topo_order(p);
  std::map<std::pair<int, int>, Mat> der;
  bool cocycleOk = true;
  double worstC = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int o = *it;
    der.emplace(std::make_pair(o, o),
                Mat::Identity(r.pi[o].dim(), r.pi[o].dim()));
    for (int a : p.upSet(o)) {
      if (a == o) continue;
      for (int u : p.upperCovers(o)) {
        if (!p.leq(u, a)) continue;
        Mat cand = der.at({u, a}) * r.U.at({o, u});
        auto cur = der.find({o, a});
        if (cur == der.end()) {
          der.emplace(std::make_pair(o, a), std::move(cand));
        } else {
          double d = (cur->second - cand).norm();
          worstC = std::max(worstC, d);
          if (d > tol) {
            rep.add("CocycleViolated", false, d, tol,
                    "(" + p.label(o) + "," + p.label(a) + ")");
            cocycleOk = false;
          }
        }
      }
    }
  }
  rep.add("cocycle", cocycleOk, worstC, tol);
  return rep;
}

Mat derived_operator(const NetRep& r, int o, int a) {
  if (!r.net.poset.leq(o, a))
    throw std::invalid_argument("derived_operator: NotComparable");
  Mat acc = Mat::Identity(r.pi[o].dim(), r.pi[o].dim());
  int v = o;
  while (v != a) {
    int next = -1;
    for (int u : r.net.poset.upperCovers(v))
      if (r.net.poset.leq(u, a)) {
        next = u;
        break;
      }
    if (next < 0) throw std::logic_error("derived_operator: no cover path");
    acc = r.U.at({v, next}) * acc;
    v = next;
  }
  return acc;
}

SymbolicUnitary derived_operator(const SymbolicNetRep& r, int o, int a) {
  if (!r.net.poset.leq(o, a))
    throw std::invalid_argument("derived_operator: NotComparable");
  SymbolicUnitary acc = identity_unitary();
  int v = o;
  while (v != a) {
    int next = -1;
    for (int u : r.net.poset.upperCovers(v))
      if (r.net.poset.leq(u, a)) {
        next = u;
        break;
      }
    if (next < 0) throw std::logic_error("derived_operator: no cover path");
    acc = concat(r.U.at({v, next}), acc);
    v = next;
  }
  return acc;
}

namespace {

double probe_residual(const SymbolicNetRep& r, int lo, int hi,
                      const SymbolicUnitary& u, const AlgElement& e,
                      const AlgElement& je, int probeDepth) {
  double worst = 0;
  for (const BasisIndex& b : probe_indices(r.pi[lo].ambient.alg, probeDepth)) {
    SparseVec v{{b, Cplx(1)}};
    SparseVec lhs = nets::apply(u, restricted_apply(r.pi[lo], e, v));
    SparseVec rhs = restricted_apply(r.pi[hi], je, nets::apply(u, v));
    worst = std::max(worst, vec_norm(vec_sub(lhs, rhs)));
  }
  return worst;
}

double probe_distance(const SymbolicNetRep& r, int o,
                      const SymbolicUnitary& u1, const SymbolicUnitary& u2,
                      int probeDepth) {
  double worst = 0;
  for (const BasisIndex& b : probe_indices(r.pi[o].ambient.alg, probeDepth)) {
    SparseVec v{{b, Cplx(1)}};
    worst = std::max(worst, vec_norm(vec_sub(nets::apply(u1, v), nets::apply(u2, v))));
  }
  return worst;
}

}  // namespace

Report validate_rep(const SymbolicNetRep& r, double tol, int probeDepth) {
  Report rep;
  const Poset& p = r.net.poset;
  bool structOk = true;
  for (int o = 0; o < p.size(); ++o)
    if (!(r.pi[o].hom.src == r.net.fibre[o])) {
      rep.add("rep_fibre_mismatch", false, 0, 0, p.label(o));
      structOk = false;
    }
  for (auto [lo, hi] : p.covers())
    if (!r.U.count({lo, hi})) {
      rep.add("operator_missing", false, 0, 0,
              "(" + p.label(lo) + "," + p.label(hi) + ")");
      structOk = false;
    }
  if (!structOk) return rep;
  rep.add("rep_structure", true);

  bool intertwineOk = true;
  double worstI = 0;
  for (auto [lo, hi] : p.covers()) {
    const SymbolicUnitary& u = r.U.at({lo, hi});
    const StarHom& j = r.net.coverInc(lo, hi);
    const FinDimAlgebra& alg = r.net.fibre[lo];
    for (int s = 0; s < alg.numBlocks(); ++s)
      for (int i = 0; i < alg.blocks[s]; ++i)
        for (int k = 0; k < alg.blocks[s]; ++k) {
          AlgElement e = matrix_unit(alg, s, i, k);
          double res = probe_residual(r, lo, hi, u, e, j(e), probeDepth);
          worstI = std::max(worstI, res);
          if (res > tol) {
            rep.add("IntertwineViolated", false, res, tol,
                    "(" + p.label(lo) + "," + p.label(hi) + ")");
            intertwineOk = false;
          }
        }
  }
  rep.add("intertwining", intertwineOk, worstI, tol);

  auto order = topo_order(p);
  std::map<std::pair<int, int>, SymbolicUnitary> der;
  bool cocycleOk = true;
  double worstC = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int o = *it;
    der.emplace(std::make_pair(o, o), identity_unitary());
    for (int a : p.upSet(o)) {
      if (a == o) continue;
      for (int u : p.upperCovers(o)) {
        if (!p.leq(u, a)) continue;
        SymbolicUnitary cand = concat(der.at({u, a}), r.U.at({o, u}));
        auto cur = der.find({o, a});
        if (cur == der.end()) {
          der.emplace(std::make_pair(o, a), std::move(cand));
        } else {
          double d = probe_distance(r, o, cur->second, cand, probeDepth);
          worstC = std::max(worstC, d);
          if (d > tol) {
            rep.add("CocycleViolated", false, d, tol,
                    "(" + p.label(o) + "," + p.label(a) + ")");
            cocycleOk = false;
          }
        }
      }
    }
  }
  rep.add("cocycle", cocycleOk, worstC, tol);
  return rep;
}

bool is_faithful(const NetRep& r) {
  for (const auto& f : r.pi)
    if (!f.hom.injective()) return false;
  return true;
}

bool is_faithful(const SymbolicNetRep& r) {
  for (const auto& f : r.pi)
    if (!f.hom.injective()) return false;
  return true;
}

Report validate_net_state(const NetState& s, double tol) {
  Report r;
  const Poset& p = s.net.poset;
  if (static_cast<int>(s.omega.size()) != p.size()) {
    r.add("states_total", false, 0, 0, "one state per element required");
    return r;
  }
  bool ok = true;
  double worst = 0;
  for (int o = 0; o < p.size(); ++o) {
    Report sv = validate_state(s.omega[o]);
    if (!sv.ok()) {
      r.add("state_invalid", false, 0, 0, p.label(o));
      ok = false;
    }
  }
  for (auto [lo, hi] : p.covers()) {
    State pulled = pull_state(s.net.coverInc(lo, hi), s.omega[hi]);
    double d = state_distance(pulled, s.omega[lo]);
    worst = std::max(worst, d);
    if (d > tol) {
      r.add("StateIncoherent", false, d, tol,
            "(" + p.label(lo) + "," + p.label(hi) + ")");
      ok = false;
    }
  }
  r.add("state_coherence", ok, worst, tol);
  return r;
}

NetState state_from_holonomy(const Net& bundle, int base, const State& omegaBase,
                             double tol) {
  GroupPresentation pres = pi1_presentation(bundle.poset, base);
  auto gens = holonomy(bundle, base, pres);
  for (const StarHom& g : gens) {
    double d = state_distance(pull_state(g, omegaBase), omegaBase);
    if (d > tol) throw std::runtime_error("NotHolonomyInvariant");
  }
  auto t = tree_transport(bundle, pres);
  NetState out{bundle, {}};
  out.omega.reserve(bundle.poset.size());
  for (int v = 0; v < bundle.poset.size(); ++v)
    out.omega.push_back(pull_state(t[v], omegaBase));
  return out;
}

Report check_causality(const Net& n, const Disjointness& d, double tol) {
  Report r;
  bool ok = true;
  double worst = 0;
  for (auto [x, y] : d.pairs) {
    for (int a = 0; a < n.poset.size(); ++a) {
      if (!n.poset.leq(x, a) || !n.poset.leq(y, a)) continue;
      StarHom j1 = derived_inclusion(n, x, a);
      StarHom j2 = derived_inclusion(n, y, a);
      const FinDimAlgebra& ax = n.fibre[x];
      const FinDimAlgebra& ay = n.fibre[y];
      double local = 0;
      for (int s = 0; s < ax.numBlocks(); ++s)
        for (int i = 0; i < ax.blocks[s]; ++i)
          for (int k = 0; k < ax.blocks[s]; ++k) {
            AlgElement e = j1(matrix_unit(ax, s, i, k));
            for (int t = 0; t < ay.numBlocks(); ++t)
              for (int u = 0; u < ay.blocks[t]; ++u)
                for (int w = 0; w < ay.blocks[t]; ++w) {
                  AlgElement f = j2(matrix_unit(ay, t, u, w));
                  local = std::max(local, (e * f - f * e).norm());
                }
          }
      worst = std::max(worst, local);
      if (local > tol) {
        r.add("CausalityViolated", false, local, tol,
              "(" + n.poset.label(x) + "," + n.poset.label(y) + ") in " +
                  n.poset.label(a));
        ok = false;
      }
    }
  }
  r.add("causality", ok, worst, tol);
  return r;
}

Report validate_covariant(const CovariantNet& cn, double tol) {
  Report r;
  r.merge(validate_action(cn.action));
  if (!r.ok()) return r;
  const int g = cn.action.order();
  const int n = cn.net.poset.size();
  if (static_cast<int>(cn.alpha.size()) != g) {
    r.add("CovarianceViolated", false, 0, 0, "alpha family size mismatch");
    return r;
  }
  bool ok = true;
  double worst = 0;
  for (int k = 0; k < g; ++k) {
    if (static_cast<int>(cn.alpha[k].size()) != n) {
      r.add("CovarianceViolated", false, 0, 0, "alpha family incomplete");
      return r;
    }
    for (int o = 0; o < n; ++o) {
      const StarHom& a = cn.alpha[k][o];
      if (!(a.src == cn.net.fibre[o]) ||
          !(a.tgt == cn.net.fibre[cn.action.act(k, o)]) ||
          !validate_hom(a).ok() || !a.injective()) {
        r.add("CovarianceViolated", false, 0, 0,
              "alpha[" + std::to_string(k) + "][" + cn.net.poset.label(o) +
                  "] not an isomorphism candidate");
        ok = false;
      }
    }
  }
  if (!ok) return r;
  // Identity element acts trivially.
  for (int o = 0; o < n; ++o) {
    double d = hom_distance(cn.alpha[cn.action.identity][o],
                            identity_hom(cn.net.fibre[o]));
    worst = std::max(worst, d);
    if (d > tol) {
      r.add("CovarianceViolated", false, d, tol, "identity action nontrivial");
      ok = false;
    }
  }
  // Group law alpha^h_{g o} alpha^g_o = alpha^{hg}_o.
  for (int h = 0; h < g && ok; ++h)
    for (int k = 0; k < g; ++k)
      for (int o = 0; o < n; ++o) {
        StarHom lhs = compose_hom(cn.alpha[h][cn.action.act(k, o)],
                                  cn.alpha[k][o]);
        double d = hom_distance(lhs, cn.alpha[cn.action.table[h][k]][o]);
        worst = std::max(worst, d);
        if (d > tol) {
          r.add("CovarianceViolated", false, d, tol,
                "group law at (" + std::to_string(h) + "," +
                    std::to_string(k) + "," + cn.net.poset.label(o) + ")");
          ok = false;
        }
      }
  // Covariance with the inclusions on covers.
  for (int k = 0; k < g && ok; ++k)
    for (auto [lo, hi] : cn.net.poset.covers()) {
      int glo = cn.action.act(k, lo), ghi = cn.action.act(k, hi);
      StarHom lhs = compose_hom(cn.alpha[k][hi], cn.net.coverInc(lo, hi));
      StarHom rhs = compose_hom(derived_inclusion(cn.net, glo, ghi),
                                cn.alpha[k][lo]);
      double d = hom_distance(lhs, rhs);
      worst = std::max(worst, d);
      if (d > tol) {
        r.add("CovarianceViolated", false, d, tol,
              "cover (" + cn.net.poset.label(lo) + "," +
                  cn.net.poset.label(hi) + ") under element " +
                  std::to_string(k));
        ok = false;
      }
    }
  r.add("covariance", ok, worst, tol);
  return r;
}

NetState invariant_net_state(const CovariantNet& cn, const NetState& s) {
  const int g = cn.action.order();
  NetState out{cn.net, {}};
  for (int o = 0; o < cn.net.poset.size(); ++o) {
    State avg{cn.net.fibre[o], {}};
    for (int b = 0; b < cn.net.fibre[o].numBlocks(); ++b)
      avg.rho.push_back(Mat::Zero(cn.net.fibre[o].blocks[b],
                                  cn.net.fibre[o].blocks[b]));
    for (int k = 0; k < g; ++k) {
      State pulled = pull_state(cn.alpha[k][o], s.omega[cn.action.act(k, o)]);
      for (size_t b = 0; b < avg.rho.size(); ++b)
        avg.rho[b] += pulled.rho[b] / static_cast<double>(g);
    }
    out.omega.push_back(std::move(avg));
  }
  return out;
}

}  // namespace nets
