#include "nets/limits.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>
#include <stdexcept>

#include "nets/cylinder.hpp"

namespace nets {

namespace {

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

bool injective_map(const PosetMorphism& f) {
  std::vector<bool> hit(f.target.size(), false);
  for (int v : f.map) {
    if (hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Report validate_poset_system(const PosetSystem& s) {
  Report r;
  r.merge(validate_poset(s.index));
  if (static_cast<int>(s.stages.size()) != s.index.size()) {
    r.add("stages_total", false, 0, 0, "one stage poset per index element");
    return r;
  }
  std::vector<int> all(s.index.size());
  std::iota(all.begin(), all.end(), 0);
  r.add("index_directed", is_upward_directed(s.index, all));
  bool linksOk = true;
  for (auto [a, b] : s.index.covers()) {
    auto it = s.link.find({a, b});
    if (it == s.link.end()) {
      r.add("link_missing", false, 0, 0,
            s.index.label(a) + "->" + s.index.label(b));
      linksOk = false;
      continue;
    }
    const PosetMorphism& f = it->second;
    if (!(f.source == s.stages[a]) || !(f.target == s.stages[b]) ||
        !validate_morphism(f).ok() || !injective_map(f)) {
      r.add("IncoherentSystem", false, 0, 0,
            "bad link " + s.index.label(a) + "->" + s.index.label(b));
      linksOk = false;
    }
  }
  if (!linksOk) return r;
  r.add("links_valid", true);

  // Path independence of composed links across the index poset.
  auto order = topo_order(s.index);
  std::map<std::pair<int, int>, PosetMorphism> der;
  bool cohOk = true;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int a = *it;
    der.emplace(std::make_pair(a, a), identity_morphism(s.stages[a]));
    for (int c : s.index.upSet(a)) {
      if (c == a) continue;
      for (int b : s.index.upperCovers(a)) {
        if (!s.index.leq(b, c)) continue;
        PosetMorphism cand =
            compose_morphisms(der.at({b, c}), s.link.at({a, b}));
        auto cur = der.find({a, c});
        if (cur == der.end()) {
          der.emplace(std::make_pair(a, c), std::move(cand));
        } else if (cur->second.map != cand.map) {
          r.add("IncoherentSystem", false, 0, 0,
                "link paths disagree " + s.index.label(a) + "->" +
                    s.index.label(c));
          cohOk = false;
        }
      }
    }
  }
  r.add("links_coherent", cohOk);
  return r;
}

PosetMorphism derived_link(const PosetSystem& s, int a, int b) {
  if (!s.index.leq(a, b))
    throw std::invalid_argument("derived_link: NotComparable");
  PosetMorphism acc = identity_morphism(s.stages[a]);
  int v = a;
  while (v != b) {
    int next = -1;
    for (int u : s.index.upperCovers(v))
      if (s.index.leq(u, b)) {
        next = u;
        break;
      }
    if (next < 0) throw std::logic_error("derived_link: no cover path");
    acc = compose_morphisms(s.link.at({v, next}), acc);
    v = next;
  }
  return acc;
}

LimitPoset limit_poset(const PosetSystem& s) {
  Report v = validate_poset_system(s);
  if (!v.ok()) throw std::runtime_error("IncoherentSystem");
  const int nstages = s.index.size();
  std::vector<int> base(nstages, 0);
  int total = 0;
  for (int a = 0; a < nstages; ++a) {
    base[a] = total;
    total += s.stages[a].size();
  }
  UnionFind uf(total);
  for (auto [a, b] : s.index.covers()) {
    const PosetMorphism& f = s.link.at({a, b});
    for (int x = 0; x < s.stages[a].size(); ++x)
      uf.unite(base[a] + x, base[b] + f.map[x]);
  }
  // Classes in first-appearance order.
  std::vector<int> classId(total, -1);
  int nclasses = 0;
  for (int t = 0; t < total; ++t) {
    int root = uf.find(t);
    if (classId[root] < 0) classId[root] = nclasses++;
  }
  auto cls = [&](int a, int x) { return classId[uf.find(base[a] + x)]; };

  // Order between classes: witnessed inside any single stage.
  std::vector<std::vector<bool>> lt(nclasses,
                                    std::vector<bool>(nclasses, false));
  for (int a = 0; a < nstages; ++a)
    for (int x = 0; x < s.stages[a].size(); ++x)
      for (int y = 0; y < s.stages[a].size(); ++y)
        if (s.stages[a].lt(x, y)) lt[cls(a, x)][cls(a, y)] = true;
  // Transitive closure (witnesses at different stages can chain).
  for (int m = 0; m < nclasses; ++m)
    for (int i = 0; i < nclasses; ++i)
      if (lt[i][m])
        for (int j = 0; j < nclasses; ++j)
          if (lt[m][j]) lt[i][j] = true;
  for (int i = 0; i < nclasses; ++i)
    if (lt[i][i]) throw std::runtime_error("IncoherentSystem");

  std::vector<std::string> labels(nclasses);
  std::vector<std::map<int, int>> section(nclasses);
  for (int a = 0; a < nstages; ++a)
    for (int x = 0; x < s.stages[a].size(); ++x) {
      int c = cls(a, x);
      section[c][a] = x;
      if (labels[c].empty())
        labels[c] = "s" + std::to_string(a) + ":" + s.stages[a].label(x);
    }
  std::vector<std::pair<int, int>> covers;
  for (int o = 0; o < nclasses; ++o)
    for (int c = 0; c < nclasses; ++c) {
      if (!lt[o][c]) continue;
      bool direct = true;
      for (int m = 0; m < nclasses && direct; ++m)
        if (lt[o][m] && lt[m][c]) direct = false;
      if (direct) covers.push_back({o, c});
    }
  LimitPoset out;
  out.K = Poset(std::move(labels), std::move(covers));
  out.section = std::move(section);
  for (int a = 0; a < nstages; ++a) {
    std::vector<int> map(s.stages[a].size());
    for (int x = 0; x < s.stages[a].size(); ++x) map[x] = cls(a, x);
    out.F.push_back({s.stages[a], out.K, std::move(map)});
  }
  return out;
}

Report validate_net_system(const NetSystem& s, double tol) {
  Report r;
  r.merge(validate_poset_system(s.posets));
  if (!r.ok()) return r;
  if (static_cast<int>(s.nets.size()) != s.posets.index.size()) {
    r.add("nets_total", false, 0, 0, "one net per stage");
    return r;
  }
  for (size_t a = 0; a < s.nets.size(); ++a) {
    if (!(s.nets[a].poset == s.posets.stages[a])) {
      r.add("stage_poset_mismatch", false, 0, 0, s.posets.index.label(a));
      return r;
    }
    Report nv = validate_net(s.nets[a], tol);
    if (!nv.ok()) {
      r.add("stage_net_invalid", false, 0, 0,
            s.posets.index.label(a) + ": " + nv.firstFailure()->name);
      return r;
    }
  }
  bool ok = true;
  double worst = 0;
  for (auto [a, b] : s.posets.index.covers()) {
    auto it = s.psi.find({a, b});
    const PosetMorphism& f = s.posets.link.at({a, b});
    if (it == s.psi.end() ||
        static_cast<int>(it->second.size()) != s.posets.stages[a].size()) {
      r.add("psi_missing", false, 0, 0,
            s.posets.index.label(a) + "->" + s.posets.index.label(b));
      return r;
    }
    for (int o = 0; o < s.posets.stages[a].size(); ++o) {
      const StarHom& h = it->second[o];
      if (!(h.src == s.nets[a].fibre[o]) ||
          !(h.tgt == s.nets[b].fibre[f.map[o]]) || !validate_hom(h).ok()) {
        r.add("psi_invalid", false, 0, 0,
              s.posets.index.label(a) + "->" + s.posets.index.label(b) +
                  " at " + s.posets.stages[a].label(o));
        ok = false;
      }
    }
    // psi intertwines the stage inclusions on covers.
    for (auto [lo, hi] : s.posets.stages[a].covers()) {
      StarHom lhs = compose_hom(it->second[hi], s.nets[a].coverInc(lo, hi));
      StarHom rhs = compose_hom(
          derived_inclusion(s.nets[b], f.map[lo], f.map[hi]), it->second[lo]);
      double d = hom_distance(lhs, rhs);
      worst = std::max(worst, d);
      if (d > tol) {
        r.add("psi_incompatible", false, d, tol,
              s.posets.index.label(a) + "->" + s.posets.index.label(b) +
                  " cover (" + s.posets.stages[a].label(lo) + "," +
                  s.posets.stages[a].label(hi) + ")");
        ok = false;
      }
    }
  }
  if (!ok) return r;

  // Path independence of composed psi across the index poset.
  auto order = topo_order(s.posets.index);
  std::map<std::pair<int, int>, std::vector<StarHom>> der;
  bool cohOk = true;
  double worstC = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int a = *it;
    std::vector<StarHom> id;
    for (int o = 0; o < s.posets.stages[a].size(); ++o)
      id.push_back(identity_hom(s.nets[a].fibre[o]));
    der.emplace(std::make_pair(a, a), std::move(id));
    for (int c : s.posets.index.upSet(a)) {
      if (c == a) continue;
      for (int b : s.posets.index.upperCovers(a)) {
        if (!s.posets.index.leq(b, c)) continue;
        const PosetMorphism& f = s.posets.link.at({a, b});
        std::vector<StarHom> cand;
        for (int o = 0; o < s.posets.stages[a].size(); ++o)
          cand.push_back(
              compose_hom(der.at({b, c})[f.map[o]], s.psi.at({a, b})[o]));
        auto cur = der.find({a, c});
        if (cur == der.end()) {
          der.emplace(std::make_pair(a, c), std::move(cand));
        } else {
          for (size_t o = 0; o < cand.size(); ++o) {
            double d = hom_distance(cur->second[o], cand[o]);
            worstC = std::max(worstC, d);
            if (d > tol) cohOk = false;
          }
        }
      }
    }
  }
  r.add("psi_coherent", cohOk, worstC, tol);
  r.add("psi_compatible", true, worst, tol);
  return r;
}

std::vector<StarHom> derived_psi(const NetSystem& s, int a, int b) {
  if (!s.posets.index.leq(a, b))
    throw std::invalid_argument("derived_psi: NotComparable");
  std::vector<StarHom> acc;
  for (int o = 0; o < s.posets.stages[a].size(); ++o)
    acc.push_back(identity_hom(s.nets[a].fibre[o]));
  std::vector<int> pos(acc.size());
  std::iota(pos.begin(), pos.end(), 0);
  int v = a;
  while (v != b) {
    int next = -1;
    for (int u : s.posets.index.upperCovers(v))
      if (s.posets.index.leq(u, b)) {
        next = u;
        break;
      }
    if (next < 0) throw std::logic_error("derived_psi: no cover path");
    const PosetMorphism& f = s.posets.link.at({v, next});
    const auto& step = s.psi.at({v, next});
    for (size_t o = 0; o < acc.size(); ++o) {
      acc[o] = compose_hom(step[pos[o]], acc[o]);
      pos[o] = f.map[pos[o]];
    }
    v = next;
  }
  return acc;
}

LimitNet limit_net(const NetSystem& s) {
  auto maxima = s.posets.index.maximalElements();
  if (maxima.size() != 1) throw std::runtime_error("NoMaximumStage");
  int top = maxima.front();
  for (int a = 0; a < s.posets.index.size(); ++a)
    if (!s.posets.index.leq(a, top)) throw std::runtime_error("NoMaximumStage");
  LimitNet out;
  out.lp = limit_poset(s.posets);
  out.topStage = top;
  out.net = transport_net(s.nets[top], out.lp.F[top]);
  for (int a = 0; a < s.posets.index.size(); ++a)
    out.Psi.push_back(derived_psi(s, a, top));
  return out;
}

std::vector<double> limit_norm_profile(const NetSystem& s, int alpha, int o,
                                       const AlgElement& A,
                                       std::vector<int>* stagesOut) {
  std::vector<double> out;
  if (stagesOut) stagesOut->clear();
  for (int sigma : topo_order(s.posets.index)) {
    if (!s.posets.index.leq(alpha, sigma)) continue;
    out.push_back(derived_psi(s, alpha, sigma)[o](A).norm());
    if (stagesOut) stagesOut->push_back(sigma);
  }
  return out;
}

std::vector<StarHom> factor_through_limit(
    const NetSystem& s, const std::vector<std::vector<StarHom>>& targets,
    double tol) {
  auto maxima = s.posets.index.maximalElements();
  if (maxima.size() != 1) throw std::runtime_error("NoMaximumStage");
  int top = maxima.front();
  for (auto [a, b] : s.posets.index.covers()) {
    const PosetMorphism& f = s.posets.link.at({a, b});
    for (int o = 0; o < s.posets.stages[a].size(); ++o) {
      StarHom composed =
          compose_hom(targets.at(b).at(f.map[o]), s.psi.at({a, b})[o]);
      if (hom_distance(composed, targets.at(a).at(o)) > tol)
        throw std::runtime_error("IncompatibleFamily");
    }
  }
  return targets.at(top);
}

Report injectivity_transfer_check(const NetSystem& s,
                                  const std::vector<SymbolicNetRep>& witnesses,
                                  int samples, unsigned seed, double tol) {
  Report r;
  // Preconditions: monomorphic links and a faithful witness per stage.
  bool monos = true;
  for (const auto& [e, homs] : s.psi)
    for (const StarHom& h : homs)
      if (!h.injective()) monos = false;
  r.add("links_monomorphic", monos);
  bool faithful =
      static_cast<int>(witnesses.size()) == s.posets.index.size();
  for (const auto& w : witnesses)
    if (!is_faithful(w)) faithful = false;
  r.add("stage_witnesses_faithful", faithful);
  if (!monos || !faithful) {
    r.add("preconditions", false, 0, 0,
          "isometry not evaluated: preconditions failed");
    return r;
  }
  auto maxima = s.posets.index.maximalElements();
  if (maxima.size() != 1) {
    r.add("NoMaximumStage", false);
    return r;
  }
  int top = maxima.front();
  std::mt19937 rng(seed);
  double worst = 0;
  bool iso = true;
  for (int t = 0; t < samples; ++t) {
    int a = std::uniform_int_distribution<int>(
        0, s.posets.index.size() - 1)(rng);
    int o = std::uniform_int_distribution<int>(
        0, s.posets.stages[a].size() - 1)(rng);
    AlgElement A = random_element(s.nets[a].fibre[o], rng);
    double d = std::abs(derived_psi(s, a, top)[o](A).norm() - A.norm());
    worst = std::max(worst, d);
    if (d > tol) iso = false;
  }
  if (!iso)
    r.add("IsometryViolated", false, worst, tol);
  else
    r.add("theta_isometric", true, worst, tol);
  return r;
}

}  // namespace nets
