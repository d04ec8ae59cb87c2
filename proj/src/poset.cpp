#include "nets/poset.hpp"

#include <algorithm>
#include <queue>

namespace nets {

Poset::Poset(std::vector<std::string> elements,
             std::vector<std::pair<int, int>> covers)
    : labels_(std::move(elements)), covers_(std::move(covers)) {
  if (labels_.empty()) throw std::invalid_argument("Poset: empty element set");
  const int n = size();
  for (int i = 0; i < n; ++i) {
    if (!index_.emplace(labels_[i], i).second)
      throw std::invalid_argument("Poset: duplicate label " + labels_[i]);
  }
  up_.assign(n, {});
  down_.assign(n, {});
  for (auto [lo, hi] : covers_) {
    if (lo < 0 || lo >= n || hi < 0 || hi >= n)
      throw std::invalid_argument("Poset: cover index out of range");
    if (lo == hi) throw std::invalid_argument("Poset: self-cover");
    up_[lo].push_back(hi);
    down_[hi].push_back(lo);
  }
  // Reflexive-transitive closure of the cover digraph. Also well defined on
  // cyclic input, so validate_poset can report instead of crash.
  reach_.assign(n, std::vector<bool>(n, false));
  for (int s = 0; s < n; ++s) {
    std::queue<int> q;
    q.push(s);
    reach_[s][s] = true;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : up_[v])
        if (!reach_[s][w]) {
          reach_[s][w] = true;
          q.push(w);
        }
    }
  }
}

int Poset::index(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end())
    throw std::out_of_range("Poset: unknown element " + label);
  return it->second;
}

std::optional<int> Poset::tryIndex(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> Poset::maximalElements() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (up_[i].empty()) out.push_back(i);
  return out;
}

std::vector<int> Poset::minimalElements() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (down_[i].empty()) out.push_back(i);
  return out;
}

std::vector<int> Poset::upSet(int o) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (reach_[o][i]) out.push_back(i);
  return out;
}

Report validate_poset(const Poset& p) {
  Report r;
  const int n = p.size();
  // Antisymmetry: no two distinct mutually reachable elements.
  bool acyclic = true;
  for (int i = 0; i < n && acyclic; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && p.leq(i, j) && p.leq(j, i)) {
        r.add("CycleDetected", false, 0, 0,
              p.label(i) + " and " + p.label(j) + " lie on a cycle");
        acyclic = false;
        break;
      }
  if (acyclic) r.add("acyclic", true);

  // Transitive reduction: no cover implied by a two-step chain.
  bool reduced = true;
  for (auto [lo, hi] : p.covers()) {
    for (int mid : p.upperCovers(lo)) {
      if (mid != hi && p.lt(mid, hi)) {
        r.add("RedundantCover", false, 0, 0,
              "(" + p.label(lo) + "," + p.label(hi) + ") implied via " +
                  p.label(mid));
        reduced = false;
      }
    }
  }
  if (reduced) r.add("transitively_reduced", true);
  return r;
}

bool is_upward_directed(const Poset& p, const std::vector<int>& subset) {
  for (size_t a = 0; a < subset.size(); ++a)
    for (size_t b = a + 1; b < subset.size(); ++b) {
      bool found = false;
      for (int c : subset)
        if (p.leq(subset[a], c) && p.leq(subset[b], c)) {
          found = true;
          break;
        }
      if (!found) return false;
    }
  return true;
}

Report validate_morphism(const PosetMorphism& f) {
  Report r;
  bool ok = true;
  if (static_cast<int>(f.map.size()) != f.source.size()) {
    r.add("map_total", false, 0, 0, "map size mismatch");
    return r;
  }
  for (int i = 0; i < f.source.size(); ++i)
    if (f.map[i] < 0 || f.map[i] >= f.target.size()) {
      r.add("map_range", false, 0, 0, "image out of range at " + f.source.label(i));
      return r;
    }
  for (int o = 0; o < f.source.size(); ++o)
    for (int a = 0; a < f.source.size(); ++a)
      if (f.source.leq(o, a) && !f.target.leq(f.map[o], f.map[a])) {
        r.add("NotOrderPreserving", false, 0, 0,
              f.source.label(o) + " <= " + f.source.label(a) +
                  " not preserved");
        ok = false;
      }
  if (ok) r.add("order_preserving", true);
  return r;
}

PosetMorphism compose_morphisms(const PosetMorphism& g, const PosetMorphism& f) {
  if (!(f.target == g.source))
    throw std::invalid_argument("compose_morphisms: middle posets differ");
  std::vector<int> map(f.map.size());
  for (size_t i = 0; i < f.map.size(); ++i) map[i] = g.map.at(f.map[i]);
  return {f.source, g.target, std::move(map)};
}

Report validate_disjointness(const Disjointness& d) {
  Report r;
  bool ok = true;
  // Downward stability: a_tilde ⟂ b and o <= a_tilde forces o ⟂ b.
  for (auto [x, y] : d.pairs) {
    for (int o = 0; o < d.poset.size(); ++o) {
      if (d.poset.leq(o, x) && !d.related(o, y)) {
        r.add("DownwardStabilityViolated", false, 0, 0,
              d.poset.label(o) + " <= " + d.poset.label(x) + " but (" +
                  d.poset.label(o) + "," + d.poset.label(y) + ") missing");
        ok = false;
      }
      if (d.poset.leq(o, y) && !d.related(o, x)) {
        r.add("DownwardStabilityViolated", false, 0, 0,
              d.poset.label(o) + " <= " + d.poset.label(y) + " but (" +
                  d.poset.label(o) + "," + d.poset.label(x) + ") missing");
        ok = false;
      }
    }
  }
  if (ok) r.add("downward_stable", true);
  return r;
}

Report validate_action(const GroupAction& a) {
  Report r;
  const int n = a.poset.size();
  const int g = a.order();
  if (static_cast<int>(a.table.size()) != g) {
    r.add("TableInconsistent", false, 0, 0, "table size mismatch");
    return r;
  }
  bool ok = true;
  for (int k = 0; k < g; ++k) {
    const auto& f = a.elements[k];
    if (!(f.source == a.poset) || !(f.target == a.poset) ||
        static_cast<int>(f.map.size()) != n) {
      r.add("NotAutomorphism", false, 0, 0, "element " + std::to_string(k) +
                                                " is not an endomap");
      return r;
    }
    // Bijective and order-reflecting in both directions.
    std::vector<bool> hit(n, false);
    for (int v : f.map) hit[v] = true;
    bool bij = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    bool orderIff = true;
    for (int o = 0; o < n && orderIff; ++o)
      for (int b = 0; b < n; ++b)
        if (a.poset.leq(o, b) != a.poset.leq(f.map[o], f.map[b])) {
          orderIff = false;
          break;
        }
    if (!bij || !orderIff) {
      r.add("NotAutomorphism", false, 0, 0,
            "element " + std::to_string(k) +
                (bij ? " breaks order" : " is not bijective"));
      ok = false;
    }
    if (a.disjointness) {
      const auto& d = *a.disjointness;
      for (int o = 0; o < n; ++o)
        for (int b = 0; b < n; ++b)
          if (d.related(o, b) != d.related(f.map[o], f.map[b])) {
            r.add("NotAutomorphism", false, 0, 0,
                  "element " + std::to_string(k) + " breaks disjointness");
            ok = false;
            o = n;
            break;
          }
    }
  }
  // Multiplication table respected: elements[g] o elements[h] == elements[g*h].
  for (int x = 0; x < g && ok; ++x) {
    if (static_cast<int>(a.table[x].size()) != g) {
      r.add("TableInconsistent", false);
      ok = false;
      break;
    }
    for (int y = 0; y < g; ++y) {
      int xy = a.table[x][y];
      if (xy < 0 || xy >= g) {
        r.add("TableInconsistent", false, 0, 0, "entry out of range");
        ok = false;
        break;
      }
      for (int o = 0; o < n; ++o)
        if (a.elements[x].map[a.elements[y].map[o]] != a.elements[xy].map[o]) {
          r.add("TableInconsistent", false, 0, 0,
                "composition mismatch at (" + std::to_string(x) + "," +
                    std::to_string(y) + ")");
          ok = false;
          o = n;
        }
      if (!ok) break;
    }
  }
  if (ok) r.add("group_action", true);
  return r;
}

PosetMorphism identity_morphism(const Poset& p) {
  std::vector<int> map(p.size());
  for (int i = 0; i < p.size(); ++i) map[i] = i;
  return {p, p, std::move(map)};
}

std::vector<std::vector<int>> cover_paths(const Poset& p, int o, int a) {
  std::vector<std::vector<int>> out;
  if (!p.leq(o, a)) return out;
  std::vector<int> cur{o};
  // Depth-first over ascending covers staying below a.
  auto rec = [&](auto&& self, int v) -> void {
    if (v == a) {
      out.push_back(cur);
      return;
    }
    for (int w : p.upperCovers(v))
      if (p.leq(w, a)) {
        cur.push_back(w);
        self(self, w);
        cur.pop_back();
      }
  };
  rec(rec, o);
  return out;
}

}  // namespace nets
