#include "nets/homotopy.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace nets {

bool EdgePath::valid() const {
  if (vertices.size() != uppers.size() + 1 || vertices.empty()) return false;
  for (size_t i = 0; i < uppers.size(); ++i) {
    if (!base.leq(vertices[i], uppers[i]) ||
        !base.leq(vertices[i + 1], uppers[i]))
      return false;
  }
  return true;
}

EdgePath EdgePath::reversed() const {
  EdgePath r{base, vertices, uppers};
  std::reverse(r.vertices.begin(), r.vertices.end());
  std::reverse(r.uppers.begin(), r.uppers.end());
  return r;
}

EdgePath compose_paths(const EdgePath& p, const EdgePath& q) {
  if (p.vertices.back() != q.vertices.front())
    throw std::invalid_argument("compose_paths: endpoints do not match");
  EdgePath r = p;
  r.vertices.insert(r.vertices.end(), q.vertices.begin() + 1,
                    q.vertices.end());
  r.uppers.insert(r.uppers.end(), q.uppers.begin(), q.uppers.end());
  return r;
}

namespace {

// Neighbours in the comparability graph, sorted by label for determinism.
std::vector<std::vector<int>> comparability_adjacency(const Poset& p) {
  const int n = p.size();
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && p.comparable(i, j)) adj[i].push_back(j);
  for (auto& nb : adj)
    std::sort(nb.begin(), nb.end(),
              [&](int a, int b) { return p.label(a) < p.label(b); });
  return adj;
}

}  // namespace

bool is_pathwise_connected(const Poset& p) {
  auto adj = comparability_adjacency(p);
  std::vector<bool> seen(p.size(), false);
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  int count = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        q.push(w);
      }
  }
  return count == p.size();
}

NerveSkeleton nerve_two_skeleton(const Poset& p) {
  NerveSkeleton sk;
  const int n = p.size();
  sk.vertices.resize(n);
  std::iota(sk.vertices.begin(), sk.vertices.end(), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (p.lt(i, j)) sk.edges.push_back({i, j});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (p.lt(i, j))
        for (int k = 0; k < n; ++k)
          if (p.lt(j, k)) sk.triangles.push_back({i, j, k});
  return sk;
}

namespace {

struct EdgeIndex {
  // (lower, upper) -> generator letter (nonzero) or 0 for tree edges
  std::map<std::pair<int, int>, int> gen;

  // letter for traversing from x to y (x, y strictly comparable)
  int letter(const Poset& p, int x, int y) const {
    if (p.lt(x, y)) {
      auto it = gen.find({x, y});
      return it == gen.end() ? 0 : it->second;
    }
    auto it = gen.find({y, x});
    return it == gen.end() ? 0 : -it->second;
  }
};

Word invert_word(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (int& x : r) x = -x;
  return r;
}

}  // namespace

Word free_reduce(Word w) {
  Word out;
  for (int x : w) {
    if (x == 0) continue;
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

GroupPresentation pi1_presentation(const Poset& p, int base) {
  if (!is_pathwise_connected(p))
    throw std::invalid_argument("pi1_presentation: poset is not connected");
  auto adj = comparability_adjacency(p);
  const int n = p.size();

  GroupPresentation pres;
  pres.basePoint = base;
  pres.treeParent.assign(n, -1);
  std::vector<bool> inTree(n, false);
  std::set<std::pair<int, int>> treeEdges;  // (lower, upper)
  std::queue<int> q;
  q.push(base);
  inTree[base] = true;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : adj[v])
      if (!inTree[w]) {
        inTree[w] = true;
        pres.treeParent[w] = v;
        q.push(w);
      }
  }
  for (int v = 0; v < n; ++v)
    if (pres.treeParent[v] >= 0) {
      int u = pres.treeParent[v];
      treeEdges.insert(p.lt(u, v) ? std::make_pair(u, v)
                                  : std::make_pair(v, u));
    }

  EdgeIndex ei;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!p.comparable(i, j)) continue;
      auto e = p.lt(i, j) ? std::make_pair(i, j) : std::make_pair(j, i);
      if (treeEdges.count(e)) continue;
      if (ei.gen.count(e)) continue;
      ei.gen[e] = ++pres.ngens;
      pres.generatorEdges.push_back(e);
    }

  // Triangle relators: for o < a < b the loop o->a->b->o is trivial.
  for (int o = 0; o < n; ++o)
    for (int a = 0; a < n; ++a)
      if (p.lt(o, a))
        for (int b = 0; b < n; ++b)
          if (p.lt(a, b)) {
            Word w;
            if (int l = ei.letter(p, o, a)) w.push_back(l);
            if (int l = ei.letter(p, a, b)) w.push_back(l);
            if (int l = ei.letter(p, b, o)) w.push_back(l);
            w = free_reduce(std::move(w));
            if (!w.empty()) pres.relators.push_back(std::move(w));
          }
  std::sort(pres.relators.begin(), pres.relators.end());
  pres.relators.erase(
      std::unique(pres.relators.begin(), pres.relators.end()),
      pres.relators.end());
  return pres;
}

Word path_word(const GroupPresentation& pres, const EdgePath& p) {
  // Reconstruct the edge lookup from generatorEdges.
  EdgeIndex ei;
  for (int g = 0; g < pres.ngens; ++g)
    ei.gen[pres.generatorEdges[g]] = g + 1;
  Word w;
  const Poset& ps = p.base;
  for (size_t i = 0; i < p.uppers.size(); ++i) {
    int a = p.vertices[i], o = p.uppers[i], b = p.vertices[i + 1];
    if (a != o)
      if (int l = ei.letter(ps, a, o)) w.push_back(l);
    if (o != b)
      if (int l = ei.letter(ps, o, b)) w.push_back(l);
  }
  return free_reduce(std::move(w));
}

std::vector<long long> smith_normal_form(
    std::vector<std::vector<long long>> m) {
  if (m.empty() || m[0].empty()) return {};
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  std::vector<long long> diag;
  int r0 = 0, c0 = 0;
  while (r0 < rows && c0 < cols) {
    // Find pivot of minimal nonzero magnitude.
    int pr = -1, pc = -1;
    long long best = 0;
    for (int i = r0; i < rows; ++i)
      for (int j = c0; j < cols; ++j)
        if (m[i][j] != 0 &&
            (pr < 0 || std::abs(m[i][j]) < best)) {
          best = std::abs(m[i][j]);
          pr = i;
          pc = j;
        }
    if (pr < 0) break;
    std::swap(m[r0], m[pr]);
    for (int i = 0; i < rows; ++i) std::swap(m[i][c0], m[i][pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = r0 + 1; i < rows; ++i)
        if (m[i][c0] != 0) {
          long long f = m[i][c0] / m[r0][c0];
          for (int j = c0; j < cols; ++j) m[i][j] -= f * m[r0][j];
          if (m[i][c0] != 0) {
            std::swap(m[r0], m[i]);
            clean = false;
          }
        }
      for (int j = c0 + 1; j < cols; ++j)
        if (m[r0][j] != 0) {
          long long f = m[r0][j] / m[r0][c0];
          for (int i = r0; i < rows; ++i) m[i][j] -= f * m[i][c0];
          if (m[r0][j] != 0) {
            for (int i = r0; i < rows; ++i) std::swap(m[i][c0], m[i][j]);
            clean = false;
          }
        }
      if (!clean) continue;
      // Divisibility condition: pivot must divide the remaining block.
      for (int i = r0 + 1; i < rows && clean; ++i)
        for (int j = c0 + 1; j < cols; ++j)
          if (m[i][j] % m[r0][c0] != 0) {
            for (int jj = c0; jj < cols; ++jj) m[r0][jj] += m[i][jj];
            clean = false;
            break;
          }
    }
    diag.push_back(std::abs(m[r0][c0]));
    ++r0;
    ++c0;
  }
  return diag;
}

H1Invariants h1_invariants(const GroupPresentation& pres) {
  // Tietze simplification keeps H1 and shrinks the relator matrix.
  auto simp = simplify_presentation(pres);
  const auto& sp = simp.pres;
  H1Invariants h;
  if (sp.ngens == 0) return h;
  if (sp.relators.empty()) {
    h.freeRank = sp.ngens;
    return h;
  }
  std::vector<std::vector<long long>> m(
      sp.relators.size(), std::vector<long long>(sp.ngens, 0));
  for (size_t i = 0; i < sp.relators.size(); ++i)
    for (int l : sp.relators[i]) m[i][std::abs(l) - 1] += (l > 0 ? 1 : -1);
  auto diag = smith_normal_form(std::move(m));
  int rank = 0;
  for (long long d : diag)
    if (d != 0) {
      ++rank;
      if (d > 1) h.torsion.push_back(d);
    }
  h.freeRank = sp.ngens - rank;
  return h;
}

namespace {

Word substitute(const Word& w, int gen, const Word& repl) {
  Word out;
  for (int l : w) {
    if (l == gen)
      out.insert(out.end(), repl.begin(), repl.end());
    else if (l == -gen) {
      Word inv = invert_word(repl);
      out.insert(out.end(), inv.begin(), inv.end());
    } else
      out.push_back(l);
  }
  return free_reduce(std::move(out));
}

Word cyclic_reduce(Word w) {
  w = free_reduce(std::move(w));
  while (w.size() >= 2 && w.front() == -w.back()) {
    w.erase(w.begin());
    w.pop_back();
    w = free_reduce(std::move(w));
  }
  return w;
}

}  // namespace

SimplifiedPresentation simplify_presentation(const GroupPresentation& pres) {
  // Work with live relators plus a substitution per eliminated generator.
  std::vector<Word> rels;
  for (auto& r : pres.relators) {
    Word w = cyclic_reduce(r);
    if (!w.empty()) rels.push_back(std::move(w));
  }
  std::vector<bool> alive(pres.ngens + 1, true);
  // Eliminated generator -> defining word (in terms of still-unresolved
  // generators at elimination time; resolved fully at the end).
  std::map<int, Word> defs;

  auto countOcc = [](const Word& w, int g) {
    int c = 0;
    for (int l : w)
      if (std::abs(l) == g) ++c;
    return c;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(rels.begin(), rels.end(),
              [](const Word& a, const Word& b) { return a.size() < b.size(); });
    rels.erase(std::unique(rels.begin(), rels.end()), rels.end());
    for (size_t ri = 0; ri < rels.size(); ++ri) {
      const Word r = rels[ri];
      int pick = 0;
      for (int l : r)
        if (countOcc(r, std::abs(l)) == 1) {
          pick = std::abs(l);
          break;
        }
      if (pick == 0) continue;
      // r == u * g^e * v (g occurs once); solve g.
      size_t pos = 0;
      while (std::abs(r[pos]) != pick) ++pos;
      Word u(r.begin(), r.begin() + pos), v(r.begin() + pos + 1, r.end());
      // u g v = 1 -> g = u^{-1} v^{-1}; for g^{-1}: g = v u.
      Word repl;
      if (r[pos] > 0) {
        repl = invert_word(u);
        Word vi = invert_word(v);
        repl.insert(repl.end(), vi.begin(), vi.end());
      } else {
        repl = v;
        repl.insert(repl.end(), u.begin(), u.end());
      }
      repl = free_reduce(std::move(repl));
      rels.erase(rels.begin() + ri);
      std::vector<Word> next;
      for (auto& w : rels) {
        Word nw = cyclic_reduce(substitute(w, pick, repl));
        if (!nw.empty()) next.push_back(std::move(nw));
      }
      rels = std::move(next);
      alive[pick] = false;
      defs[pick] = repl;
      changed = true;
      break;
    }
  }

  // Renumber surviving generators.
  std::vector<int> newId(pres.ngens + 1, 0);
  SimplifiedPresentation out;
  for (int g = 1; g <= pres.ngens; ++g)
    if (alive[g]) {
      newId[g] = ++out.pres.ngens;
      out.pres.generatorEdges.push_back(pres.generatorEdges[g - 1]);
    }
  out.pres.basePoint = pres.basePoint;
  out.pres.treeParent = pres.treeParent;

  // Resolve each eliminated generator down to surviving ones. Definitions
  // may reference later-eliminated generators, so iterate to a fixed point.
  std::vector<Word> resolved(pres.ngens + 1);
  for (int g = 1; g <= pres.ngens; ++g)
    resolved[g] = alive[g] ? Word{g} : defs[g];
  bool again = true;
  while (again) {
    again = false;
    for (int g = 1; g <= pres.ngens; ++g) {
      Word w;
      for (int l : resolved[g]) {
        int a = std::abs(l);
        if (alive[a]) {
          w.push_back(l);
        } else {
          Word d = (l > 0) ? resolved[a] : invert_word(resolved[a]);
          bool self = false;
          for (int x : d)
            if (std::abs(x) == a) self = true;
          if (self) throw std::logic_error("simplify: cyclic definition");
          w.insert(w.end(), d.begin(), d.end());
          again = true;
        }
      }
      resolved[g] = free_reduce(std::move(w));
    }
  }
  out.rewrite.resize(pres.ngens);
  for (int g = 1; g <= pres.ngens; ++g) {
    Word w;
    for (int l : resolved[g])
      w.push_back(l > 0 ? newId[l] : -newId[-l]);
    out.rewrite[g - 1] = std::move(w);
  }
  for (auto& r : rels) {
    Word w;
    for (int l : r) w.push_back(l > 0 ? newId[l] : -newId[-l]);
    out.pres.relators.push_back(free_reduce(std::move(w)));
  }
  return out;
}

namespace {

// Exponent vector lattice membership via integer elimination.
bool in_relator_lattice(const std::vector<Word>& relators, int ngens,
                        std::vector<long long> target) {
  std::vector<std::vector<long long>> rows;
  for (auto& r : relators) {
    std::vector<long long> v(ngens, 0);
    for (int l : r) v[std::abs(l) - 1] += (l > 0 ? 1 : -1);
    rows.push_back(std::move(v));
  }
  // Column-by-column Hermite-style elimination.
  int r0 = 0;
  for (int c = 0; c < ngens && r0 < static_cast<int>(rows.size()); ++c) {
    // Euclidean elimination within the column.
    while (true) {
      int p = -1;
      long long best = 0;
      for (int i = r0; i < static_cast<int>(rows.size()); ++i)
        if (rows[i][c] != 0 && (p < 0 || std::abs(rows[i][c]) < best)) {
          best = std::abs(rows[i][c]);
          p = i;
        }
      if (p < 0) break;
      std::swap(rows[r0], rows[p]);
      bool more = false;
      for (int i = r0 + 1; i < static_cast<int>(rows.size()); ++i)
        if (rows[i][c] != 0) {
          long long f = rows[i][c] / rows[r0][c];
          for (int j = 0; j < ngens; ++j) rows[i][j] -= f * rows[r0][j];
          if (rows[i][c] != 0) more = true;
        }
      if (!more) break;
    }
    if (rows[r0][c] != 0) {
      // Reduce the target against this pivot row.
      if (target[c] % rows[r0][c] == 0) {
        long long f = target[c] / rows[r0][c];
        for (int j = 0; j < ngens; ++j) target[j] -= f * rows[r0][j];
      }
      ++r0;
    }
  }
  for (long long x : target)
    if (x != 0) return false;
  return true;
}

// Dehn-style bounded search: non-length-increasing relator replacements.
bool reduces_to_identity(const std::vector<Word>& relators, Word start,
                         int budget) {
  start = free_reduce(std::move(start));
  if (start.empty()) return true;
  if (relators.empty()) return false;
  // All cyclic rotations of all relators and their inverses.
  std::vector<Word> variants;
  for (const auto& r0 : relators) {
    for (const Word& r : {r0, invert_word(r0)}) {
      for (size_t s = 0; s < r.size(); ++s) {
        Word rot(r.begin() + s, r.end());
        rot.insert(rot.end(), r.begin(), r.begin() + s);
        variants.push_back(rot);
      }
    }
  }
  std::sort(variants.begin(), variants.end());
  variants.erase(std::unique(variants.begin(), variants.end()),
                 variants.end());

  std::set<Word> seen;
  std::queue<Word> q;
  q.push(start);
  seen.insert(start);
  int steps = 0;
  while (!q.empty() && steps < budget) {
    Word w = q.front();
    q.pop();
    for (const Word& r : variants) {
      size_t half = (r.size() + 1) / 2;
      for (size_t pos = 0; pos + half <= w.size(); ++pos) {
        // Longest prefix of r matching w at pos.
        size_t m = 0;
        while (m < r.size() && pos + m < w.size() && w[pos + m] == r[m]) ++m;
        if (m < half) continue;
        // w = x * u * y with u = r[0..m); replace u by (r[m..))^{-1}.
        Word nw(w.begin(), w.begin() + pos);
        Word tail(r.begin() + m, r.end());
        Word ti = invert_word(tail);
        nw.insert(nw.end(), ti.begin(), ti.end());
        nw.insert(nw.end(), w.begin() + pos + m, w.end());
        nw = free_reduce(std::move(nw));
        if (nw.empty()) return true;
        ++steps;
        if (nw.size() <= w.size() && seen.insert(nw).second) q.push(nw);
      }
    }
  }
  return false;
}

}  // namespace

HomotopyDecision homotopy_reduce(const GroupPresentation& pres,
                                 const EdgePath& p1, const EdgePath& p2,
                                 int stepBudget) {
  if (p1.vertices.front() != p2.vertices.front() ||
      p1.vertices.back() != p2.vertices.back())
    throw std::invalid_argument("homotopy_reduce: DifferentEndpoints");
  Word w1 = path_word(pres, p1);
  Word w2 = path_word(pres, p2);
  Word w = w1;
  Word w2i = invert_word(w2);
  w.insert(w.end(), w2i.begin(), w2i.end());
  w = free_reduce(std::move(w));
  if (w.empty()) return HomotopyDecision::Homotopic;

  auto simp = simplify_presentation(pres);
  Word sw;
  for (int l : w) {
    const Word& r = simp.rewrite[std::abs(l) - 1];
    Word piece = (l > 0) ? r : invert_word(r);
    sw.insert(sw.end(), piece.begin(), piece.end());
  }
  sw = free_reduce(std::move(sw));
  if (sw.empty()) return HomotopyDecision::Homotopic;
  if (simp.pres.relators.empty()) return HomotopyDecision::NotHomotopic;

  std::vector<long long> expo(simp.pres.ngens, 0);
  for (int l : sw) expo[std::abs(l) - 1] += (l > 0 ? 1 : -1);
  if (!in_relator_lattice(simp.pres.relators, simp.pres.ngens, expo))
    return HomotopyDecision::NotHomotopic;

  if (reduces_to_identity(simp.pres.relators, sw, stepBudget))
    return HomotopyDecision::Homotopic;
  return HomotopyDecision::Undecided;
}

}  // namespace nets
