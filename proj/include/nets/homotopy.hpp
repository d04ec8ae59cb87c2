#pragma once

#include <array>
#include <vector>

#include "nets/poset.hpp"

namespace nets {

// Edge path a_1, o_1, a_2, o_2, ..., a_{n+1} with a_i, a_{i+1} <= o_i.
struct EdgePath {
  Poset base;
  std::vector<int> vertices;  // a_1 .. a_{n+1}
  std::vector<int> uppers;    // o_1 .. o_n

  bool valid() const;
  EdgePath reversed() const;
};

EdgePath compose_paths(const EdgePath& p, const EdgePath& q);

struct NerveSkeleton {
  std::vector<int> vertices;
  std::vector<std::pair<int, int>> edges;          // strict comparable pairs o < a
  std::vector<std::array<int, 3>> triangles;       // strict chains o < a < b
};

// Group presentation from the comparability graph modulo nerve triangles.
// Words are sequences of nonzero letters: +g means generator g-1, -g its
// inverse.
using Word = std::vector<int>;

struct GroupPresentation {
  int ngens = 0;
  std::vector<Word> relators;
  // generator id -> comparability edge (lower, upper), oriented upward
  std::vector<std::pair<int, int>> generatorEdges;
  // spanning tree of the comparability graph: parent[v], -1 at the base
  std::vector<int> treeParent;
  int basePoint = 0;
};

struct H1Invariants {
  std::vector<long long> torsion;  // invariant factors > 1
  int freeRank = 0;
};

enum class HomotopyDecision { Homotopic, NotHomotopic, Undecided };

bool is_pathwise_connected(const Poset& p);

NerveSkeleton nerve_two_skeleton(const Poset& p);

GroupPresentation pi1_presentation(const Poset& p, int base);

H1Invariants h1_invariants(const GroupPresentation& pres);

// Tietze simplification: repeatedly eliminates a generator occurring exactly
// once in some relator. Returns the simplified presentation plus, for each
// original generator, its word in the surviving generators.
struct SimplifiedPresentation {
  GroupPresentation pres;
  std::vector<Word> rewrite;  // original generator -> word in new generators
};
SimplifiedPresentation simplify_presentation(const GroupPresentation& pres);

// Word of an edge path in the generators of `pres` (tree edges contribute
// nothing). The path need not start at the base point.
Word path_word(const GroupPresentation& pres, const EdgePath& p);

Word free_reduce(Word w);

// Decide whether two edge paths with the same endpoints are homotopic.
HomotopyDecision homotopy_reduce(const GroupPresentation& pres,
                                 const EdgePath& p1, const EdgePath& p2,
                                 int stepBudget = 20000);

// Smith normal form over the integers. Returns the diagonal entries
// d_1 | d_2 | ... (nonzero ones only).
std::vector<long long> smith_normal_form(std::vector<std::vector<long long>> m);

}  // namespace nets
