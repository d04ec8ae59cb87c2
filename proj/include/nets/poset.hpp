#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nets/report.hpp"

namespace nets {

// Finite poset stored by its Hasse data: element labels plus the cover
// relation (lower, upper). The full order is the reflexive-transitive
// closure of the cover digraph, computed once at construction.
class Poset {
 public:
  Poset(std::vector<std::string> elements,
        std::vector<std::pair<int, int>> covers);
  // Trivial one-point poset, so aggregates holding a Poset can be built
  // before their real value is known.
  Poset() : Poset({"*"}, {}) {}

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  int index(const std::string& label) const;
  std::optional<int> tryIndex(const std::string& label) const;

  const std::vector<std::pair<int, int>>& covers() const { return covers_; }

  // o <= a in the derived order.
  bool leq(int o, int a) const { return reach_[o][a]; }
  bool lt(int o, int a) const { return o != a && reach_[o][a]; }
  bool comparable(int o, int a) const { return reach_[o][a] || reach_[a][o]; }

  const std::vector<int>& upperCovers(int o) const { return up_[o]; }
  const std::vector<int>& lowerCovers(int o) const { return down_[o]; }

  std::vector<int> maximalElements() const;
  std::vector<int> minimalElements() const;

  // All elements a with o <= a, in index order.
  std::vector<int> upSet(int o) const;

  bool operator==(const Poset& other) const {
    return labels_ == other.labels_ && covers_ == other.covers_;
  }

 private:
  std::vector<std::string> labels_;
  std::map<std::string, int> index_;
  std::vector<std::pair<int, int>> covers_;
  std::vector<std::vector<int>> up_, down_;
  std::vector<std::vector<bool>> reach_;
};

struct PosetMorphism {
  Poset source;
  Poset target;
  std::vector<int> map;  // source index -> target index

  int operator()(int i) const { return map.at(i); }
};

// Symmetric relation on a poset; stores normalized (min,max) pairs.
struct Disjointness {
  Poset poset;
  std::set<std::pair<int, int>> pairs;

  bool related(int a, int b) const {
    return pairs.count({std::min(a, b), std::max(a, b)}) > 0;
  }
  void relate(int a, int b) { pairs.insert({std::min(a, b), std::max(a, b)}); }
};

// Finite group acting on a poset. One morphism per group element, plus the
// multiplication table (table[g][h] = index of g*h).
struct GroupAction {
  Poset poset;
  std::vector<PosetMorphism> elements;
  std::vector<std::vector<int>> table;
  int identity = 0;
  std::optional<Disjointness> disjointness;

  int act(int g, int o) const { return elements.at(g).map.at(o); }
  int order() const { return static_cast<int>(elements.size()); }
};

Report validate_poset(const Poset& p);

// True iff every pair in `subset` has a common upper bound inside `subset`.
bool is_upward_directed(const Poset& p, const std::vector<int>& subset);

Report validate_morphism(const PosetMorphism& f);
PosetMorphism compose_morphisms(const PosetMorphism& g, const PosetMorphism& f);

Report validate_disjointness(const Disjointness& d);
Report validate_action(const GroupAction& a);

PosetMorphism identity_morphism(const Poset& p);

// All cover paths o = v_0 -> v_1 -> ... -> v_k = a ascending through the
// Hasse diagram. Empty when o is not <= a; the single path {o} when o == a.
std::vector<std::vector<int>> cover_paths(const Poset& p, int o, int a);

}  // namespace nets
