#pragma once

#include "nets/net.hpp"

namespace nets {

// Directed system of posets: index poset Lambda, one stage poset per index
// element, injective linking morphisms on index covers (longer links are
// derived by composition and must be path independent).
struct PosetSystem {
  Poset index;
  std::vector<Poset> stages;
  std::map<std::pair<int, int>, PosetMorphism> link;
};

Report validate_poset_system(const PosetSystem& s);

// Linking morphism for an arbitrary comparable index pair.
PosetMorphism derived_link(const PosetSystem& s, int a, int b);

// Colimit of the stage posets at truncation: classes of stage elements
// identified along the links.
struct LimitPoset {
  Poset K;
  std::vector<PosetMorphism> F;           // stage alpha -> K
  std::vector<std::map<int, int>> section;  // K element -> {stage: preimage}
};

LimitPoset limit_poset(const PosetSystem& s);

// Directed system of nets over a poset system: one net per stage and, per
// index cover, one hom per element of the lower stage.
struct NetSystem {
  PosetSystem posets;
  std::vector<Net> nets;
  std::map<std::pair<int, int>, std::vector<StarHom>> psi;
};

Report validate_net_system(const NetSystem& s, double tol = 1e-12);

// Element-wise composed homs for a comparable index pair.
std::vector<StarHom> derived_psi(const NetSystem& s, int a, int b);

// Limit net at truncation. The (finite, upward directed) index poset has a
// maximum stage; the limit is that stage relabeled along the colimit and
// Psi[alpha][o] links every stage fibre into it.
struct LimitNet {
  Net net;
  LimitPoset lp;
  int topStage = 0;
  std::vector<std::vector<StarHom>> Psi;
};

LimitNet limit_net(const NetSystem& s);

// Stage norms of the images of A (fibre of stage `alpha` at element `o`)
// along all later stages, in topological index order. `stagesOut`, when
// given, receives the stage indices the profile walks through.
std::vector<double> limit_norm_profile(const NetSystem& s, int alpha, int o,
                                       const AlgElement& A,
                                       std::vector<int>* stagesOut = nullptr);

// Universal factorization at truncation: a compatible family of morphisms
// out of the stages factors uniquely through the top stage. Throws
// std::runtime_error("IncompatibleFamily") when the family is incoherent.
std::vector<StarHom> factor_through_limit(
    const NetSystem& s, const std::vector<std::vector<StarHom>>& targets,
    double tol = 1e-12);

// Desk-scale injectivity transfer: with monomorphic links and a faithful
// witness representation per stage, the canonical maps into the limit are
// isometric on sampled fibre elements.
Report injectivity_transfer_check(const NetSystem& s,
                                  const std::vector<SymbolicNetRep>& witnesses,
                                  int samples = 100, unsigned seed = 7,
                                  double tol = 1e-12);

}  // namespace nets
