#pragma once

#include <map>

#include "nets/cmrep.hpp"
#include "nets/homotopy.hpp"
#include "nets/poset.hpp"

namespace nets {

// Net of finite-dimensional algebras over a poset: one algebra per element
// and one unital monomorphism per Hasse cover, lower fibre into upper fibre.
// Inclusions for general comparable pairs are derived by composition; the
// net relation is exactly path independence of those compositions.
struct Net {
  Poset poset;
  std::vector<FinDimAlgebra> fibre;
  std::map<std::pair<int, int>, StarHom> inc;  // (lower, upper) cover

  const StarHom& coverInc(int lo, int hi) const;
};

Report validate_net(const Net& n, double tol = 1e-12);

// Inclusion for an arbitrary comparable pair, composed along a cover path.
// Well defined on validated nets. Throws on incomparable input.
StarHom derived_inclusion(const Net& n, int o, int a);

bool is_bundle(const Net& n);  // every cover inclusion an isomorphism

// Representation with one finite rep per element and one unitary per cover
// satisfying U * pi_o(a) = pi_hi(inc(a)) * U.
struct NetRep {
  Net net;
  std::vector<FinRep> pi;
  std::map<std::pair<int, int>, Mat> U;
};

// Same data with countable-multiplicity reps and symbolic unitaries;
// identities are checked on probe vectors instead of full matrices. Each
// element's rep is a restriction of an ambient canonical rep (the ambient
// varies per element; the hom carries the fibre into the ambient algebra).
struct SymbolicNetRep {
  Net net;
  std::vector<RestrictedCMRep> pi;
  std::map<std::pair<int, int>, SymbolicUnitary> U;
};

// Faithful symbolic representation of an arbitrary net: canonical rep per
// fibre, cover operators solved per cover. Faithful by construction; cocycle
// path independence is not guaranteed for arbitrary nets, so this serves as
// a faithfulness witness rather than a validated representation.
SymbolicNetRep canonical_symbolic_rep(const Net& n);

Report validate_rep(const NetRep& r, double tol = 1e-12);
Report validate_rep(const SymbolicNetRep& r, double tol = 1e-12,
                    int probeDepth = 8);
bool is_faithful(const NetRep& r);
bool is_faithful(const SymbolicNetRep& r);

// Composite cover-path operator for a comparable pair (path independent on
// validated reps).
Mat derived_operator(const NetRep& r, int o, int a);
SymbolicUnitary derived_operator(const SymbolicNetRep& r, int o, int a);

// Holonomy evaluation of a closed edge path: ascending steps use the cover
// data, descending steps its inverse. The bundle overload needs all
// inclusions invertible and returns an automorphism of the base fibre.
StarHom evaluate_loop(const Net& bundle, const EdgePath& loop);
Mat evaluate_loop(const NetRep& rep, const EdgePath& loop);

// One automorphism / unitary per generator of the presentation, evaluated on
// the generator's loop through the spanning tree. Relators are verified to
// act as the identity; throws std::runtime_error("RelatorViolated") if not.
std::vector<StarHom> holonomy(const Net& bundle, int base,
                              const GroupPresentation& pres,
                              double tol = 1e-12);
std::vector<Mat> holonomy(const NetRep& rep, int base,
                          const GroupPresentation& pres, double tol = 1e-12);

struct NetState {
  Net net;
  std::vector<State> omega;
};

Report validate_net_state(const NetState& s, double tol = 1e-8);

// Coherent family generated from a single fibre state on a net bundle by
// transport along a spanning tree. The state must be invariant under the
// holonomy generators at `base`; otherwise NotHolonomyInvariant is thrown.
NetState state_from_holonomy(const Net& bundle, int base, const State& omegaBase,
                             double tol = 1e-8);

// Commutativity of images of disjoint elements inside common upper bounds.
Report check_causality(const Net& n, const Disjointness& d, double tol = 1e-10);

// Group-covariant net: alpha[g][o] : fibre_o -> fibre_{g o}.
struct CovariantNet {
  Net net;
  GroupAction action;
  std::vector<std::vector<StarHom>> alpha;
};

Report validate_covariant(const CovariantNet& cn, double tol = 1e-12);

// Group average of a coherent family; output is invariant under the action
// and coherent again.
NetState invariant_net_state(const CovariantNet& cn, const NetState& s);

}  // namespace nets
