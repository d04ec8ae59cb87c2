#pragma once

#include <cstdint>
#include <map>
#include <variant>

#include "nets/algebra.hpp"

namespace nets {

// Basis index of the countable-multiplicity space of a block algebra:
// block s acts on C^{n_s} (x) l2, so an index is (block, row, copy).
struct BasisIndex {
  int block = 0;
  int row = 0;
  std::int64_t copy = 0;

  auto operator<=>(const BasisIndex&) const = default;
};

// Finitely supported vector on the countable-multiplicity space.
using SparseVec = std::map<BasisIndex, Cplx>;

double vec_norm(const SparseVec& v);
Cplx vec_dot(const SparseVec& a, const SparseVec& b);
SparseVec vec_sub(const SparseVec& a, const SparseVec& b);

// Canonical countable-multiplicity representation of an algebra: every
// block acts on its rows, identically on every copy. Faithful and
// absorbing by construction.
struct CMRep {
  FinDimAlgebra alg;
};

CMRep cm_rep(const FinDimAlgebra& a);

// Action of an algebra element on a finitely supported vector.
SparseVec cm_apply(const CMRep& rep, const AlgElement& a, const SparseVec& v);

// Elementary symbolic operators.
//
// RowUnitaryOp applies a finite unitary on the row coordinate of one block,
// identically on every copy. RepackOp is the basis bijection that carries
// the countable-multiplicity space of a hom's target, viewed through the
// hom's diagonal layout, onto the canonical space of the source: the copy
// bookkeeping uses the fixed pairing {0..m-1} x N -> N, (q, c) -> c*m + q.
struct RowUnitaryOp {
  int block;
  Mat u;
};

struct RepackOp {
  StarHom hom;
  bool forward;  // target-canonical indices -> source-canonical indices
};

using ElementaryOp = std::variant<RowUnitaryOp, RepackOp>;

// Word of elementary operators; entries apply right to left (word.back()
// first), matching operator composition order.
struct SymbolicUnitary {
  std::vector<ElementaryOp> word;

  SymbolicUnitary inverse() const;
};

SymbolicUnitary identity_unitary();
SymbolicUnitary concat(const SymbolicUnitary& f, const SymbolicUnitary& g);

SparseVec apply(const SymbolicUnitary& u, const SparseVec& v);
SparseVec apply(const ElementaryOp& op, const SparseVec& v, bool inverted = false);

// Restriction of the canonical representation of hom.tgt along a unital
// monomorphism: the restricted action rho(j(a)) together with the explicit
// unitary carrying it onto the canonical space of hom.src.
struct RestrictedCMRep {
  CMRep ambient;           // canonical rep of hom.tgt
  StarHom hom;             // the monomorphism j : src -> tgt
  SymbolicUnitary toCanonical;  // ambient space -> canonical space of src
};

RestrictedCMRep restrict_cm(const CMRep& rho, const StarHom& j);

// Ambient-space action of a source element through the restriction.
SparseVec restricted_apply(const RestrictedCMRep& r, const AlgElement& a,
                           const SparseVec& v);

// Unitary word w with w r1(a) = r2(a) w: both restrictions are canonical
// forms of the same source algebra, so w = toCanonical2^{-1} toCanonical1.
SymbolicUnitary solve_intertwiner_cm(const RestrictedCMRep& r1,
                                     const RestrictedCMRep& r2);

// Probe basis: all (block, row, copy) indices of `alg` with copy < depth.
std::vector<BasisIndex> probe_indices(const FinDimAlgebra& alg, int depth);

}  // namespace nets
