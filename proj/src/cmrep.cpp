#include "nets/cmrep.hpp"

#include <cmath>
#include <stdexcept>

namespace nets {

double vec_norm(const SparseVec& v) {
  double s = 0;
  for (const auto& [k, x] : v) s += std::norm(x);
  return std::sqrt(s);
}

Cplx vec_dot(const SparseVec& a, const SparseVec& b) {
  Cplx s = 0;
  for (const auto& [k, x] : a) {
    auto it = b.find(k);
    if (it != b.end()) s += std::conj(x) * it->second;
  }
  return s;
}

SparseVec vec_sub(const SparseVec& a, const SparseVec& b) {
  SparseVec out = a;
  for (const auto& [k, x] : b) out[k] -= x;
  return out;
}

CMRep cm_rep(const FinDimAlgebra& a) { return CMRep{a}; }

SparseVec cm_apply(const CMRep& rep, const AlgElement& a, const SparseVec& v) {
  SparseVec out;
  for (const auto& [idx, val] : v) {
    const Mat& m = a.m.at(idx.block);
    for (int r = 0; r < m.rows(); ++r) {
      Cplx c = m(r, idx.row) * val;
      if (c != Cplx(0)) out[{idx.block, r, idx.copy}] += c;
    }
  }
  return out;
}

namespace {

struct Segment {
  int s;       // source block
  int q;       // which copy of block s inside this target block
  int offset;  // row offset within the target block
};

std::vector<Segment> diag_layout(const StarHom& f, int t) {
  std::vector<Segment> out;
  int off = 0;
  for (int s = 0; s < f.src.numBlocks(); ++s)
    for (int q = 0; q < f.mult(t, s); ++q) {
      out.push_back({s, q, off});
      off += f.src.blocks[s];
    }
  return out;
}

// Ordered slots (t, q) in which source block s appears across all target
// blocks; the slot index feeds the copy pairing.
std::vector<std::pair<int, int>> slots_for(const StarHom& f, int s) {
  std::vector<std::pair<int, int>> out;
  for (int t = 0; t < f.tgt.numBlocks(); ++t)
    for (int q = 0; q < f.mult(t, s); ++q) out.push_back({t, q});
  return out;
}

BasisIndex repack_forward(const StarHom& hom, const BasisIndex& in) {
  const auto segs = diag_layout(hom, in.block);
  for (const Segment& seg : segs) {
    const int ns = hom.src.blocks[seg.s];
    if (in.row >= seg.offset && in.row < seg.offset + ns) {
      auto slots = slots_for(hom, seg.s);
      std::int64_t m = static_cast<std::int64_t>(slots.size());
      std::int64_t idx = -1;
      for (size_t i = 0; i < slots.size(); ++i)
        if (slots[i] == std::make_pair(in.block, seg.q)) {
          idx = static_cast<std::int64_t>(i);
          break;
        }
      return {seg.s, in.row - seg.offset, in.copy * m + idx};
    }
  }
  throw std::logic_error("repack_forward: row outside layout");
}

BasisIndex repack_backward(const StarHom& hom, const BasisIndex& in) {
  auto slots = slots_for(hom, in.block);
  const std::int64_t m = static_cast<std::int64_t>(slots.size());
  if (m == 0) throw std::logic_error("repack_backward: dead source block");
  auto [t, q] = slots[static_cast<size_t>(in.copy % m)];
  std::int64_t c = in.copy / m;
  for (const Segment& seg : diag_layout(hom, t))
    if (seg.s == in.block && seg.q == q)
      return {t, seg.offset + in.row, c};
  throw std::logic_error("repack_backward: slot not found");
}

}  // namespace

SparseVec apply(const ElementaryOp& op, const SparseVec& v, bool inverted) {
  SparseVec out;
  if (const auto* ru = std::get_if<RowUnitaryOp>(&op)) {
    Mat u = inverted ? Mat(ru->u.adjoint()) : ru->u;
    for (const auto& [idx, val] : v) {
      if (idx.block != ru->block) {
        out[idx] += val;
        continue;
      }
      for (int r = 0; r < u.rows(); ++r) {
        Cplx c = u(r, idx.row) * val;
        if (c != Cplx(0)) out[{idx.block, r, idx.copy}] += c;
      }
    }
    return out;
  }
  const auto& rp = std::get<RepackOp>(op);
  bool fwd = rp.forward != inverted;
  for (const auto& [idx, val] : v)
    out[fwd ? repack_forward(rp.hom, idx) : repack_backward(rp.hom, idx)] += val;
  return out;
}

SymbolicUnitary identity_unitary() { return {}; }

SymbolicUnitary concat(const SymbolicUnitary& f, const SymbolicUnitary& g) {
  SymbolicUnitary out = f;
  out.word.insert(out.word.end(), g.word.begin(), g.word.end());
  return out;
}

SymbolicUnitary SymbolicUnitary::inverse() const {
  SymbolicUnitary inv;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (const auto* ru = std::get_if<RowUnitaryOp>(&*it))
      inv.word.push_back(RowUnitaryOp{ru->block, Mat(ru->u.adjoint())});
    else {
      auto rp = std::get<RepackOp>(*it);
      rp.forward = !rp.forward;
      inv.word.push_back(rp);
    }
  }
  return inv;
}

SparseVec apply(const SymbolicUnitary& u, const SparseVec& v) {
  SparseVec cur = v;
  for (auto it = u.word.rbegin(); it != u.word.rend(); ++it)
    cur = nets::apply(*it, cur);
  return cur;
}

RestrictedCMRep restrict_cm(const CMRep& rho, const StarHom& j) {
  if (!(rho.alg == j.tgt))
    throw std::invalid_argument("restrict_cm: hom target mismatch");
  if (!j.injective())
    throw std::invalid_argument("restrict_cm: NotInjectiveHom");
  RestrictedCMRep out;
  out.ambient = rho;
  out.hom = j;
  // Undo the conjugating unitaries blockwise, then repack the diagonal
  // layout into the source-canonical index set.
  out.toCanonical.word.push_back(RepackOp{j, true});
  for (int t = 0; t < j.tgt.numBlocks(); ++t)
    out.toCanonical.word.push_back(RowUnitaryOp{t, Mat(j.conj[t].adjoint())});
  return out;
}

SparseVec restricted_apply(const RestrictedCMRep& r, const AlgElement& a,
                           const SparseVec& v) {
  return cm_apply(r.ambient, r.hom(a), v);
}

SymbolicUnitary solve_intertwiner_cm(const RestrictedCMRep& r1,
                                     const RestrictedCMRep& r2) {
  if (!(r1.hom.src == r2.hom.src))
    throw std::invalid_argument("solve_intertwiner_cm: different algebras");
  return concat(r2.toCanonical.inverse(), r1.toCanonical);
}

std::vector<BasisIndex> probe_indices(const FinDimAlgebra& alg, int depth) {
  std::vector<BasisIndex> out;
  for (int s = 0; s < alg.numBlocks(); ++s)
    for (int r = 0; r < alg.blocks[s]; ++r)
      for (int c = 0; c < depth; ++c) out.push_back({s, r, c});
  return out;
}

}  // namespace nets
