#include "sq/matrixrep.hpp"

#include "sq/states.hpp"

namespace sq {

namespace {

using Amplitudes = std::map<std::vector<std::uint8_t>, Scalar>;

Scalar overlap(const Context& ctx, const BasisState& bra_state, const Amplitudes& amp) {
  Scalar s = Scalar::zero();
  for (const auto& [bits, coeff] : bra_state.comps) {
    auto it = amp.find(bits);
    if (it == amp.end()) continue;
    s += scalar_conj(ctx, coeff) * it->second;
  }
  return s;
}

std::string sector_name(int q, int ts) {
  std::string s = "(Q=" + std::to_string(q) + ", 2S=" + std::to_string(ts) + ")";
  return s;
}

}  // namespace

Scalar matrix_element(const Context& ctx, const BasisState& bra_state, const Expr& op,
                      const BasisState& ket_state) {
  Amplitudes amp = vc_amplitudes(ctx, apply(ctx, op, ket_state.to_expr()));
  return overlap(ctx, bra_state, amp);
}

BlockMatrix make_blocks(const Context& ctx, const Expr& op, const BasisSet& basis) {
  if (basis.kind == BasisKind::QS) {
    // One block per (Q,S) with highest-weight representatives is only valid
    // for scalar operators; anything that moves within a multiplet needs
    // the (Q,Sz) basis.
    Expr splus = total_spin(ctx, basis.sites, SpinAxis::Plus);
    if (!commutator(ctx, op, splus).is_zero())
      throw SymmetryError(
          "operator does not commute with the total spin raising operator; "
          "it cannot be represented over a (Q,S) basis, use (Q,Sz)");
  }
  BlockMatrix out;
  out.kind = basis.kind;
  for (const auto& sec : basis.sectors) {
    int dim = int(sec.states.size());
    Block blk;
    blk.q = sec.q;
    blk.twice_spin = sec.twice_spin;
    blk.dim = dim;
    blk.entries.assign(size_t(dim) * size_t(dim), Scalar::zero());
    for (int i = 0; i < dim; ++i) {
      Amplitudes amp =
          vc_amplitudes(ctx, apply(ctx, op, sec.states[size_t(i)].to_expr()));
      for (int j = 0; j < dim; ++j) {
        blk.entries[size_t(j) * size_t(dim) + size_t(i)] =
            overlap(ctx, sec.states[size_t(j)], amp);
      }
      // Residual after projecting back onto the subspace; anything left
      // means the operator does not conserve these quantum numbers.
      Amplitudes residual = amp;
      for (int j = 0; j < dim; ++j) {
        const Scalar& mji = blk.entries[size_t(j) * size_t(dim) + size_t(i)];
        if (mji.is_zero()) continue;
        for (const auto& [bits, coeff] : sec.states[size_t(j)].comps) {
          residual[bits] -= mji * coeff;
        }
      }
      for (const auto& [bits, coeff] : residual) {
        if (coeff.is_zero()) continue;
        auto [q2, tsz2] = vc_quantum_numbers(ctx, bits);
        throw SymmetryError(
            "operator does not act closed on sector " +
            sector_name(sec.q, sec.twice_spin) + ": state " + std::to_string(i + 1) +
            " acquires a component in sector (Q=" + std::to_string(q2) +
            ", 2Sz=" + std::to_string(tsz2) + ")");
      }
    }
    out.blocks.push_back(std::move(blk));
  }
  return out;
}

BlockMatrix substitute_blocks(const Context& ctx, const BlockMatrix& bm,
                              const Bindings& b) {
  BlockMatrix out = bm;
  for (auto& blk : out.blocks) {
    for (auto& e : blk.entries) e = scalar_substitute(ctx, e, b);
  }
  return out;
}

}  // namespace sq
