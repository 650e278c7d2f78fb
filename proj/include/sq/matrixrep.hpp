#pragma once

#include "sq/basis.hpp"

namespace sq {

/// Thrown when an operator connects different invariant subspaces of the
/// basis it was asked to represent.
struct SymmetryError : Error {
  using Error::Error;
};

/// <bra| op |ket> over basis states; exact, symbolic parameters persist.
Scalar matrix_element(const Context& ctx, const BasisState& bra_state, const Expr& op,
                      const BasisState& ket_state);

struct Block {
  int q = 0;
  int twice_spin = 0;
  int dim = 0;
  std::vector<Scalar> entries;  // row-major, dim x dim

  const Scalar& at(int r, int c) const {
    return entries[size_t(r) * size_t(dim) + size_t(c)];
  }
};

struct BlockMatrix {
  BasisKind kind = BasisKind::QSz;
  std::vector<Block> blocks;
};

/// Per-subspace matrices of the operator. Verifies that the operator acts
/// closed on every subspace; a nonzero cross-subspace component raises
/// SymmetryError naming the offending sectors.
BlockMatrix make_blocks(const Context& ctx, const Expr& op, const BasisSet& basis);

/// Entry-wise parameter substitution.
BlockMatrix substitute_blocks(const Context& ctx, const BlockMatrix& bm,
                              const Bindings& b);

}  // namespace sq
