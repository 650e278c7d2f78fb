#pragma once

#include "sq/expr.hpp"

namespace sq {

/// Complete pairing of an operator string: disjoint position pairs (i, j)
/// with i < j covering every position, and the crossing-parity sign.
struct Pairing {
  std::vector<std::pair<int, int>> pairs;
  int sign = 1;
};

/// Enumerates all complete pairings with nonzero elementary contraction
/// value. Separate from the vev recursion so the two can check each other.
/// Odd-length strings yield an empty list.
std::vector<Pairing> contractions(const Context& ctx,
                                  const std::vector<OperatorFactor>& factors);

/// Elementary contraction <A B> of two adjacent-ordered operator factors
/// against the symbols' declared vacua.
Scalar elementary_contraction(const Context& ctx, const OperatorFactor& a,
                              const OperatorFactor& b);

/// Vacuum expectation value by Wick's theorem, evaluated per term by
/// recursive contraction of the leading factor (no reordering involved, so
/// it also serves reorder-disabled strings). Linear. Terms with Grassmann
/// constants keep them as factors of the result, which is why the return
/// type is an expression; operator-only input yields a pure scalar.
Expr vev(const Context& ctx, const Expr& e);

/// Same engine; named entry point for Fermi-sea work. Vacuum selection is
/// per symbol declaration, so Fermi-sea symbols contract against the
/// filled sea here and in vev alike.
Expr vev_fermisea(const Context& ctx, const Expr& e);

/// The scalar value of vev(e); throws if Grassmann factors remain.
Scalar vev_scalar(const Context& ctx, const Expr& e);

/// e minus its vacuum expectation value, canonicalized.
Expr normal_order(const Context& ctx, const Expr& e);

}  // namespace sq
