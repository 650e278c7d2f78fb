#pragma once

#include <map>

#include "sq/expr.hpp"

namespace sq {

/// Orbital position for an operator factor acting on the occupation-number
/// space; throws when the orbital is not registered or indexes are symbolic.
int resolve_orbital(const Context& ctx, const OperatorFactor& f);

/// Applies an operator expression to a state expression. Linear in both
/// arguments; Dirac factors adjacent to an occupation-number ket are
/// consumed by the elementary rules with the fermionic prefix sign, other
/// factors are left in place.
Expr apply(const Context& ctx, const Expr& op, const Expr& state);

/// Scalar product of a bra-like and a ket-like state expression.
/// Occupation vectors pair bitwise; abstract kets pair slotwise with
/// Kronecker deltas; mixed tensor factors pair up independently.
Scalar inner(const Context& ctx, const Expr& bra_side, const Expr& ket_side);

/// Slotwise merge of kets from orthogonal subspaces; a slot determined in
/// both operands is an error.
Expr merge_kets(const Context& ctx, const Expr& k1, const Expr& k2);

/// Creation-operator string that rebuilds the vector from the vacuum,
/// orbitals in ascending registered order.
Expr vc_to_ops(const Context& ctx, const std::vector<std::uint8_t>& bits);

/// |0...0> over the registered orbitals.
Expr vc_vacuum(const Context& ctx);

/// Amplitudes of a reduced pure occupation-number state expression.
/// Throws if a term carries anything besides one VcKet factor.
std::map<std::vector<std::uint8_t>, Scalar> vc_amplitudes(const Context& ctx,
                                                          const Expr& state);

}  // namespace sq
