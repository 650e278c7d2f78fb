#pragma once

#include "sq/builders.hpp"
#include "sq/expr.hpp"

namespace sq {

/// Normalized linear combination of occupation-number kets with exact
/// coefficients; components sorted by bit pattern, zeros dropped.
struct BasisState {
  std::vector<std::pair<std::vector<std::uint8_t>, Scalar>> comps;

  Expr to_expr() const;
};

/// One invariant subspace: quantum numbers and its basis states.
/// twice_spin holds 2*Sz for a (Q,Sz) basis and 2*S for a (Q,S) basis.
struct Sector {
  int q = 0;
  int twice_spin = 0;
  std::vector<BasisState> states;
};

enum class BasisKind { QSz, QS };

struct BasisSet {
  BasisKind kind = BasisKind::QSz;
  std::vector<SiteRef> sites;
  std::vector<Sector> sectors;  // sorted by (q, twice_spin)

  /// Number of states; multiplets weighted by 2S+1 for a (Q,S) basis.
  std::size_t total_states() const;
};

/// (Q, Sz) basis: all occupation kets grouped by charge relative to half
/// filling and z spin projection.
BasisSet qszbasis(const Context& ctx, const std::vector<SiteRef>& sites);

/// (Q, S) basis: highest-weight members of total-spin multiplets, found as
/// the exact nullspace of the total S+ map out of each (Q, Sz) sector and
/// orthonormalized by exact Gram-Schmidt.
BasisSet qsbasis(const Context& ctx, const std::vector<SiteRef>& sites);

/// (Q, twice_Sz) of a single occupation pattern over the registered
/// spin-1/2 orbitals.
std::pair<int, int> vc_quantum_numbers(const Context& ctx,
                                       const std::vector<std::uint8_t>& bits);

}  // namespace sq
