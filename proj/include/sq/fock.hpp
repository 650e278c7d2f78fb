#pragma once

#include "sq/expr.hpp"

namespace sq {

/// Dense matrix over the full Fock space of the registered orbitals,
/// basis ordered by occupation bit patterns read as binary integers
/// (first orbital = most significant bit). Entries stay in the exact
/// scalar ring. Test oracle; capped at 12 orbitals.
struct DenseOp {
  int norb = 0;
  std::vector<Scalar> a;  // row-major, dim x dim

  int dim() const { return 1 << norb; }
  Scalar& at(int r, int c) { return a[size_t(r) * size_t(dim()) + size_t(c)]; }
  const Scalar& at(int r, int c) const {
    return a[size_t(r) * size_t(dim()) + size_t(c)];
  }

  static DenseOp identity(int norb);
  static DenseOp zero(int norb);

  DenseOp& operator+=(const DenseOp& o);
  friend DenseOp operator+(DenseOp x, const DenseOp& y) { return x += y; }
  friend DenseOp operator*(const DenseOp& x, const DenseOp& y);
  friend bool operator==(const DenseOp& x, const DenseOp& y) {
    return x.norb == y.norb && x.a == y.a;
  }

  DenseOp adjoint(const Context& ctx) const;
};

/// Matrix of an operator expression built from literal Kronecker products
/// of the 2x2 ladder matrix with Jordan-Wigner parity strings; Majorana
/// factors map to (lower + raise)/sqrt(2).
DenseOp oracle_matrix(const Context& ctx, const Expr& e);

enum class OracleVacuum { EmptyBand, FermiSea };

/// <ref| M(e) |ref> with the all-empty reference or the filled-negative-
/// level Fermi sea over the registered orbitals.
Scalar oracle_vev(const Context& ctx, const Expr& e,
                  OracleVacuum mode = OracleVacuum::EmptyBand);

/// Basis index of the reference state for a vacuum mode.
int oracle_reference_state(const Context& ctx, OracleVacuum mode);

}  // namespace sq
