#include "sq/fock.hpp"

#include "sq/states.hpp"

namespace sq {

DenseOp DenseOp::identity(int norb) {
  DenseOp m = zero(norb);
  for (int i = 0; i < m.dim(); ++i) m.at(i, i) = Scalar::one();
  return m;
}

DenseOp DenseOp::zero(int norb) {
  DenseOp m;
  m.norb = norb;
  m.a.assign(size_t(1) << unsigned(2 * norb), Scalar::zero());
  return m;
}

DenseOp& DenseOp::operator+=(const DenseOp& o) {
  if (norb != o.norb) throw Error("dense operator dimension mismatch");
  for (size_t i = 0; i < a.size(); ++i) a[i] += o.a[i];
  return *this;
}

DenseOp operator*(const DenseOp& x, const DenseOp& y) {
  if (x.norb != y.norb) throw Error("dense operator dimension mismatch");
  DenseOp r = DenseOp::zero(x.norb);
  int n = x.dim();
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const Scalar& xik = x.at(i, k);
      if (xik.is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        const Scalar& ykj = y.at(k, j);
        if (ykj.is_zero()) continue;
        r.at(i, j) += xik * ykj;
      }
    }
  }
  return r;
}

DenseOp DenseOp::adjoint(const Context& ctx) const {
  DenseOp r = zero(norb);
  for (int i = 0; i < dim(); ++i) {
    for (int j = 0; j < dim(); ++j) r.at(j, i) = scalar_conj(ctx, at(i, j));
  }
  return r;
}

namespace {

constexpr int kMaxOrbitals = 12;

// 2x2 blocks: 0 = identity, 1 = parity Z, 2 = lower (annihilate),
// 3 = raise (create), 4 = (lower + raise)/sqrt(2).
DenseOp kron_chain(int norb, int pos, int what) {
  DenseOp m;
  m.norb = norb;
  int dim = 1 << norb;
  m.a.assign(size_t(dim) * size_t(dim), Scalar::zero());
  Scalar maj = Scalar::sqrt(Rational(1, 2));
  for (int col = 0; col < dim; ++col) {
    // Apply the single-orbital block at pos, parity left of it.
    int bit = (col >> (norb - 1 - pos)) & 1;
    int parity = 0;
    for (int q = 0; q < pos; ++q) parity ^= (col >> (norb - 1 - q)) & 1;
    Scalar sign = parity ? Scalar::of(Rational(-1)) : Scalar::one();
    switch (what) {
      case 0:
        m.at(col, col) = Scalar::one();
        break;
      case 1:
        m.at(col, col) = bit ? Scalar::of(Rational(-1)) : Scalar::one();
        break;
      case 2:  // annihilate: |..1..> -> sign |..0..>
        if (bit) m.at(col ^ (1 << (norb - 1 - pos)), col) = sign;
        break;
      case 3:  // create
        if (!bit) m.at(col ^ (1 << (norb - 1 - pos)), col) = sign;
        break;
      case 4:  // majorana
        m.at(col ^ (1 << (norb - 1 - pos)), col) = sign * maj;
        break;
    }
  }
  return m;
}

}  // namespace

DenseOp oracle_matrix(const Context& ctx, const Expr& e) {
  validate_expr(ctx, e);
  int norb = int(ctx.orbitals().size());
  if (norb == 0) throw Error("oracle requires registered orbitals");
  if (norb > kMaxOrbitals)
    throw Error("oracle limited to " + std::to_string(kMaxOrbitals) + " orbitals");
  DenseOp total = DenseOp::zero(norb);
  for (const auto& t : e.terms()) {
    DenseOp m = DenseOp::identity(norb);
    for (const auto& f : t.factors) {
      const auto* op = std::get_if<OperatorFactor>(&f);
      if (!op) throw Error("oracle matrix of a term with non-operator factors");
      const SymbolDecl& d = ctx.symbol(op->sym);
      if (d.statistics == Statistics::Boson)
        throw Error("oracle is fermion-only; bosonic factor on symbol " + d.name);
      int pos = resolve_orbital(ctx, *op);
      int what = !op->kind ? 4 : (*op->kind == OpKind::Annihilate ? 2 : 3);
      m = m * kron_chain(norb, pos, what);
    }
    for (size_t i = 0; i < m.a.size(); ++i) m.a[i] *= t.coeff;
    total += m;
  }
  return total;
}

int oracle_reference_state(const Context& ctx, OracleVacuum mode) {
  int norb = int(ctx.orbitals().size());
  if (mode == OracleVacuum::EmptyBand) return 0;
  int ref = 0;
  for (int i = 0; i < norb; ++i) {
    const Orbital& o = ctx.orbitals()[size_t(i)];
    if (!o.site || !o.site->is_integer())
      throw Error("Fermi-sea reference requires integer orbital site indexes");
    std::int64_t k = o.site->value();
    bool occ = k < 0 || (k == 0 && ctx.options().fermi_level_occupied);
    if (k == 0 && !ctx.options().fermi_level_occupied)
      throw Error("orbital at the Fermi level requires the fermi_level_occupied policy");
    if (occ) ref |= 1 << (norb - 1 - i);
  }
  return ref;
}

Scalar oracle_vev(const Context& ctx, const Expr& e, OracleVacuum mode) {
  DenseOp m = oracle_matrix(ctx, e);
  int ref = oracle_reference_state(ctx, mode);
  return m.at(ref, ref);
}

}  // namespace sq
