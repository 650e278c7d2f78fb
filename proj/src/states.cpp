#include "sq/states.hpp"

namespace sq {

int resolve_orbital(const Context& ctx, const OperatorFactor& f) {
  const SymbolDecl& d = ctx.symbol(f.sym);
  Orbital o;
  o.sym = f.sym;
  size_t nsite = f.indexes.size();
  if (d.twice_spin) {
    if (f.indexes.empty())
      throw Error("spinful operator without a spin index on symbol " + d.name);
    const Index& sp = f.indexes.back();
    if (!sp.is_integer())
      throw Error("cannot resolve a symbolic spin index onto an orbital: " + sp.str());
    o.spin = int(sp.value());
    nsite -= 1;
  }
  if (nsite > 1)
    throw Error("operator on an orbital not in the registered orbital list: " + d.name);
  if (nsite == 1) {
    o.site = f.indexes[0];
    if (o.site->is_atom())
      throw Error("cannot resolve a symbolic site index onto an orbital: " +
                  o.site->str());
  }
  auto pos = ctx.find_orbital(o);
  if (!pos)
    throw Error("operator on an orbital not in the registered orbital list: " + d.name);
  return *pos;
}

namespace {

// Consumes Dirac factors immediately left of the occupation ket.
void reduce_onto_ket(const Context& ctx, Term t, Expr& out) {
  auto& facs = t.factors;
  while (true) {
    size_t kpos = facs.size();
    for (size_t i = 0; i < facs.size(); ++i) {
      if (std::holds_alternative<VcKetFactor>(facs[i])) {
        kpos = i;
        break;
      }
    }
    if (kpos == facs.size() || kpos == 0) break;
    const auto* op = std::get_if<OperatorFactor>(&facs[kpos - 1]);
    if (!op || ctx.symbol(op->sym).statistics != Statistics::DiracFermion ||
        !op->kind)
      break;
    int p = resolve_orbital(ctx, *op);
    auto& bits = std::get<VcKetFactor>(facs[kpos]).bits;
    bool occupied = bits[size_t(p)] != 0;
    if ((*op->kind == OpKind::Create) == occupied) return;  // kills the term
    int crossings = 0;
    for (int q = 0; q < p; ++q) crossings += bits[size_t(q)] != 0;
    if (crossings & 1) t.coeff = -t.coeff;
    bits[size_t(p)] = occupied ? 0 : 1;
    facs.erase(facs.begin() + std::ptrdiff_t(kpos) - 1);
  }
  out.add_term(std::move(t));
}

}  // namespace

Expr apply(const Context& ctx, const Expr& op, const Expr& state) {
  Expr prod = nc(ctx, {op, state});
  Expr out;
  for (const auto& t : prod.terms()) reduce_onto_ket(ctx, t, out);
  return out;
}

Scalar inner(const Context& ctx, const Expr& bra_side, const Expr& ket_side) {
  // Reduce pending operator factors on both sides, the bra via its adjoint.
  Expr kb = apply(ctx, Expr::one(), conj(ctx, bra_side));
  Expr bb = conj(ctx, kb);
  Expr kk = apply(ctx, Expr::one(), ket_side);
  Expr prod = nc(ctx, {bb, kk});
  auto s = prod.as_scalar();
  if (!s) throw Error("scalar product did not reduce to a scalar");
  return *s;
}

Expr merge_kets(const Context& ctx, const Expr& k1, const Expr& k2) {
  return nc(ctx, {k1, k2});
}

Expr vc_to_ops(const Context& ctx, const std::vector<std::uint8_t>& bits) {
  const auto& orbs = ctx.orbitals();
  if (bits.size() != orbs.size())
    throw Error("occupation vector length does not match the registered orbitals");
  std::vector<Expr> ops;
  for (size_t p = 0; p < bits.size(); ++p) {
    if (!bits[p]) continue;
    const Orbital& o = orbs[p];
    std::vector<Index> idx;
    if (o.site) idx.push_back(*o.site);
    if (o.spin >= 0) idx.push_back(Index::integer(o.spin));
    ops.push_back(cr(ctx, ctx.symbol(o.sym).name, std::move(idx)));
  }
  return nc(ctx, std::span<const Expr>(ops.data(), ops.size()));
}

Expr vc_vacuum(const Context& ctx) {
  return vc_ket(std::vector<std::uint8_t>(ctx.orbitals().size(), 0));
}

std::map<std::vector<std::uint8_t>, Scalar> vc_amplitudes(const Context& ctx,
                                                          const Expr& state) {
  Expr reduced = apply(ctx, Expr::one(), state);
  std::map<std::vector<std::uint8_t>, Scalar> amp;
  for (const auto& t : reduced.terms()) {
    if (t.factors.size() != 1 || !std::holds_alternative<VcKetFactor>(t.factors[0]))
      throw Error("state expression is not a pure occupation-number combination");
    auto [it, fresh] =
        amp.emplace(std::get<VcKetFactor>(t.factors[0]).bits, t.coeff);
    if (!fresh) it->second += t.coeff;
  }
  return amp;
}

}  // namespace sq
