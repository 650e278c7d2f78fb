#include "sq/builders.hpp"

namespace sq {

namespace {

const SymbolDecl& spinful_decl(const Context& ctx, const SiteRef& ref) {
  const SymbolDecl& d = ctx.symbol(ctx.symbol_id(ref.sym));
  if (!d.twice_spin) throw Error("symbol has no spin index: " + ref.sym);
  return d;
}

const SymbolDecl& spin_half_decl(const Context& ctx, const SiteRef& ref) {
  const SymbolDecl& d = spinful_decl(ctx, ref);
  if (*d.twice_spin != 1) throw Error("operation requires a spin-1/2 symbol: " + ref.sym);
  return d;
}

std::vector<Index> with_projection(const SiteRef& ref, int v) {
  std::vector<Index> idx = ref.site;
  idx.push_back(Index::integer(v));
  return idx;
}

Expr n_proj(const Context& ctx, const SiteRef& ref, int v) {
  return nc(ctx, cr(ctx, ref.sym, with_projection(ref, v)),
            an(ctx, ref.sym, with_projection(ref, v)));
}

}  // namespace

Expr number(const Context& ctx, const SiteRef& ref) {
  const SymbolDecl& d = ctx.symbol(ctx.symbol_id(ref.sym));
  if (!d.twice_spin)
    return nc(ctx, cr(ctx, ref.sym, ref.site), an(ctx, ref.sym, ref.site));
  Expr sum;
  for (int v = 0; v <= *d.twice_spin; ++v) sum += n_proj(ctx, ref, v);
  return sum;
}

Expr number(const Context& ctx, const SiteRef& ref, int projection) {
  const SymbolDecl& d = spinful_decl(ctx, ref);
  if (projection < 0 || projection > *d.twice_spin)
    throw Error("spin projection out of range for symbol " + ref.sym + ": " +
                std::to_string(projection));
  return n_proj(ctx, ref, projection);
}

Expr number_of(const Context& ctx, const Expr& d) {
  return nc(ctx, conj(ctx, d), d);
}

Expr hop(const Context& ctx, const SiteRef& a, const SiteRef& b) {
  const SymbolDecl& da = ctx.symbol(ctx.symbol_id(a.sym));
  const SymbolDecl& db = ctx.symbol(ctx.symbol_id(b.sym));
  if (da.twice_spin != db.twice_spin)
    throw Error("hop requires equal spins on " + a.sym + " and " + b.sym);
  Expr sum;
  if (!da.twice_spin) {
    sum += nc(ctx, cr(ctx, a.sym, a.site), an(ctx, b.sym, b.site));
    sum += nc(ctx, cr(ctx, b.sym, b.site), an(ctx, a.sym, a.site));
    return sum;
  }
  for (int v = 0; v <= *da.twice_spin; ++v) {
    sum += nc(ctx, cr(ctx, a.sym, with_projection(a, v)),
              an(ctx, b.sym, with_projection(b, v)));
    sum += nc(ctx, cr(ctx, b.sym, with_projection(b, v)),
              an(ctx, a.sym, with_projection(a, v)));
  }
  return sum;
}

Expr hubbard(const Context& ctx, const SiteRef& ref) {
  spin_half_decl(ctx, ref);
  return nc(ctx, number(ctx, ref, 0), number(ctx, ref, 1));  // n_down n_up
}

Expr spin_component(const Context& ctx, const SiteRef& ref, SpinAxis axis) {
  const SymbolDecl& d = spinful_decl(ctx, ref);
  int ts = *d.twice_spin;
  switch (axis) {
    case SpinAxis::Z: {
      Expr sum;
      for (int v = 0; v <= ts; ++v) {
        // m = v - S
        Scalar m = Scalar::of(Rational(2 * v - ts, 2));
        sum += n_proj(ctx, ref, v).scaled(m);
      }
      return sum;
    }
    case SpinAxis::Plus: {
      Expr sum;
      for (int v = 0; v + 1 <= ts; ++v) {
        // amp^2 = S(S+1) - m(m+1) with m = v - S
        Rational amp2 = Rational(ts * (ts + 2), 4) -
                        Rational((2 * v - ts) * (2 * v - ts + 2), 4);
        Expr term = nc(ctx, cr(ctx, ref.sym, with_projection(ref, v + 1)),
                       an(ctx, ref.sym, with_projection(ref, v)));
        sum += term.scaled(Scalar::sqrt(amp2));
      }
      return sum;
    }
    case SpinAxis::Minus:
      return conj(ctx, spin_component(ctx, ref, SpinAxis::Plus));
    case SpinAxis::X: {
      Expr pm = spin_component(ctx, ref, SpinAxis::Plus) +
                spin_component(ctx, ref, SpinAxis::Minus);
      return pm.scaled(Scalar::of(Rational(1, 2)));
    }
    case SpinAxis::Y: {
      Expr pm = spin_component(ctx, ref, SpinAxis::Plus) -
                spin_component(ctx, ref, SpinAxis::Minus);
      return pm.scaled(Scalar::of(Rational(-1, 2)) * Scalar::imaginary());
    }
  }
  throw Error("unknown spin axis");
}

Expr spinspin(const Context& ctx, const SiteRef& a, const SiteRef& b) {
  Expr sum;
  for (SpinAxis ax : {SpinAxis::X, SpinAxis::Y, SpinAxis::Z}) {
    sum += nc(ctx, spin_component(ctx, a, ax), spin_component(ctx, b, ax));
  }
  return sum;
}

Expr projector(const Context& ctx, const SiteRef& ref, ProjectorKind kind) {
  spin_half_decl(ctx, ref);
  Expr nup = number(ctx, ref, 1);
  Expr ndn = number(ctx, ref, 0);
  Expr one = Expr::one();
  switch (kind) {
    case ProjectorKind::Empty:
      return nc(ctx, one - nup, one - ndn);
    case ProjectorKind::Up:
      return nc(ctx, nup, one - ndn);
    case ProjectorKind::Down:
      return nc(ctx, ndn, one - nup);
    case ProjectorKind::Double:
      return nc(ctx, nup, ndn);
    case ProjectorKind::Single:
      return nc(ctx, nup, one - ndn) + nc(ctx, ndn, one - nup);
  }
  throw Error("unknown projector kind");
}

Expr total_number(const Context& ctx, const std::vector<SiteRef>& sites) {
  Expr sum;
  for (const auto& s : sites) sum += number(ctx, s);
  return sum;
}

Expr total_spin(const Context& ctx, const std::vector<SiteRef>& sites, SpinAxis axis) {
  Expr sum;
  for (const auto& s : sites) sum += spin_component(ctx, s, axis);
  return sum;
}

}  // namespace sq
