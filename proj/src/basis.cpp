#include "sq/basis.hpp"

#include <algorithm>
#include <map>

#include "sq/states.hpp"

namespace sq {

Expr BasisState::to_expr() const {
  Expr e;
  for (const auto& [bits, coeff] : comps) {
    Term t;
    t.coeff = coeff;
    t.factors.push_back(VcKetFactor{bits});
    e.add_term(std::move(t));
  }
  return e;
}

std::size_t BasisSet::total_states() const {
  std::size_t n = 0;
  for (const auto& s : sectors) {
    std::size_t w = kind == BasisKind::QS ? std::size_t(s.twice_spin + 1) : 1;
    n += w * s.states.size();
  }
  return n;
}

namespace {

void check_site_layout(const Context& ctx, const std::vector<SiteRef>& sites) {
  if (sites.empty()) throw Error("basis generation requires at least one site");
  std::vector<Orbital> expected;
  for (const auto& ref : sites) {
    SymbolId id = ctx.symbol_id(ref.sym);
    const SymbolDecl& d = ctx.symbol(id);
    if (d.statistics != Statistics::DiracFermion || !d.twice_spin ||
        *d.twice_spin != 1)
      throw Error("basis generation requires spin-1/2 Dirac fermions: " + ref.sym);
    if (ref.site.size() > 1)
      throw Error("basis sites take at most one site index: " + ref.sym);
    std::optional<Index> site =
        ref.site.empty() ? std::nullopt : std::optional<Index>(ref.site[0]);
    expected.push_back(Orbital{id, site, 1});
    expected.push_back(Orbital{id, site, 0});
  }
  if (!(ctx.orbitals() == expected))
    throw Error("registered orbitals do not match the basis site list "
                "(expected site-major order, up before down)");
}

std::vector<std::uint8_t> pattern_bits(int pattern, int norb) {
  std::vector<std::uint8_t> bits(static_cast<size_t>(norb), 0);
  for (int i = 0; i < norb; ++i)
    bits[size_t(i)] = std::uint8_t((pattern >> (norb - 1 - i)) & 1);
  return bits;
}

// Exact right-nullspace basis of a rational matrix (rows x cols).
std::vector<std::vector<Rational>> rational_nullspace(
    std::vector<std::vector<Rational>> m, size_t cols) {
  size_t rows = m.size();
  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t pr = rows;
    for (size_t i = r; i < rows; ++i) {
      if (!m[i][c].is_zero()) {
        pr = i;
        break;
      }
    }
    if (pr == rows) continue;
    std::swap(m[r], m[pr]);
    Rational inv = Rational(1) / m[r][c];
    for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Rational f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rational>> null;
  for (size_t fc = 0; fc < cols; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[fc] = Rational(1);
    for (size_t pi = 0; pi < pivot_col.size(); ++pi) {
      v[pivot_col[pi]] = -m[pi][fc];
    }
    null.push_back(std::move(v));
  }
  return null;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Unnormalized exact Gram-Schmidt; returns orthogonal rational vectors.
std::vector<std::vector<Rational>> gram_schmidt(
    const std::vector<std::vector<Rational>>& vs) {
  std::vector<std::vector<Rational>> ws;
  for (const auto& v : vs) {
    std::vector<Rational> w = v;
    for (const auto& u : ws) {
      Rational f = dot(u, w) / dot(u, u);
      if (f.is_zero()) continue;
      for (size_t i = 0; i < w.size(); ++i) w[i] -= f * u[i];
    }
    bool zero = std::all_of(w.begin(), w.end(),
                            [](const Rational& x) { return x.is_zero(); });
    if (zero) throw Error("dependent vectors in basis orthogonalization");
    ws.push_back(std::move(w));
  }
  return ws;
}

struct SzSector {
  std::vector<std::vector<std::uint8_t>> kets;  // ascending bit patterns
  std::map<std::vector<std::uint8_t>, size_t> pos;
};

std::map<std::pair<int, int>, SzSector> group_by_qsz(const Context& ctx) {
  int norb = int(ctx.orbitals().size());
  std::map<std::pair<int, int>, SzSector> out;
  for (int pattern = 0; pattern < (1 << norb); ++pattern) {
    auto bits = pattern_bits(pattern, norb);
    auto qn = vc_quantum_numbers(ctx, bits);
    auto& sec = out[qn];
    sec.pos[bits] = sec.kets.size();
    sec.kets.push_back(std::move(bits));
  }
  return out;
}

}  // namespace

std::pair<int, int> vc_quantum_numbers(const Context& ctx,
                                       const std::vector<std::uint8_t>& bits) {
  const auto& orbs = ctx.orbitals();
  if (bits.size() != orbs.size())
    throw Error("occupation vector length does not match the registered orbitals");
  int ntot = 0, tsz = 0;
  for (size_t i = 0; i < bits.size(); ++i) {
    if (!bits[i]) continue;
    ++ntot;
    tsz += orbs[i].spin == 1 ? 1 : -1;
  }
  return {ntot - int(orbs.size() / 2), tsz};
}

BasisSet qszbasis(const Context& ctx, const std::vector<SiteRef>& sites) {
  check_site_layout(ctx, sites);
  BasisSet out;
  out.kind = BasisKind::QSz;
  out.sites = sites;
  for (auto& [qn, sec] : group_by_qsz(ctx)) {
    Sector s;
    s.q = qn.first;
    s.twice_spin = qn.second;
    for (auto& bits : sec.kets) {
      BasisState st;
      st.comps.emplace_back(bits, Scalar::one());
      s.states.push_back(std::move(st));
    }
    out.sectors.push_back(std::move(s));
  }
  return out;
}

BasisSet qsbasis(const Context& ctx, const std::vector<SiteRef>& sites) {
  check_site_layout(ctx, sites);
  auto groups = group_by_qsz(ctx);
  Expr splus = total_spin(ctx, sites, SpinAxis::Plus);

  BasisSet out;
  out.kind = BasisKind::QS;
  out.sites = sites;
  for (auto& [qn, sec] : groups) {
    auto [q, tsz] = qn;
    if (tsz < 0) continue;  // highest-weight states have Sz = S >= 0
    auto up = groups.find({q, tsz + 2});
    size_t rows = up == groups.end() ? 0 : up->second.kets.size();
    size_t cols = sec.kets.size();
    // Matrix of total S+ from (Q,Sz) into (Q,Sz+1).
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols, Rational(0)));
    for (size_t c = 0; c < cols; ++c) {
      Expr image = apply(ctx, splus, vc_ket(sec.kets[c]));
      for (const auto& [bits, coeff] : vc_amplitudes(ctx, image)) {
        auto rat = coeff.as_rational();
        if (!rat) throw Error("non-rational S+ amplitude in basis construction");
        if (rat->is_zero()) continue;
        if (up == groups.end())
          throw Error("S+ image escaped the expected sector");
        m[up->second.pos.at(bits)][c] = *rat;
      }
    }
    auto null = rational_nullspace(std::move(m), cols);
    if (null.empty()) continue;
    auto ortho = gram_schmidt(null);
    Sector s;
    s.q = q;
    s.twice_spin = tsz;  // S = Sz for highest-weight states
    for (const auto& w : ortho) {
      Rational n2 = dot(w, w);
      Scalar inv_norm = Scalar::sqrt(Rational(1) / n2);
      BasisState st;
      for (size_t i = 0; i < w.size(); ++i) {
        if (w[i].is_zero()) continue;
        st.comps.emplace_back(sec.kets[i], Scalar::of(w[i]) * inv_norm);
      }
      s.states.push_back(std::move(st));
    }
    out.sectors.push_back(std::move(s));
  }
  return out;
}

}  // namespace sq
