#include "sq/wick.hpp"

#include <algorithm>

namespace sq {

namespace {

bool fermi_sea_occupied(const Context& ctx, const SymbolDecl& d, const OperatorFactor& f) {
  const Index& mom = f.indexes.at(0);
  if (!mom.is_integer())
    throw Error("Fermi-sea contraction requires a numeric momentum index on symbol " +
                d.name);
  std::int64_t k = mom.value();
  if (k < 0) return true;
  if (k > 0) return false;
  if (!ctx.options().fermi_level_occupied)
    throw Error("momentum index at the Fermi level on symbol " + d.name +
                " requires the fermi_level_occupied policy");
  return true;
}

Scalar index_deltas(const OperatorFactor& a, const OperatorFactor& b) {
  if (a.indexes.size() != b.indexes.size())
    throw Error("index arity mismatch in contraction");
  Scalar s = Scalar::one();
  for (size_t i = 0; i < a.indexes.size(); ++i) {
    s *= Scalar::delta(a.indexes[i], b.indexes[i]);
    if (s.is_zero()) break;
  }
  return s;
}

}  // namespace

Scalar elementary_contraction(const Context& ctx, const OperatorFactor& a,
                              const OperatorFactor& b) {
  if (a.sym != b.sym) return Scalar::zero();
  const SymbolDecl& d = ctx.symbol(a.sym);
  switch (d.statistics) {
    case Statistics::Boson:
      if (a.kind == OpKind::Annihilate && b.kind == OpKind::Create)
        return index_deltas(a, b);
      return Scalar::zero();
    case Statistics::MajoranaFermion:
      // {g_a, g_b} = delta_ab, so <g_a g_b> = delta_ab / 2.
      return index_deltas(a, b) * Scalar::of(Rational(1, 2));
    case Statistics::DiracFermion:
      break;
  }
  if (d.vacuum == VacuumKind::EmptyBand) {
    if (a.kind == OpKind::Annihilate && b.kind == OpKind::Create)
      return index_deltas(a, b);
    return Scalar::zero();
  }
  // Fermi sea: <c_k c+_k> needs the level empty, <c+_k c_k> needs it filled.
  if (a.kind == b.kind) return Scalar::zero();
  bool occ = fermi_sea_occupied(ctx, d, a);
  if (a.kind == OpKind::Annihilate) return occ ? Scalar::zero() : index_deltas(a, b);
  return occ ? index_deltas(a, b) : Scalar::zero();
}

namespace {

bool is_fermionic(const Context& ctx, const OperatorFactor& f) {
  return ctx.symbol(f.sym).statistics != Statistics::Boson;
}

// Kind-level contractibility: the pair may still carry index deltas that
// evaluate to zero, which is how "vanishing" pairings are counted.
bool structurally_contractible(const Context& ctx, const OperatorFactor& a,
                               const OperatorFactor& b) {
  if (a.sym != b.sym) return false;
  const SymbolDecl& d = ctx.symbol(a.sym);
  switch (d.statistics) {
    case Statistics::Boson:
      return a.kind == OpKind::Annihilate && b.kind == OpKind::Create;
    case Statistics::MajoranaFermion:
      return true;
    case Statistics::DiracFermion:
      break;
  }
  if (d.vacuum == VacuumKind::EmptyBand)
    return a.kind == OpKind::Annihilate && b.kind == OpKind::Create;
  return a.kind != b.kind;
}

void enumerate_pairings(const Context& ctx, const std::vector<OperatorFactor>& factors,
                        std::vector<int>& open, std::vector<std::pair<int, int>>& cur,
                        std::vector<Pairing>& out, bool fermionic) {
  if (open.empty()) {
    Pairing p;
    p.pairs = cur;
    std::sort(p.pairs.begin(), p.pairs.end());
    if (fermionic) {
      int crossings = 0;
      for (size_t x = 0; x < p.pairs.size(); ++x) {
        for (size_t y = x + 1; y < p.pairs.size(); ++y) {
          // (i1 < i2 < j1 < j2) counts as one crossing
          if (p.pairs[x].first < p.pairs[y].first &&
              p.pairs[y].first < p.pairs[x].second &&
              p.pairs[x].second < p.pairs[y].second)
            ++crossings;
        }
      }
      p.sign = (crossings % 2 == 0) ? 1 : -1;
    }
    out.push_back(std::move(p));
    return;
  }
  int first = open.front();
  for (size_t j = 1; j < open.size(); ++j) {
    int partner = open[j];
    if (!structurally_contractible(ctx, factors[size_t(first)], factors[size_t(partner)]))
      continue;
    std::vector<int> rest;
    rest.reserve(open.size() - 2);
    for (size_t k = 1; k < open.size(); ++k) {
      if (k != j) rest.push_back(open[k]);
    }
    cur.emplace_back(first, partner);
    enumerate_pairings(ctx, factors, rest, cur, out, fermionic);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Pairing> contractions(const Context& ctx,
                                  const std::vector<OperatorFactor>& factors) {
  if (factors.size() % 2 != 0) return {};
  if (factors.empty()) return {Pairing{}};
  bool any_bose = false, any_fermi = false;
  for (const auto& f : factors) (is_fermionic(ctx, f) ? any_fermi : any_bose) = true;
  if (any_bose && any_fermi)
    throw Error("contraction enumeration requires factors of one statistics");
  std::vector<int> open(factors.size());
  for (size_t i = 0; i < open.size(); ++i) open[i] = int(i);
  std::vector<std::pair<int, int>> cur;
  std::vector<Pairing> out;
  enumerate_pairings(ctx, factors, open, cur, out, any_fermi);
  return out;
}

namespace {

// <f_0 f_1 ... f_n> = sum_j (-1)^(j-1) <f_0 f_j> <f_1 ... without f_j ...>
Scalar wick_recurse(const Context& ctx, std::vector<OperatorFactor>& seq, bool fermionic) {
  if (seq.empty()) return Scalar::one();
  if (seq.size() % 2 != 0) return Scalar::zero();
  Scalar total = Scalar::zero();
  OperatorFactor head = seq.front();
  for (size_t j = 1; j < seq.size(); ++j) {
    Scalar elem = elementary_contraction(ctx, head, seq[j]);
    if (elem.is_zero()) continue;
    if (fermionic && (j % 2 == 0)) elem = -elem;
    std::vector<OperatorFactor> rest;
    rest.reserve(seq.size() - 2);
    for (size_t k = 1; k < seq.size(); ++k) {
      if (k != j) rest.push_back(seq[k]);
    }
    total += elem * wick_recurse(ctx, rest, fermionic);
  }
  return total;
}

}  // namespace

Expr vev(const Context& ctx, const Expr& e) {
  validate_expr(ctx, e);
  Expr out;
  for (const auto& t : e.terms()) {
    std::vector<OperatorFactor> fermions, bosons;
    std::vector<Factor> grassmanns;
    int sign = 1;
    int fermions_seen = 0;
    for (const auto& f : t.factors) {
      if (const auto* op = std::get_if<OperatorFactor>(&f)) {
        if (ctx.symbol(op->sym).statistics == Statistics::Boson) {
          bosons.push_back(*op);
        } else {
          fermions.push_back(*op);
          ++fermions_seen;
        }
      } else if (std::holds_alternative<GrassmannFactor>(f)) {
        if (fermions_seen & 1) sign = -sign;
        grassmanns.push_back(f);
      } else {
        throw Error("vacuum expectation value of a term with state factors");
      }
    }
    Scalar value = wick_recurse(ctx, fermions, true);
    if (value.is_zero()) continue;
    value *= wick_recurse(ctx, bosons, false);
    if (value.is_zero()) continue;
    Term u;
    u.coeff = t.coeff * value;
    if (sign < 0) u.coeff = -u.coeff;
    u.factors = std::move(grassmanns);
    out.add_term(std::move(u));
  }
  return out;
}

Expr vev_fermisea(const Context& ctx, const Expr& e) { return vev(ctx, e); }

Scalar vev_scalar(const Context& ctx, const Expr& e) {
  auto s = vev(ctx, e).as_scalar();
  if (!s) throw Error("vacuum expectation value is Grassmann-valued");
  return *s;
}

Expr normal_order(const Context& ctx, const Expr& e) {
  return canonicalize(ctx, e) - vev(ctx, e);
}

}  // namespace sq
