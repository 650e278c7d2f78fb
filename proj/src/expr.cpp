#include "sq/expr.hpp"

#include <algorithm>
#include <map>

namespace sq {

namespace {

int op_kind_rank(const std::optional<OpKind>& k) {
  if (!k) return 2;
  return int(*k);
}

int cmp_indexes(const std::vector<Index>& a, const std::vector<Index>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return -1;
    if (b[i] < a[i]) return 1;
  }
  return 0;
}

int cmp_slots(const std::vector<std::optional<Index>>& a,
              const std::vector<std::optional<Index>>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i) {
    bool ha = a[i].has_value(), hb = b[i].has_value();
    if (ha != hb) return ha ? 1 : -1;
    if (ha) {
      if (*a[i] < *b[i]) return -1;
      if (*b[i] < *a[i]) return 1;
    }
  }
  return 0;
}

int cmp_factor_storage(const Factor& a, const Factor& b) {
  if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
  switch (a.index()) {
    case 0: {
      const auto& x = std::get<GrassmannFactor>(a);
      const auto& y = std::get<GrassmannFactor>(b);
      return x.name < y.name ? -1 : (y.name < x.name ? 1 : 0);
    }
    case 1: {
      const auto& x = std::get<OperatorFactor>(a);
      const auto& y = std::get<OperatorFactor>(b);
      if (x.sym != y.sym) return x.sym < y.sym ? -1 : 1;
      if (op_kind_rank(x.kind) != op_kind_rank(y.kind))
        return op_kind_rank(x.kind) < op_kind_rank(y.kind) ? -1 : 1;
      return cmp_indexes(x.indexes, y.indexes);
    }
    case 2:
      return cmp_slots(std::get<BraFactor>(a).slots, std::get<BraFactor>(b).slots);
    case 3:
      return cmp_slots(std::get<KetFactor>(a).slots, std::get<KetFactor>(b).slots);
    case 4: {
      const auto& x = std::get<VcBraFactor>(a).bits;
      const auto& y = std::get<VcBraFactor>(b).bits;
      return x < y ? -1 : (y < x ? 1 : 0);
    }
    default: {
      const auto& x = std::get<VcKetFactor>(a).bits;
      const auto& y = std::get<VcKetFactor>(b).bits;
      return x < y ? -1 : (y < x ? 1 : 0);
    }
  }
}

int cmp_factor_seq(const std::vector<Factor>& a, const std::vector<Factor>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i) {
    int c = cmp_factor_storage(a[i], b[i]);
    if (c != 0) return c;
  }
  return 0;
}

}  // namespace

bool factor_equal(const Factor& a, const Factor& b) {
  return cmp_factor_storage(a, b) == 0;
}

bool factor_storage_less(const Factor& a, const Factor& b) {
  return cmp_factor_storage(a, b) < 0;
}

// ---------------------------------------------------------------------------
// Expr basics

Expr Expr::scalar(const Scalar& s) {
  Expr e;
  if (!s.is_zero()) {
    Term t;
    t.coeff = s;
    e.terms_.push_back(std::move(t));
  }
  return e;
}

Expr Expr::raw(Term t) {
  Expr e;
  if (!t.coeff.is_zero()) e.terms_.push_back(std::move(t));
  return e;
}

std::optional<Scalar> Expr::as_scalar() const {
  if (terms_.empty()) return Scalar::zero();
  if (terms_.size() == 1 && terms_[0].factors.empty()) return terms_[0].coeff;
  return std::nullopt;
}

void Expr::add_term(Term t) {
  if (t.coeff.is_zero()) return;
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), t, [](const Term& x, const Term& y) {
        return cmp_factor_seq(x.factors, y.factors) < 0;
      });
  if (it != terms_.end() && cmp_factor_seq(it->factors, t.factors) == 0) {
    it->coeff += t.coeff;
    if (it->coeff.is_zero()) terms_.erase(it);
  } else {
    terms_.insert(it, std::move(t));
  }
}

Expr Expr::operator-() const {
  Expr r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Expr& Expr::operator+=(const Expr& o) {
  for (const auto& t : o.terms_) add_term(t);
  return *this;
}

Expr& Expr::operator-=(const Expr& o) {
  for (const auto& t : o.terms_) {
    Term u = t;
    u.coeff = -u.coeff;
    add_term(std::move(u));
  }
  return *this;
}

Expr Expr::scaled(const Scalar& s) const {
  Expr r;
  for (const auto& t : terms_) {
    Term u = t;
    u.coeff *= s;
    r.add_term(std::move(u));
  }
  return r;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i) {
    if (cmp_factor_seq(a.terms_[i].factors, b.terms_[i].factors) != 0) return false;
    if (!(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Factor constructors

namespace {

Factor make_op(const Context& ctx, const std::string& sym, std::optional<OpKind> kind,
               std::vector<Index> indexes) {
  SymbolId id = ctx.symbol_id(sym);
  const SymbolDecl& d = ctx.symbol(id);
  if (d.statistics == Statistics::MajoranaFermion) {
    if (kind) throw Error("Majorana symbol has no creation/annihilation slot: " + sym);
  } else if (!kind) {
    throw Error("symbol requires a creation/annihilation slot: " + sym);
  }
  return OperatorFactor{id, kind, std::move(indexes)};
}

}  // namespace

Factor cr_factor(const Context& ctx, const std::string& sym, std::vector<Index> indexes) {
  return make_op(ctx, sym, OpKind::Create, std::move(indexes));
}
Factor an_factor(const Context& ctx, const std::string& sym, std::vector<Index> indexes) {
  return make_op(ctx, sym, OpKind::Annihilate, std::move(indexes));
}
Factor majorana_factor(const Context& ctx, const std::string& sym, std::vector<Index> indexes) {
  return make_op(ctx, sym, std::nullopt, std::move(indexes));
}

Expr cr(const Context& ctx, const std::string& sym, std::vector<Index> indexes) {
  return Expr::raw(Term{Scalar::one(), {cr_factor(ctx, sym, std::move(indexes))}});
}
Expr an(const Context& ctx, const std::string& sym, std::vector<Index> indexes) {
  return Expr::raw(Term{Scalar::one(), {an_factor(ctx, sym, std::move(indexes))}});
}
Expr majorana(const Context& ctx, const std::string& sym, std::vector<Index> indexes) {
  return Expr::raw(Term{Scalar::one(), {majorana_factor(ctx, sym, std::move(indexes))}});
}

Expr grassmann(const Context& ctx, const std::string& name) {
  if (!ctx.has_param(name) || ctx.param_kind(name) != ParamKind::GrassmannConst)
    throw Error("not declared as a Grassmann constant: " + name);
  return Expr::raw(Term{Scalar::one(), {GrassmannFactor{name}}});
}

Expr ket(std::vector<std::optional<Index>> slots) {
  return Expr::raw(Term{Scalar::one(), {KetFactor{std::move(slots)}}});
}
Expr bra(std::vector<std::optional<Index>> slots) {
  return Expr::raw(Term{Scalar::one(), {BraFactor{std::move(slots)}}});
}
Expr vc_ket(std::vector<std::uint8_t> bits) {
  return Expr::raw(Term{Scalar::one(), {VcKetFactor{std::move(bits)}}});
}
Expr vc_bra(std::vector<std::uint8_t> bits) {
  return Expr::raw(Term{Scalar::one(), {VcBraFactor{std::move(bits)}}});
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void validate_term(const Context& ctx, const Term& t,
                   std::map<SymbolId, size_t>& arity) {
  for (const auto& f : t.factors) {
    if (const auto* op = std::get_if<OperatorFactor>(&f)) {
      if (op->sym < 0 || size_t(op->sym) >= ctx.symbol_count())
        throw Error("operator references an unknown symbol id");
      const SymbolDecl& d = ctx.symbol(op->sym);
      if (d.statistics == Statistics::MajoranaFermion) {
        if (op->kind) throw Error("Majorana symbol has no creation/annihilation slot: " + d.name);
      } else if (!op->kind) {
        throw Error("missing creation/annihilation slot on symbol: " + d.name);
      }
      auto [it, fresh] = arity.emplace(op->sym, op->indexes.size());
      if (!fresh && it->second != op->indexes.size())
        throw Error("index arity mismatch for symbol " + d.name + ": " +
                    std::to_string(it->second) + " vs " +
                    std::to_string(op->indexes.size()));
      if (d.vacuum == VacuumKind::FermiSea && op->indexes.empty())
        throw Error("Fermi-sea symbol requires a momentum index: " + d.name);
      if (d.twice_spin) {
        if (op->indexes.empty())
          throw Error("spinful symbol requires a spin projection index: " + d.name);
        const Index& sp = op->indexes.back();
        if (sp.is_integer() && (sp.value() < 0 || sp.value() > *d.twice_spin))
          throw Error("spin projection out of range for symbol " + d.name + ": " +
                      sp.str());
      }
    } else if (const auto* gz = std::get_if<GrassmannFactor>(&f)) {
      if (!ctx.has_param(gz->name) ||
          ctx.param_kind(gz->name) != ParamKind::GrassmannConst)
        throw Error("not declared as a Grassmann constant: " + gz->name);
    } else if (const auto* vk = std::get_if<VcKetFactor>(&f)) {
      if (!ctx.orbitals().empty() && vk->bits.size() != ctx.orbitals().size())
        throw Error("occupation vector length does not match the registered orbitals");
    } else if (const auto* vb = std::get_if<VcBraFactor>(&f)) {
      if (!ctx.orbitals().empty() && vb->bits.size() != ctx.orbitals().size())
        throw Error("occupation vector length does not match the registered orbitals");
    }
  }
}

}  // namespace

void validate_expr(const Context& ctx, const Expr& e) {
  std::map<SymbolId, size_t> arity;
  for (const auto& t : e.terms()) validate_term(ctx, t, arity);
}

// ---------------------------------------------------------------------------
// Canonical reordering engine.
//
// Terms are rebuilt by inserting factors one at a time at the right end of
// an already-canonical factor list and bubbling them left. Each adjacent
// rewrite either swaps (possibly with a sign), contracts into a
// Kronecker-delta term, evaluates a state pair to a scalar, merges kets,
// or kills the term. Inserted delta terms are canonical by construction,
// so the whole pass stays polynomial in the size of the merged output.

namespace {

// Movement category of a factor.
enum class MClass { Grassmann, Boson, Majorana, Dirac, Bra, Ket, VcState, Frozen };

MClass mclass(const Context& ctx, const Factor& f) {
  switch (f.index()) {
    case 0:
      return MClass::Grassmann;
    case 1: {
      const auto& op = std::get<OperatorFactor>(f);
      const SymbolDecl& d = ctx.symbol(op.sym);
      if (!d.reorder) return MClass::Frozen;
      switch (d.statistics) {
        case Statistics::Boson:
          return MClass::Boson;
        case Statistics::MajoranaFermion:
          return MClass::Majorana;
        case Statistics::DiracFermion:
          return MClass::Dirac;
      }
      return MClass::Dirac;
    }
    case 2:
      return MClass::Bra;
    case 3:
      return MClass::Ket;
    default:
      return MClass::VcState;
  }
}

// Fermi-sea aware normal class: 0 = belongs in the left block,
// 1 = annihilates the symbol's vacuum and belongs in the right block.
int normal_class(const Context& ctx, const OperatorFactor& f) {
  const SymbolDecl& d = ctx.symbol(f.sym);
  if (d.vacuum == VacuumKind::EmptyBand)
    return f.kind == OpKind::Create ? 0 : 1;
  const Index& mom = f.indexes.at(0);
  if (!mom.is_integer())
    throw Error("Fermi-sea reordering requires a numeric momentum index on symbol " +
                d.name);
  std::int64_t k = mom.value();
  bool occupied;
  if (k < 0) {
    occupied = true;
  } else if (k > 0) {
    occupied = false;
  } else {
    if (!ctx.options().fermi_level_occupied)
      throw Error("momentum index at the Fermi level on symbol " + d.name +
                  " requires the fermi_level_occupied policy");
    occupied = true;
  }
  bool annihilates_sea = (f.kind == OpKind::Annihilate) ? !occupied : occupied;
  return annihilates_sea ? 1 : 0;
}

// Key order inside normal blocks: (symbol name, CR/AN, index tuple),
// ascending in the left block, descending in the right block, so that
// conjugation maps canonical forms onto canonical forms.
int cmp_block_key(const Context& ctx, const OperatorFactor& a, const OperatorFactor& b) {
  int ra = ctx.name_rank(a.sym), rb = ctx.name_rank(b.sym);
  if (ra != rb) return ra < rb ? -1 : 1;
  int ka = op_kind_rank(a.kind), kb = op_kind_rank(b.kind);
  if (ka != kb) return ka < kb ? -1 : 1;
  return cmp_indexes(a.indexes, b.indexes);
}

// Strictly "f belongs left of g" for two enabled same-category operators.
bool op_before(const Context& ctx, const OperatorFactor& f, const OperatorFactor& g,
               bool fermionic_blocks) {
  int nf, ng;
  if (fermionic_blocks) {
    nf = normal_class(ctx, f);
    ng = normal_class(ctx, g);
  } else {
    nf = int(*f.kind);
    ng = int(*g.kind);
  }
  if (nf != ng) return nf < ng;
  int c = cmp_block_key(ctx, f, g);
  if (c == 0) return false;
  return nf == 0 ? c < 0 : c > 0;
}

Scalar delta_product(const OperatorFactor& a, const OperatorFactor& b) {
  if (a.indexes.size() != b.indexes.size())
    throw Error("index arity mismatch in contraction");
  Scalar s = Scalar::one();
  for (size_t i = 0; i < a.indexes.size(); ++i) {
    s *= Scalar::delta(a.indexes[i], b.indexes[i]);
    if (s.is_zero()) break;
  }
  return s;
}

std::vector<std::optional<Index>> merge_slot_lists(
    const std::vector<std::optional<Index>>& a,
    const std::vector<std::optional<Index>>& b) {
  if (a.size() != b.size())
    throw Error("cannot merge states with different slot counts");
  std::vector<std::optional<Index>> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] && b[i])
      throw Error("state merge collision in slot " + std::to_string(i + 1));
    out[i] = a[i] ? a[i] : b[i];
  }
  return out;
}

Scalar slot_inner(const std::vector<std::optional<Index>>& braslots,
                  const std::vector<std::optional<Index>>& ketslots) {
  if (braslots.size() != ketslots.size())
    throw Error("bra/ket slot count mismatch in scalar product");
  Scalar s = Scalar::one();
  for (size_t i = 0; i < braslots.size(); ++i) {
    if (!braslots[i] && !ketslots[i]) continue;  // undetermined vs undetermined
    if (!braslots[i] || !ketslots[i])
      throw Error("scalar product of an undetermined slot against a value in slot " +
                  std::to_string(i + 1));
    s *= Scalar::delta(*braslots[i], *ketslots[i]);
    if (s.is_zero()) break;
  }
  return s;
}

struct PairAction {
  enum Kind {
    Stop,          // f is in place
    Swap,          // commute f one step left, apply sign
    ContractSwap,  // emit delta term, then swap with sign
    PairScalar,    // both factors consumed into a scalar
    MergeKets,
    MergeBras,
    Zero,  // nilpotent square: the whole term vanishes
  } kind = Stop;
  int sign = 1;
  Scalar scalar;
};

// Decides what happens when factor f sits immediately right of g.
PairAction classify(const Context& ctx, const Factor& g, const Factor& f) {
  MClass cg = mclass(ctx, g);
  MClass cf = mclass(ctx, f);

  if (cf == MClass::Frozen) {
    // Reorder-disabled operators: concatenate as-is; only exact adjacent
    // duplicates of a Dirac factor vanish.
    if (cg == MClass::Frozen && factor_equal(g, f)) {
      const auto& op = std::get<OperatorFactor>(f);
      if (ctx.symbol(op.sym).statistics == Statistics::DiracFermion)
        return {PairAction::Zero, 1, {}};
    }
    return {PairAction::Stop, 1, {}};
  }

  switch (cf) {
    case MClass::Grassmann: {
      if (cg == MClass::Grassmann) {
        const auto& zf = std::get<GrassmannFactor>(f);
        const auto& zg = std::get<GrassmannFactor>(g);
        if (zf.name == zg.name) return {PairAction::Zero, 1, {}};
        if (zf.name < zg.name) return {PairAction::Swap, -1, {}};
        return {PairAction::Stop, 1, {}};
      }
      if (cg == MClass::Boson || cg == MClass::Bra || cg == MClass::Ket)
        return {PairAction::Swap, 1, {}};
      if (cg == MClass::Majorana || cg == MClass::Dirac)
        return {PairAction::Swap, -1, {}};
      return {PairAction::Stop, 1, {}};  // frozen / vc barriers
    }

    case MClass::Boson: {
      if (cg == MClass::Majorana || cg == MClass::Dirac)
        return {PairAction::Swap, 1, {}};  // bosons commute left of fermions
      if (cg == MClass::Bra || cg == MClass::Ket) return {PairAction::Swap, 1, {}};
      if (cg != MClass::Boson) return {PairAction::Stop, 1, {}};
      const auto& bf = std::get<OperatorFactor>(f);
      const auto& bg = std::get<OperatorFactor>(g);
      if (!op_before(ctx, bf, bg, /*fermionic_blocks=*/false))
        return {PairAction::Stop, 1, {}};
      if (bf.sym == bg.sym && bf.kind != bg.kind)
        return {PairAction::ContractSwap, 1, delta_product(bg, bf)};
      return {PairAction::Swap, 1, {}};
    }

    case MClass::Majorana: {
      if (cg == MClass::Dirac) return {PairAction::Swap, -1, {}};
      if (cg == MClass::Bra || cg == MClass::Ket) return {PairAction::Swap, 1, {}};
      if (cg != MClass::Majorana) return {PairAction::Stop, 1, {}};
      const auto& mf = std::get<OperatorFactor>(f);
      const auto& mg = std::get<OperatorFactor>(g);
      if (factor_equal(g, f))
        return {PairAction::PairScalar, 1, Scalar::of(Rational(1, 2))};
      int rf = ctx.name_rank(mf.sym), rg = ctx.name_rank(mg.sym);
      bool before = rf != rg ? rf < rg : cmp_indexes(mf.indexes, mg.indexes) < 0;
      if (!before) return {PairAction::Stop, 1, {}};
      if (mf.sym == mg.sym)
        return {PairAction::ContractSwap, -1, delta_product(mg, mf)};
      return {PairAction::Swap, -1, {}};
    }

    case MClass::Dirac: {
      if (cg == MClass::Bra || cg == MClass::Ket) return {PairAction::Swap, 1, {}};
      if (cg != MClass::Dirac) return {PairAction::Stop, 1, {}};
      const auto& df = std::get<OperatorFactor>(f);
      const auto& dg = std::get<OperatorFactor>(g);
      if (factor_equal(g, f)) return {PairAction::Zero, 1, {}};
      if (!op_before(ctx, df, dg, /*fermionic_blocks=*/true))
        return {PairAction::Stop, 1, {}};
      if (df.sym == dg.sym && df.kind != dg.kind)
        return {PairAction::ContractSwap, -1, delta_product(dg, df)};
      return {PairAction::Swap, -1, {}};
    }

    case MClass::Bra: {
      if (cg == MClass::Bra) return {PairAction::MergeBras, 1, {}};
      // A ket followed by a bra is an outer product; it stays as written.
      return {PairAction::Stop, 1, {}};
    }

    case MClass::Ket: {
      if (cg == MClass::Bra) {
        return {PairAction::PairScalar, 1,
                slot_inner(std::get<BraFactor>(g).slots, std::get<KetFactor>(f).slots)};
      }
      if (cg == MClass::Ket) return {PairAction::MergeKets, 1, {}};
      return {PairAction::Stop, 1, {}};
    }

    case MClass::VcState: {
      // vc states pass left through abstract bras/kets (unrelated
      // subspaces) and freeze against anything else.
      if (cg == MClass::Bra || cg == MClass::Ket) return {PairAction::Swap, 1, {}};
      bool f_ket = std::holds_alternative<VcKetFactor>(f);
      if (cg == MClass::VcState) {
        bool g_ket = std::holds_alternative<VcKetFactor>(g);
        if (!g_ket && f_ket) {
          const auto& vb = std::get<VcBraFactor>(g);
          const auto& vk = std::get<VcKetFactor>(f);
          if (vb.bits.size() != vk.bits.size())
            throw Error("occupation-vector length mismatch in scalar product");
          return {PairAction::PairScalar, 1,
                  vb.bits == vk.bits ? Scalar::one() : Scalar::zero()};
        }
        if (g_ket == f_ket)
          throw Error("term contains two occupation-number states of the same kind");
        return {PairAction::Stop, 1, {}};  // |v><w| outer product, frozen
      }
      return {PairAction::Stop, 1, {}};
    }

    case MClass::Frozen:
      break;  // handled above
  }
  return {PairAction::Stop, 1, {}};
}

// Accumulator merging terms by factor sequence.
struct TermAcc {
  struct SeqLess {
    bool operator()(const std::vector<Factor>& a, const std::vector<Factor>& b) const {
      return cmp_factor_seq(a, b) < 0;
    }
  };
  std::map<std::vector<Factor>, Scalar, SeqLess> acc;

  void add(Term t) {
    if (t.coeff.is_zero()) return;
    auto [it, fresh] = acc.emplace(std::move(t.factors), t.coeff);
    if (!fresh) it->second += t.coeff;
  }

  std::vector<Term> take() {
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [facs, coeff] : acc) {
      if (coeff.is_zero()) continue;
      out.push_back(Term{std::move(coeff), facs});
    }
    return out;
  }
};

// Inserts f at the right end of the canonical term t and restores
// canonical form; resulting terms go to out.
void insert_factor(const Context& ctx, Term t, const Factor& f, TermAcc& out) {
  auto& facs = t.factors;
  facs.push_back(f);
  size_t p = facs.size() - 1;
  while (p > 0) {
    PairAction a = classify(ctx, facs[p - 1], facs[p]);
    switch (a.kind) {
      case PairAction::Stop:
        out.add(std::move(t));
        return;
      case PairAction::Swap:
        if (a.sign < 0) t.coeff = -t.coeff;
        std::swap(facs[p - 1], facs[p]);
        --p;
        break;
      case PairAction::ContractSwap: {
        Scalar dc = t.coeff * a.scalar;
        if (!dc.is_zero()) {
          Term u;
          u.coeff = std::move(dc);
          u.factors.reserve(facs.size() - 2);
          for (size_t i = 0; i < facs.size(); ++i) {
            if (i != p - 1 && i != p) u.factors.push_back(facs[i]);
          }
          out.add(std::move(u));
        }
        if (a.sign < 0) t.coeff = -t.coeff;
        std::swap(facs[p - 1], facs[p]);
        --p;
        break;
      }
      case PairAction::PairScalar: {
        t.coeff *= a.scalar;
        facs.erase(facs.begin() + std::ptrdiff_t(p) - 1,
                   facs.begin() + std::ptrdiff_t(p) + 1);
        out.add(std::move(t));
        return;
      }
      case PairAction::MergeKets: {
        KetFactor merged{merge_slot_lists(std::get<KetFactor>(facs[p - 1]).slots,
                                          std::get<KetFactor>(facs[p]).slots)};
        facs[p - 1] = std::move(merged);
        facs.erase(facs.begin() + std::ptrdiff_t(p));
        out.add(std::move(t));
        return;
      }
      case PairAction::MergeBras: {
        BraFactor merged{merge_slot_lists(std::get<BraFactor>(facs[p - 1]).slots,
                                          std::get<BraFactor>(facs[p]).slots)};
        facs[p - 1] = std::move(merged);
        facs.erase(facs.begin() + std::ptrdiff_t(p));
        out.add(std::move(t));
        return;
      }
      case PairAction::Zero:
        return;
    }
  }
  out.add(std::move(t));
}

// Multiplies a canonical expression by one (possibly raw) expression.
Expr product(const Context& ctx, const Expr& canonical, const Expr& raw) {
  TermAcc out;
  for (const auto& a : canonical.terms()) {
    for (const auto& b : raw.terms()) {
      Scalar c = a.coeff * b.coeff;
      if (c.is_zero()) continue;
      // Insert b's factors one by one; each insertion can fan out.
      std::vector<Term> work{Term{std::move(c), a.factors}};
      for (const auto& f : b.factors) {
        TermAcc step;
        for (auto& t : work) insert_factor(ctx, std::move(t), f, step);
        work = step.take();
        if (work.empty()) break;
      }
      for (auto& t : work) out.add(std::move(t));
    }
  }
  Expr e;
  for (auto& t : out.take()) e.add_term(std::move(t));
  return e;
}

}  // namespace

Expr nc(const Context& ctx, std::span<const Expr> operands) {
  std::map<SymbolId, size_t> arity;
  for (const auto& e : operands) {
    for (const auto& t : e.terms()) validate_term(ctx, t, arity);
  }
  Expr acc = Expr::one();
  for (const auto& e : operands) acc = product(ctx, acc, e);
  return acc;
}

Expr nc(const Context& ctx, std::initializer_list<Expr> operands) {
  return nc(ctx, std::span<const Expr>(operands.begin(), operands.size()));
}

Expr canonicalize(const Context& ctx, const Expr& e) {
  return nc(ctx, {e});
}

Expr conj(const Context& ctx, const Expr& e) {
  Expr raw;
  for (const auto& t : e.terms()) {
    Term u;
    u.coeff = scalar_conj(ctx, t.coeff);
    u.factors.reserve(t.factors.size());
    for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) {
      const Factor& f = *it;
      switch (f.index()) {
        case 0:
          u.factors.push_back(f);  // Grassmann constants: order reversal only
          break;
        case 1: {
          OperatorFactor op = std::get<OperatorFactor>(f);
          if (op.kind)
            op.kind = (*op.kind == OpKind::Create) ? OpKind::Annihilate : OpKind::Create;
          u.factors.push_back(std::move(op));
          break;
        }
        case 2:
          u.factors.push_back(KetFactor{std::get<BraFactor>(f).slots});
          break;
        case 3:
          u.factors.push_back(BraFactor{std::get<KetFactor>(f).slots});
          break;
        case 4:
          u.factors.push_back(VcKetFactor{std::get<VcBraFactor>(f).bits});
          break;
        default:
          u.factors.push_back(VcBraFactor{std::get<VcKetFactor>(f).bits});
          break;
      }
    }
    raw.add_term(std::move(u));
  }
  return canonicalize(ctx, raw);
}

Expr commutator(const Context& ctx, const Expr& a, const Expr& b) {
  return nc(ctx, a, b) - nc(ctx, b, a);
}

Expr anticommutator(const Context& ctx, const Expr& a, const Expr& b) {
  return nc(ctx, a, b) + nc(ctx, b, a);
}

Expr substitute(const Context& ctx, const Expr& e, const Bindings& b) {
  Expr r;
  for (const auto& t : e.terms()) {
    Term u = t;
    u.coeff = scalar_substitute(ctx, t.coeff, b);
    r.add_term(std::move(u));
  }
  return r;
}

bool expr_equal(const Context& ctx, const Expr& a, const Expr& b) {
  return canonicalize(ctx, a) == canonicalize(ctx, b);
}

}  // namespace sq
