#include "sq/sums.hpp"

#include <algorithm>
#include <set>

namespace sq {

namespace {

void collect_scalar_atoms(const Scalar& s, std::set<std::string>& out) {
  for (const auto& m : s.monomials()) {
    for (const auto& p : m.params) {
      for (const auto& i : p.indexes) {
        if (i.is_atom()) out.insert(i.name());
      }
    }
    for (const auto& d : m.deltas) {
      if (d.lo.is_atom()) out.insert(d.lo.name());
      if (d.hi.is_atom()) out.insert(d.hi.name());
    }
  }
}

void collect_factor_atoms(const Factor& f, std::set<std::string>& out) {
  if (const auto* op = std::get_if<OperatorFactor>(&f)) {
    for (const auto& i : op->indexes) {
      if (i.is_atom()) out.insert(i.name());
    }
  } else if (const auto* k = std::get_if<KetFactor>(&f)) {
    for (const auto& s : k->slots) {
      if (s && s->is_atom()) out.insert(s->name());
    }
  } else if (const auto* b = std::get_if<BraFactor>(&f)) {
    for (const auto& s : b->slots) {
      if (s && s->is_atom()) out.insert(s->name());
    }
  }
}

std::set<std::string> term_atoms(const SumTerm& t) {
  std::set<std::string> out;
  for (const auto& f : t.body.factors) collect_factor_atoms(f, out);
  collect_scalar_atoms(t.body.coeff, out);
  collect_scalar_atoms(t.outer, out);
  return out;
}

Factor rename_factor_atom(const Factor& f, const Index& from, const Index& to) {
  Factor g = f;
  if (auto* op = std::get_if<OperatorFactor>(&g)) {
    for (auto& i : op->indexes) {
      if (i == from) i = to;
    }
  } else if (auto* k = std::get_if<KetFactor>(&g)) {
    for (auto& s : k->slots) {
      if (s && *s == from) s = to;
    }
  } else if (auto* b = std::get_if<BraFactor>(&g)) {
    for (auto& s : b->slots) {
      if (s && *s == from) s = to;
    }
  }
  return g;
}

Term rename_term_atom(const Term& t, const Index& from, const Index& to) {
  Term u;
  u.coeff = scalar_rename_index(t.coeff, from, to);
  u.factors.reserve(t.factors.size());
  for (const auto& f : t.factors) u.factors.push_back(rename_factor_atom(f, from, to));
  return u;
}

int cmp_dummies(const std::vector<Index>& a, const std::vector<Index>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return -1;
    if (b[i] < a[i]) return 1;
  }
  return 0;
}

// Order for storage/merging; the outer coefficient is excluded.
int cmp_sum_term(const SumTerm& x, const SumTerm& y) {
  int c = cmp_dummies(x.dummies, y.dummies);
  if (c != 0) return c;
  if (x.body.factors.size() != y.body.factors.size())
    return x.body.factors.size() < y.body.factors.size() ? -1 : 1;
  for (size_t i = 0; i < x.body.factors.size(); ++i) {
    if (factor_storage_less(x.body.factors[i], y.body.factors[i])) return -1;
    if (factor_storage_less(y.body.factors[i], x.body.factors[i])) return 1;
  }
  if (x.body.coeff != y.body.coeff)
    return Scalar::less(x.body.coeff, y.body.coeff) ? -1 : 1;
  return 0;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  for (int n = 1;; ++n) {
    std::string cand = base + std::to_string(n);
    if (!avoid.count(cand)) return cand;
  }
}

void warn(std::vector<std::string>* warnings, const std::string& msg) {
  if (!warnings) return;
  if (std::find(warnings->begin(), warnings->end(), msg) == warnings->end())
    warnings->push_back(msg);
}

}  // namespace

bool SumExpr::has_sums() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const SumTerm& t) { return !t.dummies.empty(); });
}

void SumExpr::add_term(SumTerm t) {
  if (t.outer.is_zero() || t.body.coeff.is_zero()) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), t,
                             [](const SumTerm& x, const SumTerm& y) {
                               return cmp_sum_term(x, y) < 0;
                             });
  if (it != terms_.end() && cmp_sum_term(*it, t) == 0) {
    it->outer += t.outer;
    if (it->outer.is_zero()) terms_.erase(it);
  } else {
    terms_.insert(it, std::move(t));
  }
}

SumExpr SumExpr::operator-() const {
  SumExpr r = *this;
  for (auto& t : r.terms_) t.outer = -t.outer;
  return r;
}

SumExpr& SumExpr::operator+=(const SumExpr& o) {
  for (const auto& t : o.terms_) add_term(t);
  return *this;
}

SumExpr& SumExpr::operator-=(const SumExpr& o) {
  for (const auto& t : o.terms_) {
    SumTerm u = t;
    u.outer = -u.outer;
    add_term(std::move(u));
  }
  return *this;
}

SumExpr SumExpr::scaled(const Scalar& s) const {
  SumExpr r;
  for (const auto& t : terms_) {
    SumTerm u = t;
    u.outer *= s;
    r.add_term(std::move(u));
  }
  return r;
}

Expr SumExpr::to_expr() const {
  Expr e;
  for (const auto& t : terms_) {
    if (!t.dummies.empty())
      throw Error("expression contains an unevaluated symbolic sum");
    Term u = t.body;
    u.coeff *= t.outer;
    e.add_term(std::move(u));
  }
  return e;
}

bool operator==(const SumExpr& a, const SumExpr& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i) {
    if (cmp_sum_term(a.terms_[i], b.terms_[i]) != 0) return false;
    if (!(a.terms_[i].outer == b.terms_[i].outer)) return false;
  }
  return true;
}

SumExpr sum_make(const Context& ctx, const Expr& body, std::vector<Index> dummies,
                 std::vector<std::string>* warnings) {
  for (const auto& d : dummies) {
    if (!d.is_atom()) throw Error("summation index must be a symbolic atom: " + d.str());
  }
  std::sort(dummies.begin(), dummies.end());
  dummies.erase(std::unique(dummies.begin(), dummies.end()), dummies.end());

  Expr canonical = canonicalize(ctx, body);
  SumExpr out;
  for (const auto& t : canonical.terms()) {
    for (const auto& m : t.coeff.monomials()) {
      auto depends = [&](const Index& i) {
        return i.is_atom() &&
               std::binary_search(dummies.begin(), dummies.end(), i);
      };
      Monomial dep, indep;
      indep.coeff = m.coeff;
      indep.imag = m.imag;
      indep.root = m.root;
      for (const auto& p : m.params) {
        bool d = std::any_of(p.indexes.begin(), p.indexes.end(), depends);
        (d ? dep : indep).params.push_back(p);
      }
      for (const auto& d : m.deltas) {
        bool dd = depends(d.lo) || depends(d.hi);
        (dd ? dep : indep).deltas.push_back(d);
      }
      SumTerm st;
      st.outer = Scalar::of_monomial(indep);
      st.body.coeff = Scalar::of_monomial(dep);
      st.body.factors = t.factors;
      std::set<std::string> used;
      for (const auto& f : st.body.factors) collect_factor_atoms(f, used);
      collect_scalar_atoms(st.body.coeff, used);
      for (const auto& d : dummies) {
        if (used.count(d.name())) {
          st.dummies.push_back(d);
        } else {
          warn(warnings, "dropped summation index " + d.name() +
                             ": the summand does not depend on it");
        }
      }
      out.add_term(std::move(st));
    }
  }
  return out;
}

SumExpr sum_lift(const Context& ctx, const Expr& e) {
  return sum_make(ctx, e, {}, nullptr);
}

SumExpr sum_nc(const Context& ctx, const SumExpr& a, const SumExpr& b,
               std::vector<std::string>* warnings) {
  SumExpr out;
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      SumTerm x = ta;
      SumTerm y = tb;
      // The avoid set is symmetric in the operands so that commutators see
      // identical replacement names in both orders.
      std::set<std::string> avoid = term_atoms(x);
      {
        auto more = term_atoms(y);
        avoid.insert(more.begin(), more.end());
      }
      std::set<std::string> x_atoms = term_atoms(x);
      std::set<std::string> y_frees;
      {
        auto ya = term_atoms(y);
        std::set<std::string> yd;
        for (const auto& d : y.dummies) yd.insert(d.name());
        for (const auto& n : ya) {
          if (!yd.count(n)) y_frees.insert(n);
        }
      }
      // Rename y's dummies that collide with anything in x.
      for (auto& d : y.dummies) {
        if (!x_atoms.count(d.name())) continue;
        std::string nn = fresh_name(d.name(), avoid);
        avoid.insert(nn);
        Index to = Index::atom(nn);
        y.body = rename_term_atom(y.body, d, to);
        d = to;
      }
      std::sort(y.dummies.begin(), y.dummies.end());
      // Rename x's dummies that would capture a free index of y.
      for (auto& d : x.dummies) {
        if (!y_frees.count(d.name())) continue;
        std::string nn = fresh_name(d.name(), avoid);
        avoid.insert(nn);
        Index to = Index::atom(nn);
        x.body = rename_term_atom(x.body, d, to);
        d = to;
      }
      std::sort(x.dummies.begin(), x.dummies.end());

      Expr prod = nc(ctx, {Expr::raw(x.body), Expr::raw(y.body)});
      std::vector<Index> dummies = x.dummies;
      dummies.insert(dummies.end(), y.dummies.begin(), y.dummies.end());
      SumExpr piece = sum_make(ctx, prod, std::move(dummies), warnings);
      out += piece.scaled(x.outer * y.outer);
    }
  }
  return out;
}

namespace {

// One delta-sifting step: delta(d, x) with d a dummy becomes the
// substitution d -> x. Returns false when no dummy-bearing delta remains.
bool collapse_one_delta(SumTerm& t) {
  const auto& ms = t.body.coeff.monomials();
  if (ms.size() != 1) throw Error("sum body coefficient is not a single monomial");
  auto is_dummy = [&](const Index& i) {
    return i.is_atom() && std::binary_search(t.dummies.begin(), t.dummies.end(), i);
  };
  for (const auto& d : ms[0].deltas) {
    Index from, to;
    if (is_dummy(d.hi)) {
      from = d.hi;
      to = d.lo;
    } else if (is_dummy(d.lo)) {
      from = d.lo;
      to = d.hi;
    } else {
      continue;
    }
    t.body = rename_term_atom(t.body, from, to);
    t.dummies.erase(std::find(t.dummies.begin(), t.dummies.end(), from));
    return true;
  }
  return false;
}

// Renames dummies to the fixed sequence j1, j2, ... in order of first
// appearance in the canonical body (skipping names that are free).
void canonical_dummy_names(SumTerm& t) {
  if (t.dummies.empty()) return;
  std::set<std::string> dummy_names;
  for (const auto& d : t.dummies) dummy_names.insert(d.name());
  std::vector<Index> order;
  auto see = [&](const Index& i) {
    if (!i.is_atom() || !dummy_names.count(i.name())) return;
    if (std::find(order.begin(), order.end(), i) == order.end()) order.push_back(i);
  };
  for (const auto& f : t.body.factors) {
    if (const auto* op = std::get_if<OperatorFactor>(&f)) {
      for (const auto& i : op->indexes) see(i);
    } else if (const auto* k = std::get_if<KetFactor>(&f)) {
      for (const auto& s : k->slots) {
        if (s) see(*s);
      }
    } else if (const auto* b = std::get_if<BraFactor>(&f)) {
      for (const auto& s : b->slots) {
        if (s) see(*s);
      }
    }
  }
  for (const auto& m : t.body.coeff.monomials()) {
    for (const auto& p : m.params) {
      for (const auto& i : p.indexes) see(i);
    }
    for (const auto& d : m.deltas) {
      see(d.lo);
      see(d.hi);
    }
  }
  for (const auto& d : t.dummies) see(d);  // safety: unused should not happen

  std::set<std::string> frees = term_atoms(t);
  for (const auto& n : dummy_names) frees.erase(n);

  // Two passes through temporaries so that swaps stay sound.
  std::vector<Index> temps, targets;
  for (size_t i = 0; i < order.size(); ++i)
    temps.push_back(Index::atom("#tmp" + std::to_string(i)));
  int n = 1;
  for (size_t i = 0; i < order.size(); ++i) {
    std::string cand;
    do {
      cand = "j" + std::to_string(n++);
    } while (frees.count(cand));
    targets.push_back(Index::atom(cand));
  }
  for (size_t i = 0; i < order.size(); ++i)
    t.body = rename_term_atom(t.body, order[i], temps[i]);
  for (size_t i = 0; i < order.size(); ++i)
    t.body = rename_term_atom(t.body, temps[i], targets[i]);
  t.dummies = targets;
  std::sort(t.dummies.begin(), t.dummies.end());
}

}  // namespace

SumExpr sum_simplify(const Context& ctx, const SumExpr& s) {
  SumExpr out;
  std::vector<SumTerm> work(s.terms().begin(), s.terms().end());
  while (!work.empty()) {
    SumTerm t = std::move(work.back());
    work.pop_back();
    if (t.outer.is_zero() || t.body.coeff.is_zero()) continue;
    if (collapse_one_delta(t)) {
      // Substitution may enable contractions and may free parts of the
      // coefficient from the remaining dummies; re-split via sum_make.
      SumExpr piece =
          sum_make(ctx, Expr::raw(t.body), t.dummies, nullptr).scaled(t.outer);
      for (const auto& u : piece.terms()) work.push_back(u);
      continue;
    }
    canonical_dummy_names(t);
    out.add_term(std::move(t));
  }
  return out;
}

bool sum_equal(const Context& ctx, const SumExpr& a, const SumExpr& b) {
  return sum_simplify(ctx, a) == sum_simplify(ctx, b);
}

SumExpr sum_commutator(const Context& ctx, const SumExpr& a, const SumExpr& b) {
  // Rename colliding dummies of the second operand once, up front, so both
  // product orders see identical names and equal terms cancel structurally.
  std::set<std::string> a_atoms;
  for (const auto& t : a.terms()) {
    auto more = term_atoms(t);
    a_atoms.insert(more.begin(), more.end());
    for (const auto& d : t.dummies) a_atoms.insert(d.name());
  }
  SumExpr b2;
  for (SumTerm t : b.terms()) {
    std::set<std::string> avoid = a_atoms;
    auto own = term_atoms(t);
    avoid.insert(own.begin(), own.end());
    for (auto& d : t.dummies) {
      if (!a_atoms.count(d.name())) continue;
      std::string nn = fresh_name(d.name(), avoid);
      avoid.insert(nn);
      Index to = Index::atom(nn);
      t.body = rename_term_atom(t.body, d, to);
      d = to;
    }
    std::sort(t.dummies.begin(), t.dummies.end());
    b2.add_term(std::move(t));
  }
  return sum_nc(ctx, a, b2) - sum_nc(ctx, b2, a);
}

}  // namespace sq
