#include <doctest.h>

#include "support.hpp"
#include "sq/print.hpp"
#include "sq/sums.hpp"

using namespace sq;
using namespace sqtest;

namespace {

Context sum_context() {
  ContextBuilder b;
  SymbolDecl a{"a", Statistics::DiracFermion, VacuumKind::EmptyBand, true, {}};
  b.declare_symbol(a);
  b.declare_param("eps", ParamKind::Real);
  b.declare_param("x", ParamKind::Real);
  return b.build();
}

Index atom(const char* n) { return Index::atom(n); }

}  // namespace

TEST_CASE("sum_make factors out independent scalars and sorts dummies") {
  Context ctx = sum_context();
  Expr body = an(ctx, "a", {atom("k")}).scaled(Scalar::of(Rational(2)));
  SumExpr s = sum_make(ctx, body, {atom("k")});
  REQUIRE(s.terms().size() == 1);
  CHECK(s.terms()[0].outer == Scalar::of(Rational(2)));
  CHECK(s.terms()[0].body.coeff.is_one());
  // dummy list sorted regardless of input order
  Expr body2 = nc(ctx, an(ctx, "a", {atom("k")}), an(ctx, "a", {atom("m")}));
  SumExpr s2 = sum_make(ctx, body2, {atom("m"), atom("k")});
  REQUIRE(s2.terms().size() == 1);
  REQUIRE(s2.terms()[0].dummies.size() == 2);
  CHECK(s2.terms()[0].dummies[0].name() == "k");
  CHECK(s2.terms()[0].dummies[1].name() == "m");
}

TEST_CASE("unused dummies are dropped with a warning") {
  Context ctx = sum_context();
  std::vector<std::string> warnings;
  SumExpr s = sum_make(ctx, Expr::scalar(Scalar::param("x")), {atom("k")}, &warnings);
  REQUIRE(s.terms().size() == 1);
  CHECK(s.terms()[0].dummies.empty());
  CHECK(warnings.size() == 1);
  // zero body collapses to zero
  CHECK(sum_make(ctx, Expr::zero(), {atom("k")}).is_zero());
}

TEST_CASE("products rename colliding dummies deterministically") {
  Context ctx = sum_context();
  SumExpr s1 = sum_make(ctx, cr(ctx, "a", {atom("k")}), {atom("k")});
  SumExpr s2 = sum_make(ctx, an(ctx, "a", {atom("k")}), {atom("k")});
  SumExpr prod = sum_nc(ctx, s1, s2);
  REQUIRE(prod.terms().size() == 1);
  const SumTerm& t = prod.terms()[0];
  REQUIRE(t.dummies.size() == 2);
  CHECK(t.dummies[0].name() == "k");
  CHECK(t.dummies[1].name() == "k1");
  // identity multiplication
  CHECK(sum_nc(ctx, s1, sum_lift(ctx, Expr::one())) == s1);
}

TEST_CASE("free indexes are never captured") {
  Context ctx = sum_context();
  // sum over k times a free k: the dummy must move out of the way
  SumExpr s = sum_make(ctx, cr(ctx, "a", {atom("k")}), {atom("k")});
  SumExpr free_k = sum_lift(ctx, an(ctx, "a", {atom("k")}));
  SumExpr prod = sum_nc(ctx, s, free_k);
  for (const auto& t : prod.terms()) {
    for (const auto& d : t.dummies) CHECK(d.name() != "k");
  }
  // and the free index survives in every term's body
  bool has_free_k = false;
  for (const auto& t : prod.terms()) {
    std::vector<std::uint8_t> dummy;
    for (const auto& f : t.body.factors) {
      if (const auto* op = std::get_if<OperatorFactor>(&f)) {
        for (const auto& i : op->indexes)
          if (i == atom("k")) has_free_k = true;
      }
    }
    for (const auto& m : t.body.coeff.monomials())
      for (const auto& d : m.deltas)
        if (d.lo == atom("k") || d.hi == atom("k")) has_free_k = true;
  }
  CHECK(has_free_k);
}

TEST_CASE("delta sifting substitutes the summed index") {
  Context ctx = sum_context();
  Expr body = cr(ctx, "a", {atom("k")}).scaled(Scalar::delta(atom("k"), atom("l")));
  SumExpr s = sum_make(ctx, body, {atom("k")});
  SumExpr simp = sum_simplify(ctx, s);
  CHECK(simp == sum_lift(ctx, cr(ctx, "a", {atom("l")})));
}

TEST_CASE("alpha-equivalent sums compare equal and cancel") {
  Context ctx = sum_context();
  SumExpr sk = sum_make(ctx, an(ctx, "a", {atom("k")}), {atom("k")});
  SumExpr sm = sum_make(ctx, an(ctx, "a", {atom("m")}), {atom("m")});
  CHECK(sum_equal(ctx, sk, sm));
  CHECK(sum_simplify(ctx, sk - sm).is_zero());
  SumExpr other = sum_make(ctx, cr(ctx, "a", {atom("m")}), {atom("m")});
  CHECK(!sum_equal(ctx, sk, other));
}

TEST_CASE("band Hamiltonian commutes with total number") {
  Context ctx = sum_context();
  // H = sum_k eps(k) a+(k) a(k), N = sum_q a+(q) a(q)
  Expr hk = nc(ctx, cr(ctx, "a", {atom("k")}), an(ctx, "a", {atom("k")}))
                .scaled(Scalar::param("eps", {atom("k")}));
  SumExpr H = sum_make(ctx, hk, {atom("k")});
  Expr nq = nc(ctx, cr(ctx, "a", {atom("q")}), an(ctx, "a", {atom("q")}));
  SumExpr N = sum_make(ctx, nq, {atom("q")});
  SumExpr comm = sum_commutator(ctx, H, N);
  CHECK(sum_simplify(ctx, comm).is_zero());
  // the same with a shared dummy name on both sums
  SumExpr N2 = sum_make(ctx, nc(ctx, cr(ctx, "a", {atom("q")}), an(ctx, "a", {atom("q")})),
                        {atom("q")});
  CHECK(sum_simplify(ctx, sum_commutator(ctx, N, N2)).is_zero());
  // shared dummy with an asymmetric coefficient: the consistent renaming
  // makes the four-operator terms cancel before any simplification
  SumExpr Nk = sum_make(ctx, nc(ctx, cr(ctx, "a", {atom("k")}), an(ctx, "a", {atom("k")})),
                        {atom("k")});
  SumExpr raw = sum_commutator(ctx, H, Nk);
  for (const auto& t : raw.terms()) {
    CHECK(t.body.factors.size() <= 2);  // only delta remnants survive
  }
  CHECK(sum_simplify(ctx, raw).is_zero());
}

TEST_CASE("delta sifting preserves finite instantiations") {
  Context ctx = sum_context();
  // sum over k of delta(k,l) a+(k) a(l) instantiated over {1..4}
  Expr body = nc(ctx, cr(ctx, "a", {atom("k")}), an(ctx, "a", {atom("l")}))
                  .scaled(Scalar::delta(atom("k"), atom("l")));
  SumExpr s = sum_make(ctx, body, {atom("k")});
  SumExpr simp = sum_simplify(ctx, s);

  auto instantiate = [&](const SumExpr& se) {
    Expr total;
    // substitute the free index l and expand each dummy over 1..4
    for (const auto& t : se.terms()) {
      std::vector<Term> expanded{t.body};
      std::vector<Term> next;
      for (const auto& d : t.dummies) {
        next.clear();
        for (const auto& u : expanded) {
          for (int v = 1; v <= 4; ++v) {
            Term w = u;
            w.coeff = scalar_rename_index(w.coeff, d, Index::integer(v));
            for (auto& f : w.factors) {
              if (auto* op = std::get_if<OperatorFactor>(&f)) {
                for (auto& ix : op->indexes)
                  if (ix == d) ix = Index::integer(v);
              }
            }
            next.push_back(std::move(w));
          }
        }
        expanded = next;
      }
      for (auto& u : expanded) {
        u.coeff *= t.outer;
        total.add_term(std::move(u));
      }
    }
    // bind the free index l to 2
    Expr bound;
    for (const auto& t : total.terms()) {
      Term u = t;
      u.coeff = scalar_rename_index(u.coeff, atom("l"), Index::integer(2));
      for (auto& f : u.factors) {
        if (auto* op = std::get_if<OperatorFactor>(&f)) {
          for (auto& ix : op->indexes)
            if (ix == atom("l")) ix = Index::integer(2);
        }
      }
      bound.add_term(std::move(u));
    }
    return canonicalize(ctx, bound);
  };

  CHECK(instantiate(s) == instantiate(simp));
}

TEST_CASE("summation indexes must be atoms") {
  Context ctx = sum_context();
  CHECK_THROWS_AS(sum_make(ctx, an(ctx, "a", {atom("k")}), {Index::integer(3)}), Error);
}

TEST_CASE("sums print and reject conversion to plain expressions") {
  Context ctx = sum_context();
  SumExpr s = sum_make(ctx, an(ctx, "a", {atom("k")}), {atom("k")});
  CHECK_THROWS_AS(s.to_expr(), Error);
  CHECK(sum_lift(ctx, Expr::one()).to_expr() == Expr::one());
}
