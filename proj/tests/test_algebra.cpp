#include <doctest.h>

#include "support.hpp"
#include "sq/fock.hpp"
#include "sq/print.hpp"

using namespace sq;
using namespace sqtest;

namespace {

Context mixed_context() {
  ContextBuilder b;
  SymbolDecl c{"c", Statistics::DiracFermion, VacuumKind::EmptyBand, true, 1};
  b.declare_symbol(c);
  SymbolDecl a{"a", Statistics::DiracFermion, VacuumKind::EmptyBand, true, {}};
  b.declare_symbol(a);
  SymbolDecl f{"f", Statistics::DiracFermion, VacuumKind::EmptyBand, true, {}};
  b.declare_symbol(f);
  SymbolDecl bos{"b", Statistics::Boson, VacuumKind::EmptyBand, true, {}};
  b.declare_symbol(bos);
  SymbolDecl g{"g", Statistics::MajoranaFermion, VacuumKind::EmptyBand, true, {}};
  b.declare_symbol(g);
  SymbolDecl d{"d", Statistics::DiracFermion, VacuumKind::FermiSea, true, {}};
  b.declare_symbol(d);
  SymbolDecl w{"w", Statistics::DiracFermion, VacuumKind::EmptyBand, false, {}};
  b.declare_symbol(w);
  b.declare_param("z1", ParamKind::GrassmannConst);
  b.declare_param("z2", ParamKind::GrassmannConst);
  return b.build();
}

}  // namespace

TEST_CASE("nc of zero and one operands") {
  Context ctx = mixed_context();
  CHECK(nc(ctx, {}) == Expr::one());
  Expr c1 = cr(ctx, "a", {Index::integer(1)});
  CHECK(nc(ctx, {c1}) == c1);
}

TEST_CASE("canonical anticommutation relation") {
  Context ctx = mixed_context();
  Index k = Index::atom("k"), l = Index::atom("l");
  // a(k) a+(l) = delta(k,l) - a+(l) a(k)
  Expr lhs = nc(ctx, an(ctx, "a", {k}), cr(ctx, "a", {l}));
  Expr rhs = Expr::scalar(Scalar::delta(k, l)) -
             nc(ctx, cr(ctx, "a", {l}), an(ctx, "a", {k}));
  CHECK(lhs == canonicalize(ctx, rhs));
  // numeric indexes resolve the delta
  Expr same = nc(ctx, an(ctx, "a", {Index::integer(1)}), cr(ctx, "a", {Index::integer(1)}));
  CHECK(same == Expr::one() - nc(ctx, cr(ctx, "a", {Index::integer(1)}),
                                 an(ctx, "a", {Index::integer(1)})));
  Expr diff = nc(ctx, an(ctx, "a", {Index::integer(1)}), cr(ctx, "a", {Index::integer(2)}));
  CHECK(diff == -nc(ctx, cr(ctx, "a", {Index::integer(2)}), an(ctx, "a", {Index::integer(1)})));
}

TEST_CASE("Pauli exclusion: squares vanish") {
  Context ctx = mixed_context();
  Expr c = cr(ctx, "a", {Index::integer(1)});
  CHECK(nc(ctx, c, c).is_zero());
  Expr ck = cr(ctx, "a", {Index::atom("k")});
  CHECK(nc(ctx, ck, ck).is_zero());
}

TEST_CASE("already canonical products stay put") {
  Context ctx = mixed_context();
  Index k = Index::atom("k");
  Expr e = nc(ctx, cr(ctx, "c", {k, spin_up()}), an(ctx, "c", {k, spin_up()}));
  REQUIRE(e.terms().size() == 1);
  CHECK(e.terms()[0].factors.size() == 2);
  CHECK(canonicalize(ctx, e) == e);
}

TEST_CASE("distinct symbols anticommute without deltas") {
  Context ctx = mixed_context();
  Expr x = nc(ctx, cr(ctx, "f", {Index::integer(1)}), cr(ctx, "a", {Index::integer(1)}));
  Expr y = nc(ctx, cr(ctx, "a", {Index::integer(1)}), cr(ctx, "f", {Index::integer(1)}));
  CHECK(x == -y);
  // a before f in the creation block (lexicographic)
  REQUIRE(x.terms().size() == 1);
  const auto& facs = x.terms()[0].factors;
  CHECK(std::get<OperatorFactor>(facs[0]).sym == ctx.symbol_id("a"));
}

TEST_CASE("bosons commute left of fermions, with commutator deltas") {
  Context ctx = mixed_context();
  Expr bop = cr(ctx, "b", {Index::atom("q")});
  Expr fer = cr(ctx, "a", {Index::atom("k")});
  CHECK(nc(ctx, fer, bop) == nc(ctx, bop, fer));
  // b(q) b+(q') = delta + b+(q') b(q)
  Index q = Index::atom("q"), q2 = Index::atom("r");
  Expr lhs = nc(ctx, an(ctx, "b", {q}), cr(ctx, "b", {q2}));
  Expr rhs = Expr::scalar(Scalar::delta(q, q2)) + nc(ctx, cr(ctx, "b", {q2}), an(ctx, "b", {q}));
  CHECK(lhs == canonicalize(ctx, rhs));
  // boson squares do not vanish
  CHECK(!nc(ctx, bop, bop).is_zero());
  // bosons commute with everything fermionic
  CHECK(commutator(ctx, bop, cr(ctx, "c", {Index::integer(1), spin_up()})).is_zero());
}

TEST_CASE("Majorana pairs: anticommutator is delta, squares are 1/2") {
  Context ctx = mixed_context();
  Index x = Index::atom("x"), y = Index::atom("y");
  Expr gx = majorana(ctx, "g", {x});
  Expr gy = majorana(ctx, "g", {y});
  CHECK(anticommutator(ctx, gx, gy) == Expr::scalar(Scalar::delta(x, y)));
  CHECK(nc(ctx, gx, gx) == Expr::scalar(Scalar::of(Rational(1, 2))));
  // Majorana anticommute to the left of Dirac operators
  Expr c1 = cr(ctx, "a", {Index::integer(1)});
  CHECK(nc(ctx, c1, gx) == -nc(ctx, gx, c1));
  REQUIRE(nc(ctx, c1, gx).terms().size() == 1);
  CHECK(std::holds_alternative<OperatorFactor>(nc(ctx, c1, gx).terms()[0].factors[0]));
  CHECK(std::get<OperatorFactor>(nc(ctx, c1, gx).terms()[0].factors[0]).sym ==
        ctx.symbol_id("g"));
}

TEST_CASE("Grassmann constants anticommute and square to zero") {
  Context ctx = mixed_context();
  Expr z1 = grassmann(ctx, "z1");
  Expr z2 = grassmann(ctx, "z2");
  CHECK(nc(ctx, z1, z1).is_zero());
  CHECK(nc(ctx, z2, z1) == -nc(ctx, z1, z2));
  // anticommute with fermions, commute with bosons
  Expr c1 = cr(ctx, "a", {Index::integer(1)});
  CHECK(nc(ctx, c1, z1) == -nc(ctx, z1, c1));
  Expr bq = cr(ctx, "b", {Index::atom("q")});
  CHECK(nc(ctx, bq, z1) == nc(ctx, z1, bq));
}

TEST_CASE("Fermi-sea classification and reordering") {
  Context ctx = mixed_context();
  auto d = [&](OpKind k, int mom) {
    return k == OpKind::Create ? cr(ctx, "d", {Index::integer(mom)})
                               : an(ctx, "d", {Index::integer(mom)});
  };
  // d+(-1) annihilates the sea (level filled), d(-2) creates a hole:
  // d+(-1) d(-2) -> -d(-2) d+(-1)
  Expr lhs = nc(ctx, d(OpKind::Create, -1), d(OpKind::Annihilate, -2));
  Expr rhs = -nc(ctx, d(OpKind::Annihilate, -2), d(OpKind::Create, -1));
  CHECK(lhs == canonicalize(ctx, rhs));
  REQUIRE(lhs.terms().size() == 1);
  const auto& f0 = std::get<OperatorFactor>(lhs.terms()[0].factors[0]);
  CHECK(f0.kind == OpKind::Annihilate);
  CHECK(f0.indexes[0].value() == -2);
  // hole pair contraction: d+(-1) d(-1) = 1 - d(-1) d+(-1)
  Expr pair = nc(ctx, d(OpKind::Create, -1), d(OpKind::Annihilate, -1));
  CHECK(pair == Expr::one() - nc(ctx, d(OpKind::Annihilate, -1), d(OpKind::Create, -1)));
  // symbolic momentum is an error
  CHECK_THROWS_AS(nc(ctx, cr(ctx, "d", {Index::atom("k")}), an(ctx, "d", {Index::atom("k")})),
                  Error);
  // momentum at the Fermi level requires the policy
  CHECK_THROWS_AS(nc(ctx, cr(ctx, "d", {Index::integer(0)}), an(ctx, "d", {Index::integer(0)})),
                  Error);
}

TEST_CASE("fermi level policy admits momentum zero") {
  ContextBuilder b;
  SymbolDecl d{"d", Statistics::DiracFermion, VacuumKind::FermiSea, true, {}};
  b.declare_symbol(d);
  b.set_fermi_level_occupied(true);
  Context ctx = b.build();
  // level 0 occupied: d+(0) annihilates the sea
  Expr e = nc(ctx, cr(ctx, "d", {Index::integer(0)}), an(ctx, "d", {Index::integer(0)}));
  CHECK(e == Expr::one() - nc(ctx, an(ctx, "d", {Index::integer(0)}),
                              cr(ctx, "d", {Index::integer(0)})));
}

TEST_CASE("reorder-disabled symbols only cancel adjacent duplicates") {
  Context ctx = mixed_context();
  Expr w1 = cr(ctx, "w", {Index::integer(1)});
  Expr w2 = cr(ctx, "w", {Index::integer(2)});
  Expr ww = nc(ctx, w2, w1);
  REQUIRE(ww.terms().size() == 1);
  // stays in written order
  CHECK(std::get<OperatorFactor>(ww.terms()[0].factors[0]).indexes[0].value() == 2);
  CHECK(nc(ctx, w1, w1).is_zero());
  // non-adjacent duplicates stay
  Expr frozen = nc(ctx, w1, w2, w1);
  CHECK(frozen.terms().size() == 1);
  CHECK(frozen.terms()[0].factors.size() == 3);
}

TEST_CASE("conj is an involutive anti-homomorphism") {
  Context ctx = mixed_context();
  Index k = Index::atom("k");
  CHECK(conj(ctx, cr(ctx, "a", {k})) == an(ctx, "a", {k}));
  CHECK(conj(ctx, majorana(ctx, "g", {k})) == majorana(ctx, "g", {k}));
  // conj(i c+(UP) c(DO)) = -i c+(DO) c(UP)
  Expr e = nc(ctx, cr(ctx, "c", {spin_up()}), an(ctx, "c", {spin_down()}))
               .scaled(Scalar::imaginary());
  Expr want = nc(ctx, cr(ctx, "c", {spin_down()}), an(ctx, "c", {spin_up()}))
                  .scaled(-Scalar::imaginary());
  CHECK(conj(ctx, e) == want);

  std::mt19937 rng(7);
  Context sctx = spinless_context(3);
  for (int it = 0; it < 100; ++it) {
    Expr x = random_expr(sctx, rng, "a", 3, 4, {1, 2, 3});
    Expr y = random_expr(sctx, rng, "a", 3, 4, {1, 2, 3});
    CHECK(conj(sctx, conj(sctx, x)) == x);
    CHECK(conj(sctx, nc(sctx, x, y)) == nc(sctx, conj(sctx, y), conj(sctx, x)));
  }
}

TEST_CASE("commutators") {
  Context ctx = mixed_context();
  Expr n1 = nc(ctx, cr(ctx, "a", {Index::integer(1)}), an(ctx, "a", {Index::integer(1)}));
  CHECK(commutator(ctx, n1, cr(ctx, "a", {Index::integer(1)})) ==
        cr(ctx, "a", {Index::integer(1)}));
  Index k = Index::atom("k"), l = Index::atom("l");
  CHECK(anticommutator(ctx, an(ctx, "a", {k}), cr(ctx, "a", {l})) ==
        Expr::scalar(Scalar::delta(k, l)));
}

TEST_CASE("nc linearity on random triples") {
  Context ctx = spinless_context(3);
  std::mt19937 rng(11);
  for (int it = 0; it < 50; ++it) {
    Expr a = random_expr(ctx, rng, "a", 2, 3, {1, 2, 3});
    Expr x = random_expr(ctx, rng, "a", 2, 3, {1, 2, 3});
    Expr y = random_expr(ctx, rng, "a", 2, 3, {1, 2, 3});
    Expr b = random_expr(ctx, rng, "a", 2, 3, {1, 2, 3});
    CHECK(nc(ctx, a, x + y, b) == nc(ctx, a, x, b) + nc(ctx, a, y, b));
  }
}

TEST_CASE("canonicalize is idempotent on random expressions") {
  Context ctx = spinless_context(4);
  std::mt19937 rng(23);
  for (int it = 0; it < 100; ++it) {
    Expr e = random_expr(ctx, rng, "a", 4, 6, {1, 2, 3, 4});
    Expr c1 = canonicalize(ctx, e);
    CHECK(canonicalize(ctx, c1) == c1);
  }
}

TEST_CASE("sign of permuted creation strings") {
  Context ctx = spinless_context(4);
  // permutation (3 1 2) of c+(1) c+(2) c+(3): two inversions -> +1;
  // (2 1 3): one inversion -> -1
  Expr sorted = nc(ctx, cr(ctx, "a", {Index::integer(1)}), cr(ctx, "a", {Index::integer(2)}),
                   cr(ctx, "a", {Index::integer(3)}));
  Expr perm = nc(ctx, cr(ctx, "a", {Index::integer(2)}), cr(ctx, "a", {Index::integer(1)}),
                 cr(ctx, "a", {Index::integer(3)}));
  CHECK(perm == -sorted);
  Expr cyc = nc(ctx, cr(ctx, "a", {Index::integer(3)}), cr(ctx, "a", {Index::integer(1)}),
                cr(ctx, "a", {Index::integer(2)}));
  CHECK(cyc == sorted);
}

TEST_CASE("substitute binds parameters") {
  Context ctx = hubbard_context(1);
  Expr h = hubbard(ctx, SiteRef("c", {Index::integer(1)})).scaled(Scalar::param("U"));
  Expr h4 = substitute(ctx, h, {{"U", ExactValue{Rational(4), false}}});
  CHECK(h4 == hubbard(ctx, SiteRef("c", {Index::integer(1)})).scaled(Scalar::of(Rational(4))));
  CHECK(substitute(ctx, h, {}) == h);
  CHECK_THROWS_AS(substitute(ctx, h, {{"nope", ExactValue{Rational(1), false}}}), Error);
}

TEST_CASE("expr_equal") {
  Context ctx = mixed_context();
  Expr x = nc(ctx, an(ctx, "a", {Index::integer(1)}), cr(ctx, "a", {Index::integer(1)}));
  Expr y = Expr::one() - nc(ctx, cr(ctx, "a", {Index::integer(1)}),
                            an(ctx, "a", {Index::integer(1)}));
  CHECK(expr_equal(ctx, x, y));
  CHECK(expr_equal(ctx, Expr::zero(), Expr::number(Rational(0))));
  Expr ab = nc(ctx, cr(ctx, "a", {Index::integer(1)}), cr(ctx, "f", {Index::integer(1)}));
  Expr ba = nc(ctx, cr(ctx, "f", {Index::integer(1)}), cr(ctx, "a", {Index::integer(1)}));
  CHECK(!expr_equal(ctx, ab, ba));
}

TEST_CASE("index arity is fixed by first use") {
  Context ctx = mixed_context();
  Expr one_idx = cr(ctx, "a", {Index::integer(1)});
  Expr two_idx = cr(ctx, "a", {Index::integer(1), Index::integer(2)});
  CHECK_THROWS_AS(nc(ctx, one_idx, two_idx), Error);
}

TEST_CASE("declaration errors") {
  ContextBuilder b;
  SymbolDecl c{"c", Statistics::DiracFermion, VacuumKind::EmptyBand, true, 1};
  b.declare_symbol(c);
  SymbolDecl dup{"c", Statistics::Boson, VacuumKind::EmptyBand, true, {}};
  CHECK_THROWS_AS(b.declare_symbol(dup), Error);
  SymbolDecl sea_boson{"p", Statistics::Boson, VacuumKind::FermiSea, true, {}};
  CHECK_THROWS_AS(b.declare_symbol(sea_boson), Error);
  b.declare_param("t", ParamKind::Real);
  CHECK_THROWS_AS(b.declare_param("t", ParamKind::Complex), Error);
  CHECK_THROWS_AS(b.declare_param("c", ParamKind::Real), Error);
}

TEST_CASE("conj is involutive on Fermi-sea strings") {
  Context ctx = fermi_sea_context();
  std::mt19937 rng(83);
  for (int it = 0; it < 50; ++it) {
    Expr e = random_expr(ctx, rng, "d", 3, 5, {-2, -1, 1, 2});
    CHECK(conj(ctx, conj(ctx, e)) == e);
  }
}

TEST_CASE("oracle equivalence of canonicalization") {
  Context ctx = spinless_context(4);
  std::mt19937 rng(101);
  for (int it = 0; it < 60; ++it) {
    Expr e = random_expr(ctx, rng, "a", 3, 6, {1, 2, 3, 4});
    CHECK(oracle_matrix(ctx, canonicalize(ctx, e)) == oracle_matrix(ctx, e));
  }
}
