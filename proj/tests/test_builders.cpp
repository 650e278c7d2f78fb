#include <doctest.h>

#include "support.hpp"
#include "sq/fock.hpp"
#include "sq/wick.hpp"

using namespace sq;
using namespace sqtest;

namespace {

Context spin_s_context(int twice_spin) {
  ContextBuilder b;
  SymbolDecl c{"c", Statistics::DiracFermion, VacuumKind::EmptyBand, true, twice_spin};
  b.declare_symbol(c);
  return b.build();
}

std::vector<double> diag_eigenvalues(const Context& ctx, const Expr& e) {
  DenseOp m = oracle_matrix(ctx, e);
  std::vector<std::vector<double>> a(size_t(m.dim()),
                                     std::vector<double>(size_t(m.dim()), 0.0));
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) a[size_t(i)][size_t(j)] = m.at(i, j).to_complex().real();
  }
  return symmetric_eigenvalues(a);
}

}  // namespace

TEST_CASE("number operator flavors") {
  Context ctx = hubbard_context(1);
  SiteRef c1("c", {Index::integer(1)});
  Expr n = number(ctx, c1);
  Expr up = number(ctx, c1, 1);
  Expr dn = number(ctx, c1, 0);
  CHECK(expr_equal(ctx, n, up + dn));
  CHECK(expr_equal(ctx, up, nc(ctx, cr(ctx, "c", {Index::integer(1), spin_up()}),
                               an(ctx, "c", {Index::integer(1), spin_up()}))));
  CHECK_THROWS_AS(number(ctx, c1, 2), Error);
  // eigenvalues of the one-site number operator: {0, 1, 1, 2}
  auto ev = diag_eigenvalues(ctx, n);
  REQUIRE(ev.size() == 4);
  CHECK(ev[0] == doctest::Approx(0.0));
  CHECK(ev[1] == doctest::Approx(1.0));
  CHECK(ev[2] == doctest::Approx(1.0));
  CHECK(ev[3] == doctest::Approx(2.0));
}

TEST_CASE("number of an orbital combination") {
  Context ctx = spinless_context(2);
  Expr d = an(ctx, "a", {Index::integer(1)}) + an(ctx, "a", {Index::integer(2)});
  Expr n = number_of(ctx, d.scaled(Scalar::sqrt(Rational(1, 2))));
  CHECK(expr_equal(ctx, conj(ctx, n), n));
  auto ev = diag_eigenvalues(ctx, n);
  CHECK(ev.front() == doctest::Approx(0.0));
  CHECK(ev.back() == doctest::Approx(1.0));
}

TEST_CASE("hop is Hermitian with single-particle eigenvalues +-1") {
  Context ctx = hubbard_context(2);
  SiteRef c1("c", {Index::integer(1)}), c2("c", {Index::integer(2)});
  Expr h = hop(ctx, c1, c2);
  CHECK(expr_equal(ctx, conj(ctx, h), h));
  // explicit displayed form
  Expr want;
  for (int v : {0, 1}) {
    want += nc(ctx, cr(ctx, "c", {Index::integer(1), Index::integer(v)}),
               an(ctx, "c", {Index::integer(2), Index::integer(v)}));
    want += nc(ctx, cr(ctx, "c", {Index::integer(2), Index::integer(v)}),
               an(ctx, "c", {Index::integer(1), Index::integer(v)}));
  }
  CHECK(expr_equal(ctx, h, want));
  CHECK_THROWS_AS(hop(ctx, c1, SiteRef("t", {})), Error);
  // single-particle block: The 16x16 matrix restricted to 1-particle states
  DenseOp m = oracle_matrix(ctx, h);
  std::vector<int> one_particle;
  for (int v = 0; v < 16; ++v) {
    if (__builtin_popcount(unsigned(v)) == 1) one_particle.push_back(v);
  }
  std::vector<std::vector<double>> a(4, std::vector<double>(4, 0.0));
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j)
      a[i][j] = m.at(one_particle[i], one_particle[j]).to_complex().real();
  auto ev = symmetric_eigenvalues(a);
  CHECK(ev[0] == doctest::Approx(-1.0));
  CHECK(ev[1] == doctest::Approx(-1.0));
  CHECK(ev[2] == doctest::Approx(1.0));
  CHECK(ev[3] == doctest::Approx(1.0));
}

TEST_CASE("hubbard repulsion") {
  Context ctx = hubbard_context(1);
  SiteRef c1("c", {Index::integer(1)});
  Expr u = hubbard(ctx, c1);
  // equals -c+(do) c+(up) c(do) c(up) as an expression
  Expr displayed = nc(ctx, cr(ctx, "c", {Index::integer(1), spin_down()}),
                  cr(ctx, "c", {Index::integer(1), spin_up()}),
                  nc(ctx, an(ctx, "c", {Index::integer(1), spin_down()}),
                     an(ctx, "c", {Index::integer(1), spin_up()})))
                  .scaled(Scalar::of(Rational(-1)));
  CHECK(expr_equal(ctx, u, displayed));
  CHECK(expr_equal(ctx, u, nc(ctx, number(ctx, c1, 1), number(ctx, c1, 0))));
  auto ev = diag_eigenvalues(ctx, u);
  CHECK(ev[0] == doctest::Approx(0.0));
  CHECK(ev[1] == doctest::Approx(0.0));
  CHECK(ev[2] == doctest::Approx(0.0));
  CHECK(ev[3] == doctest::Approx(1.0));
}

TEST_CASE("spin-1/2 components match the displayed forms") {
  Context ctx = spin_s_context(1);
  SiteRef c("c", {});
  Expr sx = spin_component(ctx, c, SpinAxis::X);
  Expr want_x = (nc(ctx, cr(ctx, "c", {spin_down()}), an(ctx, "c", {spin_up()})) +
                 nc(ctx, cr(ctx, "c", {spin_up()}), an(ctx, "c", {spin_down()})))
                    .scaled(Scalar::of(Rational(1, 2)));
  CHECK(expr_equal(ctx, sx, want_x));
  Expr sz = spin_component(ctx, c, SpinAxis::Z);
  Expr want_z = (number(ctx, c, 1) - number(ctx, c, 0)).scaled(Scalar::of(Rational(1, 2)));
  CHECK(expr_equal(ctx, sz, want_z));
  CHECK(expr_equal(ctx, conj(ctx, spin_component(ctx, c, SpinAxis::Plus)),
                   spin_component(ctx, c, SpinAxis::Minus)));
}

TEST_CASE("su(2) algebra for spins 1/2, 1 and 3/2") {
  for (int ts : {1, 2, 3}) {
    Context ctx = spin_s_context(ts);
    SiteRef c("c", {});
    Expr sx = spin_component(ctx, c, SpinAxis::X);
    Expr sy = spin_component(ctx, c, SpinAxis::Y);
    Expr sz = spin_component(ctx, c, SpinAxis::Z);
    Expr sp = spin_component(ctx, c, SpinAxis::Plus);
    Expr sm = spin_component(ctx, c, SpinAxis::Minus);
    CHECK(expr_equal(ctx, commutator(ctx, sx, sy), sz.scaled(Scalar::imaginary())));
    CHECK(expr_equal(ctx, commutator(ctx, sy, sz), sx.scaled(Scalar::imaginary())));
    CHECK(expr_equal(ctx, commutator(ctx, sz, sx), sy.scaled(Scalar::imaginary())));
    CHECK(expr_equal(ctx, commutator(ctx, sz, sp), sp));
    CHECK(expr_equal(ctx, commutator(ctx, sz, sm), -sm));
  }
}

TEST_CASE("spin-1 raising amplitudes carry sqrt(2)") {
  Context ctx = spin_s_context(2);
  Expr sp = spin_component(ctx, SiteRef("c", {}), SpinAxis::Plus);
  bool found_root = false;
  for (const auto& t : sp.terms()) {
    for (const auto& m : t.coeff.monomials()) {
      if (m.root == Rational(2)) found_root = true;
    }
  }
  CHECK(found_root);
}

TEST_CASE("Casimir on one-particle states equals S(S+1)") {
  for (int ts : {1, 2, 3}) {
    ContextBuilder b;
    SymbolDecl c{"c", Statistics::DiracFermion, VacuumKind::EmptyBand, true, ts};
    b.declare_symbol(c);
    for (int v = ts; v >= 0; --v) b.add_orbital("c", std::nullopt, v);
    Context ctx = b.build();
    SiteRef site("c", {});
    Expr casimir = nc(ctx, spin_component(ctx, site, SpinAxis::X),
                      spin_component(ctx, site, SpinAxis::X)) +
                   nc(ctx, spin_component(ctx, site, SpinAxis::Y),
                      spin_component(ctx, site, SpinAxis::Y)) +
                   nc(ctx, spin_component(ctx, site, SpinAxis::Z),
                      spin_component(ctx, site, SpinAxis::Z));
    DenseOp m = oracle_matrix(ctx, casimir);
    double want = ts / 2.0 * (ts / 2.0 + 1.0);
    for (int v = 0; v < m.dim(); ++v) {
      if (__builtin_popcount(unsigned(v)) != 1) continue;
      for (int w = 0; w < m.dim(); ++w) {
        double got = m.at(w, v).to_complex().real();
        if (w == v)
          CHECK(got == doctest::Approx(want).epsilon(1e-12));
        else if (__builtin_popcount(unsigned(w)) == 1)
          CHECK(got == doctest::Approx(0.0));
      }
    }
  }
}

TEST_CASE("spinspin is Hermitian with the exchange spectrum") {
  Context ctx = hubbard_context(2);
  SiteRef c1("c", {Index::integer(1)}), c2("c", {Index::integer(2)});
  Expr ss = spinspin(ctx, c1, c2);
  CHECK(expr_equal(ctx, conj(ctx, ss), ss));
  // single-occupancy sector: states with one particle on each site
  DenseOp m = oracle_matrix(ctx, ss);
  std::vector<int> sector;
  for (int v = 0; v < 16; ++v) {
    int site1 = (v >> 2) & 3, site2 = v & 3;
    if (__builtin_popcount(unsigned(site1)) == 1 &&
        __builtin_popcount(unsigned(site2)) == 1)
      sector.push_back(v);
  }
  REQUIRE(sector.size() == 4);
  std::vector<std::vector<double>> a(4, std::vector<double>(4, 0.0));
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j)
      a[i][j] = m.at(sector[i], sector[j]).to_complex().real();
  auto ev = symmetric_eigenvalues(a);
  CHECK(ev[0] == doctest::Approx(-0.75));
  CHECK(ev[1] == doctest::Approx(0.25));
  CHECK(ev[2] == doctest::Approx(0.25));
  CHECK(ev[3] == doctest::Approx(0.25));
  // on-site exchange acts as S(S+1) = 3/4 on singly occupied states
  Context c1s = hubbard_context(1);
  Expr onsite = spinspin(c1s, SiteRef("c", {Index::integer(1)}),
                         SiteRef("c", {Index::integer(1)}));
  DenseOp mo = oracle_matrix(c1s, onsite);
  // basis 0..3 over (up,down) bits: states 01 and 10 are singly occupied
  CHECK(mo.at(1, 1).to_complex().real() == doctest::Approx(0.75));
  CHECK(mo.at(2, 2).to_complex().real() == doctest::Approx(0.75));
  CHECK(mo.at(0, 0).to_complex().real() == doctest::Approx(0.0));
  CHECK(mo.at(3, 3).to_complex().real() == doctest::Approx(0.0));
}

TEST_CASE("projectors: completeness and idempotency") {
  Context ctx = hubbard_context(1);
  SiteRef c1("c", {Index::integer(1)});
  Expr total;
  for (ProjectorKind k : {ProjectorKind::Empty, ProjectorKind::Up, ProjectorKind::Down,
                          ProjectorKind::Double}) {
    Expr p = projector(ctx, c1, k);
    CHECK(expr_equal(ctx, nc(ctx, p, p), p));
    total += p;
  }
  CHECK(expr_equal(ctx, total, Expr::one()));
  Expr single = projector(ctx, c1, ProjectorKind::Single);
  CHECK(expr_equal(ctx, single, projector(ctx, c1, ProjectorKind::Up) +
                                    projector(ctx, c1, ProjectorKind::Down)));
  // displayed form of the empty projector
  Expr nup = number(ctx, c1, 1), ndn = number(ctx, c1, 0);
  CHECK(expr_equal(ctx, projector(ctx, c1, ProjectorKind::Empty),
                   nc(ctx, Expr::one() - nup, Expr::one() - ndn)));
}

TEST_CASE("standard operators conserve total particle number") {
  Context ctx = hubbard_context(2);
  SiteRef c1("c", {Index::integer(1)}), c2("c", {Index::integer(2)});
  std::vector<SiteRef> sites{c1, c2};
  Expr n = total_number(ctx, sites);
  CHECK(commutator(ctx, hop(ctx, c1, c2), n).is_zero());
  CHECK(commutator(ctx, hubbard(ctx, c1), n).is_zero());
  CHECK(commutator(ctx, number(ctx, c1), n).is_zero());
  CHECK(commutator(ctx, spinspin(ctx, c1, c2), n).is_zero());
}

TEST_CASE("spinless flavors and spin mismatch errors") {
  ContextBuilder b;
  SymbolDecl a{"a", Statistics::DiracFermion, VacuumKind::EmptyBand, true, {}};
  b.declare_symbol(a);
  SymbolDecl c{"c", Statistics::DiracFermion, VacuumKind::EmptyBand, true, 1};
  b.declare_symbol(c);
  Context ctx = b.build();
  SiteRef a1("a", {Index::integer(1)}), a2("a", {Index::integer(2)});
  Expr n = number(ctx, a1);
  CHECK(expr_equal(ctx, n, nc(ctx, cr(ctx, "a", {Index::integer(1)}),
                              an(ctx, "a", {Index::integer(1)}))));
  Expr h = hop(ctx, a1, a2);
  Expr want = nc(ctx, cr(ctx, "a", {Index::integer(1)}), an(ctx, "a", {Index::integer(2)})) +
              nc(ctx, cr(ctx, "a", {Index::integer(2)}), an(ctx, "a", {Index::integer(1)}));
  CHECK(expr_equal(ctx, h, want));
  CHECK_THROWS_AS(hop(ctx, a1, SiteRef("c", {Index::integer(1)})), Error);
  CHECK_THROWS_AS(spin_component(ctx, a1, SpinAxis::Z), Error);
  CHECK_THROWS_AS(hubbard(ctx, a1), Error);
  CHECK_THROWS_AS(number(ctx, a1, 0), Error);
}

TEST_CASE("Jacobi identity on random operator triples") {
  Context ctx = spinless_context(3);
  std::mt19937 rng(73);
  for (int it = 0; it < 50; ++it) {
    Expr A = random_expr(ctx, rng, "a", 2, 3, {1, 2, 3});
    Expr B = random_expr(ctx, rng, "a", 2, 3, {1, 2, 3});
    Expr C = random_expr(ctx, rng, "a", 2, 3, {1, 2, 3});
    Expr jac = commutator(ctx, commutator(ctx, A, B), C) +
               commutator(ctx, commutator(ctx, B, C), A) +
               commutator(ctx, commutator(ctx, C, A), B);
    CHECK(jac.is_zero());
  }
}
