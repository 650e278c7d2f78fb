#include <doctest.h>

#include <map>

#include "support.hpp"
#include "sq/basis.hpp"
#include "sq/states.hpp"

using namespace sq;
using namespace sqtest;

namespace {

std::vector<SiteRef> site_refs(int n) {
  std::vector<SiteRef> out;
  for (int i = 1; i <= n; ++i) out.emplace_back("c", std::vector<Index>{Index::integer(i)});
  return out;
}

}  // namespace

TEST_CASE("qsz basis for one site") {
  Context ctx = hubbard_context(1);
  BasisSet b = qszbasis(ctx, site_refs(1));
  REQUIRE(b.sectors.size() == 4);
  std::map<std::pair<int, int>, size_t> dims;
  for (const auto& s : b.sectors) dims[{s.q, s.twice_spin}] = s.states.size();
  CHECK(dims[{-1, 0}] == 1);
  CHECK(dims[{0, -1}] == 1);
  CHECK(dims[{0, 1}] == 1);
  CHECK(dims[{1, 0}] == 1);
}

TEST_CASE("qsz basis for two sites") {
  Context ctx = hubbard_context(2);
  BasisSet b = qszbasis(ctx, site_refs(2));
  REQUIRE(b.sectors.size() == 9);
  std::map<std::pair<int, int>, size_t> dims;
  int qmin = 99, qmax = -99;
  size_t total = 0;
  for (const auto& s : b.sectors) {
    dims[{s.q, s.twice_spin}] = s.states.size();
    total += s.states.size();
    qmin = std::min(qmin, s.q);
    qmax = std::max(qmax, s.q);
  }
  CHECK(total == 16);
  CHECK(qmin == -2);
  CHECK(qmax == 2);
  CHECK(dims[{-2, 0}] == 1);
  CHECK(dims[{-1, -1}] == 2);
  CHECK(dims[{-1, 1}] == 2);
  CHECK(dims[{0, -2}] == 1);
  CHECK(dims[{0, 0}] == 4);
  CHECK(dims[{0, 2}] == 1);
  CHECK(dims[{1, -1}] == 2);
  CHECK(dims[{1, 1}] == 2);
  CHECK(dims[{2, 0}] == 1);
}

TEST_CASE("qs basis for two sites matches the multiplet table") {
  Context ctx = hubbard_context(2);
  BasisSet b = qsbasis(ctx, site_refs(2));
  std::map<std::pair<int, int>, size_t> counts;
  for (const auto& s : b.sectors) counts[{s.q, s.twice_spin}] = s.states.size();
  REQUIRE(b.sectors.size() == 6);
  CHECK(counts[{-2, 0}] == 1);
  CHECK(counts[{-1, 1}] == 2);
  CHECK(counts[{0, 0}] == 3);
  CHECK(counts[{0, 2}] == 1);
  CHECK(counts[{1, 1}] == 2);
  CHECK(counts[{2, 0}] == 1);
  CHECK(b.total_states() == 16);
}

TEST_CASE("qs states are highest weight with the right S and Sz") {
  Context ctx = hubbard_context(2);
  auto sites = site_refs(2);
  BasisSet b = qsbasis(ctx, sites);
  Expr splus = total_spin(ctx, sites, SpinAxis::Plus);
  Expr sz = total_spin(ctx, sites, SpinAxis::Z);
  for (const auto& sec : b.sectors) {
    for (const auto& st : sec.states) {
      Expr e = st.to_expr();
      CHECK(apply(ctx, splus, e).is_zero());
      Expr szs = apply(ctx, sz, e);
      Expr want = e.scaled(Scalar::of(Rational(sec.twice_spin, 2)));
      CHECK(szs == want);
    }
  }
}

TEST_CASE("qs states satisfy the S^2 eigenvalue equation exactly") {
  Context ctx = hubbard_context(2);
  auto sites = site_refs(2);
  BasisSet b = qsbasis(ctx, sites);
  Expr s2;
  for (SpinAxis ax : {SpinAxis::X, SpinAxis::Y, SpinAxis::Z}) {
    Expr comp = total_spin(ctx, sites, ax);
    s2 += nc(ctx, comp, comp);
  }
  for (const auto& sec : b.sectors) {
    Rational s(sec.twice_spin, 2);
    Scalar want = Scalar::of(s * (s + Rational(1)));
    for (const auto& st : sec.states) {
      Expr e = st.to_expr();
      CHECK(apply(ctx, s2, e) == e.scaled(want));
    }
  }
}

TEST_CASE("qs subspaces are exactly orthonormal") {
  Context ctx = hubbard_context(3);
  auto sites = site_refs(3);
  BasisSet b = qsbasis(ctx, sites);
  for (const auto& sec : b.sectors) {
    for (size_t i = 0; i < sec.states.size(); ++i) {
      for (size_t j = 0; j < sec.states.size(); ++j) {
        Scalar got = inner(ctx, conj(ctx, sec.states[i].to_expr()),
                           sec.states[j].to_expr());
        CHECK(got == (i == j ? Scalar::one() : Scalar::zero()));
      }
    }
  }
}

TEST_CASE("completeness for up to three sites") {
  for (int n = 1; n <= 3; ++n) {
    Context ctx = hubbard_context(n);
    auto sites = site_refs(n);
    size_t dim = size_t(1) << unsigned(2 * n);
    CHECK(qszbasis(ctx, sites).total_states() == dim);
    CHECK(qsbasis(ctx, sites).total_states() == dim);
  }
}

TEST_CASE("lowering from highest weight reproduces the qsz sectors") {
  Context ctx = hubbard_context(2);
  auto sites = site_refs(2);
  BasisSet qs = qsbasis(ctx, sites);
  BasisSet qsz = qszbasis(ctx, sites);
  Expr sminus = total_spin(ctx, sites, SpinAxis::Minus);
  // For each (Q,Sz): normalized descendants of all multiplets with S >= |Sz|
  std::map<std::pair<int, int>, std::vector<Expr>> produced;
  for (const auto& sec : qs.sectors) {
    for (const auto& st : sec.states) {
      Expr e = st.to_expr();
      for (int tsz = sec.twice_spin; tsz >= -sec.twice_spin; tsz -= 2) {
        if (tsz < sec.twice_spin) {
          e = apply(ctx, sminus, e);
          Scalar norm2 = inner(ctx, conj(ctx, e), e);
          auto q = norm2.as_rational();
          REQUIRE(q);
          REQUIRE(!q->is_zero());
          e = e.scaled(Scalar::sqrt(Rational(1) / *q));
        }
        produced[{sec.q, tsz}].push_back(e);
      }
    }
  }
  // they orthonormally span every (Q,Sz) sector, exactly
  for (const auto& sec : qsz.sectors) {
    auto it = produced.find({sec.q, sec.twice_spin});
    REQUIRE(it != produced.end());
    const auto& fam = it->second;
    CHECK(fam.size() == sec.states.size());
    for (size_t i = 0; i < fam.size(); ++i) {
      for (size_t j = 0; j < fam.size(); ++j) {
        Scalar g = inner(ctx, conj(ctx, fam[i]), fam[j]);
        CHECK(g == (i == j ? Scalar::one() : Scalar::zero()));
      }
    }
  }
}

TEST_CASE("basis generation validates its inputs") {
  Context ctx = spinless_context(2);
  CHECK_THROWS_AS(qszbasis(ctx, {SiteRef("a", {Index::integer(1)})}), Error);
  Context h1 = hubbard_context(1);
  // orbital registration does not match two sites
  CHECK_THROWS_AS(qszbasis(h1, site_refs(2)), Error);
}
