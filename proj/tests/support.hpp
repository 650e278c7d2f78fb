#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "sq/builders.hpp"
#include "sq/context.hpp"
#include "sq/expr.hpp"

namespace sqtest {

using namespace sq;

/// Spin-1/2 fermion c over n sites with registered orbitals, plus the
/// parameters t and U.
inline Context hubbard_context(int nsites) {
  ContextBuilder b;
  SymbolDecl c;
  c.name = "c";
  c.statistics = Statistics::DiracFermion;
  c.twice_spin = 1;
  b.declare_symbol(c);
  b.declare_param("t", ParamKind::Real);
  b.declare_param("U", ParamKind::Real);
  std::vector<Index> sites;
  for (int i = 1; i <= nsites; ++i) sites.push_back(Index::integer(i));
  b.add_site_orbitals("c", sites);
  return b.build();
}

/// Spinless fermion a over orbitals 1..n.
inline Context spinless_context(int norb) {
  ContextBuilder b;
  SymbolDecl a;
  a.name = "a";
  b.declare_symbol(a);
  std::vector<Index> sites;
  for (int i = 1; i <= norb; ++i) sites.push_back(Index::integer(i));
  b.add_site_orbitals("a", sites);
  return b.build();
}

/// Fermi-sea fermion d over the levels -2,-1,+1,+2.
inline Context fermi_sea_context() {
  ContextBuilder b;
  SymbolDecl d;
  d.name = "d";
  d.vacuum = VacuumKind::FermiSea;
  b.declare_symbol(d);
  for (int k : {-2, -1, 1, 2}) b.add_orbital("d", Index::integer(k));
  return b.build();
}

/// Random operator string over numeric orbitals of one spinless symbol.
inline Expr random_string(const Context& ctx, std::mt19937& rng, const std::string& sym,
                          int max_len, const std::vector<std::int64_t>& orbitals) {
  std::uniform_int_distribution<int> len_d(0, max_len);
  std::uniform_int_distribution<int> kind_d(0, 1);
  std::uniform_int_distribution<size_t> orb_d(0, orbitals.size() - 1);
  int len = len_d(rng);
  Expr e = Expr::one();
  std::vector<Expr> ops;
  for (int i = 0; i < len; ++i) {
    std::vector<Index> idx{Index::integer(orbitals[orb_d(rng)])};
    ops.push_back(kind_d(rng) ? cr(ctx, sym, idx) : an(ctx, sym, idx));
  }
  return nc(ctx, std::span<const Expr>(ops.data(), ops.size()));
}

/// Random expression: a few random strings with random rational weights.
inline Expr random_expr(const Context& ctx, std::mt19937& rng, const std::string& sym,
                        int max_terms, int max_len,
                        const std::vector<std::int64_t>& orbitals) {
  std::uniform_int_distribution<int> nterm_d(1, max_terms);
  std::uniform_int_distribution<int> num_d(-4, 4);
  std::uniform_int_distribution<int> den_d(1, 4);
  Expr e;
  int n = nterm_d(rng);
  for (int i = 0; i < n; ++i) {
    Rational q(num_d(rng), den_d(rng));
    e += random_string(ctx, rng, sym, max_len, orbitals).scaled(Scalar::of(q));
  }
  return e;
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
inline std::vector<double> symmetric_eigenvalues(std::vector<std::vector<double>> a) {
  size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-26) break;
    for (size_t p = 0; p < n; ++p) {
      for (size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (size_t k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (size_t k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace sqtest
