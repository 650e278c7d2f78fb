#pragma once

#include "sq/expr.hpp"

namespace sq {

/// One summand: outer * sum over dummies of body. The outer scalar holds
/// everything independent of the dummies; the body coefficient is a single
/// monomial of dummy-dependent deltas and indexed parameters with unit
/// rational part. Plain (sum-free) terms have an empty dummy list.
struct SumTerm {
  Scalar outer = Scalar::one();
  Term body;
  std::vector<Index> dummies;  // sorted symbolic atoms, each used in body
};

/// Linear combination of symbolic sums and plain terms. Sums are purely
/// formal: no ranges exist anywhere in the type.
class SumExpr {
 public:
  SumExpr() = default;

  const std::vector<SumTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool has_sums() const;

  void add_term(SumTerm t);

  SumExpr operator-() const;
  SumExpr& operator+=(const SumExpr& o);
  SumExpr& operator-=(const SumExpr& o);
  friend SumExpr operator+(SumExpr a, const SumExpr& b) { return a += b; }
  friend SumExpr operator-(SumExpr a, const SumExpr& b) { return a -= b; }

  SumExpr scaled(const Scalar& s) const;

  /// The plain expression; throws if any dummies remain.
  Expr to_expr() const;

  friend bool operator==(const SumExpr& a, const SumExpr& b);
  friend bool operator!=(const SumExpr& a, const SumExpr& b) { return !(a == b); }

 private:
  std::vector<SumTerm> terms_;
};

/// Wraps a body under a formal sum. Dummy-independent scalars are factored
/// out, the dummy list is sorted, and dummies the body does not mention
/// are dropped (a note goes to `warnings` when given: a formal sum over an
/// absent index has no defined cardinality).
SumExpr sum_make(const Context& ctx, const Expr& body, std::vector<Index> dummies,
                 std::vector<std::string>* warnings = nullptr);

/// Lift of a plain expression (no dummies).
SumExpr sum_lift(const Context& ctx, const Expr& e);

/// Product of sums under a single merged sum. Colliding dummy names are
/// renamed with the smallest free integer suffix; free indexes of one
/// operand are never captured by a dummy of the other.
SumExpr sum_nc(const Context& ctx, const SumExpr& a, const SumExpr& b,
               std::vector<std::string>* warnings = nullptr);

/// Fixpoint simplification: collapses deltas over dummies into index
/// substitutions, renames dummies to a fixed sequence in order of first
/// appearance in the canonical body, and merges alpha-equivalent terms.
SumExpr sum_simplify(const Context& ctx, const SumExpr& s);

/// Equality modulo dummy renaming and delta sifting.
bool sum_equal(const Context& ctx, const SumExpr& a, const SumExpr& b);

/// Commutator with the replacement names always chosen on the second
/// operand, so equal terms of the two product orders cancel structurally.
SumExpr sum_commutator(const Context& ctx, const SumExpr& a, const SumExpr& b);

}  // namespace sq
