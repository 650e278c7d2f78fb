#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sq/context.hpp"
#include "sq/scalar.hpp"

namespace sq {

/// First slot of an operator object: creation or annihilation.
enum class OpKind : int { Create = 0, Annihilate = 1 };

/// One second-quantization operator: symbol, CR/AN slot, indexes.
/// Majorana (self-conjugate) operators carry no CR/AN slot.
struct OperatorFactor {
  SymbolId sym = -1;
  std::optional<OpKind> kind;
  std::vector<Index> indexes;

  friend bool operator==(const OperatorFactor& a, const OperatorFactor& b) {
    return a.sym == b.sym && a.kind == b.kind && a.indexes == b.indexes;
  }
};

/// Anticommuting constant declared as a Grassmann parameter.
struct GrassmannFactor {
  std::string name;
  friend bool operator==(const GrassmannFactor&, const GrassmannFactor&) = default;
};

/// Dirac bra/ket over abstract quantum-number slots; nullopt is the
/// undetermined placeholder.
struct BraFactor {
  std::vector<std::optional<Index>> slots;
  friend bool operator==(const BraFactor&, const BraFactor&) = default;
};
struct KetFactor {
  std::vector<std::optional<Index>> slots;
  friend bool operator==(const KetFactor&, const KetFactor&) = default;
};

/// Occupation-number-representation states over the registered orbitals.
struct VcBraFactor {
  std::vector<std::uint8_t> bits;
  friend bool operator==(const VcBraFactor&, const VcBraFactor&) = default;
};
struct VcKetFactor {
  std::vector<std::uint8_t> bits;
  friend bool operator==(const VcKetFactor&, const VcKetFactor&) = default;
};

using Factor = std::variant<GrassmannFactor, OperatorFactor, BraFactor, KetFactor,
                            VcBraFactor, VcKetFactor>;

bool factor_equal(const Factor& a, const Factor& b);
/// Context-free total order used for term storage and printing.
bool factor_storage_less(const Factor& a, const Factor& b);

/// Scalar coefficient times an ordered product of non-commuting factors.
struct Term {
  Scalar coeff = Scalar::one();
  std::vector<Factor> factors;
};

/// Canonical sum of terms: sorted by factor sequence, coefficients merged,
/// zero terms dropped. The empty expression is the number 0; a factorless
/// term is a plain scalar.
class Expr {
 public:
  Expr() = default;

  static Expr zero() { return Expr(); }
  static Expr one() { return number(Rational(1)); }
  static Expr number(const Rational& q) { return scalar(Scalar::of(q)); }
  static Expr scalar(const Scalar& s);
  /// Single raw term; no canonicalization (callers normally pass the
  /// result through nc or canonicalize).
  static Expr raw(Term t);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// The scalar value when no term has operator content.
  std::optional<Scalar> as_scalar() const;

  void add_term(Term t);

  Expr operator-() const;
  Expr& operator+=(const Expr& o);
  Expr& operator-=(const Expr& o);
  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }

  Expr scaled(const Scalar& s) const;

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

 private:
  std::vector<Term> terms_;
};

/// Factor/expression constructors. They validate against the context.
Factor cr_factor(const Context& ctx, const std::string& sym, std::vector<Index> indexes);
Factor an_factor(const Context& ctx, const std::string& sym, std::vector<Index> indexes);
Factor majorana_factor(const Context& ctx, const std::string& sym, std::vector<Index> indexes);

Expr cr(const Context& ctx, const std::string& sym, std::vector<Index> indexes = {});
Expr an(const Context& ctx, const std::string& sym, std::vector<Index> indexes = {});
Expr majorana(const Context& ctx, const std::string& sym, std::vector<Index> indexes = {});
Expr grassmann(const Context& ctx, const std::string& name);
Expr ket(std::vector<std::optional<Index>> slots);
Expr bra(std::vector<std::optional<Index>> slots);
Expr vc_ket(std::vector<std::uint8_t> bits);
Expr vc_bra(std::vector<std::uint8_t> bits);

/// Non-commutative product: linear and associative, nc() = 1, nc(e) = e.
/// Distributes over sums and reorders every resulting term into canonical
/// form, emitting Kronecker-delta terms from (anti)commutators.
Expr nc(const Context& ctx, std::span<const Expr> operands);
Expr nc(const Context& ctx, std::initializer_list<Expr> operands);
inline Expr nc(const Context& ctx, const Expr& a, const Expr& b) {
  return nc(ctx, {a, b});
}
inline Expr nc(const Context& ctx, const Expr& a, const Expr& b, const Expr& c) {
  return nc(ctx, {a, b, c});
}

/// Reorders all terms into canonical factor order. Idempotent.
Expr canonicalize(const Context& ctx, const Expr& e);

/// Hermitian conjugation: reverses factors, swaps CR/AN, conjugates
/// scalars, turns bras into kets and vice versa. Involution.
Expr conj(const Context& ctx, const Expr& e);

Expr commutator(const Context& ctx, const Expr& a, const Expr& b);
Expr anticommutator(const Context& ctx, const Expr& a, const Expr& b);

/// Replaces bound parameters by exact numbers; unbound parameters persist.
Expr substitute(const Context& ctx, const Expr& e, const Bindings& b);

/// Structural equality of canonical forms. For reorder-disabled symbols
/// this is syntactic, not semantic, equality.
bool expr_equal(const Context& ctx, const Expr& a, const Expr& b);

/// Checks index arity consistency and factor well-formedness; called by
/// nc/canonicalize, available separately for early validation.
void validate_expr(const Context& ctx, const Expr& e);

}  // namespace sq
