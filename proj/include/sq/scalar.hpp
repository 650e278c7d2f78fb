#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sq/rational.hpp"

namespace sq {

class Context;

/// Operator/ket index: an integer literal or a named symbolic atom.
///
/// Two integers compare decidably; whether two distinct atoms (or an atom
/// and an integer) coincide is unknown and is tracked with Kronecker deltas.
class Index {
 public:
  Index() = default;

  static Index integer(std::int64_t v) {
    Index i;
    i.is_int_ = true;
    i.ival_ = v;
    return i;
  }
  static Index atom(std::string name) {
    Index i;
    i.is_int_ = false;
    i.name_ = std::move(name);
    return i;
  }

  bool is_integer() const { return is_int_; }
  bool is_atom() const { return !is_int_; }
  std::int64_t value() const { return ival_; }
  const std::string& name() const { return name_; }

  friend bool operator==(const Index& a, const Index& b) {
    if (a.is_int_ != b.is_int_) return false;
    return a.is_int_ ? a.ival_ == b.ival_ : a.name_ == b.name_;
  }
  friend bool operator!=(const Index& a, const Index& b) { return !(a == b); }
  friend bool operator<(const Index& a, const Index& b) {
    if (a.is_int_ != b.is_int_) return a.is_int_;  // integers before atoms
    if (a.is_int_) return a.ival_ < b.ival_;
    return a.name_ < b.name_;
  }

  std::string str() const { return is_int_ ? std::to_string(ival_) : name_; }

 private:
  bool is_int_ = true;
  std::int64_t ival_ = 0;
  std::string name_;
};

/// Spin literals: the last index of a spin-1/2 symbol.
inline Index spin_up() { return Index::integer(1); }
inline Index spin_down() { return Index::integer(0); }

/// Three-valued index coincidence.
enum class Tri { False, True, Unknown };

Tri index_coincide(const Index& a, const Index& b);

/// Kronecker delta on a pair of indexes, stored with operands sorted.
struct Delta {
  Index lo, hi;

  Delta(const Index& a, const Index& b) {
    if (b < a) {
      lo = b;
      hi = a;
    } else {
      lo = a;
      hi = b;
    }
  }

  friend bool operator==(const Delta& a, const Delta& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
  friend bool operator<(const Delta& a, const Delta& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.hi < b.hi;
  }
};

/// One parameter factor within a monomial: name, optional indexes,
/// conjugation mark (complex parameters only), integer power >= 1.
struct ParamPow {
  std::string name;
  std::vector<Index> indexes;
  bool conjugated = false;
  int power = 1;

  friend bool operator==(const ParamPow& a, const ParamPow& b) {
    return a.name == b.name && a.indexes == b.indexes &&
           a.conjugated == b.conjugated && a.power == b.power;
  }
  // Identity key order ignores power (used for merging).
  static bool key_less(const ParamPow& a, const ParamPow& b);
};

/// q * i^[imag] * sqrt(root) * product of params * product of deltas.
/// root is a square-free positive rational, 1 when absent.
struct Monomial {
  Rational coeff = Rational(1);
  bool imag = false;
  Rational root = Rational(1);
  std::vector<ParamPow> params;  // sorted by key
  std::vector<Delta> deltas;     // sorted, unique

  /// Orders by (imag, root, params, deltas); coefficient excluded.
  static bool key_less(const Monomial& a, const Monomial& b);
  static bool key_equal(const Monomial& a, const Monomial& b);
};

/// Binding value for substitution: a rational or a rational multiple of i.
struct ExactValue {
  Rational magnitude;
  bool imag = false;
};

using Bindings = std::map<std::string, ExactValue>;

/// Element of the coefficient ring: a formal sum of monomials, kept in a
/// canonical sorted/merged form. Closed under +, *, conjugation.
class Scalar {
 public:
  Scalar() = default;  // zero

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return of(Rational(1)); }
  static Scalar of(const Rational& q);
  static Scalar imaginary();
  /// sqrt of a positive rational, reduced to q'*sqrt(square-free).
  static Scalar sqrt(const Rational& r);
  static Scalar param(std::string name, std::vector<Index> indexes = {},
                      bool conjugated = false);
  static Scalar delta(const Index& a, const Index& b);
  static Scalar of_monomial(Monomial m);

  bool is_zero() const { return ms_.empty(); }
  bool is_one() const;
  /// The value as a plain rational, if it is one.
  std::optional<Rational> as_rational() const;

  const std::vector<Monomial>& monomials() const { return ms_; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Total order for use as a container key / deterministic printing.
  static bool less(const Scalar& a, const Scalar& b);

  /// Numeric value; throws if parameters or unresolved deltas remain.
  std::complex<double> to_complex() const;

  std::string str() const;  // ascii form, reparseable by the DSL

 private:
  std::vector<Monomial> ms_;
  void insert(Monomial m);
};

/// Complex conjugation; flips i, marks complex parameters (kind lookup
/// through the context), leaves real/integer parameters alone.
Scalar scalar_conj(const Context& ctx, const Scalar& s);

/// Replaces bound parameters by exact numeric values. Indexed parameter
/// occurrences are left alone (they denote families, not single values).
Scalar scalar_substitute(const Context& ctx, const Scalar& s, const Bindings& b);

/// Renames every occurrence of the atom `from` to `to` (deltas, params).
Scalar scalar_rename_index(const Scalar& s, const Index& from, const Index& to);

/// True if the scalar mentions the atom anywhere.
bool scalar_mentions(const Scalar& s, const Index& atom);

}  // namespace sq
