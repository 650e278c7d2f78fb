#include "sq/scalar.hpp"

#include <algorithm>
#include <cmath>

#include "sq/context.hpp"

namespace sq {

Tri index_coincide(const Index& a, const Index& b) {
  if (a == b) return Tri::True;
  if (a.is_integer() && b.is_integer()) return Tri::False;
  return Tri::Unknown;
}

bool ParamPow::key_less(const ParamPow& a, const ParamPow& b) {
  if (a.name != b.name) return a.name < b.name;
  if (a.indexes != b.indexes)
    return std::lexicographical_compare(a.indexes.begin(), a.indexes.end(),
                                        b.indexes.begin(), b.indexes.end());
  return a.conjugated < b.conjugated;
}

namespace {

bool param_key_equal(const ParamPow& a, const ParamPow& b) {
  return a.name == b.name && a.indexes == b.indexes && a.conjugated == b.conjugated;
}

bool rational_less(const Rational& a, const Rational& b) { return a < b; }

}  // namespace

bool Monomial::key_less(const Monomial& a, const Monomial& b) {
  if (a.imag != b.imag) return !a.imag;
  if (a.root != b.root) return rational_less(a.root, b.root);
  if (a.params.size() != b.params.size()) return a.params.size() < b.params.size();
  for (size_t i = 0; i < a.params.size(); ++i) {
    if (!(a.params[i] == b.params[i]))
      return ParamPow::key_less(a.params[i], b.params[i]) ||
             (param_key_equal(a.params[i], b.params[i]) &&
              a.params[i].power < b.params[i].power);
  }
  if (a.deltas.size() != b.deltas.size()) return a.deltas.size() < b.deltas.size();
  for (size_t i = 0; i < a.deltas.size(); ++i) {
    if (!(a.deltas[i] == b.deltas[i])) return a.deltas[i] < b.deltas[i];
  }
  return false;
}

bool Monomial::key_equal(const Monomial& a, const Monomial& b) {
  return a.imag == b.imag && a.root == b.root && a.params == b.params &&
         std::equal(a.deltas.begin(), a.deltas.end(), b.deltas.begin(), b.deltas.end()) &&
         a.deltas.size() == b.deltas.size();
}

Scalar Scalar::of(const Rational& q) {
  Scalar s;
  if (!q.is_zero()) {
    Monomial m;
    m.coeff = q;
    s.ms_.push_back(std::move(m));
  }
  return s;
}

Scalar Scalar::imaginary() {
  Monomial m;
  m.imag = true;
  return of_monomial(std::move(m));
}

Scalar Scalar::sqrt(const Rational& r) {
  if (r.is_zero()) return zero();
  if (r.is_negative()) throw Error("sqrt of a negative rational");
  auto [sn, rn] = extract_square(r.num());
  auto [sd, rd] = extract_square(r.den());
  Monomial m;
  // sqrt(rn/rd) = sqrt(rn*rd)/rd
  m.coeff = Rational(sn, sd * rd);
  auto [s2, r2] = extract_square(rn * rd);
  m.coeff *= Rational(s2);
  m.root = Rational(r2);
  return of_monomial(std::move(m));
}

Scalar Scalar::param(std::string name, std::vector<Index> indexes, bool conjugated) {
  Monomial m;
  m.params.push_back(ParamPow{std::move(name), std::move(indexes), conjugated, 1});
  return of_monomial(std::move(m));
}

Scalar Scalar::delta(const Index& a, const Index& b) {
  switch (index_coincide(a, b)) {
    case Tri::True:
      return one();
    case Tri::False:
      return zero();
    case Tri::Unknown:
      break;
  }
  Monomial m;
  m.deltas.emplace_back(a, b);
  return of_monomial(std::move(m));
}

Scalar Scalar::of_monomial(Monomial m) {
  Scalar s;
  if (!m.coeff.is_zero()) s.ms_.push_back(std::move(m));
  return s;
}

bool Scalar::is_one() const {
  return ms_.size() == 1 && ms_[0].coeff.is_one() && !ms_[0].imag &&
         ms_[0].root.is_one() && ms_[0].params.empty() && ms_[0].deltas.empty();
}

std::optional<Rational> Scalar::as_rational() const {
  if (ms_.empty()) return Rational(0);
  if (ms_.size() == 1 && !ms_[0].imag && ms_[0].root.is_one() &&
      ms_[0].params.empty() && ms_[0].deltas.empty()) {
    return ms_[0].coeff;
  }
  return std::nullopt;
}

void Scalar::insert(Monomial m) {
  if (m.coeff.is_zero()) return;
  auto it = std::lower_bound(ms_.begin(), ms_.end(), m, Monomial::key_less);
  if (it != ms_.end() && Monomial::key_equal(*it, m)) {
    it->coeff += m.coeff;
    if (it->coeff.is_zero()) ms_.erase(it);
  } else {
    ms_.insert(it, std::move(m));
  }
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& m : r.ms_) m.coeff = -m.coeff;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  for (const auto& m : o.ms_) insert(m);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  for (const auto& m : o.ms_) {
    Monomial n = m;
    n.coeff = -n.coeff;
    insert(std::move(n));
  }
  return *this;
}

namespace {

// Multiplies two monomials; returns nullopt when a delta collapses to zero.
std::optional<Monomial> mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.coeff = a.coeff * b.coeff;
  r.imag = a.imag != b.imag;
  if (a.imag && b.imag) r.coeff = -r.coeff;  // i*i = -1
  // sqrt(ra)*sqrt(rb) = sqrt(ra*rb), square part folded into the coefficient.
  if (!a.root.is_one() || !b.root.is_one()) {
    Rational prod = a.root * b.root;
    auto [sn, rn] = extract_square(prod.num());
    auto [sd, rd] = extract_square(prod.den());
    r.coeff *= Rational(sn, sd * rd);
    auto [s2, r2] = extract_square(rn * rd);
    r.coeff *= Rational(s2);
    r.root = Rational(r2);
  }
  // Merge parameter powers.
  r.params = a.params;
  for (const auto& p : b.params) {
    auto it = std::find_if(r.params.begin(), r.params.end(),
                           [&](const ParamPow& q) { return param_key_equal(p, q); });
    if (it != r.params.end()) {
      it->power += p.power;
      if (it->power == 0) r.params.erase(it);
    } else {
      r.params.push_back(p);
    }
  }
  std::sort(r.params.begin(), r.params.end(), ParamPow::key_less);
  // Merge deltas; identical deltas are idempotent.
  r.deltas = a.deltas;
  for (const auto& d : b.deltas) {
    auto it = std::lower_bound(r.deltas.begin(), r.deltas.end(), d);
    if (it == r.deltas.end() || !(*it == d)) r.deltas.insert(it, d);
  }
  return r;
}

}  // namespace

Scalar& Scalar::operator*=(const Scalar& o) {
  Scalar r;
  for (const auto& a : ms_) {
    for (const auto& b : o.ms_) {
      auto m = mono_mul(a, b);
      if (m) r.insert(std::move(*m));
    }
  }
  ms_ = std::move(r.ms_);
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.ms_.size() != b.ms_.size()) return false;
  for (size_t i = 0; i < a.ms_.size(); ++i) {
    if (!(a.ms_[i].coeff == b.ms_[i].coeff) ||
        !Monomial::key_equal(a.ms_[i], b.ms_[i]))
      return false;
  }
  return true;
}

bool Scalar::less(const Scalar& a, const Scalar& b) {
  if (a.ms_.size() != b.ms_.size()) return a.ms_.size() < b.ms_.size();
  for (size_t i = 0; i < a.ms_.size(); ++i) {
    if (Monomial::key_less(a.ms_[i], b.ms_[i])) return true;
    if (Monomial::key_less(b.ms_[i], a.ms_[i])) return false;
    if (a.ms_[i].coeff != b.ms_[i].coeff) return a.ms_[i].coeff < b.ms_[i].coeff;
  }
  return false;
}

std::complex<double> Scalar::to_complex() const {
  std::complex<double> v(0.0, 0.0);
  for (const auto& m : ms_) {
    if (!m.params.empty())
      throw Error("scalar is not numeric: unbound parameter " + m.params[0].name);
    if (!m.deltas.empty())
      throw Error("scalar is not numeric: unresolved delta on " + m.deltas[0].lo.str());
    double x = m.coeff.to_double() * std::sqrt(m.root.to_double());
    if (m.imag)
      v += std::complex<double>(0.0, x);
    else
      v += std::complex<double>(x, 0.0);
  }
  return v;
}

Scalar scalar_conj(const Context& ctx, const Scalar& s) {
  Scalar r;
  for (const auto& m : s.monomials()) {
    Monomial n = m;
    if (n.imag) n.coeff = -n.coeff;
    for (auto& p : n.params) {
      if (ctx.param_kind(p.name) == ParamKind::Complex) p.conjugated = !p.conjugated;
    }
    std::sort(n.params.begin(), n.params.end(), ParamPow::key_less);
    r += Scalar::of_monomial(std::move(n));
  }
  return r;
}

Scalar scalar_substitute(const Context& ctx, const Scalar& s, const Bindings& b) {
  for (const auto& [name, v] : b) {
    (void)v;
    if (!ctx.has_param(name)) throw Error("binding for undeclared parameter: " + name);
  }
  Scalar r;
  for (const auto& m : s.monomials()) {
    Monomial n;
    n.coeff = m.coeff;
    n.imag = m.imag;
    n.root = m.root;
    n.deltas = m.deltas;
    bool dead = false;
    for (const auto& p : m.params) {
      auto it = p.indexes.empty() ? b.find(p.name) : b.end();
      if (it == b.end()) {
        n.params.push_back(p);
        continue;
      }
      ExactValue v = it->second;
      if (p.conjugated && v.imag) v.magnitude = -v.magnitude;
      // (q*i)^p = q^p * i^p
      Rational mag = v.magnitude.pow(p.power);
      if (mag.is_zero()) {
        dead = true;
        break;
      }
      n.coeff *= mag;
      if (v.imag) {
        switch (((p.power % 4) + 4) % 4) {
          case 0:
            break;
          case 1:
            if (n.imag) n.coeff = -n.coeff;
            n.imag = !n.imag;
            break;
          case 2:
            n.coeff = -n.coeff;
            break;
          case 3:
            if (!n.imag) n.coeff = -n.coeff;
            n.imag = !n.imag;
            break;
        }
      }
    }
    if (dead) continue;
    std::sort(n.params.begin(), n.params.end(), ParamPow::key_less);
    r += Scalar::of_monomial(std::move(n));
  }
  return r;
}

Scalar scalar_rename_index(const Scalar& s, const Index& from, const Index& to) {
  auto ren = [&](const Index& i) { return i == from ? to : i; };
  Scalar r;
  for (const auto& m : s.monomials()) {
    Monomial n;
    n.coeff = m.coeff;
    n.imag = m.imag;
    n.root = m.root;
    n.params = m.params;
    for (auto& p : n.params)
      for (auto& i : p.indexes) i = ren(i);
    std::sort(n.params.begin(), n.params.end(), ParamPow::key_less);
    Scalar piece = Scalar::of_monomial(std::move(n));
    for (const auto& d : m.deltas) piece *= Scalar::delta(ren(d.lo), ren(d.hi));
    r += piece;
  }
  return r;
}

bool scalar_mentions(const Scalar& s, const Index& atom) {
  for (const auto& m : s.monomials()) {
    for (const auto& p : m.params)
      for (const auto& i : p.indexes)
        if (i == atom) return true;
    for (const auto& d : m.deltas)
      if (d.lo == atom || d.hi == atom) return true;
  }
  return false;
}

}  // namespace sq
