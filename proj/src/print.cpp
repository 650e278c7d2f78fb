#include "sq/print.hpp"

namespace sq {

namespace {

const char* times_sep(PrintStyle st) {
  switch (st) {
    case PrintStyle::Ascii: return "*";
    case PrintStyle::Unicode: return "·";  // centered dot
    case PrintStyle::Latex: return " \\cdot ";
  }
  return "*";
}

std::string index_str(const Index& i) { return i.str(); }

std::string rational_str(const Rational& q, PrintStyle st) {
  if (st == PrintStyle::Latex && !q.is_integer()) {
    return "\\frac{" + std::to_string(q.num()) + "}{" + std::to_string(q.den()) + "}";
  }
  return q.str();
}

std::string root_str(const Rational& r, PrintStyle st) {
  switch (st) {
    case PrintStyle::Ascii:
      return "sqrt(" + r.str() + ")";
    case PrintStyle::Unicode:
      return r.is_integer() ? "√" + r.str() : "√(" + r.str() + ")";
    case PrintStyle::Latex:
      return "\\sqrt{" + r.str() + "}";
  }
  return {};
}

std::string subscript_list(const std::vector<Index>& idx) {
  std::string s;
  for (size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ",";
    s += index_str(idx[i]);
  }
  return s;
}

std::string param_str(const ParamPow& p, PrintStyle st) {
  std::string base;
  switch (st) {
    case PrintStyle::Ascii: {
      base = p.name;
      if (!p.indexes.empty()) base += "(" + subscript_list(p.indexes) + ")";
      if (p.conjugated) base = "conj(" + base + ")";
      // Powers are printed as repeated products so the form reparses.
      std::string s = base;
      for (int k = 1; k < p.power; ++k) s += "*" + base;
      return s;
    }
    case PrintStyle::Unicode: {
      base = p.name;
      if (p.conjugated) base += "*";
      if (!p.indexes.empty()) base += "_{" + subscript_list(p.indexes) + "}";
      if (p.power != 1) base += "^" + std::to_string(p.power);
      return base;
    }
    case PrintStyle::Latex: {
      base = p.name;
      if (p.conjugated) base += "^{*}";
      if (!p.indexes.empty()) base += "_{" + subscript_list(p.indexes) + "}";
      if (p.power != 1) base += "^{" + std::to_string(p.power) + "}";
      return base;
    }
  }
  return {};
}

std::string delta_str(const Delta& d, PrintStyle st) {
  switch (st) {
    case PrintStyle::Ascii:
      return "delta(" + index_str(d.lo) + "," + index_str(d.hi) + ")";
    case PrintStyle::Unicode:
      return "δ_{" + index_str(d.lo) + "," + index_str(d.hi) + "}";
    case PrintStyle::Latex:
      return "\\delta_{" + index_str(d.lo) + "," + index_str(d.hi) + "}";
  }
  return {};
}

// Magnitude parts of a monomial, sign reported separately.
std::vector<std::string> monomial_parts(const Monomial& m, PrintStyle st,
                                        bool& negative) {
  negative = m.coeff.is_negative();
  Rational q = m.coeff.abs();
  std::vector<std::string> parts;
  bool have_other = !m.root.is_one() || m.imag || !m.params.empty() || !m.deltas.empty();
  if (!q.is_one() || !have_other) parts.push_back(rational_str(q, st));
  if (!m.root.is_one()) parts.push_back(root_str(m.root, st));
  if (m.imag) parts.push_back(st == PrintStyle::Ascii ? "I" : "i");
  for (const auto& p : m.params) parts.push_back(param_str(p, st));
  for (const auto& d : m.deltas) parts.push_back(delta_str(d, st));
  return parts;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string s;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += sep;
    s += parts[i];
  }
  return s;
}

// Renders without an enclosing sign: "a + b - c".
std::string scalar_body(const Scalar& s, PrintStyle st) {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& m : s.monomials()) {
    bool neg = false;
    auto parts = monomial_parts(m, st, neg);
    if (first) {
      if (neg) out += st == PrintStyle::Unicode ? "−" : "-";
      first = false;
    } else {
      out += neg ? (st == PrintStyle::Unicode ? " − " : " - ") : " + ";
    }
    out += join(parts, times_sep(st));
  }
  return out;
}

std::string op_factor_str(const Context& ctx, const OperatorFactor& f, PrintStyle st) {
  const SymbolDecl& d = ctx.symbol(f.sym);
  bool dagger = f.kind && *f.kind == OpKind::Create;
  bool spin_arrow = false;
  if (st != PrintStyle::Ascii && d.twice_spin && *d.twice_spin == 1 &&
      !f.indexes.empty() && f.indexes.back().is_integer()) {
    spin_arrow = true;
  }
  switch (st) {
    case PrintStyle::Ascii: {
      std::string s = d.name;
      if (dagger) s += "+";
      s += "(";
      for (size_t i = 0; i < f.indexes.size(); ++i) {
        if (i) s += ",";
        bool is_spin_slot =
            d.twice_spin && *d.twice_spin == 1 && i + 1 == f.indexes.size();
        if (is_spin_slot && f.indexes[i].is_integer()) {
          s += f.indexes[i].value() == 1 ? "UP" : "DO";
        } else {
          s += index_str(f.indexes[i]);
        }
      }
      s += ")";
      return s;
    }
    case PrintStyle::Unicode: {
      std::string s = d.name;
      if (dagger) s += "†";
      if (f.indexes.empty()) return s;
      s += "_{";
      size_t n = f.indexes.size() - (spin_arrow ? 1 : 0);
      for (size_t i = 0; i < n; ++i) {
        if (i) s += ",";
        s += index_str(f.indexes[i]);
      }
      if (spin_arrow)
        s += f.indexes.back().value() == 1 ? "↑" : "↓";
      s += "}";
      return s;
    }
    case PrintStyle::Latex: {
      std::string s = d.name;
      if (dagger) s += "^\\dagger";
      if (f.indexes.empty()) return s;
      s += "_{";
      size_t n = f.indexes.size() - (spin_arrow ? 1 : 0);
      for (size_t i = 0; i < n; ++i) {
        if (i) s += ",";
        s += index_str(f.indexes[i]);
      }
      if (spin_arrow)
        s += f.indexes.back().value() == 1 ? "\\uparrow" : "\\downarrow";
      s += "}";
      return s;
    }
  }
  return {};
}

std::string slots_str(const std::vector<std::optional<Index>>& slots, PrintStyle st) {
  std::string s;
  for (size_t i = 0; i < slots.size(); ++i) {
    if (i) s += ",";
    if (!slots[i]) {
      s += st == PrintStyle::Ascii ? "Null"
                                   : (st == PrintStyle::Unicode ? "∘" : "\\circ");
    } else {
      s += index_str(*slots[i]);
    }
  }
  return s;
}

std::string bits_str(const std::vector<std::uint8_t>& bits, PrintStyle st) {
  std::string s;
  for (size_t i = 0; i < bits.size(); ++i) {
    switch (st) {
      case PrintStyle::Ascii:
        if (i) s += ",";
        s += bits[i] ? "1" : "0";
        break;
      case PrintStyle::Unicode:
        s += bits[i] ? "■" : "□";
        break;
      case PrintStyle::Latex:
        s += bits[i] ? "\\blacksquare" : "\\square";
        break;
    }
  }
  return s;
}

std::string factor_str(const Context& ctx, const Factor& f, PrintStyle st) {
  switch (f.index()) {
    case 0:
      return std::get<GrassmannFactor>(f).name;
    case 1:
      return op_factor_str(ctx, std::get<OperatorFactor>(f), st);
    case 2: {
      const auto& b = std::get<BraFactor>(f);
      switch (st) {
        case PrintStyle::Ascii: return "bra[" + slots_str(b.slots, st) + "]";
        case PrintStyle::Unicode: return "⟨" + slots_str(b.slots, st) + "|";
        case PrintStyle::Latex: return "\\langle " + slots_str(b.slots, st) + "|";
      }
      break;
    }
    case 3: {
      const auto& k = std::get<KetFactor>(f);
      switch (st) {
        case PrintStyle::Ascii: return "ket[" + slots_str(k.slots, st) + "]";
        case PrintStyle::Unicode: return "|" + slots_str(k.slots, st) + "⟩";
        case PrintStyle::Latex: return "|" + slots_str(k.slots, st) + "\\rangle";
      }
      break;
    }
    case 4: {
      const auto& v = std::get<VcBraFactor>(f);
      switch (st) {
        case PrintStyle::Ascii: return "vcb[" + bits_str(v.bits, st) + "]";
        case PrintStyle::Unicode: return "⟨" + bits_str(v.bits, st) + "|";
        case PrintStyle::Latex: return "\\langle " + bits_str(v.bits, st) + "|";
      }
      break;
    }
    default: {
      const auto& v = std::get<VcKetFactor>(f);
      switch (st) {
        case PrintStyle::Ascii: return "vc[" + bits_str(v.bits, st) + "]";
        case PrintStyle::Unicode: return "|" + bits_str(v.bits, st) + "⟩";
        case PrintStyle::Latex: return "|" + bits_str(v.bits, st) + "\\rangle";
      }
      break;
    }
  }
  return {};
}

// Sign and unsigned rendering of one term given extra leading pieces
// (used for the sum wrapper); factors juxtapose in ascii.
std::string term_body(const Context& ctx, const Scalar& coeff,
                      const std::vector<Factor>& factors, PrintStyle st,
                      bool& negative, const std::string& tail) {
  std::vector<std::string> parts;
  bool have_content = !factors.empty() || !tail.empty();
  negative = false;
  if (coeff.monomials().size() == 1) {
    auto mparts = monomial_parts(coeff.monomials()[0], st, negative);
    if (have_content && mparts.size() == 1 && mparts[0] == "1") {
      // drop a bare unit coefficient
    } else {
      parts.insert(parts.end(), mparts.begin(), mparts.end());
    }
  } else {
    parts.push_back("(" + scalar_body(coeff, st) + ")");
  }
  std::string factor_part;
  for (size_t i = 0; i < factors.size(); ++i) {
    if (i) factor_part += times_sep(st);
    factor_part += factor_str(ctx, factors[i], st);
  }
  if (!tail.empty()) {
    if (!factor_part.empty()) factor_part += times_sep(st);
    factor_part += tail;
  }
  if (!factor_part.empty()) parts.push_back(factor_part);
  if (parts.empty()) parts.push_back("1");
  return join(parts, times_sep(st));
}

std::string join_signed_terms(const std::vector<std::pair<bool, std::string>>& ts,
                              PrintStyle st) {
  if (ts.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < ts.size(); ++i) {
    bool neg = ts[i].first;
    if (i == 0) {
      if (neg) out += st == PrintStyle::Unicode ? "−" : "-";
    } else {
      out += neg ? (st == PrintStyle::Unicode ? " − " : " - ") : " + ";
    }
    out += ts[i].second;
  }
  return out;
}

}  // namespace

std::string print_scalar(const Scalar& s, PrintStyle style) {
  return scalar_body(s, style);
}

std::string Scalar::str() const { return print_scalar(*this, PrintStyle::Ascii); }

std::string print_expr(const Context& ctx, const Expr& e, PrintStyle style) {
  std::vector<std::pair<bool, std::string>> ts;
  for (const auto& t : e.terms()) {
    bool neg = false;
    std::string body = term_body(ctx, t.coeff, t.factors, style, neg, {});
    ts.emplace_back(neg, std::move(body));
  }
  return join_signed_terms(ts, style);
}

std::string print_sum_expr(const Context& ctx, const SumExpr& s, PrintStyle style) {
  std::vector<std::pair<bool, std::string>> ts;
  for (const auto& t : s.terms()) {
    std::string tail;
    if (!t.dummies.empty()) {
      bool ineg = false;
      std::string inner = term_body(ctx, t.body.coeff, t.body.factors, style, ineg, {});
      if (ineg) inner = (style == PrintStyle::Unicode ? "−" : "-") + inner;
      std::string dl;
      for (size_t i = 0; i < t.dummies.size(); ++i) {
        if (i) dl += ",";
        dl += t.dummies[i].str();
      }
      switch (style) {
        case PrintStyle::Ascii:
          tail = "sum[" + inner + "]{" + dl + "}";
          break;
        case PrintStyle::Unicode:
          tail = "Σ_{" + dl + "}(" + inner + ")";
          break;
        case PrintStyle::Latex:
          tail = "\\sum_{" + dl + "} \\left( " + inner + " \\right)";
          break;
      }
      bool neg = false;
      std::string body = term_body(ctx, t.outer, {}, style, neg, tail);
      ts.emplace_back(neg, std::move(body));
    } else {
      Scalar c = t.outer * t.body.coeff;
      bool neg = false;
      std::string body = term_body(ctx, c, t.body.factors, style, neg, {});
      ts.emplace_back(neg, std::move(body));
    }
  }
  return join_signed_terms(ts, style);
}

}  // namespace sq
