#include "sq/parse.hpp"

#include <algorithm>
#include <cctype>

#include "sq/builders.hpp"

namespace sq {

namespace {

enum class Tok { End, Int, Ident, Plus, Minus, Star, Slash, LParen, RParen,
                 LBrack, RBrack, LBrace, RBrace, Comma };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::int64_t ival = 0;
  size_t pos = 0;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.pos = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.kind = Tok::Int;
      t.text = s.substr(i, j - i);
      try {
        t.ival = std::stoll(t.text);
      } catch (const std::logic_error&) {
        throw ParseError("integer literal out of range", i);
      }
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      t.kind = Tok::Ident;
      t.text = s.substr(i, j - i);
      i = j;
    } else {
      switch (c) {
        case '+': t.kind = Tok::Plus; break;
        case '-': t.kind = Tok::Minus; break;
        case '*': t.kind = Tok::Star; break;
        case '/': t.kind = Tok::Slash; break;
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case '[': t.kind = Tok::LBrack; break;
        case ']': t.kind = Tok::RBrack; break;
        case '{': t.kind = Tok::LBrace; break;
        case '}': t.kind = Tok::RBrace; break;
        case ',': t.kind = Tok::Comma; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", i);
      }
      ++i;
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.pos = s.size();
  out.push_back(end);
  return out;
}

bool is_macro_name(const std::string& n) {
  static const char* names[] = {"number", "hop", "hubbard", "spinx", "spiny",
                                "spinz",  "spinplus", "spinminus", "snegx",
                                "snegy",  "snegz", "spinspin", "projector",
                                "projector0"};
  for (const char* m : names) {
    if (n == m) return true;
  }
  return false;
}

class Parser {
 public:
  Parser(const Context& ctx, const std::string& src) : ctx_(ctx), toks_(lex(src)) {}

  SumExpr parse() {
    SumExpr e = parse_expr_rule();
    expect(Tok::End, "trailing input");
    return e;
  }

 private:
  const Context& ctx_;
  std::vector<Token> toks_;
  size_t at_ = 0;

  const Token& cur() const { return toks_[at_]; }
  const Token& ahead(size_t n) const {
    return toks_[std::min(at_ + n, toks_.size() - 1)];
  }
  Token take() { return toks_[at_++]; }
  bool accept(Tok k) {
    if (cur().kind != k) return false;
    ++at_;
    return true;
  }
  void expect(Tok k, const char* what) {
    if (cur().kind != k) throw ParseError(std::string("expected ") + what, cur().pos);
    ++at_;
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, cur().pos); }

  SumExpr parse_expr_rule() {
    bool neg = false;
    if (accept(Tok::Minus))
      neg = true;
    else
      accept(Tok::Plus);
    SumExpr e = parse_term();
    if (neg) e = -e;
    while (cur().kind == Tok::Plus || cur().kind == Tok::Minus) {
      bool minus = take().kind == Tok::Minus;
      SumExpr t = parse_term();
      if (minus)
        e -= t;
      else
        e += t;
    }
    return e;
  }

  bool starts_primary() const {
    switch (cur().kind) {
      case Tok::Int:
      case Tok::Ident:
      case Tok::LParen:
        return true;
      default:
        return false;
    }
  }

  SumExpr parse_term() {
    SumExpr e = parse_primary();
    while (true) {
      if (accept(Tok::Star)) {
        e = sum_nc(ctx_, e, parse_primary());
      } else if (starts_primary()) {
        e = sum_nc(ctx_, e, parse_primary());
      } else {
        break;
      }
    }
    return e;
  }

  Rational parse_number_tail(std::int64_t first) {
    if (cur().kind == Tok::Slash && ahead(1).kind == Tok::Int) {
      take();
      Token d = take();
      return Rational(first, d.ival);
    }
    return Rational(first);
  }

  Index parse_index() {
    if (accept(Tok::Minus)) {
      if (cur().kind != Tok::Int) fail("expected an integer after '-'");
      return Index::integer(-take().ival);
    }
    if (cur().kind == Tok::Int) return Index::integer(take().ival);
    if (cur().kind == Tok::Ident) {
      Token t = take();
      if (t.text == "UP") return spin_up();
      if (t.text == "DO") return spin_down();
      return Index::atom(t.text);
    }
    fail("expected an index");
  }

  std::vector<Index> parse_index_list(Tok closer, const char* closer_name) {
    std::vector<Index> out;
    if (cur().kind != closer) {
      out.push_back(parse_index());
      while (accept(Tok::Comma)) out.push_back(parse_index());
    }
    expect(closer, closer_name);
    return out;
  }

  SumExpr lift(const Expr& e) { return sum_lift(ctx_, e); }

  SumExpr parse_primary() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::Int: {
        std::int64_t v = take().ival;
        return lift(Expr::number(parse_number_tail(v)));
      }
      case Tok::LParen: {
        take();
        SumExpr e = parse_expr_rule();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident:
        return parse_ident_primary();
      default:
        fail("expected a factor or number");
    }
  }

  SumExpr parse_ident_primary() {
    Token id = take();
    const std::string& name = id.text;

    if (name == "I") return lift(Expr::scalar(Scalar::imaginary()));

    if (name == "sqrt" && cur().kind == Tok::LParen) {
      take();
      if (cur().kind != Tok::Int) fail("expected a rational under sqrt");
      std::int64_t n = take().ival;
      Rational r = parse_number_tail(n);
      expect(Tok::RParen, "')'");
      return lift(Expr::scalar(Scalar::sqrt(r)));
    }

    if (name == "delta" && cur().kind == Tok::LParen) {
      take();
      Index a = parse_index();
      expect(Tok::Comma, "','");
      Index b = parse_index();
      expect(Tok::RParen, "')'");
      return lift(Expr::scalar(Scalar::delta(a, b)));
    }

    if (name == "conj" && cur().kind == Tok::LParen) {
      take();
      if (cur().kind != Tok::Ident) fail("expected a parameter under conj");
      Token p = take();
      if (!ctx_.has_param(p.text))
        throw ParseError("undeclared parameter: " + p.text, p.pos);
      std::vector<Index> idx;
      if (accept(Tok::LParen)) idx = parse_index_list(Tok::RParen, "')'");
      expect(Tok::RParen, "')'");
      return lift(Expr::scalar(Scalar::param(p.text, std::move(idx), true)));
    }

    if (name == "ket" && cur().kind == Tok::LBrack) return parse_dirac_state(false);
    if (name == "bra" && cur().kind == Tok::LBrack) return parse_dirac_state(true);
    if ((name == "vc" || name == "vcb") && cur().kind == Tok::LBrack)
      return parse_vc_state(name == "vcb");
    if (name == "sum" && cur().kind == Tok::LBrack) return parse_sum();
    if (is_macro_name(name) && cur().kind == Tok::LParen) return parse_macro(name);

    if (auto sym = ctx_.find_symbol(name)) {
      bool create = false;
      if (cur().kind == Tok::Plus && ahead(1).kind == Tok::LParen) {
        take();
        create = true;
      }
      if (cur().kind != Tok::LParen) {
        throw ParseError("operator symbol requires an argument list: " + name, id.pos);
      }
      take();
      std::vector<Index> idx = parse_index_list(Tok::RParen, "')'");
      const SymbolDecl& d = ctx_.symbol(*sym);
      if (d.statistics == Statistics::MajoranaFermion) {
        if (create)
          throw ParseError("Majorana symbol has no creation form: " + name, id.pos);
        return lift(majorana(ctx_, name, std::move(idx)));
      }
      return lift(create ? cr(ctx_, name, std::move(idx))
                         : an(ctx_, name, std::move(idx)));
    }

    if (ctx_.has_param(name)) {
      if (ctx_.param_kind(name) == ParamKind::GrassmannConst) {
        if (cur().kind == Tok::LParen)
          throw ParseError("Grassmann constants take no indexes: " + name, id.pos);
        return lift(grassmann(ctx_, name));
      }
      std::vector<Index> idx;
      if (accept(Tok::LParen)) idx = parse_index_list(Tok::RParen, "')'");
      return lift(Expr::scalar(Scalar::param(name, std::move(idx))));
    }

    throw ParseError("undeclared identifier: " + name, id.pos);
  }

  SumExpr parse_dirac_state(bool is_bra) {
    expect(Tok::LBrack, "'['");
    std::vector<std::optional<Index>> slots;
    if (cur().kind != Tok::RBrack) {
      do {
        if (cur().kind == Tok::Ident && cur().text == "Null") {
          take();
          slots.emplace_back();
        } else {
          slots.push_back(parse_index());
        }
      } while (accept(Tok::Comma));
    }
    expect(Tok::RBrack, "']'");
    return lift(is_bra ? bra(std::move(slots)) : ket(std::move(slots)));
  }

  SumExpr parse_vc_state(bool is_bra) {
    expect(Tok::LBrack, "'['");
    std::vector<std::uint8_t> bits;
    if (cur().kind != Tok::RBrack) {
      do {
        if (cur().kind != Tok::Int || (cur().ival != 0 && cur().ival != 1))
          fail("occupation entries must be 0 or 1");
        bits.push_back(std::uint8_t(take().ival));
      } while (accept(Tok::Comma));
    }
    expect(Tok::RBrack, "']'");
    return lift(is_bra ? vc_bra(std::move(bits)) : vc_ket(std::move(bits)));
  }

  SumExpr parse_sum() {
    expect(Tok::LBrack, "'['");
    SumExpr body = parse_expr_rule();
    expect(Tok::RBrack, "']'");
    expect(Tok::LBrace, "'{'");
    std::vector<Index> dummies = parse_index_list(Tok::RBrace, "'}'");
    // Wrap each summand; nested sums merge their dummy lists, and an inner
    // dummy shadows an outer one of the same name.
    SumExpr out;
    for (const auto& st : body.terms()) {
      std::vector<Index> all = st.dummies;
      for (const auto& d : dummies) {
        if (std::find(st.dummies.begin(), st.dummies.end(), d) == st.dummies.end())
          all.push_back(d);
      }
      out += sum_make(ctx_, Expr::raw(st.body).scaled(st.outer), all, nullptr);
    }
    return out;
  }

  SiteRef parse_site_ref() {
    if (cur().kind != Tok::Ident) fail("expected an operator symbol");
    Token id = take();
    if (!ctx_.find_symbol(id.text))
      throw ParseError("undeclared symbol: " + id.text, id.pos);
    std::vector<Index> site;
    if (accept(Tok::LParen)) site = parse_index_list(Tok::RParen, "')'");
    return SiteRef(id.text, std::move(site));
  }

  SumExpr parse_macro(const std::string& name) {
    expect(Tok::LParen, "'('");
    if (name == "number") {
      SiteRef ref = parse_site_ref();
      if (accept(Tok::Comma)) {
        Index p = parse_index();
        if (!p.is_integer()) fail("spin projection must be numeric");
        expect(Tok::RParen, "')'");
        return lift(number(ctx_, ref, int(p.value())));
      }
      expect(Tok::RParen, "')'");
      return lift(number(ctx_, ref));
    }
    if (name == "hop" || name == "spinspin") {
      SiteRef a = parse_site_ref();
      expect(Tok::Comma, "','");
      SiteRef b = parse_site_ref();
      expect(Tok::RParen, "')'");
      return lift(name == "hop" ? hop(ctx_, a, b) : spinspin(ctx_, a, b));
    }
    if (name == "hubbard") {
      SiteRef ref = parse_site_ref();
      expect(Tok::RParen, "')'");
      return lift(hubbard(ctx_, ref));
    }
    if (name == "projector0") {
      SiteRef ref = parse_site_ref();
      expect(Tok::RParen, "')'");
      return lift(projector(ctx_, ref, ProjectorKind::Empty));
    }
    if (name == "projector") {
      SiteRef ref = parse_site_ref();
      expect(Tok::Comma, "','");
      if (cur().kind != Tok::Ident) fail("expected a projector kind");
      Token k = take();
      ProjectorKind kind;
      if (k.text == "empty") kind = ProjectorKind::Empty;
      else if (k.text == "up") kind = ProjectorKind::Up;
      else if (k.text == "down") kind = ProjectorKind::Down;
      else if (k.text == "double") kind = ProjectorKind::Double;
      else if (k.text == "single") kind = ProjectorKind::Single;
      else throw ParseError("unknown projector kind: " + k.text, k.pos);
      expect(Tok::RParen, "')'");
      return lift(projector(ctx_, ref, kind));
    }
    // Spin components with the legacy aliases.
    SpinAxis axis;
    if (name == "spinx" || name == "snegx") axis = SpinAxis::X;
    else if (name == "spiny" || name == "snegy") axis = SpinAxis::Y;
    else if (name == "spinz" || name == "snegz") axis = SpinAxis::Z;
    else if (name == "spinplus") axis = SpinAxis::Plus;
    else if (name == "spinminus") axis = SpinAxis::Minus;
    else fail("unknown macro: " + name);
    SiteRef ref = parse_site_ref();
    expect(Tok::RParen, "')'");
    return lift(spin_component(ctx_, ref, axis));
  }
};

}  // namespace

SumExpr parse_sum_expr(const Context& ctx, const std::string& src) {
  return Parser(ctx, src).parse();
}

Expr parse_expr(const Context& ctx, const std::string& src) {
  return parse_sum_expr(ctx, src).to_expr();
}

}  // namespace sq
