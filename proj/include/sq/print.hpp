#pragma once

#include <string>

#include "sq/expr.hpp"
#include "sq/sums.hpp"

namespace sq {

enum class PrintStyle { Ascii, Unicode, Latex };

/// Deterministic renderers: equal expressions print to identical strings.
/// The ascii form reparses to the same expression.
std::string print_scalar(const Scalar& s, PrintStyle style);
std::string print_expr(const Context& ctx, const Expr& e, PrintStyle style);
std::string print_sum_expr(const Context& ctx, const SumExpr& s, PrintStyle style);

inline std::string print_ascii(const Context& ctx, const Expr& e) {
  return print_expr(ctx, e, PrintStyle::Ascii);
}
inline std::string print_unicode(const Context& ctx, const Expr& e) {
  return print_expr(ctx, e, PrintStyle::Unicode);
}
inline std::string print_latex(const Context& ctx, const Expr& e) {
  return print_expr(ctx, e, PrintStyle::Latex);
}

}  // namespace sq
