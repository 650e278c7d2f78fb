#pragma once

#include <string>

#include "sq/sums.hpp"

namespace sq {

struct ParseError : Error {
  std::size_t pos;
  ParseError(const std::string& msg, std::size_t at)
      : Error(msg + " (at offset " + std::to_string(at) + ")"), pos(at) {}
};

/// Parses the ascii operator notation. Adjacent factors multiply under nc
/// and the result is canonical. Symbols and parameters must be declared.
///
///   expr    := ['+'|'-'] term (('+'|'-') term)*
///   term    := primary ('*'? primary)*
///   primary := number | 'I' | 'sqrt(' number ')' | 'delta(' index ',' index ')'
///            | 'conj(' param ')' | param | param '(' indexes ')'
///            | sym '+'? '(' indexes ')'            -- '+' marks creation
///            | 'ket[' slots ']' | 'bra[' slots ']'
///            | 'vc[' bits ']'  | 'vcb[' bits ']'
///            | 'sum[' expr ']{' indexes '}'
///            | macro '(' args ')' | '(' expr ')'
///   number  := int ('/' int)? ; index := int | '-' int | ident | UP | DO
///
/// Macro names: number, hop, hubbard, spinx, spiny, spinz, spinplus,
/// spinminus (aliases snegx/snegy/snegz), spinspin, projector, projector0.
SumExpr parse_sum_expr(const Context& ctx, const std::string& src);

/// Same, but requires a sum-free result.
Expr parse_expr(const Context& ctx, const std::string& src);

}  // namespace sq
