#pragma once

#include <iosfwd>
#include <string>

#include "sq/basis.hpp"
#include "sq/matrixrep.hpp"

namespace sq {

/// Raised when a request exceeds a built-in size cap (orbital count).
struct LimitError : Error {
  using Error::Error;
};

/// Parsed model file: line-oriented sections with declarations, one
/// Hamiltonian expression, a basis request, optional numeric bindings and
/// output selection.
struct ModelScript {
  std::vector<SymbolDecl> symbols;
  std::vector<std::pair<std::string, ParamKind>> params;
  std::string hamiltonian;  // DSL text; empty in declaration-only files
  std::optional<BasisKind> basis_kind;
  std::string basis_symbol;
  std::vector<std::int64_t> basis_sites;
  bool out_basis = true;
  bool out_matrices = true;
  Bindings bindings;
};

/// Parses the script text; errors carry section names and line numbers.
ModelScript parse_script(const std::string& text);

/// Declares everything from the script into a fresh context; registers
/// basis orbitals when a basis section is present.
Context build_context(const ModelScript& script, bool fermi_level_occupied);

/// Runs the model: basis generation, block matrices, files under outdir.
/// Returns the list of files written (relative names).
std::vector<std::string> run_script(const ModelScript& script, const Context& ctx,
                                    const std::string& outdir, std::ostream& log);

/// Half-integer rendering of a twice-spin value: "0", "1/2", "1", ...
std::string twice_spin_label(int twice);
/// Filename-safe rendering: "0", "0.5", "1", "1.5", ...
std::string twice_spin_file_label(int twice);

}  // namespace sq
