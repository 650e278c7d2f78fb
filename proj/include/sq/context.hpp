#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sq/scalar.hpp"

namespace sq {

enum class Statistics { DiracFermion, MajoranaFermion, Boson };
enum class VacuumKind { EmptyBand, FermiSea };
enum class ParamKind { Integer, Real, Complex, GrassmannConst };

using SymbolId = int;

/// Declaration of an operator symbol.
struct SymbolDecl {
  std::string name;
  Statistics statistics = Statistics::DiracFermion;
  VacuumKind vacuum = VacuumKind::EmptyBand;
  bool reorder = true;
  /// Twice the particle spin; set means the last index is a spin
  /// projection with values 0 .. twice_spin.
  std::optional<int> twice_spin;

  int projection_count() const { return twice_spin ? *twice_spin + 1 : 0; }
};

/// One orbital of the occupation-number space: (symbol, site, spin slot).
struct Orbital {
  SymbolId sym = -1;
  std::optional<Index> site;  // absent for index-free symbols
  int spin = -1;              // projection slot value; -1 when spinless

  friend bool operator==(const Orbital& a, const Orbital& b) {
    return a.sym == b.sym && a.site == b.site && a.spin == b.spin;
  }
};

struct ContextOptions {
  /// Treat momentum 0 as occupied in the Fermi-sea classification.
  bool fermi_level_occupied = false;
};

class ContextBuilder;

/// Immutable registry of symbols, parameters, options, and the orbital
/// list of the occupation-number space. All algebra operations take it
/// read-only; safe to share across threads.
class Context {
 public:
  SymbolId symbol_id(const std::string& name) const;
  std::optional<SymbolId> find_symbol(const std::string& name) const;
  const SymbolDecl& symbol(SymbolId id) const { return symbols_.at(size_t(id)); }
  size_t symbol_count() const { return symbols_.size(); }

  /// Rank of the symbol name in lexicographic order (canonical sort key).
  int name_rank(SymbolId id) const { return name_rank_.at(size_t(id)); }

  bool has_param(const std::string& name) const { return params_.count(name) > 0; }
  ParamKind param_kind(const std::string& name) const;

  const ContextOptions& options() const { return options_; }

  const std::vector<Orbital>& orbitals() const { return orbitals_; }
  /// Position of an orbital in the registered list, or nullopt.
  std::optional<int> find_orbital(const Orbital& o) const;

 private:
  friend class ContextBuilder;
  std::vector<SymbolDecl> symbols_;
  std::map<std::string, SymbolId> by_name_;
  std::vector<int> name_rank_;
  std::map<std::string, ParamKind> params_;
  std::vector<Orbital> orbitals_;
  ContextOptions options_;
};

/// Mutable build phase; freeze with build().
class ContextBuilder {
 public:
  SymbolId declare_symbol(const SymbolDecl& decl);
  void declare_param(const std::string& name, ParamKind kind);
  /// Appends one orbital to the occupation-number space.
  void add_orbital(const std::string& sym, std::optional<Index> site, int spin = -1);
  /// Registers site-major orbitals for a spinful symbol: for each site all
  /// spin slots in descending order (up before down for spin 1/2).
  void add_site_orbitals(const std::string& sym, const std::vector<Index>& sites);
  void set_fermi_level_occupied(bool v) { ctx_.options_.fermi_level_occupied = v; }

  Context build() const;

 private:
  Context ctx_;
};

}  // namespace sq
