#include "sq/context.hpp"

#include <algorithm>

namespace sq {

SymbolId Context::symbol_id(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw Error("undeclared symbol: " + name);
  return it->second;
}

std::optional<SymbolId> Context::find_symbol(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

ParamKind Context::param_kind(const std::string& name) const {
  auto it = params_.find(name);
  if (it == params_.end()) throw Error("undeclared parameter: " + name);
  return it->second;
}

std::optional<int> Context::find_orbital(const Orbital& o) const {
  for (size_t i = 0; i < orbitals_.size(); ++i) {
    if (orbitals_[i] == o) return int(i);
  }
  return std::nullopt;
}

SymbolId ContextBuilder::declare_symbol(const SymbolDecl& decl) {
  if (decl.name.empty()) throw Error("symbol name must be nonempty");
  if (ctx_.by_name_.count(decl.name))
    throw Error("symbol already declared: " + decl.name);
  if (ctx_.params_.count(decl.name))
    throw Error("name already declared as a parameter: " + decl.name);
  if (decl.vacuum == VacuumKind::FermiSea &&
      decl.statistics != Statistics::DiracFermion)
    throw Error("Fermi-sea vacuum requires a Dirac fermion: " + decl.name);
  if (decl.twice_spin && *decl.twice_spin < 0)
    throw Error("negative spin for symbol: " + decl.name);
  if (decl.twice_spin && decl.statistics == Statistics::MajoranaFermion)
    throw Error("spin index not supported for Majorana symbol: " + decl.name);
  SymbolId id = SymbolId(ctx_.symbols_.size());
  ctx_.symbols_.push_back(decl);
  ctx_.by_name_[decl.name] = id;
  return id;
}

void ContextBuilder::declare_param(const std::string& name, ParamKind kind) {
  if (name.empty()) throw Error("parameter name must be nonempty");
  auto it = ctx_.params_.find(name);
  if (it != ctx_.params_.end()) {
    if (it->second != kind) throw Error("parameter redeclared with a different kind: " + name);
    return;
  }
  if (ctx_.by_name_.count(name))
    throw Error("name already declared as a symbol: " + name);
  ctx_.params_[name] = kind;
}

void ContextBuilder::add_orbital(const std::string& sym, std::optional<Index> site, int spin) {
  SymbolId id = ctx_.by_name_.count(sym) ? ctx_.by_name_[sym] : -1;
  if (id < 0) throw Error("orbital for undeclared symbol: " + sym);
  Orbital o{id, std::move(site), spin};
  for (const auto& have : ctx_.orbitals_) {
    if (have == o) throw Error("duplicate orbital registration for symbol " + sym);
  }
  ctx_.orbitals_.push_back(std::move(o));
}

void ContextBuilder::add_site_orbitals(const std::string& sym, const std::vector<Index>& sites) {
  SymbolId id = ctx_.by_name_.count(sym) ? ctx_.by_name_[sym] : -1;
  if (id < 0) throw Error("orbital for undeclared symbol: " + sym);
  const SymbolDecl& d = ctx_.symbols_[size_t(id)];
  for (const auto& s : sites) {
    if (d.twice_spin) {
      for (int v = *d.twice_spin; v >= 0; --v) add_orbital(sym, s, v);
    } else {
      add_orbital(sym, s, -1);
    }
  }
}

Context ContextBuilder::build() const {
  Context ctx = ctx_;
  // Ranks of symbol names in lexicographic order.
  std::vector<std::string> names;
  names.reserve(ctx.symbols_.size());
  for (const auto& s : ctx.symbols_) names.push_back(s.name);
  std::sort(names.begin(), names.end());
  ctx.name_rank_.resize(ctx.symbols_.size());
  for (size_t i = 0; i < ctx.symbols_.size(); ++i) {
    auto it = std::lower_bound(names.begin(), names.end(), ctx.symbols_[i].name);
    ctx.name_rank_[i] = int(it - names.begin());
  }
  return ctx;
}

}  // namespace sq
