#pragma once

#include "sq/expr.hpp"

namespace sq {

/// A symbol together with its site indexes (spin slot excluded), the
/// argument shape of the operator generators.
struct SiteRef {
  std::string sym;
  std::vector<Index> site;

  SiteRef(std::string s, std::vector<Index> idx = {})
      : sym(std::move(s)), site(std::move(idx)) {}
};

enum class SpinAxis { X, Y, Z, Plus, Minus };

enum class ProjectorKind { Empty, Up, Down, Double, Single };

/// Occupancy operator: sum of c+ c over all spin projections, or the
/// plain c+ c for a spinless symbol.
Expr number(const Context& ctx, const SiteRef& ref);
/// Single-projection occupancy n_sigma.
Expr number(const Context& ctx, const SiteRef& ref, int projection);
/// Occupancy of a linear combination of orbitals: conj(d) . d.
Expr number_of(const Context& ctx, const Expr& d);

/// Hermitian inter-site hopping, summed over spin projections.
Expr hop(const Context& ctx, const SiteRef& a, const SiteRef& b);

/// On-site repulsion n_down n_up (spin-1/2 symbols).
Expr hubbard(const Context& ctx, const SiteRef& ref);

/// Spin operator component for arbitrary spin S, built from the standard
/// spin-S matrices acting on the projection slot.
Expr spin_component(const Context& ctx, const SiteRef& ref, SpinAxis axis);

/// Exchange coupling S1 . S2.
Expr spinspin(const Context& ctx, const SiteRef& a, const SiteRef& b);

/// Occupancy projectors for spin-1/2 sites.
Expr projector(const Context& ctx, const SiteRef& ref, ProjectorKind kind);

/// Sums of one-site operators over several sites.
Expr total_number(const Context& ctx, const std::vector<SiteRef>& sites);
Expr total_spin(const Context& ctx, const std::vector<SiteRef>& sites, SpinAxis axis);

}  // namespace sq
