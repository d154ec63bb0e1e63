#pragma once

#include "tropjac/covers.hpp"
#include "tropjac/jacobian.hpp"
#include "tropjac/linalg.hpp"

#include <string>
#include <vector>

namespace tropjac {

/// Action of the deck involution and of the pushforward on Abel-Jacobi
/// coordinates. The source side lives on the virtualized source.
struct HomologyAction {
  DoubleCover cover;
  Rational epsilon;
  Virtualization sharp;
  PeriodLattice source_lattice;
  PeriodLattice target_lattice;
  RationalMatrix involution;  // J: AJ(i D) = J AJ(D) modulo the source lattice
  RationalMatrix pushforward; // P: AJ(phi_* D) = P AJ(D) modulo the target lattice
  std::vector<Point> basepoints;              // one per source component, swapped by the involution
  std::vector<std::size_t> component_swap;    // involution on source components
};

/// Throws PreconditionError unless verify_cover succeeds.
HomologyAction homology_action(const DoubleCover& cover, const Rational& epsilon = 1);

/// Sign-aware image of a chain under the involution (on the virtualized
/// source) and under the covering map.
Chain involute_chain(const HomologyAction& action, const Chain& chain);
Chain push_chain(const HomologyAction& action, const Chain& chain);

/// Abel-Jacobi image on the virtualized source with the involution-
/// compatible basepoints.
AbelJacobiImage source_abel_jacobi(const HomologyAction& action, const Divisor& d);

/// Violations of J^2 = Id, J and P preserving the lattices, and
/// rank(Id - J) = g(source) - g(target). Empty when all hold.
std::vector<std::string> check_homology_action(const HomologyAction& action);

/// Rational basis of the image of Id - J, as columns.
RationalMatrix prym_tangent_space(const HomologyAction& action);

/// Whether d lies in (Id - i) Pic^0 of the source. Throws PreconditionError
/// if d is not of degree 0 or its pushforward is not principal.
bool prym_contains(const HomologyAction& action, const Divisor& d);
bool prym_contains(const DoubleCover& cover, const Divisor& d, const Rational& epsilon = 1);

/// Number of connected components of the kernel of the pushforward: 2 when
/// x - i(x) falls outside the Prym variety for a non-fixed sample x.
int kernel_component_count(const HomologyAction& action);
int kernel_component_count(const DoubleCover& cover, const Rational& epsilon = 1);

/// 0 when the pullback of D_gamma lies in the Prym variety, 1 otherwise.
/// Throws PreconditionError for dilated covers.
int weil_pairing(const HomologyAction& action, const CycleZ2& cycle);
int weil_pairing(const DoubleCover& cover, const CycleZ2& cycle, const Rational& epsilon = 1);

struct PairingTable {
  std::vector<std::vector<bool>> covers;   // lift bits per row, in free_covers order
  std::vector<CycleZ2> cycles;             // columns, in cycle_space order
  std::vector<std::vector<int>> entries;   // entries[row][column]
};

/// Weil pairing of every free double cover against every even subgraph.
PairingTable pairing_table(const MetricGraph& g);

}  // namespace tropjac
