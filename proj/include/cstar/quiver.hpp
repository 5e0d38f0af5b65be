#pragma once

#include "cstar/degeneration.hpp"
#include "cstar/picard.hpp"
#include "cstar/toric_system.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cstar {

/// Dimension data of the endomorphism algebra of the exceptional sequence
/// attached to a toric system: nodes, per-hop Hom dimensions, and the
/// labeled arrow families of the Hirzebruch quiver.
struct QuiverData {
	int nodes = 4;
	std::vector<Int> hop_dims;  // hom(E_j, E_{j+1}) for consecutive nodes
	Int long_hop = 0;           // hom(E_2, E_3)
	bool partition_defined = false;
	Int b_arrows = 0, c_arrows = 0, d_arrows = 0; // long-hop families
	Int total_dim = 0;          // sum of all hom spaces plus identity paths
	bool constant_family = false;
};

/// Hom matrix of a sequence of line-bundle classes: entry (i,j) is
/// hom(E_i, E_j) = h^0(E_j - E_i). No morphisms back and 1-dimensional
/// endomorphism spaces are enforced.
Mat hom_matrix(const Surface& s, const std::vector<Vec>& seq);

/// Total dimension of the path algebra attached to a toric system:
/// sum of h^0 over the interval sums plus one identity per node.
Int gamma_dimension(const Surface& s, const ToricSystem& a);

/// The quiver family of the deformation F_{r+2a} ~> F_r carrying the
/// catalog system with parameter i: data for the general fiber (s != 0)
/// and the special fiber (s = 0).
std::pair<QuiverData, QuiverData> hirzebruch_quiver_family(int r, int alpha, const Int& i);

struct EndoDims {
	Int special, general;
	bool equal;
	bool strongly_exceptional_both;
};

/// Endomorphism-algebra dimensions on the two fibers of a deformation,
/// starting from a system on the special fiber. Equality is asserted when
/// strong exceptionality holds on both fibers, otherwise just reported.
EndoDims endo_dim_along(const DegenerationDiagram& d, const ToricSystem& a_special);

std::string quiver_dot(const QuiverData& q);

} // namespace cstar
