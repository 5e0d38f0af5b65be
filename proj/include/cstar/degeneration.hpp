#pragma once

#include "cstar/multidivisor.hpp"

#include <utility>
#include <vector>

namespace cstar {

/// One homogeneous deformation, encoded by the multidivisor of the general
/// fiber, two designated points, and the bipartite non-crossing graph
/// between the designated slices. Edges are index pairs into the sorted
/// vertex lists of slice_at(p0) and slice_at(ps).
struct DegenerationDiagram {
	Multidivisor M;
	ProjPoint p0, ps;
	std::vector<std::pair<int, int>> edges;

	Slice slice0() const { return M.slice_at(p0); }
	Slice slice_s() const { return M.slice_at(ps); }
};

struct DiagramReport {
	bool valid = false;
	bool trivial = false; // the deformation does nothing
	std::vector<std::string> issues;
};

DiagramReport validate_diagram(const DegenerationDiagram& d);
void require_valid_diagram(const DegenerationDiagram& d);

/// Multidivisor of the special fiber: the designated slices collapse to the
/// slice of edge sums at p0.
Multidivisor special_fiber(const DegenerationDiagram& d);

inline const Multidivisor& general_fiber(const DegenerationDiagram& d) { return d.M; }

/// The deformation F_{r+2a} ~> F_r on the multidivisor M(r,a). For
/// (r,a) = (0,1) the alternate graph with both 0-vertices of degree one is
/// available.
DegenerationDiagram hirzebruch_diagram(int r, int a, bool alt_graph = false);
Multidivisor hirzebruch_multidivisor(int r, int a);

/// Diagram of the toric deformation of X with parameter r (pivot at index 0).
DegenerationDiagram toric_deformation_diagram(const ToricSurface& x, const Int& r);

/// Double-star degeneration merging the slices at P and Q; drops the number
/// of nontrivial slices of the special fiber by one.
DegenerationDiagram merge_slices_degeneration(const Multidivisor& m, const ProjPoint& p,
                                              const ProjPoint& q);

struct DiagramBlowdown {
	DegenerationDiagram diagram;
	PrimeDiv exceptional_general; // the contracted divisor on the general fiber
};

/// Blow down the deformation at an invariant (-1)-curve of the special
/// fiber. The caller certifies the self-intersection; everything else is
/// checked here.
DiagramBlowdown diagram_blowdown(const DegenerationDiagram& d, const PrimeDiv& e_special);

struct DiagramBlowup {
	DegenerationDiagram diagram;
	MdivMove special_move; // the induced blowup of the special fiber
};

/// Lift a blowup of the general fiber to the whole deformation.
DiagramBlowup diagram_blowup(const DegenerationDiagram& d, const MdivMove& move);

/// Express a blowup of the special fiber as a move on the general fiber.
/// Insertions at the merged slice need a side; interior insertions are
/// resolved through the graph, extremal ones honor prefer_p0.
MdivMove general_move_for_special(const DegenerationDiagram& d, const MdivMove& special_move,
                                  bool prefer_p0 = true);

} // namespace cstar
