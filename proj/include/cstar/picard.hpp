#pragma once

#include "cstar/degeneration.hpp"
#include "cstar/matrix.hpp"
#include "cstar/multidivisor.hpp"
#include "cstar/toric.hpp"

#include <string>
#include <variant>
#include <vector>

namespace cstar {

/// Picard lattice presented as the quotient of the free group on the
/// invariant prime divisors by the principal-relation lattice, with the
/// intersection pairing on a fixed basis of the quotient.
struct PicLattice {
	int rank = 0;
	int ngens = 0;
	std::vector<PrimeDiv> gens; // empty when built from a bare fan
	std::vector<std::string> labels;
	Mat proj;    // rank x ngens
	Mat lift;    // ngens x rank, representative divisors of the basis
	Mat pairing; // rank x rank
	Vec kclass;

	Vec class_of_vec(const Vec& divisor) const { return proj * divisor; }
	Vec class_of(const WeilDiv& d) const;
	WeilDiv divisor_of(const Vec& cls) const; // a representative
	int gen_index(const PrimeDiv& d) const;
	Int pair(const Vec& a, const Vec& b) const;
	Int euler(const Vec& c) const; // Riemann-Roch
};

PicLattice picard_lattice(const Multidivisor& m);
PicLattice picard_lattice(const ToricSurface& x);

/// An invariant canonical Weil divisor of X(M); validated by adjunction
/// and K^2 = 10 - rank before being returned.
WeilDiv canonical_divisor(const Multidivisor& m);

Int euler_char_class(const Multidivisor& m, const WeilDiv& d);
Int intersect(const Multidivisor& m, const WeilDiv& a, const WeilDiv& b);

/// All invariant prime divisors of self-intersection -1.
std::vector<PrimeDiv> minus_one_curves(const Multidivisor& m);

/// Divisor-level transport along a degeneration diagram, from the general
/// fiber to the special fiber.
WeilDiv transport_weil(const DegenerationDiagram& d, const WeilDiv& div);

struct TransportMap {
	PicLattice general, special;
	Mat mat; // Pic(general fiber) -> Pic(special fiber) on the chosen bases
};

/// Class-level transport matrix; unimodularity, Gram preservation, and
/// preservation of the canonical class and Euler characteristics are all
/// asserted (each is a theorem for smooth fibers).
TransportMap transport_matrix(const DegenerationDiagram& d);

struct DegenerationChain {
	std::vector<DegenerationDiagram> steps; // step j: general M_{j-1} ~> special M_j
	Multidivisor toric; // endpoint with at most two nontrivial slices
};

/// Degenerate to a toric surface by merging slices; succeeds on every
/// smooth multidivisor.
DegenerationChain degenerate_to_toric(const Multidivisor& m);

struct ReduceStep {
	DegenerationChain chain;   // from `before` down to a toric surface
	PrimeDiv contracted;       // the (-1)-curve pulled back to `before`
	Multidivisor before, after;
};

/// Alternate degeneration and blowdown until the surface has rank 2.
std::vector<ReduceStep> reduce_to_hirzebruch(const Multidivisor& m);

/// A smooth surface model together with its Picard lattice.
struct Surface {
	std::variant<ToricSurface, Multidivisor> model;
	PicLattice lat;

	bool toric_model() const { return std::holds_alternative<ToricSurface>(model); }
	const ToricSurface& fan() const { return std::get<ToricSurface>(model); }
	const Multidivisor& mdiv() const { return std::get<Multidivisor>(model); }
	int rank() const { return lat.rank; }
	/// b-sequence of the underlying (necessarily toric) surface
	std::vector<Int> b_sequence() const;
	/// divisor vector over the lattice generators for a class
	Vec lift_class(const Vec& c) const { return lat.lift * c; }
};

Surface make_surface(const ToricSurface& x);
Surface make_surface(const Multidivisor& m);

struct Blowdown {
	Surface target;
	Vec e_class; // exceptional class on the source
	Mat push;    // Pic(source) -> Pic(target)
	Mat pull;    // Pic(target) -> Pic(source)
	std::string desc;
};

/// All invariant blowdowns of a surface.
std::vector<Blowdown> enumerate_blowdowns(const Surface& s);

/// Pullback/pushforward pair for a single blowdown given the generator
/// correspondence; exposed for transport bookkeeping.
struct BlowdownMaps {
	Mat push, pull;
};
BlowdownMaps blowdown_class_maps(const PicLattice& src, const PicLattice& dst, const Vec& e_class,
                                 const std::vector<Vec>& gen_images);

/// Representative toric divisor of a class on a toric model (for the
/// cohomology engine).
ToricDivisor toric_divisor_of_class(const Surface& s, const LabeledFan& fan, const Vec& c);

/// Cohomology of a class on a surface with a toric model.
Cohomology class_cohomology(const Surface& s, const Vec& c);

} // namespace cstar
