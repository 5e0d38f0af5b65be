#pragma once

#include "cstar/picard.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cstar {

/// Cyclic sequence of divisor classes with the tridiagonal intersection
/// pattern summing to -K; entries live on the lattice of a fixed Surface.
struct ToricSystem {
	std::vector<Vec> entries;
	int size() const { return static_cast<int>(entries.size()); }
};

bool is_toric_system(const PicLattice& lat, const ToricSystem& a);
void require_toric_system(const PicLattice& lat, const ToricSystem& a);
inline bool is_toric_system(const Surface& s, const ToricSystem& a) { return is_toric_system(s.lat, a); }

/// The toric surface reconstructed from the Euler characteristics of the
/// entries, b_i = 2 - chi(A_i).
ToricSurface tv_of(const PicLattice& lat, const ToricSystem& a);
inline ToricSurface tv_of(const Surface& s, const ToricSystem& a) { return tv_of(s.lat, a); }

/// A_i = E_{i+1} - E_i cyclically, closing up with -K.
ToricSystem system_from_sequence(const PicLattice& lat, const std::vector<Vec>& e);
/// The associated sequence (0, A_1, A_1+A_2, ...).
std::vector<Vec> sequence_from_system(const PicLattice& lat, const ToricSystem& a);

/// Cohomological exceptionality tests; the surface must have a toric model.
bool is_exceptional(const Surface& s, const ToricSystem& a);
bool is_strongly_exceptional(const Surface& s, const ToricSystem& a);

/// Augmentation along a blowup: `down` contracts the bigger surface onto
/// the system's surface; position i is 0-based and cyclic.
ToricSystem augment(const Blowdown& down, const ToricSystem& a, int i);

/// The nef-cone basis P, Q of a rank-2 surface: P is the class of a
/// self-intersection-0 prime divisor with chi = 2 (first in generator
/// order), Q the unique class with Q.P = 1 and Q^2 = r.
struct HirzebruchBasis {
	Vec p, q;
	Int r;
};
HirzebruchBasis hirzebruch_basis(const Surface& s);

/// The catalog families on F_r.
ToricSystem catalog_system(const HirzebruchBasis& h, const Int& i);
ToricSystem catalog_system_tilde(const HirzebruchBasis& h, const Int& i); // r even

/// Recognize a system as a catalog member up to cyclic rotation/reflection.
struct CatalogForm {
	Int i;
	bool tilde;
};
std::optional<CatalogForm> recognize_catalog(const PicLattice& lat, const HirzebruchBasis& h,
                                             const ToricSystem& a);

/// Exhaustive search for toric systems with |P|- and |Q|-coefficients
/// bounded by `bound`, up to cyclic rotation and reflection.
std::vector<ToricSystem> enumerate_toric_systems(const PicLattice& lat, const HirzebruchBasis& h,
                                                 int bound);

/// Left mutation at the first position, iterated `power` times (negative
/// powers are right mutations); defined on catalog-form systems.
ToricSystem mutate_L1(const Surface& s, const ToricSystem& a, const Int& power = 1);

/// Entrywise transport along a degeneration; axioms and the tv equality
/// are re-checked on the image.
ToricSystem transport_system(const TransportMap& tm, const ToricSystem& a);
ToricSystem transport_system_inverse(const TransportMap& tm, const ToricSystem& a);

bool system_equal(const ToricSystem& a, const ToricSystem& b);
bool system_equal_up_to_symmetry(const ToricSystem& a, const ToricSystem& b);

struct TameStep {
	std::string blowdown; // description of the contraction
	int position;         // augmentation position, 0-based
};

/// Replayable construction of a system by augmentations from an
/// exceptional catalog system on a Hirzebruch surface.
struct TameCertificate {
	std::vector<Int> base_b;
	Int base_i;
	bool base_tilde = false;
	std::vector<TameStep> steps; // applied bottom-up
};

std::optional<TameCertificate> tame_certificate(const Surface& s, const ToricSystem& a);

/// A tame exceptional toric system on X with tv equal to the given toric
/// surface of the same rank.
ToricSystem toricsys_for_target(const Surface& x, const ToricSurface& y);

/// Compatibility of a tame system on the general fiber with the
/// deformation encoded by the diagram.
bool is_compatible(const DegenerationDiagram& d, const ToricSystem& a);

} // namespace cstar
