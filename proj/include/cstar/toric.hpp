#pragma once

#include "cstar/matrix.hpp"
#include "cstar/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cstar {

struct Vec2 {
	Int x, y;
	bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
	Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
	Vec2 operator-() const { return {-x, -y}; }
};

inline Int det2(const Vec2& u, const Vec2& v) { return u.x * v.y - u.y * v.x; }

/// Exact angular order starting just above direction (1,0).
bool ccw_angle_less(const Vec2& u, const Vec2& v);

/// Smooth complete toric surface given by the cyclic sequence b
/// (self-intersection of the i-th invariant divisor is -b[i]),
/// optionally carrying a realized fan.
struct ToricSurface {
	std::vector<Int> b;
	std::optional<std::vector<Vec2>> rays;

	int nrays() const { return static_cast<int>(b.size()); }
	int picard_rank() const { return nrays() - 2; }
};

using ToricDivisor = Vec; // one coefficient per ray

struct ToricReport {
	bool valid = false;
	bool sum_rule = false;
	bool smooth = false;
	bool complete = false;
	int picard_rank = 0;
	std::vector<std::string> issues;
};

/// Continued fraction c_1 - 1/(c_2 - 1/(...)); nullopt when a division by
/// zero occurs in the recursion.
std::optional<Rat> cf_eval(const std::vector<Int>& c);

/// Realize the fan of a b-sequence with rho_0=(1,0), rho_1=(0,1).
ToricSurface rays_from_b(const std::vector<Int>& b);

/// Read the b-sequence off a counterclockwise-ordered smooth complete fan.
std::vector<Int> b_from_rays(const std::vector<Vec2>& rays);

ToricReport validate_toric(const ToricSurface& x);

ToricSurface realized(const ToricSurface& x); // ensures rays are present

struct AlphaGamma {
	int alpha;
	Int gamma;
};

/// The unique 1 < alpha < l with [b_1,...,b_{alpha-1}] = 0, and its gamma.
AlphaGamma alpha_gamma(const ToricSurface& x);

ToricSurface toric_blowup(const ToricSurface& x, int i);
ToricSurface toric_blowdown(const ToricSurface& x, int i);

/// General fiber of the toric one-parameter deformation with parameter r.
ToricSurface deformation_general_fiber(const ToricSurface& x, const Int& r);

Int intersection(const ToricSurface& x, const ToricDivisor& d1, const ToricDivisor& d2);
ToricDivisor canonical(const ToricSurface& x);
Int euler_char(const ToricSurface& x, const ToricDivisor& d);

struct Cohomology {
	Int h0, h1, h2;
};
Cohomology cohomology(const ToricSurface& x, const ToricDivisor& d);

/// Number of lattice points u with <u, rho_i> >= -d_i for all i.
Int lattice_points(const ToricSurface& x, const ToricDivisor& d);

/// Cyclic sequences compare equal up to rotation and reflection.
std::vector<Int> canonical_cycle(const std::vector<Int>& b);
bool cyclic_equal(const std::vector<Int>& a, const std::vector<Int>& b);
bool toric_equal(const ToricSurface& a, const ToricSurface& b);

/// All (rotation, reflected) pairs carrying cycle a onto cycle b:
/// index i of a maps to (reflected ? shift - i : shift + i) mod n.
struct CyclicIso {
	int shift;
	bool reflected;
	int apply(int i, int n) const {
		int j = reflected ? shift - i : shift + i;
		return ((j % n) + n) % n;
	}
};
std::vector<CyclicIso> cyclic_isos(const std::vector<Int>& a, const std::vector<Int>& b);

} // namespace cstar
