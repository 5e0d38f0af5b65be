#pragma once

#include "cstar/rational.hpp"
#include "cstar/toric.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cstar {

/// A point of the projective line over Q: a rational label or infinity.
struct ProjPoint {
	bool inf = false;
	Rat value;

	static ProjPoint infinity() { return {true, Rat(0)}; }
	static ProjPoint at(Rat v) { return {false, std::move(v)}; }

	bool operator==(const ProjPoint& o) const { return inf == o.inf && (inf || value == o.value); }
	bool operator!=(const ProjPoint& o) const { return !(*this == o); }
	bool operator<(const ProjPoint& o) const {
		if (inf != o.inf) return !inf; // finite points first
		if (inf) return false;
		return value < o.value;
	}
	std::string str() const { return inf ? "inf" : value.str(); }
	static ProjPoint parse(const std::string& s) {
		return s == "inf" ? infinity() : at(Rat::parse(s));
	}
};

/// Finite proper subdivision of the rational line, recorded by its vertices.
struct Slice {
	std::vector<Rat> verts; // strictly increasing, non-empty

	bool trivial() const { return verts.size() == 1 && verts[0] == Rat(0); }
	const Rat& min() const { return verts.front(); }
	const Rat& max() const { return verts.back(); }
	int size() const { return static_cast<int>(verts.size()); }
	bool contains(const Rat& v) const;
	bool operator==(const Slice& o) const { return verts == o.verts; }
	bool operator<(const Slice& o) const;
};

Slice make_slice(std::vector<Rat> verts); // sorts and checks distinctness

enum class Marker { Circ, Bullet };

inline const char* marker_str(Marker m) { return m == Marker::Circ ? "circ" : "bullet"; }

/// The combinatorial datum of a complete rational C*-surface: slices over
/// finitely many points of P^1 plus the two boundary markers. Trivial
/// slices are never stored; lookup defaults to {0}.
struct Multidivisor {
	std::map<ProjPoint, Slice> slices;
	Marker minus = Marker::Circ;
	Marker plus = Marker::Circ;

	Slice slice_at(const ProjPoint& p) const {
		auto it = slices.find(p);
		if (it != slices.end()) return it->second;
		return Slice{{Rat(0)}};
	}
	void set_slice(const ProjPoint& p, Slice s) {
		if (s.trivial())
			slices.erase(p);
		else
			slices[p] = std::move(s);
	}
	int nontrivial_count() const { return static_cast<int>(slices.size()); }
	bool operator==(const Multidivisor& o) const {
		return slices == o.slices && minus == o.minus && plus == o.plus;
	}
};

/// Invariant prime divisor classes of X(M).
struct PrimeDiv {
	enum Kind { Vertex, DMinus, DPlus, Fiber } kind = Fiber;
	ProjPoint point; // Vertex only
	Rat v;           // Vertex only

	static PrimeDiv vertex(ProjPoint p, Rat vv) { return {Vertex, std::move(p), std::move(vv)}; }
	static PrimeDiv dminus() { return {DMinus, {}, {}}; }
	static PrimeDiv dplus() { return {DPlus, {}, {}}; }
	static PrimeDiv fiber() { return {Fiber, {}, {}}; }

	bool operator==(const PrimeDiv& o) const {
		if (kind != o.kind) return false;
		if (kind != Vertex) return true;
		return point == o.point && v == o.v;
	}
	bool operator<(const PrimeDiv& o) const {
		if (kind != o.kind) return kind < o.kind;
		if (kind != Vertex) return false;
		if (point != o.point) return point < o.point;
		return v < o.v;
	}
	std::string str() const;
};

/// Invariant Weil divisor: integer coefficients on finitely many primes.
using WeilDiv = std::map<PrimeDiv, Int>;

struct MdivReport {
	bool valid = false;
	std::vector<std::string> issues;
};

MdivReport validate(const Multidivisor& m);
void require_valid(const Multidivisor& m);

bool is_smooth(const Multidivisor& m);

std::vector<PrimeDiv> invariant_prime_divisors(const Multidivisor& m);

Int picard_rank(const Multidivisor& m);

bool is_toric(const Multidivisor& m);

/// Fan of a toric multidivisor together with the prime divisor each ray carries.
struct LabeledFan {
	ToricSurface x;
	std::vector<PrimeDiv> labels;
	int ray_of(const PrimeDiv& d) const; // -1 when the divisor is not a ray
};

LabeledFan to_fan_labeled(const Multidivisor& m);
/// Same with an explicit choice of the two designated points (heights +1/-1);
/// every other slice must be trivial.
LabeledFan to_fan_designated(const Multidivisor& m, const ProjPoint& p1, const ProjPoint& p2);
ToricSurface to_fan(const Multidivisor& m);

/// Multidivisor of a realized toric surface with respect to the functional
/// R determined by <rho_pivot, R> = -1, <rho_{pivot+1}, R> = r.
Multidivisor from_fan(const ToricSurface& x, int pivot, const Int& r);

/// General downgrade: slices on the lines [R=1] and [R=-1] at the points
/// p1, p2; q is a lattice base point with <q,R> = 1.
Multidivisor downgrade(const ToricSurface& x, const Vec2& r_functional, const Vec2& q,
                       const ProjPoint& p1, const ProjPoint& p2);

/// Elementary blowup moves on a multidivisor.
struct MdivMove {
	enum Kind { ToggleMinus, TogglePlus, InsertVertex } kind;
	ProjPoint point; // InsertVertex
	Rat v;           // InsertVertex

	static MdivMove toggle_minus() { return {ToggleMinus, {}, {}}; }
	static MdivMove toggle_plus() { return {TogglePlus, {}, {}}; }
	static MdivMove insert(ProjPoint p, Rat vv) { return {InsertVertex, std::move(p), std::move(vv)}; }
	std::string str() const;
};

/// Apply a blowup move; requires the result to be a smooth multidivisor.
Multidivisor blow_up(const Multidivisor& m, const MdivMove& move);

/// Translate between ray-insertion gaps of a labeled downgrade fan and
/// multidivisor moves. Gap g names the insertion between rays g and g+1.
MdivMove gap_to_move(const LabeledFan& fan, const ProjPoint& p1, const ProjPoint& p2, int gap);
int move_to_gap(const LabeledFan& fan, const ProjPoint& p1, const ProjPoint& p2,
                const MdivMove& move);

/// A toric multidivisor model of any smooth complete toric surface
/// (downgrade along the first ray).
Multidivisor toric_multidivisor(const ToricSurface& x);

/// Contract an invariant prime divisor (vertex removal or marker toggle).
/// The caller is responsible for the (-1)-curve check.
Multidivisor contract(const Multidivisor& m, const PrimeDiv& e);

/// Isomorphism of multidivisors: point relabeling, per-point integer
/// translations summing to zero, optional reflection of the line.
struct MdivIso {
	bool reflect = false;
	std::map<ProjPoint, ProjPoint> point_map;
	std::map<ProjPoint, Int> shift; // applied after reflection, per source point

	Rat map_vertex(const ProjPoint& p, const Rat& v) const;
	ProjPoint map_point(const ProjPoint& p) const;
	PrimeDiv map_div(const PrimeDiv& d) const;
};

/// Canonical form for isomorphism testing.
std::string mdiv_canon(const Multidivisor& m);
bool mdiv_isomorphic(const Multidivisor& a, const Multidivisor& b);
std::optional<MdivIso> mdiv_find_iso(const Multidivisor& a, const Multidivisor& b);
Multidivisor apply_iso(const Multidivisor& a, const MdivIso& iso);

} // namespace cstar
