#include "cstar/degeneration.hpp"

#include "cstar/error.hpp"
#include "cstar/picard.hpp"

#include <algorithm>
#include <set>

namespace cstar {

namespace {

std::vector<int> degrees(const DegenerationDiagram& d, bool side0) {
	int n = side0 ? d.slice0().size() : d.slice_s().size();
	std::vector<int> deg(n, 0);
	for (const auto& [i, j] : d.edges) {
		int k = side0 ? i : j;
		if (k >= 0 && k < n) ++deg[k];
	}
	return deg;
}

} // namespace

DiagramReport validate_diagram(const DegenerationDiagram& d) {
	DiagramReport rep;
	if (d.p0 == d.ps) {
		rep.issues.push_back("designated points coincide");
		return rep;
	}
	MdivReport mrep = validate(d.M);
	for (const auto& s : mrep.issues) rep.issues.push_back("multidivisor: " + s);
	if (!mrep.valid) return rep;

	Slice s0 = d.slice0(), ss = d.slice_s();
	int n0 = s0.size(), ns = ss.size();
	if (d.edges.empty()) rep.issues.push_back("graph has no edges");
	std::set<std::pair<int, int>> seen;
	for (const auto& [i, j] : d.edges) {
		if (i < 0 || i >= n0 || j < 0 || j >= ns) {
			rep.issues.push_back("edge index out of range");
			return rep;
		}
		if (!seen.insert({i, j}).second) rep.issues.push_back("duplicate edge");
	}
	auto deg0 = degrees(d, true), degs = degrees(d, false);
	for (int i = 0; i < n0; ++i) {
		if (deg0[i] == 0) rep.issues.push_back("vertex " + s0.verts[i].str() + " at p0 not covered");
		if (deg0[i] > 1 && !s0.verts[i].is_integer())
			rep.issues.push_back("vertex " + s0.verts[i].str() + " at p0 has degree > 1 but is not a lattice point");
	}
	for (int j = 0; j < ns; ++j) {
		if (degs[j] == 0) rep.issues.push_back("vertex " + ss.verts[j].str() + " at ps not covered");
		if (degs[j] > 1 && !ss.verts[j].is_integer())
			rep.issues.push_back("vertex " + ss.verts[j].str() + " at ps has degree > 1 but is not a lattice point");
	}
	// non-crossing: vertex indices follow the line order
	for (size_t a = 0; a < d.edges.size(); ++a)
		for (size_t b = a + 1; b < d.edges.size(); ++b) {
			auto [i1, j1] = d.edges[a];
			auto [i2, j2] = d.edges[b];
			if ((i1 - i2) * (j1 - j2) < 0) {
				rep.issues.push_back("edges cross");
				a = d.edges.size();
				break;
			}
		}
	// connectivity over both vertex sets
	{
		std::vector<int> comp(n0 + ns);
		for (int i = 0; i < n0 + ns; ++i) comp[i] = i;
		auto find = [&](int v) {
			while (comp[v] != v) v = comp[v] = comp[comp[v]];
			return v;
		};
		for (const auto& [i, j] : d.edges) comp[find(i)] = find(n0 + j);
		std::set<int> roots;
		for (int i = 0; i < n0 + ns; ++i) roots.insert(find(i));
		if (roots.size() > 1) rep.issues.push_back("graph not connected");
	}
	rep.trivial = std::min(n0, ns) == 1;
	rep.valid = rep.issues.empty();
	return rep;
}

void require_valid_diagram(const DegenerationDiagram& d) {
	DiagramReport rep = validate_diagram(d);
	require(rep.valid, Errc::InvalidDiagram,
	        rep.issues.empty() ? std::string("invalid diagram") : rep.issues.front());
}

Multidivisor special_fiber(const DegenerationDiagram& d) {
	require_valid_diagram(d);
	Slice s0 = d.slice0(), ss = d.slice_s();
	std::vector<Rat> sums;
	for (const auto& [i, j] : d.edges) sums.push_back(s0.verts[i] + ss.verts[j]);
	std::sort(sums.begin(), sums.end(), [](const Rat& a, const Rat& b) { return a < b; });
	for (size_t k = 0; k + 1 < sums.size(); ++k)
		internal_check(sums[k] != sums[k + 1], "special fiber: coincident edge sums");
	Multidivisor out = d.M;
	out.slices.erase(d.p0);
	out.slices.erase(d.ps);
	out.set_slice(d.p0, make_slice(sums));
	require_valid(out);
	return out;
}

Multidivisor hirzebruch_multidivisor(int r, int a) {
	require(r >= 0 && a >= 1, Errc::PreconditionViolated, "need r >= 0 and alpha >= 1");
	Multidivisor m;
	m.set_slice(ProjPoint::at(Rat(0)), make_slice({Rat(-1, r + a), Rat(0)}));
	m.set_slice(ProjPoint::infinity(), make_slice({Rat(0), Rat(1, a)}));
	return m;
}

DegenerationDiagram hirzebruch_diagram(int r, int a, bool alt_graph) {
	DegenerationDiagram d;
	d.M = hirzebruch_multidivisor(r, a);
	d.p0 = ProjPoint::at(Rat(0));
	d.ps = ProjPoint::infinity();
	if (alt_graph) {
		require(r == 0 && a == 1, Errc::PreconditionViolated,
		        "the alternate graph exists only for (r, alpha) = (0, 1)");
		d.edges = {{0, 0}, {0, 1}, {1, 1}};
	} else {
		d.edges = {{0, 0}, {1, 0}, {1, 1}};
	}
	require_valid_diagram(d);
	return d;
}

DegenerationDiagram toric_deformation_diagram(const ToricSurface& x, const Int& r) {
	Multidivisor m0 = from_fan(x, 0, r);
	Slice whole = m0.slice_at(ProjPoint::at(Rat(0)));
	std::vector<Rat> lo, hi;
	for (const auto& v : whole.verts) {
		if (v <= Rat(0)) lo.push_back(v);
		if (v >= Rat(0)) hi.push_back(v);
	}
	DegenerationDiagram d;
	d.M = m0;
	d.M.slices.erase(ProjPoint::at(Rat(0)));
	d.p0 = ProjPoint::at(Rat(0));
	d.ps = ProjPoint::infinity();
	d.M.set_slice(d.p0, make_slice(hi));
	d.M.set_slice(d.ps, make_slice(lo));
	Slice s0 = d.slice0(), ss = d.slice_s();
	int i0 = -1, j0 = -1;
	for (int i = 0; i < s0.size(); ++i)
		if (s0.verts[i] == Rat(0)) i0 = i;
	for (int j = 0; j < ss.size(); ++j)
		if (ss.verts[j] == Rat(0)) j0 = j;
	internal_check(i0 >= 0 && j0 >= 0, "toric deformation: origin vertex missing");
	for (int j = 0; j < ss.size(); ++j) d.edges.push_back({i0, j});
	for (int i = 0; i < s0.size(); ++i)
		if (i != i0) d.edges.push_back({i, j0});
	std::sort(d.edges.begin(), d.edges.end());
	require_valid_diagram(d);
	internal_check(special_fiber(d) == m0, "toric deformation: special fiber mismatch");
	internal_check(toric_equal(to_fan(d.M), deformation_general_fiber(x, r)),
	               "toric deformation: general fiber disagrees with the b-sequence formula");
	return d;
}

DegenerationDiagram merge_slices_degeneration(const Multidivisor& m, const ProjPoint& p,
                                              const ProjPoint& q) {
	require(p != q, Errc::PreconditionViolated, "merge needs two distinct points");
	require(m.slices.count(p) && m.slices.count(q), Errc::PreconditionViolated,
	        "merge needs two nontrivial slices");
	Slice sp = m.slice_at(p), sq = m.slice_at(q);
	// only vertices of degree > 1 must be lattice points, so the constraint
	// on an extreme vertex disappears when the opposite slice is a singleton
	require(sq.size() == 1 || sp.min().is_integer(), Errc::PreconditionViolated,
	        "leftmost vertex at " + p.str() + " is not a lattice point");
	require(sp.size() == 1 || sq.max().is_integer(), Errc::PreconditionViolated,
	        "rightmost vertex at " + q.str() + " is not a lattice point");
	DegenerationDiagram d;
	d.M = m;
	d.p0 = p;
	d.ps = q;
	int jmax = sq.size() - 1;
	for (int i = 0; i < sp.size(); ++i) d.edges.push_back({i, jmax});
	for (int j = 0; j < jmax; ++j) d.edges.push_back({0, j});
	std::sort(d.edges.begin(), d.edges.end());
	require_valid_diagram(d);
	return d;
}

namespace {

// shift edge indices after inserting a vertex at sorted position k
void shift_edges(std::vector<std::pair<int, int>>& edges, bool side0, int k) {
	for (auto& [i, j] : edges) {
		if (side0 && i >= k) ++i;
		if (!side0 && j >= k) ++j;
	}
}

int insert_position(const Slice& s, const Rat& v) {
	int k = 0;
	while (k < s.size() && s.verts[k] < v) ++k;
	return k;
}

} // namespace

DiagramBlowdown diagram_blowdown(const DegenerationDiagram& d, const PrimeDiv& e) {
	require_valid_diagram(d);
	{
		Multidivisor sp = special_fiber(d);
		PicLattice lat = picard_lattice(sp);
		int gi = lat.gen_index(e);
		require(gi >= 0, Errc::UnknownDivisor, "not a prime divisor of the special fiber: " + e.str());
		Vec unit(lat.ngens, Int(0));
		unit[gi] = 1;
		Vec cls = lat.proj * unit;
		require(lat.pair(cls, cls) == -1, Errc::NotMinusOne,
		        e.str() + " has self-intersection " + lat.pair(cls, cls).str());
	}
	DegenerationDiagram out = d;
	PrimeDiv egen = e;
	switch (e.kind) {
		case PrimeDiv::DMinus:
		case PrimeDiv::DPlus:
			out.M = contract(d.M, e);
			break;
		case PrimeDiv::Fiber:
			fail(Errc::NotMinusOne, "the generic fiber class is never a (-1)-curve");
		case PrimeDiv::Vertex: {
			if (e.point != d.p0) {
				require(e.point != d.ps, Errc::UnknownDivisor,
				        "the special fiber has no vertex divisors at ps");
				out.M = contract(d.M, e);
				break;
			}
			// the contracted curve comes from an edge of the graph
			Slice s0 = d.slice0(), ss = d.slice_s();
			int hit = -1;
			for (size_t k = 0; k < d.edges.size(); ++k)
				if (s0.verts[d.edges[k].first] + ss.verts[d.edges[k].second] == e.v) hit = static_cast<int>(k);
			require(hit >= 0, Errc::UnknownDivisor, "no edge sums to " + e.v.str());
			auto [i, j] = d.edges[hit];
			auto deg0 = degrees(d, true), degs = degrees(d, false);
			internal_check(deg0[i] == 1 || degs[j] == 1,
			               "both endpoints of a (-1)-edge have degree > 1");
			bool drop0;
			if (deg0[i] == 1 && degs[j] == 1)
				// trivial one-edge deformation: drop the endpoint whose partner is integral
				drop0 = ss.verts[j].is_integer();
			else
				drop0 = deg0[i] == 1;
			out.edges.erase(out.edges.begin() + hit);
			if (drop0) {
				egen = PrimeDiv::vertex(d.p0, s0.verts[i]);
				out.M = contract(d.M, egen);
				for (auto& [a, b] : out.edges)
					if (a > i) --a;
			} else {
				egen = PrimeDiv::vertex(d.ps, ss.verts[j]);
				out.M = contract(d.M, egen);
				for (auto& [a, b] : out.edges)
					if (b > j) --b;
			}
			if (out.edges.empty()) {
				// the one-edge case: the emptied slice reads as {0}; reconnect
				internal_check(out.slice0().size() == 1 && out.slice_s().size() == 1,
				               "blowdown emptied a graph with leftover vertices");
				out.edges = {{0, 0}};
			}
			break;
		}
	}
	require_valid_diagram(out);
	return {out, egen};
}

DiagramBlowup diagram_blowup(const DegenerationDiagram& d, const MdivMove& move) {
	require_valid_diagram(d);
	DegenerationDiagram out = d;
	MdivMove smove = move;
	switch (move.kind) {
		case MdivMove::ToggleMinus:
		case MdivMove::TogglePlus:
			out.M = blow_up(d.M, move);
			break;
		case MdivMove::InsertVertex: {
			if (move.point != d.p0 && move.point != d.ps) {
				out.M = blow_up(d.M, move);
				break;
			}
			bool at0 = move.point == d.p0;
			Slice mine = at0 ? d.slice0() : d.slice_s();
			Slice other = at0 ? d.slice_s() : d.slice0();
			require(!mine.contains(move.v), Errc::IllegalBlowup, "vertex already present");
			int k = insert_position(mine, move.v);
			int partner;
			if (k == 0 || k == mine.size()) {
				// new extreme vertex: attach to the matching extreme across the graph
				partner = k == 0 ? 0 : other.size() - 1;
			} else {
				// interior: the unique common neighbor of the two slice neighbors
				std::set<int> na, nb;
				for (const auto& [i, j] : d.edges) {
					int me = at0 ? i : j, yon = at0 ? j : i;
					if (me == k - 1) na.insert(yon);
					if (me == k) nb.insert(yon);
				}
				std::vector<int> common;
				std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(common));
				require(common.size() == 1, Errc::AmbiguousEdge,
				        "interior insertion has " + std::to_string(common.size()) + " candidate edges");
				partner = common[0];
			}
			Rat sum = move.v + other.verts[partner];
			out.M = blow_up(d.M, move); // checks smoothness of the general fiber
			shift_edges(out.edges, at0, k);
			out.edges.push_back(at0 ? std::make_pair(k, partner) : std::make_pair(partner, k));
			std::sort(out.edges.begin(), out.edges.end());
			smove = MdivMove::insert(d.p0, sum);
			break;
		}
	}
	require_valid_diagram(out);
	// the special fiber must again be a smooth blowup
	Multidivisor sp = special_fiber(out);
	require(is_smooth(sp), Errc::NotSmoothAfterBlowup, "special fiber became singular");
	internal_check(picard_rank(sp) == picard_rank(special_fiber(d)) + 1,
	               "special fiber rank did not grow by one");
	return {out, smove};
}

MdivMove general_move_for_special(const DegenerationDiagram& d, const MdivMove& smove,
                                  bool prefer_p0) {
	if (smove.kind != MdivMove::InsertVertex || smove.point != d.p0) return smove;
	Slice s0 = d.slice0(), ss = d.slice_s();
	std::vector<std::pair<Rat, std::pair<int, int>>> sums;
	for (const auto& [i, j] : d.edges) sums.push_back({s0.verts[i] + ss.verts[j], {i, j}});
	std::sort(sums.begin(), sums.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
	const Rat& v = smove.v;
	int k = 0;
	while (k < static_cast<int>(sums.size()) && sums[k].first < v) ++k;
	require(k >= static_cast<int>(sums.size()) || sums[k].first != v, Errc::IllegalBlowup,
	        "vertex already present in the special fiber");
	if (k > 0 && k < static_cast<int>(sums.size())) {
		// interior: consecutive edges share an endpoint; insert on the other side
		auto [i1, j1] = sums[k - 1].second;
		auto [i2, j2] = sums[k].second;
		if (i1 == i2) return MdivMove::insert(d.ps, v - s0.verts[i1]);
		if (j1 == j2) return MdivMove::insert(d.p0, v - ss.verts[j1]);
		internal_check(false, "consecutive special vertices come from disjoint edges");
	}
	// extremal: both sides work combinatorially; honor the preference when smooth
	auto [i, j] = (k == 0 ? sums.front() : sums.back()).second;
	MdivMove m0 = MdivMove::insert(d.p0, v - ss.verts[j]);
	MdivMove m1 = MdivMove::insert(d.ps, v - s0.verts[i]);
	auto admissible = [&](const MdivMove& mv) {
		try {
			(void)diagram_blowup(d, mv);
			return true;
		} catch (const Error&) {
			return false;
		}
	};
	if (prefer_p0) {
		if (admissible(m0)) return m0;
		require(admissible(m1), Errc::IllegalBlowup, "no smooth placement for the inserted vertex");
		return m1;
	}
	if (admissible(m1)) return m1;
	require(admissible(m0), Errc::IllegalBlowup, "no smooth placement for the inserted vertex");
	return m0;
}

} // namespace cstar
