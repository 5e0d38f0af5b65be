#include "cstar/multidivisor.hpp"

#include "cstar/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace cstar {

bool Slice::contains(const Rat& v) const {
	return std::find(verts.begin(), verts.end(), v) != verts.end();
}

bool Slice::operator<(const Slice& o) const {
	return std::lexicographical_compare(verts.begin(), verts.end(), o.verts.begin(), o.verts.end(),
	                                    [](const Rat& a, const Rat& b) { return a < b; });
}

Slice make_slice(std::vector<Rat> verts) {
	require(!verts.empty(), Errc::PreconditionViolated, "slice needs at least one vertex");
	std::sort(verts.begin(), verts.end(), [](const Rat& a, const Rat& b) { return a < b; });
	for (size_t i = 0; i + 1 < verts.size(); ++i)
		require(verts[i] != verts[i + 1], Errc::PreconditionViolated, "slice vertices must be distinct");
	return Slice{std::move(verts)};
}

std::string PrimeDiv::str() const {
	switch (kind) {
		case Vertex: return "D[" + v.str() + "," + point.str() + "]";
		case DMinus: return "D-";
		case DPlus: return "D+";
		case Fiber: return "F";
	}
	return "?";
}

std::string MdivMove::str() const {
	switch (kind) {
		case ToggleMinus: return "toggle-";
		case TogglePlus: return "toggle+";
		case InsertVertex: return "insert " + v.str() + " at " + point.str();
	}
	return "?";
}

MdivReport validate(const Multidivisor& m) {
	MdivReport rep;
	for (const auto& [p, s] : m.slices) {
		if (s.verts.empty()) {
			rep.issues.push_back("empty slice at " + p.str());
			return rep;
		}
		for (size_t i = 0; i + 1 < s.verts.size(); ++i)
			if (!(s.verts[i] < s.verts[i + 1])) {
				rep.issues.push_back("slice at " + p.str() + " not strictly increasing");
				return rep;
			}
		if (s.trivial()) rep.issues.push_back("trivial slice stored at " + p.str());
	}
	if (m.minus == Marker::Circ) {
		Rat total(0);
		for (const auto& [p, s] : m.slices) total = total + s.min();
		if (!(total < Rat(0)))
			rep.issues.push_back("degree condition fails on the minus side: sum of minima = " + total.str());
	}
	if (m.plus == Marker::Circ) {
		Rat total(0);
		for (const auto& [p, s] : m.slices) total = total + s.max();
		if (!(total > Rat(0)))
			rep.issues.push_back("degree condition fails on the plus side: sum of maxima = " + total.str());
	}
	rep.valid = rep.issues.empty();
	return rep;
}

void require_valid(const Multidivisor& m) {
	MdivReport rep = validate(m);
	require(rep.valid, Errc::PreconditionViolated,
	        "invalid multidivisor: " + (rep.issues.empty() ? std::string("?") : rep.issues.front()));
}

namespace {

// Boundary condition on one side. `extremes` holds the extreme vertex of
// every nontrivial slice, oriented so that smoothness demands sign * S = 1.
bool side_smooth(const std::vector<Rat>& extremes, Marker marker, int sign) {
	if (marker == Marker::Bullet) {
		for (const auto& e : extremes)
			if (!e.is_integer()) return false;
		return true;
	}
	std::vector<Rat> frac;
	Int intsum = 0;
	for (const auto& e : extremes) {
		if (e.is_integer())
			intsum += e.num;
		else
			frac.push_back(e);
	}
	if (frac.size() > 2) return false;
	Int prod = 1;
	for (const auto& f : frac) prod *= f.den;
	Int s = prod * intsum;
	for (size_t i = 0; i < frac.size(); ++i) {
		Int term = frac[i].num;
		for (size_t j = 0; j < frac.size(); ++j)
			if (j != i) term *= frac[j].den;
		s += term;
	}
	return sign * s == 1;
}

} // namespace

bool is_smooth(const Multidivisor& m) {
	require_valid(m);
	for (const auto& [p, s] : m.slices)
		for (size_t i = 0; i + 1 < s.verts.size(); ++i) {
			const Rat& a = s.verts[i];
			const Rat& b = s.verts[i + 1];
			if (!(Rat(a.den * b.den) * (b - a) == Rat(1))) return false;
		}
	std::vector<Rat> mins, maxs;
	for (const auto& [p, s] : m.slices) {
		mins.push_back(s.min());
		maxs.push_back(s.max());
	}
	return side_smooth(mins, m.minus, -1) && side_smooth(maxs, m.plus, +1);
}

std::vector<PrimeDiv> invariant_prime_divisors(const Multidivisor& m) {
	std::vector<PrimeDiv> out;
	for (const auto& [p, s] : m.slices)
		for (const auto& v : s.verts) out.push_back(PrimeDiv::vertex(p, v));
	if (m.minus == Marker::Bullet) out.push_back(PrimeDiv::dminus());
	if (m.plus == Marker::Bullet) out.push_back(PrimeDiv::dplus());
	out.push_back(PrimeDiv::fiber());
	return out;
}

Int picard_rank(const Multidivisor& m) {
	Int rank = 0;
	for (const auto& [p, s] : m.slices) rank += s.size() - 1;
	if (m.minus == Marker::Bullet) ++rank;
	if (m.plus == Marker::Bullet) ++rank;
	return rank;
}

bool is_toric(const Multidivisor& m) { return m.nontrivial_count() <= 2; }

int LabeledFan::ray_of(const PrimeDiv& d) const {
	for (size_t i = 0; i < labels.size(); ++i)
		if (labels[i] == d) return static_cast<int>(i);
	return -1;
}

LabeledFan to_fan_designated(const Multidivisor& m, const ProjPoint& p1, const ProjPoint& p2) {
	require(p1 != p2, Errc::PreconditionViolated, "designated points must differ");
	for (const auto& [p, s] : m.slices)
		require(p == p1 || p == p2, Errc::NotToric,
		        "nontrivial slice at non-designated point " + p.str());
	std::vector<std::pair<Vec2, PrimeDiv>> rays;
	Slice s1 = m.slice_at(p1), s2 = m.slice_at(p2);
	for (const auto& v : s1.verts)
		rays.push_back({Vec2{v.num, v.den},
		                s1.trivial() ? PrimeDiv::fiber() : PrimeDiv::vertex(p1, v)});
	for (const auto& v : s2.verts)
		rays.push_back({Vec2{v.num, -v.den},
		                s2.trivial() ? PrimeDiv::fiber() : PrimeDiv::vertex(p2, v)});
	if (m.minus == Marker::Bullet) rays.push_back({Vec2{-1, 0}, PrimeDiv::dminus()});
	if (m.plus == Marker::Bullet) rays.push_back({Vec2{1, 0}, PrimeDiv::dplus()});
	std::sort(rays.begin(), rays.end(),
	          [](const auto& a, const auto& b) { return ccw_angle_less(a.first, b.first); });
	std::vector<Vec2> rs;
	std::vector<PrimeDiv> labels;
	for (auto& [r, l] : rays) {
		rs.push_back(r);
		labels.push_back(l);
	}
	std::vector<Int> b;
	try {
		b = b_from_rays(rs);
	} catch (const Error&) {
		fail(Errc::NotSmooth, "downgraded fan is not smooth/complete");
	}
	ToricSurface x{b, rs};
	ToricReport rep = validate_toric(x);
	require(rep.valid, Errc::NotSmooth, "downgraded fan is not smooth/complete");
	return {std::move(x), std::move(labels)};
}

LabeledFan to_fan_labeled(const Multidivisor& m) {
	require(is_toric(m), Errc::NotToric, "more than two nontrivial slices");
	std::vector<ProjPoint> pts;
	for (const auto& [p, s] : m.slices) pts.push_back(p);
	if (pts.empty()) {
		pts.push_back(ProjPoint::at(Rat(0)));
		pts.push_back(ProjPoint::infinity());
	} else if (pts.size() == 1) {
		pts.push_back(pts[0].inf ? ProjPoint::at(Rat(0)) : ProjPoint::infinity());
		std::sort(pts.begin(), pts.end());
	}
	return to_fan_designated(m, pts[0], pts[1]);
}

ToricSurface to_fan(const Multidivisor& m) { return to_fan_labeled(m).x; }

Multidivisor downgrade(const ToricSurface& x0, const Vec2& r_fun, const Vec2& q,
                       const ProjPoint& p1, const ProjPoint& p2) {
	ToricSurface x = realized(x0);
	const auto& rays = *x.rays;
	auto pair_with = [&](const Vec2& v) { return r_fun.x * v.x + r_fun.y * v.y; };
	internal_check(pair_with(q) == 1, "downgrade: base point not on [R=1]");
	Vec2 w{-r_fun.y, r_fun.x};
	std::vector<Rat> s1, s2;
	Multidivisor m;
	for (const auto& rho : rays) {
		Int h = pair_with(rho);
		if (h == 0) {
			if (rho == w)
				m.plus = Marker::Bullet;
			else if (rho == -w)
				m.minus = Marker::Bullet;
			else
				internal_check(false, "downgrade: horizontal ray is not primitive along the line");
			continue;
		}
		// rho = h*q + x*w
		Vec2 rem{rho.x - h * q.x, rho.y - h * q.y};
		Int xc;
		if (w.x != 0) {
			internal_check(rem.x % w.x == 0 && rem.y == Int(rem.x / w.x) * w.y, "downgrade: ray off the line frame");
			xc = rem.x / w.x;
		} else {
			internal_check(rem.x == 0 && rem.y % w.y == 0, "downgrade: ray off the line frame");
			xc = rem.y / w.y;
		}
		Int habs = h < 0 ? Int(-h) : h;
		(h > 0 ? s1 : s2).push_back(Rat(xc, habs));
	}
	if (!s1.empty()) m.set_slice(p1, make_slice(s1));
	if (!s2.empty()) m.set_slice(p2, make_slice(s2));
	require_valid(m);
	internal_check(is_smooth(m), "downgrade produced a non-smooth multidivisor");
	return m;
}

Multidivisor from_fan(const ToricSurface& x0, int pivot, const Int& r) {
	ToricSurface x = realized(x0);
	int n = x.nrays();
	require(n >= 4, Errc::PreconditionViolated, "from_fan needs at least 4 rays");
	require(0 <= pivot && pivot < n, Errc::PreconditionViolated, "pivot out of range");
	require(x.b[pivot] < 0, Errc::PreconditionViolated, "pivot must have b < 0");
	require(r >= 0 && r <= -x.b[pivot], Errc::PreconditionViolated, "r out of range [0, -b_pivot]");
	// rotate so the pivot sits at index 0
	std::vector<Int> b(n);
	std::vector<Vec2> rays(n);
	for (int i = 0; i < n; ++i) {
		b[i] = x.b[(pivot + i) % n];
		rays[i] = (*x.rays)[(pivot + i) % n];
	}
	ToricSurface xr{b, rays};
	auto ag = alpha_gamma(xr);
	// R with <rho_0, R> = -1 and <rho_1, R> = r
	const Vec2& r0 = rays[0];
	const Vec2& r1 = rays[1];
	internal_check(det2(r0, r1) == 1, "from_fan: fan not unimodular at the pivot");
	Vec2 rf{Int(-1) * r1.y - r * r0.y, r * r0.x - Int(-1) * r1.x};
	// check: <r0,rf> = -1, <r1,rf> = r
	internal_check(rf.x * r0.x + rf.y * r0.y == -1, "from_fan: functional solve failed");
	internal_check(rf.x * r1.x + rf.y * r1.y == r, "from_fan: functional solve failed");
	Multidivisor m = downgrade(xr, rf, rays[ag.alpha], ProjPoint::at(Rat(0)), ProjPoint::infinity());
	internal_check((m.minus == Marker::Bullet) == (r == 0), "from_fan: minus marker disagrees with r");
	internal_check((m.plus == Marker::Bullet) == (r == -b[0]), "from_fan: plus marker disagrees with r");
	return m;
}

Multidivisor blow_up(const Multidivisor& m, const MdivMove& move) {
	Multidivisor out = m;
	switch (move.kind) {
		case MdivMove::ToggleMinus:
			require(m.minus == Marker::Circ, Errc::IllegalBlowup, "minus marker already present");
			out.minus = Marker::Bullet;
			break;
		case MdivMove::TogglePlus:
			require(m.plus == Marker::Circ, Errc::IllegalBlowup, "plus marker already present");
			out.plus = Marker::Bullet;
			break;
		case MdivMove::InsertVertex: {
			Slice s = m.slice_at(move.point);
			require(!s.contains(move.v), Errc::IllegalBlowup, "vertex already present");
			s.verts.push_back(move.v);
			out.set_slice(move.point, make_slice(s.verts));
			break;
		}
	}
	MdivReport rep = validate(out);
	require(rep.valid, Errc::NotSmoothAfterBlowup, "blowup leaves an invalid multidivisor");
	require(is_smooth(out), Errc::NotSmoothAfterBlowup, "blowup leaves a singular surface");
	return out;
}

Multidivisor contract(const Multidivisor& m, const PrimeDiv& e) {
	Multidivisor out = m;
	switch (e.kind) {
		case PrimeDiv::Vertex: {
			auto it = out.slices.find(e.point);
			require(it != out.slices.end() && it->second.contains(e.v), Errc::UnknownDivisor,
			        "no vertex " + e.v.str() + " at " + e.point.str());
			auto& vs = it->second.verts;
			vs.erase(std::find_if(vs.begin(), vs.end(), [&](const Rat& w) { return w == e.v; }));
			if (vs.empty())
				out.slices.erase(it);
			else if (it->second.trivial())
				out.slices.erase(it);
			break;
		}
		case PrimeDiv::DMinus:
			require(m.minus == Marker::Bullet, Errc::UnknownDivisor, "minus marker is circ");
			out.minus = Marker::Circ;
			break;
		case PrimeDiv::DPlus:
			require(m.plus == Marker::Bullet, Errc::UnknownDivisor, "plus marker is circ");
			out.plus = Marker::Circ;
			break;
		case PrimeDiv::Fiber:
			fail(Errc::NotContractible, "the generic fiber class is not contractible");
	}
	require_valid(out);
	internal_check(is_smooth(out), "contraction of a smooth surface became singular");
	return out;
}

MdivMove gap_to_move(const LabeledFan& fan, const ProjPoint& p1, const ProjPoint& p2, int gap) {
	const auto& rays = *fan.x.rays;
	int n = fan.x.nrays();
	require(0 <= gap && gap < n, Errc::PreconditionViolated, "gap out of range");
	Vec2 s = rays[gap] + rays[(gap + 1) % n];
	if (s.y > 0) return MdivMove::insert(p1, Rat(s.x, s.y));
	if (s.y < 0) return MdivMove::insert(p2, Rat(s.x, -s.y));
	return s.x > 0 ? MdivMove::toggle_plus() : MdivMove::toggle_minus();
}

int move_to_gap(const LabeledFan& fan, const ProjPoint& p1, const ProjPoint& p2,
                const MdivMove& move) {
	Vec2 want;
	switch (move.kind) {
		case MdivMove::ToggleMinus: want = {-1, 0}; break;
		case MdivMove::TogglePlus: want = {1, 0}; break;
		case MdivMove::InsertVertex: {
			Int lam = move.v.den;
			if (move.point == p1)
				want = {move.v.num, lam};
			else if (move.point == p2)
				want = {move.v.num, -lam};
			else
				fail(Errc::PreconditionViolated, "move targets a slice outside the downgrade");
			break;
		}
	}
	const auto& rays = *fan.x.rays;
	int n = fan.x.nrays();
	for (int g = 0; g < n; ++g)
		if (rays[g] + rays[(g + 1) % n] == want) return g;
	fail(Errc::PreconditionViolated, "move does not insert a ray between neighbors");
}

Multidivisor toric_multidivisor(const ToricSurface& x0) {
	ToricSurface x = realized(x0);
	const Vec2& r0 = (*x.rays)[0];
	const Vec2& r1 = (*x.rays)[1];
	// functional vanishing on rho_0, negative on rho_1
	Vec2 rf{-r0.y, r0.x};
	if (rf.x * r1.x + rf.y * r1.y > 0) rf = -rf;
	Vec2 w{-rf.y, rf.x};
	// base point on [R=1]
	Vec2 q = det2(w, r1) != 0 ? r1 : (*x.rays)[2];
	Int h = rf.x * q.x + rf.y * q.y;
	internal_check(h == 1 || h == -1, "downgrade base point solve failed");
	if (h == -1) q = -q;
	return downgrade(x, rf, q, ProjPoint::at(Rat(0)), ProjPoint::at(Rat(1)));
}

Rat MdivIso::map_vertex(const ProjPoint& p, const Rat& v) const {
	Rat w = reflect ? -v : v;
	auto it = shift.find(p);
	if (it != shift.end()) w = w + Rat(it->second);
	return w;
}

ProjPoint MdivIso::map_point(const ProjPoint& p) const {
	auto it = point_map.find(p);
	return it != point_map.end() ? it->second : p;
}

PrimeDiv MdivIso::map_div(const PrimeDiv& d) const {
	switch (d.kind) {
		case PrimeDiv::Vertex: return PrimeDiv::vertex(map_point(d.point), map_vertex(d.point, d.v));
		case PrimeDiv::DMinus: return reflect ? PrimeDiv::dplus() : PrimeDiv::dminus();
		case PrimeDiv::DPlus: return reflect ? PrimeDiv::dminus() : PrimeDiv::dplus();
		case PrimeDiv::Fiber: return PrimeDiv::fiber();
	}
	return d;
}

Multidivisor apply_iso(const Multidivisor& a, const MdivIso& iso) {
	Multidivisor out;
	out.minus = iso.reflect ? a.plus : a.minus;
	out.plus = iso.reflect ? a.minus : a.plus;
	for (const auto& [p, s] : a.slices) {
		std::vector<Rat> vs;
		for (const auto& v : s.verts) vs.push_back(iso.map_vertex(p, v));
		out.set_slice(iso.map_point(p), make_slice(vs));
	}
	return out;
}

namespace {

struct NormSlice {
	std::string key; // normalized vertex list
	Int shift;       // floor of the minimum that was subtracted
	ProjPoint point;
};

// normalized slices of m, optionally reflected, sorted by key
std::pair<std::vector<NormSlice>, std::string> canon_data(const Multidivisor& m, bool reflect) {
	std::vector<NormSlice> out;
	Int total = 0;
	for (const auto& [p, s] : m.slices) {
		std::vector<Rat> vs = s.verts;
		if (reflect) {
			std::reverse(vs.begin(), vs.end());
			for (auto& v : vs) v = -v;
		}
		Int f = vs.front().floor();
		std::string key;
		for (auto& v : vs) key += (v - Rat(f)).str() + ",";
		out.push_back({key, f, p});
		total += f;
	}
	std::sort(out.begin(), out.end(), [](const NormSlice& a, const NormSlice& b) { return a.key < b.key; });
	Marker mn = reflect ? m.plus : m.minus;
	Marker mp = reflect ? m.minus : m.plus;
	std::string form = std::string(marker_str(mn)) + "|" + marker_str(mp) + "|T=" + total.str() + "|";
	for (const auto& ns : out) form += ns.key + ";";
	return {out, form};
}

} // namespace

std::string mdiv_canon(const Multidivisor& m) {
	auto a = canon_data(m, false).second;
	auto b = canon_data(m, true).second;
	return std::min(a, b);
}

bool mdiv_isomorphic(const Multidivisor& a, const Multidivisor& b) {
	return mdiv_canon(a) == mdiv_canon(b);
}

std::optional<MdivIso> mdiv_find_iso(const Multidivisor& a, const Multidivisor& b) {
	auto bd = canon_data(b, false);
	for (bool reflect : {false, true}) {
		auto ad = canon_data(a, reflect);
		if (ad.second != bd.second) continue;
		MdivIso iso;
		iso.reflect = reflect;
		bool ok = true;
		for (size_t i = 0; i < ad.first.size() && ok; ++i) {
			if (ad.first[i].key != bd.first[i].key) ok = false;
			iso.point_map[ad.first[i].point] = bd.first[i].point;
			iso.shift[ad.first[i].point] = bd.first[i].shift - ad.first[i].shift;
		}
		if (!ok) continue;
		if (apply_iso(a, iso) == b) return iso;
	}
	return std::nullopt;
}

} // namespace cstar
