#include "cstar/connectivity.hpp"

#include "cstar/error.hpp"

#include <algorithm>

namespace cstar {

namespace {

bool fibers_agree(const Multidivisor& a, const Multidivisor& b) {
	if (a == b) return true;
	if (mdiv_isomorphic(a, b)) return true;
	if (is_toric(a) && is_toric(b)) return toric_equal(to_fan(a), to_fan(b));
	return false;
}

// (b0, 0, b1, 1, 1) presentation of a rank-3 toric surface
struct FamilyForm {
	Int b0;
	std::vector<Int> seq() const { return {b0, Int(0), Int(1) - b0, Int(1), Int(1)}; }
};

FamilyForm family_form(const ToricSurface& x, bool swap_ends) {
	internal_check(x.nrays() == 5, "family form needs 5 rays");
	std::vector<std::vector<Int>> variants{x.b, {x.b.rbegin(), x.b.rend()}};
	for (const auto& v : variants)
		for (int s = 0; s < 5; ++s) {
			std::vector<Int> rot(5);
			for (int i = 0; i < 5; ++i) rot[i] = v[(s + i) % 5];
			if (rot[1] == 0 && rot[3] == 1 && rot[4] == 1) {
				FamilyForm f{swap_ends ? rot[2] : rot[0]};
				internal_check(rot[0] + rot[2] == 1, "family form violates the b-sum");
				return f;
			}
		}
	fail(Errc::InternalInconsistency, "rank-3 toric surface without the family form");
}

// a blowup move for a fiber, expressed either as a fan gap (toric fibers)
// or as a multidivisor move relative to a concrete model
struct CarriedMove {
	bool as_gap = false;
	int gap = 0;             // relative to fan(model)
	MdivMove move = MdivMove::toggle_plus();
	Multidivisor model;      // the fiber the move refers to
	ProjPoint p1, p2;        // slice naming of the model's downgrade
};

int map_gap(const CyclicIso& iso, int gap, int n) {
	int g = iso.reflected ? iso.shift - gap - 1 : iso.shift + gap;
	return ((g % n) + n) % n;
}

// re-express a carried move relative to another model of the same surface
CarriedMove cross_boundary(const CarriedMove& cm, const Multidivisor& model,
                           const ProjPoint& q1, const ProjPoint& q2) {
	if (cm.model == model) {
		CarriedMove out = cm;
		out.p1 = q1;
		out.p2 = q2;
		return out;
	}
	LabeledFan fa = to_fan_designated(cm.model, cm.p1, cm.p2);
	LabeledFan fb = to_fan_designated(model, q1, q2);
	int g = cm.as_gap ? cm.gap : move_to_gap(fa, cm.p1, cm.p2, cm.move);
	auto isos = cyclic_isos(fa.x.b, fb.x.b);
	internal_check(!isos.empty(), "boundary fibers are not isomorphic");
	int gb = map_gap(isos.front(), g, fb.x.nrays());
	CarriedMove out;
	out.model = model;
	out.p1 = q1;
	out.p2 = q2;
	out.move = gap_to_move(fb, q1, q2, gb);
	return out;
}

struct LiftResult {
	std::vector<DeformationStep> steps;
	CarriedMove end_move;
};

// lift a path through one blowup carried along the fibers
LiftResult lift_path(const std::vector<DeformationStep>& steps, CarriedMove cm) {
	LiftResult out;
	for (const auto& step : steps) {
		const DegenerationDiagram& d = step.diagram;
		if (step.direction == StepDirection::Degenerate) {
			CarriedMove entry = cross_boundary(cm, general_fiber(d), d.p0, d.ps);
			DiagramBlowup lift = diagram_blowup(d, entry.move);
			out.steps.push_back({lift.diagram, StepDirection::Degenerate});
			cm = CarriedMove{false, 0, lift.special_move, special_fiber(d), d.p0, d.ps};
		} else {
			CarriedMove entry = cross_boundary(cm, special_fiber(d), d.p0, d.ps);
			MdivMove gmove = general_move_for_special(d, entry.move);
			DiagramBlowup lift = diagram_blowup(d, gmove);
			out.steps.push_back({lift.diagram, StepDirection::Deform});
			cm = CarriedMove{false, 0, gmove, general_fiber(d), d.p0, d.ps};
		}
	}
	out.end_move = cm;
	return out;
}

// the two-step bridge between the blowups of x at gaps k-1 and k
struct Bridge {
	DegenerationDiagram down; // special fiber = blowup at gap k-1
	DegenerationDiagram up;   // special fiber = blowup at gap k
};

Bridge make_bridge(const ToricSurface& x0, int k) {
	ToricSurface x = realized(x0);
	int n = x.nrays();
	const Vec2& rk = (*x.rays)[k];
	const Vec2& rnext = (*x.rays)[(k + 1) % n];
	Vec2 rf{-rk.y, rk.x};
	ProjPoint P1 = ProjPoint::at(Rat(0)), P2 = ProjPoint::at(Rat(1)), Ps = ProjPoint::infinity();
	Multidivisor base = downgrade(x, rf, rnext, P1, P2);
	internal_check(base.minus == Marker::Bullet, "bridge downgrade lost the boundary curve");
	Multidivisor mt = base;
	mt.set_slice(Ps, make_slice({Rat(-1), Rat(0)}));
	auto graph_for = [&](const ProjPoint& p) {
		DegenerationDiagram d;
		d.M = mt;
		d.p0 = p;
		d.ps = Ps;
		int nv = mt.slice_at(p).size();
		for (int i = 0; i < nv; ++i) d.edges.push_back({i, 1});
		d.edges.push_back({0, 0});
		std::sort(d.edges.begin(), d.edges.end());
		require_valid_diagram(d);
		return d;
	};
	Bridge b{graph_for(P2), graph_for(P1)};
	internal_check(toric_equal(to_fan(special_fiber(b.down)), toric_blowup(x, (k - 1 + n) % n)),
	               "bridge misses the left gap");
	internal_check(toric_equal(to_fan(special_fiber(b.up)), toric_blowup(x, k)),
	               "bridge misses the right gap");
	return b;
}

Mat entry_iso_matrix(const Multidivisor& cur_model, const PicLattice& cur_lat,
                     const Multidivisor& next_model, const PicLattice& next_lat) {
	if (cur_model == next_model) return Mat::identity(cur_lat.rank);
	return fan_iso_class_matrix(cur_model, cur_lat, next_model, next_lat);
}

} // namespace

Multidivisor DeformationPath::fiber(int k) const {
	if (k == 0) return start;
	return steps[static_cast<size_t>(k) - 1].exit_fiber();
}

bool validate_path(const DeformationPath& path, std::vector<std::string>* issues) {
	auto note = [&](const std::string& s) {
		if (issues) issues->push_back(s);
	};
	bool ok = true;
	Multidivisor cur = path.start;
	for (size_t k = 0; k < path.steps.size(); ++k) {
		const auto& step = path.steps[k];
		DiagramReport rep = validate_diagram(step.diagram);
		if (!rep.valid) {
			note("step " + std::to_string(k) + ": invalid diagram");
			ok = false;
			break;
		}
		if (!fibers_agree(cur, step.entry_fiber())) {
			note("step " + std::to_string(k) + ": fiber mismatch");
			ok = false;
		}
		if (!is_smooth(step.entry_fiber()) || !is_smooth(step.exit_fiber())) {
			note("step " + std::to_string(k) + ": singular fiber");
			ok = false;
		}
		cur = step.exit_fiber();
	}
	if (ok && !fibers_agree(cur, path.end)) {
		note("end fiber mismatch");
		ok = false;
	}
	return ok;
}

DeformationPath connect_toric(const ToricSurface& x0, const ToricSurface& y0) {
	ToricSurface x = realized(x0), y = realized(y0);
	require(x.picard_rank() == y.picard_rank(), Errc::RankMismatch, "Picard ranks differ");
	require(x.picard_rank() > 2, Errc::RankTooSmall,
	        "rank-2 surfaces split into deformation classes by parity");
	DeformationPath path;
	path.start = toric_multidivisor(x);
	path.end = toric_multidivisor(y);
	if (toric_equal(x, y)) return path;

	if (x.nrays() == 5) {
		FamilyForm fx = family_form(x, false);
		FamilyForm fy = family_form(y, false);
		if ((fx.b0 - fy.b0) % 2 != 0) fy = family_form(y, true);
		internal_check((fx.b0 - fy.b0) % 2 == 0, "family parities cannot be matched");
		Int floor0 = -std::max(fx.b0 < 0 ? -fx.b0 : fx.b0, fy.b0 < 0 ? -fy.b0 : fy.b0);
		internal_check(floor0 < 0, "distinct surfaces with a zero family floor");
		ToricSurface z = rays_from_b(FamilyForm{floor0}.seq());
		Int r1 = (fx.b0 - floor0) / 2, r2 = (fy.b0 - floor0) / 2;
		if (r1 != 0 || !toric_equal(z, x)) {
			DegenerationDiagram d1 = toric_deformation_diagram(z, r1);
			internal_check(toric_equal(to_fan(general_fiber(d1)), x), "family step misses x");
			path.steps.push_back({d1, StepDirection::Degenerate});
		}
		if (r2 != 0 || !toric_equal(z, y)) {
			DegenerationDiagram d2 = toric_deformation_diagram(z, r2);
			internal_check(toric_equal(to_fan(general_fiber(d2)), y), "family step misses y");
			path.steps.push_back({d2, StepDirection::Deform});
		}
		return path;
	}

	// induction: blow both down, connect, lift, and re-route the blowup gap
	int n = x.nrays();
	int px = -1, py = -1;
	for (int i = 0; i < n && px < 0; ++i)
		if (x.b[i] == 1) px = i;
	for (int i = 0; i < n && py < 0; ++i)
		if (y.b[i] == 1) py = i;
	internal_check(px >= 0 && py >= 0, "no contractible ray on a surface of rank > 2");
	ToricSurface xs = toric_blowdown(x, px);
	ToricSurface ys = toric_blowdown(y, py);
	int gx = (px - 1 + (n - 1)) % (n - 1);
	int gy = (py - 1 + (n - 1)) % (n - 1);

	DeformationPath base = connect_toric(xs, ys);
	CarriedMove cm;
	cm.as_gap = true;
	cm.gap = gx;
	cm.model = base.start;
	cm.p1 = ProjPoint::at(Rat(0));
	cm.p2 = ProjPoint::at(Rat(1));
	{
		// name the slices of the start model
		std::vector<ProjPoint> pts;
		for (const auto& [p, s] : base.start.slices) pts.push_back(p);
		while (pts.size() < 2) pts.push_back(pts.empty() ? ProjPoint::at(Rat(0)) : ProjPoint::infinity());
		std::sort(pts.begin(), pts.end());
		cm.p1 = pts[0];
		cm.p2 = pts[1];
		// express the x-gap relative to the start model's fan
		LabeledFan f_model = to_fan_designated(base.start, cm.p1, cm.p2);
		auto isos = cyclic_isos(xs.b, f_model.x.b);
		internal_check(!isos.empty(), "start model does not match the blowdown");
		cm.gap = map_gap(isos.front(), gx, n - 1);
	}
	LiftResult lifted = lift_path(base.steps, cm);
	path.steps = std::move(lifted.steps);

	// the lift ends on a blowup of ys at some gap; walk bridges to gap gy
	CarriedMove endm = lifted.end_move;
	LabeledFan f_end = to_fan_designated(endm.model, endm.p1, endm.p2);
	int g_end = endm.as_gap ? endm.gap : move_to_gap(f_end, endm.p1, endm.p2, endm.move);
	auto isos = cyclic_isos(f_end.x.b, ys.b);
	internal_check(!isos.empty(), "lift lost the blowdown of y");
	int cur_gap = map_gap(isos.front(), g_end, n - 1);
	while (cur_gap != gy) {
		int next_gap = (cur_gap + 1) % (n - 1);
		Bridge br = make_bridge(ys, next_gap);
		path.steps.push_back({br.down, StepDirection::Deform});
		path.steps.push_back({br.up, StepDirection::Degenerate});
		cur_gap = next_gap;
	}
	internal_check(validate_path(path), "constructed path fails validation");
	return path;
}

DeformationPath connect(const Multidivisor& a, const Multidivisor& b) {
	require(is_smooth(a) && is_smooth(b), Errc::NotSmooth, "connect needs smooth surfaces");
	require(picard_rank(a) == picard_rank(b), Errc::RankMismatch, "Picard ranks differ");
	require(picard_rank(a) > 2, Errc::RankTooSmall, "connectivity needs rank > 2");
	DegenerationChain ca = degenerate_to_toric(a);
	DegenerationChain cb = degenerate_to_toric(b);
	DeformationPath mid = connect_toric(to_fan(ca.toric), to_fan(cb.toric));
	DeformationPath path;
	path.start = a;
	path.end = b;
	for (const auto& d : ca.steps) path.steps.push_back({d, StepDirection::Degenerate});
	path.steps.insert(path.steps.end(), mid.steps.begin(), mid.steps.end());
	for (auto it = cb.steps.rbegin(); it != cb.steps.rend(); ++it)
		path.steps.push_back({*it, StepDirection::Deform});
	internal_check(validate_path(path), "constructed path fails validation");
	return path;
}

DeformationPath shorten(const DeformationPath& path) {
	DeformationPath out = path;
	bool changed = true;
	while (changed) {
		changed = false;
		for (size_t k = 0; k + 1 < out.steps.size(); ++k) {
			const auto& s1 = out.steps[k];
			const auto& s2 = out.steps[k + 1];
			if (s1.direction != s2.direction && s1.diagram.M == s2.diagram.M &&
			    s1.diagram.edges == s2.diagram.edges && s1.diagram.p0 == s2.diagram.p0 &&
			    s1.diagram.ps == s2.diagram.ps) {
				out.steps.erase(out.steps.begin() + k, out.steps.begin() + k + 2);
				changed = true;
				break;
			}
		}
	}
	return out;
}

Mat fan_iso_class_matrix(const Multidivisor& ma, const PicLattice& la, const Multidivisor& mb,
                         const PicLattice& lb) {
	LabeledFan fa = to_fan_labeled(ma);
	LabeledFan fb = to_fan_labeled(mb);
	auto isos = cyclic_isos(fa.x.b, fb.x.b);
	internal_check(!isos.empty(), "surfaces are not isomorphic through their fans");
	const CyclicIso& iso = isos.front();
	int n = fa.x.nrays();
	// generators of a -> rays of a -> rays of b -> generators of b
	Mat a_to_rays(n, la.ngens);
	for (int g = 0; g < la.ngens; ++g) {
		const PrimeDiv& d = la.gens[g];
		if (d.kind == PrimeDiv::Fiber && fa.ray_of(d) < 0) {
			const auto& [p, s] = *ma.slices.begin();
			for (const auto& v : s.verts) a_to_rays(fa.ray_of(PrimeDiv::vertex(p, v)), g) += v.den;
			continue;
		}
		int r = fa.ray_of(d);
		internal_check(r >= 0, "generator missing from the fan");
		a_to_rays(r, g) = 1;
	}
	Mat rays_to_b(lb.ngens, n);
	for (int r = 0; r < n; ++r) {
		int rb = iso.apply(r, n);
		int gi = lb.gen_index(fb.labels[rb]);
		internal_check(gi >= 0, "target fan label is not a generator");
		rays_to_b(gi, r) = 1;
	}
	Mat m = lb.proj * (rays_to_b * (a_to_rays * la.lift));
	internal_check(m.transposed() * lb.pairing * m == la.pairing,
	               "fan isomorphism does not preserve the pairing");
	internal_check(m * la.kclass == lb.kclass, "fan isomorphism moves the canonical class");
	return m;
}

std::vector<ToricSystem> transport_along_path(const DeformationPath& path, const ToricSystem& a) {
	std::vector<ToricSystem> out;
	Multidivisor cur_model = path.start;
	PicLattice cur_lat = picard_lattice(cur_model);
	require_toric_system(cur_lat, a);
	ToricSurface tv0 = tv_of(cur_lat, a);
	ToricSystem cur = a;
	out.push_back(cur);
	for (const auto& step : path.steps) {
		TransportMap tm = transport_matrix(step.diagram);
		Multidivisor entry_model = step.entry_fiber();
		const PicLattice& entry_lat =
		    step.direction == StepDirection::Degenerate ? tm.general : tm.special;
		Mat cross = entry_iso_matrix(cur_model, cur_lat, entry_model, entry_lat);
		ToricSystem moved;
		for (const auto& e : cur.entries) moved.entries.push_back(cross * e);
		cur = step.direction == StepDirection::Degenerate ? transport_system(tm, moved)
		                                                  : transport_system_inverse(tm, moved);
		cur_model = step.exit_fiber();
		cur_lat = step.direction == StepDirection::Degenerate ? tm.special : tm.general;
		internal_check(is_toric_system(cur_lat, cur), "path image fails the axioms");
		internal_check(toric_equal(tv_of(cur_lat, cur), tv0), "tv drifted along the path");
		out.push_back(cur);
	}
	if (!(cur_model == path.end)) {
		PicLattice end_lat = picard_lattice(path.end);
		Mat cross = entry_iso_matrix(cur_model, cur_lat, path.end, end_lat);
		for (auto& e : out.back().entries) e = cross * e;
		internal_check(is_toric_system(end_lat, out.back()), "end-fiber image fails the axioms");
	}
	return out;
}

} // namespace cstar
