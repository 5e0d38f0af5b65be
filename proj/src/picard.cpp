#include "cstar/picard.hpp"

#include "cstar/error.hpp"

#include <algorithm>

namespace cstar {

int PicLattice::gen_index(const PrimeDiv& d) const {
	for (size_t i = 0; i < gens.size(); ++i)
		if (gens[i] == d) return static_cast<int>(i);
	return -1;
}

Vec PicLattice::class_of(const WeilDiv& d) const {
	Vec x(ngens, Int(0));
	for (const auto& [g, c] : d) {
		int i = gen_index(g);
		if (i < 0 && g.kind == PrimeDiv::Vertex && g.v == Rat(0))
			i = gen_index(PrimeDiv::fiber()); // a plain fiber over a trivially-sliced point
		require(i >= 0, Errc::UnknownDivisor, "unknown prime divisor " + g.str());
		x[i] += c;
	}
	return proj * x;
}

WeilDiv PicLattice::divisor_of(const Vec& cls) const {
	internal_check(static_cast<int>(cls.size()) == rank, "class vector has wrong length");
	Vec x = lift * cls;
	WeilDiv out;
	for (int i = 0; i < ngens; ++i)
		if (x[i] != 0) out[gens[i]] = x[i];
	return out;
}

Int PicLattice::pair(const Vec& a, const Vec& b) const {
	Int out = 0;
	for (int i = 0; i < rank; ++i) {
		if (a[i] == 0) continue;
		for (int j = 0; j < rank; ++j) out += a[i] * pairing(i, j) * b[j];
	}
	return out;
}

Int PicLattice::euler(const Vec& c) const {
	Int dd = pair(c, c), kd = pair(kclass, c);
	internal_check((dd - kd) % 2 == 0, "Riemann-Roch parity violated");
	return 1 + (dd - kd) / 2;
}

namespace {

// quotient of Z^ngens by the span of the relation rows
void build_quotient(PicLattice& lat, const Mat& relations) {
	int n = lat.ngens, m = relations.rows;
	Mat a(n, m);
	for (int i = 0; i < m; ++i)
		for (int j = 0; j < n; ++j) a(j, i) = relations(i, j);
	Snf s = smith_normal_form(a);
	auto dg = s.diag();
	internal_check(static_cast<int>(dg.size()) == m, "principal relations are dependent");
	for (const auto& d : dg) internal_check(d == 1, "Picard group has torsion");
	lat.rank = n - m;
	lat.proj = Mat(lat.rank, n);
	for (int i = 0; i < lat.rank; ++i)
		for (int j = 0; j < n; ++j) lat.proj(i, j) = s.u(m + i, j);
	lat.lift = Mat(n, lat.rank);
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < lat.rank; ++j) lat.lift(i, j) = s.uinv(i, m + j);
}

Mat rays_pairing(const ToricSurface& x) {
	int n = x.nrays();
	Mat b(n, n);
	for (int i = 0; i < n; ++i) {
		b(i, i) = -x.b[i];
		b(i, (i + 1) % n) += 1;
		b(i, (i + n - 1) % n) += 1;
	}
	return b;
}

// expansion of the multidivisor generators into ray divisors of a toric model
Mat gens_to_rays(const std::vector<PrimeDiv>& gens, const Multidivisor& m, const LabeledFan& fan) {
	int nr = fan.x.nrays();
	Mat c(nr, static_cast<int>(gens.size()));
	for (size_t g = 0; g < gens.size(); ++g) {
		const PrimeDiv& d = gens[g];
		if (d.kind == PrimeDiv::Fiber) {
			int ray = fan.ray_of(d);
			if (ray >= 0) {
				c(ray, static_cast<int>(g)) = 1;
				continue;
			}
			// expand over a nontrivial designated slice
			internal_check(!m.slices.empty(), "fiber expansion on an empty multidivisor");
			const auto& [p, s] = *m.slices.begin();
			for (const auto& v : s.verts) {
				int r = fan.ray_of(PrimeDiv::vertex(p, v));
				internal_check(r >= 0, "slice vertex missing from the fan");
				c(r, static_cast<int>(g)) += v.den;
			}
			continue;
		}
		int ray = fan.ray_of(d);
		internal_check(ray >= 0, "generator missing from the fan: " + d.str());
		c(ray, static_cast<int>(g)) = 1;
	}
	return c;
}

Mat transport_gen_matrix(const DegenerationDiagram& d, const std::vector<PrimeDiv>& src_gens,
                         const std::vector<PrimeDiv>& dst_gens) {
	Slice s0 = d.slice0(), ss = d.slice_s();
	auto dst_index = [&](const PrimeDiv& g) {
		for (size_t i = 0; i < dst_gens.size(); ++i)
			if (dst_gens[i] == g) return static_cast<int>(i);
		if (g.kind == PrimeDiv::Vertex && g.v == Rat(0)) {
			for (size_t i = 0; i < dst_gens.size(); ++i)
				if (dst_gens[i].kind == PrimeDiv::Fiber) return static_cast<int>(i);
		}
		fail(Errc::InternalInconsistency, "transport target " + g.str() + " missing");
	};
	Mat t(static_cast<int>(dst_gens.size()), static_cast<int>(src_gens.size()));
	for (size_t g = 0; g < src_gens.size(); ++g) {
		const PrimeDiv& div = src_gens[g];
		int col = static_cast<int>(g);
		if (div.kind == PrimeDiv::Vertex && div.point == d.p0) {
			for (const auto& [i, j] : d.edges)
				if (s0.verts[i] == div.v)
					t(dst_index(PrimeDiv::vertex(d.p0, div.v + ss.verts[j])), col) += ss.verts[j].den;
		} else if (div.kind == PrimeDiv::Vertex && div.point == d.ps) {
			for (const auto& [i, j] : d.edges)
				if (ss.verts[j] == div.v)
					t(dst_index(PrimeDiv::vertex(d.p0, s0.verts[i] + div.v)), col) += s0.verts[i].den;
		} else {
			t(dst_index(div), col) = 1;
		}
	}
	return t;
}

WeilDiv canonical_formula(const Multidivisor& m) {
	WeilDiv k;
	for (const auto& [p, s] : m.slices)
		for (const auto& v : s.verts)
			if (v.den != 1) k[PrimeDiv::vertex(p, v)] = v.den - 1;
	k[PrimeDiv::fiber()] = -2;
	if (m.minus == Marker::Bullet) k[PrimeDiv::dminus()] = -1;
	if (m.plus == Marker::Bullet) k[PrimeDiv::dplus()] = -1;
	return k;
}

Mat pairing_on_gens(const Multidivisor& m, const std::vector<PrimeDiv>& gens);

} // namespace

DegenerationChain degenerate_to_toric(const Multidivisor& m) {
	require_valid(m);
	require(is_smooth(m), Errc::NotSmooth, "degenerate_to_toric needs a smooth surface");
	DegenerationChain out;
	Multidivisor cur = m;
	while (cur.nontrivial_count() > 2) {
		std::vector<ProjPoint> pts;
		for (const auto& [p, s] : cur.slices) pts.push_back(p);
		bool found = false;
		for (size_t a = 0; a < pts.size() && !found; ++a)
			for (size_t b = 0; b < pts.size() && !found; ++b) {
				if (a == b) continue;
				Slice sa = cur.slice_at(pts[a]), sb = cur.slice_at(pts[b]);
				if ((sb.size() == 1 || sa.min().is_integer()) &&
				    (sa.size() == 1 || sb.max().is_integer())) {
					DegenerationDiagram d = merge_slices_degeneration(cur, pts[a], pts[b]);
					cur = special_fiber(d);
					internal_check(is_smooth(cur), "merge degeneration left a singular special fiber");
					out.steps.push_back(std::move(d));
					found = true;
				}
			}
		internal_check(found, "no mergeable slice pair on a smooth multidivisor");
	}
	out.toric = cur;
	return out;
}

namespace {

Mat pairing_on_gens(const Multidivisor& m, const std::vector<PrimeDiv>& gens) {
	if (is_toric(m)) {
		LabeledFan fan = to_fan_labeled(m);
		Mat c = gens_to_rays(gens, m, fan);
		return c.transposed() * rays_pairing(fan.x) * c;
	}
	DegenerationChain chain = degenerate_to_toric(m);
	// pull the toric pairing back through the divisor-level transports
	std::vector<std::vector<PrimeDiv>> gen_chain;
	gen_chain.push_back(gens);
	Multidivisor cur = m;
	for (const auto& step : chain.steps) {
		cur = special_fiber(step);
		gen_chain.push_back(invariant_prime_divisors(cur));
	}
	Mat pairing = pairing_on_gens(chain.toric, gen_chain.back());
	for (int j = static_cast<int>(chain.steps.size()) - 1; j >= 0; --j) {
		Mat t = transport_gen_matrix(chain.steps[j], gen_chain[j], gen_chain[j + 1]);
		pairing = t.transposed() * pairing * t;
	}
	return pairing;
}

} // namespace

PicLattice picard_lattice(const Multidivisor& m) {
	require_valid(m);
	require(is_smooth(m), Errc::NotSmooth, "Picard lattice needs a smooth surface");
	PicLattice lat;
	lat.gens = invariant_prime_divisors(m);
	lat.ngens = static_cast<int>(lat.gens.size());
	for (const auto& g : lat.gens) lat.labels.push_back(g.str());

	int nrel = 1 + m.nontrivial_count();
	Mat rel(nrel, lat.ngens);
	for (int j = 0; j < lat.ngens; ++j) {
		const PrimeDiv& g = lat.gens[j];
		switch (g.kind) {
			case PrimeDiv::Vertex: rel(0, j) = g.v.num; break;
			case PrimeDiv::DMinus: rel(0, j) = -1; break;
			case PrimeDiv::DPlus: rel(0, j) = 1; break;
			case PrimeDiv::Fiber: break;
		}
	}
	{
		int row = 1;
		for (const auto& [p, s] : m.slices) {
			for (int j = 0; j < lat.ngens; ++j) {
				const PrimeDiv& g = lat.gens[j];
				if (g.kind == PrimeDiv::Vertex && g.point == p)
					rel(row, j) = g.v.den;
				else if (g.kind == PrimeDiv::Fiber)
					rel(row, j) = -1;
			}
			++row;
		}
	}
	build_quotient(lat, rel);
	internal_check(Int(lat.rank) == picard_rank(m), "quotient rank disagrees with the rank formula");
	Mat pg = pairing_on_gens(m, lat.gens);
	lat.pairing = lat.lift.transposed() * pg * lat.lift;
	// relations must be null directions of the generator pairing
	Mat rp = rel * pg;
	for (int i = 0; i < rp.rows; ++i)
		for (int j = 0; j < rp.cols; ++j)
			internal_check(rp(i, j) == 0, "principal relation has nonzero intersection");
	lat.kclass = lat.class_of(canonical_formula(m));
	internal_check(lat.pair(lat.kclass, lat.kclass) == Int(10 - lat.rank),
	               "canonical class fails K^2 = 10 - rank");
	for (int g = 0; g < lat.ngens; ++g) {
		Vec unit(lat.ngens, Int(0));
		unit[g] = 1;
		Vec c = lat.proj * unit;
		internal_check(lat.pair(c, c) + lat.pair(c, lat.kclass) == -2,
		               "adjunction fails for " + lat.gens[g].str());
	}
	return lat;
}

PicLattice picard_lattice(const ToricSurface& x0) {
	ToricSurface x = realized(x0);
	int n = x.nrays();
	PicLattice lat;
	lat.ngens = n;
	for (int i = 0; i < n; ++i) lat.labels.push_back("D" + std::to_string(i));
	Mat rel(2, n);
	for (int i = 0; i < n; ++i) {
		rel(0, i) = (*x.rays)[i].x;
		rel(1, i) = (*x.rays)[i].y;
	}
	build_quotient(lat, rel);
	internal_check(lat.rank == n - 2, "toric Picard rank should be l - 1");
	Mat b = rays_pairing(x);
	lat.pairing = lat.lift.transposed() * b * lat.lift;
	Vec kd(n, Int(-1));
	lat.kclass = lat.proj * kd;
	internal_check(lat.pair(lat.kclass, lat.kclass) == Int(10 - lat.rank),
	               "canonical class fails K^2 = 10 - rank");
	return lat;
}

WeilDiv canonical_divisor(const Multidivisor& m) {
	PicLattice lat = picard_lattice(m); // asserts adjunction and K^2
	return canonical_formula(m);
}

Int euler_char_class(const Multidivisor& m, const WeilDiv& d) {
	PicLattice lat = picard_lattice(m);
	return lat.euler(lat.class_of(d));
}

Int intersect(const Multidivisor& m, const WeilDiv& a, const WeilDiv& b) {
	PicLattice lat = picard_lattice(m);
	return lat.pair(lat.class_of(a), lat.class_of(b));
}

std::vector<PrimeDiv> minus_one_curves(const Multidivisor& m) {
	PicLattice lat = picard_lattice(m);
	std::vector<PrimeDiv> out;
	for (int g = 0; g < lat.ngens; ++g) {
		if (lat.gens[g].kind == PrimeDiv::Fiber) continue;
		Vec unit(lat.ngens, Int(0));
		unit[g] = 1;
		Vec c = lat.proj * unit;
		if (lat.pair(c, c) == -1) out.push_back(lat.gens[g]);
	}
	return out;
}

WeilDiv transport_weil(const DegenerationDiagram& d, const WeilDiv& div) {
	require_valid_diagram(d);
	Slice s0 = d.slice0(), ss = d.slice_s();
	WeilDiv out;
	auto add = [&](const PrimeDiv& g, const Int& c) {
		if (c == 0) return;
		out[g] += c;
		if (out[g] == 0) out.erase(g);
	};
	for (const auto& [g, c] : div) {
		if (g.kind == PrimeDiv::Vertex && g.point == d.p0) {
			bool hit = false;
			for (const auto& [i, j] : d.edges)
				if (s0.verts[i] == g.v) {
					add(PrimeDiv::vertex(d.p0, g.v + ss.verts[j]), c * ss.verts[j].den);
					hit = true;
				}
			require(hit, Errc::UnknownDivisor, "no vertex " + g.v.str() + " in the slice at p0");
		} else if (g.kind == PrimeDiv::Vertex && g.point == d.ps) {
			bool hit = false;
			for (const auto& [i, j] : d.edges)
				if (ss.verts[j] == g.v) {
					add(PrimeDiv::vertex(d.p0, s0.verts[i] + g.v), c * s0.verts[i].den);
					hit = true;
				}
			require(hit, Errc::UnknownDivisor, "no vertex " + g.v.str() + " in the slice at ps");
		} else {
			add(g, c);
		}
	}
	return out;
}

TransportMap transport_matrix(const DegenerationDiagram& d) {
	require_valid_diagram(d);
	TransportMap tm;
	tm.general = picard_lattice(general_fiber(d));
	Multidivisor sp = special_fiber(d);
	require(is_smooth(sp), Errc::NotSmooth, "special fiber is singular");
	tm.special = picard_lattice(sp);
	internal_check(tm.general.rank == tm.special.rank, "transport between unequal ranks");
	Mat t = transport_gen_matrix(d, tm.general.gens, tm.special.gens);
	tm.mat = tm.special.proj * (t * tm.general.lift);
	Int dd = det(tm.mat);
	internal_check(dd == 1 || dd == -1, "transport matrix is not unimodular");
	internal_check(tm.mat.transposed() * tm.special.pairing * tm.mat == tm.general.pairing,
	               "transport does not preserve intersection numbers");
	internal_check(tm.mat * tm.general.kclass == tm.special.kclass,
	               "transport does not preserve the canonical class");
	for (int i = 0; i < tm.general.rank; ++i) {
		Vec e(tm.general.rank, Int(0));
		e[i] = 1;
		internal_check(tm.general.euler(e) == tm.special.euler(tm.mat * e),
		               "transport does not preserve Euler characteristics");
	}
	return tm;
}

std::vector<ReduceStep> reduce_to_hirzebruch(const Multidivisor& m) {
	require(picard_rank(m) >= 2, Errc::PreconditionViolated, "rank below 2");
	std::vector<ReduceStep> out;
	Multidivisor cur = m;
	while (picard_rank(cur) > 2) {
		ReduceStep step;
		step.before = cur;
		step.chain = degenerate_to_toric(cur);
		auto ones = minus_one_curves(step.chain.toric);
		internal_check(!ones.empty(), "no (-1)-curve on a toric surface of rank > 2");
		PrimeDiv e = ones.front();
		// pull the contraction back through the chain
		for (int j = static_cast<int>(step.chain.steps.size()) - 1; j >= 0; --j) {
			DiagramBlowdown bd = diagram_blowdown(step.chain.steps[j], e);
			e = bd.exceptional_general;
		}
		step.contracted = e;
		step.after = contract(cur, e);
		cur = step.after;
		out.push_back(std::move(step));
	}
	return out;
}

std::vector<Int> Surface::b_sequence() const {
	if (toric_model()) return fan().b;
	return to_fan(mdiv()).b;
}

Surface make_surface(const ToricSurface& x) { return Surface{realized(x), picard_lattice(x)}; }

Surface make_surface(const Multidivisor& m) { return Surface{m, picard_lattice(m)}; }

BlowdownMaps blowdown_class_maps(const PicLattice& src, const PicLattice& dst, const Vec& e_class,
                                 const std::vector<Vec>& gen_images) {
	internal_check(static_cast<int>(gen_images.size()) == src.ngens, "one image per generator");
	Mat g(dst.ngens, src.ngens);
	for (int j = 0; j < src.ngens; ++j)
		for (int i = 0; i < dst.ngens; ++i) g(i, j) = gen_images[j][i];
	BlowdownMaps maps;
	maps.push = dst.proj * (g * src.lift);
	// pull back a class: lift on the target, reinterpret the generators on the
	// source, then correct to the E-orthogonal complement
	internal_check(src.pair(e_class, e_class) == -1, "pullback needs a (-1)-class");
	maps.pull = Mat(src.rank, dst.rank);
	for (int j = 0; j < dst.rank; ++j) {
		// a generator section: find for each dst generator a src generator mapping to it
		Vec xd(dst.ngens, Int(0));
		for (int i = 0; i < dst.ngens; ++i) xd[i] = dst.lift(i, j);
		Vec xs(src.ngens, Int(0));
		for (int i = 0; i < dst.ngens; ++i) {
			if (xd[i] == 0) continue;
			int pre = -1;
			for (int k = 0; k < src.ngens && pre < 0; ++k)
				if (gen_images[k][i] == 1) {
					bool unit = true;
					for (int l = 0; l < dst.ngens; ++l)
						if (l != i && gen_images[k][l] != 0) unit = false;
					if (unit) pre = k;
				}
			internal_check(pre >= 0, "no generator section for pullback");
			xs[pre] += xd[i];
		}
		Vec s0 = src.proj * xs;
		Vec col = s0 + src.pair(s0, e_class) * e_class;
		for (int i = 0; i < src.rank; ++i) maps.pull(i, j) = col[i];
	}
	internal_check(maps.push * maps.pull == Mat::identity(dst.rank), "push o pull != id");
	internal_check(maps.pull.transposed() * src.pairing * maps.pull == dst.pairing,
	               "pullback does not preserve the pairing");
	internal_check(src.kclass == maps.pull * dst.kclass + e_class,
	               "K(source) != pull(K(target)) + E");
	return maps;
}

std::vector<Blowdown> enumerate_blowdowns(const Surface& s) {
	std::vector<Blowdown> out;
	if (s.toric_model()) {
		const ToricSurface& x = s.fan();
		int n = x.nrays();
		if (n <= 3) return out;
		for (int i = 0; i < n; ++i) {
			if (x.b[i] != 1) continue;
			ToricSurface y = toric_blowdown(x, i);
			Surface target = make_surface(y);
			std::vector<Vec> images;
			for (int j = 0; j < n; ++j) {
				Vec img(n - 1, Int(0));
				if (j != i) img[j < i ? j : j - 1] = 1;
				images.push_back(img);
			}
			Vec unit(n, Int(0));
			unit[i] = 1;
			Vec e = s.lat.proj * unit;
			BlowdownMaps maps = blowdown_class_maps(s.lat, target.lat, e, images);
			out.push_back({std::move(target), e, maps.push, maps.pull, "ray " + std::to_string(i)});
		}
		return out;
	}
	const Multidivisor& m = s.mdiv();
	for (const PrimeDiv& e : minus_one_curves(m)) {
		Multidivisor y = contract(m, e);
		Surface target = make_surface(y);
		std::vector<Vec> images;
		for (const auto& g : s.lat.gens) {
			Vec img(target.lat.ngens, Int(0));
			if (!(g == e)) {
				int idx = target.lat.gen_index(g);
				if (idx < 0 && g.kind == PrimeDiv::Vertex && g.v == Rat(0))
					idx = target.lat.gen_index(PrimeDiv::fiber());
				internal_check(idx >= 0, "generator lost in contraction: " + g.str());
				img[idx] = 1;
			}
			images.push_back(img);
		}
		int ei = s.lat.gen_index(e);
		Vec unit(s.lat.ngens, Int(0));
		unit[ei] = 1;
		Vec ec = s.lat.proj * unit;
		BlowdownMaps maps = blowdown_class_maps(s.lat, target.lat, ec, images);
		out.push_back({std::move(target), ec, maps.push, maps.pull, e.str()});
	}
	return out;
}

ToricDivisor toric_divisor_of_class(const Surface& s, const LabeledFan& fan, const Vec& c) {
	Vec x = s.lat.lift * c;
	if (s.toric_model()) return x;
	Mat conv = gens_to_rays(s.lat.gens, s.mdiv(), fan);
	return conv * x;
}

Cohomology class_cohomology(const Surface& s, const Vec& c) {
	if (s.toric_model()) {
		ToricSurface x = realized(s.fan());
		return cohomology(x, s.lat.lift * c);
	}
	LabeledFan fan = to_fan_labeled(s.mdiv());
	return cohomology(fan.x, toric_divisor_of_class(s, fan, c));
}

} // namespace cstar
