#include "cstar/toric.hpp"

#include "cstar/error.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace cstar {

std::optional<Rat> cf_eval(const std::vector<Int>& c) {
	require(!c.empty(), Errc::PreconditionViolated, "cf_eval: empty sequence");
	Rat acc(c.back());
	for (auto it = c.rbegin() + 1; it != c.rend(); ++it) {
		if (acc.num == 0) return std::nullopt;
		acc = Rat(*it) - Rat(1) / acc;
	}
	return acc;
}

namespace {

std::string seq_str(const std::vector<Int>& b) {
	std::ostringstream os;
	os << "(";
	for (size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
	os << ")";
	return os.str();
}

bool primitive(const Vec2& v) {
	if (v.x == 0 && v.y == 0) return false;
	Int g = gcd(v.x < 0 ? Int(-v.x) : v.x, v.y < 0 ? Int(-v.y) : v.y);
	return g == 1;
}

} // namespace

bool ccw_angle_less(const Vec2& u, const Vec2& v) {
	auto half = [](const Vec2& w) { return (w.y > 0 || (w.y == 0 && w.x > 0)) ? 0 : 1; };
	int hu = half(u), hv = half(v);
	if (hu != hv) return hu < hv;
	return det2(u, v) > 0;
}

std::vector<Int> b_from_rays(const std::vector<Vec2>& rays) {
	int n = static_cast<int>(rays.size());
	std::vector<Int> b(n);
	for (int i = 0; i < n; ++i) {
		Vec2 s = rays[(i + n - 1) % n] + rays[(i + 1) % n];
		const Vec2& r = rays[i];
		Int bi;
		if (r.x != 0) {
			require(s.x % r.x == 0, Errc::NotASurface, "ray recursion fails at index " + std::to_string(i));
			bi = s.x / r.x;
		} else {
			require(s.y % r.y == 0, Errc::NotASurface, "ray recursion fails at index " + std::to_string(i));
			bi = s.y / r.y;
		}
		require(bi * r.x == s.x && bi * r.y == s.y, Errc::NotASurface,
		        "ray recursion fails at index " + std::to_string(i));
		b[i] = bi;
	}
	return b;
}

ToricSurface rays_from_b(const std::vector<Int>& b) {
	int n = static_cast<int>(b.size());
	require(n >= 3, Errc::NotASurface, "need at least 3 rays");
	std::vector<Vec2> rays(n);
	rays[0] = {1, 0};
	rays[1] = {0, 1};
	for (int i = 1; i + 1 < n; ++i)
		rays[i + 1] = Vec2{b[i] * rays[i].x - rays[i - 1].x, b[i] * rays[i].y - rays[i - 1].y};
	// cyclic closure
	Vec2 wrap{b[n - 1] * rays[n - 1].x - rays[n - 2].x, b[n - 1] * rays[n - 1].y - rays[n - 2].y};
	require(wrap == rays[0], Errc::NotASurface, "fan does not close up: " + seq_str(b));
	require(b[0] * rays[0].x == rays[n - 1].x + rays[1].x && b[0] * rays[0].y == rays[n - 1].y + rays[1].y,
	        Errc::NotASurface, "recursion fails at index 0: " + seq_str(b));
	ToricSurface x{b, rays};
	ToricReport rep = validate_toric(x);
	require(rep.valid, Errc::NotASurface, "not a smooth complete fan: " + seq_str(b));
	return x;
}

ToricSurface realized(const ToricSurface& x) {
	if (x.rays) return x;
	return rays_from_b(x.b);
}

ToricReport validate_toric(const ToricSurface& x) {
	ToricReport rep;
	int n = x.nrays();
	if (n < 3) {
		rep.issues.push_back("fewer than 3 rays");
		return rep;
	}
	Int sum = 0;
	for (const auto& v : x.b) sum += v;
	rep.sum_rule = (sum == Int(3 * (n - 1) - 9));
	if (!rep.sum_rule) rep.issues.push_back("sum rule fails: sum=" + sum.str());

	std::vector<Vec2> rays;
	if (x.rays) {
		rays = *x.rays;
		if (static_cast<int>(rays.size()) != n) {
			rep.issues.push_back("ray count does not match b length");
			return rep;
		}
		try {
			auto b2 = b_from_rays(rays);
			if (b2 != x.b) {
				rep.issues.push_back("stored rays disagree with b");
				return rep;
			}
		} catch (const Error& e) {
			rep.issues.push_back(e.what());
			return rep;
		}
	} else {
		// realize without re-validating (avoid recursion)
		rays.resize(n);
		rays[0] = {1, 0};
		rays[1] = {0, 1};
		for (int i = 1; i + 1 < n; ++i)
			rays[i + 1] = Vec2{x.b[i] * rays[i].x - rays[i - 1].x, x.b[i] * rays[i].y - rays[i - 1].y};
		Vec2 wrap{x.b[n - 1] * rays[n - 1].x - rays[n - 2].x, x.b[n - 1] * rays[n - 1].y - rays[n - 2].y};
		if (!(wrap == rays[0])) {
			rep.issues.push_back("fan does not close up");
			return rep;
		}
		if (!(x.b[0] * rays[0].x == rays[n - 1].x + rays[1].x && x.b[0] * rays[0].y == rays[n - 1].y + rays[1].y)) {
			rep.issues.push_back("recursion fails at index 0");
			return rep;
		}
	}

	rep.smooth = true;
	for (int i = 0; i < n; ++i) {
		if (!primitive(rays[i])) {
			rep.smooth = false;
			rep.issues.push_back("ray " + std::to_string(i) + " not primitive");
		}
		if (det2(rays[i], rays[(i + 1) % n]) != 1) {
			rep.smooth = false;
			rep.issues.push_back("consecutive rays " + std::to_string(i) + "," + std::to_string((i + 1) % n) +
			                     " not unimodular ccw");
		}
	}
	if (rep.smooth) {
		// completeness: radially sorted rays wrap around exactly once
		int descents = 0;
		std::set<std::pair<std::string, std::string>> seen;
		for (int i = 0; i < n; ++i) {
			if (!ccw_angle_less(rays[i], rays[(i + 1) % n])) ++descents;
			seen.insert({rays[i].x.str(), rays[i].y.str()});
		}
		rep.complete = (descents == 1 && static_cast<int>(seen.size()) == n);
		if (!rep.complete) rep.issues.push_back("fan is not a complete subdivision of the plane");
	}
	rep.picard_rank = n - 2;
	rep.valid = rep.sum_rule && rep.smooth && rep.complete;
	return rep;
}

AlphaGamma alpha_gamma(const ToricSurface& x) {
	int n = x.nrays();
	require(n > 3, Errc::PreconditionViolated, "alpha_gamma: need l > 2");
	require(x.b[0] < 0, Errc::PreconditionViolated, "alpha_gamma: need b_0 < 0");
	int alpha = -1;
	for (int a = 2; a < n - 1; ++a) {
		std::vector<Int> prefix(x.b.begin() + 1, x.b.begin() + a);
		auto v = cf_eval(prefix);
		if (v && v->num == 0) {
			alpha = a;
			break;
		}
	}
	internal_check(alpha > 0, "alpha_gamma: no index with vanishing continued fraction");
	Int gamma = -3;
	for (int i = 1; i < alpha; ++i) gamma += 3 - x.b[i];
	internal_check(gamma >= 0, "alpha_gamma: gamma negative");
	internal_check(x.b[0] + x.b[alpha] - gamma >= 0, "alpha_gamma: b_0 + b_alpha - gamma negative");
	ToricSurface xr = realized(x);
	internal_check((*xr.rays)[alpha] == -(*xr.rays)[0], "alpha_gamma: rho_alpha != -rho_0");
	return {alpha, gamma};
}

ToricSurface toric_blowup(const ToricSurface& x, int i) {
	int n = x.nrays();
	require(0 <= i && i < n, Errc::PreconditionViolated, "blowup index out of range");
	std::vector<Int> b = x.b;
	b[i] += 1;
	b[(i + 1) % n] += 1;
	b.insert(b.begin() + i + 1, Int(1));
	return rays_from_b(b);
}

ToricSurface toric_blowdown(const ToricSurface& x, int i) {
	int n = x.nrays();
	require(0 <= i && i < n, Errc::PreconditionViolated, "blowdown index out of range");
	require(x.b[i] == 1, Errc::NotContractible, "divisor has self-intersection != -1");
	require(n >= 4, Errc::NotContractible, "cannot blow down a minimal surface");
	std::vector<Int> b = x.b;
	b[(i + n - 1) % n] -= 1;
	b[(i + 1) % n] -= 1;
	b.erase(b.begin() + i);
	return rays_from_b(b);
}

ToricSurface deformation_general_fiber(const ToricSurface& x, const Int& r) {
	int n = x.nrays();
	require(x.b[0] < 0 && n > 3, Errc::PreconditionViolated, "need b_0 < 0 and l > 2");
	require(r >= 0 && r <= -x.b[0], Errc::PreconditionViolated, "r out of range [0, -b_0]");
	auto [alpha, gamma] = alpha_gamma(x);
	std::vector<Int> b;
	b.push_back(x.b[0] + gamma + 2 * r);
	for (int i = alpha - 1; i >= 1; --i) b.push_back(x.b[i]);
	b.push_back(x.b[alpha] - gamma - 2 * r);
	for (int i = alpha + 1; i < n; ++i) b.push_back(x.b[i]);
	ToricSurface out = rays_from_b(b);
	Int s0 = 0, s1 = 0;
	for (const auto& v : x.b) s0 += v;
	for (const auto& v : out.b) s1 += v;
	internal_check(s0 == s1, "deformation changed the intersection-number sum");
	return out;
}

Int intersection(const ToricSurface& x, const ToricDivisor& d1, const ToricDivisor& d2) {
	int n = x.nrays();
	require(static_cast<int>(d1.size()) == n && static_cast<int>(d2.size()) == n, Errc::PreconditionViolated,
	        "divisor length mismatch");
	Int out = 0;
	for (int i = 0; i < n; ++i) {
		if (d1[i] == 0) continue;
		out += d1[i] * (d2[i] * -x.b[i] + d2[(i + 1) % n] + d2[(i + n - 1) % n]);
	}
	return out;
}

ToricDivisor canonical(const ToricSurface& x) { return ToricDivisor(x.nrays(), Int(-1)); }

Int euler_char(const ToricSurface& x, const ToricDivisor& d) {
	Int dd = intersection(x, d, d);
	Int kd = intersection(x, canonical(x), d);
	internal_check((dd - kd) % 2 == 0, "Riemann-Roch parity violated");
	return 1 + (dd - kd) / 2;
}

Int lattice_points(const ToricSurface& x0, const ToricDivisor& d) {
	ToricSurface x = realized(x0);
	const auto& rays = *x.rays;
	int n = x.nrays();
	// vertex candidates from pairs of supporting lines <u, rho_i> = -d_i
	std::vector<std::pair<Rat, Rat>> verts;
	for (int i = 0; i < n; ++i)
		for (int j = i + 1; j < n; ++j) {
			Int dt = det2(rays[i], rays[j]);
			if (dt == 0) continue;
			Rat ux = Rat(-d[i] * rays[j].y + d[j] * rays[i].y, dt);
			Rat uy = Rat(-d[j] * rays[i].x + d[i] * rays[j].x, dt);
			bool ok = true;
			for (int k = 0; k < n && ok; ++k)
				if (ux * Rat(rays[k].x) + uy * Rat(rays[k].y) < Rat(-d[k])) ok = false;
			if (ok) verts.emplace_back(ux, uy);
		}
	if (verts.empty()) return 0;
	Int xmin = verts[0].first.ceil(), xmax = verts[0].first.floor();
	for (const auto& [vx, vy] : verts) {
		xmin = std::min(xmin, vx.ceil());
		xmax = std::max(xmax, vx.floor());
	}
	Int count = 0;
	for (Int ux = xmin; ux <= xmax; ++ux) {
		bool empty = false;
		std::optional<Int> lo, hi;
		for (int k = 0; k < n && !empty; ++k) {
			Int c = d[k] + ux * rays[k].x; // need c + uy*rho_y >= 0
			if (rays[k].y == 0) {
				if (c < 0) empty = true;
			} else if (rays[k].y > 0) {
				Int bound = Rat(-c, rays[k].y).ceil();
				if (!lo || bound > *lo) lo = bound;
			} else {
				Int bound = Rat(-c, rays[k].y).floor();
				if (!hi || bound < *hi) hi = bound;
			}
		}
		if (!empty && lo && hi && *lo <= *hi) count += *hi - *lo + 1;
	}
	return count;
}

Cohomology cohomology(const ToricSurface& x0, const ToricDivisor& d) {
	ToricSurface x = realized(x0);
	Int h0 = lattice_points(x, d);
	ToricDivisor kd = canonical(x);
	for (int i = 0; i < x.nrays(); ++i) kd[i] -= d[i];
	Int h2 = lattice_points(x, kd);
	Int h1 = h0 + h2 - euler_char(x, d);
	internal_check(h1 >= 0, "negative h1 for divisor");
	return {h0, h1, h2};
}

std::vector<Int> canonical_cycle(const std::vector<Int>& b) {
	int n = static_cast<int>(b.size());
	std::vector<Int> best;
	auto consider = [&](const std::vector<Int>& c) {
		for (int s = 0; s < n; ++s) {
			std::vector<Int> rot(n);
			for (int i = 0; i < n; ++i) rot[i] = c[(s + i) % n];
			if (best.empty() || rot < best) best = rot;
		}
	};
	consider(b);
	std::vector<Int> rev(b.rbegin(), b.rend());
	consider(rev);
	return best;
}

bool cyclic_equal(const std::vector<Int>& a, const std::vector<Int>& b) {
	if (a.size() != b.size()) return false;
	return canonical_cycle(a) == canonical_cycle(b);
}

bool toric_equal(const ToricSurface& a, const ToricSurface& b) { return cyclic_equal(a.b, b.b); }

std::vector<CyclicIso> cyclic_isos(const std::vector<Int>& a, const std::vector<Int>& b) {
	std::vector<CyclicIso> out;
	int n = static_cast<int>(a.size());
	if (a.size() != b.size()) return out;
	for (int s = 0; s < n; ++s) {
		bool fwd = true, bwd = true;
		for (int i = 0; i < n && (fwd || bwd); ++i) {
			if (b[((s + i) % n + n) % n] != a[i]) fwd = false;
			if (b[((s - i) % n + n) % n] != a[i]) bwd = false;
		}
		if (fwd) out.push_back({s, false});
		if (bwd) out.push_back({s, true});
	}
	return out;
}

} // namespace cstar
