#include "cstar/toric.hpp"

#include "cstar/error.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cstar;
using cstar::testing::Rng;

namespace {

std::vector<Int> seq(std::initializer_list<int> v) { return std::vector<Int>(v.begin(), v.end()); }

} // namespace

TEST_CASE("continued fractions") {
	CHECK(*cf_eval({Int(3)}) == Rat(3));
	CHECK(*cf_eval(seq({1, 1})) == Rat(0));
	CHECK(*cf_eval(seq({2, 2})) == Rat(3, 2));
	CHECK(!cf_eval(seq({1, 1, 1})).has_value()); // 1 - 1/0
	CHECK(*cf_eval(seq({2, 2, 2})) == Rat(4, 3));
	CHECK_THROWS_AS((void)cf_eval({}), Error);
}

TEST_CASE("rays from b: Hirzebruch F1 and P2") {
	ToricSurface f1 = rays_from_b(seq({0, 1, 0, -1}));
	REQUIRE(f1.rays.has_value());
	CHECK((*f1.rays)[0] == Vec2{1, 0});
	CHECK((*f1.rays)[1] == Vec2{0, 1});
	CHECK((*f1.rays)[2] == Vec2{-1, 1});
	CHECK((*f1.rays)[3] == Vec2{0, -1});

	ToricSurface p2 = rays_from_b(seq({-1, -1, -1}));
	CHECK((*p2.rays)[2] == Vec2{-1, -1});
	CHECK_THROWS_AS(rays_from_b(seq({1, 1, 1})), Error); // the sign-flipped sequence is no fan

	CHECK_THROWS_AS(rays_from_b(seq({0, 0, 0})), Error);
}

TEST_CASE("validate_toric") {
	ToricReport r1 = validate_toric({seq({0, 1, 0, -1}), std::nullopt});
	CHECK(r1.valid);
	CHECK(r1.picard_rank == 2);

	ToricReport r2 = validate_toric({seq({1, 1, 1, 0, 0}), std::nullopt});
	CHECK(r2.valid);
	CHECK(r2.picard_rank == 3);

	ToricReport r3 = validate_toric({seq({2, 1, 0, -1}), std::nullopt});
	CHECK(!r3.valid);
	CHECK(!r3.sum_rule);
}

TEST_CASE("b_from_rays inverts rays_from_b") {
	Rng rng(3);
	for (int t = 0; t < 40; ++t) {
		ToricSurface x = cstar::testing::random_toric(rng, rng.below(5));
		CHECK(b_from_rays(*x.rays) == x.b);
	}
}

TEST_CASE("alpha and gamma") {
	auto ag1 = alpha_gamma(rays_from_b(seq({-3, 0, 3, 0})));
	CHECK(ag1.alpha == 2);
	CHECK(ag1.gamma == 0);

	auto ag2 = alpha_gamma(rays_from_b(seq({-2, 1, 1, 3, 0})));
	CHECK(ag2.alpha == 3);
	CHECK(ag2.gamma == 1);

	CHECK_THROWS_AS(alpha_gamma(rays_from_b(seq({0, 1, 0, -1}))), Error);
}

TEST_CASE("alpha is the first vanishing continued fraction") {
	Rng rng(17);
	int checked = 0;
	for (int t = 0; t < 200 && checked < 60; ++t) {
		ToricSurface x = cstar::testing::random_toric(rng, 1 + rng.below(5));
		// rotate a negative entry to the front if there is one
		int n = x.nrays();
		int neg = -1;
		for (int i = 0; i < n; ++i)
			if (x.b[i] < 0) { neg = i; break; }
		if (neg < 0) continue;
		std::vector<Int> b(n);
		for (int i = 0; i < n; ++i) b[i] = x.b[(neg + i) % n];
		ToricSurface y = rays_from_b(b);
		auto ag = alpha_gamma(y);
		for (int a = 2; a < ag.alpha; ++a) {
			std::vector<Int> prefix(b.begin() + 1, b.begin() + a);
			auto v = cf_eval(prefix);
			CHECK((!v || v->num != 0));
		}
		std::vector<Int> prefix(b.begin() + 1, b.begin() + ag.alpha);
		CHECK(cf_eval(prefix)->num == 0);
		++checked;
	}
	CHECK(checked >= 40);
}

TEST_CASE("blowup and blowdown") {
	ToricSurface f0 = rays_from_b(seq({0, 0, 0, 0}));
	ToricSurface up = toric_blowup(f0, 0);
	CHECK(up.b == seq({1, 1, 1, 0, 0}));

	// oracle: mediant ray insertion, then read b back off the fan
	std::vector<Vec2> rays = *f0.rays;
	rays.insert(rays.begin() + 1, Vec2{rays[0].x + rays[1].x, rays[0].y + rays[1].y});
	CHECK(b_from_rays(rays) == up.b);

	CHECK(toric_blowdown(up, 1).b == seq({0, 0, 0, 0}));
	CHECK_THROWS_AS(toric_blowdown(f0, 0), Error);
	CHECK_THROWS_AS(toric_blowdown(rays_from_b(seq({-1, -1, -1})), 0), Error);
}

TEST_CASE("blowdown undoes blowup everywhere") {
	Rng rng(23);
	for (int t = 0; t < 50; ++t) {
		ToricSurface x = cstar::testing::random_toric(rng, rng.below(4));
		int i = rng.below(x.nrays());
		ToricSurface y = toric_blowup(x, i);
		CHECK(toric_blowdown(y, i + 1).b == x.b);
	}
}

TEST_CASE("toric deformation formula") {
	ToricSurface f3 = rays_from_b(seq({-3, 0, 3, 0}));
	CHECK(deformation_general_fiber(f3, 1).b == seq({-1, 0, 1, 0}));
	CHECK(deformation_general_fiber(f3, 0).b == seq({-3, 0, 3, 0}));
	CHECK(deformation_general_fiber(rays_from_b(seq({-2, 1, 1, 3, 0})), 1).b == seq({1, 1, 1, 0, 0}));
	CHECK_THROWS_AS(deformation_general_fiber(f3, 4), Error);
	CHECK_THROWS_AS(deformation_general_fiber(f3, -1), Error);
}

TEST_CASE("deformation preserves the b-sum") {
	Rng rng(29);
	for (int t = 0; t < 60; ++t) {
		ToricSurface x = cstar::testing::random_toric(rng, 1 + rng.below(4));
		int n = x.nrays();
		for (int i = 0; i < n; ++i) {
			if (x.b[i] >= 0) continue;
			std::vector<Int> b(n);
			for (int k = 0; k < n; ++k) b[k] = x.b[(i + k) % n];
			ToricSurface y = rays_from_b(b);
			for (Int r = 0; r <= -b[0]; ++r) {
				ToricSurface g = deformation_general_fiber(y, r);
				CHECK(validate_toric(g).valid);
			}
		}
	}
}

TEST_CASE("intersection numbers on F1") {
	ToricSurface f1 = rays_from_b(seq({0, 1, 0, -1}));
	ToricDivisor d1(4, Int(0));
	d1[1] = 1;
	CHECK(intersection(f1, d1, d1) == -1);
	ToricDivisor k = canonical(f1);
	CHECK(intersection(f1, k, k) == 8);
	ToricDivisor d0(4, Int(0)), d2(4, Int(0));
	d0[0] = 1;
	d2[2] = 1;
	CHECK(intersection(f1, d0, d2) == 0);
}

TEST_CASE("euler characteristic") {
	ToricSurface f1 = rays_from_b(seq({0, 1, 0, -1}));
	CHECK(euler_char(f1, ToricDivisor(4, Int(0))) == 1);
	ToricDivisor mk = canonical(f1);
	for (auto& v : mk) v = -v;
	CHECK(euler_char(f1, mk) == 9);
	// fiber class P on F_r: rays (1,0),(0,1),(-1,r),(0,-1); P is the divisor of (0,1)
	for (int r = 0; r <= 4; ++r) {
		ToricSurface fr = rays_from_b({Int(0), Int(r), Int(0), Int(-r)});
		ToricDivisor p(4, Int(0));
		p[0] = 1; // self-intersection 0
		CHECK(intersection(fr, p, p) == 0);
		CHECK(euler_char(fr, p) == 2);
	}
}

TEST_CASE("cohomology on F1") {
	ToricSurface f1 = rays_from_b(seq({0, 1, 0, -1}));
	ToricDivisor q(4, Int(0));
	q[3] = 1; // the section with Q^2 = 1
	CHECK(intersection(f1, q, q) == 1);
	auto c = cohomology(f1, q);
	CHECK(c.h0 == 3);
	CHECK(c.h1 == 0);
	CHECK(c.h2 == 0);

	auto triv = cohomology(f1, ToricDivisor(4, Int(0)));
	CHECK(triv.h0 == 1);
	CHECK(triv.h1 == 0);
	CHECK(triv.h2 == 0);

	auto k = cohomology(f1, canonical(f1));
	CHECK(k.h0 == 0);
	CHECK(k.h1 == 0);
	CHECK(k.h2 == 1);
}

TEST_CASE("surface invariants on random surfaces") {
	Rng rng(31);
	for (int t = 0; t < 40; ++t) {
		ToricSurface x = cstar::testing::random_toric(rng, rng.below(5));
		int n = x.nrays();
		Int sum = 0;
		for (const auto& v : x.b) sum += v;
		CHECK(sum == Int(3 * (n - 1) - 9));
		ToricDivisor k = canonical(x);
		CHECK(intersection(x, k, k) == Int(10 - (n - 2)));
		for (int i = 0; i < n; ++i) {
			ToricDivisor di(n, Int(0));
			di[i] = 1;
			ToricDivisor dk = di;
			for (int j = 0; j < n; ++j) dk[j] += k[j];
			CHECK(intersection(x, di, dk) == -2); // adjunction
		}
	}
}

TEST_CASE("euler characteristic matches cohomology") {
	Rng rng(37);
	for (int t = 0; t < 25; ++t) {
		ToricSurface x = cstar::testing::random_toric(rng, rng.below(3));
		int n = x.nrays();
		ToricDivisor d(n);
		for (int j = 0; j < n; ++j) d[j] = rng.below(11) - 5;
		auto c = cohomology(x, d);
		CHECK(c.h0 - c.h1 + c.h2 == euler_char(x, d));
	}
}

TEST_CASE("cyclic equality") {
	CHECK(cyclic_equal(seq({-3, 0, 3, 0}), seq({0, 3, 0, -3})));
	CHECK(cyclic_equal(seq({-1, 0, 2, 1, 1}), seq({1, 1, 2, 0, -1})));
	CHECK(!cyclic_equal(seq({0, 1, 0, -1}), seq({0, 0, 0, 0})));
	auto isos = cyclic_isos(seq({0, 1, 0, -1}), seq({0, -1, 0, 1}));
	CHECK(!isos.empty());
	for (const auto& iso : isos) {
		std::vector<Int> a = seq({0, 1, 0, -1}), b = seq({0, -1, 0, 1});
		for (int i = 0; i < 4; ++i) CHECK(b[iso.apply(i, 4)] == a[i]);
	}
}

TEST_CASE("enumeration finds the classics") {
	auto all = cstar::testing::enumerate_smooth_toric(5, 3);
	auto has = [&](std::initializer_list<int> v) {
		return std::find(all.begin(), all.end(), canonical_cycle(seq(v))) != all.end();
	};
	CHECK(has({-1, -1, -1}));
	CHECK(has({0, 0, 0, 0}));
	CHECK(has({0, 1, 0, -1}));
	CHECK(has({1, 1, 1, 0, 0}));
	CHECK(has({-1, 0, 2, 1, 1}));
	for (const auto& b : all) CHECK(validate_toric({b, std::nullopt}).valid);
}
