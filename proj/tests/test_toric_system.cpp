#include "cstar/toric_system.hpp"

#include "cstar/error.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cstar;
using cstar::testing::Rng;

namespace {

ToricSystem canonical_system(const Surface& s) {
	REQUIRE(s.toric_model());
	ToricSystem a;
	for (int i = 0; i < s.lat.ngens; ++i) {
		Vec unit(s.lat.ngens, Int(0));
		unit[i] = 1;
		a.entries.push_back(s.lat.proj * unit);
	}
	return a;
}

const Blowdown* find_blowdown(const std::vector<Blowdown>& downs, const Vec& e) {
	for (const auto& b : downs)
		if (b.e_class == e) return &b;
	return nullptr;
}

} // namespace

TEST_CASE("toric system axioms") {
	Surface f1 = make_surface(rays_from_b({Int(0), Int(1), Int(0), Int(-1)}));
	HirzebruchBasis h = hirzebruch_basis(f1);
	CHECK(h.r == 1);

	ToricSystem a10 = catalog_system(h, Int(0)); // (P, Q, P, -P+Q)
	CHECK(is_toric_system(f1, a10));

	ToricSystem bad{{h.p, h.p, h.q, h.q}};
	CHECK(!is_toric_system(f1, bad));

	ToricSystem canon = canonical_system(f1);
	CHECK(is_toric_system(f1, canon));
	CHECK(toric_equal(tv_of(f1, canon), f1.fan()));
}

TEST_CASE("tv of the catalog") {
	for (int r = 0; r <= 4; ++r) {
		Surface fr = make_surface(rays_from_b({Int(0), Int(r), Int(0), Int(-r)}));
		HirzebruchBasis h = hirzebruch_basis(fr);
		for (Int i = -5; i <= 5; ++i) {
			ToricSurface tv = tv_of(fr, catalog_system(h, i));
			Int m = r + 2 * i;
			if (m < 0) m = -m;
			CHECK(cyclic_equal(tv.b, {Int(0), m, Int(0), -m}));
		}
	}
	// the worked example: tv(A_{1,0}) = (0,-1,0,1)
	Surface f1 = make_surface(rays_from_b({Int(0), Int(1), Int(0), Int(-1)}));
	HirzebruchBasis h = hirzebruch_basis(f1);
	CHECK(tv_of(f1, catalog_system(h, Int(0))).b == std::vector<Int>{Int(0), Int(-1), Int(0), Int(1)});
}

TEST_CASE("sequences and systems convert both ways") {
	Surface f1 = make_surface(rays_from_b({Int(0), Int(1), Int(0), Int(-1)}));
	HirzebruchBasis h = hirzebruch_basis(f1);
	for (Int i = -2; i <= 2; ++i) {
		ToricSystem a = catalog_system(h, i);
		auto e = sequence_from_system(f1.lat, a);
		// (0, P, (i+1)P+Q, (i+2)P+Q)
		CHECK(e[1] == h.p);
		CHECK(e[2] == (i + 1) * h.p + h.q);
		CHECK(e[3] == (i + 2) * h.p + h.q);
		ToricSystem back = system_from_sequence(f1.lat, e);
		CHECK(system_equal(back, a));
	}
	std::vector<Vec> zero(4, Vec(2, Int(0)));
	CHECK(!is_toric_system(f1, system_from_sequence(f1.lat, zero)));
}

TEST_CASE("exceptionality of the catalog families") {
	for (int r = 0; r <= 4; ++r) {
		Surface fr = make_surface(rays_from_b({Int(0), Int(r), Int(0), Int(-r)}));
		HirzebruchBasis h = hirzebruch_basis(fr);
		for (Int i = -5; i <= 5; ++i) CHECK(is_exceptional(fr, catalog_system(h, i)));
	}
	// the tilde family: exceptional only for r = 0 or (r, i) = (2, 0)
	{
		Surface f0 = make_surface(rays_from_b({Int(0), Int(0), Int(0), Int(0)}));
		HirzebruchBasis h = hirzebruch_basis(f0);
		for (Int i = -3; i <= 3; ++i) CHECK(is_exceptional(f0, catalog_system_tilde(h, i)));
	}
	{
		Surface f2 = make_surface(rays_from_b({Int(0), Int(2), Int(0), Int(-2)}));
		HirzebruchBasis h = hirzebruch_basis(f2);
		CHECK(is_exceptional(f2, catalog_system_tilde(h, Int(0))));
		CHECK(!is_exceptional(f2, catalog_system_tilde(h, Int(1))));
		CHECK(!is_exceptional(f2, catalog_system_tilde(h, Int(-1))));
	}
	{
		Surface f4 = make_surface(rays_from_b({Int(0), Int(4), Int(0), Int(-4)}));
		HirzebruchBasis h = hirzebruch_basis(f4);
		CHECK(!is_exceptional(f4, catalog_system_tilde(h, Int(1))));
		CHECK(!is_exceptional(f4, catalog_system_tilde(h, Int(-1))));
		// the i = 0 member coincides with A_{4,-2} up to rotation and is exceptional
		CHECK(system_equal_up_to_symmetry(catalog_system_tilde(h, Int(0)), catalog_system(h, Int(-2))));
		CHECK(is_exceptional(f4, catalog_system_tilde(h, Int(0))));
	}
}

TEST_CASE("strong exceptionality threshold is computed honestly") {
	// the cohomology engine reports vanishing already from i = -1 on
	for (int r = 0; r <= 3; ++r) {
		Surface fr = make_surface(rays_from_b({Int(0), Int(r), Int(0), Int(-r)}));
		HirzebruchBasis h = hirzebruch_basis(fr);
		for (Int i = -4; i <= 4; ++i)
			CHECK(is_strongly_exceptional(fr, catalog_system(h, i)) == (i >= -1));
	}
}

TEST_CASE("augmentation") {
	Surface f0 = make_surface(rays_from_b({Int(0), Int(0), Int(0), Int(0)}));
	HirzebruchBasis h = hirzebruch_basis(f0);
	ToricSystem a00 = catalog_system(h, Int(0)); // (P, Q, P, Q)

	Surface up = make_surface(toric_blowup(f0.fan(), 0));
	auto downs = enumerate_blowdowns(up);
	REQUIRE(!downs.empty());
	const Blowdown* back = nullptr;
	for (const auto& b : downs)
		if (toric_equal(b.target.fan(), f0.fan())) back = &b;
	REQUIRE(back);

	ToricSystem aug = augment(*back, a00, 0);
	CHECK(is_toric_system(up, aug));
	CHECK(is_exceptional(up, aug));
	CHECK(cyclic_equal(tv_of(up, aug).b, {Int(1), Int(1), Int(1), Int(0), Int(0)}));
	// entries: (P-R, R, Q-R, P, Q)
	CHECK(aug.entries[0] == back->pull * h.p - back->e_class);
	CHECK(aug.entries[1] == back->e_class);
	CHECK(aug.entries[2] == back->pull * h.q - back->e_class);
}

TEST_CASE("tv commutes with augmentation") {
	Rng rng(61);
	for (int t = 0; t < 25; ++t) {
		ToricSurface base{{Int(0), Int(rng.below(3)), Int(0), Int(-rng.below(3))}, std::nullopt};
		base.b[3] = -base.b[1];
		Surface s = make_surface(rays_from_b(base.b));
		HirzebruchBasis h = hirzebruch_basis(s);
		ToricSystem a = catalog_system(h, Int(rng.below(5)) - 2);
		for (int step = 0; step < 2; ++step) {
			int pos = rng.below(a.size());
			Surface up = make_surface(toric_blowup(s.fan(), pos));
			auto downs = enumerate_blowdowns(up);
			const Blowdown* back = nullptr;
			for (const auto& b : downs)
				if (b.desc == "ray " + std::to_string(pos + 1)) back = &b;
			REQUIRE(back);
			ToricSystem aug = augment(*back, a, pos);
			CHECK(is_toric_system(up, aug));
			ToricSurface lhs = tv_of(up, aug);
			ToricSurface rhs = toric_blowup(tv_of(s, a), pos);
			CHECK(lhs.b == rhs.b); // index-exact, not only up to symmetry
			s = up;
			a = aug;
		}
	}
}

TEST_CASE("augmenting the canonical system gives the canonical system") {
	Surface s = make_surface(rays_from_b({Int(0), Int(1), Int(0), Int(-1)}));
	for (int pos = 0; pos < 4; ++pos) {
		Surface up = make_surface(toric_blowup(s.fan(), pos));
		auto downs = enumerate_blowdowns(up);
		const Blowdown* back = nullptr;
		for (const auto& b : downs)
			if (b.desc == "ray " + std::to_string(pos + 1)) back = &b;
		REQUIRE(back);
		ToricSystem aug = augment(*back, canonical_system(s), pos);
		CHECK(system_equal(aug, canonical_system(up)));
	}
}

TEST_CASE("catalog search finds exactly the two families") {
	for (int r = 0; r <= 2; ++r) {
		Surface fr = make_surface(rays_from_b({Int(0), Int(r), Int(0), Int(-r)}));
		HirzebruchBasis h = hirzebruch_basis(fr);
		auto found = enumerate_toric_systems(fr.lat, h, 4);
		CHECK(found.size() > 3);
		for (const auto& a : found) {
			auto form = recognize_catalog(fr.lat, h, a);
			bool ok = form.has_value();
			CHECK(ok);
		}
		// every in-bound catalog member is found
		for (Int i = -3; i <= 3; ++i) {
			bool present = false;
			for (const auto& a : found)
				if (system_equal_up_to_symmetry(a, catalog_system(h, i))) present = true;
			CHECK(present);
		}
	}
}

TEST_CASE("symmetries preserve the axioms and tv") {
	Surface f2 = make_surface(rays_from_b({Int(0), Int(2), Int(0), Int(-2)}));
	HirzebruchBasis h = hirzebruch_basis(f2);
	ToricSystem a = catalog_system(h, Int(1));
	ToricSurface tv0 = tv_of(f2, a);
	for (int shift = 0; shift < 4; ++shift)
		for (bool refl : {false, true}) {
			ToricSystem b;
			for (int i = 0; i < 4; ++i) {
				int j = refl ? ((shift - i) % 4 + 4) % 4 : (shift + i) % 4;
				b.entries.push_back(a.entries[static_cast<size_t>(j)]);
			}
			CHECK(is_toric_system(f2, b));
			CHECK(toric_equal(tv_of(f2, b), tv0));
		}
}

TEST_CASE("canonical systems are exceptional") {
	for (auto b : {std::vector<Int>{Int(0), Int(1), Int(0), Int(-1)},
	               std::vector<Int>{Int(1), Int(1), Int(1), Int(0), Int(0)},
	               std::vector<Int>{Int(-1), Int(0), Int(2), Int(1), Int(1)}}) {
		Surface s = make_surface(rays_from_b(b));
		CHECK(is_exceptional(s, canonical_system(s)));
		CHECK(tame_certificate(s, canonical_system(s)).has_value());
	}
}

TEST_CASE("inverse transport preserves exceptionality and tameness") {
	for (int r = 1; r <= 2; ++r) {
		DegenerationDiagram d = hirzebruch_diagram(r, 2);
		TransportMap tm = transport_matrix(d);
		Surface gen = make_surface(general_fiber(d));
		Surface sp = make_surface(special_fiber(d));
		HirzebruchBasis hs = hirzebruch_basis(sp);
		for (Int i = -1; i <= 2; ++i) {
			ToricSystem a0 = catalog_system(hs, i);
			REQUIRE(is_exceptional(sp, a0));
			ToricSystem lifted = transport_system_inverse(tm, a0);
			CHECK(is_exceptional(gen, lifted));
			CHECK(tame_certificate(gen, lifted).has_value());
			if (is_strongly_exceptional(sp, a0)) CHECK(is_strongly_exceptional(gen, lifted));
		}
	}
}

TEST_CASE("mutation walks the catalog") {
	Surface f1 = make_surface(rays_from_b({Int(0), Int(1), Int(0), Int(-1)}));
	HirzebruchBasis h = hirzebruch_basis(f1);
	ToricSystem a = catalog_system(h, Int(0));
	ToricSystem l = mutate_L1(f1, a);
	CHECK(system_equal(l, catalog_system(h, Int(1))));
	ToricSystem back = mutate_L1(f1, l, Int(-1));
	CHECK(system_equal(back, a));
	CHECK(system_equal(mutate_L1(f1, a, Int(5)), catalog_system(h, Int(5))));
	ToricSystem junk{{h.p, h.p, h.p, h.p}};
	CHECK_THROWS_AS(mutate_L1(f1, junk), Error);
}

TEST_CASE("transport of the catalog along Hirzebruch degenerations") {
	for (int r = 1; r <= 4; ++r)
		for (int a = 1; a <= 3; ++a) {
			DegenerationDiagram d = hirzebruch_diagram(r, a);
			TransportMap tm = transport_matrix(d);
			Surface gen = make_surface(general_fiber(d));
			Surface sp = make_surface(special_fiber(d));
			HirzebruchBasis hg = hirzebruch_basis(gen);
			HirzebruchBasis hs = hirzebruch_basis(sp);
			for (Int i = -2; i <= 2; ++i) {
				ToricSystem img = transport_system(tm, catalog_system(hg, i));
				CHECK(system_equal(img, catalog_system(hs, i - a)));
				ToricSystem round = transport_system_inverse(tm, img);
				CHECK(system_equal(round, catalog_system(hg, i)));
			}
			if (r % 2 == 0)
				for (Int i = -2; i <= 2; ++i) {
					ToricSystem img = transport_system(tm, catalog_system_tilde(hg, i));
					CHECK(system_equal(img, catalog_system_tilde(hs, i)));
				}
		}
}

TEST_CASE("strong exceptionality is lost under long degenerations") {
	// A_{r,i} with i >= 1 degenerates to A_{r+2a,i-a}, not strong once i < a+1
	DegenerationDiagram d = hirzebruch_diagram(1, 3);
	TransportMap tm = transport_matrix(d);
	Surface gen = make_surface(general_fiber(d));
	Surface sp = make_surface(special_fiber(d));
	HirzebruchBasis hg = hirzebruch_basis(gen);
	ToricSystem a = catalog_system(hg, Int(1));
	CHECK(is_strongly_exceptional(gen, a));
	ToricSystem img = transport_system(tm, a);
	CHECK(is_exceptional(sp, img));
	CHECK(!is_strongly_exceptional(sp, img));
}

TEST_CASE("tame certificates") {
	// base case: a catalog system on F_1
	Surface f1 = make_surface(rays_from_b({Int(0), Int(1), Int(0), Int(-1)}));
	HirzebruchBasis h = hirzebruch_basis(f1);
	auto cert = tame_certificate(f1, catalog_system(h, Int(2)));
	REQUIRE(cert.has_value());
	CHECK(cert->steps.empty());
	CHECK(cert->base_i == 2);

	// the non-exceptional tilde systems are not tame
	Surface f4 = make_surface(rays_from_b({Int(0), Int(4), Int(0), Int(-4)}));
	HirzebruchBasis h4 = hirzebruch_basis(f4);
	CHECK(!tame_certificate(f4, catalog_system_tilde(h4, Int(1))).has_value());

	// augmentation-built systems are certified with the construction
	Surface up = make_surface(toric_blowup(f1.fan(), 1));
	auto downs_up = enumerate_blowdowns(up);
	const Blowdown* back = nullptr;
	for (const auto& b : downs_up)
		if (toric_equal(b.target.fan(), f1.fan())) back = &b;
	REQUIRE(back);
	ToricSystem aug = augment(*back, catalog_system(h, Int(1)), 3);
	auto cert2 = tame_certificate(up, aug);
	REQUIRE(cert2.has_value());
	CHECK(cert2->steps.size() == 1);

	// canonical systems on toric surfaces are tame
	Surface x = make_surface(rays_from_b({Int(1), Int(1), Int(1), Int(0), Int(0)}));
	CHECK(tame_certificate(x, canonical_system(x)).has_value());
}

TEST_CASE("toric systems for a prescribed target") {
	Surface x = make_surface(rays_from_b({Int(1), Int(1), Int(1), Int(0), Int(0)}));
	ToricSurface y = rays_from_b({Int(-1), Int(0), Int(2), Int(1), Int(1)});
	ToricSystem a = toricsys_for_target(x, y);
	CHECK(is_toric_system(x, a));
	CHECK(toric_equal(tv_of(x, a), y));

	// X = Y
	ToricSystem self = toricsys_for_target(x, x.fan());
	CHECK(toric_equal(tv_of(x, self), x.fan()));

	// parity mismatch between the Hirzebruch reductions
	Surface x2 = make_surface(rays_from_b({Int(1), Int(1), Int(2), Int(0), Int(-1)}));
	ToricSurface y2 = rays_from_b({Int(1), Int(1), Int(1), Int(0), Int(0)});
	ToricSystem a2 = toricsys_for_target(x2, y2);
	CHECK(toric_equal(tv_of(x2, a2), y2));

	CHECK_THROWS_AS(toricsys_for_target(x, rays_from_b({Int(0), Int(1), Int(0), Int(-1)})), Error);

	// a rank-4 pair whose chains require the stage order to line up
	Surface x4 = make_surface(rays_from_b({Int(-2), Int(0), Int(3), Int(2), Int(1), Int(2)}));
	ToricSurface y4 = rays_from_b({Int(-1), Int(0), Int(3), Int(1), Int(2), Int(1)});
	ToricSystem a4 = toricsys_for_target(x4, y4);
	CHECK(toric_equal(tv_of(x4, a4), y4));
}

TEST_CASE("compatibility") {
	// catalog systems are compatible with every Hirzebruch degeneration (r > 0)
	for (int r = 1; r <= 3; ++r)
		for (int al = 1; al <= 2; ++al) {
			DegenerationDiagram d = hirzebruch_diagram(r, al);
			Surface gen = make_surface(general_fiber(d));
			HirzebruchBasis h = hirzebruch_basis(gen);
			CHECK(is_compatible(d, catalog_system(h, Int(1))));
			CHECK(is_compatible(d, catalog_system(h, Int(-2))));
		}
	// the swapped ruling on F_0 degenerates to a non-exceptional tilde system
	for (int al = 2; al <= 3; ++al) {
		DegenerationDiagram d = hirzebruch_diagram(0, al);
		Surface gen = make_surface(general_fiber(d));
		HirzebruchBasis h = hirzebruch_basis(gen);
		CHECK(!is_compatible(d, catalog_system_tilde(h, Int(1))));
		CHECK(is_compatible(d, catalog_system(h, Int(1))));
	}
	// non-tame input is refused
	DegenerationDiagram d = hirzebruch_diagram(4, 1);
	Surface gen = make_surface(general_fiber(d));
	HirzebruchBasis h = hirzebruch_basis(gen);
	CHECK_THROWS_AS(is_compatible(d, catalog_system_tilde(h, Int(1))), Error);
}

TEST_CASE("augmentation commutes with degeneration") {
	Rng rng(67);
	for (int t = 0; t < 12; ++t) {
		DegenerationDiagram d = hirzebruch_diagram(1 + rng.below(2), 1 + rng.below(2));
		TransportMap tm = transport_matrix(d);
		Surface gen = make_surface(general_fiber(d));
		Surface sp = make_surface(special_fiber(d));
		HirzebruchBasis h = hirzebruch_basis(gen);
		ToricSystem a = catalog_system(h, Int(rng.below(4)) - 1);

		// one blowup of the deformation
		MdivMove mv = rng.flip() ? MdivMove::insert(d.ps, Rat(1, 2))
		                         : MdivMove::insert(d.p0, Rat(-1, 2) * Rat(1, h.r == 1 ? 2 : 1));
		DiagramBlowup lift;
		try {
			lift = diagram_blowup(d, mv);
		} catch (const Error&) {
			continue;
		}
		TransportMap tm2 = transport_matrix(lift.diagram);
		Surface gen2 = make_surface(general_fiber(lift.diagram));
		Surface sp2 = make_surface(special_fiber(lift.diagram));

		Vec e_gen = gen2.lat.class_of(WeilDiv{{PrimeDiv::vertex(mv.point, mv.v), Int(1)}});
		Vec e_sp = sp2.lat.class_of(WeilDiv{{PrimeDiv::vertex(d.p0, lift.special_move.v), Int(1)}});
		const Blowdown* bg = nullptr;
		const Blowdown* bs = nullptr;
		auto dg = enumerate_blowdowns(gen2);
		auto ds = enumerate_blowdowns(sp2);
		bg = find_blowdown(dg, e_gen);
		bs = find_blowdown(ds, e_sp);
		REQUIRE(bg);
		REQUIRE(bs);
		for (int pos = 0; pos < a.size(); ++pos) {
			ToricSystem lhs = transport_system(tm2, augment(*bg, a, pos));
			ToricSystem rhs = augment(*bs, transport_system(tm, a), pos);
			CHECK(system_equal(lhs, rhs));
		}
	}
}
