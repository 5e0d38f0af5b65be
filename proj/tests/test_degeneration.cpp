#include "cstar/degeneration.hpp"

#include "cstar/error.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cstar;
using cstar::testing::Rng;

namespace {

ProjPoint P0() { return ProjPoint::at(Rat(0)); }
ProjPoint Pinf() { return ProjPoint::infinity(); }

} // namespace

TEST_CASE("diagram validation") {
	DegenerationDiagram d = hirzebruch_diagram(1, 1);
	DiagramReport rep = validate_diagram(d);
	CHECK(rep.valid);
	CHECK(!rep.trivial);

	DegenerationDiagram single = d;
	single.edges = {{0, 1}};
	CHECK(!validate_diagram(single).valid);

	DegenerationDiagram split = d;
	split.edges = {{0, 0}, {1, 1}};
	CHECK(!validate_diagram(split).valid); // two components

	DegenerationDiagram crossing = d;
	crossing.edges = {{0, 1}, {1, 0}};
	CHECK(!validate_diagram(crossing).valid);

	// a fractional vertex of degree two
	DegenerationDiagram highdeg = d;
	highdeg.edges = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
	CHECK(!validate_diagram(highdeg).valid);
}

TEST_CASE("special fiber of the Hirzebruch diagram") {
	DegenerationDiagram d = hirzebruch_diagram(1, 1);
	Multidivisor sp = special_fiber(d);
	CHECK(sp.nontrivial_count() == 1);
	CHECK(sp.slice_at(P0()).verts == std::vector<Rat>{Rat(-1, 2), Rat(0), Rat(1)});
	CHECK(sp.minus == Marker::Circ);
	CHECK(sp.plus == Marker::Circ);
	CHECK(cyclic_equal(to_fan(sp).b, {Int(0), Int(3), Int(0), Int(-3)}));
	CHECK(cyclic_equal(to_fan(general_fiber(d)).b, {Int(0), Int(1), Int(0), Int(-1)}));
}

TEST_CASE("Hirzebruch family fibers") {
	for (int r = 0; r <= 6; ++r)
		for (int a = 1; a <= 4; ++a) {
			DegenerationDiagram d = hirzebruch_diagram(r, a);
			std::vector<Int> want_special = {Int(0), Int(r + 2 * a), Int(0), Int(-(r + 2 * a))};
			std::vector<Int> want_general = {Int(0), Int(r), Int(0), Int(-r)};
			CHECK(cyclic_equal(to_fan(special_fiber(d)).b, want_special));
			CHECK(cyclic_equal(to_fan(general_fiber(d)).b, want_general));
		}
	DegenerationDiagram alt = hirzebruch_diagram(0, 1, true);
	CHECK(cyclic_equal(to_fan(special_fiber(alt)).b, {Int(0), Int(2), Int(0), Int(-2)}));
	CHECK_THROWS_AS(hirzebruch_diagram(1, 1, true), Error);
}

TEST_CASE("trivial one-edge diagram") {
	DegenerationDiagram d;
	d.M.set_slice(P0(), make_slice({Rat(1)}));
	d.M.minus = Marker::Bullet;
	d.p0 = P0();
	d.ps = Pinf();
	d.edges = {{0, 0}};
	DiagramReport rep = validate_diagram(d);
	CHECK(rep.valid);
	CHECK(rep.trivial);
	CHECK(special_fiber(d) == d.M);
}

TEST_CASE("toric deformation diagram") {
	ToricSurface f3 = rays_from_b({Int(-3), Int(0), Int(3), Int(0)});
	DegenerationDiagram d = toric_deformation_diagram(f3, Int(1));
	DegenerationDiagram h = hirzebruch_diagram(1, 1);
	CHECK(mdiv_isomorphic(general_fiber(d), general_fiber(h)));
	CHECK(mdiv_isomorphic(special_fiber(d), special_fiber(h)));

	ToricSurface x = rays_from_b({Int(-2), Int(1), Int(1), Int(3), Int(0)});
	DegenerationDiagram d2 = toric_deformation_diagram(x, Int(1));
	CHECK(cyclic_equal(to_fan(general_fiber(d2)).b, {Int(1), Int(1), Int(1), Int(0), Int(0)}));

	ToricSurface f1 = rays_from_b({Int(-1), Int(0), Int(1), Int(0)});
	DegenerationDiagram d3 = toric_deformation_diagram(f1, Int(0));
	CHECK(validate_diagram(d3).trivial);
}

TEST_CASE("toric deformation diagrams over the catalog") {
	auto all = cstar::testing::enumerate_smooth_toric(7, 4);
	int cases = 0;
	for (const auto& b : all) {
		if (b.size() < 4) continue;
		int n = static_cast<int>(b.size());
		for (int rot = 0; rot < n; ++rot) {
			if (b[rot] >= 0) continue;
			std::vector<Int> br(n);
			for (int i = 0; i < n; ++i) br[i] = b[(rot + i) % n];
			ToricSurface x = rays_from_b(br);
			for (Int r = 0; r <= -br[0]; ++r) {
				DegenerationDiagram d = toric_deformation_diagram(x, r);
				CHECK(validate_diagram(d).valid);
				++cases;
			}
		}
	}
	CHECK(cases >= 79);
}

TEST_CASE("merging slices") {
	// three-slice smooth multidivisor: build by inserting a fresh fiber vertex
	Multidivisor m = hirzebruch_multidivisor(1, 1);
	m.plus = Marker::Bullet; // else no fresh insertion is smooth
	Multidivisor m3 = blow_up(m, MdivMove::insert(ProjPoint::at(Rat(1)), Rat(1)));
	REQUIRE(m3.nontrivial_count() == 3);
	DegenerationDiagram d = merge_slices_degeneration(m3, ProjPoint::at(Rat(1)), Pinf());
	CHECK(validate_diagram(d).valid);
	CHECK(special_fiber(d).nontrivial_count() == 2);

	// the Hirzebruch multidivisor itself: only one orientation works
	Multidivisor h = hirzebruch_multidivisor(1, 1);
	CHECK_THROWS_AS(merge_slices_degeneration(h, P0(), Pinf()), Error);
	DegenerationDiagram ok = merge_slices_degeneration(h, Pinf(), P0());
	CHECK(validate_diagram(ok).valid);

	CHECK_THROWS_AS(merge_slices_degeneration(h, ProjPoint::at(Rat(5)), Pinf()), Error);
}

TEST_CASE("diagram blowup moves") {
	DegenerationDiagram d = hirzebruch_diagram(1, 1);

	DiagramBlowup up = diagram_blowup(d, MdivMove::insert(Pinf(), Rat(1, 2)));
	CHECK(picard_rank(special_fiber(up.diagram)) == 3);
	CHECK(up.special_move.kind == MdivMove::InsertVertex);
	CHECK(up.special_move.v == Rat(1, 2)); // 1/2 + the shared 0 vertex

	DiagramBlowup tog = diagram_blowup(d, MdivMove::toggle_plus());
	CHECK(picard_rank(special_fiber(tog.diagram)) == 3);

	DiagramBlowup fresh = diagram_blowup(tog.diagram, MdivMove::insert(ProjPoint::at(Rat(2)), Rat(1)));
	CHECK(picard_rank(special_fiber(fresh.diagram)) == 4);

	// blowing down the new exceptional divisor restores the diagram
	Multidivisor sp = special_fiber(up.diagram);
	CHECK(sp.slice_at(P0()).contains(Rat(1, 2)));
	DiagramBlowdown down = diagram_blowdown(up.diagram, PrimeDiv::vertex(P0(), Rat(1, 2)));
	CHECK(down.diagram.M == d.M);
	CHECK(down.diagram.edges == d.edges);
	CHECK(down.exceptional_general == PrimeDiv::vertex(Pinf(), Rat(1, 2)));
}

TEST_CASE("blowdown cases") {
	DegenerationDiagram d = hirzebruch_diagram(1, 1);
	DiagramBlowup tog = diagram_blowup(d, MdivMove::toggle_plus());
	DiagramBlowdown back = diagram_blowdown(tog.diagram, PrimeDiv::dplus());
	CHECK(back.diagram.M == d.M);
	CHECK(back.exceptional_general == PrimeDiv::dplus());

	DiagramBlowup fresh = diagram_blowup(tog.diagram, MdivMove::insert(ProjPoint::at(Rat(2)), Rat(1)));
	DiagramBlowdown back2 =
	    diagram_blowdown(fresh.diagram, PrimeDiv::vertex(ProjPoint::at(Rat(2)), Rat(1)));
	CHECK(back2.diagram.M == tog.diagram.M);

	CHECK_THROWS_AS(diagram_blowdown(d, PrimeDiv::fiber()), Error);
	CHECK_THROWS_AS(diagram_blowdown(d, PrimeDiv::vertex(P0(), Rat(7))), Error);

	// F_3 is minimal: no vertex divisor of the special fiber contracts
	for (const Rat& v : {Rat(-1, 2), Rat(0), Rat(1)}) {
		try {
			diagram_blowdown(d, PrimeDiv::vertex(P0(), v));
			CHECK(false);
		} catch (const Error& e) {
			CHECK(e.code() == Errc::NotMinusOne);
		}
	}
}

TEST_CASE("special-side moves translate to general-side moves") {
	DegenerationDiagram d = hirzebruch_diagram(1, 1);
	// interior insertion at 1/2 = 0 + 1/2: lands at ps next to the shared 0
	MdivMove g = general_move_for_special(d, MdivMove::insert(P0(), Rat(1, 2)));
	CHECK(g.kind == MdivMove::InsertVertex);
	CHECK(g.point == Pinf());
	CHECK(g.v == Rat(1, 2));
	DiagramBlowup up = diagram_blowup(d, g);
	CHECK(special_fiber(up.diagram).slice_at(P0()).contains(Rat(1, 2)));

	// interior insertion between -1/2 and 0: comes from the p0 side
	MdivMove g2 = general_move_for_special(d, MdivMove::insert(P0(), Rat(-1, 3)));
	CHECK(g2.point == P0());
	DiagramBlowup up2 = diagram_blowup(d, g2);
	CHECK(special_fiber(up2.diagram).slice_at(P0()).contains(Rat(-1, 3)));

	// extremal insertion: needs the plus-side fixed curve, else nothing is smooth
	CHECK_THROWS_AS(general_move_for_special(d, MdivMove::insert(P0(), Rat(2))), Error);
	DegenerationDiagram dt = diagram_blowup(d, MdivMove::toggle_plus()).diagram;
	MdivMove g3 = general_move_for_special(dt, MdivMove::insert(P0(), Rat(2)));
	DiagramBlowup up3 = diagram_blowup(dt, g3);
	CHECK(special_fiber(up3.diagram).slice_at(P0()).contains(Rat(2)));
}

TEST_CASE("random blowup chains keep diagrams valid") {
	Rng rng(47);
	for (int t = 0; t < 60; ++t) {
		DegenerationDiagram d = hirzebruch_diagram(rng.below(3), 1 + rng.below(3));
		for (int step = 0; step < 4; ++step) {
			// enumerate a few candidate moves and try one
			std::vector<MdivMove> moves;
			if (d.M.minus == Marker::Circ) moves.push_back(MdivMove::toggle_minus());
			if (d.M.plus == Marker::Circ) moves.push_back(MdivMove::toggle_plus());
			for (const ProjPoint& p : {d.p0, d.ps}) {
				Slice s = d.M.slice_at(p);
				for (int i = 0; i + 1 < s.size(); ++i) {
					const Rat& a = s.verts[i];
					const Rat& b = s.verts[i + 1];
					moves.push_back(MdivMove::insert(
					    p, Rat(a.num * b.den + b.num * a.den, a.den * b.den + a.den * b.den)));
				}
				if (s.max().is_integer()) moves.push_back(MdivMove::insert(p, s.max() + Rat(1)));
			}
			MdivMove mv = moves[rng.below(static_cast<int>(moves.size()))];
			try {
				DiagramBlowup up = diagram_blowup(d, mv);
				CHECK(validate_diagram(up.diagram).valid);
				CHECK(is_smooth(special_fiber(up.diagram)));
				// the induced special-fiber blowup contracts straight back
				PrimeDiv e = up.special_move.kind == MdivMove::InsertVertex
				                 ? PrimeDiv::vertex(d.p0, up.special_move.v)
				                 : (up.special_move.kind == MdivMove::TogglePlus ? PrimeDiv::dplus()
				                                                                 : PrimeDiv::dminus());
				DiagramBlowdown back = diagram_blowdown(up.diagram, e);
				CHECK(back.diagram.M == d.M);
				CHECK(back.diagram.edges == d.edges);
				d = up.diagram;
			} catch (const Error&) {
				// move not smooth here; fine
			}
		}
	}
}
