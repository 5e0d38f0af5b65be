#include "cstar/quiver.hpp"

#include "cstar/error.hpp"

#include <sstream>

namespace cstar {

Mat hom_matrix(const Surface& s, const std::vector<Vec>& seq) {
	int n = static_cast<int>(seq.size());
	Mat m(n, n);
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j) {
			Cohomology c = class_cohomology(s, seq[j] - seq[i]);
			m(i, j) = c.h0;
			if (i == j) internal_check(c.h0 == 1, "endomorphism space is not one-dimensional");
			if (j < i)
				internal_check(c.h0 == 0 && c.h1 == 0 && c.h2 == 0,
				               "morphisms back in an exceptional sequence");
		}
	return m;
}

Int gamma_dimension(const Surface& s, const ToricSystem& a) {
	int n = a.size();
	Int total = n; // identity paths
	for (int j = 0; j < n - 1; ++j) {
		Vec sum(s.rank(), Int(0));
		for (int k = j; k < n - 1; ++k) {
			sum = sum + a.entries[k];
			total += class_cohomology(s, sum).h0;
		}
	}
	return total;
}

std::pair<QuiverData, QuiverData> hirzebruch_quiver_family(int r, int alpha, const Int& i) {
	require(r >= 0 && alpha >= 1, Errc::PreconditionViolated, "need r >= 0 and alpha >= 1");
	Surface general = make_surface(rays_from_b({Int(0), Int(r), Int(0), Int(-r)}));
	Surface special =
	    make_surface(rays_from_b({Int(0), Int(r + 2 * alpha), Int(0), Int(-(r + 2 * alpha))}));
	HirzebruchBasis hg = hirzebruch_basis(general);
	HirzebruchBasis hs = hirzebruch_basis(special);
	ToricSystem ag = catalog_system(hg, i);
	ToricSystem as = catalog_system(hs, i - alpha);

	auto build = [&](const Surface& s, const ToricSystem& a) {
		QuiverData q;
		q.nodes = 4;
		auto e = sequence_from_system(s.lat, a);
		for (int k = 0; k + 1 < 4; ++k)
			q.hop_dims.push_back(class_cohomology(s, e[k + 1] - e[k]).h0);
		q.long_hop = q.hop_dims[1];
		q.total_dim = gamma_dimension(s, a);
		return q;
	};
	QuiverData qg = build(general, ag);
	QuiverData qs = build(special, as);

	if (Int(alpha) < i) {
		for (QuiverData* q : {&qg, &qs}) {
			q->partition_defined = true;
			q->b_arrows = i + 1;
			q->c_arrows = i - alpha + 1;
			q->d_arrows = r + alpha;
			internal_check(q->b_arrows + q->c_arrows + q->d_arrows == q->long_hop,
			               "arrow families do not span the long hop");
		}
	}
	// the family is dimensionally constant when no section survives on the
	// mixed hops of either fiber
	auto mixed_zero = [&](const Surface& s, const ToricSystem& a) {
		auto e = sequence_from_system(s.lat, a);
		for (int jj = 0; jj < 4; ++jj)
			for (int kk = jj + 1; kk < 4; ++kk) {
				if ((jj == 0 && kk == 1) || (jj == 2 && kk == 3)) continue;
				if (class_cohomology(s, e[kk] - e[jj]).h0 != 0) return false;
			}
		return true;
	};
	bool constant = mixed_zero(general, ag) && mixed_zero(special, as);
	qg.constant_family = qs.constant_family = constant;
	if (is_strongly_exceptional(general, ag) && is_strongly_exceptional(special, as))
		internal_check(qg.total_dim == qs.total_dim, "flat family with unequal algebra dimensions");
	return {qg, qs};
}

EndoDims endo_dim_along(const DegenerationDiagram& d, const ToricSystem& a_special) {
	Multidivisor sp = special_fiber(d);
	require(is_toric(sp) && is_toric(general_fiber(d)), Errc::NotToric,
	        "endomorphism dimensions need toric fibers");
	TransportMap tm = transport_matrix(d);
	Surface s0 = make_surface(sp);
	Surface ss = make_surface(general_fiber(d));
	require_toric_system(s0.lat, a_special);
	ToricSystem a_general = transport_system_inverse(tm, a_special);
	EndoDims out{gamma_dimension(s0, a_special), gamma_dimension(ss, a_general), false, false};
	out.equal = out.special == out.general;
	out.strongly_exceptional_both =
	    is_strongly_exceptional(s0, a_special) && is_strongly_exceptional(ss, a_general);
	if (out.strongly_exceptional_both)
		internal_check(out.equal, "strongly exceptional family with unequal dimensions");
	return out;
}

std::string quiver_dot(const QuiverData& q) {
	std::ostringstream os;
	os << "digraph quiver {\n  rankdir=LR;\n";
	for (int k = 1; k <= q.nodes; ++k) os << "  E" << k << ";\n";
	for (int k = 0; k + 1 < q.nodes; ++k) {
		Int dim = k < static_cast<int>(q.hop_dims.size()) ? q.hop_dims[k] : Int(0);
		std::string label = dim.str();
		if (k == 1 && q.partition_defined)
			label += " = b:" + q.b_arrows.str() + " c:" + q.c_arrows.str() + " d:" + q.d_arrows.str();
		os << "  E" << (k + 1) << " -> E" << (k + 2) << " [label=\"" << label << "\"];\n";
	}
	os << "}\n";
	return os.str();
}

} // namespace cstar
