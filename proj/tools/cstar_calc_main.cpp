#include "cstar/connectivity.hpp"
#include "cstar/error.hpp"
#include "cstar/json_io.hpp"
#include "cstar/quiver.hpp"
#include "cstar/render.hpp"
#include "cstar/toric_system.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace cstar;
using nlohmann::json;

std::string slurp(const std::string& path) {
	std::ifstream in(path);
	require(in.good(), Errc::ParseError, "cannot read " + path);
	std::ostringstream os;
	os << in.rdbuf();
	return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
	if (out_path.empty()) {
		std::cout << text << "\n";
		return;
	}
	std::ofstream out(out_path);
	require(out.good(), Errc::ParseError, "cannot write " + out_path);
	out << text;
}

// a surface model from either schema: {"b": ...} or a multidivisor
Surface load_surface(const std::string& path) {
	std::string text = slurp(path);
	if (sniff_json(text) == JsonKind::Surface) return make_surface(rays_from_b(surface_from_json(text).b));
	Multidivisor m = mdiv_from_json(text);
	require_valid(m);
	require(is_smooth(m), Errc::NotSmooth, "surface in " + path + " is singular");
	return make_surface(m);
}

int run_validate(const std::string& in, const std::string& out) {
	std::string text = slurp(in);
	switch (sniff_json(text)) {
		case JsonKind::Surface: {
			ToricReport rep = validate_toric(surface_from_json(text));
			emit(report_to_json(rep.valid, rep.issues), out);
			return rep.valid ? 0 : 1;
		}
		case JsonKind::Diagram: {
			DegenerationDiagram d = diagram_from_json(text);
			DiagramReport rep = validate_diagram(d);
			json j = json::parse(report_to_json(rep.valid, rep.issues));
			j["trivial"] = rep.trivial;
			emit(j.dump(2), out);
			return rep.valid ? 0 : 1;
		}
		case JsonKind::Mdiv: {
			MdivReport rep = validate(mdiv_from_json(text));
			emit(report_to_json(rep.valid, rep.issues), out);
			return rep.valid ? 0 : 1;
		}
		case JsonKind::Path: {
			DeformationPath p = path_from_json(text);
			std::vector<std::string> issues;
			bool ok = validate_path(p, &issues);
			emit(report_to_json(ok, issues), out);
			return ok ? 0 : 1;
		}
		default: fail(Errc::ParseError, "unrecognized input schema");
	}
}

int run_smooth(const std::string& in, const std::string& out) {
	Multidivisor m = mdiv_from_json(slurp(in));
	require_valid(m);
	emit(json{{"smooth", is_smooth(m)}}.dump(2), out);
	return 0;
}

int run_fan(const std::string& in, const std::string& out) {
	std::string text = slurp(in);
	ToricSurface x = sniff_json(text) == JsonKind::Surface
	                     ? rays_from_b(surface_from_json(text).b)
	                     : to_fan(mdiv_from_json(text));
	emit(surface_to_json(x), out);
	return 0;
}

int run_degenerate(const std::string& in, const std::string& out) {
	std::string text = slurp(in);
	if (sniff_json(text) == JsonKind::Diagram) {
		// one explicit deformation: report its special fiber
		DegenerationDiagram d = diagram_from_json(text);
		Multidivisor sp = special_fiber(d);
		json j{{"special_fiber", json::parse(mdiv_to_json(sp))}};
		if (is_toric(sp)) j["special_b"] = json::parse(surface_to_json(to_fan(sp)))["b"];
		if (is_toric(general_fiber(d)))
			j["general_b"] = json::parse(surface_to_json(to_fan(general_fiber(d))))["b"];
		emit(j.dump(2), out);
		return 0;
	}
	Multidivisor m = mdiv_from_json(text);
	require_valid(m);
	require(is_smooth(m), Errc::NotSmooth, "input surface is singular");
	DegenerationChain chain = degenerate_to_toric(m);
	json steps = json::array();
	for (const auto& d : chain.steps) steps.push_back(json::parse(diagram_to_json(d)));
	json j{{"steps", steps},
	       {"toric", json::parse(mdiv_to_json(chain.toric))},
	       {"toric_b", json::parse(surface_to_json(to_fan(chain.toric)))["b"]}};
	emit(j.dump(2), out);
	return 0;
}

int run_connect(const std::string& a_path, const std::string& b_path, const std::string& sys_path,
                bool do_shorten, const std::string& out) {
	std::string ta = slurp(a_path), tb = slurp(b_path);
	DeformationPath path;
	if (sniff_json(ta) == JsonKind::Surface && sniff_json(tb) == JsonKind::Surface) {
		path = connect_toric(rays_from_b(surface_from_json(ta).b), rays_from_b(surface_from_json(tb).b));
	} else {
		Multidivisor ma = sniff_json(ta) == JsonKind::Surface
		                      ? toric_multidivisor(rays_from_b(surface_from_json(ta).b))
		                      : mdiv_from_json(ta);
		Multidivisor mb = sniff_json(tb) == JsonKind::Surface
		                      ? toric_multidivisor(rays_from_b(surface_from_json(tb).b))
		                      : mdiv_from_json(tb);
		path = connect(ma, mb);
	}
	if (do_shorten) path = shorten(path);
	json j = json::parse(path_to_json(path));
	if (!sys_path.empty()) {
		PicLattice lat = picard_lattice(path.start);
		ToricSystem a = system_from_json(lat, slurp(sys_path));
		require(is_toric_system(lat, a), Errc::NotAToricSystem, "input system fails the axioms");
		auto images = transport_along_path(path, a);
		json imgs = json::array();
		for (size_t k = 0; k < images.size(); ++k) {
			// the final image always lands on the lattice of the end model
			PicLattice lk = picard_lattice(k == images.size() - 1 ? path.end
			                                                      : path.fiber(static_cast<int>(k)));
			imgs.push_back(json::parse(system_to_json(lk, images[k])));
		}
		j["systems"] = imgs;
		j["tv"] = json::parse(surface_to_json(tv_of(lat, a)))["b"];
		j["tv_constant"] = true; // asserted inside transport_along_path
	}
	emit(j.dump(2), out);
	return 0;
}

int run_transport(const std::string& in, const std::string& sys_path, const std::string& out) {
	DegenerationDiagram d = diagram_from_json(slurp(in));
	TransportMap tm = transport_matrix(d);
	json j = json::parse(transport_to_json(tm));
	if (!sys_path.empty()) {
		ToricSystem a = system_from_json(tm.general, slurp(sys_path));
		ToricSystem img = transport_system(tm, a);
		j["system_image"] = json::parse(system_to_json(tm.special, img));
	}
	emit(j.dump(2), out);
	return 0;
}

int run_system(const std::string& sub, const std::string& in, const std::string& sys_path,
               int pos, int gap, long long power, int bound, const std::string& out) {
	if (sub == "compat") {
		DegenerationDiagram d = diagram_from_json(slurp(in));
		PicLattice lat = picard_lattice(general_fiber(d));
		ToricSystem a = system_from_json(lat, slurp(sys_path));
		emit(json{{"compatible", is_compatible(d, a)}}.dump(2), out);
		return 0;
	}
	Surface s = load_surface(in);
	if (sub == "catalog") {
		require(s.rank() == 2, Errc::PreconditionViolated, "catalog search needs a rank-2 surface");
		HirzebruchBasis h = hirzebruch_basis(s);
		auto found = enumerate_toric_systems(s.lat, h, bound);
		json arr = json::array();
		for (const auto& a : found) {
			json ja = json::parse(system_to_json(s.lat, a));
			auto form = recognize_catalog(s.lat, h, a);
			if (form) {
				ja["family"] = form->tilde ? "tilde" : "plain";
				ja["i"] = form->i.str();
			}
			arr.push_back(ja);
		}
		emit(json{{"r", h.r.str()}, {"bound", bound}, {"systems", arr}}.dump(2), out);
		return 0;
	}
	ToricSystem a = system_from_json(s.lat, slurp(sys_path));
	if (sub == "check") {
		emit(json{{"toric_system", is_toric_system(s.lat, a)}}.dump(2), out);
		return 0;
	}
	require(is_toric_system(s.lat, a), Errc::NotAToricSystem, "input system fails the axioms");
	if (sub == "tv") {
		emit(surface_to_json(tv_of(s.lat, a)), out);
		return 0;
	}
	if (sub == "augment") {
		require(s.toric_model(), Errc::NotToric, "augmentation over the CLI expects a toric surface");
		Surface up = make_surface(toric_blowup(s.fan(), gap));
		auto downs = enumerate_blowdowns(up);
		const Blowdown* back = nullptr;
		for (const auto& b : downs)
			if (b.desc == "ray " + std::to_string(gap + 1)) back = &b;
		internal_check(back != nullptr, "blowup did not produce a contractible ray");
		ToricSystem aug = augment(*back, a, pos);
		json j = json::parse(system_to_json(up.lat, aug));
		j["surface_b"] = json::parse(surface_to_json(up.fan()))["b"];
		emit(j.dump(2), out);
		return 0;
	}
	if (sub == "mutate") {
		ToricSystem img = mutate_L1(s, a, Int(power));
		emit(system_to_json(s.lat, img), out);
		return 0;
	}
	if (sub == "tame") {
		auto cert = tame_certificate(s, a);
		if (!cert) {
			emit(json{{"tame", false}}.dump(2), out);
			return 0;
		}
		json j = json::parse(certificate_to_json(*cert));
		j["tame"] = true;
		emit(j.dump(2), out);
		return 0;
	}
	fail(Errc::ParseError, "unknown system subcommand " + sub);
}

int run_quiver(int r, int alpha, long long i, bool dot, const std::string& out) {
	auto [qg, qs] = hirzebruch_quiver_family(r, alpha, Int(i));
	if (dot) {
		emit(quiver_dot(qg), out);
		return 0;
	}
	auto pack = [](const QuiverData& q) {
		json hops = json::array();
		for (const auto& h : q.hop_dims) hops.push_back(h.str());
		json j{{"nodes", q.nodes},
		       {"hop_dims", hops},
		       {"long_hop", q.long_hop.str()},
		       {"total_dim", q.total_dim.str()},
		       {"constant_family", q.constant_family}};
		if (q.partition_defined)
			j["arrows"] = {{"b", q.b_arrows.str()}, {"c", q.c_arrows.str()}, {"d", q.d_arrows.str()}};
		return j;
	};
	emit(json{{"general_fiber", pack(qg)}, {"special_fiber", pack(qs)}}.dump(2), out);
	return 0;
}

int run_render(const std::string& in, const std::string& format, const std::string& out) {
	std::string text = slurp(in);
	if (format == "json") {
		// normalized echo of the parsed object
		switch (sniff_json(text)) {
			case JsonKind::Diagram: emit(diagram_to_json(diagram_from_json(text)), out); return 0;
			case JsonKind::Mdiv: emit(mdiv_to_json(mdiv_from_json(text)), out); return 0;
			case JsonKind::Path: emit(path_to_json(path_from_json(text)), out); return 0;
			default: fail(Errc::ParseError, "nothing renderable in " + in);
		}
	}
	switch (sniff_json(text)) {
		case JsonKind::Diagram: emit(render_diagram(diagram_from_json(text)), out); return 0;
		case JsonKind::Mdiv: emit(render_multidivisor(mdiv_from_json(text)), out); return 0;
		case JsonKind::Path: emit(render_path(path_from_json(text)), out); return 0;
		default: fail(Errc::ParseError, "nothing renderable in " + in);
	}
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"exact calculus of homogeneous deformations of rational C*-surfaces"};
	app.require_subcommand(1);

	std::string in, a_path, b_path, sys_path, out, format = "svg";
	int pos = 0, gap = 0, bound = 6, r = 0, alpha = 1;
	long long power = 1, iparam = 2;
	bool do_shorten = false, dot = false;

	auto* v = app.add_subcommand("validate", "validate a surface, multidivisor, diagram, or path");
	v->add_option("--in", in)->required();
	v->add_option("--out", out);

	auto* sm = app.add_subcommand("smooth", "smoothness of the surface of a multidivisor");
	sm->add_option("--in", in)->required();
	sm->add_option("--out", out);

	auto* f = app.add_subcommand("fan", "realized fan of a toric surface or toric multidivisor");
	f->add_option("--in", in)->required();
	f->add_option("--out", out);

	auto* dg = app.add_subcommand("degenerate", "degenerate a multidivisor to a toric surface");
	dg->add_option("--in", in)->required();
	dg->add_option("--out", out);

	auto* cn = app.add_subcommand("connect", "deformation path between two surfaces");
	cn->add_option("--a", a_path)->required();
	cn->add_option("--b", b_path)->required();
	cn->add_option("--system", sys_path);
	cn->add_flag("--shorten", do_shorten);
	cn->add_option("--out", out);

	auto* tr = app.add_subcommand("transport", "transport matrix of a degeneration diagram");
	tr->add_option("--in", in)->required();
	tr->add_option("--system", sys_path);
	tr->add_option("--out", out);

	auto* sy = app.add_subcommand("system", "toric-system operations");
	sy->require_subcommand(1);
	std::vector<CLI::App*> subs;
	for (const char* name : {"check", "tv", "augment", "mutate", "tame", "compat", "catalog"}) {
		auto* sub = sy->add_subcommand(name);
		sub->add_option("--in", in)->required();
		if (std::string(name) != "catalog") sub->add_option("--system", sys_path);
		sub->add_option("--out", out);
		subs.push_back(sub);
	}
	subs[2]->add_option("--pos", pos);
	subs[2]->add_option("--gap", gap);
	subs[3]->add_option("--power", power);
	subs[6]->add_option("--bound", bound);

	auto* q = app.add_subcommand("quiver", "Hirzebruch quiver family dimensions");
	q->add_option("--r", r)->required();
	q->add_option("--alpha", alpha)->required();
	q->add_option("--i", iparam)->required();
	q->add_flag("--dot", dot);
	q->add_option("--out", out);

	auto* rd = app.add_subcommand("render", "SVG figure of a multidivisor, diagram, or path");
	rd->add_option("--in", in)->required();
	rd->add_option("--format", format)->check(CLI::IsMember({"json", "svg"}))->capture_default_str();
	rd->add_option("--out", out);

	CLI11_PARSE(app, argc, argv);

	try {
		if (v->parsed()) return run_validate(in, out);
		if (sm->parsed()) return run_smooth(in, out);
		if (f->parsed()) return run_fan(in, out);
		if (dg->parsed()) return run_degenerate(in, out);
		if (cn->parsed()) return run_connect(a_path, b_path, sys_path, do_shorten, out);
		if (tr->parsed()) return run_transport(in, sys_path, out);
		if (sy->parsed()) {
			for (size_t k = 0; k < subs.size(); ++k)
				if (subs[k]->parsed())
					return run_system(subs[k]->get_name(), in, sys_path, pos, gap, power, bound, out);
		}
		if (q->parsed()) return run_quiver(r, alpha, iparam, dot, out);
		if (rd->parsed()) return run_render(in, format, out);
	} catch (const cstar::Error& e) {
		nlohmann::json err{{"error", errc_name(e.code())}, {"message", e.what()}};
		std::cerr << err.dump(2) << "\n";
		return e.code() == Errc::ParseError ? 2 : 1;
	}
	return 0;
}
