#include "cstar/json_io.hpp"

#include "cstar/error.hpp"

#include <json.hpp>

#include <limits>

namespace cstar {

using nlohmann::json;

namespace {

// integers as JSON numbers when they fit, strings beyond that
json int_json(const Int& v) {
	if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
		return json(static_cast<long long>(v));
	return json(v.str());
}

json parse(const std::string& text) {
	json j = json::parse(text, nullptr, false);
	require(!j.is_discarded(), Errc::ParseError, "malformed JSON");
	return j;
}

Rat rat_from(const json& j) {
	require(j.is_string() || j.is_number_integer(), Errc::ParseError, "rational expected");
	try {
		if (j.is_number_integer()) return Rat(Int(j.get<long long>()));
		return Rat::parse(j.get<std::string>());
	} catch (const std::exception&) {
		fail(Errc::ParseError, "cannot parse rational");
	}
}

Int int_from(const json& j) {
	require(j.is_string() || j.is_number_integer(), Errc::ParseError, "integer expected");
	Rat r = rat_from(j);
	require(r.is_integer(), Errc::ParseError, "integer expected");
	return r.num;
}

Marker marker_from(const json& j) {
	require(j.is_string(), Errc::ParseError, "marker expected");
	std::string s = j.get<std::string>();
	if (s == "circ") return Marker::Circ;
	if (s == "bullet") return Marker::Bullet;
	fail(Errc::ParseError, "marker must be \"circ\" or \"bullet\"");
}

ProjPoint point_from(const json& j) {
	require(j.is_string() || j.is_number_integer(), Errc::ParseError, "point expected");
	if (j.is_number_integer()) return ProjPoint::at(Rat(Int(j.get<long long>())));
	try {
		return ProjPoint::parse(j.get<std::string>());
	} catch (const std::exception&) {
		fail(Errc::ParseError, "cannot parse point");
	}
}

json mdiv_json(const Multidivisor& m) {
	json slices = json::array();
	for (const auto& [p, s] : m.slices) {
		json verts = json::array();
		for (const auto& v : s.verts) verts.push_back(v.str());
		slices.push_back({{"point", p.str()}, {"vertices", verts}});
	}
	return json{{"slices", slices}, {"minus", marker_str(m.minus)}, {"plus", marker_str(m.plus)}};
}

Multidivisor mdiv_from(const json& j) {
	require(j.is_object() && j.contains("slices"), Errc::ParseError, "multidivisor expected");
	Multidivisor m;
	require(j["slices"].is_array(), Errc::ParseError, "slices must be an array");
	for (const auto& js : j["slices"]) {
		require(js.is_object() && js.contains("point") && js.contains("vertices"), Errc::ParseError,
		        "slice needs point and vertices");
		ProjPoint p = point_from(js["point"]);
		require(!m.slices.count(p), Errc::ParseError, "duplicate slice point " + p.str());
		std::vector<Rat> vs;
		require(js["vertices"].is_array() && !js["vertices"].empty(), Errc::ParseError,
		        "vertices must be a non-empty array");
		for (const auto& v : js["vertices"]) vs.push_back(rat_from(v));
		try {
			m.set_slice(p, make_slice(vs));
		} catch (const Error&) {
			fail(Errc::ParseError, "slice vertices must be distinct");
		}
	}
	if (j.contains("minus")) m.minus = marker_from(j["minus"]);
	if (j.contains("plus")) m.plus = marker_from(j["plus"]);
	return m;
}

json diagram_json(const DegenerationDiagram& d) {
	json j = mdiv_json(d.M);
	j["p0"] = d.p0.str();
	j["ps"] = d.ps.str();
	json edges = json::array();
	for (const auto& [a, b] : d.edges) edges.push_back(json::array({a, b}));
	j["edges"] = edges;
	return j;
}

DegenerationDiagram diagram_from(const json& j) {
	DegenerationDiagram d;
	d.M = mdiv_from(j);
	d.p0 = j.contains("p0") ? point_from(j["p0"]) : ProjPoint::at(Rat(0));
	d.ps = j.contains("ps") ? point_from(j["ps"]) : ProjPoint::infinity();
	require(j.contains("edges") && j["edges"].is_array(), Errc::ParseError, "edges expected");
	for (const auto& e : j["edges"]) {
		require(e.is_array() && e.size() == 2 && e[0].is_number_integer() && e[1].is_number_integer(),
		        Errc::ParseError, "edges are index pairs");
		d.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
	}
	return d;
}

} // namespace

std::string surface_to_json(const ToricSurface& x) {
	json b = json::array();
	for (const auto& v : x.b) b.push_back(int_json(v));
	json j{{"b", b}};
	if (x.rays) {
		json rays = json::array();
		for (const auto& r : *x.rays) rays.push_back(json::array({int_json(r.x), int_json(r.y)}));
		j["rays"] = rays;
	}
	return j.dump(2);
}

ToricSurface surface_from_json(const std::string& text) {
	json j = parse(text);
	require(j.is_object() && j.contains("b") && j["b"].is_array(), Errc::ParseError,
	        "toric surface needs a \"b\" array");
	std::vector<Int> b;
	for (const auto& v : j["b"]) b.push_back(int_from(v));
	require(b.size() >= 3, Errc::ParseError, "b needs at least 3 entries");
	return ToricSurface{b, std::nullopt};
}

std::string divisor_to_json(const ToricDivisor& d) {
	json c = json::array();
	for (const auto& v : d) c.push_back(int_json(v));
	return json{{"coeffs", c}}.dump(2);
}

ToricDivisor divisor_from_json(const std::string& text) {
	json j = parse(text);
	require(j.is_object() && j.contains("coeffs") && j["coeffs"].is_array(), Errc::ParseError,
	        "divisor needs a \"coeffs\" array");
	ToricDivisor d;
	for (const auto& v : j["coeffs"]) d.push_back(int_from(v));
	return d;
}

std::string mdiv_to_json(const Multidivisor& m) { return mdiv_json(m).dump(2); }

Multidivisor mdiv_from_json(const std::string& text) { return mdiv_from(parse(text)); }

std::string diagram_to_json(const DegenerationDiagram& d) { return diagram_json(d).dump(2); }

DegenerationDiagram diagram_from_json(const std::string& text) {
	return diagram_from(parse(text));
}

std::string weil_to_json(const WeilDiv& d) {
	json terms = json::array();
	for (const auto& [g, c] : d) {
		json t{{"coeff", c.str()}};
		switch (g.kind) {
			case PrimeDiv::Vertex:
				t["type"] = "vertex";
				t["point"] = g.point.str();
				t["v"] = g.v.str();
				break;
			case PrimeDiv::DMinus: t["type"] = "dminus"; break;
			case PrimeDiv::DPlus: t["type"] = "dplus"; break;
			case PrimeDiv::Fiber: t["type"] = "fiber"; break;
		}
		terms.push_back(t);
	}
	return json{{"terms", terms}}.dump(2);
}

WeilDiv weil_from_json(const std::string& text) {
	json j = parse(text);
	require(j.is_object() && j.contains("terms") && j["terms"].is_array(), Errc::ParseError,
	        "Weil divisor needs a \"terms\" array");
	WeilDiv d;
	for (const auto& t : j["terms"]) {
		require(t.is_object() && t.contains("type") && t.contains("coeff"), Errc::ParseError,
		        "term needs type and coeff");
		std::string type = t["type"].get<std::string>();
		PrimeDiv g;
		if (type == "vertex") {
			require(t.contains("point") && t.contains("v"), Errc::ParseError, "vertex term needs point, v");
			g = PrimeDiv::vertex(point_from(t["point"]), rat_from(t["v"]));
		} else if (type == "dminus")
			g = PrimeDiv::dminus();
		else if (type == "dplus")
			g = PrimeDiv::dplus();
		else if (type == "fiber")
			g = PrimeDiv::fiber();
		else
			fail(Errc::ParseError, "unknown prime divisor type " + type);
		d[g] += int_from(t["coeff"]);
	}
	return d;
}

std::string path_to_json(const DeformationPath& p) {
	json steps = json::array();
	for (const auto& s : p.steps)
		steps.push_back({{"direction", s.direction == StepDirection::Degenerate ? "degenerate" : "deform"},
		                 {"diagram", diagram_json(s.diagram)}});
	return json{{"start", mdiv_json(p.start)}, {"end", mdiv_json(p.end)}, {"steps", steps}}.dump(2);
}

DeformationPath path_from_json(const std::string& text) {
	json j = parse(text);
	require(j.is_object() && j.contains("steps") && j["steps"].is_array(), Errc::ParseError,
	        "path needs steps");
	DeformationPath p;
	require(j.contains("start") && j.contains("end"), Errc::ParseError, "path needs endpoints");
	p.start = mdiv_from(j["start"]);
	p.end = mdiv_from(j["end"]);
	for (const auto& s : j["steps"]) {
		require(s.is_object() && s.contains("direction") && s.contains("diagram"), Errc::ParseError,
		        "step needs direction and diagram");
		std::string dir = s["direction"].get<std::string>();
		require(dir == "degenerate" || dir == "deform", Errc::ParseError, "unknown direction " + dir);
		p.steps.push_back({diagram_from(s["diagram"]),
		                   dir == "degenerate" ? StepDirection::Degenerate : StepDirection::Deform});
	}
	return p;
}

std::string system_to_json(const PicLattice& lat, const ToricSystem& a) {
	json basis = json::array();
	for (const auto& l : lat.labels) basis.push_back(l);
	json entries = json::array();
	for (const auto& e : a.entries) {
		json row = json::array();
		for (const auto& c : e) row.push_back(int_json(c));
		entries.push_back(row);
	}
	json lift = json::array();
	for (int j = 0; j < lat.rank; ++j) {
		json col = json::array();
		for (int i = 0; i < lat.ngens; ++i) col.push_back(lat.lift(i, j).str());
		lift.push_back(col);
	}
	return json{{"generators", basis}, {"basis_divisors", lift}, {"entries", entries}}.dump(2);
}

ToricSystem system_from_json(const PicLattice& lat, const std::string& text) {
	json j = parse(text);
	require(j.is_object() && j.contains("entries") && j["entries"].is_array(), Errc::ParseError,
	        "system needs entries");
	ToricSystem a;
	for (const auto& row : j["entries"]) {
		require(row.is_array() && static_cast<int>(row.size()) == lat.rank, Errc::ParseError,
		        "entry length must match the lattice rank");
		Vec e;
		for (const auto& c : row) e.push_back(int_from(c));
		a.entries.push_back(e);
	}
	return a;
}

std::string transport_to_json(const TransportMap& tm) {
	json rows = json::array();
	for (int i = 0; i < tm.mat.rows; ++i) {
		json row = json::array();
		for (int j = 0; j < tm.mat.cols; ++j) row.push_back(tm.mat(i, j).str());
		rows.push_back(row);
	}
	json src = json::array(), dst = json::array();
	for (const auto& l : tm.general.labels) src.push_back(l);
	for (const auto& l : tm.special.labels) dst.push_back(l);
	return json{{"matrix", rows}, {"general_generators", src}, {"special_generators", dst}}.dump(2);
}

std::string certificate_to_json(const TameCertificate& cert) {
	json base = json::array();
	for (const auto& b : cert.base_b) base.push_back(b.str());
	json steps = json::array();
	for (const auto& s : cert.steps)
		steps.push_back({{"blowdown", s.blowdown}, {"position", s.position}});
	return json{{"base_b", base},
	            {"base_i", cert.base_i.str()},
	            {"base_tilde", cert.base_tilde},
	            {"steps", steps}}
	    .dump(2);
}

std::string report_to_json(bool valid, const std::vector<std::string>& issues) {
	json is = json::array();
	for (const auto& s : issues) is.push_back(s);
	return json{{"valid", valid}, {"issues", is}}.dump(2);
}

JsonKind sniff_json(const std::string& text) {
	json j = json::parse(text, nullptr, false);
	if (j.is_discarded() || !j.is_object()) return JsonKind::Unknown;
	if (j.contains("steps")) return JsonKind::Path;
	if (j.contains("edges")) return JsonKind::Diagram;
	if (j.contains("slices")) return JsonKind::Mdiv;
	if (j.contains("b")) return JsonKind::Surface;
	return JsonKind::Unknown;
}

} // namespace cstar
