#include "cstar/render.hpp"

#include "cstar/error.hpp"

#include <algorithm>
#include <sstream>

namespace cstar {

namespace {

// exact pixel coordinate with two decimals: round(v * scale * 100) / 100
std::string px(const Rat& v, int scale, int offset) {
	Int centi = Rat(v.num * scale * 100 + Int(offset) * 100 * v.den, v.den).floor();
	Int whole = centi / 100, frac = centi % 100;
	if (frac < 0) {
		frac += 100;
		whole -= 1;
	}
	std::ostringstream os;
	os << whole << "." << (frac < 10 ? "0" : "") << frac;
	return os.str();
}

std::string px_int(int v) { return std::to_string(v); }

struct Canvas {
	std::ostringstream body;
	int width = 0, height = 0;

	void line(const std::string& x1, const std::string& y1, const std::string& x2,
	          const std::string& y2, const char* cls) {
		body << "<line class=\"" << cls << "\" x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2
		     << "\" y2=\"" << y2 << "\"/>\n";
	}
	void circle(const std::string& cx, const std::string& cy, bool filled) {
		body << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"4\" fill=\""
		     << (filled ? "black" : "white") << "\" stroke=\"black\"/>\n";
	}
	void text(const std::string& x, const std::string& y, const std::string& s) {
		body << "<text x=\"" << x << "\" y=\"" << y << "\">" << s << "</text>\n";
	}
	std::string finish() const {
		std::ostringstream os;
		os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
		   << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
		   << "<style>line.axis{stroke:#888;} line.tick{stroke:black;} line.edge{stroke:black;} "
		      "text{font-family:monospace;font-size:10px;}</style>\n"
		   << body.str() << "</svg>\n";
		return os.str();
	}
};

struct Extent {
	Rat lo{-1}, hi{1};
	void widen(const Slice& s) {
		lo = std::min(lo, s.min(), [](const Rat& a, const Rat& b) { return a < b; });
		hi = std::max(hi, s.max(), [](const Rat& a, const Rat& b) { return a < b; });
	}
};

constexpr int kScale = 60;

int left_margin(const Extent& e) { return 60 - static_cast<int>((e.lo * Rat(kScale)).floor()); }

void draw_slice(Canvas& c, const Extent& e, int y, const ProjPoint& label, const Slice& s,
                int offset) {
	std::string ys = px_int(y);
	c.line(px(e.lo - Rat(1, 2), kScale, offset), ys, px(e.hi + Rat(1, 2), kScale, offset), ys, "axis");
	for (const auto& v : s.verts) {
		std::string x = px(v, kScale, offset);
		c.line(x, px_int(y - 5), x, px_int(y + 5), "tick");
		c.text(x, px_int(y + 18), v.str());
	}
	c.text(px_int(6), px_int(y + 4), label.str());
}

void draw_markers(Canvas& c, const Extent& e, int ytop, int ybot, Marker minus, Marker plus,
                  int offset) {
	int ymid = (ytop + ybot) / 2;
	c.circle(px(e.lo - Rat(1), kScale, offset), px_int(ymid), minus == Marker::Bullet);
	c.circle(px(e.hi + Rat(1), kScale, offset), px_int(ymid), plus == Marker::Bullet);
}

int canvas_width(const Extent& e, int offset) {
	return static_cast<int>((e.hi * Rat(kScale)).ceil()) + offset + 80;
}

void render_mdiv_into(Canvas& c, const Multidivisor& m, int ytop) {
	Extent e;
	for (const auto& [p, s] : m.slices) e.widen(s);
	int offset = left_margin(e);
	int y = ytop;
	if (m.slices.empty()) {
		c.text(px_int(offset), px_int(y), "all slices trivial");
		y += 30;
	}
	for (const auto& [p, s] : m.slices) {
		draw_slice(c, e, y, p, s, offset);
		y += 60;
	}
	draw_markers(c, e, ytop, y - 60, m.minus, m.plus, offset);
	c.width = std::max(c.width, canvas_width(e, offset));
	c.height = std::max(c.height, y);
}

void render_diagram_into(Canvas& c, const DegenerationDiagram& d, int ytop) {
	Extent e;
	Slice s0 = d.slice0(), ss = d.slice_s();
	e.widen(s0);
	e.widen(ss);
	for (const auto& [p, s] : d.M.slices) e.widen(s);
	int offset = left_margin(e);
	int y0 = ytop, y1 = ytop + 80;
	for (const auto& [i, j] : d.edges)
		c.line(px(s0.verts[i], kScale, offset), px_int(y0), px(ss.verts[j], kScale, offset),
		       px_int(y1), "edge");
	draw_slice(c, e, y0, d.p0, s0, offset);
	draw_slice(c, e, y1, d.ps, ss, offset);
	int y = y1 + 60;
	for (const auto& [p, s] : d.M.slices) {
		if (p == d.p0 || p == d.ps) continue;
		draw_slice(c, e, y, p, s, offset);
		y += 60;
	}
	draw_markers(c, e, y0, y - 60, d.M.minus, d.M.plus, offset);
	c.width = std::max(c.width, canvas_width(e, offset));
	c.height = std::max(c.height, y);
}

} // namespace

std::string render_multidivisor(const Multidivisor& m) {
	Canvas c;
	render_mdiv_into(c, m, 40);
	return c.finish();
}

std::string render_diagram(const DegenerationDiagram& d) {
	Canvas c;
	render_diagram_into(c, d, 40);
	return c.finish();
}

std::string render_path(const DeformationPath& p) {
	Canvas c;
	int y = 40;
	int panel = 0;
	for (const auto& step : p.steps) {
		c.text(px_int(6), px_int(y - 20),
		       "step " + std::to_string(panel++) + " " +
		           (step.direction == StepDirection::Degenerate ? "(degenerate)" : "(deform)"));
		render_diagram_into(c, step.diagram, y);
		y = c.height + 60;
	}
	if (p.steps.empty()) {
		c.text(px_int(6), px_int(y), "empty path");
		c.width = std::max(c.width, 240);
		c.height = y + 20;
	}
	return c.finish();
}

} // namespace cstar
