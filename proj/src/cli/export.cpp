#include "lozi/export.hpp"

#include "lozi/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace lozi {

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void write_arc_csv(std::ostream& os, const ManifoldArc& arc, const std::vector<std::string>& meta) {
    for (const auto& m : meta) os << "# " << m << '\n';
    os << "x,y,label,breakpoint\n";
    for (std::size_t i = 0; i < arc.line.size(); ++i) {
        const Point p = arc.line[i];
        os << csv_number(p.x) << ',' << csv_number(p.y) << ',';
        if (auto it = arc.anchors.find(i); it != arc.anchors.end()) os << it->second.str();
        os << ',';
        if (auto it = arc.breakpoints.find(i); it != arc.breakpoints.end()) os << it->second;
        os << '\n';
    }
}

std::vector<ArcRow> read_arc_csv(std::istream& is) {
    std::vector<ArcRow> rows;
    std::string line;
    bool header = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            if (line != "x,y,label,breakpoint") throw Error("unexpected arc CSV header: " + line);
            header = true;
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (!line.empty() && line.back() == ',') f.emplace_back();
        if (f.size() != 4) throw Error("malformed arc CSV row: " + line);
        ArcRow r;
        r.p = {std::strtod(f[0].c_str(), nullptr), std::strtod(f[1].c_str(), nullptr)};
        r.label = f[2];
        r.breakpoint = f[3].empty() ? -1 : std::stoi(f[3]);
        rows.push_back(std::move(r));
    }
    return rows;
}

namespace {

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

SvgCanvas::SvgCanvas(Box view, double width_px, double height_px) : view_(view), w_(width_px), h_(height_px) {
    if (!(view.xmax > view.xmin && view.ymax > view.ymin)) throw ParameterError("empty SVG viewport");
}

Point SvgCanvas::to_px(Point p) const {
    const double sx = (w_ - 2 * margin_) / (view_.xmax - view_.xmin);
    const double sy = (h_ - 2 * margin_) / (view_.ymax - view_.ymin);
    return {margin_ + (p.x - view_.xmin) * sx, h_ - margin_ - (p.y - view_.ymin) * sy};
}

void SvgCanvas::polyline(const std::vector<Point>& pts, const std::string& color, double stroke) {
    if (pts.empty()) return;
    std::string s = "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + px(stroke) + "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Point q = to_px(pts[i]);
        if (i) s += ' ';
        s += px(q.x) + ',' + px(q.y);
    }
    body_.push_back(s + "\"/>");
}

void SvgCanvas::line(Point p, Point q, const std::string& color, double stroke, bool dashed) {
    const Point a = to_px(p), b = to_px(q);
    body_.push_back("<line x1=\"" + px(a.x) + "\" y1=\"" + px(a.y) + "\" x2=\"" + px(b.x) + "\" y2=\"" + px(b.y) +
                    "\" stroke=\"" + color + "\" stroke-width=\"" + px(stroke) + "\"" +
                    (dashed ? " stroke-dasharray=\"4 3\"" : "") + "/>");
}

void SvgCanvas::dot(Point p, const std::string& color, double radius) {
    const Point a = to_px(p);
    body_.push_back("<circle cx=\"" + px(a.x) + "\" cy=\"" + px(a.y) + "\" r=\"" + px(radius) + "\" fill=\"" + color +
                    "\"/>");
}

void SvgCanvas::label(Point p, const std::string& text, const std::string& color, double size) {
    const Point a = to_px(p);
    body_.push_back("<text x=\"" + px(a.x + 4) + "\" y=\"" + px(a.y - 4) + "\" font-family=\"sans-serif\" font-size=\"" +
                    px(size) + "\" fill=\"" + color + "\">" + escape(text) + "</text>");
}

void SvgCanvas::cell(const Box& box, const std::string& fill) {
    const Point tl = to_px({box.xmin, box.ymax}), br = to_px({box.xmax, box.ymin});
    body_.push_back("<rect shape-rendering=\"crispEdges\" x=\"" + px(tl.x) + "\" y=\"" + px(tl.y) + "\" width=\"" + px(br.x - tl.x) + "\" height=\"" +
                    px(br.y - tl.y) + "\" fill=\"" + fill + "\"/>");
}

void SvgCanvas::axes(const std::string& xname, const std::string& yname) {
    const double x0 = std::clamp(0.0, view_.xmin, view_.xmax);
    const double y0 = std::clamp(0.0, view_.ymin, view_.ymax);
    line({view_.xmin, y0}, {view_.xmax, y0}, "#555555", 0.8);
    line({x0, view_.ymin}, {x0, view_.ymax}, "#555555", 0.8);
    // Tick labels at the viewport corners.
    const Point bl = to_px({view_.xmin, view_.ymin});
    const Point tr = to_px({view_.xmax, view_.ymax});
    auto tick = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", v);
        return std::string(buf);
    };
    frame_.push_back("<text x=\"" + px(bl.x) + "\" y=\"" + px(bl.y + 16) + "\" font-family=\"sans-serif\" font-size=\"10\">" +
                    tick(view_.xmin) + "</text>");
    frame_.push_back("<text x=\"" + px(tr.x - 20) + "\" y=\"" + px(bl.y + 16) +
                    "\" font-family=\"sans-serif\" font-size=\"10\">" + tick(view_.xmax) + "</text>");
    frame_.push_back("<text x=\"" + px(bl.x - 36) + "\" y=\"" + px(bl.y) + "\" font-family=\"sans-serif\" font-size=\"10\">" +
                    tick(view_.ymin) + "</text>");
    frame_.push_back("<text x=\"" + px(bl.x - 36) + "\" y=\"" + px(tr.y + 8) +
                    "\" font-family=\"sans-serif\" font-size=\"10\">" + tick(view_.ymax) + "</text>");
    frame_.push_back("<text x=\"" + px((bl.x + tr.x) / 2) + "\" y=\"" + px(bl.y + 30) +
                    "\" font-family=\"sans-serif\" font-size=\"12\">" + escape(xname) + "</text>");
    frame_.push_back("<text x=\"" + px(bl.x - 30) + "\" y=\"" + px((bl.y + tr.y) / 2) +
                    "\" font-family=\"sans-serif\" font-size=\"12\">" + escape(yname) + "</text>");
}

void SvgCanvas::title(const std::string& text) {
    frame_.push_back("<text x=\"" + px(margin_) + "\" y=\"" + px(margin_ / 2 + 4) +
                    "\" font-family=\"sans-serif\" font-size=\"13\">" + escape(text) + "</text>");
}

std::string SvgCanvas::str() const {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<!-- lozi " << kVersion << " -->\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << px(w_) << "\" height=\"" << px(h_)
       << "\" viewBox=\"0 0 " << px(w_) << ' ' << px(h_) << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<defs><clipPath id=\"plot\"><rect x=\"" << px(margin_) << "\" y=\"" << px(margin_) << "\" width=\""
       << px(w_ - 2 * margin_) << "\" height=\"" << px(h_ - 2 * margin_) << "\"/></clipPath></defs>\n"
       << "<g clip-path=\"url(#plot)\">\n";
    for (const auto& e : body_) os << e << '\n';
    os << "</g>\n";
    for (const auto& e : frame_) os << e << '\n';
    os << "</svg>\n";
    return os.str();
}

}  // namespace lozi
