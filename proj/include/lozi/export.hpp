#pragma once

#include "lozi/geometry.hpp"
#include "lozi/manifolds.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace lozi {

inline constexpr const char* kVersion = "0.1.0";

// 17 significant digits in scientific notation; parses back bit-equal.
std::string csv_number(double v);

struct ArcRow {
    Point p;
    std::string label;
    int breakpoint = -1;  // creation depth, -1 for ordinary vertices
};

// Columns x,y,label,breakpoint, preceded by '#'-prefixed metadata lines.
void write_arc_csv(std::ostream& os, const ManifoldArc& arc, const std::vector<std::string>& meta);
std::vector<ArcRow> read_arc_csv(std::istream& is);

// Minimal SVG 1.1 writer with a y-up data frame mapped onto the canvas.
class SvgCanvas {
public:
    SvgCanvas(Box view, double width_px, double height_px);

    void polyline(const std::vector<Point>& pts, const std::string& color, double stroke = 1.0);
    void line(Point p, Point q, const std::string& color, double stroke = 1.0, bool dashed = false);
    void dot(Point p, const std::string& color, double radius = 2.5);
    void label(Point p, const std::string& text, const std::string& color, double size = 11.0);
    // Axis-aligned cell in data coordinates.
    void cell(const Box& box, const std::string& fill);
    void axes(const std::string& xname, const std::string& yname);
    void title(const std::string& text);

    std::string str() const;

private:
    Point to_px(Point p) const;

    Box view_;
    double w_, h_;
    double margin_ = 40.0;
    std::vector<std::string> body_;   // clipped to the plot area
    std::vector<std::string> frame_;  // tick labels and titles
};

}  // namespace lozi
