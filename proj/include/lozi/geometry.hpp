#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace lozi {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend constexpr bool operator==(const Point&, const Point&) = default;
    constexpr Point operator+(Point o) const { return {x + o.x, y + o.y}; }
    constexpr Point operator-(Point o) const { return {x - o.x, y - o.y}; }
    constexpr Point operator*(double s) const { return {x * s, y * s}; }
    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

static_assert(sizeof(Point) == 2 * sizeof(double), "Point must be two packed doubles");

constexpr double dot(Point u, Point v) { return u.x * v.x + u.y * v.y; }
constexpr double cross(Point u, Point v) { return u.x * v.y - u.y * v.x; }
inline double norm(Point u) { return std::hypot(u.x, u.y); }
inline double distance(Point p, Point q) { return norm(p - q); }

struct Segment {
    Point p;
    Point q;

    Segment() = default;
    // Throws ParameterError if p == q.
    Segment(Point p_, Point q_);

    Point direction() const { return q - p; }
    double length() const { return distance(p, q); }
    double slope() const { return (q.y - p.y) / (q.x - p.x); }
};

struct Box {
    double xmin, xmax, ymin, ymax;

    static Box of(Point p, Point q);
    Box padded(double pad) const { return {xmin - pad, xmax + pad, ymin - pad, ymax + pad}; }
    bool overlaps(const Box& o) const {
        return !(xmax < o.xmin || o.xmax < xmin || ymax < o.ymin || o.ymax < ymin);
    }
};

class PolyLine {
public:
    PolyLine() = default;
    // Consecutive duplicates are merged.
    explicit PolyLine(std::vector<Point> vertices);
    PolyLine(std::initializer_list<Point> vertices);

    const std::vector<Point>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    bool empty() const { return vertices_.empty(); }
    std::size_t segment_count() const { return vertices_.size() < 2 ? 0 : vertices_.size() - 1; }
    const Point& operator[](std::size_t i) const { return vertices_[i]; }
    const Point& front() const { return vertices_.front(); }
    const Point& back() const { return vertices_.back(); }
    Segment segment(std::size_t i) const { return Segment(vertices_[i], vertices_[i + 1]); }

    double length() const;
    Box bounds() const;
    double diameter() const;

private:
    std::vector<Point> vertices_;
};

// Exact sign of the orientation determinant of (a, b, c): +1 for a left turn,
// -1 for a right turn, 0 for collinear. Uses a floating-point filter and falls
// back to expansion arithmetic.
int orient2d(Point a, Point b, Point c);

// Exact sign of cross(u, v).
int cross_sign(Point u, Point v);

struct SegmentProximity {
    double distance;
    Point on_first;
    Point on_second;
};

double point_segment_distance(Point p, Point a, Point b);
Point closest_on_segment(Point p, Point a, Point b);
SegmentProximity segment_proximity(Point a0, Point a1, Point b0, Point b1);
double point_polyline_distance(Point p, const PolyLine& line);

}  // namespace lozi
