#include "lozi/geometry.hpp"

#include "lozi/error.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <utility>

namespace lozi {

Segment::Segment(Point p_, Point q_) : p(p_), q(q_) {
    if (p == q) throw ParameterError("segment endpoints coincide");
}

Box Box::of(Point p, Point q) {
    return {std::min(p.x, q.x), std::max(p.x, q.x), std::min(p.y, q.y), std::max(p.y, q.y)};
}

PolyLine::PolyLine(std::vector<Point> vertices) {
    vertices_.reserve(vertices.size());
    for (const Point& v : vertices)
        if (vertices_.empty() || !(vertices_.back() == v)) vertices_.push_back(v);
}

PolyLine::PolyLine(std::initializer_list<Point> vertices)
    : PolyLine(std::vector<Point>(vertices)) {}

double PolyLine::length() const {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) s += distance(vertices_[i], vertices_[i + 1]);
    return s;
}

Box PolyLine::bounds() const {
    Box b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
          std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const Point& v : vertices_) {
        b.xmin = std::min(b.xmin, v.x);
        b.xmax = std::max(b.xmax, v.x);
        b.ymin = std::min(b.ymin, v.y);
        b.ymax = std::max(b.ymax, v.y);
    }
    return b;
}

double PolyLine::diameter() const {
    if (vertices_.empty()) return 0.0;
    Box b = bounds();
    return std::hypot(b.xmax - b.xmin, b.ymax - b.ymin);
}

namespace {

// Error-free transformations (Knuth two-sum, fma-based two-product).
inline void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    double bv = s - a;
    double av = s - bv;
    e = (a - av) + (b - bv);
}

inline void two_product(double a, double b, double& p, double& e) {
    p = a * b;
    e = std::fma(a, b, -p);
}

inline void two_diff(double a, double b, double& s, double& e) {
    s = a - b;
    double bv = a - s;
    double av = s + bv;
    e = (a - av) + (bv - b);
}

// Adds a scalar to a nonoverlapping expansion (Shewchuk's grow-expansion).
int grow_expansion(int n, const double* e, double b, double* h) {
    double q = b;
    for (int i = 0; i < n; ++i) two_sum(q, e[i], q, h[i]);
    h[n] = q;
    return n + 1;
}

int expansion_sum(int n, const double* e, int m, const double* f, double* h) {
    std::array<double, 32> buf{};
    std::copy(e, e + n, buf.begin());
    int len = n;
    for (int j = 0; j < m; ++j) {
        std::array<double, 32> tmp{};
        len = grow_expansion(len, buf.data(), f[j], tmp.data());
        buf = tmp;
    }
    std::copy(buf.begin(), buf.begin() + len, h);
    return len;
}

int expansion_sign(int n, const double* e) {
    // Components are ordered by increasing magnitude; the sum's sign is that of
    // the largest nonzero component.
    for (int i = n - 1; i >= 0; --i) {
        if (e[i] > 0) return 1;
        if (e[i] < 0) return -1;
    }
    return 0;
}

// Exact sign of ux*vy - uy*vx where the inputs are themselves exact differences
// represented as two-term expansions (hi, lo).
int exact_cross_sign(const double u[2][2], const double v[2][2]) {
    // u = (ux_hi + ux_lo, uy_hi + uy_lo); the product of two 2-expansions is a
    // sum of four exact products, each a 2-expansion.
    std::array<double, 32> acc{};
    int len = 0;
    auto add_product = [&](double a, double b, double sign) {
        double p, e;
        two_product(a, b, p, e);
        double term[2] = {sign * e, sign * p};
        std::array<double, 32> out{};
        len = expansion_sum(len, acc.data(), 2, term, out.data());
        acc = out;
    };
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            add_product(u[0][i], v[1][j], 1.0);
            add_product(u[1][i], v[0][j], -1.0);
        }
    return expansion_sign(len, acc.data());
}

}  // namespace

int cross_sign(Point u, Point v) {
    double l = u.x * v.y;
    double r = u.y * v.x;
    double det = l - r;
    double bound = 4.0 * std::numeric_limits<double>::epsilon() * (std::fabs(l) + std::fabs(r));
    if (det > bound) return 1;
    if (-det > bound) return -1;
    const double uu[2][2] = {{u.x, 0.0}, {u.y, 0.0}};
    const double vv[2][2] = {{v.x, 0.0}, {v.y, 0.0}};
    return exact_cross_sign(uu, vv);
}

int orient2d(Point a, Point b, Point c) {
    double detl = (b.x - a.x) * (c.y - a.y);
    double detr = (b.y - a.y) * (c.x - a.x);
    double det = detl - detr;
    double bound = 8.0 * std::numeric_limits<double>::epsilon() * (std::fabs(detl) + std::fabs(detr));
    if (det > bound) return 1;
    if (-det > bound) return -1;
    double u[2][2], v[2][2];
    two_diff(b.x, a.x, u[0][0], u[0][1]);
    two_diff(b.y, a.y, u[1][0], u[1][1]);
    two_diff(c.x, a.x, v[0][0], v[0][1]);
    two_diff(c.y, a.y, v[1][0], v[1][1]);
    return exact_cross_sign(u, v);
}

Point closest_on_segment(Point p, Point a, Point b) {
    // Measure from the nearer endpoint: long segments lose absolute precision far from their origin.
    if (distance(p, b) < distance(p, a)) std::swap(a, b);
    Point d = b - a;
    double len2 = dot(d, d);
    if (len2 == 0.0) return a;
    double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
    return a + d * t;
}

double point_segment_distance(Point p, Point a, Point b) {
    return distance(p, closest_on_segment(p, a, b));
}

SegmentProximity segment_proximity(Point a0, Point a1, Point b0, Point b1) {
    int o1 = orient2d(a0, a1, b0), o2 = orient2d(a0, a1, b1);
    int o3 = orient2d(b0, b1, a0), o4 = orient2d(b0, b1, a1);
    if (o1 * o2 < 0 && o3 * o4 < 0) {
        // Walk along the shorter segment from the endpoint pair that lies closest together.
        if (distance(b0, b1) < distance(a0, a1)) {
            std::swap(a0, b0);
            std::swap(a1, b1);
        }
        if (std::min(distance(a1, b0), distance(a1, b1)) < std::min(distance(a0, b0), distance(a0, b1))) std::swap(a0, a1);
        if (distance(a0, b1) < distance(a0, b0)) std::swap(b0, b1);
        Point da = a1 - a0, db = b1 - b0;
        double t = cross(b0 - a0, db) / cross(da, db);
        Point x = a0 + da * std::clamp(t, 0.0, 1.0);
        return {0.0, x, x};
    }
    std::array<SegmentProximity, 4> c = {{
        {0, a0, closest_on_segment(a0, b0, b1)},
        {0, a1, closest_on_segment(a1, b0, b1)},
        {0, closest_on_segment(b0, a0, a1), b0},
        {0, closest_on_segment(b1, a0, a1), b1},
    }};
    for (auto& s : c) s.distance = distance(s.on_first, s.on_second);
    return *std::min_element(c.begin(), c.end(), [](const auto& l, const auto& r) {
        return l.distance < r.distance;
    });
}

double point_polyline_distance(Point p, const PolyLine& line) {
    if (line.empty()) return std::numeric_limits<double>::infinity();
    if (line.size() == 1) return distance(p, line[0]);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < line.size(); ++i)
        best = std::min(best, point_segment_distance(p, line[i], line[i + 1]));
    return best;
}

}  // namespace lozi
