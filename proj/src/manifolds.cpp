#include "lozi/manifolds.hpp"

#include "lozi/error.hpp"

#include <algorithm>
#include <cmath>

namespace lozi {

std::string AnchorLabel::str() const {
    switch (base) {
        case Base::X: return "X";
        case Base::Z: return power == 0 ? "Z" : "Z^" + std::to_string(power);
        case Base::V: return power == 0 ? "V" : "V^" + std::to_string(power);
    }
    return "?";
}

Point AnchorLabel::point(const Params& params) const {
    switch (base) {
        case Base::X: return fixed_point_X(params);
        case Base::Z: return iterate(params, point_Z(params), power);
        case Base::V: return iterate(params, point_V(params), power);
    }
    return {};
}

std::optional<std::size_t> ManifoldArc::find(const AnchorLabel& label) const {
    for (const auto& [i, l] : anchors)
        if (l == label) return i;
    return std::nullopt;
}

PolyLine ManifoldArc::slice(const AnchorLabel& from, const AnchorLabel& to) const {
    auto i = find(from), j = find(to);
    if (!i || !j) throw InsufficientDepthError("anchor " + (i ? to : from).str() + " not on the arc");
    const auto& vs = line.vertices();
    std::vector<Point> out;
    if (*i <= *j) {
        out.assign(vs.begin() + *i, vs.begin() + *j + 1);
    } else {
        out.assign(vs.begin() + *j, vs.begin() + *i + 1);
        std::reverse(out.begin(), out.end());
    }
    return PolyLine(std::move(out));
}

namespace {

void require_main(const Params& params) {
    if (!params.main_region()) throw ParameterError("manifold construction needs the main region");
}

struct Tag {
    std::optional<AnchorLabel> anchor;
    int break_age = 0;  // 0: not a breakpoint
};

struct TaggedLine {
    std::vector<Point> pts;
    std::vector<Tag> tags;
};

// A break-line point that is itself an anchor: Z^{-1} on the y-axis for the
// unstable arc, V^1 on the x-axis for the stable arc.
struct AxisAnchor {
    Point where;
    AnchorLabel label;
};

TaggedLine map_tagged(const Params& params, const TaggedLine& in, Direction dir, const AxisAnchor& axis_anchor) {
    const MappedPolyLine m = map_polyline_traced(params, PolyLine(in.pts), dir);
    // PolyLine merges duplicates, which map_polyline_traced accounts for via
    // its own origin list; the input here never has duplicates.
    const int shift = dir == Direction::forward ? 1 : -1;
    const double snap = 1e-9 * std::max(1.0, norm(axis_anchor.where));

    TaggedLine out;
    out.pts = m.line.vertices();
    out.tags.resize(out.pts.size());
    // Reconstruct inserted crossing preimages from the images: the inverse of
    // the forward (backward) map restricted to the x-axis (y-axis) is affine.
    for (std::size_t i = 0; i < out.pts.size(); ++i) {
        const VertexOrigin& o = m.origin[i];
        Tag t;
        if (o.source != VertexOrigin::npos) {
            const Tag& src = in.tags[o.source];
            if (src.anchor) t.anchor = src.anchor->shifted(shift);
            if (src.break_age) t.break_age = src.break_age + 1;
        } else {
            // Image of a crossing; recover the crossing point itself.
            const Point img = out.pts[i];
            const Point pre = dir == Direction::forward ? Point{0.0, img.x - 1.0}
                                                        : Point{img.y + 1.0, 0.0};
            if (distance(pre, axis_anchor.where) < snap) t.anchor = axis_anchor.label.shifted(shift);
        }
        if (o.on_break_line) t.break_age = 1;
        out.tags[i] = t;
    }
    return out;
}

// Removes interior vertices that are neither anchors nor breakpoints and sit
// on a straight run.
void prune_collinear(TaggedLine& line) {
    if (line.pts.size() < 3) return;
    TaggedLine out;
    out.pts.push_back(line.pts[0]);
    out.tags.push_back(line.tags[0]);
    for (std::size_t i = 1; i + 1 < line.pts.size(); ++i) {
        const Tag& t = line.tags[i];
        if (!t.anchor && !t.break_age) {
            Point u = line.pts[i] - out.pts.back(), v = line.pts[i + 1] - line.pts[i];
            if (std::fabs(cross(u, v)) < 1e-12 * norm(u) * norm(v) && dot(u, v) > 0) continue;
        }
        out.pts.push_back(line.pts[i]);
        out.tags.push_back(t);
    }
    out.pts.push_back(line.pts.back());
    out.tags.push_back(line.tags.back());
    line = std::move(out);
}

// Inserts `label` as a vertex on the nearest segment if it is not yet present.
void ensure_anchor(const Params& params, TaggedLine& line, const AnchorLabel& label) {
    for (const Tag& t : line.tags)
        if (t.anchor && *t.anchor == label) return;
    const Point p = label.point(params);
    std::size_t best = 0;
    double best_d = INFINITY;
    for (std::size_t i = 0; i + 1 < line.pts.size(); ++i) {
        double d = point_segment_distance(p, line.pts[i], line.pts[i + 1]);
        if (d < best_d) best_d = d, best = i;
    }
    const double scale = std::max(1.0, norm(p));
    if (!(best_d < 1e-9 * scale)) return;
    const Point q = closest_on_segment(p, line.pts[best], line.pts[best + 1]);
    for (std::size_t k : {best, best + 1})
        if (distance(q, line.pts[k]) < 1e-12 * scale) {
            line.tags[k].anchor = label;
            return;
        }
    // Keep the exact iterate when it only misses the segment by rounding.
    line.pts.insert(line.pts.begin() + best + 1, best_d <= 1e-13 * scale ? p : q);
    Tag t;
    t.anchor = label;
    line.tags.insert(line.tags.begin() + best + 1, t);
}

ManifoldArc finish(ArcKind kind, TaggedLine&& line, int depth) {
    ManifoldArc arc;
    arc.kind = kind;
    arc.depth = depth;
    for (std::size_t i = 0; i < line.tags.size(); ++i) {
        if (line.tags[i].anchor) arc.anchors[i] = *line.tags[i].anchor;
        if (line.tags[i].break_age) arc.breakpoints[i] = line.tags[i].break_age;
    }
    arc.line = PolyLine(std::move(line.pts));
    if (arc.line.size() != line.tags.size()) throw Error("internal: duplicate vertices in manifold arc");
    return arc;
}

}  // namespace

ManifoldArc unstable_arc(const Params& params, int pairs, std::size_t max_vertices) {
    require_main(params);
    if (pairs < 1) throw ParameterError("pairs must be at least 1");
    const Point X = fixed_point_X(params), Z = point_Z(params);
    // L^{-1}(Z) evaluated on the x-axis lands exactly on the y-axis.
    const Point Zm1{0.0, Z.x - 1.0};

    TaggedLine line;
    line.pts = {Zm1, X, Z};
    line.tags = {Tag{AnchorLabel::Z(-1), 0}, Tag{AnchorLabel::X(), 0}, Tag{AnchorLabel::Z(0), 0}};
    const AxisAnchor axis{Zm1, AnchorLabel::Z(-1)};
    for (int step = 0; step < 2 * pairs; ++step) {
        TaggedLine next = map_tagged(params, line, Direction::forward, axis);
        prune_collinear(next);
        if (next.pts.size() > max_vertices)
            throw TruncationError("unstable arc exceeds the vertex budget", step);
        line = std::move(next);
    }
    for (int k = -1; k <= 2 * pairs; ++k) ensure_anchor(params, line, AnchorLabel::Z(k));
    return finish(ArcKind::unstable, std::move(line), 2 * pairs);
}

ManifoldArc stable_arc(const Params& params, int steps, std::size_t max_vertices) {
    require_main(params);
    if (steps < 0) throw ParameterError("steps must be nonnegative");
    const Point X = fixed_point_X(params), V = point_V(params);
    // L(V) evaluated on the y-axis lands exactly on the x-axis.
    const Point V1{1.0 + V.y, 0.0};
    const AxisAnchor axis{V1, AnchorLabel::V(1)};

    TaggedLine tail;
    tail.pts = {V1, V};
    tail.tags = {Tag{AnchorLabel::V(1), 0}, Tag{AnchorLabel::V(0), 0}};
    for (int step = 0; step < steps; ++step) {
        TaggedLine mapped = map_tagged(params, tail, Direction::backward, axis);
        TaggedLine next;
        next.pts.reserve(mapped.pts.size() + 1);
        next.pts.push_back(V1);
        next.tags.push_back(Tag{AnchorLabel::V(1), 0});
        next.pts.insert(next.pts.end(), mapped.pts.begin(), mapped.pts.end());
        next.tags.insert(next.tags.end(), mapped.tags.begin(), mapped.tags.end());
        prune_collinear(next);
        if (next.pts.size() + 1 > max_vertices)
            throw TruncationError("stable arc exceeds the vertex budget", step);
        tail = std::move(next);
    }
    TaggedLine line;
    line.pts.push_back(X);
    line.tags.push_back(Tag{AnchorLabel::X(), 0});
    line.pts.insert(line.pts.end(), tail.pts.begin(), tail.pts.end());
    line.tags.insert(line.tags.end(), tail.tags.begin(), tail.tags.end());
    for (int k = 1; k >= -steps; --k) ensure_anchor(params, line, AnchorLabel::V(k));
    return finish(ArcKind::stable, std::move(line), steps);
}

int default_stable_steps(const Params& params) { return 2 * zigzag_index(params) + 6; }

SlopeSequence slope_sequence(const Params& params, int n) {
    require_main(params);
    if (n < 0) throw ParameterError("n must be nonnegative");
    const double a = params.a(), b = params.b(), r = params.root();
    SlopeSequence s{};
    s.s0 = 0.5 * (a + r);
    s.M1 = 0.5 * (-a - r);
    s.M2 = 2.0 * b / (a + r);
    s.mu = s.M2 / s.M1;
    s.j0 = (a + r) / a;
    s.values.reserve(static_cast<std::size_t>(n) + 1);
    s.values.push_back(s.s0);
    for (int k = 0; k < n; ++k) {
        const double cur = s.values.back();
        if (std::fabs(cur) < 1e-13) {
            s.singular = true;
            break;
        }
        s.values.push_back(b / cur - a);
    }
    return s;
}

double slope_closed_form(const Params& params, int n) {
    require_main(params);
    if (n < 0) throw ParameterError("n must be nonnegative");
    const double a = params.a(), b = params.b(), r = params.root();
    if (n == 0) return 0.5 * (a + r);
    const double M1 = 0.5 * (-a - r), M2 = 2.0 * b / (a + r);
    const double jn = std::pow(M2 / M1, n) * (a + r) / a;
    return (M1 - M2 * jn) / (1.0 - jn);
}

bool in_open_quadrant(Point p, int quadrant) {
    const bool xp = p.x > kAxisSnap, xn = p.x < -kAxisSnap;
    const bool yp = p.y > kAxisSnap, yn = p.y < -kAxisSnap;
    switch (quadrant) {
        case 1: return xp && yp;
        case 2: return xn && yp;
        case 3: return xn && yn;
        case 4: return xp && yn;
    }
    return false;
}

bool in_closed_quadrant(Point p, int quadrant) {
    switch (quadrant) {
        case 1: return p.x >= -kAxisSnap && p.y >= -kAxisSnap;
        case 2: return p.x <= kAxisSnap && p.y >= -kAxisSnap;
        case 3: return p.x <= kAxisSnap && p.y <= kAxisSnap;
        case 4: return p.x >= -kAxisSnap && p.y <= kAxisSnap;
    }
    return false;
}

int zigzag_index(const Params& params, int max_iter) {
    require_main(params);
    Point p = point_V(params);
    for (int n = 1; n <= max_iter; ++n) {
        p = apply_inverse(params, p);
        if (!p.finite()) throw DivergenceError("backward orbit of V diverged", -n);
        if (in_open_quadrant(p, 2)) return n;
    }
    throw ExhaustionError("no backward iterate of V in the second quadrant within max_iter");
}

std::vector<Segment> zigzag_legs(const Params& params) {
    const int n0 = zigzag_index(params);
    std::vector<Segment> legs;
    legs.reserve(static_cast<std::size_t>(n0));
    Point prev = point_V(params);
    for (int n = 1; n <= n0; ++n) {
        Point next = apply_inverse(params, prev);
        legs.emplace_back(prev, next);
        prev = next;
    }
    return legs;
}

UnstablePieces unstable_pieces(const Params& params, int count, std::size_t max_vertices) {
    UnstablePieces out;
    if (count <= 0) return out;
    const ManifoldArc arc = unstable_arc(params, count, max_vertices);
    for (int n = 0; n < count; ++n) {
        out.gamma.push_back(arc.slice(AnchorLabel::Z(2 * n - 1), AnchorLabel::Z(2 * n + 1)));
        out.delta.push_back(arc.slice(AnchorLabel::Z(2 * n), AnchorLabel::Z(2 * n + 2)));
    }
    return out;
}

std::optional<int> first_delta_crossing(const Params& params, int count) {
    const UnstablePieces pieces = unstable_pieces(params, count);
    for (int i = 0; i < count; ++i) {
        const auto& vs = pieces.delta[static_cast<std::size_t>(i)].vertices();
        const bool crosses = std::any_of(vs.begin(), vs.end(), [](Point p) { return p.x < kAxisSnap; });
        if (crosses) return i;
    }
    return std::nullopt;
}

}  // namespace lozi
