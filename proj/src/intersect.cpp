#include "lozi/intersect.hpp"

#include "lozi/error.hpp"
#include "lozi/simd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

namespace lozi {

std::string to_string(ContactKind kind) {
    switch (kind) {
        case ContactKind::tangential: return "tangential";
        case ContactKind::transversal: return "transversal";
        case ContactKind::undetermined: return "undetermined";
    }
    return "?";
}

std::string to_string(OrbitFlag flag) {
    switch (flag) {
        case OrbitFlag::z_orbit: return "Z-orbit";
        case OrbitFlag::v_orbit: return "V-orbit";
        case OrbitFlag::z_and_v: return "Z+V-orbit";
        case OrbitFlag::other: return "other";
    }
    return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t npos = static_cast<std::size_t>(-1);

Point unit(Point v) {
    const double n = norm(v);
    return {v.x / n, v.y / n};
}

struct LocalPiece {
    std::size_t seg_lo = 0, seg_hi = 0;  // incident segments, inclusive range
    std::size_t vertex = npos;           // corner vertex, if any
    Point ray1, ray2;                    // unit directions of the two branches
    bool crowded = false;                // another fold of the arc within reach
    double feature_distance = kInf;      // to the nearest non-incident feature
};

LocalPiece local_piece(const PolyLine& L, Point T, double snap) {
    const std::size_t n = L.size();
    if (n < 2) throw ParameterError("arc needs at least two vertices");
    std::size_t best_v = npos, best_s = 0;
    double dv = kInf, ds = kInf;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double d = distance(T, L[i]);
        if (d < dv) dv = d, best_v = i;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double d = point_segment_distance(T, L[i], L[i + 1]);
        if (d < ds) ds = d, best_s = i;
    }
    LocalPiece lp;
    if (best_v != npos && dv <= snap) {
        lp.vertex = best_v;
        lp.seg_lo = best_v - 1;
        lp.seg_hi = best_v;
        lp.ray1 = unit(L[best_v - 1] - L[best_v]);
        lp.ray2 = unit(L[best_v + 1] - L[best_v]);
    } else {
        lp.seg_lo = lp.seg_hi = best_s;
        lp.ray1 = unit(L[best_s] - L[best_s + 1]);
        lp.ray2 = unit(L[best_s + 1] - L[best_s]);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (i >= lp.seg_lo && i <= lp.seg_hi) continue;
        const double d = point_segment_distance(T, L[i], L[i + 1]);
        if (d <= snap) lp.crowded = true;
        lp.feature_distance = std::min(lp.feature_distance, d);
    }
    // Far ends of the incident segments bound the disk as well.
    lp.feature_distance = std::min(lp.feature_distance, distance(T, L[lp.seg_lo]));
    lp.feature_distance = std::min(lp.feature_distance, distance(T, L[lp.seg_hi + 1]));
    return lp;
}

// 1: u strictly inside the counterclockwise sweep from w1 to w2;
// 2: strictly inside the complementary sweep; 0: along w1 or w2.
int sector_side(Point w1, Point w2, Point u) {
    if (cross_sign(w1, u) == 0 && dot(w1, u) > 0) return 0;
    if (cross_sign(w2, u) == 0 && dot(w2, u) > 0) return 0;
    const int c12 = cross_sign(w1, w2);
    bool inside;
    if (c12 > 0)
        inside = cross_sign(w1, u) > 0 && cross_sign(u, w2) > 0;
    else if (c12 < 0)
        inside = cross_sign(w1, u) > 0 || cross_sign(u, w2) > 0;
    else if (dot(w1, w2) > 0)
        inside = false;  // the arc folds back onto itself: empty sweep
    else
        inside = cross_sign(w1, u) > 0;
    return inside ? 1 : 2;
}

struct CoreResult {
    ContactKind kind;
    double margin;
    bool crowded;
};

CoreResult classify_core(const PolyLine& A, const PolyLine& B, Point T, double tol) {
    const double snap = 10.0 * tol;
    const LocalPiece pa = local_piece(A, T, snap);
    const LocalPiece pb = local_piece(B, T, snap);
    const int s1 = sector_side(pa.ray1, pa.ray2, pb.ray1);
    const int s2 = sector_side(pa.ray1, pa.ray2, pb.ray2);
    const bool transversal = (s1 == 1 && s2 == 2) || (s1 == 2 && s2 == 1);

    const double eps = 0.5 * std::min(pa.feature_distance, pb.feature_distance);
    double m = 1.0;
    for (Point u : {pb.ray1, pb.ray2})
        for (Point w : {pa.ray1, pa.ray2}) {
            const double c = std::fabs(cross(u, w));
            m = std::min(m, dot(u, w) > 0 ? c : 1.0);
        }
    return {transversal ? ContactKind::transversal : ContactKind::tangential, eps * m, pa.crowded || pb.crowded};
}

void check_termini(const PolyLine& L, Point T, double tol) {
    if (distance(T, L.front()) < 2.0 * tol || distance(T, L.back()) < 2.0 * tol)
        throw BoundaryAmbiguityError("contact lies at a truncation end of an arc");
}

bool near_vertex(const PolyLine& L, Point T, double r) {
    for (const Point& v : L.vertices())
        if (distance(v, T) <= r) return true;
    return false;
}

struct Candidate {
    Point point;
    double gap;
    std::size_t seg_a, seg_b;
};

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
}

// A candidate within tol of both segments meeting at a vertex cannot be told
// apart from that vertex; thin folds otherwise yield spurious crossings on
// both arms away from the apex.
bool snap_to_fold(const PolyLine& L, std::size_t seg, Point& p, double tol) {
    for (std::size_t v : {seg, seg + 1}) {
        if (v == 0 || v + 1 >= L.size()) continue;
        if (point_segment_distance(p, L[v - 1], L[v]) <= tol && point_segment_distance(p, L[v], L[v + 1]) <= tol) {
            p = L[v];
            return true;
        }
    }
    return false;
}

std::vector<Candidate> cluster(std::vector<Candidate> cands, double radius) {
    std::sort(cands.begin(), cands.end(), [](const Candidate& l, const Candidate& r) {
        if (l.point.x != r.point.x) return l.point.x < r.point.x;
        if (l.point.y != r.point.y) return l.point.y < r.point.y;
        return std::tie(l.seg_a, l.seg_b) < std::tie(r.seg_a, r.seg_b);
    });
    std::vector<std::size_t> parent(cands.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    for (std::size_t i = 0; i < cands.size(); ++i)
        for (std::size_t j = i + 1; j < cands.size() && cands[j].point.x - cands[i].point.x <= radius; ++j)
            if (distance(cands[i].point, cands[j].point) <= radius)
                parent[find_root(parent, j)] = find_root(parent, i);
    std::vector<std::size_t> best(cands.size(), npos);
    for (std::size_t i = 0; i < cands.size(); ++i) {
        const std::size_t r = find_root(parent, i);
        if (best[r] == npos) {
            best[r] = i;
            continue;
        }
        const Candidate& c = cands[i];
        const Candidate& b = cands[best[r]];
        if (c.gap < b.gap || (c.gap == b.gap && std::tie(c.seg_a, c.seg_b) < std::tie(b.seg_a, b.seg_b)))
            best[r] = i;
    }
    std::vector<Candidate> out;
    for (std::size_t i = 0; i < cands.size(); ++i)
        if (best[i] != npos) out.push_back(cands[best[i]]);
    return out;
}

}  // namespace

Classification classify_detailed(const PolyLine& A, const PolyLine& B, Point T, double tol) {
    if (!(tol > 0.0)) throw ParameterError("tolerance must be positive");
    check_termini(A, T, tol);
    check_termini(B, T, tol);
    const CoreResult base = classify_core(A, B, T, tol);
    bool unstable = base.crowded || base.margin < 10.0 * tol;
    for (double t = 0.5 * tol; !unstable && t >= 1e-12; t *= 0.5) {
        const CoreResult r = classify_core(A, B, T, t);
        if (r.kind != base.kind) unstable = true;
    }
    return {base.kind, base.margin, unstable};
}

ContactKind classify_intersection(const PolyLine& A, const PolyLine& B, Point T, double tol) {
    return classify_detailed(A, B, T, tol).kind;
}

std::vector<IntersectionRecord> polyline_intersections(const PolyLine& A, const PolyLine& B, double tol) {
    if (A.empty() || B.empty()) throw ParameterError("arcs must be nonempty");
    if (!(tol > 0.0)) throw ParameterError("tolerance must be positive");
    const simd::BoxBatch boxes = simd::BoxBatch::of_segments(B);
    std::vector<Candidate> cands;
    std::vector<std::uint32_t> hits;
    for (std::size_t i = 0; i < A.segment_count(); ++i) {
        hits.clear();
        simd::overlapping(boxes, Box::of(A[i], A[i + 1]).padded(tol), hits);
        for (std::uint32_t j : hits) {
            const SegmentProximity p = segment_proximity(A[i], A[i + 1], B[j], B[j + 1]);
            if (p.distance > tol) continue;
            Point q = (p.on_first + p.on_second) * 0.5;
            if (snap_to_fold(B, j, q, tol) || snap_to_fold(A, i, q, tol))
                cands.push_back({q, std::min(point_segment_distance(q, A[i], A[i + 1]),
                                             point_segment_distance(q, B[j], B[j + 1])), i, j});
            else
                cands.push_back({q, p.distance, i, j});
        }
    }
    std::vector<IntersectionRecord> out;
    for (const Candidate& c : cluster(std::move(cands), 10.0 * tol)) {
        IntersectionRecord r;
        r.point = c.point;
        r.seg_a = c.seg_a;
        r.seg_b = c.seg_b;
        r.tol = tol;
        r.vertex_a = near_vertex(A, c.point, 10.0 * tol);
        r.vertex_b = near_vertex(B, c.point, 10.0 * tol);
        try {
            const Classification cl = classify_detailed(A, B, c.point, tol);
            r.kind = cl.kind;
            r.margin = cl.margin;
            r.unstable_classification = cl.unstable;
        } catch (const BoundaryAmbiguityError&) {
            r.kind = ContactKind::undetermined;
        }
        out.push_back(r);
    }
    std::sort(out.begin(), out.end(), [](const IntersectionRecord& l, const IntersectionRecord& r) {
        return std::tie(l.seg_a, l.seg_b, l.point.x, l.point.y) < std::tie(r.seg_a, r.seg_b, r.point.x, r.point.y);
    });
    return out;
}

std::vector<IntersectionRecord> self_intersections(const PolyLine& line, double tol) {
    std::vector<IntersectionRecord> out;
    const std::size_t m = line.segment_count();
    const simd::BoxBatch boxes = simd::BoxBatch::of_segments(line);
    std::vector<std::uint32_t> hits;
    for (std::size_t i = 0; i < m; ++i) {
        hits.clear();
        simd::overlapping(boxes, Box::of(line[i], line[i + 1]).padded(tol), hits);
        for (std::uint32_t j : hits) {
            if (j <= i + 1) continue;
            const SegmentProximity p = segment_proximity(line[i], line[i + 1], line[j], line[j + 1]);
            if (p.distance <= tol) {
                IntersectionRecord r;
                r.point = (p.on_first + p.on_second) * 0.5;
                r.seg_a = i;
                r.seg_b = j;
                r.tol = tol;
                out.push_back(r);
            }
        }
    }
    return out;
}

int pairs_for_depth(int depth) {
    if (depth < 1) throw ParameterError("depth must be at least 1");
    return (depth + 1) / 2;
}

double default_tolerance(const ManifoldArc& unstable) {
    return 1e-9 * std::max(1.0, unstable.line.diameter());
}

namespace {

std::vector<IntersectionRecord> fundamental_records(const Params& params, const ManifoldArc& U, double tol) {
    const Point X = fixed_point_X(params), V = point_V(params);
    // Classification needs both branches at V, so the stable side is the seed
    // plus one backward image.
    const ManifoldArc S = stable_arc(params, 1);
    std::vector<IntersectionRecord> out;
    for (IntersectionRecord& r : polyline_intersections(U.line, S.line, tol)) {
        if (distance(r.point, X) <= 100.0 * tol) continue;
        if (point_segment_distance(r.point, X, V) > tol) continue;
        out.push_back(r);
    }
    return out;
}

}  // namespace

std::vector<IntersectionRecord> homoclinic_on_fundamental(const Params& params, int depth, double tol) {
    const ManifoldArc U = unstable_arc(params, pairs_for_depth(depth));
    if (!(tol > 0.0)) tol = default_tolerance(U);
    return fundamental_records(params, U, tol);
}

bool has_homoclinic(const Params& params, int depth, double tol) {
    return !homoclinic_on_fundamental(params, depth, tol).empty();
}

TangencyReport check_last_tangency(const Params& params, int depth, double tol) {
    const ManifoldArc U = unstable_arc(params, pairs_for_depth(depth));
    const ManifoldArc S = stable_arc(params, depth);
    if (!(tol > 0.0)) tol = default_tolerance(U);
    const Point X = fixed_point_X(params), V = point_V(params);

    std::vector<std::pair<AnchorLabel, Point>> orbit;
    const Point Z = point_Z(params);
    for (int k = -(depth + 4); k <= depth + 4; ++k) {
        for (AnchorLabel l : {AnchorLabel::Z(k), AnchorLabel::V(k)}) {
            try {
                orbit.emplace_back(l, iterate(params, l.base == AnchorLabel::Base::Z ? Z : V, k));
            } catch (const DivergenceError&) {
            }
        }
    }

    TangencyReport rep;
    rep.a = params.a();
    rep.b = params.b();
    rep.depth = depth;
    rep.tol = tol;
    for (const IntersectionRecord& r : polyline_intersections(U.line, S.line, tol)) {
        if (distance(r.point, X) <= 100.0 * tol) continue;
        TangencyRecord t;
        t.record = r;
        bool z = false, v = false;
        for (const auto& [label, p] : orbit)
            if (distance(p, r.point) <= 10.0 * tol) {
                t.labels.push_back(label);
                (label.base == AnchorLabel::Base::Z ? z : v) = true;
            }
        t.flag = z && v ? OrbitFlag::z_and_v : z ? OrbitFlag::z_orbit : v ? OrbitFlag::v_orbit : OrbitFlag::other;
        t.on_fundamental = point_segment_distance(r.point, X, V) <= tol;
        switch (r.kind) {
            case ContactKind::tangential: ++rep.tangential; break;
            case ContactKind::transversal: ++rep.transversal; break;
            case ContactKind::undetermined: ++rep.undetermined; break;
        }
        if (r.unstable_classification) ++rep.unstable;
        if (t.flag == OrbitFlag::other) ++rep.other;
        rep.records.push_back(std::move(t));
    }
    rep.all_tangential = rep.transversal == 0;
    return rep;
}

}  // namespace lozi
