#include "lozi/core.hpp"

#include "lozi/error.hpp"
#include "lozi/simd.hpp"

#include <cmath>
#include <string>

namespace lozi {

namespace {

void require_finite(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("non-finite parameter");
}

void require_finite(Point p) {
    if (!p.finite()) throw DomainError("non-finite point");
}

void require_invertible(const Params& params) {
    if (params.b() == 0.0) throw SingularMapError("the inverse map does not exist for b = 0");
}

}  // namespace

bool Params::in_main_region(double a, double b) {
    return a > 0.0 && b > 0.0 && b < 1.0 && a + b > 1.0;
}

Params::Params(double a, double b, Unchecked) : a_(a), b_(b), main_(in_main_region(a, b)) {}

Params::Params(double a, double b) : Params(a, b, Unchecked{}) {
    require_finite(a, b);
    if (!main_)
        throw ParameterError("parameters outside the main region (a > 0, 0 < b < 1, a + b > 1): a=" +
                             std::to_string(a) + " b=" + std::to_string(b));
}

Params Params::permissive(double a, double b) {
    require_finite(a, b);
    if (!(a > 0.0 && b >= 0.0 && b < 1.0 && a + b > 1.0))
        throw ParameterError("parameters outside the closed main region");
    return Params(a, b, Unchecked{});
}

double Params::root() const {
    double d = a_ * a_ + 4.0 * b_;
    if (d < 0.0) throw DomainError("a^2 + 4b < 0");
    return std::sqrt(d);
}

Point apply(const Params& params, Point p) {
    require_finite(p);
    Point out;
    simd::scalar::map_forward(params.a(), params.b(), &p, &out, 1);
    return out;
}

Point apply_inverse(const Params& params, Point p) {
    require_invertible(params);
    require_finite(p);
    Point out;
    simd::scalar::map_inverse(params.a(), params.b(), &p, &out, 1);
    return out;
}

Point iterate(const Params& params, Point p, long k) {
    if (k > kMaxIterate || k < -kMaxIterate) throw ParameterError("iteration count exceeds 10^6");
    require_finite(p);
    if (k < 0) require_invertible(params);
    const long steps = k < 0 ? -k : k;
    for (long i = 0; i < steps; ++i) {
        Point q;
        if (k > 0)
            simd::scalar::map_forward(params.a(), params.b(), &p, &q, 1);
        else
            simd::scalar::map_inverse(params.a(), params.b(), &p, &q, 1);
        if (!q.finite()) throw DivergenceError("iterate diverged", k > 0 ? static_cast<long>(i) : -static_cast<long>(i));
        p = q;
    }
    return p;
}

std::pair<Point, Point> fixed_points(const Params& params) {
    const double a = params.a(), b = params.b();
    const double dx = 1.0 + a - b, dy = 1.0 - a - b;
    if (dx == 0.0 || dy == 0.0) throw ParameterError("degenerate parameters: fixed point at infinity");
    return {{1.0 / dx, b / dx}, {1.0 / dy, b / dy}};
}

Point fixed_point_X(const Params& params) { return fixed_points(params).first; }

EigenData eigen_data(const Params& params, FixedPoint at) {
    const double a = params.a(), b = params.b(), r = params.root();
    EigenData e{};
    if (at == FixedPoint::X) {
        // Linear part at X is [[-a, 1], [b, 0]].
        e.lambda_u = 0.5 * (-a - r);
        e.lambda_s = 2.0 * b / (a + r);
    } else {
        // At Y (x < 0) the linear part is [[a, 1], [b, 0]].
        e.lambda_u = 0.5 * (a + r);
        e.lambda_s = -2.0 * b / (a + r);
    }
    e.eigvec_u = {e.lambda_u, b};
    e.eigvec_s = {e.lambda_s, b};
    return e;
}

Point point_Z(const Params& params) {
    const double a = params.a(), r = params.root();
    return {2.0 / (2.0 + a - r), 0.0};
}

Point point_V(const Params& params) {
    const double a = params.a(), b = params.b(), r = params.root();
    return {0.0, -2.0 * b / (-a + 2.0 * b + r)};
}

MappedPolyLine map_polyline_traced(const Params& params, const PolyLine& line, Direction dir) {
    MappedPolyLine out;
    if (line.empty()) return out;
    if (dir == Direction::backward) require_invertible(params);
    for (const Point& v : line.vertices()) require_finite(v);

    const bool fwd = dir == Direction::forward;
    // Coordinate that selects the affine piece.
    auto key = [fwd](Point p) { return fwd ? p.x : p.y; };

    std::vector<Point> pre;
    std::vector<VertexOrigin> org;
    pre.reserve(line.size() * 2);
    org.reserve(line.size() * 2);
    const auto& vs = line.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i) {
        pre.push_back(vs[i]);
        org.push_back({i, key(vs[i]) == 0.0});
        if (i + 1 == vs.size()) break;
        const Point p = vs[i], q = vs[i + 1];
        const double k0 = key(p), k1 = key(q);
        if ((k0 < 0.0 && k1 > 0.0) || (k0 > 0.0 && k1 < 0.0)) {
            const double t = k0 / (k0 - k1);
            if (t < kCrossingSnap || 1.0 - t < kCrossingSnap) continue;
            Point c = fwd ? Point{0.0, p.y + t * (q.y - p.y)} : Point{p.x + t * (q.x - p.x), 0.0};
            pre.push_back(c);
            org.push_back({VertexOrigin::npos, true});
        }
    }

    std::vector<Point> img(pre.size());
    if (fwd)
        simd::map_forward(params.a(), params.b(), pre, img);
    else
        simd::map_inverse(params.a(), params.b(), pre, img);

    std::vector<Point> merged;
    merged.reserve(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) {
        if (!img[i].finite()) throw DivergenceError("polyline image is not finite", 0);
        if (!merged.empty() && merged.back() == img[i]) {
            // Keep the earlier vertex but remember a break-line preimage.
            out.origin.back().on_break_line = out.origin.back().on_break_line || org[i].on_break_line;
            continue;
        }
        merged.push_back(img[i]);
        out.origin.push_back(org[i]);
    }
    out.line = PolyLine(std::move(merged));
    return out;
}

PolyLine map_polyline(const Params& params, const PolyLine& line, Direction dir) {
    return map_polyline_traced(params, line, dir).line;
}

}  // namespace lozi
