#pragma once

// Independent reference computations shared by the unit and acceptance tests.
// Nothing here calls into the library's geometry or classification code.

#include "lozi/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using lozi::Point;

struct AB {
    double a, b;
};

// Uniform in the main region clipped to a <= 4.
inline AB random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ua(0.0, 4.0), ub(0.0, 1.0);
    for (;;) {
        const double a = ua(rng), b = ub(rng);
        if (a > 0.0 && b > 0.02 && b < 0.98 && a + b > 1.02) return {a, b};
    }
}

// Long-double versions of the closed forms.
struct Reference {
    long double X_x, X_y, lambda_u, lambda_s, Z_x, V_y;
};

inline Reference reference(long double a, long double b) {
    const long double r = std::sqrt(a * a + 4 * b);
    Reference ref{};
    ref.X_x = 1 / (1 + a - b);
    ref.X_y = b * ref.X_x;
    ref.lambda_u = (-a - r) / 2;
    ref.lambda_s = (-a + r) / 2;
    // Z: x-intercept of the line through X with direction (lambda_u, b).
    ref.Z_x = ref.X_x - ref.X_y * ref.lambda_u / b;
    // V: y-intercept of the line through X with slope (a + r) / 2.
    ref.V_y = ref.X_y - ref.X_x * (a + r) / 2;
    return ref;
}

inline Point lozi(double a, double b, Point p) { return {1.0 + p.y - a * std::fabs(p.x), b * p.x}; }
inline Point lozi_inv(double a, double b, Point p) { return {p.y / b, p.x - 1.0 + a * std::fabs(p.y) / b}; }

// Exit angles of a polyline through the disk of radius r around T.
inline std::vector<double> exit_angles(const std::vector<Point>& line, Point T, double r) {
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < line.size(); ++i) {
        const Point p = line[i] - T, d = line[i + 1] - line[i];
        const double A = d.x * d.x + d.y * d.y, B = 2 * (p.x * d.x + p.y * d.y), C = p.x * p.x + p.y * p.y - r * r;
        const double disc = B * B - 4 * A * C;
        if (disc < 0) continue;
        for (double s : {-1.0, 1.0}) {
            const double t = (-B + s * std::sqrt(disc)) / (2 * A);
            if (t < 0.0 || t > 1.0) continue;
            const Point q = p + d * t;
            out.push_back(std::atan2(q.y, q.x));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(), [](double u, double v) { return std::fabs(u - v) < 1e-12; }),
              out.end());
    return out;
}

enum class Verdict { tangential, transversal, ambiguous };

// Epsilon-ball sampling oracle. Samples n points on the circle of radius r
// around T; A's exits split the circle into arcs, labelled by the parity of
// the number of A-exits passed from angle -pi. Each B-exit takes the label of
// its sample bin. Tangential iff all B-exits share one label. A B-exit within
// one bin of an A-exit is ambiguous.
inline Verdict sample_oracle(const std::vector<Point>& A, const std::vector<Point>& B, Point T, double r,
                             int n = 10000) {
    const auto ea = exit_angles(A, T, r);
    const auto eb = exit_angles(B, T, r);
    const double pi = std::acos(-1.0), bin = 2 * pi / n;
    std::vector<int> label(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double th = -pi + (k + 0.5) * bin;
        label[static_cast<std::size_t>(k)] =
            static_cast<int>(std::count_if(ea.begin(), ea.end(), [&](double e) { return e < th; })) % 2;
    }
    std::optional<int> side;
    for (double e : eb) {
        for (double f : ea) {
            const double gap = std::fabs(std::remainder(e - f, 2 * pi));
            if (gap < 1.5 * bin) return Verdict::ambiguous;
        }
        const int k = std::clamp(static_cast<int>((e + pi) / bin), 0, n - 1);
        const int s = label[static_cast<std::size_t>(k)];
        if (side && *side != s) return Verdict::transversal;
        side = s;
    }
    return Verdict::tangential;
}

// Random local configuration: two polylines through T, each either straight
// or with a corner at T, arms of length `arm`.
struct Config {
    std::vector<Point> A, B;
    Point T;
    bool corner_on_corner;
};

inline Point polar(double len, double th) { return {len * std::cos(th), len * std::sin(th)}; }

inline Config random_config(std::mt19937_64& rng, int kind) {
    const double pi = std::acos(-1.0);
    std::uniform_real_distribution<double> uth(-pi, pi), upos(-3.0, 3.0), ulen(0.5, 2.0);
    Config c;
    c.T = {upos(rng), upos(rng)};
    auto arm = [&](double th) { return c.T + polar(ulen(rng), th); };
    const bool a_corner = kind == 0 || kind == 1, b_corner = kind == 0 || kind == 2;
    const double a1 = uth(rng), a2 = a_corner ? uth(rng) : a1 + pi;
    const double b1 = uth(rng), b2 = b_corner ? uth(rng) : b1 + pi;
    c.A = {arm(a1), c.T, arm(a2)};
    c.B = {arm(b1), c.T, arm(b2)};
    if (!a_corner && kind == 2) c.A = {c.A.front(), c.A.back()};  // T interior to a bare segment
    c.corner_on_corner = a_corner && b_corner;
    return c;
}

}  // namespace oracle
