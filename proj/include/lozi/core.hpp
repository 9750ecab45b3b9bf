#pragma once

#include "lozi/geometry.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace lozi {

class Params {
public:
    // Main region: a > 0, 0 < b < 1, a + b > 1. Throws ParameterError otherwise.
    Params(double a, double b);

    // Also admits b = 0 (the tent-map edge). Only pointwise forward evaluation
    // and algebraic checks accept such a value.
    static Params permissive(double a, double b);

    double a() const { return a_; }
    double b() const { return b_; }
    bool main_region() const { return main_; }
    // sqrt(a^2 + 4b)
    double root() const;

    static bool in_main_region(double a, double b);

private:
    struct Unchecked {};
    Params(double a, double b, Unchecked);

    double a_;
    double b_;
    bool main_;
};

enum class FixedPoint { X, Y };
enum class Direction { forward, backward };

struct EigenData {
    double lambda_u;
    double lambda_s;
    Point eigvec_u;
    Point eigvec_s;
};

Point apply(const Params& params, Point p);
Point apply_inverse(const Params& params, Point p);
// k-fold composition; throws DivergenceError if an iterate is not finite.
Point iterate(const Params& params, Point p, long k);

std::pair<Point, Point> fixed_points(const Params& params);
Point fixed_point_X(const Params& params);
EigenData eigen_data(const Params& params, FixedPoint at);
Point point_Z(const Params& params);
Point point_V(const Params& params);

// Origin of each vertex of a mapped polyline.
struct VertexOrigin {
    // Index of the source vertex, or npos if the vertex is the image of an
    // inserted break-line crossing.
    std::size_t source;
    // True if the source point (vertex or crossing) lay on the break line.
    bool on_break_line;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

struct MappedPolyLine {
    PolyLine line;
    std::vector<VertexOrigin> origin;
};

// Splits every segment at its crossings of the break line (x = 0 forward,
// y = 0 backward), then maps the pieces. Zero-length output segments are
// merged, keeping the earlier vertex.
MappedPolyLine map_polyline_traced(const Params& params, const PolyLine& line, Direction dir);
PolyLine map_polyline(const Params& params, const PolyLine& line, Direction dir);

inline constexpr double kCrossingSnap = 1e-14;
inline constexpr long kMaxIterate = 1000000;

}  // namespace lozi
