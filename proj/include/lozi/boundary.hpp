#pragma once

#include "lozi/core.hpp"
#include "lozi/table1.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lozi {

struct BoundaryCondition {
    enum class Tag {
        z_iter_on_stable_seg,  // Z^{2i} in [V, V^1]^s
        v_on_unstable_piece,   // V in [Z^{2i}, T]^u, T the first breakpoint after Z^{2i}
        z_iter_on_y_axis,      // Z^{2j} on the y-axis
        z_iter_equals_v,       // Z^{2j} = V
    };
    Tag tag = Tag::z_iter_on_stable_seg;
    int index = 1;

    static BoundaryCondition z_on_stable_seg(int i) { return {Tag::z_iter_on_stable_seg, i}; }
    static BoundaryCondition v_on_unstable_piece(int i) { return {Tag::v_on_unstable_piece, i}; }
    static BoundaryCondition z_on_y_axis(int j) { return {Tag::z_iter_on_y_axis, j}; }
    static BoundaryCondition z_equals_v(int j) { return {Tag::z_iter_equals_v, j}; }

    // "ZIterOnStableSeg(2)" and friends; parse() accepts the same spelling.
    std::string str() const;
    static BoundaryCondition parse(std::string_view text);
    // Number of forward map applications the condition looks at.
    int required_depth() const;

    friend bool operator==(const BoundaryCondition&, const BoundaryCondition&) = default;
};

// segment: offsets augmented by the overshoot of the projection past the
// segment ends (zero only for membership in the closed segment).
// line: the bare signed offset from the supporting line.
enum class ConditionForm { segment, line };

struct ConditionDetail {
    double value;
    double offset;      // signed distance from the supporting line (or the raw coordinate)
    double projection;  // parameter of the projection along the segment, 0..1 inside
};

// Sign conventions: ZIterOnStableSeg is positive on the origin's side of the
// line V V^1; VOnUnstablePiece is positive to the left of Z^{2i} -> T;
// ZIterEqualsV takes the sign of Z^{2j}_y - V_y.
ConditionDetail condition_detail(const Params& params, const BoundaryCondition& cond, int depth = 0,
                                 ConditionForm form = ConditionForm::segment);
double condition_value(const Params& params, const BoundaryCondition& cond, int depth = 0,
                       ConditionForm form = ConditionForm::segment);

// Which coordinate is swept; the other one is solved for.
enum class SweepAxis { a, b };

struct Sweep {
    SweepAxis axis = SweepAxis::a;
    double from = 0.0, to = 0.0;
    // Bracket for the solved coordinate at the first sweep value.
    double lo = 0.0, hi = 0.0;
};

struct TraceOptions {
    double step = 0.005;
    double tol = 1e-10;
    int depth = 0;
    // The trace stops where one of these changes sign along the curve.
    std::vector<BoundaryCondition> guards;
};

enum class TraceEnd { completed, bracket_lost, guard };
std::string to_string(TraceEnd end);

struct CurveTrace {
    BoundaryCondition condition;
    SweepAxis axis = SweepAxis::a;
    std::vector<Point> samples;  // (a, b)
    std::vector<double> residuals;
    std::optional<std::vector<double>> table1_residuals;  // relative, when the curve has an implicit form
    TraceEnd end = TraceEnd::completed;
    std::optional<Point> end_point;  // where a guard fired or the bracket was lost
};

CurveTrace trace_curve(const BoundaryCondition& cond, const Sweep& sweep, const TraceOptions& opts = {});

struct ParamBox {
    double a_lo, a_hi, b_lo, b_hi;
};

// Simultaneous zero of two conditions inside `box`: the first is solved for b
// at fixed a, the second drives an outer bisection on a. Throws NotFoundError.
Point solve_endpoint(const BoundaryCondition& first, const BoundaryCondition& second, const ParamBox& box,
                     double tol = 1e-9, int depth = 0);

struct ConditionMatch {
    BoundaryCondition condition;
    double value;
};

// All conditions with index <= max_index, ordered by |value| (segment form).
std::vector<ConditionMatch> rank_conditions(const Params& params, int max_index = 6);
ConditionMatch assign_condition(const Params& params, int max_index = 6);

// Built-in catalog for C1..C6.
struct EndpointSpec {
    int n;  // the endpoint (a_n, b_n) shared by C_n and C_{n+1}
    BoundaryCondition first, second;
    ParamBox box;
};
const std::vector<EndpointSpec>& endpoint_catalog();
Point catalog_endpoint(int n, double tol = 1e-9);

struct CurveSpec {
    int n;
    BoundaryCondition condition;
    SweepAxis axis;
    // Parameter pair used to pick the condition, when it was found by search.
    std::optional<Point> anchor;
};
// Conditions for C4..C6 come from rank_conditions at the anchor.
CurveSpec curve_spec(int n);
// Reference parameter pairs (six digits) lying on C1, C2, C3, C5, C6.
std::vector<std::pair<int, Point>> reference_pairs();

// Traces C_n between its endpoints with at least `samples` samples.
CurveTrace trace_catalog_curve(int n, int samples = 60, double tol = 1e-10);
// Traces C_n over an arbitrary sweep range; the start is found near the chord
// between the catalog endpoints of C_n.
CurveTrace trace_catalog_range(int n, double from, double to, double step, double tol = 1e-10);

// Extrapolates a C1 trace (swept in b) to b = 0.
double extrapolate_to_b0(const CurveTrace& trace, int points = 4);

// Solves the condition for the other coordinate near `guess` with the sweep
// coordinate held fixed; nullopt if no bracket is found.
std::optional<double> solve_on_line(const BoundaryCondition& cond, SweepAxis axis, double fixed, double guess,
                                    double max_width = 0.05, double tol = 1e-10, int depth = 0);

enum class CellState : std::uint8_t { no, yes, unknown, outside };
std::string to_string(CellState s);

struct RegionScan {
    double a_lo, a_hi, b_lo, b_hi;
    int na, nb;
    std::vector<CellState> cells;  // row-major, b index outer

    Point node(int i, int j) const;
    CellState at(int i, int j) const { return cells[static_cast<std::size_t>(j) * na + i]; }
};

// has_homoclinic on an na x nb grid of nodes (inclusive ranges). Nodes outside
// the main region are "outside"; nodes whose computation fails are "unknown".
RegionScan scan_region(double a_lo, double a_hi, double b_lo, double b_hi, int na, int nb, int depth, double tol = 0.0,
                       unsigned threads = 0);

struct RayFlip {
    double a_left, a_right;  // consecutive samples bracketing the flip
    double a_refined;        // midpoint after one extra bisection level
    bool inside_right;
};

// Flips of has_homoclinic along the horizontal ray b = const.
std::vector<RayFlip> scan_ray(double b, double a_from, double a_to, int samples, int depth, double tol = 0.0);

}  // namespace lozi
