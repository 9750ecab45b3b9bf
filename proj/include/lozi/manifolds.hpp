#pragma once

#include "lozi/core.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lozi {

struct AnchorLabel {
    enum class Base { X, Z, V };
    Base base = Base::X;
    int power = 0;

    static AnchorLabel X() { return {Base::X, 0}; }
    static AnchorLabel Z(int k) { return {Base::Z, k}; }
    static AnchorLabel V(int k) { return {Base::V, k}; }

    std::string str() const;
    // Pointwise iterate of the base point.
    Point point(const Params& params) const;
    AnchorLabel shifted(int k) const { return base == Base::X ? *this : AnchorLabel{base, power + k}; }

    friend bool operator==(const AnchorLabel&, const AnchorLabel&) = default;
};

enum class ArcKind { stable, unstable };

struct ManifoldArc {
    ArcKind kind = ArcKind::unstable;
    PolyLine line;
    std::map<std::size_t, AnchorLabel> anchors;
    // Vertex index -> creation depth: the number of steps (backward for
    // unstable arcs, forward for stable arcs) that bring the vertex onto the
    // break line.
    std::map<std::size_t, int> breakpoints;
    int depth = 0;

    std::optional<std::size_t> find(const AnchorLabel& label) const;
    bool is_breakpoint(std::size_t i) const { return breakpoints.count(i) != 0; }
    // Sub-polyline between two anchors, oriented from `from` to `to`.
    PolyLine slice(const AnchorLabel& from, const AnchorLabel& to) const;
};

inline constexpr std::size_t kDefaultMaxVertices = std::size_t{1} << 20;
inline constexpr int kDefaultPairs = 8;
// Band around the axes inside which a coordinate counts as zero.
inline constexpr double kAxisSnap = 1e-12;

// [Z^{2 pairs - 1}, Z^{2 pairs}]^u, which contains [Z^{-1}, Z^{2 pairs}]^u:
// the straight seed Z^{-1} -> X -> Z pushed forward 2*pairs times.
ManifoldArc unstable_arc(const Params& params, int pairs, std::size_t max_vertices = kDefaultMaxVertices);

// [X, V^{-steps}]^s: X -> V^1 -> V followed by the backward images of [V^1, V].
ManifoldArc stable_arc(const Params& params, int steps, std::size_t max_vertices = kDefaultMaxVertices);

// 2*n0 + 6.
int default_stable_steps(const Params& params);

struct SlopeSequence {
    double s0, M1, M2, mu, j0;
    std::vector<double> values;
    // Set when the recurrence stopped at a near-zero slope.
    bool singular = false;
};

SlopeSequence slope_sequence(const Params& params, int n);
double slope_closed_form(const Params& params, int n);

int zigzag_index(const Params& params, int max_iter = 10000);
// alpha_1 .. alpha_{n0}, alpha_n = [V^{-n+1}, V^{-n}]^s.
std::vector<Segment> zigzag_legs(const Params& params);

struct UnstablePieces {
    std::vector<PolyLine> gamma;  // gamma_n = [Z^{2n-1}, Z^{2n+1}]^u
    std::vector<PolyLine> delta;  // delta_n = [Z^{2n}, Z^{2n+2}]^u
};

UnstablePieces unstable_pieces(const Params& params, int count, std::size_t max_vertices = kDefaultMaxVertices);
std::optional<int> first_delta_crossing(const Params& params, int count);

bool in_open_quadrant(Point p, int quadrant);
bool in_closed_quadrant(Point p, int quadrant);

}  // namespace lozi
