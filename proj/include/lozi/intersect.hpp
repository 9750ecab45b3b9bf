#pragma once

#include "lozi/core.hpp"
#include "lozi/manifolds.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace lozi {

// `undetermined` is reserved for contacts at a truncation end of an arc,
// where the local picture is incomplete.
enum class ContactKind { tangential, transversal, undetermined };

std::string to_string(ContactKind kind);

struct IntersectionRecord {
    Point point;
    ContactKind kind = ContactKind::undetermined;
    bool vertex_a = false;  // point is a vertex of A (within 10 tol)
    bool vertex_b = false;
    std::size_t seg_a = 0;
    std::size_t seg_b = 0;
    double tol = 0.0;
    double margin = 0.0;
    bool unstable_classification = false;
};

struct Classification {
    ContactKind kind;
    // epsilon * sine of the smallest angle between a branch of A and a branch
    // of B at the contact (capped at epsilon for obtuse angles).
    double margin;
    bool unstable;
};

std::vector<IntersectionRecord> polyline_intersections(const PolyLine& A, const PolyLine& B, double tol);

// Throws BoundaryAmbiguityError if T is within 2 tol of an end of either arc.
ContactKind classify_intersection(const PolyLine& A, const PolyLine& B, Point T, double tol);
Classification classify_detailed(const PolyLine& A, const PolyLine& B, Point T, double tol);

// Pairs of non-adjacent segments of `line` that come within tol of each other.
std::vector<IntersectionRecord> self_intersections(const PolyLine& line, double tol);

// Depth counts map applications: the unstable arc uses ceil(depth / 2) pairs.
int pairs_for_depth(int depth);
// 1e-9 * max(1, diameter of the unstable arc).
double default_tolerance(const ManifoldArc& unstable);

std::vector<IntersectionRecord> homoclinic_on_fundamental(const Params& params, int depth, double tol = 0.0);
bool has_homoclinic(const Params& params, int depth, double tol = 0.0);

enum class OrbitFlag { z_orbit, v_orbit, z_and_v, other };
std::string to_string(OrbitFlag flag);

struct TangencyRecord {
    IntersectionRecord record;
    std::vector<AnchorLabel> labels;
    OrbitFlag flag = OrbitFlag::other;
    bool on_fundamental = false;  // lies on the segment X -> V
};

struct TangencyReport {
    double a = 0.0, b = 0.0;
    int depth = 0;
    double tol = 0.0;
    std::vector<TangencyRecord> records;
    std::size_t transversal = 0;
    std::size_t tangential = 0;
    std::size_t undetermined = 0;
    std::size_t unstable = 0;
    std::size_t other = 0;
    // No classified record is transversal.
    bool all_tangential = true;
};

TangencyReport check_last_tangency(const Params& params, int depth, double tol = 0.0);

}  // namespace lozi
