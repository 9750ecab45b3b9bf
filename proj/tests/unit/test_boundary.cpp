#include "lozi/boundary.hpp"
#include "lozi/error.hpp"
#include "lozi/intersect.hpp"

#include <doctest.h>

#include <cmath>

using namespace lozi;

TEST_SUITE("boundary") {

using BC = BoundaryCondition;

TEST_CASE("condition names round-trip") {
    for (BC c : {BC::z_on_stable_seg(2), BC::v_on_unstable_piece(1), BC::z_on_y_axis(3), BC::z_equals_v(2)})
        CHECK(BC::parse(c.str()) == c);
    CHECK(BC::parse("ZIterOnStableSeg(1)") == BC::z_on_stable_seg(1));
    CHECK_THROWS_AS(BC::parse("Nope(1)"), ParameterError);
    CHECK_THROWS_AS(BC::parse("ZIterOnStableSeg(0)"), ParameterError);
}

TEST_CASE("condition values at the reference pairs") {
    CHECK(std::fabs(condition_value(Params(1.46, 0.332873), BC::z_on_stable_seg(1))) < 1e-4);
    CHECK(std::fabs(condition_value(Params(1.58, 0.587775), BC::v_on_unstable_piece(1))) < 1e-4);
    CHECK(std::fabs(condition_value(Params(1.56, 0.75378), BC::z_on_stable_seg(2))) < 1e-4);
}

TEST_CASE("segment form adds the overshoot") {
    // At (1.7, 0.5) Z^2 is far from [V, V^1]; the segment form dominates the line form.
    const Params p(1.7, 0.5);
    const auto line = condition_detail(p, BC::z_on_stable_seg(1), 0, ConditionForm::line);
    const auto seg = condition_detail(p, BC::z_on_stable_seg(1), 0, ConditionForm::segment);
    CHECK(std::fabs(seg.value) >= std::fabs(line.value));
    CHECK(seg.offset == line.offset);
}

TEST_CASE("insufficient depth") {
    CHECK_THROWS_AS(condition_value(Params(1.5, 0.5), BC::z_on_stable_seg(3), 4), InsufficientDepthError);
    CHECK_NOTHROW(condition_value(Params(1.5, 0.5), BC::z_on_stable_seg(3), 6));
}

TEST_CASE("endpoint C1 from its box") {
    const Point e = solve_endpoint(BC::z_on_stable_seg(1), BC::v_on_unstable_piece(1), {1.50, 1.54, 0.52, 0.58});
    CHECK(std::fabs(e.x - 1.51950144) < 1e-6);
    CHECK(std::fabs(e.y - 0.549133899) < 1e-6);
    CHECK_THROWS_AS(solve_endpoint(BC::z_on_stable_seg(1), BC::v_on_unstable_piece(1), {1.70, 1.80, 0.20, 0.30}),
                    NotFoundError);
}

TEST_CASE("catalog assignment") {
    CHECK(curve_spec(1).condition == BC::z_on_stable_seg(1));
    CHECK(curve_spec(2).condition == BC::v_on_unstable_piece(1));
    CHECK(curve_spec(3).condition == BC::z_on_stable_seg(2));
    CHECK(curve_spec(4).condition == BC::z_on_stable_seg(2));
    CHECK(curve_spec(5).condition == BC::v_on_unstable_piece(2));
    CHECK(curve_spec(6).condition == BC::z_on_stable_seg(3));
    CHECK_THROWS_AS(curve_spec(7), ParameterError);
}

TEST_CASE("C1 trace") {
    const CurveTrace tr = trace_catalog_range(1, 0.01, 0.54, 0.005);
    CHECK(tr.end == TraceEnd::completed);
    CHECK(tr.samples.size() >= 100);
    for (std::size_t i = 0; i < tr.samples.size(); ++i) {
        CHECK(std::fabs(tr.residuals[i]) < 1e-10);
        CHECK(std::fabs((*tr.table1_residuals)[i]) < 1e-8);
        if (i) CHECK(tr.samples[i].y > tr.samples[i - 1].y);
    }
    CHECK(std::fabs(extrapolate_to_b0(tr) - std::sqrt(2.0)) < 1e-3);
}

TEST_CASE("trace stops at a guard") {
    // Sweep C1 upward past its endpoint, guarded by the second condition.
    const double a0 = *solve_on_line(BC::z_on_stable_seg(1), SweepAxis::b, 0.4, 1.48);
    Sweep sw{SweepAxis::b, 0.4, 0.7, a0 - 1e-6, a0 + 1e-6};
    TraceOptions opts;
    opts.guards = {BC::v_on_unstable_piece(1)};
    const CurveTrace tr = trace_curve(BC::z_on_stable_seg(1), sw, opts);
    CHECK(tr.end == TraceEnd::guard);
    REQUIRE(tr.end_point);
    CHECK(std::fabs(tr.end_point->x - 1.51950144) < 1e-6);
    CHECK(std::fabs(tr.end_point->y - 0.549133899) < 1e-6);
}

TEST_CASE("trace loses the bracket past the end of the branch") {
    // ZIterOnStableSeg(1) ceases to hold as a segment membership beyond e1.
    const double a0 = *solve_on_line(BC::z_on_stable_seg(1), SweepAxis::b, 0.5, 1.50);
    Sweep sw{SweepAxis::b, 0.5, 0.9, a0 - 1e-6, a0 + 1e-6};
    const CurveTrace tr = trace_curve(BC::z_on_stable_seg(1), sw, {});
    CHECK(tr.end == TraceEnd::bracket_lost);
    CHECK(tr.samples.back().y < 0.56);
}

TEST_CASE("trace rejects a bad initial bracket") {
    Sweep sw{SweepAxis::b, 0.3, 0.4, 1.0, 1.1};
    CHECK_THROWS_AS(trace_curve(BC::z_on_stable_seg(1), sw, {}), NotFoundError);
}

TEST_CASE("Z^4 on [V, V^1] along C3") {
    const double b = *solve_on_line(BC::z_on_stable_seg(2), SweepAxis::a, 1.56, 0.75378);
    CHECK(std::fabs(b - 0.75378) < 1e-5);
    const TangencyReport r = check_last_tangency(Params(1.56, b), 8);
    CHECK(r.transversal == 0);
    bool z4 = false;
    for (const auto& t : r.records)
        for (const auto& l : t.labels) z4 = z4 || (l == AnchorLabel::Z(4) && t.on_fundamental);
    CHECK(z4);
}

TEST_CASE("region scan") {
    const RegionScan s = scan_region(0.9, 1.7, 0.5, 0.5, 3, 1, 8, 0.0, 2);
    CHECK(s.at(0, 0) == CellState::no);   // a = 0.9
    CHECK(s.at(2, 0) == CellState::yes);  // a = 1.7
    const RegionScan outside = scan_region(0.2, 0.3, 0.2, 0.3, 2, 2, 4);
    for (CellState c : outside.cells) CHECK(c == CellState::outside);
    // Thread count does not change the result.
    const RegionScan one = scan_region(1.2, 1.8, 0.3, 0.9, 5, 4, 6, 0.0, 1);
    const RegionScan many = scan_region(1.2, 1.8, 0.3, 0.9, 5, 4, 6, 0.0, 3);
    CHECK(one.cells == many.cells);
}

TEST_CASE("ray scan crosses C1 once") {
    const double b = 0.332873;
    const auto flips = scan_ray(b, 1.3, 1.6, 31, 8);
    REQUIRE(flips.size() == 1);
    CHECK(flips[0].inside_right);
    CHECK(flips[0].a_left <= 1.46);
    CHECK(flips[0].a_right >= 1.46);
}

}
