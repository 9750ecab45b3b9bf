#include "lozi/boundary.hpp"

#include "lozi/error.hpp"
#include "lozi/intersect.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <thread>

namespace lozi {

std::string BoundaryCondition::str() const {
    const char* name = "";
    switch (tag) {
        case Tag::z_iter_on_stable_seg: name = "ZIterOnStableSeg"; break;
        case Tag::v_on_unstable_piece: name = "VOnUnstablePiece"; break;
        case Tag::z_iter_on_y_axis: name = "ZIterOnYAxis"; break;
        case Tag::z_iter_equals_v: name = "ZIterEqualsV"; break;
    }
    return std::string(name) + "(" + std::to_string(index) + ")";
}

BoundaryCondition BoundaryCondition::parse(std::string_view text) {
    const auto open = text.find('('), close = text.find(')');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open)
        throw ParameterError("bad condition: " + std::string(text));
    const std::string name(text.substr(0, open));
    const int index = std::stoi(std::string(text.substr(open + 1, close - open - 1)));
    if (index < 1) throw ParameterError("condition index must be positive");
    for (Tag t : {Tag::z_iter_on_stable_seg, Tag::v_on_unstable_piece, Tag::z_iter_on_y_axis, Tag::z_iter_equals_v}) {
        BoundaryCondition c{t, index};
        if (c.str().substr(0, name.size()) == name && c.str()[name.size()] == '(') return c;
    }
    throw ParameterError("unknown condition: " + name);
}

int BoundaryCondition::required_depth() const {
    return tag == Tag::v_on_unstable_piece ? 2 * index + 2 : 2 * index;
}

std::string to_string(TraceEnd end) {
    switch (end) {
        case TraceEnd::completed: return "completed";
        case TraceEnd::bracket_lost: return "bracket-lost";
        case TraceEnd::guard: return "guard";
    }
    return "?";
}

std::string to_string(CellState s) {
    switch (s) {
        case CellState::no: return "no";
        case CellState::yes: return "yes";
        case CellState::unknown: return "unknown";
        case CellState::outside: return "outside";
    }
    return "?";
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Offset of p from the line through s0 -> s1 (positive on the left) and the
// projection parameter.
ConditionDetail offset_from(Point p, Point s0, Point s1, ConditionForm form) {
    const Point d = s1 - s0;
    const double len = norm(d);
    const double off = cross(d, p - s0) / len;
    const double s = dot(p - s0, d) / (len * len);
    ConditionDetail out{off, off, s};
    if (form == ConditionForm::segment) {
        const double over = std::max({0.0, -s, s - 1.0}) * len;
        if (over > 0.0) out.value = std::copysign(std::hypot(off, over), off);
    }
    return out;
}

// The first segment of delta_i = L^{2i}([Z, Z^2]).
Segment first_segment_of_delta(const Params& params, int i) {
    const Point Z = point_Z(params);
    PolyLine piece{Z, iterate(params, Z, 2)};
    for (int k = 0; k < 2 * i; ++k) piece = map_polyline(params, piece, Direction::forward);
    return piece.segment(0);
}

}  // namespace

ConditionDetail condition_detail(const Params& params, const BoundaryCondition& cond, int depth, ConditionForm form) {
    if (!params.main_region()) throw ParameterError("conditions need the main region");
    if (cond.index < 1) throw ParameterError("condition index must be positive");
    if (depth > 0 && depth < cond.required_depth())
        throw InsufficientDepthError(cond.str() + " needs depth " + std::to_string(cond.required_depth()));
    const Point V = point_V(params);
    const Point Z = point_Z(params);
    switch (cond.tag) {
        case BoundaryCondition::Tag::z_iter_on_stable_seg: {
            const Point V1{1.0 + V.y, 0.0};
            // V -> V^1 has the origin on its left.
            return offset_from(iterate(params, Z, 2 * cond.index), V, V1, form);
        }
        case BoundaryCondition::Tag::v_on_unstable_piece: {
            const Segment s = first_segment_of_delta(params, cond.index);
            return offset_from(V, s.p, s.q, form);
        }
        case BoundaryCondition::Tag::z_iter_on_y_axis: {
            const double x = iterate(params, Z, 2 * cond.index).x;
            return {x, x, kNaN};
        }
        case BoundaryCondition::Tag::z_iter_equals_v: {
            const Point P = iterate(params, Z, 2 * cond.index);
            const double d = std::copysign(distance(P, V), P.y - V.y);
            return {d, d, kNaN};
        }
    }
    throw ParameterError("unknown condition");
}

double condition_value(const Params& params, const BoundaryCondition& cond, int depth, ConditionForm form) {
    return condition_detail(params, cond, depth, form).value;
}

namespace {

using Fn = std::function<double(double)>;

// NaN outside the main region.
Fn along(const BoundaryCondition& cond, SweepAxis axis, double fixed, int depth, ConditionForm form) {
    return [=](double x) {
        const double a = axis == SweepAxis::a ? fixed : x;
        const double b = axis == SweepAxis::a ? x : fixed;
        if (!Params::in_main_region(a, b)) return kNaN;
        return condition_value(Params(a, b), cond, depth, form);
    };
}

bool opposite(double u, double v) { return (u < 0.0 && v > 0.0) || (u > 0.0 && v < 0.0); }

// Bisection to adjacent doubles; returns the end with the smaller |f|.
double bisect(const Fn& f, double lo, double hi, double flo, double fhi) {
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (std::isnan(fm)) break;
        if (opposite(fm, flo))
            hi = mid, fhi = fm;
        else
            lo = mid, flo = fm;
    }
    return std::fabs(flo) <= std::fabs(fhi) ? lo : hi;
}

// Nearest root to `guess` found by expanding brackets around it.
std::optional<double> nearest_root(const Fn& f, double guess, double w0, double max_width) {
    const double fg = f(guess);
    if (fg == 0.0) return guess;
    if (std::isnan(fg)) return std::nullopt;
    for (double w = w0; w <= max_width * 1.000001; w *= 4.0) {
        const double l = guess - w, r = guess + w;
        const double fl = f(l), fr = f(r);
        std::optional<double> left, right;
        if (opposite(fl, fg)) left = bisect(f, l, guess, fl, fg);
        if (opposite(fr, fg)) right = bisect(f, guess, r, fg, fr);
        if (left && right) return std::fabs(*left - guess) <= std::fabs(*right - guess) ? left : right;
        if (left) return left;
        if (right) return right;
    }
    return std::nullopt;
}

Point as_point(SweepAxis axis, double sweep, double solved) {
    return axis == SweepAxis::a ? Point{sweep, solved} : Point{solved, sweep};
}

double solved_coord(SweepAxis axis, Point p) { return axis == SweepAxis::a ? p.y : p.x; }

}  // namespace

std::optional<double> solve_on_line(const BoundaryCondition& cond, SweepAxis axis, double fixed, double guess,
                                    double max_width, double tol, int depth) {
    const Fn f = along(cond, axis, fixed, depth, ConditionForm::segment);
    const auto root = nearest_root(f, guess, 1e-7, max_width);
    if (!root) return std::nullopt;
    const double v = f(*root);
    if (!(std::fabs(v) < tol)) return std::nullopt;
    return root;
}

CurveTrace trace_curve(const BoundaryCondition& cond, const Sweep& sweep, const TraceOptions& opts) {
    if (!(opts.step > 0.0)) throw ParameterError("step must be positive");
    CurveTrace tr;
    tr.condition = cond;
    tr.axis = sweep.axis;

    const double dir = sweep.to >= sweep.from ? 1.0 : -1.0;
    const double span = std::fabs(sweep.to - sweep.from);
    const auto count = static_cast<long>(std::floor(span / opts.step + 1e-9));
    std::vector<double> values;
    for (long k = 0; k <= count; ++k) values.push_back(sweep.from + dir * static_cast<double>(k) * opts.step);
    if (std::fabs(values.back() - sweep.to) > 1e-12 * std::max(1.0, span)) values.push_back(sweep.to);

    auto eval_guards = [&](Point ab) {
        std::vector<double> g;
        for (const auto& c : opts.guards) g.push_back(condition_value(Params(ab.x, ab.y), c, opts.depth));
        return g;
    };

    // First sample from the supplied bracket.
    {
        const Fn f = along(cond, sweep.axis, values[0], opts.depth, ConditionForm::segment);
        const double flo = f(sweep.lo), fhi = f(sweep.hi);
        if (!opposite(flo, fhi)) throw NotFoundError("initial interval does not bracket a zero of " + cond.str());
        const double x = bisect(f, sweep.lo, sweep.hi, flo, fhi);
        const double v = f(x);
        if (!(std::fabs(v) < opts.tol)) throw NotFoundError("initial bracket holds a jump, not a zero");
        tr.samples.push_back(as_point(sweep.axis, values[0], x));
        tr.residuals.push_back(v);
    }
    std::vector<double> guards_prev = eval_guards(tr.samples.back());

    // Zero of guard g along the curve between sweep values lo and hi, with the
    // curve point at lo known.
    auto locate_guard = [&](std::size_t g, double lo, double hi, double x_lo, Point at) {
        double glo = guards_prev[g];
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            const Fn fm = along(cond, sweep.axis, mid, opts.depth, ConditionForm::segment);
            const auto r = nearest_root(fm, x_lo, 1e-9, 0.05);
            if (!r) break;
            const Point pm = as_point(sweep.axis, mid, *r);
            const double gm = condition_value(Params(pm.x, pm.y), opts.guards[g], opts.depth);
            at = pm;
            if (opposite(gm, glo))
                hi = mid;
            else
                lo = mid, glo = gm, x_lo = *r;
        }
        const double gv = condition_value(Params(at.x, at.y), opts.guards[g], opts.depth);
        return std::fabs(gv) < 1e-8 ? std::optional<Point>(at) : std::nullopt;
    };
    auto crossed_guard = [&](const std::vector<double>& now, double lo, double hi, Point end) -> bool {
        for (std::size_t g = 0; g < opts.guards.size(); ++g) {
            if (!opposite(guards_prev[g], now[g])) continue;
            if (const auto at = locate_guard(g, lo, hi, solved_coord(sweep.axis, tr.samples.back()), end)) {
                tr.end = TraceEnd::guard;
                tr.end_point = *at;
                return true;
            }
        }
        return false;
    };

    for (std::size_t k = 1; k < values.size(); ++k) {
        const double prev = solved_coord(sweep.axis, tr.samples.back());
        double guess = prev;
        if (tr.samples.size() >= 2) {
            // Linear extrapolation from the last two samples.
            const std::size_t m = tr.samples.size();
            const double s1 = values[k - 1], s0 = values[k - 2];
            const double x1 = prev, x0 = solved_coord(sweep.axis, tr.samples[m - 2]);
            guess = x1 + (x1 - x0) * (values[k] - s1) / (s1 - s0);
        }
        const Fn f = along(cond, sweep.axis, values[k], opts.depth, ConditionForm::segment);
        const double w0 = std::max(1e-9, 2.0 * std::fabs(guess - prev));
        const auto root = nearest_root(f, guess, w0, 0.05);
        const double v = root ? f(*root) : kNaN;
        if (!root || !(std::fabs(v) < opts.tol)) {
            // Shrink onto the last sweep value where the branch still holds.
            double lo = values[k - 1], hi = values[k], x_lo = prev;
            Point last = tr.samples.back();
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                const Fn fm = along(cond, sweep.axis, mid, opts.depth, ConditionForm::segment);
                const auto r = nearest_root(fm, x_lo, 1e-9, 0.05);
                if (r && std::fabs(fm(*r)) < opts.tol) {
                    lo = mid, x_lo = *r;
                    last = as_point(sweep.axis, mid, *r);
                } else {
                    hi = mid;
                }
            }
            if (crossed_guard(eval_guards(last), values[k - 1], lo, last)) return tr;
            tr.end = TraceEnd::bracket_lost;
            tr.end_point = last;
            return tr;
        }
        const Point sample = as_point(sweep.axis, values[k], *root);
        const std::vector<double> guards_now = eval_guards(sample);
        if (crossed_guard(guards_now, values[k - 1], values[k], sample)) return tr;
        guards_prev = guards_now;
        tr.samples.push_back(sample);
        tr.residuals.push_back(v);
    }
    return tr;
}

namespace {

// Roots of f on [lo, hi] found by scanning `pieces` subintervals.
std::vector<double> all_roots(const Fn& f, double lo, double hi, int pieces) {
    std::vector<double> out;
    double x0 = lo, f0 = f(lo);
    for (int k = 1; k <= pieces; ++k) {
        const double x1 = lo + (hi - lo) * k / pieces;
        const double f1 = f(x1);
        if (f0 == 0.0) out.push_back(x0);
        if (opposite(f0, f1)) out.push_back(bisect(f, x0, x1, f0, f1));
        x0 = x1;
        f0 = f1;
    }
    if (f0 == 0.0) out.push_back(x0);
    return out;
}

std::optional<double> closest(const std::vector<double>& xs, double target) {
    if (xs.empty()) return std::nullopt;
    return *std::min_element(xs.begin(), xs.end(),
                             [&](double l, double r) { return std::fabs(l - target) < std::fabs(r - target); });
}

}  // namespace

Point solve_endpoint(const BoundaryCondition& first, const BoundaryCondition& second, const ParamBox& box, double tol,
                     int depth) {
    if (!(box.a_lo < box.a_hi && box.b_lo < box.b_hi)) throw ParameterError("empty parameter box");
    double b_target = 0.5 * (box.b_lo + box.b_hi);
    // b solving the first condition at a, on the branch nearest the last one.
    auto b_of = [&](double a) -> std::optional<double> {
        const Fn f = along(first, SweepAxis::a, a, depth, ConditionForm::line);
        return closest(all_roots(f, box.b_lo, box.b_hi, 64), b_target);
    };
    const Fn g = [&](double a) {
        const auto b = b_of(a);
        if (!b || !Params::in_main_region(a, *b)) return kNaN;
        return condition_value(Params(a, *b), second, depth, ConditionForm::line);
    };

    // Sign changes of g over the a-interval; take the one nearest the center.
    const int pieces = 32;
    const double a_mid = 0.5 * (box.a_lo + box.a_hi);
    std::optional<std::pair<double, double>> bracket;
    double a0 = box.a_lo, g0 = g(a0);
    for (int k = 1; k <= pieces; ++k) {
        const double a1 = box.a_lo + (box.a_hi - box.a_lo) * k / pieces;
        const double g1 = g(a1);
        if (opposite(g0, g1) || g0 == 0.0) {
            const double c = 0.5 * (a0 + a1);
            if (!bracket || std::fabs(c - a_mid) < std::fabs(0.5 * (bracket->first + bracket->second) - a_mid))
                bracket = {a0, a1};
        }
        a0 = a1;
        g0 = g1;
    }
    if (!bracket) throw NotFoundError("no simultaneous zero of " + first.str() + " and " + second.str() + " in box");

    double lo = bracket->first, hi = bracket->second;
    b_target = b_of(0.5 * (lo + hi)).value_or(b_target);
    double glo = g(lo), ghi = g(hi);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        const double gm = g(mid);
        if (std::isnan(gm)) break;
        if (gm == 0.0) {
            lo = hi = mid;
            break;
        }
        if (opposite(gm, glo))
            hi = mid, ghi = gm;
        else
            lo = mid, glo = gm;
        if (auto b = b_of(mid)) b_target = *b;
    }
    const double a = std::fabs(glo) <= std::fabs(ghi) ? lo : hi;
    const auto b = b_of(a);
    if (!b) throw NotFoundError("lost the first condition at the endpoint");
    const Params p(a, *b);
    // Both conditions must hold as memberships, not only on the supporting lines.
    const double v1 = condition_value(p, first, depth, ConditionForm::segment);
    const double v2 = condition_value(p, second, depth, ConditionForm::segment);
    if (!(std::fabs(v1) < tol && std::fabs(v2) < tol))
        throw NotFoundError("endpoint solve did not converge: |" + first.str() + "|=" + std::to_string(std::fabs(v1)) +
                            " |" + second.str() + "|=" + std::to_string(std::fabs(v2)));
    return {a, *b};
}

std::vector<ConditionMatch> rank_conditions(const Params& params, int max_index) {
    std::vector<ConditionMatch> out;
    for (int i = 1; i <= max_index; ++i)
        for (auto c : {BoundaryCondition::z_on_stable_seg(i), BoundaryCondition::v_on_unstable_piece(i),
                       BoundaryCondition::z_on_y_axis(i), BoundaryCondition::z_equals_v(i)}) {
            try {
                out.push_back({c, condition_value(params, c)});
            } catch (const DivergenceError&) {
            }
        }
    std::stable_sort(out.begin(), out.end(), [](const ConditionMatch& l, const ConditionMatch& r) {
        return std::fabs(l.value) < std::fabs(r.value);
    });
    return out;
}

ConditionMatch assign_condition(const Params& params, int max_index) {
    const auto ranked = rank_conditions(params, max_index);
    if (ranked.empty()) throw NotFoundError("no condition could be evaluated");
    return ranked.front();
}

const std::vector<EndpointSpec>& endpoint_catalog() {
    using BC = BoundaryCondition;
    // Boxes are coarse brackets read off the parameter-plane picture.
    static const std::vector<EndpointSpec> catalog = {
        {1, BC::z_on_stable_seg(1), BC::v_on_unstable_piece(1), {1.50, 1.54, 0.52, 0.58}},
        {2, BC::v_on_unstable_piece(1), BC::z_on_stable_seg(2), {1.60, 1.64, 0.59, 0.64}},
        {3, BC::z_on_stable_seg(2), BC::z_on_y_axis(1), {1.48, 1.52, 0.89, 0.93}},
        {4, BC::z_on_stable_seg(2), BC::z_equals_v(2), {1.46, 1.50, 0.89, 0.92}},
        {5, BC::v_on_unstable_piece(2), BC::z_on_stable_seg(3), {1.46, 1.50, 0.94, 0.98}},
        {6, BC::z_on_stable_seg(3), BC::z_equals_v(3), {1.22, 1.26, 0.90, 0.94}},
    };
    return catalog;
}

Point catalog_endpoint(int n, double tol) {
    for (const auto& e : endpoint_catalog())
        if (e.n == n) return solve_endpoint(e.first, e.second, e.box, tol);
    throw ParameterError("no catalog entry for endpoint " + std::to_string(n));
}

std::vector<std::pair<int, Point>> reference_pairs() {
    return {{1, {1.46, 0.332873}}, {2, {1.58, 0.587775}}, {3, {1.56, 0.75378}}, {5, {1.48115, 0.94}},
            {6, {1.35, 0.918178}}};
}

CurveSpec curve_spec(int n) {
    using BC = BoundaryCondition;
    switch (n) {
        case 1: return {1, BC::z_on_stable_seg(1), SweepAxis::b, std::nullopt};
        case 2: return {2, BC::v_on_unstable_piece(1), SweepAxis::a, std::nullopt};
        case 3: return {3, BC::z_on_stable_seg(2), SweepAxis::a, std::nullopt};
        case 4: case 5: case 6: {
            // C4 has no reference pair; its anchor is the midpoint of the
            // chord between the tabulated endpoints (a_3, b_3) and (a_4, b_4).
            const Point anchor = n == 4   ? Point{0.5 * (1.50065366 + 1.4778227), 0.5 * (0.911203728 + 0.906571953)}
                                 : n == 5 ? Point{1.48115, 0.94}
                                          : Point{1.35, 0.918178};
            const ConditionMatch m = assign_condition(Params(anchor.x, anchor.y));
            return {n, m.condition, n == 5 ? SweepAxis::b : SweepAxis::a, anchor};
        }
        default: throw ParameterError("curve catalog covers C1..C6");
    }
}

namespace {

// Catalog endpoints of C_n in sweep order; C1 starts at the tent-map edge.
std::pair<Point, Point> catalog_ends(int n) {
    const Point start = n == 1 ? Point{std::sqrt(2.0), 0.0} : catalog_endpoint(n - 1);
    return {start, catalog_endpoint(n)};
}

CurveTrace trace_with(const CurveSpec& spec, double from, double to, double step, double guess, double tol) {
    const SweepAxis ax = spec.axis;
    const auto x0 = solve_on_line(spec.condition, ax, from, guess, 0.05, tol);
    if (!x0) throw NotFoundError("could not start the trace of C" + std::to_string(spec.n));
    Sweep sweep{ax, from, to, *x0 - 1e-12, *x0 + 1e-12};
    const Fn f = along(spec.condition, ax, from, 0, ConditionForm::segment);
    for (double w = 1e-12; w < 0.05 && !opposite(f(sweep.lo), f(sweep.hi)); w *= 4) {
        sweep.lo = *x0 - w;
        sweep.hi = *x0 + w;
    }
    TraceOptions opts;
    opts.step = step;
    opts.tol = tol;
    CurveTrace tr = trace_curve(spec.condition, sweep, opts);
    std::vector<double> t1;
    for (const Point& p : tr.samples)
        t1.push_back(table1_terms(table1()[static_cast<std::size_t>(spec.n - 1)], p.x, p.y).relative());
    tr.table1_residuals = std::move(t1);
    return tr;
}

}  // namespace

CurveTrace trace_catalog_curve(int n, int samples, double tol) {
    const CurveSpec spec = curve_spec(n);
    if (samples < 2) throw ParameterError("need at least two samples");
    const auto [start, end] = catalog_ends(n);
    const SweepAxis ax = spec.axis;
    auto sweep_of = [ax](Point p) { return ax == SweepAxis::a ? p.x : p.y; };

    // The map is not invertible at b = 0, so C1 starts a little above it.
    double from = n == 1 ? 0.01 : sweep_of(start);
    double to = sweep_of(end);
    const double margin = 1e-7 * std::fabs(to - from);
    from += (to > from ? margin : -margin);
    to -= (to > from ? margin : -margin);
    return trace_with(spec, from, to, std::fabs(to - from) / (samples - 1), solved_coord(ax, start), tol);
}

CurveTrace trace_catalog_range(int n, double from, double to, double step, double tol) {
    const CurveSpec spec = curve_spec(n);
    const auto [start, end] = catalog_ends(n);
    const SweepAxis ax = spec.axis;
    const double s0 = ax == SweepAxis::a ? start.x : start.y, s1 = ax == SweepAxis::a ? end.x : end.y;
    const double x0 = solved_coord(ax, start), x1 = solved_coord(ax, end);
    const double guess = x0 + (x1 - x0) * (from - s0) / (s1 - s0);
    return trace_with(spec, from, to, step, guess, tol);
}

double extrapolate_to_b0(const CurveTrace& trace, int points) {
    if (trace.axis != SweepAxis::b) throw ParameterError("extrapolation needs a trace swept in b");
    if (static_cast<int>(trace.samples.size()) < points || points < 1) throw ParameterError("not enough samples");
    std::vector<Point> s(trace.samples.begin(), trace.samples.end());
    std::sort(s.begin(), s.end(), [](Point l, Point r) { return l.y < r.y; });
    // Neville's scheme for the interpolating polynomial a(b) at b = 0.
    std::vector<double> p(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) p[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i)].x;
    for (int m = 1; m < points; ++m)
        for (int i = 0; i + m < points; ++i) {
            const double bi = s[static_cast<std::size_t>(i)].y, bj = s[static_cast<std::size_t>(i + m)].y;
            p[static_cast<std::size_t>(i)] = ((0.0 - bj) * p[static_cast<std::size_t>(i)] + (bi - 0.0) * p[static_cast<std::size_t>(i + 1)]) / (bi - bj);
        }
    return p[0];
}

Point RegionScan::node(int i, int j) const {
    const double a = na > 1 ? a_lo + (a_hi - a_lo) * i / (na - 1) : a_lo;
    const double b = nb > 1 ? b_lo + (b_hi - b_lo) * j / (nb - 1) : b_lo;
    return {a, b};
}

namespace {

CellState classify_cell(Point ab, int depth, double tol) {
    if (!Params::in_main_region(ab.x, ab.y)) return CellState::outside;
    try {
        return has_homoclinic(Params(ab.x, ab.y), depth, tol) ? CellState::yes : CellState::no;
    } catch (const Error&) {
        return CellState::unknown;
    }
}

}  // namespace

RegionScan scan_region(double a_lo, double a_hi, double b_lo, double b_hi, int na, int nb, int depth, double tol,
                       unsigned threads) {
    if (na < 1 || nb < 1) throw ParameterError("grid must have at least one node per axis");
    RegionScan scan{a_lo, a_hi, b_lo, b_hi, na, nb, {}};
    const std::size_t total = static_cast<std::size_t>(na) * static_cast<std::size_t>(nb);
    scan.cells.assign(total, CellState::unknown);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
    // Each worker owns a strided subset of cells, so the result does not
    // depend on scheduling.
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t c = t; c < total; c += threads) {
                    const int i = static_cast<int>(c % static_cast<std::size_t>(na));
                    const int j = static_cast<int>(c / static_cast<std::size_t>(na));
                    scan.cells[c] = classify_cell(scan.node(i, j), depth, tol);
                }
            });
    }
    return scan;
}

std::vector<RayFlip> scan_ray(double b, double a_from, double a_to, int samples, int depth, double tol) {
    if (samples < 2) throw ParameterError("need at least two samples");
    std::vector<double> as(static_cast<std::size_t>(samples));
    std::vector<CellState> st(as.size());
    for (int i = 0; i < samples; ++i) {
        as[static_cast<std::size_t>(i)] = a_from + (a_to - a_from) * i / (samples - 1);
        st[static_cast<std::size_t>(i)] = classify_cell({as[static_cast<std::size_t>(i)], b}, depth, tol);
    }
    std::vector<RayFlip> out;
    for (std::size_t i = 0; i + 1 < as.size(); ++i) {
        const CellState l = st[i], r = st[i + 1];
        if (l == r || (l != CellState::yes && l != CellState::no) || (r != CellState::yes && r != CellState::no))
            continue;
        const double mid = 0.5 * (as[i] + as[i + 1]);
        const CellState m = classify_cell({mid, b}, depth, tol);
        const double refined = m == l ? 0.5 * (mid + as[i + 1]) : 0.5 * (as[i] + mid);
        out.push_back({as[i], as[i + 1], refined, r == CellState::yes});
    }
    return out;
}

}  // namespace lozi
