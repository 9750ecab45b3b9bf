#include "lozi/cli.hpp"

#include "lozi/boundary.hpp"
#include "lozi/error.hpp"
#include "lozi/export.hpp"
#include "lozi/intersect.hpp"
#include "lozi/manifolds.hpp"
#include "lozi/table1.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

namespace lozi::cli {

using Json = nlohmann::ordered_json;

std::string to_string(Command c) {
    switch (c) {
        case Command::manifold: return "manifold";
        case Command::homoclinic: return "homoclinic";
        case Command::trace: return "trace";
        case Command::endpoints: return "endpoints";
        case Command::scan: return "scan";
        case Command::verify_tables: return "verify-tables";
    }
    return "?";
}

std::string to_string(Format f) {
    switch (f) {
        case Format::csv: return "csv";
        case Format::json: return "json";
        case Format::svg: return "svg";
    }
    return "?";
}

std::vector<Format> formats_for(Command c) {
    switch (c) {
        case Command::manifold: return {Format::csv, Format::json, Format::svg};
        case Command::homoclinic: return {Format::json, Format::csv};
        case Command::scan: return {Format::csv, Format::json, Format::svg};
        default: return {Format::csv, Format::json};
    }
}

std::vector<int> parse_curves(const std::string& text) {
    auto one = [](std::string s) {
        if (!s.empty() && (s[0] == 'C' || s[0] == 'c')) s.erase(0, 1);
        std::size_t used = 0;
        const int n = std::stoi(s, &used);
        if (used != s.size() || n < 1) throw ParameterError("bad curve name");
        return n;
    };
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    try {
        while (std::getline(ss, item, ',')) {
            if (const auto dots = item.find(".."); dots != std::string::npos) {
                const int lo = one(item.substr(0, dots)), hi = one(item.substr(dots + 2));
                if (hi < lo) throw ParameterError("bad curve range");
                for (int n = lo; n <= hi; ++n) out.push_back(n);
            } else {
                out.push_back(one(item));
            }
        }
    } catch (const std::logic_error&) {
        throw ParameterError("cannot parse curve list: " + text);
    }
    if (out.empty()) throw ParameterError("empty curve list");
    return out;
}

namespace {

class UsageError : public Error {
public:
    using Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Writes to `out` when path is "-", else to the file.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path);
    f << text;
    if (!f) throw Error("write failed: " + path);
}

std::string data_dir(const RunConfig& cfg) { return cfg.fixture_dir.empty() ? std::string(LOZI_DATA_DIR) : cfg.fixture_dir; }

std::map<int, Point> read_table2(const std::string& path) {
    std::map<int, Point> rows;
    std::stringstream ss(read_file(path));
    std::string line;
    std::getline(ss, line);
    if (line.rfind("curve,a_n,b_n", 0) != 0) throw Error("unexpected header in " + path);
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::string c, a, b;
        std::getline(ls, c, ',');
        std::getline(ls, a, ',');
        std::getline(ls, b, ',');
        rows[parse_curves(c).at(0)] = {std::stod(a), std::stod(b)};
    }
    return rows;
}

// ---- manifold ----

struct BuiltArc {
    ManifoldArc arc;
    int requested = 0, completed = 0;
    bool truncated = false;
};

BuiltArc build_arc(const std::function<ManifoldArc(int)>& make, int requested) {
    BuiltArc out;
    out.requested = requested;
    for (int k = requested; k >= 0; --k) {
        try {
            out.arc = make(k);
            out.completed = k;
            out.truncated = k != requested;
            return out;
        } catch (const TruncationError&) {
        }
    }
    throw Error("vertex budget too small for any arc");
}

Json arc_json(const BuiltArc& b) {
    Json j;
    j["requested"] = b.requested;
    j["completed"] = b.completed;
    j["truncated"] = b.truncated;
    Json verts = Json::array();
    for (const Point& p : b.arc.line.vertices()) verts.push_back({p.x, p.y});
    j["vertices"] = std::move(verts);
    Json anchors = Json::array();
    for (const auto& [i, l] : b.arc.anchors) anchors.push_back({{"index", i}, {"label", l.str()}});
    j["anchors"] = std::move(anchors);
    Json bps = Json::array();
    for (const auto& [i, age] : b.arc.breakpoints) bps.push_back({{"index", i}, {"age", age}});
    j["breakpoints"] = std::move(bps);
    return j;
}

std::string stem_of(const std::string& out, const std::string& fallback) {
    if (out == "-") return fallback;
    if (out.size() > 4 && out.substr(out.size() - 4) == ".csv") return out.substr(0, out.size() - 4);
    return out;
}

int cmd_manifold(const RunConfig& cfg, std::ostream& out) {
    const Params p(cfg.a, cfg.b);
    const std::size_t budget = cfg.max_vertices ? cfg.max_vertices : kDefaultMaxVertices;
    const BuiltArc u = build_arc([&](int k) { return unstable_arc(p, k, budget); }, pairs_for_depth(cfg.depth));
    const BuiltArc s = build_arc([&](int k) { return stable_arc(p, k, budget); }, cfg.depth);

    if (cfg.format == Format::csv) {
        const std::string stem = stem_of(cfg.out, "manifold");
        for (const BuiltArc* b : {&s, &u}) {
            const bool stable = b == &s;
            std::vector<std::string> meta = {
                std::string("arc=") + (stable ? "stable" : "unstable"), "a=" + csv_number(cfg.a),
                "b=" + csv_number(cfg.b), "depth=" + std::to_string(cfg.depth),
                std::string(stable ? "steps" : "pairs") + "=" + std::to_string(b->completed),
                "truncated=" + std::string(b->truncated ? "true" : "false")};
            if (b->truncated) meta.push_back("requested=" + std::to_string(b->requested));
            std::ostringstream os;
            write_arc_csv(os, b->arc, meta);
            const std::string path = stem + (stable ? "_stable.csv" : "_unstable.csv");
            emit(path, os.str(), out);
        }
        return 0;
    }
    if (cfg.format == Format::json) {
        Json j;
        j["a"] = cfg.a;
        j["b"] = cfg.b;
        j["depth"] = cfg.depth;
        j["stable"] = arc_json(s);
        j["unstable"] = arc_json(u);
        emit(cfg.out, j.dump(2) + "\n", out);
        return 0;
    }

    SvgCanvas svg({-9.0, 9.0, -10.5, 6.5}, 900, 860);
    char title[96];
    std::snprintf(title, sizeof title, "a=%g, b=%g, depth %d%s", cfg.a, cfg.b, cfg.depth,
                  (s.truncated || u.truncated) ? " (truncated)" : "");
    svg.title(title);
    svg.axes("x", "y");
    svg.polyline(s.arc.line.vertices(), "red", 1.2);
    svg.polyline(u.arc.line.vertices(), "blue", 1.2);
    for (const BuiltArc* b : {&s, &u}) {
        const std::string color = b == &s ? "red" : "blue";
        for (const auto& [i, l] : b->arc.anchors) {
            const Point q = b->arc.line[i];
            if (l.base == AnchorLabel::Base::X) continue;
            svg.dot(q, color);
            svg.label(q, l.str(), color);
        }
    }
    const Point X = fixed_point_X(p);
    svg.dot(X, "black", 3.5);
    svg.label(X, "X", "black", 12);
    emit(cfg.out, svg.str(), out);
    return 0;
}

// ---- homoclinic ----

Json record_json(const IntersectionRecord& r) {
    return {{"x", r.point.x},
            {"y", r.point.y},
            {"kind", to_string(r.kind)},
            {"margin", r.margin},
            {"unstable_classification", r.unstable_classification}};
}

int cmd_homoclinic(const RunConfig& cfg, std::ostream& out) {
    double b = cfg.b;
    std::optional<BoundaryCondition> snapped_on;
    if (cfg.snap) {
        const ConditionMatch m = assign_condition(Params(cfg.a, cfg.b));
        const auto root = solve_on_line(m.condition, SweepAxis::a, cfg.a, cfg.b, 0.01);
        if (!root) throw NotFoundError("could not snap onto " + m.condition.str());
        b = *root;
        snapped_on = m.condition;
    }
    const Params p(cfg.a, b);
    const auto fund = homoclinic_on_fundamental(p, cfg.depth, cfg.tol);
    const TangencyReport rep = check_last_tangency(p, cfg.depth, cfg.tol);

    if (cfg.format == Format::csv) {
        std::ostringstream os;
        os << "# a=" << csv_number(cfg.a) << "\n# b=" << csv_number(b) << "\n# depth=" << cfg.depth
           << "\n# tol=" << csv_number(rep.tol) << "\n# has_homoclinic=" << (fund.empty() ? "false" : "true") << '\n';
        if (snapped_on) os << "# snapped_on=" << snapped_on->str() << '\n';
        os << "x,y,kind,flag,labels,on_fundamental,margin,unstable_classification\n";
        for (const auto& t : rep.records) {
            std::string labels;
            for (const auto& l : t.labels) labels += (labels.empty() ? "" : " ") + l.str();
            os << csv_number(t.record.point.x) << ',' << csv_number(t.record.point.y) << ','
               << to_string(t.record.kind) << ',' << to_string(t.flag) << ',' << labels << ','
               << (t.on_fundamental ? "true" : "false") << ',' << csv_number(t.record.margin) << ','
               << (t.record.unstable_classification ? "true" : "false") << '\n';
        }
        emit(cfg.out, os.str(), out);
        return 0;
    }
    Json j;
    j["a"] = cfg.a;
    j["b"] = b;
    if (snapped_on) j["snapped_on"] = snapped_on->str();
    j["depth"] = cfg.depth;
    j["tol"] = rep.tol;
    j["has_homoclinic"] = !fund.empty();
    Json f = Json::array();
    for (const auto& r : fund) f.push_back(record_json(r));
    j["fundamental"] = std::move(f);
    Json t;
    t["transversal"] = rep.transversal;
    t["tangential"] = rep.tangential;
    t["undetermined"] = rep.undetermined;
    t["unstable"] = rep.unstable;
    t["other"] = rep.other;
    t["all_tangential"] = rep.all_tangential;
    Json recs = Json::array();
    for (const auto& r : rep.records) {
        Json e = record_json(r.record);
        Json labels = Json::array();
        for (const auto& l : r.labels) labels.push_back(l.str());
        e["labels"] = std::move(labels);
        e["flag"] = to_string(r.flag);
        e["on_fundamental"] = r.on_fundamental;
        recs.push_back(std::move(e));
    }
    t["records"] = std::move(recs);
    j["tangency"] = std::move(t);
    emit(cfg.out, j.dump(2) + "\n", out);
    return 0;
}

// ---- trace ----

int cmd_trace(const RunConfig& cfg, std::ostream& out) {
    if (cfg.curve > 6) throw ParameterError("no defining condition is known for C" + std::to_string(cfg.curve));
    const double tol = cfg.tol > 0 ? cfg.tol : 1e-10;
    const CurveSpec spec = curve_spec(cfg.curve);
    const CurveTrace tr = cfg.has_range ? trace_catalog_range(cfg.curve, cfg.from, cfg.to, cfg.step, tol)
                                        : trace_catalog_curve(cfg.curve, cfg.samples, tol);
    const bool ok = tr.end == TraceEnd::completed;
    if (cfg.format == Format::csv) {
        std::ostringstream os;
        os << "# curve=C" << cfg.curve << "\n# condition=" << spec.condition.str()
           << "\n# sweep=" << (spec.axis == SweepAxis::a ? "a" : "b") << "\n# tol=" << csv_number(tol)
           << "\n# end=" << to_string(tr.end) << '\n';
        os << "a,b,residual,table1_residual,status\n";
        for (std::size_t i = 0; i < tr.samples.size(); ++i)
            os << csv_number(tr.samples[i].x) << ',' << csv_number(tr.samples[i].y) << ','
               << csv_number(tr.residuals[i]) << ',' << csv_number((*tr.table1_residuals)[i]) << ",ok\n";
        if (!ok && tr.end_point)
            os << csv_number(tr.end_point->x) << ',' << csv_number(tr.end_point->y) << ",,," << to_string(tr.end)
               << '\n';
        emit(cfg.out, os.str(), out);
    } else {
        Json j;
        j["curve"] = "C" + std::to_string(cfg.curve);
        j["condition"] = spec.condition.str();
        j["sweep"] = spec.axis == SweepAxis::a ? "a" : "b";
        j["tol"] = tol;
        j["end"] = to_string(tr.end);
        Json rows = Json::array();
        for (std::size_t i = 0; i < tr.samples.size(); ++i)
            rows.push_back({{"a", tr.samples[i].x},
                            {"b", tr.samples[i].y},
                            {"residual", tr.residuals[i]},
                            {"table1_residual", (*tr.table1_residuals)[i]}});
        j["samples"] = std::move(rows);
        if (tr.end_point) j["end_point"] = {tr.end_point->x, tr.end_point->y};
        emit(cfg.out, j.dump(2) + "\n", out);
    }
    return ok ? 0 : static_cast<int>(Exit::computation);
}

// ---- endpoints ----

struct EndpointRow {
    int n;
    std::optional<Point> solved;
    std::optional<Point> expected;
    std::string status;
};

std::vector<EndpointRow> solve_endpoints(const RunConfig& cfg) {
    const auto fixture = read_table2(data_dir(cfg) + "/table2_endpoints.csv");
    const double tol = cfg.tol > 0 ? cfg.tol : 1e-9;
    std::vector<EndpointRow> rows;
    for (int n : cfg.curves) {
        EndpointRow r{n, std::nullopt, std::nullopt, "ok"};
        if (auto it = fixture.find(n); it != fixture.end()) r.expected = it->second;
        if (n > 6) {
            r.status = "no-condition";
        } else {
            try {
                r.solved = catalog_endpoint(n, tol);
            } catch (const NotFoundError&) {
                r.status = "not-found";
            }
        }
        if (r.solved && r.expected &&
            (std::fabs(r.solved->x - r.expected->x) > cfg.match_tol ||
             std::fabs(r.solved->y - r.expected->y) > cfg.match_tol))
            r.status = "mismatch";
        rows.push_back(r);
    }
    return rows;
}

int status_exit(const std::vector<std::string>& statuses) {
    int code = 0;
    for (const auto& s : statuses) {
        if (s == "ok") continue;
        code = std::max(code, s == "mismatch" || s == "fail" ? 3 : 2);
    }
    // A computation error outranks a failed comparison.
    for (const auto& s : statuses)
        if (s != "ok" && s != "mismatch" && s != "fail") return 2;
    return code;
}

int cmd_endpoints(const RunConfig& cfg, std::ostream& out) {
    const auto rows = solve_endpoints(cfg);
    std::vector<std::string> statuses;
    if (cfg.format == Format::csv) {
        std::ostringstream os;
        os << "curve,a_n,b_n,abs_da,abs_db,status\n";
        for (const auto& r : rows) {
            os << 'C' << r.n << ',';
            if (r.solved)
                os << csv_number(r.solved->x) << ',' << csv_number(r.solved->y) << ',';
            else
                os << ",,";
            if (r.solved && r.expected)
                os << csv_number(std::fabs(r.solved->x - r.expected->x)) << ','
                   << csv_number(std::fabs(r.solved->y - r.expected->y)) << ',';
            else
                os << ",,";
            os << r.status << '\n';
            statuses.push_back(r.status);
        }
        emit(cfg.out, os.str(), out);
    } else {
        Json arr = Json::array();
        for (const auto& r : rows) {
            Json e;
            e["curve"] = "C" + std::to_string(r.n);
            e["a_n"] = r.solved ? Json(r.solved->x) : Json(nullptr);
            e["b_n"] = r.solved ? Json(r.solved->y) : Json(nullptr);
            if (r.solved && r.expected) {
                e["abs_da"] = std::fabs(r.solved->x - r.expected->x);
                e["abs_db"] = std::fabs(r.solved->y - r.expected->y);
            }
            e["status"] = r.status;
            statuses.push_back(r.status);
            arr.push_back(std::move(e));
        }
        emit(cfg.out, Json{{"endpoints", arr}}.dump(2) + "\n", out);
    }
    return status_exit(statuses);
}

// ---- scan ----

const char* cell_color(CellState s) {
    switch (s) {
        case CellState::yes: return "#f4a582";
        case CellState::no: return "#92c5de";
        case CellState::unknown: return "#bbbbbb";
        case CellState::outside: return "#ffffff";
    }
    return "#000000";
}

int cmd_scan(const RunConfig& cfg, std::ostream& out) {
    if (!(cfg.a_min < cfg.a_max && cfg.b_min < cfg.b_max)) throw ParameterError("empty scan range");
    const RegionScan scan =
        scan_region(cfg.a_min, cfg.a_max, cfg.b_min, cfg.b_max, cfg.na, cfg.nb, cfg.depth, cfg.tol, cfg.threads);
    std::vector<std::string> statuses;
    for (CellState c : scan.cells)
        if (c == CellState::unknown) statuses.emplace_back("unknown");

    if (cfg.format == Format::csv) {
        std::ostringstream os;
        os << "# depth=" << cfg.depth << "\n# grid=" << scan.na << 'x' << scan.nb << '\n';
        os << "a,b,state\n";
        for (int j = 0; j < scan.nb; ++j)
            for (int i = 0; i < scan.na; ++i) {
                const Point n = scan.node(i, j);
                os << csv_number(n.x) << ',' << csv_number(n.y) << ',' << to_string(scan.at(i, j)) << '\n';
            }
        emit(cfg.out, os.str(), out);
    } else if (cfg.format == Format::json) {
        Json j;
        j["a_range"] = {scan.a_lo, scan.a_hi};
        j["b_range"] = {scan.b_lo, scan.b_hi};
        j["na"] = scan.na;
        j["nb"] = scan.nb;
        j["depth"] = cfg.depth;
        Json cells = Json::array();
        for (CellState c : scan.cells) cells.push_back(to_string(c));
        j["cells"] = std::move(cells);
        emit(cfg.out, j.dump(2) + "\n", out);
    } else {
        SvgCanvas svg({cfg.a_min, cfg.a_max, cfg.b_min, cfg.b_max}, 820, 760);
        const double da = scan.na > 1 ? (cfg.a_max - cfg.a_min) / (scan.na - 1) : cfg.a_max - cfg.a_min;
        const double db = scan.nb > 1 ? (cfg.b_max - cfg.b_min) / (scan.nb - 1) : cfg.b_max - cfg.b_min;
        for (int j = 0; j < scan.nb; ++j)
            for (int i = 0; i < scan.na; ++i) {
                const Point n = scan.node(i, j);
                const Box cell{std::max(cfg.a_min, n.x - da / 2), std::min(cfg.a_max, n.x + da / 2),
                               std::max(cfg.b_min, n.y - db / 2), std::min(cfg.b_max, n.y + db / 2)};
                svg.cell(cell, cell_color(scan.at(i, j)));
            }
        // Boundary of the main region and the traced curves on top.
        svg.line({std::max(cfg.a_min, 1.0 - cfg.b_max), std::min(cfg.b_max, 1.0 - std::max(cfg.a_min, 1.0 - cfg.b_max))},
                 {std::min(cfg.a_max, 1.0 - cfg.b_min), std::max(cfg.b_min, 1.0 - std::min(cfg.a_max, 1.0 - cfg.b_min))},
                 "#444444", 1.0, true);
        static const char* palette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02"};
        for (int n = 1; n <= 6; ++n) {
            try {
                const CurveTrace tr = trace_catalog_curve(n, 60);
                svg.polyline(tr.samples, palette[n - 1], 2.0);
                const Point mid = tr.samples[tr.samples.size() / 2];
                svg.label(mid, "C" + std::to_string(n), palette[n - 1], 12);
            } catch (const Error&) {
            }
        }
        svg.axes("a", "b");
        svg.title("homoclinic points at depth " + std::to_string(cfg.depth));
        emit(cfg.out, svg.str(), out);
    }
    return status_exit(statuses);
}

// ---- verify-tables ----

struct Check {
    std::string name;
    double value;
    double threshold;
    bool pass;
};

std::vector<Check> table1_checks(const RunConfig& cfg) {
    std::vector<Check> checks;
    const std::string dir = data_dir(cfg);
    const auto parsed = parse_table1(read_file(dir + "/table1_coeffs.txt"));
    const bool same = checksum(parsed) == checksum(table1_verbatim());
    checks.push_back({"table1-fixture", same ? 0.0 : 1.0, 0.0, same});
    const auto errata = parse_errata(read_file(dir + "/table1_errata.txt"));
    const auto& builtin = table1_errata();
    bool errata_same = errata.size() == builtin.size();
    for (std::size_t i = 0; errata_same && i < errata.size(); ++i) {
        const Erratum &x = errata[i], &y = builtin[i];
        errata_same = x.n == y.n && x.which == y.which && x.b_power == y.b_power && x.a_power == y.a_power &&
                      x.printed == y.printed && x.corrected == y.corrected;
    }
    checks.push_back({"table1-errata", errata_same ? 0.0 : 1.0, 0.0, errata_same});
    for (int n : cfg.curves) {
        if (n > 6) continue;
        const CurveTrace tr = trace_catalog_curve(n, std::max(cfg.samples, 50));
        double worst = 0.0;
        for (double r : *tr.table1_residuals) worst = std::max(worst, std::fabs(r));
        const bool pass = tr.end == TraceEnd::completed && worst < 1e-8;
        checks.push_back({"table1-C" + std::to_string(n), worst, 1e-8, pass});
    }
    const Sqrt2Value edge = table1_residual_at_tent_edge(1);
    checks.push_back({"table1-C1-tent-edge", static_cast<double>(std::abs(edge.p) + std::abs(edge.q)), 0.0,
                      edge.is_zero()});
    return checks;
}

std::vector<Check> table2_checks(const RunConfig& cfg) {
    std::vector<Check> checks;
    for (const auto& r : solve_endpoints(cfg)) {
        if (r.n > 6) continue;
        const double dev = r.solved && r.expected ? std::max(std::fabs(r.solved->x - r.expected->x),
                                                             std::fabs(r.solved->y - r.expected->y))
                                                  : std::numeric_limits<double>::infinity();
        checks.push_back({"table2-C" + std::to_string(r.n), dev, cfg.match_tol, r.status == "ok"});
    }
    return checks;
}

int cmd_verify_tables(const RunConfig& cfg, std::ostream& out) {
    std::vector<Check> checks;
    if (cfg.table == 0 || cfg.table == 1) {
        auto c = table1_checks(cfg);
        checks.insert(checks.end(), c.begin(), c.end());
    }
    if (cfg.table == 0 || cfg.table == 2) {
        auto c = table2_checks(cfg);
        checks.insert(checks.end(), c.begin(), c.end());
    }
    bool all = true;
    for (const auto& c : checks) all = all && c.pass;
    if (cfg.format == Format::csv) {
        std::ostringstream os;
        os << "check,max_deviation,threshold,status\n";
        for (const auto& c : checks)
            os << c.name << ',' << csv_number(c.value) << ',' << csv_number(c.threshold) << ','
               << (c.pass ? "ok" : "fail") << '\n';
        emit(cfg.out, os.str(), out);
    } else {
        Json arr = Json::array();
        for (const auto& c : checks)
            arr.push_back({{"check", c.name},
                           {"max_deviation", std::isfinite(c.value) ? Json(c.value) : Json(nullptr)},
                           {"threshold", c.threshold},
                           {"status", c.pass ? "ok" : "fail"}});
        emit(cfg.out, Json{{"checks", arr}, {"pass", all}}.dump(2) + "\n", out);
    }
    return all ? 0 : static_cast<int>(Exit::verification);
}

}  // namespace

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto allowed = formats_for(cfg.command);
    if (std::find(allowed.begin(), allowed.end(), cfg.format) == allowed.end()) {
        err << "error: format " << to_string(cfg.format) << " is not available for " << to_string(cfg.command) << '\n';
        return static_cast<int>(Exit::usage);
    }
    if (cfg.depth < 1) {
        err << "error: depth must be at least 1\n";
        return static_cast<int>(Exit::usage);
    }
    try {
        switch (cfg.command) {
            case Command::manifold: return cmd_manifold(cfg, out);
            case Command::homoclinic: return cmd_homoclinic(cfg, out);
            case Command::trace: return cmd_trace(cfg, out);
            case Command::endpoints: return cmd_endpoints(cfg, out);
            case Command::scan: return cmd_scan(cfg, out);
            case Command::verify_tables: return cmd_verify_tables(cfg, out);
        }
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(Exit::usage);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(Exit::computation);
    }
    return static_cast<int>(Exit::computation);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stable and unstable manifolds of the Lozi map and the boundary of homoclinic parameters", "lozi"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Flat key=value file; command line flags take precedence");

    RunConfig cfg;
    std::string format;
    app.add_option("--tol", cfg.tol, "Contact or residual tolerance (0 picks the command default)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--depth", cfg.depth, "Map applications per arc")->capture_default_str();
    app.add_option("--out", cfg.out, "Output path, '-' for stdout")->capture_default_str();
    app.add_option("--format", format, "csv, json or svg")->check(CLI::IsMember({"csv", "json", "svg"}));
    app.add_option("--a", cfg.a, "Parameter a")->capture_default_str();
    app.add_option("--b", cfg.b, "Parameter b")->capture_default_str();
    app.fallthrough();

    auto* manifold = app.add_subcommand("manifold", "Export the stable and unstable arcs of X");
    manifold->add_option("--max-vertices", cfg.max_vertices, "Vertex budget per arc");

    auto* homoclinic = app.add_subcommand("homoclinic", "Report homoclinic intersections and their contact kinds");
    homoclinic->add_flag("--snap", cfg.snap, "Move b onto the nearest boundary condition before checking");

    std::string curve = "C1";
    std::optional<double> from, to;
    auto* trace = app.add_subcommand("trace", "Trace a boundary curve");
    trace->add_option("--curve", curve, "C1..C6")->capture_default_str();
    trace->add_option("--from,--a-from,--b-from", from, "Start of the sweep range");
    trace->add_option("--to,--a-to,--b-to", to, "End of the sweep range");
    trace->add_option("--step", cfg.step, "Sweep step")->check(CLI::PositiveNumber)->capture_default_str();
    trace->add_option("--samples", cfg.samples, "Samples between the catalog endpoints")->capture_default_str();

    std::string curves = "C1..C6";
    std::string fixtures;
    auto* endpoints = app.add_subcommand("endpoints", "Solve the curve endpoints and compare with the fixture");
    endpoints->add_option("--curves", curves, "Curve list, e.g. C1..C6 or C2,C5")->capture_default_str();
    endpoints->add_option("--fixtures", fixtures, "Directory holding table2_endpoints.csv");
    endpoints->add_option("--match-tol", cfg.match_tol, "Allowed deviation per coordinate")->capture_default_str();

    auto* scan = app.add_subcommand("scan", "Grid scan of homoclinic existence");
    scan->add_option("--a-min", cfg.a_min, "Grid range in a")->capture_default_str();
    scan->add_option("--a-max", cfg.a_max)->capture_default_str();
    scan->add_option("--b-min", cfg.b_min, "Grid range in b")->capture_default_str();
    scan->add_option("--b-max", cfg.b_max)->capture_default_str();
    scan->add_option("--na", cfg.na, "Cells along a")->check(CLI::PositiveNumber)->capture_default_str();
    scan->add_option("--nb", cfg.nb, "Cells along b")->check(CLI::PositiveNumber)->capture_default_str();
    scan->add_option("--threads", cfg.threads, "Worker threads, 0 for all cores")->capture_default_str();

    auto* verify = app.add_subcommand("verify-tables", "Check the coefficient table and the endpoint table");
    verify->add_option("--table", cfg.table, "1, 2 or 0 for both")->check(CLI::Range(0, 2))->capture_default_str();
    verify->add_option("--samples", cfg.samples, "Trace samples per curve (at least 50)")->capture_default_str();
    verify->add_option("--fixtures", fixtures, "Directory holding the fixtures");
    verify->add_option("--match-tol", cfg.match_tol, "Allowed endpoint deviation per coordinate")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(Exit::usage);
    }

    if (manifold->parsed()) cfg.command = Command::manifold;
    if (homoclinic->parsed()) cfg.command = Command::homoclinic;
    if (trace->parsed()) cfg.command = Command::trace;
    if (endpoints->parsed()) cfg.command = Command::endpoints;
    if (scan->parsed()) cfg.command = Command::scan;
    if (verify->parsed()) cfg.command = Command::verify_tables;

    try {
        cfg.format = format.empty() ? formats_for(cfg.command).front()
                     : format == "csv"  ? Format::csv
                     : format == "json" ? Format::json
                                        : Format::svg;
        if (cfg.command == Command::trace) {
            cfg.curve = parse_curves(curve).at(0);
            if (from.has_value() != to.has_value()) throw ParameterError("give both ends of the sweep range");
            if (from) {
                cfg.has_range = true;
                cfg.from = *from;
                cfg.to = *to;
            }
        }
        if (cfg.command == Command::endpoints) cfg.curves = parse_curves(curves);
        cfg.fixture_dir = fixtures;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(Exit::usage);
    }
    return execute(cfg, out, err);
}

}  // namespace lozi::cli
