#include "lozi/table1.hpp"

#include "lozi/error.hpp"

#include <cmath>
#include <sstream>

namespace lozi {

double BivariatePoly::operator()(double a, double b) const {
    double acc = 0.0;
    for (auto row = rows.rbegin(); row != rows.rend(); ++row) {
        double c = 0.0;
        for (auto it = row->rbegin(); it != row->rend(); ++it) c = c * a + static_cast<double>(*it);
        acc = acc * b + c;
    }
    return acc;
}

std::int64_t BivariatePoly::coeff(std::size_t bp, std::size_t ap) const {
    if (bp >= rows.size() || ap >= rows[bp].size()) return 0;
    return rows[bp][ap];
}

void BivariatePoly::set(std::size_t bp, std::size_t ap, std::int64_t value) {
    if (rows.size() <= bp) rows.resize(bp + 1);
    if (rows[bp].size() <= ap) rows[bp].resize(ap + 1, 0);
    rows[bp][ap] = value;
    while (!rows[bp].empty() && rows[bp].back() == 0) rows[bp].pop_back();
}

std::string BivariatePoly::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = rows.size(); k-- > 0;)
        for (std::size_t j = rows[k].size(); j-- > 0;) {
            const std::int64_t c = rows[k][j];
            if (c == 0) continue;
            os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
            const std::int64_t m = c < 0 ? -c : c;
            if (m != 1 || (j == 0 && k == 0)) os << m;
            if (j > 0) os << "a" << (j > 1 ? "^" + std::to_string(j) : "");
            if (k > 0) os << "b" << (k > 1 ? "^" + std::to_string(k) : "");
            first = false;
        }
    return first ? "0" : os.str();
}

namespace {

std::vector<std::string> content_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(line);
    }
    return out;
}

int curve_index(const std::string& tag) {
    if (tag.size() < 2 || tag[0] != 'C') throw ParameterError("bad curve tag: " + tag);
    const int n = std::stoi(tag.substr(1));
    if (n < 1 || n > 6) throw ParameterError("curve index out of range: " + tag);
    return n;
}

}  // namespace

std::array<AlgebraicCurve, 6> parse_table1(const std::string& text) {
    std::array<AlgebraicCurve, 6> table;
    for (int n = 1; n <= 6; ++n) table[static_cast<std::size_t>(n - 1)].n = n;
    const auto lines = content_lines(text);
    for (std::size_t i = 0; i < lines.size();) {
        std::istringstream hdr(lines[i]);
        std::string tag, which;
        std::size_t deg = 0;
        if (!(hdr >> tag >> which >> deg) || (which != "P" && which != "Q"))
            throw ParameterError("bad header line: " + lines[i]);
        AlgebraicCurve& c = table[static_cast<std::size_t>(curve_index(tag) - 1)];
        BivariatePoly& poly = which == "P" ? c.P : c.Q;
        poly.rows.assign(deg + 1, {});
        for (std::size_t k = 0; k <= deg; ++k) {
            if (i + 1 + k >= lines.size()) throw ParameterError("truncated coefficient block for " + tag);
            std::istringstream row(lines[i + 1 + k]);
            std::int64_t v;
            while (row >> v) poly.rows[k].push_back(v);
            if (!row.eof()) throw ParameterError("bad coefficient row: " + lines[i + 1 + k]);
        }
        i += deg + 2;
    }
    return table;
}

std::vector<Erratum> parse_errata(const std::string& text) {
    std::vector<Erratum> out;
    for (const auto& line : content_lines(text)) {
        std::istringstream is(line);
        std::string tag;
        char which = 0;
        Erratum e{};
        if (!(is >> tag >> which >> e.b_power >> e.a_power >> e.printed >> e.corrected))
            throw ParameterError("bad erratum line: " + line);
        e.n = curve_index(tag);
        e.which = which;
        out.push_back(e);
    }
    return out;
}

std::uint64_t checksum(const std::array<AlgebraicCurve, 6>& table) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::int64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= static_cast<std::uint64_t>(v >> (8 * i)) & 0xFF;
            h *= 1099511628211ull;
        }
    };
    for (const auto& c : table)
        for (const BivariatePoly* p : {&c.P, &c.Q}) {
            mix(-1);
            for (const auto& row : p->rows) {
                mix(-2);
                for (std::int64_t v : row) mix(v);
            }
        }
    return h;
}

namespace {

BivariatePoly poly(std::initializer_list<std::vector<std::int64_t>> rows) { return BivariatePoly{rows}; }

}  // namespace

const std::array<AlgebraicCurve, 6>& table1_verbatim() {
    static const std::array<AlgebraicCurve, 6> t = {{
        {1, poly({{0, -4, 0, 1}}), poly({{0, 0, 1}, {-2}})},
        {2,
         poly({{0, 0, 0, 0, 0, 0, 2, 0, -2},
               {0, 0, 0, 0, -10, -8, 2, 4},
               {0, 0, 11, 16, 15},
               {-4, -4, -15, -8, 0, -4},
               {4, 0, 0, 0, -8},
               {0, 4}}),
         poly({{0, 0, 0, 0, 0, 2, 0, -2}, {0, 0, 0, -6, 0, 6, 4}, {0, 3, 0, -1, -8}, {0, -1, 4, 0, -4}})},
        {3, poly({{0, 0, -2, -4, -4}, {0, -4, -6, 0, -1}, {0, 0, 3}, {4}}),
         poly({{0, 2, 4, 4}, {0, 2, 0, -1}, {0, -3}})},
        {4, poly({{0, 0, 0, -2, 0, 4}, {0, 4, 0, -4, 0, 2}, {0, 4, 0, -9}, {0, 4}}),
         poly({{0, 0, -2}, {0, 0, 4, 0, 2}, {0, 0, -5}, {2}})},
        {5,
         poly({{0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1},
               {0, 0, 0, 0, 0, 0, 0, 0, 0, 10, 4},
               {0, 0, 0, 0, 0, 0, 0, -36, -28},
               {0, 0, 0, 0, 0, 56, 64, 0, -4},
               {0, 0, 0, -35, -52, 0, 20},
               {0, 6, 11, 0, -27, 0, 3},
               {0, 0, 9, 0, -11},
               {0, 0, 7}}),
         poly({{0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1},
               {0, 0, 0, 0, 0, 0, 0, 0, 8},
               {0, 0, 0, 0, 0, 0, -22},
               {0, 0, 0, 0, 24},
               {0, 0, -9},
               {1, 1, 0, -1, 0, 1},
               {0, 1, 0, -3},
               {0, 1}})},
        {6, poly({{-4, -6, 0, -6, 0, 6, 0, -1}, {0, -4, 0, 4}, {0, -4, 0, 1}, {0, 4}}),
         poly({{0, 2, 2, 0, -2, 0, -1}, {0, 0, 0, 0, 2}, {0, 0, 3}, {-2}})},
    }};
    return t;
}

const std::vector<Erratum>& table1_errata() {
    static const std::vector<Erratum> e = {
        {2, 'P', 4, 4, -8, 0}, {2, 'P', 4, 3, 0, -8}, {4, 'Q', 0, 2, -2, 2}, {4, 'Q', 0, 4, 0, -4},
        {6, 'P', 0, 1, -6, -4}, {6, 'P', 0, 0, -4, 0}, {6, 'P', 0, 2, 0, -6},
    };
    return e;
}

const std::array<AlgebraicCurve, 6>& table1() {
    static const std::array<AlgebraicCurve, 6> t = [] {
        auto out = table1_verbatim();
        for (const Erratum& e : table1_errata()) {
            BivariatePoly& p = e.which == 'P' ? out[static_cast<std::size_t>(e.n - 1)].P
                                              : out[static_cast<std::size_t>(e.n - 1)].Q;
            if (p.coeff(e.b_power, e.a_power) != e.printed) throw Error("erratum does not match the printed table");
            p.set(e.b_power, e.a_power, e.corrected);
        }
        return out;
    }();
    return t;
}

double Table1Terms::relative() const { return std::fabs(residual) / (1.0 + std::fabs(P) + std::fabs(Q)); }

Table1Terms table1_terms(const AlgebraicCurve& curve, double a, double b) {
    const double d = a * a + 4.0 * b;
    if (d < 0.0) throw DomainError("a^2 + 4b < 0");
    Table1Terms t{};
    t.P = curve.P(a, b);
    t.Q = curve.Q(a, b);
    t.root = std::sqrt(d);
    t.residual = t.P + t.Q * t.root;
    return t;
}

namespace {

const AlgebraicCurve& pick(const std::array<AlgebraicCurve, 6>& t, int n) {
    if (n < 1 || n > 6) throw ParameterError("curve index must be in 1..6");
    return t[static_cast<std::size_t>(n - 1)];
}

// Elements p + q sqrt(2) of Z[sqrt 2].
struct Zr2 {
    std::int64_t p = 0, q = 0;
    Zr2 operator+(Zr2 o) const { return {p + o.p, q + o.q}; }
    Zr2 operator*(Zr2 o) const { return {p * o.p + 2 * q * o.q, p * o.q + q * o.p}; }
};

Zr2 eval_at_sqrt2(const BivariatePoly& poly) {
    // b = 0 leaves only the b^0 row.
    if (poly.rows.empty()) return {};
    Zr2 acc;
    const Zr2 a{0, 1};
    const auto& row = poly.rows[0];
    for (auto it = row.rbegin(); it != row.rend(); ++it) acc = acc * a + Zr2{*it, 0};
    return acc;
}

}  // namespace

double table1_residual(int n, double a, double b) { return table1_terms(pick(table1(), n), a, b).residual; }

double table1_residual_verbatim(int n, double a, double b) {
    return table1_terms(pick(table1_verbatim(), n), a, b).residual;
}

Sqrt2Value table1_residual_at_tent_edge(int n) {
    const AlgebraicCurve& c = pick(table1(), n);
    // sqrt(a^2 + 4b) = sqrt(2) at a = sqrt(2), b = 0.
    const Zr2 r = eval_at_sqrt2(c.P) + eval_at_sqrt2(c.Q) * Zr2{0, 1};
    return {r.p, r.q};
}

MisiurewiczResiduals misiurewicz_check(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("non-finite parameter");
    const double a2 = a * a, b2 = b * b;
    MisiurewiczResiduals r{};
    r.quartic = 2.0 * a2 * a2 - 4.0 * a2 - 3.0 * a2 * b2 + 4.0 * b2 * b;
    r.quartic_scale = 2.0 * a2 * a2 + 4.0 * a2 + 3.0 * a2 * b2 + 4.0 * std::fabs(b2 * b);
    const double s = 3.0 * b2 + 4.0;
    const double inner = s * s - 32.0 * b2 * b;
    if (inner < 0.0) throw DomainError("negative radicand in the radical form");
    const double outer = s + std::sqrt(inner);
    r.radical = 4.0 * a2 - outer;
    r.radical_scale = 4.0 * a2 + outer;
    return r;
}

}  // namespace lozi
