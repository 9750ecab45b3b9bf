#include "lozi/error.hpp"
#include "lozi/table1.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

using namespace lozi;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("table1") {

TEST_CASE("bivariate Horner evaluation matches the expanded sum") {
    BivariatePoly p;
    p.set(0, 3, 1);   // a^3
    p.set(0, 1, -4);  // -4a
    p.set(2, 1, 7);   // 7ab^2
    CHECK(p.coeff(2, 1) == 7);
    CHECK(p.coeff(5, 5) == 0);
    for (double a : {-1.5, 0.0, 0.7, 2.0})
        for (double b : {-0.3, 0.0, 0.4}) CHECK(p(a, b) == doctest::Approx(a * a * a - 4 * a + 7 * a * b * b));
}

TEST_CASE("bundled fixture equals the embedded table") {
    const auto parsed = parse_table1(slurp(std::string(LOZI_DATA_DIR) + "/table1_coeffs.txt"));
    CHECK(checksum(parsed) == checksum(table1_verbatim()));
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(parsed[i].P == table1_verbatim()[i].P);
        CHECK(parsed[i].Q == table1_verbatim()[i].Q);
    }
    const auto errata = parse_errata(slurp(std::string(LOZI_DATA_DIR) + "/table1_errata.txt"));
    REQUIRE(errata.size() == table1_errata().size());
    for (std::size_t i = 0; i < errata.size(); ++i) {
        CHECK(errata[i].n == table1_errata()[i].n);
        CHECK(errata[i].corrected == table1_errata()[i].corrected);
    }
}

TEST_CASE("corrected table differs exactly at the errata") {
    CHECK(checksum(table1()) != checksum(table1_verbatim()));
    for (const Erratum& e : table1_errata()) {
        const auto& row = table1()[static_cast<std::size_t>(e.n - 1)];
        const auto& poly = e.which == 'P' ? row.P : row.Q;
        CHECK(poly.coeff(e.b_power, e.a_power) == e.corrected);
    }
    CHECK(table1()[0].P == table1_verbatim()[0].P);
    CHECK(table1()[2].Q == table1_verbatim()[2].Q);
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_AS(parse_table1("C1 P 0\n1 2 x\n"), ParameterError);
    CHECK_THROWS_AS(parse_errata("C9 P 0 0 1 2\n"), ParameterError);
}

TEST_CASE("C1 at the tent-map edge") {
    const Sqrt2Value v = table1_residual_at_tent_edge(1);
    CHECK(v.is_zero());
    const Table1Terms t = table1_terms(table1()[0], std::sqrt(2.0), 0.0);
    CHECK(t.P == doctest::Approx(-2 * std::sqrt(2.0)));
    CHECK(t.Q == doctest::Approx(2.0));
    CHECK(std::fabs(table1_residual(1, std::sqrt(2.0), 0.0)) < 1e-15);
}

TEST_CASE("C1 reference pair") {
    CHECK(std::fabs(table1_residual(1, 1.46, 0.332873)) < 1e-4);
}

TEST_CASE("quartic form of C1") {
    const auto m = misiurewicz_check(std::sqrt(2.0), 0.0);
    CHECK(m.quartic == doctest::Approx(0.0));
    CHECK(m.radical == doctest::Approx(0.0));
    CHECK_THROWS_AS(misiurewicz_check(std::nan(""), 0.5), DomainError);
    // The quartic is the algebraic form of P1 + Q1 sqrt(a^2 + 4b) = 0, up to the factor -1/4.
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ua(0.1, 3.0), ub(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double a = ua(rng), b = ub(rng);
        const Table1Terms t = table1_terms(table1()[0], a, b);
        const double lhs = misiurewicz_check(a, b).quartic;
        const double rhs = -(t.P * t.P - t.Q * t.Q * (a * a + 4 * b)) / 4;
        CHECK(std::fabs(lhs - rhs) <= 1e-12 * (1 + std::fabs(rhs)));
    }
}

}
