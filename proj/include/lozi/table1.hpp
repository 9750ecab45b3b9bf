#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace lozi {

// Rows indexed by the power of b; each row holds the coefficients of a
// polynomial in a, lowest power first.
struct BivariatePoly {
    std::vector<std::vector<std::int64_t>> rows;

    double operator()(double a, double b) const;  // Horner in b, then in a
    std::int64_t coeff(std::size_t b_power, std::size_t a_power) const;
    void set(std::size_t b_power, std::size_t a_power, std::int64_t value);
    std::string str() const;
    friend bool operator==(const BivariatePoly&, const BivariatePoly&) = default;
};

struct AlgebraicCurve {
    int n = 0;
    BivariatePoly P;
    BivariatePoly Q;
};

struct Erratum {
    int n;
    char which;  // 'P' or 'Q'
    std::size_t b_power, a_power;
    std::int64_t printed, corrected;
};

// The table as printed.
const std::array<AlgebraicCurve, 6>& table1_verbatim();
const std::vector<Erratum>& table1_errata();
// The printed table with the errata applied.
const std::array<AlgebraicCurve, 6>& table1();

// Parses the bundled fixture format (see data/table1_coeffs.txt).
std::array<AlgebraicCurve, 6> parse_table1(const std::string& text);
std::vector<Erratum> parse_errata(const std::string& text);
// FNV-1a over a canonical serialization of all coefficients.
std::uint64_t checksum(const std::array<AlgebraicCurve, 6>& table);

struct Table1Terms {
    double P, Q, root, residual;
    // |residual| / (1 + |P| + |Q|)
    double relative() const;
};

Table1Terms table1_terms(const AlgebraicCurve& curve, double a, double b);
// P_n + Q_n sqrt(a^2 + 4b) with the corrected table.
double table1_residual(int n, double a, double b);
double table1_residual_verbatim(int n, double a, double b);

// Exact value of P_n + Q_n sqrt(a^2 + 4b) at a = sqrt(2), b = 0, as
// (p, q) meaning p + q sqrt(2).
struct Sqrt2Value {
    std::int64_t p = 0, q = 0;
    bool is_zero() const { return p == 0 && q == 0; }
};
Sqrt2Value table1_residual_at_tent_edge(int n);

// Residuals of the two forms of the C1 equation: the quartic
// 2a^4 - 4a^2 - 3a^2 b^2 + 4b^3 and (2a)^2 minus the nested radical.
struct MisiurewiczResiduals {
    double quartic;
    double radical;
    // Scales for relative comparisons.
    double quartic_scale;
    double radical_scale;
};
MisiurewiczResiduals misiurewicz_check(double a, double b);

}  // namespace lozi
