#pragma once

#include "lozi/geometry.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace lozi::simd {

enum class Isa { scalar, avx2 };

std::string_view name(Isa isa);
bool available(Isa isa);

// The ISA picked at first use: the best available one, unless the LOZI_SIMD
// environment variable names another ("scalar" or "avx2").
Isa active();

// Structure-of-arrays bounding boxes for a batch of segments.
struct BoxBatch {
    std::vector<double> xmin, xmax, ymin, ymax;

    static BoxBatch of_segments(const PolyLine& line);
    std::size_t size() const { return xmin.size(); }
};

// out[i] = L(in[i]). `out` may alias `in`.
void map_forward(double a, double b, std::span<const Point> in, std::span<Point> out);
void map_forward(Isa isa, double a, double b, std::span<const Point> in, std::span<Point> out);

// out[i] = L^{-1}(in[i]). Requires b != 0.
void map_inverse(double a, double b, std::span<const Point> in, std::span<Point> out);
void map_inverse(Isa isa, double a, double b, std::span<const Point> in, std::span<Point> out);

// Appends to `hits` the indices (ascending) of boxes overlapping `query`.
void overlapping(const BoxBatch& boxes, const Box& query, std::vector<std::uint32_t>& hits);
void overlapping(Isa isa, const BoxBatch& boxes, const Box& query, std::vector<std::uint32_t>& hits);

namespace scalar {
void map_forward(double a, double b, const Point* in, Point* out, std::size_t n);
void map_inverse(double a, double b, const Point* in, Point* out, std::size_t n);
void overlapping(const BoxBatch& boxes, const Box& query, std::vector<std::uint32_t>& hits);
}  // namespace scalar

#if defined(__x86_64__) || defined(__i386__)
namespace avx2 {
void map_forward(double a, double b, const Point* in, Point* out, std::size_t n);
void map_inverse(double a, double b, const Point* in, Point* out, std::size_t n);
void overlapping(const BoxBatch& boxes, const Box& query, std::vector<std::uint32_t>& hits);
}  // namespace avx2
#endif

}  // namespace lozi::simd
