#include "lozi/simd.hpp"

#include "lozi/error.hpp"

#include <cstdlib>
#include <string>

namespace lozi::simd {

std::string_view name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

bool available(Isa isa) {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#if defined(__x86_64__) || defined(__i386__)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

namespace {

Isa detect() {
    if (const char* env = std::getenv("LOZI_SIMD")) {
        std::string want(env);
        if (want == "scalar") return Isa::scalar;
        if (want == "avx2" && available(Isa::avx2)) return Isa::avx2;
    }
    return available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

void check(Isa isa) {
    if (!available(isa)) throw ParameterError("SIMD variant not available on this CPU: " + std::string(name(isa)));
}

}  // namespace

Isa active() {
    static const Isa isa = detect();
    return isa;
}

BoxBatch BoxBatch::of_segments(const PolyLine& line) {
    BoxBatch out;
    const std::size_t n = line.segment_count();
    out.xmin.resize(n);
    out.xmax.resize(n);
    out.ymin.resize(n);
    out.ymax.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Box b = Box::of(line[i], line[i + 1]);
        out.xmin[i] = b.xmin;
        out.xmax[i] = b.xmax;
        out.ymin[i] = b.ymin;
        out.ymax[i] = b.ymax;
    }
    return out;
}

void map_forward(Isa isa, double a, double b, std::span<const Point> in, std::span<Point> out) {
    check(isa);
#if defined(__x86_64__) || defined(__i386__)
    if (isa == Isa::avx2) return avx2::map_forward(a, b, in.data(), out.data(), in.size());
#endif
    scalar::map_forward(a, b, in.data(), out.data(), in.size());
}

void map_inverse(Isa isa, double a, double b, std::span<const Point> in, std::span<Point> out) {
    check(isa);
#if defined(__x86_64__) || defined(__i386__)
    if (isa == Isa::avx2) return avx2::map_inverse(a, b, in.data(), out.data(), in.size());
#endif
    scalar::map_inverse(a, b, in.data(), out.data(), in.size());
}

void overlapping(Isa isa, const BoxBatch& boxes, const Box& query, std::vector<std::uint32_t>& hits) {
    check(isa);
#if defined(__x86_64__) || defined(__i386__)
    if (isa == Isa::avx2) return avx2::overlapping(boxes, query, hits);
#endif
    scalar::overlapping(boxes, query, hits);
}

void map_forward(double a, double b, std::span<const Point> in, std::span<Point> out) {
    map_forward(active(), a, b, in, out);
}

void map_inverse(double a, double b, std::span<const Point> in, std::span<Point> out) {
    map_inverse(active(), a, b, in, out);
}

void overlapping(const BoxBatch& boxes, const Box& query, std::vector<std::uint32_t>& hits) {
    overlapping(active(), boxes, query, hits);
}

}  // namespace lozi::simd
