#include "lozi/simd.hpp"

#include <doctest.h>

#include <bit>
#include <cstring>
#include <random>

using namespace lozi;

namespace {

bool same_bits(Point p, Point q) { return std::memcmp(&p, &q, sizeof(Point)) == 0; }

std::vector<Point> random_points(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-5, 5);
    std::vector<Point> pts(n);
    for (auto& p : pts) p = {u(rng), u(rng)};
    // Signed zeros and axis points exercise the absolute value.
    if (n > 3) {
        pts[0] = {0.0, 1.0};
        pts[1] = {-0.0, -1.0};
        pts[2] = {1.0, 0.0};
        pts[3] = {1.0, -0.0};
    }
    return pts;
}

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("scalar is always available") {
    CHECK(simd::available(simd::Isa::scalar));
    CHECK(simd::name(simd::Isa::scalar) == "scalar");
    CHECK(simd::available(simd::active()));
}

TEST_CASE("map kernels are bit-identical across ISAs") {
    if (!simd::available(simd::Isa::avx2)) {
        MESSAGE("AVX2 not available; equivalence test skipped");
        return;
    }
    std::mt19937_64 rng(3);
    for (std::size_t n : {0u, 1u, 2u, 3u, 7u, 64u, 1001u}) {
        const auto in = random_points(rng, n);
        for (auto [a, b] : {std::pair{1.46, 0.86}, std::pair{1.7, 0.5}, std::pair{0.3, 0.99}}) {
            std::vector<Point> s(n), v(n);
            simd::map_forward(simd::Isa::scalar, a, b, in, s);
            simd::map_forward(simd::Isa::avx2, a, b, in, v);
            for (std::size_t i = 0; i < n; ++i) CHECK(same_bits(s[i], v[i]));
            simd::map_inverse(simd::Isa::scalar, a, b, in, s);
            simd::map_inverse(simd::Isa::avx2, a, b, in, v);
            for (std::size_t i = 0; i < n; ++i) CHECK(same_bits(s[i], v[i]));
        }
    }
}

TEST_CASE("in-place mapping") {
    std::mt19937_64 rng(5);
    auto pts = random_points(rng, 33);
    const auto orig = pts;
    simd::map_forward(1.4, 0.3, pts, pts);
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK(pts[i] == Point{1.0 + orig[i].y - 1.4 * std::fabs(orig[i].x), 0.3 * orig[i].x});
}

TEST_CASE("bounding-box screening is identical across ISAs") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-5, 5), w(0.0, 2.0);
    for (std::size_t n : {1u, 3u, 4u, 5u, 17u, 500u}) {
        const PolyLine line(random_points(rng, n + 1));
        const auto boxes = simd::BoxBatch::of_segments(line);
        REQUIRE(boxes.size() == line.segment_count());
        for (int q = 0; q < 50; ++q) {
            const double x = u(rng), y = u(rng);
            const Box query{x, x + w(rng), y, y + w(rng)};
            std::vector<std::uint32_t> ref;
            for (std::uint32_t i = 0; i < boxes.size(); ++i) {
                const Box b{boxes.xmin[i], boxes.xmax[i], boxes.ymin[i], boxes.ymax[i]};
                if (b.overlaps(query)) ref.push_back(i);
            }
            std::vector<std::uint32_t> s;
            simd::overlapping(simd::Isa::scalar, boxes, query, s);
            CHECK(s == ref);
            if (simd::available(simd::Isa::avx2)) {
                std::vector<std::uint32_t> v;
                simd::overlapping(simd::Isa::avx2, boxes, query, v);
                CHECK(v == ref);
            }
        }
    }
}

}
