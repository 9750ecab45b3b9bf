#include "lozi/simd.hpp"

#include <cmath>

namespace lozi::simd::scalar {

// The evaluation order here is the reference every vector variant must match
// bit for bit.
void map_forward(double a, double b, const Point* in, Point* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double x = in[i].x, y = in[i].y;
        out[i] = {(1.0 + y) - a * std::fabs(x), b * x};
    }
}

void map_inverse(double a, double b, const Point* in, Point* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double x = in[i].x, y = in[i].y;
        out[i] = {y / b, (x - 1.0) + (a * std::fabs(y)) / b};
    }
}

void overlapping(const BoxBatch& boxes, const Box& q, std::vector<std::uint32_t>& hits) {
    const std::size_t n = boxes.size();
    for (std::size_t i = 0; i < n; ++i) {
        const bool disjoint = boxes.xmax[i] < q.xmin || q.xmax < boxes.xmin[i] ||
                              boxes.ymax[i] < q.ymin || q.ymax < boxes.ymin[i];
        if (!disjoint) hits.push_back(static_cast<std::uint32_t>(i));
    }
}

}  // namespace lozi::simd::scalar
