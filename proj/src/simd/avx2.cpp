#include "lozi/simd.hpp"

#include <immintrin.h>

namespace lozi::simd::avx2 {

namespace {

// Two points per register, laid out [x0 y0 x1 y1]. Swapping within 128-bit
// lanes gives [y0 x0 y1 x1], so every output lane reads its operands from the
// same position in one of the two registers.
inline __m256d abs_pd(__m256d v) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

}  // namespace

void map_forward(double a, double b, const Point* in, Point* out, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a), vb = _mm256_set1_pd(b), one = _mm256_set1_pd(1.0);
    const double* src = &in->x;
    double* dst = &out->x;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(src + 2 * i);
        const __m256d s = _mm256_permute_pd(v, 0b0101);
        // Even lanes: (1 + y) - a|x|; odd lanes: b x.
        const __m256d nx = _mm256_sub_pd(_mm256_add_pd(one, s), _mm256_mul_pd(va, abs_pd(v)));
        const __m256d ny = _mm256_mul_pd(vb, s);
        _mm256_storeu_pd(dst + 2 * i, _mm256_blend_pd(nx, ny, 0b1010));
    }
    if (i < n) scalar::map_forward(a, b, in + i, out + i, n - i);
}

void map_inverse(double a, double b, const Point* in, Point* out, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a), vb = _mm256_set1_pd(b), one = _mm256_set1_pd(1.0);
    const double* src = &in->x;
    double* dst = &out->x;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(src + 2 * i);
        const __m256d s = _mm256_permute_pd(v, 0b0101);
        // Even lanes: y / b; odd lanes: (x - 1) + (a|y|) / b.
        const __m256d nx = _mm256_div_pd(s, vb);
        const __m256d ny = _mm256_add_pd(_mm256_sub_pd(s, one),
                                         _mm256_div_pd(_mm256_mul_pd(va, abs_pd(v)), vb));
        _mm256_storeu_pd(dst + 2 * i, _mm256_blend_pd(nx, ny, 0b1010));
    }
    if (i < n) scalar::map_inverse(a, b, in + i, out + i, n - i);
}

void overlapping(const BoxBatch& boxes, const Box& q, std::vector<std::uint32_t>& hits) {
    const std::size_t n = boxes.size();
    const __m256d qxmin = _mm256_set1_pd(q.xmin), qxmax = _mm256_set1_pd(q.xmax);
    const __m256d qymin = _mm256_set1_pd(q.ymin), qymax = _mm256_set1_pd(q.ymax);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xmin = _mm256_loadu_pd(boxes.xmin.data() + i);
        const __m256d xmax = _mm256_loadu_pd(boxes.xmax.data() + i);
        const __m256d ymin = _mm256_loadu_pd(boxes.ymin.data() + i);
        const __m256d ymax = _mm256_loadu_pd(boxes.ymax.data() + i);
        __m256d disjoint = _mm256_cmp_pd(xmax, qxmin, _CMP_LT_OQ);
        disjoint = _mm256_or_pd(disjoint, _mm256_cmp_pd(qxmax, xmin, _CMP_LT_OQ));
        disjoint = _mm256_or_pd(disjoint, _mm256_cmp_pd(ymax, qymin, _CMP_LT_OQ));
        disjoint = _mm256_or_pd(disjoint, _mm256_cmp_pd(qymax, ymin, _CMP_LT_OQ));
        int mask = ~_mm256_movemask_pd(disjoint) & 0xF;
        while (mask) {
            const int bit = __builtin_ctz(static_cast<unsigned>(mask));
            hits.push_back(static_cast<std::uint32_t>(i + bit));
            mask &= mask - 1;
        }
    }
    for (; i < n; ++i) {
        const bool disjoint = boxes.xmax[i] < q.xmin || q.xmax < boxes.xmin[i] ||
                              boxes.ymax[i] < q.ymin || q.ymax < boxes.ymin[i];
        if (!disjoint) hits.push_back(static_cast<std::uint32_t>(i));
    }
}

}  // namespace lozi::simd::avx2
