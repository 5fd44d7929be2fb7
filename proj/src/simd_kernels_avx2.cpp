// Compiled with -mavx2 -mfma; entered only after the CPUID check in simd_kernels.cpp.

#include "tsou/simd_kernels.hpp"

#include <cmath>

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace tsou::simd::detail {

namespace {

// exp on x <= 0; lanes below -708 return 0 (the scalar result there is < 1e-307)
inline __m256d exp_nonpositive(__m256d x) {
    const __m256d lo = _mm256_set1_pd(-708.0);
    const __m256d underflow = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
    x = _mm256_max_pd(x, lo);
    const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634074)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93147180369123816490e-01), x);
    r = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.90821492927058770002e-10), r);
    // Taylor to degree 13 on |r| <= ln2 / 2; truncation below 4e-18
    __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 479001600.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
    // 2^n through the exponent field; n >= -1022 after the clamp
    const __m128i n32 = _mm256_cvtpd_epi32(n);
    const __m256i n64 = _mm256_cvtepi32_epi64(n32);
    const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
    const __m256d result = _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
    return _mm256_andnot_pd(underflow, result);
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Beyond this the three-part reduction by pi/2 loses accuracy; such lanes go scalar.
constexpr double kMaxReducedArgument = 1e6;

} // namespace

bool avx2_compiled() { return true; }

double gaussian_kernel_sum_avx2(const double* xs, std::size_t n, double x, double inv_h) {
    const __m256d vx = _mm256_set1_pd(x);
    const __m256d vh = _mm256_set1_pd(inv_h);
    const __m256d mhalf = _mm256_set1_pd(-0.5);
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d u0 = _mm256_mul_pd(_mm256_sub_pd(vx, _mm256_loadu_pd(xs + i)), vh);
        const __m256d u1 = _mm256_mul_pd(_mm256_sub_pd(vx, _mm256_loadu_pd(xs + i + 4)), vh);
        acc0 = _mm256_add_pd(acc0, exp_nonpositive(_mm256_mul_pd(mhalf, _mm256_mul_pd(u0, u0))));
        acc1 = _mm256_add_pd(acc1, exp_nonpositive(_mm256_mul_pd(mhalf, _mm256_mul_pd(u1, u1))));
    }
    double sum = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        const double u = (x - xs[i]) * inv_h;
        sum += std::exp(-0.5 * u * u);
    }
    return sum;
}

std::complex<double> cis_sum_avx2(const double* xs, std::size_t n, double z) {
    const __m256d vz = _mm256_set1_pd(z);
    const __m256d two_over_pi = _mm256_set1_pd(0.63661977236758134308);
    const __m256d pio2_1 = _mm256_set1_pd(1.57079632673412561417e+00);
    const __m256d pio2_2 = _mm256_set1_pd(6.07710050630396597660e-11);
    const __m256d pio2_3 = _mm256_set1_pd(2.02226624871116645580e-21);
    const __m256d limit = _mm256_set1_pd(kMaxReducedArgument);
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d re_acc = _mm256_setzero_pd(), im_acc = _mm256_setzero_pd();
    double re_tail = 0.0, im_tail = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d theta = _mm256_mul_pd(vz, _mm256_loadu_pd(xs + i));
        const __m256d big = _mm256_cmp_pd(_mm256_andnot_pd(sign_mask, theta), limit, _CMP_GT_OQ);
        if (_mm256_movemask_pd(big) != 0) {
            for (int k = 0; k < 4; ++k) {
                re_tail += std::cos(z * xs[i + k]);
                im_tail += std::sin(z * xs[i + k]);
            }
            continue;
        }
        const __m256d q = _mm256_round_pd(_mm256_mul_pd(theta, two_over_pi), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
        __m256d r = _mm256_fnmadd_pd(q, pio2_1, theta);
        r = _mm256_fnmadd_pd(q, pio2_2, r);
        r = _mm256_fnmadd_pd(q, pio2_3, r);
        const __m256d r2 = _mm256_mul_pd(r, r);
        // Taylor on |r| <= pi/4; truncation below 2e-17
        __m256d s = _mm256_set1_pd(-1.0 / 1307674368000.0);
        s = _mm256_fmadd_pd(s, r2, _mm256_set1_pd(1.0 / 6227020800.0));
        s = _mm256_fmadd_pd(s, r2, _mm256_set1_pd(-1.0 / 39916800.0));
        s = _mm256_fmadd_pd(s, r2, _mm256_set1_pd(1.0 / 362880.0));
        s = _mm256_fmadd_pd(s, r2, _mm256_set1_pd(-1.0 / 5040.0));
        s = _mm256_fmadd_pd(s, r2, _mm256_set1_pd(1.0 / 120.0));
        s = _mm256_fmadd_pd(s, r2, _mm256_set1_pd(-1.0 / 6.0));
        s = _mm256_fmadd_pd(_mm256_mul_pd(s, r2), r, r);
        __m256d c = _mm256_set1_pd(1.0 / 20922789888000.0);
        c = _mm256_fmadd_pd(c, r2, _mm256_set1_pd(-1.0 / 87178291200.0));
        c = _mm256_fmadd_pd(c, r2, _mm256_set1_pd(1.0 / 479001600.0));
        c = _mm256_fmadd_pd(c, r2, _mm256_set1_pd(-1.0 / 3628800.0));
        c = _mm256_fmadd_pd(c, r2, _mm256_set1_pd(1.0 / 40320.0));
        c = _mm256_fmadd_pd(c, r2, _mm256_set1_pd(-1.0 / 720.0));
        c = _mm256_fmadd_pd(c, r2, _mm256_set1_pd(1.0 / 24.0));
        c = _mm256_fmadd_pd(c, r2, _mm256_set1_pd(-0.5));
        c = _mm256_fmadd_pd(c, r2, _mm256_set1_pd(1.0));
        // quadrant: (cos, sin) = (c, s), (-s, c), (-c, -s), (s, -c)
        const __m256i qi = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(q));
        const __m256i one = _mm256_set1_epi64x(1), two = _mm256_set1_epi64x(2);
        const __m256d odd = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(qi, one), one));
        const __m256d cos_neg = _mm256_castsi256_pd(
            _mm256_slli_epi64(_mm256_and_si256(_mm256_add_epi64(qi, one), two), 62));
        const __m256d sin_neg = _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_and_si256(qi, two), 62));
        const __m256d cos_v = _mm256_xor_pd(_mm256_blendv_pd(c, s, odd), cos_neg);
        const __m256d sin_v = _mm256_xor_pd(_mm256_blendv_pd(s, c, odd), sin_neg);
        re_acc = _mm256_add_pd(re_acc, cos_v);
        im_acc = _mm256_add_pd(im_acc, sin_v);
    }
    for (; i < n; ++i) {
        re_tail += std::cos(z * xs[i]);
        im_tail += std::sin(z * xs[i]);
    }
    return {hsum(re_acc) + re_tail, hsum(im_acc) + im_tail};
}

} // namespace tsou::simd::detail

#else

namespace tsou::simd::detail {
bool avx2_compiled() { return false; }
double gaussian_kernel_sum_avx2(const double*, std::size_t, double, double) { return 0.0; }
std::complex<double> cis_sum_avx2(const double*, std::size_t, double) { return {}; }
} // namespace tsou::simd::detail

#endif
