#include "tsou/simd_kernels.hpp"

#include "tsou/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace tsou::simd {

Isa detected_isa() {
#if defined(__x86_64__) || defined(__i386__)
    static const bool ok = detail::avx2_compiled() && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok ? Isa::Avx2 : Isa::Scalar;
#else
    return Isa::Scalar;
#endif
}

Isa active_isa() {
    static const Isa isa = [] {
        const char* env = std::getenv("TSOU_SIMD");
        if (env != nullptr && std::string(env) == "scalar") return Isa::Scalar;
        return detected_isa();
    }();
    return isa;
}

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

namespace {
void require_available(Isa isa) {
    if (isa == Isa::Avx2 && detected_isa() != Isa::Avx2) throw UnsupportedOperation("AVX2 kernels unavailable here");
}
} // namespace

double gaussian_kernel_sum(std::span<const double> xs, double x, double inv_h, Isa isa) {
    require_available(isa);
    if (isa == Isa::Avx2) return detail::gaussian_kernel_sum_avx2(xs.data(), xs.size(), x, inv_h);
    double sum = 0.0;
    for (double v : xs) {
        const double u = (x - v) * inv_h;
        sum += std::exp(-0.5 * u * u);
    }
    return sum;
}

std::complex<double> cis_sum(std::span<const double> xs, double z, Isa isa) {
    require_available(isa);
    if (isa == Isa::Avx2) return detail::cis_sum_avx2(xs.data(), xs.size(), z);
    double re = 0.0, im = 0.0;
    for (double v : xs) {
        re += std::cos(z * v);
        im += std::sin(z * v);
    }
    return {re, im};
}

} // namespace tsou::simd
