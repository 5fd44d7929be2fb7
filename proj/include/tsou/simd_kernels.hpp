#pragma once
// Reduction kernels behind the validation harness. Each has a scalar reference and
// an AVX2+FMA variant; the variant is chosen once at startup from CPUID and can be
// pinned to scalar with TSOU_SIMD=scalar.

#include <complex>
#include <span>
#include <string_view>

namespace tsou::simd {

enum class Isa { Scalar, Avx2 };

//! Best ISA supported by both the build and the running CPU.
Isa detected_isa();
//! detected_isa(), unless TSOU_SIMD=scalar forces the reference path.
Isa active_isa();
std::string_view to_string(Isa isa);

//! sum_i exp(-((x - xs_i) * inv_h)^2 / 2).
double gaussian_kernel_sum(std::span<const double> xs, double x, double inv_h, Isa isa = active_isa());

//! sum_i exp(i z xs_i).
std::complex<double> cis_sum(std::span<const double> xs, double z, Isa isa = active_isa());

namespace detail {
double gaussian_kernel_sum_avx2(const double* xs, std::size_t n, double x, double inv_h);
std::complex<double> cis_sum_avx2(const double* xs, std::size_t n, double z);
bool avx2_compiled();
} // namespace detail

} // namespace tsou::simd
