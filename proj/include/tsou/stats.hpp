#pragma once
// Goodness-of-fit and density-estimation tools for the validation harness.

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <span>
#include <vector>

namespace tsou::stats {

//! sup_x |F_n(x) - cdf(x)|. Throws DomainError on an empty sample.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);
//! sup_x |F_n(x) - G_m(x)|.
double ks_two_sample(std::span<const double> a, std::span<const double> b);
//! Asymptotic Kolmogorov critical values, sqrt(-log(level / 2) / 2) / sqrt(n).
double ks_critical(std::size_t n, double level = 0.01);
double ks_critical_two_sample(std::size_t n, std::size_t m, double level = 0.01);

struct Grid {
    double lo = -10.0, hi = 10.0, step = 0.01;
    void validate() const;
    std::size_t size() const;
    double at(std::size_t i) const { return lo + static_cast<double>(i) * step; }
};
//! "LO:HI:STEP".
Grid parse_grid(const std::string& text);

struct KdeSpec {
    std::optional<double> bandwidth; // Silverman's rule when empty
    Grid grid;
};

//! 0.9 min(sd, IQR / 1.34) n^{-1/5}.
double silverman_bandwidth(std::span<const double> samples);

struct KdeResult {
    std::vector<double> x;
    std::vector<double> density;
    double bandwidth;
};

//! Gaussian-kernel estimate on the grid; grid points are split over `threads` workers.
KdeResult kde(std::span<const double> samples, const KdeSpec& spec, unsigned threads = 1);

//! Trapezoid rule over equally spaced values.
double trapezoid(std::span<const double> values, double step);

struct MeanSe {
    double mean;
    double se;
};
MeanSe mean_se(std::span<const double> samples);

//! Sample skewness and its large-sample standard error sqrt(6 / n).
MeanSe skewness(std::span<const double> samples);

//! Every k-th element, starting with the first.
std::vector<double> thin(std::span<const double> samples, std::size_t every);

//! (1 / n) sum exp(i z x_j).
std::complex<double> empirical_cf(std::span<const double> samples, double z);

//! Worker count from TSOU_THREADS, defaulting to the hardware concurrency.
unsigned thread_count();

} // namespace tsou::stats
