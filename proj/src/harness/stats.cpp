#include "tsou/stats.hpp"

#include "tsou/errors.hpp"
#include "tsou/simd_kernels.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <thread>

namespace tsou::stats {

namespace {
void require_nonempty(std::span<const double> samples, const char* what) {
    if (samples.empty()) throw DomainError(std::string(what) + ": empty sample");
}

double parse_double(const std::string& text) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) throw DomainError("not a number: '" + text + "'");
    return v;
}
} // namespace

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
    require_nonempty(samples, "ks_statistic");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
    require_nonempty(a, "ks_two_sample");
    require_nonempty(b, "ks_two_sample");
    std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v) ++i;
        while (j < y.size() && y[j] <= v) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
    }
    return d;
}

double ks_critical(std::size_t n, double level) {
    if (n == 0 || !(level > 0.0 && level < 1.0)) throw DomainError("ks_critical: need n > 0 and level in (0, 1)");
    return std::sqrt(-0.5 * std::log(0.5 * level)) / std::sqrt(static_cast<double>(n));
}

double ks_critical_two_sample(std::size_t n, std::size_t m, double level) {
    if (m == 0) throw DomainError("ks_critical: need m > 0");
    const double eff = static_cast<double>(n) * static_cast<double>(m) / static_cast<double>(n + m);
    return ks_critical(1, level) / std::sqrt(eff);
}

void Grid::validate() const {
    if (!(lo < hi) || !(step > 0.0) || !std::isfinite(lo) || !std::isfinite(hi))
        throw DomainError("grid: need lo < hi and step > 0");
}

std::size_t Grid::size() const { return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1; }

Grid parse_grid(const std::string& text) {
    const auto first = text.find(':');
    const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
    if (second == std::string::npos) throw DomainError("grid must be LO:HI:STEP, got '" + text + "'");
    Grid g{parse_double(text.substr(0, first)), parse_double(text.substr(first + 1, second - first - 1)),
           parse_double(text.substr(second + 1))};
    g.validate();
    return g;
}

double silverman_bandwidth(std::span<const double> samples) {
    require_nonempty(samples, "silverman_bandwidth");
    if (samples.size() < 2) throw DomainError("silverman_bandwidth: need at least two points");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(sorted.size() - 1);
        const auto i = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(i);
        return i + 1 < sorted.size() ? sorted[i] + frac * (sorted[i + 1] - sorted[i]) : sorted[i];
    };
    const auto m = mean_se(samples);
    const double sd = m.se * std::sqrt(static_cast<double>(samples.size()));
    const double iqr = quantile(0.75) - quantile(0.25);
    const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
    if (!(spread > 0.0)) throw DomainError("silverman_bandwidth: sample has no spread");
    return 0.9 * spread * std::pow(static_cast<double>(samples.size()), -0.2);
}

KdeResult kde(std::span<const double> samples, const KdeSpec& spec, unsigned threads) {
    require_nonempty(samples, "kde");
    spec.grid.validate();
    KdeResult out;
    out.bandwidth = spec.bandwidth ? *spec.bandwidth : silverman_bandwidth(samples);
    if (!(out.bandwidth > 0.0)) throw DomainError("kde: bandwidth must be positive");
    const std::size_t m = spec.grid.size();
    out.x.resize(m);
    out.density.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.x[i] = spec.grid.at(i);
    const double inv_h = 1.0 / out.bandwidth;
    const double norm = inv_h / (static_cast<double>(samples.size()) * std::sqrt(2.0 * std::numbers::pi));
    const simd::Isa isa = simd::active_isa();
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            out.density[i] = norm * simd::gaussian_kernel_sum(samples, out.x[i], inv_h, isa);
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(m)));
    if (threads == 1) {
        work(0, m);
        return out;
    }
    // each grid point is written by exactly one worker; results do not depend on the split
    std::vector<std::thread> pool;
    const std::size_t chunk = (m + threads - 1) / threads;
    for (unsigned k = 0; k < threads; ++k) {
        const std::size_t begin = k * chunk, end = std::min(m, begin + chunk);
        if (begin < end) pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
    return out;
}

double trapezoid(std::span<const double> values, double step) {
    if (values.size() < 2) return 0.0;
    double s = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) s += values[i];
    return s * step;
}

MeanSe mean_se(std::span<const double> samples) {
    require_nonempty(samples, "mean_se");
    const double n = static_cast<double>(samples.size());
    double s = 0.0;
    for (double x : samples) s += x;
    const double m = s / n;
    double ss = 0.0;
    for (double x : samples) ss += (x - m) * (x - m);
    return {m, samples.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : INFINITY};
}

MeanSe skewness(std::span<const double> samples) {
    require_nonempty(samples, "skewness");
    const double n = static_cast<double>(samples.size());
    const double m = mean_se(samples).mean;
    double m2 = 0.0, m3 = 0.0;
    for (double x : samples) {
        const double d = x - m;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= n;
    m3 /= n;
    return {m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0, std::sqrt(6.0 / n)};
}

std::vector<double> thin(std::span<const double> samples, std::size_t every) {
    if (every == 0) throw DomainError("thin: step must be positive");
    std::vector<double> out;
    out.reserve(samples.size() / every + 1);
    for (std::size_t i = 0; i < samples.size(); i += every) out.push_back(samples[i]);
    return out;
}

std::complex<double> empirical_cf(std::span<const double> samples, double z) {
    require_nonempty(samples, "empirical_cf");
    return simd::cis_sum(samples, z) / static_cast<double>(samples.size());
}

unsigned thread_count() {
    if (const char* env = std::getenv("TSOU_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace tsou::stats
