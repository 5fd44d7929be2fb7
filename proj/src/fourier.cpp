#include "tsou/fourier.hpp"

#include "tsou/errors.hpp"

#include <cmath>

namespace tsou::fourier {
namespace {

// Monomial coefficients of the Lagrange basis on {-1, -1/2, 0, 1/2, 1}: L_j(s) = sum_k C[j][k] s^k.
constexpr double kLagrange[5][5] = {
    {0.0, 1.0 / 6.0, -1.0 / 6.0, -2.0 / 3.0, 2.0 / 3.0},
    {0.0, -4.0 / 3.0, 8.0 / 3.0, 4.0 / 3.0, -8.0 / 3.0},
    {1.0, 0.0, -5.0, 0.0, 4.0},
    {0.0, 4.0 / 3.0, 8.0 / 3.0, -4.0 / 3.0, -8.0 / 3.0},
    {0.0, -1.0 / 6.0, -1.0 / 6.0, 2.0 / 3.0, 2.0 / 3.0},
};

// M_k = integral_{-1}^{1} s^k e^{i theta s} ds, k = 0..4.
std::array<cplx, 5> monomial_moments(double theta) {
    std::array<cplx, 5> m{};
    if (std::fabs(theta) < 2.0) {
        // Power series; only k + j even survives, so M_k is real for even k and
        // imaginary for odd k. c_j = theta^j / j! with the sign of i^j folded in below.
        double c[32];
        c[0] = 1.0;
        for (int j = 1; j < 32; ++j) c[j] = c[j - 1] * theta / j;
        for (int k = 0; k < 5; ++k) {
            double sum = 0.0;
            for (int j = k % 2; j < 28; j += 2) {
                const double sign = ((j / 2) % 2 == 0) ? 1.0 : -1.0; // i^j = sign * i^{j mod 2}
                sum += sign * c[j] * 2.0 / (k + j + 1);
            }
            m[k] = (k % 2 == 0) ? cplx(sum, 0.0) : cplx(0.0, sum);
        }
        return m;
    }
    const double sn = std::sin(theta), cs = std::cos(theta);
    const cplx inv_i_theta = cplx(0.0, -1.0 / theta);
    m[0] = 2.0 * sn / theta;
    for (int k = 1; k < 5; ++k) {
        // e^{i theta} - (-1)^k e^{-i theta}
        const cplx boundary = (k % 2 == 0) ? cplx(0.0, 2.0 * sn) : cplx(2.0 * cs, 0.0);
        m[k] = (boundary - double(k) * m[k - 1]) * inv_i_theta;
    }
    return m;
}

} // namespace

std::array<cplx, 5> filon_weights(double theta) {
    const auto m = monomial_moments(theta);
    std::array<cplx, 5> w{};
    for (int j = 0; j < 5; ++j) {
        cplx acc = 0.0;
        for (int k = 0; k < 5; ++k) acc += kLagrange[j][k] * m[k];
        w[j] = acc;
    }
    return w;
}

GeometricPanels::GeometricPanels(double lo, double hi, double ratio, const std::function<double(double)>& amplitude) {
    if (!(lo > 0.0) || !(hi > lo) || !(ratio > 1.0)) throw DomainError("GeometricPanels: need 0 < lo < hi, ratio > 1");
    const double log_ratio = std::log(ratio);
    const auto count = static_cast<std::size_t>(std::ceil(std::log(hi / lo) / log_ratio));
    edges_.resize(count + 1);
    for (std::size_t i = 0; i <= count; ++i) edges_[i] = lo * std::exp(log_ratio * static_cast<double>(i));
    amp_.resize(count);
    plain_suffix_.assign(count + 1, 0.0);
    moment_suffix_.assign(count + 1, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
        const double a = edges_[i], b = edges_[i + 1];
        for (int j = 0; j < 5; ++j) amp_[i][j] = amplitude(a + 0.25 * j * (b - a));
    }
    for (std::size_t i = count; i-- > 0;) {
        const double a = edges_[i], b = edges_[i + 1], half = 0.5 * (b - a);
        double plain = 0.0, moment = 0.0;
        for (int j = 0; j < 5; ++j) {
            plain += kBooleWeights[j] * amp_[i][j];
            moment += kBooleWeights[j] * amp_[i][j] * (a + 0.25 * j * (b - a));
        }
        plain_suffix_[i] = plain_suffix_[i + 1] + half * plain;
        moment_suffix_[i] = moment_suffix_[i + 1] + half * moment;
    }
}

std::size_t GeometricPanels::edge_at_or_below(double u) const {
    if (u <= edges_.front()) return 0;
    if (u >= edges_.back()) return panel_count();
    auto idx = static_cast<std::size_t>(std::floor(std::log(u / edges_.front()) /
                                                   std::log(edges_[1] / edges_[0])));
    if (idx > panel_count()) idx = panel_count();
    while (idx > 0 && edges_[idx] > u) --idx;
    while (idx < panel_count() && edges_[idx + 1] <= u) ++idx;
    return idx;
}

cplx GeometricPanels::oscillatory(double w, std::size_t first) const {
    cplx acc = 0.0;
    for (std::size_t i = first; i < panel_count(); ++i) acc += filon_panel(edges_[i], edges_[i + 1], w, amp_[i]);
    return acc;
}

} // namespace tsou::fourier
