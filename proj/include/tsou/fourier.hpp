#pragma once
// Filon-type quadrature for integrals of g(u) e^{i w u} with slowly varying g.

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace tsou::fourier {

using cplx = std::complex<double>;

//! Integrals over [-1, 1] of L_j(s) e^{i theta s}, where L_j are the Lagrange
//! polynomials on the nodes -1, -1/2, 0, 1/2, 1. Exact for any theta.
std::array<cplx, 5> filon_weights(double theta);

//! integral_a^b g(u) e^{i omega u} du, with g sampled at the 5 equispaced nodes of [a, b].
template <class Values>
cplx filon_panel(double a, double b, double omega, const Values& g) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const auto w = filon_weights(omega * half);
    cplx acc = 0.0;
    for (int j = 0; j < 5; ++j) acc += w[j] * g[j];
    return half * std::polar(1.0, omega * mid) * acc;
}

//! Boole's rule weights on [-1, 1] (the theta = 0 case of filon_weights).
inline constexpr std::array<double, 5> kBooleWeights{7.0 / 45.0, 32.0 / 45.0, 12.0 / 45.0, 32.0 / 45.0, 7.0 / 45.0};

//! Panels with geometrically growing widths, edge[i] = lo * ratio^i, covering [lo, hi].
//! Each panel carries the 5 Filon nodes; a real amplitude is cached at all nodes.
class GeometricPanels {
public:
    GeometricPanels(double lo, double hi, double ratio, const std::function<double(double)>& amplitude);

    std::size_t panel_count() const { return edges_.size() - 1; }
    double edge(std::size_t i) const { return edges_[i]; }
    double lo() const { return edges_.front(); }
    double hi() const { return edges_.back(); }

    //! Largest edge index i with edge(i) <= u (clamped to [0, panel_count()]).
    std::size_t edge_at_or_below(double u) const;

    //! integral over panels [first, end) of amplitude(u) e^{i w u} du.
    cplx oscillatory(double w, std::size_t first) const;
    //! integral over panels [first, end) of amplitude(u) du.
    double plain(std::size_t first) const { return plain_suffix_[first]; }
    //! integral over panels [first, end) of u * amplitude(u) du.
    double first_moment(std::size_t first) const { return moment_suffix_[first]; }

private:
    std::vector<double> edges_;
    std::vector<std::array<double, 5>> amp_;
    std::vector<double> plain_suffix_;
    std::vector<double> moment_suffix_;
};

} // namespace tsou::fourier
