#include "tsou/svg.hpp"

#include "tsou/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace tsou::svg {

namespace {
constexpr double kWidth = 720, kHeight = 480, kLeft = 60, kRight = 20, kTop = 40, kBottom = 50;

std::string num(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

std::string label(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 4);
    return std::string(buf, res.ptr);
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else if (c == '&') out += "&amp;";
        else out += c;
    }
    return out;
}
} // namespace

std::string line_plot(const std::string& title, const std::vector<double>& x, const std::vector<Series>& series) {
    if (x.size() < 2) throw DomainError("line_plot: need at least two x values");
    for (const auto& s : series)
        if (s.y.size() != x.size()) throw DomainError("line_plot: series '" + s.label + "' has the wrong length");
    const double x0 = x.front(), x1 = x.back();
    double y1 = 0.0;
    for (const auto& s : series)
        for (double v : s.y)
            if (std::isfinite(v)) y1 = std::max(y1, v);
    if (!(y1 > 0.0)) y1 = 1.0;
    y1 *= 1.05;
    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto px = [&](double v) { return kLeft + (v - x0) / (x1 - x0) * pw; };
    auto py = [&](double v) { return kTop + ph - v / y1 * ph; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << escape(title)
      << "</text>\n";
    o << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(kLeft + pw) << "\" y2=\""
      << num(kTop + ph) << "\" stroke=\"black\"/>\n";
    o << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft) << "\" y2=\""
      << num(kTop + ph) << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = x0 + (x1 - x0) * k / 4.0, yv = y1 * k / 4.0;
        o << "<text x=\"" << num(px(xv)) << "\" y=\"" << num(kTop + ph + 18) << "\" text-anchor=\"middle\" font-size=\"11\">"
          << label(xv) << "</text>\n";
        o << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(py(yv) + 4) << "\" text-anchor=\"end\" font-size=\"11\">"
          << label(yv) << "</text>\n";
    }
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        std::string points;
        auto flush = [&] {
            if (!points.empty())
                o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"" << points
                  << "\"/>\n";
            points.clear();
        };
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!std::isfinite(s.y[i])) {
                flush();
                continue;
            }
            points += num(px(x[i])) + "," + num(py(std::min(s.y[i], y1))) + " ";
        }
        flush();
        const double ly = kTop + 16 + 18 * static_cast<double>(k);
        o << "<line x1=\"" << num(kLeft + pw - 150) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(kLeft + pw - 120)
          << "\" y2=\"" << num(ly) << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
        o << "<text x=\"" << num(kLeft + pw - 114) << "\" y=\"" << num(ly + 4) << "\" font-size=\"12\">" << escape(s.label)
          << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

} // namespace tsou::svg
