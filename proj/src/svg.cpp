#include "ebucb/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace ebucb {

namespace {

constexpr int kWidth = 900;
constexpr int kHeight = 560;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 30;
constexpr int kMarginTop = 50;
constexpr int kMarginBottom = 55;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

// "nice" tick step covering span with about 5 intervals
double nice_step(double span) {
    if (span <= 0.0) return 1.0;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    double step = 10.0;
    if (frac <= 1.0) step = 1.0;
    else if (frac <= 2.0) step = 2.0;
    else if (frac <= 5.0) step = 5.0;
    return step * mag;
}

} // namespace

void emit_svg(const std::vector<AggregateResult>& results, std::ostream& out,
              const std::string& title, std::optional<int> marker_t) {
    std::size_t T = 0;
    double ymax = 0.0;
    for (const auto& r : results) {
        T = std::max(T, r.mean.size());
        for (std::size_t i = 0; i < r.mean.size(); ++i) {
            ymax = std::max(ymax, r.mean[i] + r.stderr_[i]);
        }
    }
    if (T == 0) T = 1;
    if (ymax <= 0.0) ymax = 1.0;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto xpix = [&](double t) {
        return kMarginLeft + plot_w * (t - 1.0) / std::max<double>(1.0, T - 1.0);
    };
    auto ypix = [&](double y) { return kMarginTop + plot_h * (1.0 - y / ymax); };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
        << kHeight << "\">\n"
        << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">"
        << title << "</text>\n";

    // axes
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\""
        << kMarginLeft << "\" y2=\"" << (kMarginTop + plot_h)
        << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << kMarginLeft << "\" y1=\"" << (kMarginTop + plot_h)
        << "\" x2=\"" << (kMarginLeft + plot_w) << "\" y2=\""
        << (kMarginTop + plot_h) << "\" stroke=\"black\"/>\n";

    // ticks
    const double xstep = nice_step(static_cast<double>(T));
    for (double t = 0.0; t <= static_cast<double>(T) + 1e-9; t += xstep) {
        const double tt = std::max(1.0, t);
        const double x = xpix(tt);
        out << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(kMarginTop + plot_h)
            << "\" x2=\"" << fmt(x) << "\" y2=\"" << fmt(kMarginTop + plot_h + 5)
            << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(kMarginTop + plot_h + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"11\">"
            << fmt_tick(t) << "</text>\n";
    }
    const double ystep = nice_step(ymax);
    for (double y = 0.0; y <= ymax + 1e-9; y += ystep) {
        const double yy = ypix(y);
        out << "<line x1=\"" << fmt(kMarginLeft - 5) << "\" y1=\"" << fmt(yy)
            << "\" x2=\"" << fmt(kMarginLeft) << "\" y2=\"" << fmt(yy)
            << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fmt(kMarginLeft - 9) << "\" y=\"" << fmt(yy + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "font-size=\"11\">"
            << fmt_tick(y) << "</text>\n";
    }
    // axis labels
    out << "<text x=\"" << (kMarginLeft + plot_w / 2) << "\" y=\""
        << (kHeight - 12)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\">t</text>\n"
        << "<text x=\"18\" y=\"" << (kMarginTop + plot_h / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\" transform=\"rotate(-90 18 "
        << (kMarginTop + plot_h / 2) << ")\">cumulative regret</text>\n";

    if (marker_t && *marker_t >= 1 && *marker_t <= static_cast<int>(T)) {
        const double x = xpix(*marker_t);
        out << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(kMarginTop)
            << "\" x2=\"" << fmt(x) << "\" y2=\"" << fmt(kMarginTop + plot_h)
            << "\" stroke=\"#555555\" stroke-dasharray=\"5,4\"/>\n";
    }

    // stderr bands first so the lines draw on top
    for (std::size_t s = 0; s < results.size(); ++s) {
        const auto& r = results[s];
        if (r.mean.empty()) continue;
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out << "<path d=\"";
        for (std::size_t i = 0; i < r.mean.size(); ++i) {
            out << (i == 0 ? 'M' : 'L') << fmt(xpix(i + 1.0)) << ' '
                << fmt(ypix(r.mean[i] + r.stderr_[i]));
        }
        for (std::size_t k = r.mean.size(); k-- > 0;) {
            out << 'L' << fmt(xpix(k + 1.0)) << ' '
                << fmt(ypix(std::max(0.0, r.mean[k] - r.stderr_[k])));
        }
        out << "Z\" fill=\"" << color << "\" fill-opacity=\"0.18\" stroke=\"none\"/>\n";
    }
    for (std::size_t s = 0; s < results.size(); ++s) {
        const auto& r = results[s];
        if (r.mean.empty()) continue;
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < r.mean.size(); ++i) {
            if (i) out << ' ';
            out << fmt(xpix(i + 1.0)) << ',' << fmt(ypix(r.mean[i]));
        }
        out << "\"/>\n";
        // legend
        const double ly = kMarginTop + 16.0 * s + 8.0;
        out << "<rect x=\"" << (kMarginLeft + 12) << "\" y=\"" << fmt(ly - 8)
            << "\" width=\"14\" height=\"4\" fill=\"" << color << "\"/>\n"
            << "<text x=\"" << (kMarginLeft + 32) << "\" y=\"" << fmt(ly)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << r.label
            << "</text>\n";
    }
    out << "</svg>\n";
}

void emit_svg_file(const std::vector<AggregateResult>& results,
                   const std::string& path, const std::string& title,
                   std::optional<int> marker_t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    emit_svg(results, out, title, marker_t);
    if (!out) throw std::runtime_error("failed while writing: " + path);
}

} // namespace ebucb
