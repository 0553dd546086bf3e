#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "experiments.hpp"
#include "format.hpp"

namespace plateau::harness {

struct PlotPoint {
    double x;
    double y;
    std::optional<double> lo;  // error band, e.g. p25
    std::optional<double> hi;  // e.g. p75
};

struct Series {
    std::string name;
    std::vector<PlotPoint> points;
};

enum class PlotStyle { line, scatter };

struct PlotSpec {
    std::string title;
    std::string x_label = "x";
    std::string y_label = "y";
    bool log_x = false;
    bool log_y = false;
    PlotStyle style = PlotStyle::line;
    int width = 720;
    int height = 480;
};

namespace detail {

inline std::string xml_escape(std::string_view s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Axis {
    double lo;
    double hi;
    bool log;

    [[nodiscard]] double map(double v) const
    {
        const double a = log ? std::log10(v) : v;
        const double b = log ? std::log10(lo) : lo;
        const double c = log ? std::log10(hi) : hi;
        return c == b ? 0.5 : (a - b) / (c - b);
    }

    [[nodiscard]] std::vector<double> ticks() const
    {
        std::vector<double> t;
        if (log) {
            for (double e = std::floor(std::log10(lo)); e <= std::ceil(std::log10(hi)); e += 1.0) {
                const double v = std::pow(10.0, e);
                if (v >= lo * (1 - 1e-12) && v <= hi * (1 + 1e-12))
                    t.push_back(v);
            }
            if (t.empty())
                t = {lo, hi};
            return t;
        }
        const double span = hi - lo;
        if (span <= 0)
            return {lo};
        const double raw = span / 6.0;
        const double mag = std::pow(10.0, std::floor(std::log10(raw)));
        double step = mag;
        for (double m : {1.0, 2.0, 5.0, 10.0})
            if (m * mag >= raw) {
                step = m * mag;
                break;
            }
        for (double v = std::ceil(lo / step) * step; v <= hi + step * 1e-9; v += step)
            t.push_back(std::fabs(v) < step * 1e-9 ? 0.0 : v);
        return t;
    }
};

inline Axis make_axis(std::vector<double> values, bool log)
{
    if (log)
        std::erase_if(values, [](double v) { return !(v > 0) || !std::isfinite(v); });
    else
        std::erase_if(values, [](double v) { return !std::isfinite(v); });
    if (values.empty())
        return {1.0, 10.0, log};
    auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    double lo = *mn, hi = *mx;
    if (lo == hi) {
        if (log) {
            lo /= 2;
            hi *= 2;
        } else {
            lo -= 1;
            hi += 1;
        }
    }
    return {lo, hi, log};
}

inline std::string tick_label(double v)
{
    if (v != 0 && (std::fabs(v) >= 1e5 || std::fabs(v) < 1e-3)) {
        std::ostringstream s;
        s.imbue(std::locale::classic());
        s.precision(2);
        s << std::scientific << v;
        return s.str();
    }
    return format_double(std::round(v * 1e6) / 1e6);
}

inline constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                          "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

} // namespace detail

/// Renders the series as a standalone SVG document. Points that cannot be
/// drawn on a log axis (non-positive or non-finite) are skipped.
inline std::string render_svg(const std::vector<Series>& series, const PlotSpec& spec)
{
    if (series.empty())
        throw std::invalid_argument("render_svg: no series");
    std::vector<double> xs, ys;
    for (const auto& s : series)
        for (const auto& p : s.points) {
            xs.push_back(p.x);
            ys.push_back(p.y);
            if (p.lo)
                ys.push_back(*p.lo);
            if (p.hi)
                ys.push_back(*p.hi);
        }
    const auto ax = detail::make_axis(xs, spec.log_x);
    const auto ay = detail::make_axis(ys, spec.log_y);
    const double left = 80, right = 150, top = 40, bottom = 60;
    const double pw = spec.width - left - right;
    const double ph = spec.height - top - bottom;
    auto px = [&](double x) { return left + ax.map(x) * pw; };
    auto py = [&](double y) { return top + (1.0 - ay.map(y)) * ph; };
    auto drawable = [&](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && (!spec.log_x || x > 0) && (!spec.log_y || y > 0);
    };
    auto num = [](double v) { return format_fixed(v, 2); };

    std::ostringstream o;
    o.imbue(std::locale::classic());
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\"" << spec.height
      << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << spec.width << "\" height=\"" << spec.height << "\" fill=\"white\"/>\n";
    if (!spec.title.empty())
        o << "<text x=\"" << num(left + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
          << detail::xml_escape(spec.title) << "</text>\n";
    o << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : ax.ticks()) {
        const double x = px(t);
        o << "<line x1=\"" << num(x) << "\" y1=\"" << num(top + ph) << "\" x2=\"" << num(x) << "\" y2=\""
          << num(top + ph + 5) << "\" stroke=\"black\"/>\n"
          << "<text x=\"" << num(x) << "\" y=\"" << num(top + ph + 20)
          << "\" text-anchor=\"middle\" font-size=\"11\">" << detail::tick_label(t) << "</text>\n";
    }
    for (double t : ay.ticks()) {
        const double y = py(t);
        o << "<line x1=\"" << num(left - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(left) << "\" y2=\"" << num(y)
          << "\" stroke=\"black\"/>\n"
          << "<text x=\"" << num(left - 8) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\" font-size=\"11\">"
          << detail::tick_label(t) << "</text>\n";
    }
    o << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(spec.height - 15.0)
      << "\" text-anchor=\"middle\" font-size=\"13\">" << detail::xml_escape(spec.x_label) << "</text>\n"
      << "<text x=\"18\" y=\"" << num(top + ph / 2) << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
      << num(top + ph / 2) << ")\">" << detail::xml_escape(spec.y_label) << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = detail::palette[si % std::size(detail::palette)];
        o << "<g>\n";
        for (const auto& p : s.points)
            if (p.lo && p.hi && drawable(p.x, *p.lo) && drawable(p.x, *p.hi))
                o << "<line x1=\"" << num(px(p.x)) << "\" y1=\"" << num(py(*p.lo)) << "\" x2=\"" << num(px(p.x))
                  << "\" y2=\"" << num(py(*p.hi)) << "\" stroke=\"" << color << "\" stroke-opacity=\"0.5\"/>\n";
        if (spec.style == PlotStyle::line) {
            std::string pts;
            for (const auto& p : s.points)
                if (drawable(p.x, p.y))
                    pts += num(px(p.x)) + "," + num(py(p.y)) + " ";
            if (!pts.empty()) {
                pts.pop_back();
                o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << pts
                  << "\"/>\n";
            }
        }
        for (const auto& p : s.points)
            if (drawable(p.x, p.y) && (spec.style == PlotStyle::scatter || s.points.size() <= 200))
                o << "<circle cx=\"" << num(px(p.x)) << "\" cy=\"" << num(py(p.y)) << "\" r=\"2.5\" fill=\"" << color
                  << "\"/>\n";
        const double ly = top + 16.0 * static_cast<double>(si) + 10.0;
        o << "<rect x=\"" << num(left + pw + 12) << "\" y=\"" << num(ly - 8) << "\" width=\"10\" height=\"10\" fill=\""
          << color << "\"/>\n"
          << "<text x=\"" << num(left + pw + 28) << "\" y=\"" << num(ly + 1) << "\" font-size=\"11\">"
          << detail::xml_escape(s.name) << "</text>\n"
          << "</g>\n";
    }
    o << "</svg>\n";
    return o.str();
}

inline void emit_svg(const std::vector<Series>& series, const PlotSpec& spec, const std::string& path)
{
    const auto doc = render_svg(series, spec);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << doc;
    out.flush();
    if (!out)
        throw std::runtime_error("write to '" + path + "' failed");
}

enum class SweepAxis { n, r, ell };

/// Mean run time against `x`, one series per distinct value of `group`,
/// with the interquartile range as the error band.
inline std::vector<Series> sweep_series(const std::vector<SweepRow>& rows, SweepAxis x, SweepAxis group)
{
    if (rows.empty())
        throw std::invalid_argument("sweep_series: empty table");
    auto field = [](const SweepRow& row, SweepAxis a) { return a == SweepAxis::n ? row.n : a == SweepAxis::r ? row.r : row.ell; };
    const char* gname = group == SweepAxis::n ? "n" : group == SweepAxis::r ? "r" : "ell";
    std::map<int, Series> by_group;
    for (const auto& row : rows) {
        if (row.all_censored())
            continue;
        auto& s = by_group[field(row, group)];
        s.name = std::string(gname) + "=" + std::to_string(field(row, group));
        s.points.push_back({static_cast<double>(field(row, x)), row.stats.mean, row.stats.p25, row.stats.p75});
    }
    std::vector<Series> out;
    for (auto& [_, s] : by_group) {
        std::sort(s.points.begin(), s.points.end(), [](const PlotPoint& a, const PlotPoint& b) { return a.x < b.x; });
        out.push_back(std::move(s));
    }
    if (out.empty())
        throw std::invalid_argument("sweep_series: every cell is censored");
    return out;
}

/// Ones count against iteration from a trajectory.
inline Series trajectory_series(const std::vector<ea::TrajectoryPoint>& traj, std::string name)
{
    Series s{std::move(name), {}};
    s.points.reserve(traj.size());
    for (const auto& p : traj)
        s.points.push_back({static_cast<double>(p.t), static_cast<double>(p.ones), std::nullopt, std::nullopt});
    return s;
}

} // namespace plateau::harness
