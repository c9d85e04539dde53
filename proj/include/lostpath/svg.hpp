#pragma once
/**
 * @file   svg.hpp
 * @brief  Deterministic SVG rendering of a path around the unit circle.
 *
 * The view spans [-3, 3] x [-3, 3] at 100 pixels per unit with the y axis
 * pointing up. Every number is printed with 6 decimals, so equal inputs give
 * byte-identical files.
 */

#include <lostpath/geom.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace lostpath
{
    struct SvgOptions
    {
        /// Touch angles of tangent lines to draw.
        std::vector<double> tangents;
    };

    namespace detail
    {
        inline constexpr double kSvgSize = 600.0;
        inline constexpr double kSvgScale = 100.0;

        inline std::string svg_number(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.6f", v);
            std::string s = buf;
            if (s == "-0.000000")
                s = "0.000000";
            return s;
        }

        inline double screen_x(double x) { return 0.5 * kSvgSize + kSvgScale * x; }
        inline double screen_y(double y) { return 0.5 * kSvgSize - kSvgScale * y; }

        inline std::string screen_xy(Point p) { return svg_number(screen_x(p.x)) + " " + svg_number(screen_y(p.y)); }

        inline std::string arc_command(const Arc& a, double from, double sweep)
        {
            const Point end = a.center + a.radius * unit_direction(a.ccw ? from + sweep : from - sweep);
            const std::string r = svg_number(kSvgScale * a.radius);
            // Flipping y turns counter-clockwise into the positive SVG sweep direction.
            return "A " + r + " " + r + " 0 " + (sweep > kPi ? "1" : "0") + " " + (a.ccw ? "1" : "0") + " " +
                   screen_xy(end);
        }
    } // namespace detail

    inline std::string render_svg(const PiecewisePath& c, const SvgOptions& opts = {})
    {
        using detail::screen_x;
        using detail::screen_xy;
        using detail::screen_y;
        using detail::svg_number;

        std::string out;
        out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" height=\"600\" "
               "viewBox=\"0 0 600 600\">\n";
        out += "  <rect width=\"600\" height=\"600\" fill=\"white\"/>\n";
        out += "  <circle class=\"unit-circle\" cx=\"" + svg_number(screen_x(0.0)) + "\" cy=\"" +
               svg_number(screen_y(0.0)) + "\" r=\"" + svg_number(detail::kSvgScale) +
               "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\"/>\n";

        for (const double theta : opts.tangents)
        {
            const Point u = unit_direction(theta);
            const Point a = u + 4.0 * perp(u);
            const Point b = u - 4.0 * perp(u);
            out += "  <line class=\"tangent\" x1=\"" + svg_number(screen_x(a.x)) + "\" y1=\"" +
                   svg_number(screen_y(a.y)) + "\" x2=\"" + svg_number(screen_x(b.x)) + "\" y2=\"" +
                   svg_number(screen_y(b.y)) + "\" stroke=\"#cc3333\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
        }

        for (const auto& piece : c.pieces())
        {
            if (const auto* s = std::get_if<Segment>(&piece))
            {
                out += "  <line class=\"segment\" x1=\"" + svg_number(screen_x(s->from.x)) + "\" y1=\"" +
                       svg_number(screen_y(s->from.y)) + "\" x2=\"" + svg_number(screen_x(s->to.x)) + "\" y2=\"" +
                       svg_number(screen_y(s->to.y)) + "\" stroke=\"black\" stroke-width=\"2\"/>\n";
                continue;
            }
            const auto& a = std::get<Arc>(piece);
            const double sweep = arc_sweep(a);
            std::string d = "M " + screen_xy(start_point(a)) + " ";
            // A single SVG arc cannot close on itself, so full turns are drawn as two halves.
            if (sweep > kTwoPi - 1e-9)
            {
                const double half = 0.5 * sweep;
                d += detail::arc_command(a, a.start_angle, half) + " ";
                d += detail::arc_command(a, a.ccw ? a.start_angle + half : a.start_angle - half, half);
            }
            else
            {
                d += detail::arc_command(a, a.start_angle, sweep);
            }
            out += "  <path class=\"arc\" d=\"" + d + "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
        }

        const Point s = c.start();
        const Point e = c.end();
        out += "  <circle class=\"start\" cx=\"" + svg_number(screen_x(s.x)) + "\" cy=\"" + svg_number(screen_y(s.y)) +
               "\" r=\"5.000000\" fill=\"#2a7f2a\"/>\n";
        out += "  <circle class=\"end\" cx=\"" + svg_number(screen_x(e.x)) + "\" cy=\"" + svg_number(screen_y(e.y)) +
               "\" r=\"5.000000\" fill=\"#2a4f9f\"/>\n";
        out += "</svg>\n";
        return out;
    }
} // namespace lostpath
