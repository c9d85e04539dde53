#pragma once
/**
 * @file   candidates.hpp
 * @brief  Canonical search paths and the overshoot-and-return family.
 *
 * All paths live in fixed coordinates around the unit circle centered at the
 * origin. Any rotation or reflection of them is equally valid.
 */

#include <lostpath/bounds.hpp>
#include <lostpath/geom.hpp>

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lostpath
{
    inline const Point kOrigin{0.0, 0.0};

    /// Radius out, then the whole circle: length 1 + 2pi.
    inline PiecewisePath naive_path()
    {
        return PiecewisePath({
            Segment{kOrigin, {1.0, 0.0}},
            Arc{kOrigin, 1.0, 0.0, kTwoPi, true},
        });
    }

    /// Radius out, three quarters of the circle, unit tangent: length 2 + 3pi/2.
    inline PiecewisePath figure1_path()
    {
        return PiecewisePath({
            Segment{kOrigin, {1.0, 0.0}},
            Arc{kOrigin, 1.0, 0.0, 1.5 * kPi, true},
            Segment{{0.0, -1.0}, {1.0, -1.0}},
        });
    }

    /**
     * @brief Overshoot along +x to (sec a, 0), return tangentially to the circle
     * at angle -a, follow it clockwise for 3pi/2 - 2a, leave on a unit tangent.
     *
     * At a = 0 the return segment vanishes and is dropped.
     */
    inline PiecewisePath figure2_path(double alpha, double final_length = 1.0)
    {
        if (!(alpha >= 0.0 && alpha < 0.5 * kPi))
            throw Error(ErrorCode::DomainError, "figure2_path needs 0 <= alpha < pi/2");
        const Point b{1.0 / std::cos(alpha), 0.0};
        const Point c{std::cos(alpha), -std::sin(alpha)};
        const double end_angle = -alpha - overshoot_sweep(alpha);
        const Point e = unit_direction(end_angle);
        const Point heading{std::sin(end_angle), -std::cos(end_angle)};

        std::vector<PathPiece> pieces;
        pieces.emplace_back(Segment{kOrigin, b});
        if (distance(b, c) > kDegeneracyTol)
            pieces.emplace_back(Segment{b, c});
        pieces.emplace_back(Arc{kOrigin, 1.0, -alpha, end_angle, false});
        pieces.emplace_back(Segment{e, e + final_length * heading});
        return PiecewisePath(std::move(pieces));
    }

    /// Shortest path from the center: the overshoot path at alpha = pi/6.
    inline PiecewisePath theorem1_path() { return figure2_path(kPi / 6.0); }

    /// Shortest free path: unit tangent, upper semicircle, unit tangent.
    inline PiecewisePath theorem2_path()
    {
        return PiecewisePath({
            Segment{{1.0, -1.0}, {1.0, 0.0}},
            Arc{kOrigin, 1.0, 0.0, kPi, true},
            Segment{{-1.0, 0.0}, {-1.0, -1.0}},
        });
    }

    struct ParamBounds
    {
        double low;
        double high;
    };

    struct PathFamily
    {
        std::string name;
        std::vector<std::string> param_names;
        std::vector<ParamBounds> param_box;
        std::function<PiecewisePath(std::span<const double>)> build;
        std::function<double(std::span<const double>)> closed_form_length; ///< may be empty

        [[nodiscard]] std::size_t dimension() const noexcept { return param_box.size(); }
    };

    inline PathFamily figure2_family()
    {
        return PathFamily{
            "figure2",
            {"alpha"},
            {{0.0, 1.4}},
            [](std::span<const double> p) { return figure2_path(p[0]); },
            [](std::span<const double> p) { return ell(p[0]); },
        };
    }
} // namespace lostpath
