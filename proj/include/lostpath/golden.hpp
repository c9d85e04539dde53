#pragma once
/**
 * @file   golden.hpp
 * @brief  Golden-section search for unimodal scalar functions.
 */

#include <lostpath/error.hpp>

#include <cmath>
#include <utility>

namespace lostpath
{
    struct ScalarMinimum
    {
        double x;
        double fx;
    };

    /**
     * @brief Shrinks [lo, hi] by the golden ratio until its width is <= xtol.
     *
     * f must be unimodal on the bracket; otherwise a local minimum is returned.
     * The result is the final bracket midpoint and f evaluated there.
     */
    template <typename F>
    ScalarMinimum golden_minimize(F&& f, double lo, double hi, double xtol)
    {
        if (!(lo < hi))
            throw Error(ErrorCode::BadBracket, "golden_minimize needs lo < hi");
        if (!(xtol > 0.0))
            throw Error(ErrorCode::InvalidArgument, "golden_minimize needs xtol > 0");

        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = lo;
        double b = hi;
        double c = b - inv_phi * (b - a);
        double d = a + inv_phi * (b - a);
        double fc = f(c);
        double fd = f(d);
        while (b - a > xtol)
        {
            if (fc == fd)
            {
                // Equal values straddle the minimum; keep the part between them.
                a = c;
                b = d;
                c = b - inv_phi * (b - a);
                d = a + inv_phi * (b - a);
                fc = f(c);
                fd = f(d);
            }
            else if (fc < fd)
            {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = f(c);
            }
            else
            {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = f(d);
            }
            // Bracket stops shrinking once it hits floating-point resolution.
            if (c >= d)
                break;
        }
        const double x = 0.5 * (a + b);
        return {x, f(x)};
    }
} // namespace lostpath
