#pragma once
/**
 * @file   bounds.hpp
 * @brief  Closed-form lengths and bound constants for the escape-path problem.
 */

#include <lostpath/error.hpp>
#include <lostpath/geom.hpp>

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace lostpath
{
    enum class BoundKind
    {
        exact,
        lower_bound,
        upper_bound,
    };

    inline const char* to_string(BoundKind k) noexcept
    {
        switch (k)
        {
        case BoundKind::exact: return "exact";
        case BoundKind::lower_bound: return "lower_bound";
        case BoundKind::upper_bound: return "upper_bound";
        }
        return "unknown";
    }

    struct BoundReport
    {
        std::string name;
        double value;
        BoundKind kind;
        std::string formula_text;
    };

    /// Arc sweep of the overshoot-and-return path: 3pi/2 - 2 alpha.
    inline double overshoot_sweep(double alpha) { return 1.5 * kPi - 2.0 * alpha; }

    /// Length of the overshoot-and-return path: sec a + tan a + (3pi/2 - 2a) + 1.
    inline double ell(double alpha)
    {
        if (!(alpha >= 0.0 && alpha < 0.5 * kPi))
            throw Error(ErrorCode::DomainError, "ell(alpha) needs 0 <= alpha < pi/2");
        return 1.0 / std::cos(alpha) + std::tan(alpha) + overshoot_sweep(alpha) + 1.0;
    }

    /// Derivative of ell; vanishes exactly where sin(alpha) = 1/2.
    inline double ell_derivative(double alpha)
    {
        const double c = std::cos(alpha);
        return (std::sin(alpha) + 1.0) / (c * c) - 2.0;
    }

    /// (start pinned at the center, free start): (7pi/6 + 1 + sqrt 3, pi + 2).
    inline std::pair<double, double> theorem_lengths()
    {
        return {7.0 * kPi / 6.0 + 1.0 + std::numbers::sqrt3, kPi + 2.0};
    }

    /// Threshold 4/(pi-2) - (pi-2)/4 on |RE| separating the two chord cases.
    inline double chord_case_threshold()
    {
        const double g = kPi - 2.0;
        return 4.0 / g - g / 4.0;
    }

    inline std::vector<BoundReport> eq3_constants()
    {
        const double t = chord_case_threshold();
        return {
            {"chord_threshold", t, BoundKind::exact, "4/(pi-2) - (pi-2)/4"},
            {"chord_path_lower", 2.0 + t, BoundKind::lower_bound, "2 + 4/(pi-2) - (pi-2)/4"},
            {"free_optimum", kPi + 2.0, BoundKind::exact, "pi + 2"},
            {"radius_increment", 0.5 * kPi - 1.0, BoundKind::exact, "pi/2 - 1"},
        };
    }

    /// Three-dimensional shortest-path bounds (lower, upper).
    inline std::pair<BoundReport, BoundReport> l3_bounds()
    {
        const double planar = 2.0 + std::numbers::sqrt3 + 7.0 * kPi / 6.0;
        return {
            {"l3_lower", std::sqrt(planar * planar + 4.0), BoundKind::lower_bound,
             "sqrt((2 + sqrt(3) + 7pi/6)^2 + 4)"},
            {"l3_upper", 4.0 + 0.5 * std::numbers::sqrt2 * 3.0 * kPi, BoundKind::upper_bound,
             "4 + (1/2) sqrt(2) 3 pi"},
        };
    }

    /// n-dimensional bounds; both constants are unspecified and must be supplied.
    inline std::pair<BoundReport, BoundReport> ln_bounds(int n, double c_lower, double c_upper)
    {
        if (n < 2)
            throw Error(ErrorCode::DomainError, "ln_bounds needs n >= 2");
        const double dn = static_cast<double>(n);
        return {
            {"ln_lower", c_lower + 2.0 * dn, BoundKind::lower_bound,
             "c_lower + 2n (c_lower unspecified, caller supplied)"},
            {"ln_upper", c_upper * std::pow(dn, 1.5), BoundKind::upper_bound,
             "c_upper n^(3/2) (c_upper unspecified, caller supplied)"},
        };
    }
} // namespace lostpath
