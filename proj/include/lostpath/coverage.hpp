#pragma once
/**
 * @file   coverage.hpp
 * @brief  Does a path meet every tangent of the unit circle?
 *
 * A connected path meets all tangents exactly when its support function
 * h(theta) = max_q q . u(theta) is at least 1 in every direction, i.e. when
 * the convex hull of the path contains the unit disk. Three independent
 * deciders are provided:
 *
 *   - verify_certified: theta grid plus interval lower bounds (Lipschitz and
 *     exact per-point minima), bisecting intervals that are not yet proven.
 *   - verify_by_sampling: direct line/piece intersection on many tangents.
 *   - verify_by_hull: convex hull of an inscribed point sampling.
 */

#include <lostpath/geom.hpp>
#include <lostpath/golden.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace lostpath
{
    enum class CoverageMethod
    {
        certified_grid,
        intersection_sampling,
        hull_containment,
    };

    inline const char* to_string(CoverageMethod m) noexcept
    {
        switch (m)
        {
        case CoverageMethod::certified_grid: return "certified";
        case CoverageMethod::intersection_sampling: return "sampling";
        case CoverageMethod::hull_containment: return "hull";
        }
        return "unknown";
    }

    /// Inconclusive is its own outcome and never collapses into a boolean.
    enum class Verdict
    {
        covered,
        uncovered,
        inconclusive,
    };

    inline const char* to_string(Verdict v) noexcept
    {
        switch (v)
        {
        case Verdict::covered: return "covered";
        case Verdict::uncovered: return "uncovered";
        case Verdict::inconclusive: return "inconclusive";
        }
        return "unknown";
    }

    struct Certificate
    {
        double grid_spacing;
        double lipschitz;
    };

    struct CoverageReport
    {
        Verdict verdict = Verdict::inconclusive;
        /// min over theta of support - 1; negative means some tangent is missed.
        double deficit = 0.0;
        Angle witness_theta;
        CoverageMethod method = CoverageMethod::certified_grid;
        std::optional<Certificate> certificate;
        /// Certified method: proven lower bound on the deficit (covered verdicts only).
        std::optional<double> deficit_lower_bound;
        /// Hull method: maximal sagitta of the inscribed arc sampling.
        double sagitta_bound = 0.0;
        bool degenerate_hull = false;
        std::size_t evaluations = 0;

        [[nodiscard]] bool covered() const noexcept { return verdict == Verdict::covered; }
    };

    struct VerifyConfig
    {
        double tol = 1e-9;
        int initial_grid = 4096;
        int max_refinements = 40;
        int sample_count = 100000;
        /// Hard cap on support evaluations before the certified method gives up.
        std::size_t max_evaluations = std::size_t{1} << 23;

        void validate() const
        {
            if (!(tol > 0.0))
                throw Error(ErrorCode::InvalidArgument, "tol must be positive");
            if (initial_grid < 16)
                throw Error(ErrorCode::InvalidArgument, "initial_grid must be at least 16");
            if (max_refinements < 0)
                throw Error(ErrorCode::InvalidArgument, "max_refinements must be non-negative");
            if (sample_count < 1)
                throw Error(ErrorCode::InvalidArgument, "sample_count must be positive");
        }
    };

    /// Support function of the path (and of its convex hull) in direction theta.
    inline double support_value(const PiecewisePath& c, Angle theta)
    {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& p : c.pieces())
            best = std::max(best, piece_support(p, theta));
        return best;
    }

    inline double path_lipschitz_bound(const PiecewisePath& c)
    {
        double best = 0.0;
        for (const auto& p : c.pieces())
            best = std::max(best, piece_lipschitz_bound(p));
        return best;
    }

    /// Does the path meet the tangent line at theta (within tol)?
    inline bool meets_tangent(const PiecewisePath& c, Angle theta, double tol)
    {
        const Tangent line{theta};
        const Point u = line.normal();
        for (const auto& piece : c.pieces())
        {
            const double d0 = line.signed_distance(start_point(piece));
            const double d1 = line.signed_distance(end_point(piece));
            if (std::abs(d0) <= tol || std::abs(d1) <= tol || (d0 < 0.0) != (d1 < 0.0))
                return true;
            const auto* arc = std::get_if<Arc>(&piece);
            if (arc == nullptr)
                continue;

            // Signed offset of the line from the arc center along u.
            const double e = 1.0 - dot(arc->center, u);
            const double r = arc->radius;
            const double angular_tol = tol / r;
            auto in_span = [&](Point q) {
                const double phi = std::atan2(q.y - arc->center.y, q.x - arc->center.x);
                return arc_span_contains(*arc, phi) || arc_span_contains(*arc, phi + angular_tol) ||
                       arc_span_contains(*arc, phi - angular_tol);
            };
            if (std::abs(e) > r)
            {
                if (std::abs(e) - r > tol)
                    continue;
                const Point nearest = arc->center + (e > 0.0 ? r : -r) * u;
                if (in_span(nearest))
                    return true;
                continue;
            }
            const double half_chord = std::sqrt(std::max(0.0, r * r - e * e));
            const Point foot = arc->center + e * u;
            const Point along = perp(u);
            if (in_span(foot + half_chord * along) || in_span(foot - half_chord * along))
                return true;
        }
        return false;
    }

    namespace detail
    {
        struct ThetaValue
        {
            double theta;
            double value;
        };

        /// Strict "better" with ties broken by the smaller normalized angle.
        inline bool better(const ThetaValue& a, const ThetaValue& b)
        {
            if (a.value != b.value)
                return a.value < b.value;
            return normalize_angle(a.theta) < normalize_angle(b.theta);
        }

        /**
         * Refines the minimum of the support function from regularly spaced
         * samples: golden-section search around every sampled local minimum
         * that may still hold the global one.
         */
        inline ThetaValue polish_minimum(const PiecewisePath& c, const std::vector<double>& values,
                                         std::optional<ThetaValue> seed = std::nullopt)
        {
            const std::size_t n = values.size();
            const double step = kTwoPi / static_cast<double>(n);
            std::vector<std::size_t> minima;
            for (std::size_t k = 0; k < n; ++k)
            {
                const double prev = values[(k + n - 1) % n];
                const double next = values[(k + 1) % n];
                if (values[k] <= prev && values[k] <= next)
                    minima.push_back(k);
            }
            std::stable_sort(minima.begin(), minima.end(),
                             [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
            // A sampled minimum more than L * step above the lowest sample cannot hold the true minimum.
            if (!minima.empty())
            {
                const double cutoff = values[minima.front()] + path_lipschitz_bound(c) * step;
                std::size_t keep = 0;
                while (keep < minima.size() && keep < 256 && values[minima[keep]] <= cutoff)
                    ++keep;
                minima.resize(std::max<std::size_t>(keep, 1));
            }

            ThetaValue best{0.0, std::numeric_limits<double>::infinity()};
            for (std::size_t k = 0; k < n; ++k)
            {
                const ThetaValue cand{step * static_cast<double>(k), values[k]};
                if (better(cand, best))
                    best = cand;
            }
            auto h = [&](double t) { return support_value(c, Angle{t}); };
            for (const std::size_t k : minima)
            {
                const double center = step * static_cast<double>(k);
                const auto m = golden_minimize(h, center - step, center + step, 1e-14);
                const ThetaValue cand{normalize_angle(m.x), m.fx};
                if (better(cand, best))
                    best = cand;
            }
            if (seed)
            {
                const double w = step / 64.0;
                const auto m = golden_minimize(h, seed->theta - w, seed->theta + w, 1e-14);
                for (const ThetaValue cand : {*seed, ThetaValue{normalize_angle(m.x), m.fx}})
                {
                    if (better(cand, best))
                        best = cand;
                }
            }
            return best;
        }

        inline double path_support_lower_bound(const PiecewisePath& c, double lo, double hi)
        {
            double best = -std::numeric_limits<double>::infinity();
            for (const auto& p : c.pieces())
                best = std::max(best, piece_support_lower_bound(p, lo, hi));
            return best;
        }
    } // namespace detail

    namespace detail
    {
        struct CertifiedScan
        {
            Verdict verdict = Verdict::inconclusive;
            std::vector<double> grid;
            std::optional<ThetaValue> violation;
            double proven = std::numeric_limits<double>::infinity();
            std::size_t evaluations = 0;
            double delta = 0.0;
            double lipschitz = 0.0;
        };

        /**
         * Grid-and-bisect core of the certified decision. With stop_early the
         * scan returns at the first direction whose support is below 1 - tol.
         */
        inline CertifiedScan certified_scan(const PiecewisePath& c, const VerifyConfig& cfg, bool stop_early)
        {
            CertifiedScan scan;
            const auto n = static_cast<std::size_t>(cfg.initial_grid);
            scan.delta = kTwoPi / static_cast<double>(n);
            scan.lipschitz = path_lipschitz_bound(c);
            const double threshold = 1.0 - cfg.tol;

            struct Interval
            {
                double lo;
                double hi;
            };
            std::vector<Interval> pending;

            auto examine = [&](Interval iv, double value, std::vector<Interval>& next) {
                const double mid = 0.5 * (iv.lo + iv.hi);
                if (value < threshold)
                {
                    const ThetaValue cand{mid, value};
                    if (!scan.violation || better(cand, *scan.violation))
                        scan.violation = cand;
                    return;
                }
                const double bound = std::max(value - 0.5 * scan.lipschitz * (iv.hi - iv.lo),
                                              path_support_lower_bound(c, iv.lo, iv.hi));
                if (bound >= threshold)
                    scan.proven = std::min(scan.proven, bound);
                else
                    next.push_back(iv);
            };

            scan.grid.resize(n);
            for (std::size_t k = 0; k < n; ++k)
            {
                const double center = scan.delta * static_cast<double>(k);
                scan.grid[k] = support_value(c, Angle{center});
                ++scan.evaluations;
                examine({center - 0.5 * scan.delta, center + 0.5 * scan.delta}, scan.grid[k], pending);
                if (stop_early && scan.violation)
                {
                    scan.verdict = Verdict::uncovered;
                    return scan;
                }
            }

            bool exhausted = false;
            for (int depth = 0; depth < cfg.max_refinements && !pending.empty() && !scan.violation; ++depth)
            {
                std::vector<Interval> next;
                for (const Interval iv : pending)
                {
                    const double mid = 0.5 * (iv.lo + iv.hi);
                    for (const Interval half : {Interval{iv.lo, mid}, Interval{mid, iv.hi}})
                    {
                        const double value = support_value(c, Angle{0.5 * (half.lo + half.hi)});
                        ++scan.evaluations;
                        examine(half, value, next);
                    }
                    if (scan.evaluations > cfg.max_evaluations || (stop_early && scan.violation))
                    {
                        exhausted = true;
                        break;
                    }
                }
                pending = std::move(next);
                if (exhausted)
                    break;
            }

            if (scan.violation)
                scan.verdict = Verdict::uncovered;
            else if (!pending.empty())
                scan.verdict = Verdict::inconclusive;
            else
                scan.verdict = Verdict::covered;
            return scan;
        }
    } // namespace detail

    /**
     * @brief Certified coverage decision.
     *
     * The circle of directions is split into initial_grid intervals of width
     * delta, each represented by its center. An interval is proven covered when
     * a lower bound of the support on it reaches 1 - tol. Two bounds are
     * combined: h(center) - L delta / 2 with L the path Lipschitz bound, and
     * the exact interval minimum of the projection of fixed path points.
     * Unproven intervals are bisected up to max_refinements times. Any sampled
     * direction with support below 1 - tol is a witness of non-coverage.
     *
     * The reported deficit and witness come from a golden-section polish of
     * the grid minima, so they are accurate well below the grid spacing.
     */
    inline CoverageReport verify_certified(const PiecewisePath& c, const VerifyConfig& cfg = {})
    {
        cfg.validate();
        const auto scan = detail::certified_scan(c, cfg, false);

        CoverageReport report;
        report.method = CoverageMethod::certified_grid;
        report.certificate = Certificate{scan.delta, scan.lipschitz};
        report.evaluations = scan.evaluations;

        const auto best = detail::polish_minimum(c, scan.grid, scan.violation);
        report.deficit = best.value - 1.0;
        report.witness_theta = Angle{normalize_angle(best.theta)};
        report.verdict = scan.verdict;
        if (scan.verdict == Verdict::inconclusive && best.value < 1.0 - cfg.tol)
            report.verdict = Verdict::uncovered;
        if (report.verdict == Verdict::covered)
            report.deficit_lower_bound = scan.proven - 1.0;
        return report;
    }

    /// Verdict of verify_certified without the witness polish; stops at the first gap.
    inline Verdict certified_verdict(const PiecewisePath& c, const VerifyConfig& cfg = {})
    {
        cfg.validate();
        return detail::certified_scan(c, cfg, true).verdict;
    }

    /**
     * @brief Oracle: intersect sample_count evenly spaced tangents with the path.
     *
     * The verdict uses only line/piece intersection. The reported deficit is
     * the sampled support minimum refined by a local golden-section search.
     */
    inline CoverageReport verify_by_sampling(const PiecewisePath& c, const VerifyConfig& cfg = {})
    {
        cfg.validate();
        CoverageReport report;
        report.method = CoverageMethod::intersection_sampling;

        const auto n = static_cast<std::size_t>(cfg.sample_count);
        const double step = kTwoPi / static_cast<double>(n);
        std::vector<double> values(n);
        std::optional<detail::ThetaValue> worst_miss;
        for (std::size_t k = 0; k < n; ++k)
        {
            const double theta = step * static_cast<double>(k);
            values[k] = support_value(c, Angle{theta});
            if (!meets_tangent(c, Angle{theta}, cfg.tol))
            {
                const detail::ThetaValue cand{theta, values[k]};
                if (!worst_miss || detail::better(cand, *worst_miss))
                    worst_miss = cand;
            }
        }
        report.evaluations = n;
        const auto best = detail::polish_minimum(c, values);
        report.deficit = best.value - 1.0;
        report.witness_theta = Angle{normalize_angle(best.theta)};
        if (worst_miss)
        {
            report.verdict = Verdict::uncovered;
            if (!(best.value < 1.0 - cfg.tol))
            {
                report.witness_theta = Angle{worst_miss->theta};
                report.deficit = worst_miss->value - 1.0;
            }
        }
        else
        {
            report.verdict = Verdict::covered;
        }
        return report;
    }

    namespace detail
    {
        /// Andrew's monotone chain; counter-clockwise hull without collinear points.
        inline std::vector<Point> convex_hull(std::vector<Point> pts)
        {
            std::sort(pts.begin(), pts.end(),
                      [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
            pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
            if (pts.size() < 3)
                return pts;
            std::vector<Point> hull(2 * pts.size());
            std::size_t k = 0;
            for (const Point p : pts)
            {
                while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0)
                    --k;
                hull[k++] = p;
            }
            const std::size_t lower = k + 1;
            for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it)
            {
                while (k >= lower && cross(hull[k - 1] - hull[k - 2], *it - hull[k - 2]) <= 0.0)
                    --k;
                hull[k++] = *it;
            }
            hull.resize(k - 1);
            return hull;
        }

        /// Points on the path; arc chords have sagitta at most max_sagitta.
        inline std::vector<Point> inscribed_points(const PiecewisePath& c, double max_sagitta, double& sagitta)
        {
            std::vector<Point> pts;
            sagitta = 0.0;
            pts.push_back(c.start());
            for (const auto& piece : c.pieces())
            {
                if (const auto* arc = std::get_if<Arc>(&piece))
                {
                    const double sweep = arc_sweep(*arc);
                    const double ratio = max_sagitta / arc->radius;
                    const double max_step = ratio >= 1.0 ? kPi : 2.0 * std::acos(1.0 - ratio);
                    const auto parts = static_cast<std::size_t>(std::ceil(sweep / max_step));
                    const double step = sweep / static_cast<double>(parts);
                    sagitta = std::max(sagitta, arc->radius * (1.0 - std::cos(0.5 * step)));
                    const double sign = arc->ccw ? 1.0 : -1.0;
                    for (std::size_t i = 1; i < parts; ++i)
                        pts.push_back(arc_point_at_angle(*arc, arc->start_angle + sign * step * static_cast<double>(i)));
                }
                pts.push_back(end_point(piece));
            }
            return pts;
        }
    } // namespace detail

    /**
     * @brief Oracle: convex hull of an inscribed sampling must contain the disk.
     *
     * Every hull edge with outward normal n contributes the support value
     * v . n; the minimum over edges is the minimum of the hull's support
     * function. Inscribed sampling can only under-report coverage, by at most
     * the recorded sagitta bound (tol / 4).
     */
    inline CoverageReport verify_by_hull(const PiecewisePath& c, const VerifyConfig& cfg = {})
    {
        cfg.validate();
        CoverageReport report;
        report.method = CoverageMethod::hull_containment;

        double sagitta = 0.0;
        auto pts = detail::inscribed_points(c, 0.25 * cfg.tol, sagitta);
        report.sagitta_bound = sagitta;
        report.evaluations = pts.size();
        const auto hull = detail::convex_hull(std::move(pts));

        detail::ThetaValue best{0.0, std::numeric_limits<double>::infinity()};
        auto consider = [&](Point n) {
            const double theta = normalize_angle(std::atan2(n.y, n.x));
            double h = -std::numeric_limits<double>::infinity();
            for (const Point v : hull)
                h = std::max(h, dot(v, n));
            const detail::ThetaValue cand{theta, h};
            if (detail::better(cand, best))
                best = cand;
        };

        if (hull.size() < 3)
        {
            report.degenerate_hull = true;
            if (hull.size() == 2)
            {
                const Point d = hull[1] - hull[0];
                const Point n = (1.0 / norm(d)) * perp(d);
                consider(n);
                consider(-n);
            }
            else
            {
                const Point p = hull.front();
                consider(norm(p) > 0.0 ? (-1.0 / norm(p)) * p : Point{1.0, 0.0});
            }
            report.verdict = Verdict::uncovered;
        }
        else
        {
            for (std::size_t i = 0; i < hull.size(); ++i)
            {
                const Point a = hull[i];
                const Point b = hull[(i + 1) % hull.size()];
                const Point d = b - a;
                const Point n{d.y / norm(d), -d.x / norm(d)};
                const double h = dot(a, n);
                const detail::ThetaValue cand{normalize_angle(std::atan2(n.y, n.x)), h};
                if (detail::better(cand, best))
                    best = cand;
            }
            report.verdict = best.value >= 1.0 - cfg.tol ? Verdict::covered : Verdict::uncovered;
        }
        report.deficit = best.value - 1.0;
        report.witness_theta = Angle{best.theta};
        return report;
    }

    inline CoverageReport verify(const PiecewisePath& c, CoverageMethod method, const VerifyConfig& cfg = {})
    {
        switch (method)
        {
        case CoverageMethod::certified_grid: return verify_certified(c, cfg);
        case CoverageMethod::intersection_sampling: return verify_by_sampling(c, cfg);
        case CoverageMethod::hull_containment: return verify_by_hull(c, cfg);
        }
        throw Error(ErrorCode::InvalidArgument, "unknown coverage method");
    }
} // namespace lostpath
