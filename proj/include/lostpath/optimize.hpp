#pragma once
/**
 * @file   optimize.hpp
 * @brief  Length minimization under the coverage constraint.
 *
 * optimize_family runs a bounded Nelder-Mead descent over the parameters of
 * a PathFamily. anneal_search explores free polylines by simulated annealing.
 * Both report only feasible results, so the theorem lengths bound their values
 * from below.
 */

#include <lostpath/candidates.hpp>
#include <lostpath/coverage.hpp>
#include <lostpath/geom.hpp>
#include <lostpath/golden.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace lostpath
{
    struct OptResult
    {
        std::vector<double> params;
        double value = 0.0;
        double deficit = 0.0;
        std::size_t evaluations = 0;
        bool converged = false;
        std::optional<PiecewisePath> path;
    };

    enum class SearchMode
    {
        theorem1, ///< first vertex pinned at the origin
        theorem2, ///< free endpoints
    };

    inline const char* to_string(SearchMode m) noexcept { return m == SearchMode::theorem1 ? "theorem1" : "theorem2"; }

    struct SearchConfig
    {
        SearchMode mode = SearchMode::theorem2;
        int vertices = 12;
        std::uint64_t seed = 0;
        int iterations = 20000;
        double initial_temperature = 0.5;
        double cooling = 0.995;
        double penalty_weight = 100.0;
        int restarts = 8;

        void validate() const
        {
            if (vertices < 4)
                throw Error(ErrorCode::InvalidArgument, "vertices must be at least 4");
            if (iterations < 1 || restarts < 1)
                throw Error(ErrorCode::InvalidArgument, "iterations and restarts must be positive");
            if (!(cooling > 0.0 && cooling < 1.0))
                throw Error(ErrorCode::InvalidArgument, "cooling must lie in (0, 1)");
            if (!(initial_temperature > 0.0) || !(penalty_weight >= 0.0))
                throw Error(ErrorCode::InvalidArgument, "temperature must be positive and penalty non-negative");
        }
    };

    namespace detail
    {
        /// length + w max(0, -deficit)^2, with the penalty switched off inside the tolerance band.
        inline double penalized_objective(double length, double deficit, double weight, double tol)
        {
            if (deficit >= -tol)
                return length;
            return length + weight * deficit * deficit;
        }

        struct FamilyPoint
        {
            std::vector<double> x;
            double length;
            double deficit;
            bool feasible;
        };

        class FamilyObjective
        {
        public:
            FamilyObjective(const PathFamily& fam, const VerifyConfig& cfg) : fam_(fam), cfg_(cfg) {}

            std::vector<double> clamp(std::vector<double> x) const
            {
                for (std::size_t k = 0; k < x.size(); ++k)
                    x[k] = std::clamp(x[k], fam_.param_box[k].low, fam_.param_box[k].high);
                return x;
            }

            FamilyPoint evaluate(const std::vector<double>& raw)
            {
                FamilyPoint pt{clamp(raw), std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
                               false};
                // Clamping to the box makes the simplex revisit points.
                if (const auto hit = memo_.find(pt.x); hit != memo_.end())
                    return hit->second;
                pt = measure(std::move(pt));
                memo_.emplace(pt.x, pt);
                return pt;
            }

            std::size_t evaluations = 0;
            std::optional<FamilyPoint> best_feasible;
            std::optional<FamilyPoint> best_infeasible;

        private:
            FamilyPoint measure(FamilyPoint pt)
            {
                ++evaluations;
                try
                {
                    const auto path = fam_.build(pt.x);
                    const auto rep = verify_certified(path, cfg_);
                    pt.length = path.length();
                    pt.deficit = rep.deficit;
                    pt.feasible = rep.covered();
                }
                catch (const Error&)
                {
                    return pt;
                }
                if (pt.feasible && (!best_feasible || pt.length < best_feasible->length))
                    best_feasible = pt;
                if (!pt.feasible && std::isfinite(pt.length) &&
                    (!best_infeasible || pt.length < best_infeasible->length))
                    best_infeasible = pt;
                return pt;
            }

            const PathFamily& fam_;
            VerifyConfig cfg_;
            std::map<std::vector<double>, FamilyPoint> memo_;
        };

        struct SimplexOutcome
        {
            std::vector<double> x;
            bool converged;
        };

        /// Bounded Nelder-Mead on the penalized objective, starting at x0.
        inline SimplexOutcome nelder_mead(FamilyObjective& obj, const PathFamily& fam, std::vector<double> x0,
                                          double weight, double tol, int max_iter)
        {
            const std::size_t d = x0.size();
            auto f = [&](const std::vector<double>& x) {
                const auto pt = obj.evaluate(x);
                if (!std::isfinite(pt.length))
                    return std::numeric_limits<double>::infinity();
                return penalized_objective(pt.length, pt.deficit, weight, tol);
            };

            struct Vertex
            {
                std::vector<double> x;
                double fx;
            };
            std::vector<Vertex> simplex;
            x0 = obj.clamp(x0);
            simplex.push_back({x0, f(x0)});
            for (std::size_t k = 0; k < d; ++k)
            {
                const auto& b = fam.param_box[k];
                const double width = b.high - b.low;
                auto x = x0;
                x[k] += (x0[k] + 0.1 * width <= b.high) ? 0.1 * width : -0.1 * width;
                x = obj.clamp(x);
                simplex.push_back({x, f(x)});
            }

            auto combine = [&](const std::vector<double>& a, const std::vector<double>& b, double t) {
                std::vector<double> out(d);
                for (std::size_t k = 0; k < d; ++k)
                    out[k] = a[k] + t * (b[k] - a[k]);
                return obj.clamp(out);
            };

            for (int iter = 0; iter < max_iter; ++iter)
            {
                std::stable_sort(simplex.begin(), simplex.end(),
                                 [](const Vertex& l, const Vertex& r) { return l.fx < r.fx; });
                double size = 0.0;
                for (std::size_t v = 1; v <= d; ++v)
                    for (std::size_t k = 0; k < d; ++k)
                    {
                        const double width = fam.param_box[k].high - fam.param_box[k].low;
                        size = std::max(size, std::abs(simplex[v].x[k] - simplex[0].x[k]) / std::max(width, 1e-300));
                    }
                if (size < 1e-9 || std::abs(simplex[d].fx - simplex[0].fx) < 1e-15)
                    return {simplex[0].x, true};

                std::vector<double> centroid(d, 0.0);
                for (std::size_t v = 0; v < d; ++v)
                    for (std::size_t k = 0; k < d; ++k)
                        centroid[k] += simplex[v].x[k] / static_cast<double>(d);

                const auto& worst = simplex[d];
                const auto xr = combine(centroid, worst.x, -1.0);
                const double fr = f(xr);
                if (fr < simplex[0].fx)
                {
                    const auto xe = combine(centroid, worst.x, -2.0);
                    const double fe = f(xe);
                    simplex[d] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
                    continue;
                }
                if (fr < simplex[d - 1].fx)
                {
                    simplex[d] = {xr, fr};
                    continue;
                }
                const bool outside = fr < worst.fx;
                const auto xc = outside ? combine(centroid, xr, 0.5) : combine(centroid, worst.x, 0.5);
                const double fc = f(xc);
                if (fc < std::min(fr, worst.fx))
                {
                    simplex[d] = {xc, fc};
                    continue;
                }
                for (std::size_t v = 1; v <= d; ++v)
                {
                    simplex[v].x = combine(simplex[0].x, simplex[v].x, 0.5);
                    simplex[v].fx = f(simplex[v].x);
                }
            }
            std::stable_sort(simplex.begin(), simplex.end(),
                             [](const Vertex& l, const Vertex& r) { return l.fx < r.fx; });
            return {simplex[0].x, false};
        }
    } // namespace detail

    /**
     * @brief Minimizes family length subject to coverage.
     *
     * Descents start from every corner of the parameter box and its center.
     * When a descent ends outside the feasible set the penalty weight grows
     * tenfold and the descent continues from there. Finally the segment between
     * the best infeasible and the best feasible point is bisected for the
     * feasibility boundary.
     */
    inline OptResult optimize_family(const PathFamily& fam, const VerifyConfig& cfg = {}, double penalty_weight = 100.0)
    {
        if (fam.dimension() == 0)
            throw Error(ErrorCode::InvalidArgument, "param_box is empty");
        for (const auto& b : fam.param_box)
            if (!(b.low <= b.high))
                throw Error(ErrorCode::InvalidArgument, "param_box bound has low > high");
        cfg.validate();

        const std::size_t d = fam.dimension();
        detail::FamilyObjective obj(fam, cfg);
        const int max_iter = 200 * static_cast<int>(d);

        std::vector<std::vector<double>> starts;
        for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask)
        {
            std::vector<double> x(d);
            for (std::size_t k = 0; k < d; ++k)
                x[k] = (mask >> k) & 1U ? fam.param_box[k].high : fam.param_box[k].low;
            starts.push_back(x);
        }
        std::vector<double> center(d);
        for (std::size_t k = 0; k < d; ++k)
            center[k] = 0.5 * (fam.param_box[k].low + fam.param_box[k].high);
        starts.push_back(center);

        bool converged = true;
        for (const auto& start : starts)
        {
            auto x = start;
            double weight = penalty_weight;
            for (int stage = 0; stage < 6; ++stage)
            {
                const auto out = detail::nelder_mead(obj, fam, x, weight, cfg.tol, max_iter);
                converged = converged && out.converged;
                x = out.x;
                if (obj.evaluate(x).feasible)
                    break;
                weight *= 10.0;
            }
        }

        if (!obj.best_feasible)
            throw Error(ErrorCode::NoFeasiblePoint, "no evaluated parameter point meets every tangent");

        if (obj.best_infeasible && obj.best_infeasible->length < obj.best_feasible->length)
        {
            auto good = obj.best_feasible->x;
            auto bad = obj.best_infeasible->x;
            for (int step = 0; step < 60; ++step)
            {
                std::vector<double> mid(d);
                for (std::size_t k = 0; k < d; ++k)
                    mid[k] = 0.5 * (good[k] + bad[k]);
                (obj.evaluate(mid).feasible ? good : bad) = mid;
            }
        }

        const auto& best = *obj.best_feasible;
        OptResult res;
        res.params = best.x;
        res.value = best.length;
        res.deficit = best.deficit;
        res.evaluations = obj.evaluations;
        res.converged = converged;
        res.path = fam.build(best.x);
        return res;
    }

    namespace detail
    {
        /// Exact min over theta of the support of a point set, minus one.
        inline double point_set_deficit(const std::vector<Point>& pts)
        {
            const auto hull = convex_hull(pts);
            auto segment_distance = [](Point a, Point b) {
                const Point ab = b - a;
                const double len2 = dot(ab, ab);
                const double t = len2 > 0.0 ? std::clamp(-dot(a, ab) / len2, 0.0, 1.0) : 0.0;
                return norm(a + t * ab);
            };
            const std::size_t n = hull.size();
            if (n < 3)
            {
                double dist = n == 1 ? norm(hull[0]) : segment_distance(hull[0], hull[1]);
                return -dist - 1.0;
            }
            double inside = std::numeric_limits<double>::infinity();
            bool contains = true;
            for (std::size_t k = 0; k < n; ++k)
            {
                const Point a = hull[k];
                const Point b = hull[(k + 1) % n];
                // Counter-clockwise hull: the origin is inside when it is left of every edge.
                const double signed_dist = cross(b - a, Point{0.0, 0.0} - a) / distance(a, b);
                contains = contains && signed_dist >= 0.0;
                inside = std::min(inside, signed_dist);
            }
            if (contains)
                return inside - 1.0;
            double outside = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < n; ++k)
                outside = std::min(outside, segment_distance(hull[k], hull[(k + 1) % n]));
            return -outside - 1.0;
        }

        inline double polyline_length(const std::vector<Point>& v)
        {
            double len = 0.0;
            for (std::size_t k = 1; k < v.size(); ++k)
                len += distance(v[k - 1], v[k]);
            return len;
        }

        struct AnnealOutcome
        {
            std::vector<Point> vertices;
            double value; ///< length after scaling the polyline to zero deficit
            std::size_t evaluations;
        };

        inline AnnealOutcome anneal_restart(const SearchConfig& scfg, int restart)
        {
            std::seed_seq seq{static_cast<std::uint32_t>(scfg.seed), static_cast<std::uint32_t>(scfg.seed >> 32U),
                              static_cast<std::uint32_t>(restart)};
            std::mt19937_64 rng(seq);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            std::normal_distribution<double> gauss(0.0, 1.0);

            const bool pinned = scfg.mode == SearchMode::theorem1;
            const std::size_t first_free = pinned ? 1 : 0;
            const std::size_t min_vertices = pinned ? 4 : 3;
            const auto max_vertices = static_cast<std::size_t>(scfg.vertices);

            // Start on a circle of radius 1.5, whose inscribed polygons contain the disk.
            std::vector<Point> cur;
            if (pinned)
                cur.push_back(kOrigin);
            const std::size_t ring = max_vertices - cur.size();
            const double phase = kTwoPi * unit(rng);
            for (std::size_t k = 0; k < ring; ++k)
                cur.push_back(1.5 * unit_direction(phase + kTwoPi * static_cast<double>(k) / static_cast<double>(ring)));

            struct State
            {
                double energy;
                double repaired;
            };
            std::size_t evaluations = 0;
            auto assess = [&](const std::vector<Point>& v) {
                ++evaluations;
                const double len = polyline_length(v);
                const double def = point_set_deficit(v);
                const double repaired = def > -1.0 ? len / (1.0 + def) : std::numeric_limits<double>::infinity();
                return State{len + scfg.penalty_weight * std::pow(std::max(0.0, -def), 2.0), repaired};
            };

            State state = assess(cur);
            AnnealOutcome best{cur, state.repaired, 0};
            double temperature = scfg.initial_temperature;
            for (int it = 0; it < scfg.iterations; ++it)
            {
                auto next = cur;
                const double pick = unit(rng);
                const double sigma = std::pow(10.0, -5.0 + 4.0 * unit(rng));
                if (pick < 0.1 && next.size() < max_vertices)
                {
                    const std::size_t k = first_free + static_cast<std::size_t>(unit(rng) * static_cast<double>(next.size() - first_free));
                    const std::size_t at = std::min(k + 1, next.size());
                    const Point base = at < next.size() ? 0.5 * (next[at - 1] + next[at]) : next.back();
                    next.insert(next.begin() + static_cast<std::ptrdiff_t>(at),
                                base + Point{sigma * gauss(rng), sigma * gauss(rng)});
                }
                else if (pick < 0.2 && next.size() > min_vertices)
                {
                    const std::size_t k = first_free + static_cast<std::size_t>(unit(rng) * static_cast<double>(next.size() - first_free));
                    next.erase(next.begin() + static_cast<std::ptrdiff_t>(std::min(k, next.size() - 1)));
                }
                else
                {
                    const std::size_t k = first_free + static_cast<std::size_t>(unit(rng) * static_cast<double>(next.size() - first_free));
                    const std::size_t idx = std::min(k, next.size() - 1);
                    next[idx] = next[idx] + Point{sigma * gauss(rng), sigma * gauss(rng)};
                }

                const State cand = assess(next);
                const double delta = cand.energy - state.energy;
                if (delta <= 0.0 || unit(rng) < std::exp(-delta / temperature))
                {
                    cur = std::move(next);
                    state = cand;
                    if (state.repaired < best.value)
                    {
                        best.vertices = cur;
                        best.value = state.repaired;
                    }
                }
                temperature *= scfg.cooling;
            }
            best.evaluations = evaluations;
            return best;
        }
    } // namespace detail

    /**
     * @brief Simulated annealing over polylines with at most scfg.vertices vertices.
     *
     * The inner loop scores a polyline by its exact convex hull deficit, which
     * for point sets is the support minimum without any grid. Each restart
     * keeps the polyline whose length is smallest after scaling about the
     * origin to zero deficit. The winner, scaled that way, is re-verified with
     * verify_certified under vcfg. Restarts run in order and ties go to the
     * lower restart index, so a config always gives the same result.
     */
    inline OptResult anneal_search(const SearchConfig& scfg, const VerifyConfig& vcfg = {})
    {
        scfg.validate();
        vcfg.validate();

        std::optional<detail::AnnealOutcome> best;
        std::size_t evaluations = 0;
        for (int r = 0; r < scfg.restarts; ++r)
        {
            auto out = detail::anneal_restart(scfg, r);
            evaluations += out.evaluations;
            if (!best || out.value < best->value)
                best = std::move(out);
        }

        auto v = best->vertices;
        const double def = detail::point_set_deficit(v);
        if (def > -1.0)
        {
            // A hair of slack keeps tight edges on the covered side after rounding.
            const double s = (1.0 + 1e-12) / (1.0 + def);
            for (auto& p : v)
                p = s * p;
        }

        OptResult res;
        res.path = make_polyline(v);
        const auto rep = verify_certified(*res.path, vcfg);
        for (const Point p : polyline_vertices(*res.path))
        {
            res.params.push_back(p.x);
            res.params.push_back(p.y);
        }
        res.value = res.path->length();
        res.deficit = rep.deficit;
        res.evaluations = evaluations + rep.evaluations;
        res.converged = rep.covered();
        return res;
    }
} // namespace lostpath
