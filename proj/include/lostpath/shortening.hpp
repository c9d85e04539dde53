#pragma once
/**
 * @file   shortening.hpp
 * @brief  Length-reducing rewrites of search paths.
 *
 * Every move either returns a strictly shorter path (by more than
 * kMinSaving) or declines and hands back the input unchanged. Moves only
 * throw on structural misuse, so a driver can compose them blindly.
 */

#include <lostpath/coverage.hpp>
#include <lostpath/geom.hpp>
#include <lostpath/golden.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lostpath
{
    /// Smallest saving a move may report.
    inline constexpr double kMinSaving = 1e-7;

    struct MoveOutcome
    {
        bool applied = false;
        PiecewisePath path;
        double length_saved = 0.0;
        std::string move_name;
        std::vector<std::size_t> location;
    };

    namespace detail
    {
        inline MoveOutcome declined(const PiecewisePath& c, std::string name)
        {
            return MoveOutcome{false, c, 0.0, std::move(name), {}};
        }

        inline MoveOutcome accepted(const PiecewisePath& c, PiecewisePath next, std::string name,
                                    std::vector<std::size_t> where)
        {
            const double saved = c.length() - next.length();
            return MoveOutcome{true, std::move(next), saved, std::move(name), std::move(where)};
        }

        inline bool certified_covered(const PiecewisePath& c, const VerifyConfig& cfg)
        {
            return certified_verdict(c, cfg) == Verdict::covered;
        }

        inline std::optional<PiecewisePath> try_build(std::vector<PathPiece> pieces)
        {
            if (pieces.empty())
                return std::nullopt;
            try
            {
                return PiecewisePath(std::move(pieces));
            }
            catch (const Error&)
            {
                return std::nullopt;
            }
        }

        inline void append(std::vector<PathPiece>& out, const std::vector<PathPiece>& more)
        {
            out.insert(out.end(), more.begin(), more.end());
        }
    } // namespace detail

    // ----------------------------------------------------------------- uncross

    /**
     * @brief Removes the first crossing of two non-adjacent segments.
     *
     * Segments AB and CD that cross are replaced by AC and BD and the part in
     * between is traversed backwards. The vertex set, and hence the convex
     * hull, is unchanged; the triangle inequality makes the path shorter.
     */
    inline MoveOutcome uncross(const PiecewisePath& c)
    {
        const std::string name = "uncross";
        if (!is_polyline(c) || c.size() < 3)
            return detail::declined(c, name);
        const auto v = polyline_vertices(c);
        const std::size_t segments = v.size() - 1;
        constexpr double interior = 1e-9;
        for (std::size_t i = 0; i + 2 < segments; ++i)
        {
            for (std::size_t j = i + 2; j < segments; ++j)
            {
                const auto hit = segment_crossing(v[i], v[i + 1], v[j], v[j + 1]);
                if (!hit)
                    continue;
                const bool inside_first = hit->t > interior && hit->t < 1.0 - interior;
                const bool inside_second = hit->u > interior && hit->u < 1.0 - interior;
                if (!inside_first && !inside_second)
                    continue;
                std::vector<Point> next(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(i + 1));
                for (std::size_t k = j; k > i; --k)
                    next.push_back(v[k]);
                next.insert(next.end(), v.begin() + static_cast<std::ptrdiff_t>(j + 1), v.end());
                auto candidate = make_polyline(next);
                if (c.length() - candidate.length() > kMinSaving)
                    return detail::accepted(c, std::move(candidate), name, {i, j});
            }
        }
        return detail::declined(c, name);
    }

    // ------------------------------------------------------ shortcut_repeating

    /**
     * @brief Replaces the subpath between arc lengths i and j by a straight segment.
     *
     * Applied only when the shortened path is still certified to meet every
     * tangent, i.e. the removed subpath was repeating.
     */
    inline MoveOutcome shortcut_repeating(const PiecewisePath& c, double i, double j, const VerifyConfig& cfg = {})
    {
        const std::string name = "shortcut_repeating";
        check_arc_length(c, i);
        check_arc_length(c, j);
        if (!(i < j))
            throw Error(ErrorCode::OutOfRange, "shortcut_repeating needs i < j");
        const Point p = path_point_at(c, i);
        const Point q = path_point_at(c, j);
        const double chord = distance(p, q);
        if ((j - i) - chord <= kMinSaving)
            return detail::declined(c, name);

        auto pieces = subpath_pieces(c, 0.0, i);
        if (chord > kDegeneracyTol)
        {
            const Point from = pieces.empty() ? p : end_point(pieces.back());
            pieces.emplace_back(Segment{from, q});
        }
        detail::append(pieces, subpath_pieces(c, j, c.length()));
        auto candidate = detail::try_build(std::move(pieces));
        if (!candidate || c.length() - candidate->length() <= kMinSaving)
            return detail::declined(c, name);
        if (!detail::certified_covered(*candidate, cfg))
            return detail::declined(c, name);
        return detail::accepted(c, std::move(*candidate), name, {c.locate(i), c.locate(j)});
    }

    namespace detail
    {
        /// Prefix up to arc length i followed by a segment of length t along the forward direction.
        inline std::optional<PiecewisePath> tail_candidate(const PiecewisePath& c, double i, double t)
        {
            auto pieces = subpath_pieces(c, 0.0, i);
            const Point p = pieces.empty() ? path_point_at(c, i) : end_point(pieces.back());
            const Point dir = path_direction_at(c, i);
            pieces.emplace_back(Segment{p, p + t * dir});
            return try_build(std::move(pieces));
        }

        /// Shortest covering tangent tail from arc length i, or nullopt.
        inline std::optional<double> shortest_covering_tail(const PiecewisePath& c, double i, const VerifyConfig& cfg)
        {
            const double remaining = c.length() - i;
            if (remaining <= kMinSaving)
                return std::nullopt;
            auto covers = [&](double t) {
                const auto cand = tail_candidate(c, i, t);
                return cand && certified_covered(*cand, cfg);
            };
            double hi = remaining;
            if (!covers(hi))
                return std::nullopt;
            double lo = 0.0;
            while (hi - lo > 1e-10)
            {
                const double mid = 0.5 * (lo + hi);
                (covers(mid) ? hi : lo) = mid;
            }
            return hi;
        }

        /**
         * Uncertified estimate of the shortest covering tail from arc length i:
         * where the prefix support is below 1 the tail end must reach the
         * tangent, t >= (1 - p.u) / (d.u). Used only to rank proposals.
         */
        inline std::optional<double> estimate_covering_tail(const PiecewisePath& c, double i, const VerifyConfig& cfg)
        {
            const auto pieces = subpath_pieces(c, 0.0, i);
            const Point p = pieces.empty() ? path_point_at(c, i) : end_point(pieces.back());
            const Point d = path_direction_at(c, i);
            bool feasible = true;
            auto required = [&](double theta) {
                const Point u = unit_direction(theta);
                double h = dot(p, u);
                for (const auto& piece : pieces)
                    h = std::max(h, piece_support(piece, Angle{theta}));
                if (h >= 1.0 - cfg.tol)
                    return 0.0;
                const double du = dot(d, u);
                if (du <= kDegeneracyTol)
                {
                    feasible = false;
                    return std::numeric_limits<double>::infinity();
                }
                return (1.0 - dot(p, u)) / du;
            };
            const int n = cfg.initial_grid;
            const double step = kTwoPi / n;
            double best = 0.0;
            double best_theta = 0.0;
            for (int k = 0; k < n && feasible; ++k)
            {
                const double r = required(step * k);
                if (r > best)
                {
                    best = r;
                    best_theta = step * k;
                }
            }
            if (!feasible)
                return std::nullopt;
            if (best > 0.0)
            {
                const auto peak = golden_minimize([&](double t) { return -required(t); }, best_theta - step,
                                                  best_theta + step, 1e-12);
                if (!feasible)
                    return std::nullopt;
                best = std::max(best, -peak.fx);
            }
            return best;
        }
    } // namespace detail

    /**
     * @brief Replaces the part after arc length i by the shortest segment that
     * continues straight ahead and keeps every tangent met.
     *
     * This is the tangent-segment proposal for the terminal subpath: the start
     * of the path never moves.
     */
    inline MoveOutcome shortcut_tail(const PiecewisePath& c, double i, const VerifyConfig& cfg = {})
    {
        const std::string name = "shortcut_tail";
        check_arc_length(c, i);
        const auto t = detail::shortest_covering_tail(c, i, cfg);
        if (!t || (c.length() - i) - *t <= kMinSaving)
            return detail::declined(c, name);
        auto candidate = detail::tail_candidate(c, i, *t);
        if (!candidate || c.length() - candidate->length() <= kMinSaving)
            return detail::declined(c, name);
        return detail::accepted(c, std::move(*candidate), name, {c.locate(i), c.size() - 1});
    }

    // ---------------------------------------------------------- chord_shortcut

    namespace detail
    {
        struct SpanOverlap
        {
            double lo; ///< absolute counter-clockwise angle where the overlap starts
            double sweep;
        };

        /// Largest common sub-arc of two arcs on the same circle.
        inline std::optional<SpanOverlap> arc_overlap(const Arc& a, const Arc& b)
        {
            const double la = arc_span_low(a);
            const double sa = arc_sweep(a);
            const double sb = arc_sweep(b);
            const double d = normalize_angle(arc_span_low(b) - la);
            std::optional<SpanOverlap> best;
            for (const double shift : {d, d - kTwoPi})
            {
                const double lo = std::max(0.0, shift);
                const double hi = std::min(sa, shift + sb);
                if (hi - lo > 0.0 && (!best || hi - lo > best->sweep))
                    best = SpanOverlap{la + lo, hi - lo};
            }
            return best;
        }
    } // namespace detail

    /**
     * @brief Where two arcs of the same circle cover a common sub-arc, the
     * later traversal of it is replaced by its chord.
     */
    inline MoveOutcome chord_shortcut(const PiecewisePath& c)
    {
        const std::string name = "chord_shortcut";
        for (std::size_t ia = 0; ia < c.size(); ++ia)
        {
            const auto* a = std::get_if<Arc>(&c.piece(ia));
            if (a == nullptr)
                continue;
            for (std::size_t ib = ia + 1; ib < c.size(); ++ib)
            {
                const auto* b = std::get_if<Arc>(&c.piece(ib));
                if (b == nullptr || distance(a->center, b->center) > kContinuityTol ||
                    std::abs(a->radius - b->radius) > kContinuityTol)
                    continue;
                const auto overlap = detail::arc_overlap(*a, *b);
                if (!overlap)
                    continue;
                const double r = b->radius;
                const double sigma = overlap->sweep;
                if (r * (sigma - 2.0 * std::sin(0.5 * sigma)) <= kMinSaving)
                    continue;

                // Overlap position in b's own traversal, measured in arc length.
                const double sb = arc_sweep(*b);
                double offset = normalize_angle(overlap->lo - arc_span_low(*b));
                if (offset + sigma > sb + 1e-9)
                    offset = std::max(0.0, offset - kTwoPi);
                const double s0 = r * (b->ccw ? offset : sb - offset - sigma);
                const double s1 = s0 + r * sigma;
                const PathPiece& piece_b = c.piece(ib);
                const double len_b = piece_length(piece_b);

                std::vector<PathPiece> pieces(c.pieces().begin(), c.pieces().begin() + static_cast<std::ptrdiff_t>(ib));
                if (s0 > 1e-11)
                    pieces.push_back(piece_slice(piece_b, 0.0, s0));
                const Point from = piece_point_at(piece_b, s0);
                const Point to = piece_point_at(piece_b, s1);
                if (distance(from, to) > kDegeneracyTol)
                    pieces.emplace_back(Segment{from, to});
                if (len_b - s1 > 1e-11)
                    pieces.push_back(piece_slice(piece_b, s1, len_b));
                pieces.insert(pieces.end(), c.pieces().begin() + static_cast<std::ptrdiff_t>(ib + 1), c.pieces().end());
                auto candidate = detail::try_build(std::move(pieces));
                if (candidate && c.length() - candidate->length() > kMinSaving)
                    return detail::accepted(c, std::move(*candidate), name, {ia, ib});
            }
        }
        return detail::declined(c, name);
    }

    // -------------------------------------------------------- reflect_junction

    /**
     * @brief Moves the junction Z of segments XZ, ZY along the line d to the
     * point where both segments make equal angles with d.
     *
     * Without an explicit line, d is the tangent of the unit circle at Z, which
     * requires |Z| = 1. The move is refused if it would lose coverage.
     */
    inline MoveOutcome reflect_junction(const PiecewisePath& c, std::size_t k, std::optional<Line> constraint = std::nullopt,
                                        const VerifyConfig& cfg = {})
    {
        const std::string name = "reflect_junction";
        if (k + 1 >= c.size() || !is_segment(c.piece(k)) || !is_segment(c.piece(k + 1)))
            throw Error(ErrorCode::NotAJunction, "pieces " + std::to_string(k) + " and " + std::to_string(k + 1) +
                                                     " are not two segments");
        const Point x = std::get<Segment>(c.piece(k)).from;
        const Point z = std::get<Segment>(c.piece(k)).to;
        const Point y = std::get<Segment>(c.piece(k + 1)).to;

        Line d;
        if (constraint)
        {
            d = *constraint;
            if (norm(d.direction) == 0.0)
                throw Error(ErrorCode::InvalidArgument, "constraint line needs a direction");
            if (std::abs(d.side(z)) > kContinuityTol * norm(d.direction))
                throw Error(ErrorCode::InvalidArgument, "constraint line must pass through the junction");
        }
        else
        {
            if (std::abs(norm(z) - 1.0) > kContinuityTol)
                throw Error(ErrorCode::NotAJunction, "junction is off the circle and no constraint line was given");
            d = Line{z, perp(z)};
        }

        const double sx = d.side(x);
        const double sy = d.side(y);
        const Point mirror = (sx > 0.0) == (sy > 0.0) ? d.reflect(x) : x;
        const auto t = d.intersect_param(mirror, y);
        if (!t)
            return detail::declined(c, name);
        const Point best = mirror + *t * (y - mirror);
        const double before = distance(x, z) + distance(z, y);
        const double after = distance(x, best) + distance(best, y);
        if (before - after <= kMinSaving)
            return detail::declined(c, name);

        std::vector<PathPiece> pieces(c.pieces().begin(), c.pieces().begin() + static_cast<std::ptrdiff_t>(k));
        if (distance(x, best) > kDegeneracyTol)
            pieces.emplace_back(Segment{x, best});
        if (distance(best, y) > kDegeneracyTol)
            pieces.emplace_back(Segment{best, y});
        pieces.insert(pieces.end(), c.pieces().begin() + static_cast<std::ptrdiff_t>(k + 2), c.pieces().end());
        auto candidate = detail::try_build(std::move(pieces));
        if (!candidate)
            return detail::declined(c, name);
        if (detail::certified_covered(c, cfg) && !detail::certified_covered(*candidate, cfg))
            return detail::declined(c, name);
        return detail::accepted(c, std::move(*candidate), name, {k, k + 1});
    }

    // ------------------------------------------------------------ remove_loops

    /**
     * @brief Cuts out a closed sub-loop (repeated vertex or segment crossing)
     * when the remaining path still meets every tangent.
     */
    inline MoveOutcome remove_loops(const PiecewisePath& c, const VerifyConfig& cfg = {})
    {
        const std::string name = "remove_loops";
        struct Loop
        {
            double from;
            double to;
            std::size_t first;
            std::size_t last;
        };
        std::vector<Loop> loops;
        const std::size_t n = c.size();
        for (std::size_t a = 0; a <= n; ++a)
        {
            const Point pa = a < n ? start_point(c.piece(a)) : c.end();
            for (std::size_t b = a + 1; b <= n; ++b)
            {
                const Point pb = b < n ? start_point(c.piece(b)) : c.end();
                if (distance(pa, pb) <= kContinuityTol)
                    loops.push_back({c.offset(a), c.offset(b), a, b - 1});
            }
        }
        for (std::size_t a = 0; a < n; ++a)
        {
            const auto* sa = std::get_if<Segment>(&c.piece(a));
            if (sa == nullptr)
                continue;
            for (std::size_t b = a + 2; b < n; ++b)
            {
                const auto* sb = std::get_if<Segment>(&c.piece(b));
                if (sb == nullptr)
                    continue;
                const auto hit = segment_crossing(sa->from, sa->to, sb->from, sb->to);
                if (!hit)
                    continue;
                const double from = c.offset(a) + hit->t * distance(sa->from, sa->to);
                const double to = c.offset(b) + hit->u * distance(sb->from, sb->to);
                loops.push_back({from, to, a, b});
            }
        }
        std::stable_sort(loops.begin(), loops.end(), [](const Loop& l, const Loop& r) {
            if (l.from != r.from)
                return l.from < r.from;
            return l.to - l.from > r.to - r.from;
        });

        for (const Loop& loop : loops)
        {
            if (loop.to - loop.from <= kMinSaving)
                continue;
            auto pieces = subpath_pieces(c, 0.0, loop.from);
            auto rest = subpath_pieces(c, loop.to, c.length());
            if (!pieces.empty() && !rest.empty())
            {
                // Splice exactly at the crossing point.
                const Point join = end_point(pieces.back());
                if (auto* s = std::get_if<Segment>(&rest.front()))
                {
                    if (distance(s->from, join) <= kContinuityTol && distance(join, s->to) > kDegeneracyTol)
                        s->from = join;
                }
            }
            detail::append(pieces, rest);
            auto candidate = detail::try_build(std::move(pieces));
            if (!candidate || c.length() - candidate->length() <= kMinSaving)
                continue;
            if (!detail::certified_covered(*candidate, cfg))
                continue;
            return detail::accepted(c, std::move(*candidate), name, {loop.first, loop.last});
        }
        return detail::declined(c, name);
    }

    // ------------------------------------------------------------ greedy driver

    struct ShortenConfig
    {
        /// Arc-length grid for shortcut_repeating pairs (piece boundaries are always added).
        int pair_grid = 24;
        /// Arc-length grid for tail proposals; the best cell is refined by golden section.
        int tail_grid = 48;
        int max_iterations = 500;
    };

    struct ShortenResult
    {
        PiecewisePath path;
        std::vector<MoveOutcome> moves;
        /// True when a coverage check came back inconclusive; path is the last safe one.
        bool aborted = false;
    };

    namespace detail
    {
        inline std::optional<MoveOutcome> best_pair_shortcut(const PiecewisePath& c, const VerifyConfig& cfg, int grid)
        {
            std::vector<double> marks;
            for (int k = 0; k <= grid; ++k)
                marks.push_back(c.length() * k / grid);
            for (std::size_t i = 0; i <= c.size(); ++i)
                marks.push_back(c.offset(i));
            std::sort(marks.begin(), marks.end());
            marks.erase(std::unique(marks.begin(), marks.end(),
                                    [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                        marks.end());

            struct Pair
            {
                double i;
                double j;
                double gain;
            };
            std::vector<Pair> pairs;
            for (std::size_t a = 0; a < marks.size(); ++a)
            {
                const Point p = path_point_at(c, marks[a]);
                for (std::size_t b = a + 1; b < marks.size(); ++b)
                {
                    const double gain = (marks[b] - marks[a]) - distance(p, path_point_at(c, marks[b]));
                    if (gain > kMinSaving)
                        pairs.push_back({marks[a], marks[b], gain});
                }
            }
            std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& l, const Pair& r) { return l.gain > r.gain; });
            for (const Pair& pr : pairs)
            {
                auto out = shortcut_repeating(c, pr.i, std::min(pr.j, c.length()), cfg);
                if (out.applied)
                    return out;
            }
            return std::nullopt;
        }

        inline std::optional<MoveOutcome> best_tail_shortcut(const PiecewisePath& c, const VerifyConfig& cfg, int grid)
        {
            auto saving = [&](double i) {
                const auto t = estimate_covering_tail(c, i, cfg);
                return t ? (c.length() - i) - *t : 0.0;
            };
            const double step = c.length() / grid;
            double best_i = 0.0;
            double best_gain = 0.0;
            for (int k = 1; k < grid; ++k)
            {
                const double i = step * k;
                const double gain = saving(i);
                if (gain > best_gain)
                {
                    best_gain = gain;
                    best_i = i;
                }
            }
            if (best_gain <= kMinSaving)
                return std::nullopt;
            const double lo = std::max(0.0, best_i - step);
            const double hi = std::min(c.length(), best_i + step);
            const auto refined = golden_minimize([&](double i) { return -saving(i); }, lo, hi, 1e-7);
            const double i = -refined.fx > best_gain ? refined.x : best_i;
            auto out = shortcut_tail(c, i, cfg);
            if (out.applied)
                return out;
            return std::nullopt;
        }
    } // namespace detail

    /**
     * @brief Applies moves until none saves more than kMinSaving.
     *
     * Order per round: uncross, remove_loops, chord_shortcut, reflect_junction
     * at junctions on the circle, shortcut_repeating over an arc-length grid,
     * then the tail proposal. The first move that succeeds and keeps the path
     * certified covered is taken and the round restarts.
     */
    inline ShortenResult greedy_shorten(const PiecewisePath& c, const VerifyConfig& cfg = {}, const ShortenConfig& scfg = {})
    {
        const auto initial = verify_certified(c, cfg);
        if (!initial.covered())
            throw Error(ErrorCode::InvalidArgument, "greedy_shorten needs a covered path");

        ShortenResult result{c, {}, false};
        for (int iter = 0; iter < scfg.max_iterations; ++iter)
        {
            const PiecewisePath& cur = result.path;
            std::optional<MoveOutcome> chosen;
            auto consider = [&](MoveOutcome out) {
                if (chosen || !out.applied || out.length_saved <= kMinSaving)
                    return;
                const auto rep = verify_certified(out.path, cfg);
                if (rep.verdict == Verdict::inconclusive)
                {
                    result.aborted = true;
                    return;
                }
                if (rep.covered())
                    chosen = std::move(out);
            };

            consider(uncross(cur));
            if (!chosen && !result.aborted)
                consider(remove_loops(cur, cfg));
            if (!chosen && !result.aborted)
                consider(chord_shortcut(cur));
            for (std::size_t k = 0; !chosen && !result.aborted && k + 1 < cur.size(); ++k)
            {
                if (!is_segment(cur.piece(k)) || !is_segment(cur.piece(k + 1)))
                    continue;
                if (std::abs(norm(end_point(cur.piece(k))) - 1.0) > kContinuityTol)
                    continue;
                consider(reflect_junction(cur, k, std::nullopt, cfg));
            }
            if (!chosen && !result.aborted)
            {
                if (auto out = detail::best_pair_shortcut(cur, cfg, scfg.pair_grid))
                    consider(std::move(*out));
            }
            if (!chosen && !result.aborted)
            {
                if (auto out = detail::best_tail_shortcut(cur, cfg, scfg.tail_grid))
                    consider(std::move(*out));
            }
            if (result.aborted || !chosen)
                break;
            result.path = chosen->path;
            result.moves.push_back(std::move(*chosen));
        }
        return result;
    }
} // namespace lostpath
