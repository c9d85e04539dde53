#pragma once
/**
 * @file   geom.hpp
 * @brief  Points, tangents of the unit circle, path pieces and piecewise paths.
 *
 * Lengths are measured in circle radii and angles in radians. Paths are
 * immutable values: every constructor validates its input and throws
 * lostpath::Error instead of repairing it.
 */

#include <lostpath/error.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace lostpath
{
    inline constexpr double kPi = std::numbers::pi;
    inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

    /// Maximum gap between consecutive pieces of a path.
    inline constexpr double kContinuityTol = 1e-9;
    /// Below this a piece length or an exterior distance counts as zero.
    inline constexpr double kDegeneracyTol = 1e-12;

    // ------------------------------------------------------------------ Point

    struct Point
    {
        double x = 0.0;
        double y = 0.0;

        constexpr Point() = default;

        Point(double px, double py) : x(px), y(py)
        {
            if (!std::isfinite(px) || !std::isfinite(py))
            {
                throw Error(ErrorCode::InvalidArgument, "point coordinates must be finite");
            }
        }

        friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
        friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
        friend Point operator-(Point a) { return {-a.x, -a.y}; }
        friend Point operator*(double k, Point a) { return {k * a.x, k * a.y}; }
        friend Point operator*(Point a, double k) { return {k * a.x, k * a.y}; }
        friend bool operator==(const Point&, const Point&) = default;
    };

    inline double dot(Point a, Point b) noexcept { return a.x * b.x + a.y * b.y; }
    inline double cross(Point a, Point b) noexcept { return a.x * b.y - a.y * b.x; }
    inline double norm(Point a) noexcept { return std::hypot(a.x, a.y); }
    inline double distance(Point a, Point b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }
    /// Counter-clockwise quarter turn.
    inline Point perp(Point a) { return {-a.y, a.x}; }
    inline Point lerp(Point a, Point b, double t) { return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}; }

    inline Point rotate(Point p, double phi)
    {
        const double c = std::cos(phi);
        const double s = std::sin(phi);
        return {c * p.x - s * p.y, s * p.x + c * p.y};
    }

    // ------------------------------------------------------------------ Angle

    /// Wraps into [0, 2pi).
    inline double normalize_angle(double radians) noexcept
    {
        double r = std::fmod(radians, kTwoPi);
        if (r < 0.0)
            r += kTwoPi;
        if (r >= kTwoPi)
            r = 0.0;
        return r;
    }

    struct Angle
    {
        double radians = 0.0;

        constexpr Angle() = default;
        constexpr explicit Angle(double r) : radians(r) {}

        [[nodiscard]] Angle normalized() const noexcept { return Angle{normalize_angle(radians)}; }
    };

    /// (cos theta, sin theta).
    inline Point unit_direction(Angle theta)
    {
        if (!std::isfinite(theta.radians))
            throw Error(ErrorCode::InvalidArgument, "angle must be finite");
        return {std::cos(theta.radians), std::sin(theta.radians)};
    }

    inline Point unit_direction(double radians) { return unit_direction(Angle{radians}); }

    // ---------------------------------------------------------------- Tangent

    /// Tangent line of the unit circle {p : p . u(theta) = 1}.
    struct Tangent
    {
        Angle theta;

        [[nodiscard]] Point normal() const { return unit_direction(theta); }
        [[nodiscard]] Point touch_point() const { return normal(); }
        /// Positive on the far side of the line, negative on the circle's side.
        [[nodiscard]] double signed_distance(Point p) const { return dot(p, normal()) - 1.0; }
    };

    /**
     * @brief Touch points of the two tangents through an exterior point X.
     *
     * Returns (P+, P-) with p . X = 1 and |p| = 1. Seen from X the circle lies
     * to the left of the line through P+.
     */
    inline std::pair<Point, Point> tangent_touch_points(Point X)
    {
        const double d2 = dot(X, X);
        if (std::sqrt(d2) <= 1.0 + kDegeneracyTol)
            throw Error(ErrorCode::InteriorPoint, "tangent touch points need |X| > 1");
        const Point foot = (1.0 / d2) * X;
        const double h = std::sqrt(d2 - 1.0) / d2;
        const Point off = h * perp(X);
        return {foot + off, foot - off};
    }

    // ------------------------------------------------------------------- Line

    /// Infinite line through `origin` along `direction` (need not be unit).
    struct Line
    {
        Point origin;
        Point direction;

        [[nodiscard]] Point unit() const { return (1.0 / norm(direction)) * direction; }

        [[nodiscard]] double side(Point p) const { return cross(direction, p - origin); }

        [[nodiscard]] Point reflect(Point p) const
        {
            const Point u = unit();
            const Point v = p - origin;
            const Point along = dot(v, u) * u;
            return origin + along - (v - along);
        }

        /// Intersection parameter t such that a + t (b - a) lies on the line.
        [[nodiscard]] std::optional<double> intersect_param(Point a, Point b) const
        {
            const double denom = cross(direction, b - a);
            if (std::abs(denom) < kDegeneracyTol * norm(direction) * std::max(1.0, distance(a, b)))
                return std::nullopt;
            return -cross(direction, a - origin) / denom;
        }
    };

    struct SegmentCrossing
    {
        double t; ///< parameter along the first segment
        double u; ///< parameter along the second segment
    };

    /// Intersection of segments [a,b] and [c,d]; nullopt when disjoint or parallel.
    inline std::optional<SegmentCrossing> segment_crossing(Point a, Point b, Point c, Point d)
    {
        const Point r = b - a;
        const Point s = d - c;
        const double denom = cross(r, s);
        const double scale = norm(r) * norm(s);
        if (scale == 0.0 || std::abs(denom) <= 1e-14 * scale)
            return std::nullopt;
        const Point ca = c - a;
        const double t = cross(ca, s) / denom;
        const double u = cross(ca, r) / denom;
        constexpr double eps = 1e-12;
        if (t < -eps || t > 1.0 + eps || u < -eps || u > 1.0 + eps)
            return std::nullopt;
        return SegmentCrossing{std::clamp(t, 0.0, 1.0), std::clamp(u, 0.0, 1.0)};
    }

    // ----------------------------------------------------------------- Pieces

    struct Segment
    {
        Point from;
        Point to;
        friend bool operator==(const Segment&, const Segment&) = default;
    };

    /**
     * @brief Circular arc traversed from start_angle to end_angle.
     *
     * Orientation is explicit so sweeps beyond pi are unambiguous. The sweep is
     * the raw angular difference in the travel direction, wrapped into (0, 2pi].
     */
    struct Arc
    {
        Point center;
        double radius = 1.0;
        double start_angle = 0.0;
        double end_angle = 0.0;
        bool ccw = true;
        friend bool operator==(const Arc&, const Arc&) = default;
    };

    using PathPiece = std::variant<Segment, Arc>;

    inline bool is_segment(const PathPiece& p) noexcept { return std::holds_alternative<Segment>(p); }
    inline bool is_arc(const PathPiece& p) noexcept { return std::holds_alternative<Arc>(p); }

    inline double arc_sweep(const Arc& a)
    {
        const double raw = a.ccw ? a.end_angle - a.start_angle : a.start_angle - a.end_angle;
        if (raw > 0.0 && raw <= kTwoPi)
            return raw;
        if (raw > kTwoPi && raw <= kTwoPi + kDegeneracyTol)
            return kTwoPi;
        const double wrapped = normalize_angle(raw);
        return wrapped;
    }

    /// Start of the covered span in counter-clockwise angle space; span is [lo, lo + sweep].
    inline double arc_span_low(const Arc& a) { return a.ccw ? a.start_angle : a.start_angle - arc_sweep(a); }

    inline bool arc_span_contains(const Arc& a, double theta)
    {
        const double sweep = arc_sweep(a);
        if (sweep >= kTwoPi)
            return true;
        return normalize_angle(theta - arc_span_low(a)) <= sweep;
    }

    inline Point arc_point_at_angle(const Arc& a, double phi) { return a.center + a.radius * unit_direction(phi); }

    inline Point start_point(const PathPiece& p)
    {
        if (const auto* s = std::get_if<Segment>(&p))
            return s->from;
        const auto& a = std::get<Arc>(p);
        return arc_point_at_angle(a, a.start_angle);
    }

    inline Point end_point(const PathPiece& p)
    {
        if (const auto* s = std::get_if<Segment>(&p))
            return s->to;
        const auto& a = std::get<Arc>(p);
        const double sweep = arc_sweep(a);
        return arc_point_at_angle(a, a.start_angle + (a.ccw ? sweep : -sweep));
    }

    inline void validate_piece(const PathPiece& p)
    {
        if (const auto* s = std::get_if<Segment>(&p))
        {
            if (distance(s->from, s->to) <= kDegeneracyTol)
                throw Error(ErrorCode::DegeneratePiece, "segment has zero length");
            return;
        }
        const auto& a = std::get<Arc>(p);
        if (!std::isfinite(a.radius) || !std::isfinite(a.start_angle) || !std::isfinite(a.end_angle))
            throw Error(ErrorCode::InvalidArgument, "arc fields must be finite");
        if (a.radius <= 0.0)
            throw Error(ErrorCode::DegeneratePiece, "arc radius must be positive");
        const double sweep = arc_sweep(a);
        if (sweep <= 0.0 || a.radius * sweep <= kDegeneracyTol)
            throw Error(ErrorCode::DegeneratePiece, "arc has zero sweep");
    }

    inline double piece_length(const PathPiece& p)
    {
        validate_piece(p);
        if (const auto* s = std::get_if<Segment>(&p))
            return distance(s->from, s->to);
        const auto& a = std::get<Arc>(p);
        return a.radius * arc_sweep(a);
    }

    /// Point at arc length s (clamped to the piece) from the piece start.
    inline Point piece_point_at(const PathPiece& p, double s)
    {
        const double len = piece_length(p);
        const double t = std::clamp(s / len, 0.0, 1.0);
        if (const auto* seg = std::get_if<Segment>(&p))
            return lerp(seg->from, seg->to, t);
        const auto& a = std::get<Arc>(p);
        const double sweep = arc_sweep(a);
        return arc_point_at_angle(a, a.start_angle + (a.ccw ? 1.0 : -1.0) * t * sweep);
    }

    /// Unit forward direction at arc length s.
    inline Point piece_direction_at(const PathPiece& p, double s)
    {
        if (const auto* seg = std::get_if<Segment>(&p))
            return (1.0 / distance(seg->from, seg->to)) * (seg->to - seg->from);
        const auto& a = std::get<Arc>(p);
        const double len = piece_length(p);
        const double t = std::clamp(s / len, 0.0, 1.0);
        const double sign = a.ccw ? 1.0 : -1.0;
        const double phi = a.start_angle + sign * t * arc_sweep(a);
        return sign * perp(unit_direction(phi));
    }

    /// Portion of the piece between arc lengths s0 < s1, measured from its start.
    inline PathPiece piece_slice(const PathPiece& p, double s0, double s1)
    {
        if (const auto* seg = std::get_if<Segment>(&p))
        {
            const double len = distance(seg->from, seg->to);
            return Segment{lerp(seg->from, seg->to, std::clamp(s0 / len, 0.0, 1.0)),
                           lerp(seg->from, seg->to, std::clamp(s1 / len, 0.0, 1.0))};
        }
        Arc a = std::get<Arc>(p);
        const double sign = a.ccw ? 1.0 : -1.0;
        const double base = a.start_angle;
        const double len = a.radius * arc_sweep(a);
        a.start_angle = base + sign * std::clamp(s0, 0.0, len) / a.radius;
        a.end_angle = base + sign * std::clamp(s1, 0.0, len) / a.radius;
        return a;
    }

    inline PathPiece piece_reversed(const PathPiece& p)
    {
        if (const auto* seg = std::get_if<Segment>(&p))
            return Segment{seg->to, seg->from};
        Arc a = std::get<Arc>(p);
        const double sweep = arc_sweep(a);
        const double end = a.start_angle + (a.ccw ? sweep : -sweep);
        return Arc{a.center, a.radius, end, a.start_angle, !a.ccw};
    }

    inline PathPiece piece_rotated(const PathPiece& p, double phi)
    {
        if (const auto* seg = std::get_if<Segment>(&p))
            return Segment{rotate(seg->from, phi), rotate(seg->to, phi)};
        Arc a = std::get<Arc>(p);
        a.center = rotate(a.center, phi);
        a.start_angle += phi;
        a.end_angle += phi;
        return a;
    }

    /// Uniform scaling about the origin.
    inline PathPiece piece_scaled(const PathPiece& p, double k)
    {
        if (const auto* seg = std::get_if<Segment>(&p))
            return Segment{k * seg->from, k * seg->to};
        Arc a = std::get<Arc>(p);
        a.center = k * a.center;
        a.radius *= k;
        return a;
    }

    // ------------------------------------------------------- Support function

    /// max over points q of the piece of q . u(theta).
    inline double piece_support(const PathPiece& p, Angle theta)
    {
        const Point u = unit_direction(theta);
        if (const auto* seg = std::get_if<Segment>(&p))
            return std::max(dot(seg->from, u), dot(seg->to, u));
        const auto& a = std::get<Arc>(p);
        const double base = dot(a.center, u);
        if (arc_span_contains(a, theta.radians))
            return base + a.radius;
        const double sweep = arc_sweep(a);
        const double phi1 = a.start_angle;
        const double phi2 = a.start_angle + (a.ccw ? sweep : -sweep);
        return base + a.radius * std::max(std::cos(phi1 - theta.radians), std::cos(phi2 - theta.radians));
    }

    /// Upper bound on sup |q| over the piece; Lipschitz constant of theta -> piece_support.
    inline double piece_lipschitz_bound(const PathPiece& p)
    {
        if (const auto* seg = std::get_if<Segment>(&p))
            return std::max(norm(seg->from), norm(seg->to));
        const auto& a = std::get<Arc>(p);
        return norm(a.center) + a.radius;
    }

    namespace detail
    {
        /// Exact min of q . u(theta) over theta in [lo, hi], hi - lo < pi.
        inline double min_projection(Point q, double lo, double hi)
        {
            const double n = norm(q);
            if (n == 0.0)
                return 0.0;
            const double antipode = std::atan2(q.y, q.x) + kPi;
            if (normalize_angle(antipode - lo) <= hi - lo)
                return -n;
            return std::min(dot(q, unit_direction(lo)), dot(q, unit_direction(hi)));
        }
    } // namespace detail

    /**
     * @brief Rigorous lower bound of min over theta in [lo, hi] of piece_support.
     *
     * Uses fixed points of the piece, whose projections have an exactly
     * computable minimum on the interval. For an arc whose span contains the
     * whole interval the bound is exact.
     */
    inline double piece_support_lower_bound(const PathPiece& p, double lo, double hi)
    {
        if (const auto* seg = std::get_if<Segment>(&p))
            return std::max(detail::min_projection(seg->from, lo, hi), detail::min_projection(seg->to, lo, hi));
        const auto& a = std::get<Arc>(p);
        double best = std::max(detail::min_projection(start_point(p), lo, hi),
                               detail::min_projection(end_point(p), lo, hi));
        const double mid = 0.5 * (lo + hi);
        if (arc_span_contains(a, mid))
            best = std::max(best, detail::min_projection(arc_point_at_angle(a, mid), lo, hi));
        const double sweep = arc_sweep(a);
        const double offset = normalize_angle(lo - arc_span_low(a));
        if (sweep >= kTwoPi || offset + (hi - lo) <= sweep)
            best = std::max(best, a.radius + detail::min_projection(a.center, lo, hi));
        return best;
    }

    // ----------------------------------------------------------- Piecewise path

    /// Ordered chain of pieces; consecutive pieces meet within kContinuityTol.
    class PiecewisePath
    {
    public:
        explicit PiecewisePath(std::vector<PathPiece> pieces) : pieces_(std::move(pieces))
        {
            if (pieces_.empty())
                throw Error(ErrorCode::InvalidArgument, "path needs at least one piece");
            cumulative_.reserve(pieces_.size() + 1);
            cumulative_.push_back(0.0);
            for (std::size_t i = 0; i < pieces_.size(); ++i)
            {
                const double len = piece_length(pieces_[i]);
                if (i > 0)
                {
                    const double gap = distance(end_point(pieces_[i - 1]), start_point(pieces_[i]));
                    if (!(gap <= kContinuityTol))
                    {
                        const Point a = end_point(pieces_[i - 1]);
                        const Point b = start_point(pieces_[i]);
                        char buf[256];
                        std::snprintf(buf, sizeof buf,
                                      "piece %zu starts at (%.17g, %.17g) but piece %zu ends at (%.17g, %.17g), gap %.3g",
                                      i, b.x, b.y, i - 1, a.x, a.y, gap);
                        throw Error(ErrorCode::BrokenChain, buf);
                    }
                }
                cumulative_.push_back(cumulative_.back() + len);
            }
        }

        [[nodiscard]] std::span<const PathPiece> pieces() const noexcept { return pieces_; }
        [[nodiscard]] const PathPiece& piece(std::size_t i) const { return pieces_.at(i); }
        [[nodiscard]] std::size_t size() const noexcept { return pieces_.size(); }
        [[nodiscard]] double length() const noexcept { return cumulative_.back(); }
        /// Arc length at which piece i starts; offset(size()) is the total length.
        [[nodiscard]] double offset(std::size_t i) const { return cumulative_.at(i); }
        [[nodiscard]] Point start() const { return start_point(pieces_.front()); }
        [[nodiscard]] Point end() const { return end_point(pieces_.back()); }

        /// Index of the piece containing arc length s (last piece for s == length()).
        [[nodiscard]] std::size_t locate(double s) const
        {
            const auto it = std::upper_bound(cumulative_.begin() + 1, cumulative_.end(), s);
            const auto idx = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
            return std::min(idx, pieces_.size() - 1);
        }

    private:
        std::vector<PathPiece> pieces_;
        std::vector<double> cumulative_;
    };

    inline double path_length(const PiecewisePath& c) { return c.length(); }

    inline void check_arc_length(const PiecewisePath& c, double s)
    {
        if (!std::isfinite(s) || s < -kDegeneracyTol || s > c.length() + kDegeneracyTol * std::max(1.0, c.length()))
            throw Error(ErrorCode::OutOfRange, "arc length " + std::to_string(s) + " outside [0, " +
                                                   std::to_string(c.length()) + "]");
    }

    /// Point reached after travelling arc length s from the start.
    inline Point path_point_at(const PiecewisePath& c, double s)
    {
        check_arc_length(c, s);
        const std::size_t i = c.locate(s);
        return piece_point_at(c.piece(i), s - c.offset(i));
    }

    inline Point path_direction_at(const PiecewisePath& c, double s)
    {
        check_arc_length(c, s);
        const std::size_t i = c.locate(s);
        return piece_direction_at(c.piece(i), s - c.offset(i));
    }

    /**
     * @brief Pieces covering arc lengths [s0, s1]; slivers shorter than the
     * degeneracy tolerance are dropped, so the result can be empty.
     */
    inline std::vector<PathPiece> subpath_pieces(const PiecewisePath& c, double s0, double s1)
    {
        std::vector<PathPiece> out;
        s0 = std::clamp(s0, 0.0, c.length());
        s1 = std::clamp(s1, 0.0, c.length());
        for (std::size_t i = 0; i < c.size(); ++i)
        {
            const double a = std::max(s0, c.offset(i));
            const double b = std::min(s1, c.offset(i + 1));
            if (b - a <= 1e-11)
                continue;
            out.push_back(piece_slice(c.piece(i), a - c.offset(i), b - c.offset(i)));
        }
        return out;
    }

    inline bool is_polyline(const PiecewisePath& c)
    {
        return std::all_of(c.pieces().begin(), c.pieces().end(), is_segment);
    }

    /// Vertices of a path made of segments only.
    inline std::vector<Point> polyline_vertices(const PiecewisePath& c)
    {
        std::vector<Point> v;
        v.reserve(c.size() + 1);
        v.push_back(c.start());
        for (const auto& p : c.pieces())
            v.push_back(end_point(p));
        return v;
    }

    /// Polyline through the given vertices; consecutive duplicates are skipped.
    inline PiecewisePath make_polyline(std::span<const Point> vertices)
    {
        std::vector<PathPiece> pieces;
        for (std::size_t i = 1; i < vertices.size(); ++i)
        {
            if (distance(vertices[i - 1], vertices[i]) > kDegeneracyTol)
                pieces.emplace_back(Segment{vertices[i - 1], vertices[i]});
        }
        return PiecewisePath(std::move(pieces));
    }

    inline PiecewisePath concatenate(const PiecewisePath& a, const PiecewisePath& b)
    {
        std::vector<PathPiece> pieces(a.pieces().begin(), a.pieces().end());
        pieces.insert(pieces.end(), b.pieces().begin(), b.pieces().end());
        return PiecewisePath(std::move(pieces));
    }

    inline PiecewisePath rotated(const PiecewisePath& c, double phi)
    {
        std::vector<PathPiece> pieces;
        pieces.reserve(c.size());
        for (const auto& p : c.pieces())
            pieces.push_back(piece_rotated(p, phi));
        return PiecewisePath(std::move(pieces));
    }

    inline PiecewisePath scaled(const PiecewisePath& c, double k)
    {
        std::vector<PathPiece> pieces;
        pieces.reserve(c.size());
        for (const auto& p : c.pieces())
            pieces.push_back(piece_scaled(p, k));
        return PiecewisePath(std::move(pieces));
    }

    inline PiecewisePath reversed(const PiecewisePath& c)
    {
        std::vector<PathPiece> pieces;
        pieces.reserve(c.size());
        for (auto it = c.pieces().rbegin(); it != c.pieces().rend(); ++it)
            pieces.push_back(piece_reversed(*it));
        return PiecewisePath(std::move(pieces));
    }
} // namespace lostpath
