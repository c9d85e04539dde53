#include "test_support.hpp"

#include <lostpath/candidates.hpp>
#include <lostpath/geom.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace lostpath;

TEST(UnitDirection, CardinalAndSixthTurn)
{
    const Point e = unit_direction(Angle{0.0});
    EXPECT_EQ(e.x, 1.0);
    EXPECT_EQ(e.y, 0.0);
    const Point n = unit_direction(Angle{kPi / 2});
    EXPECT_NEAR(n.x, 0.0, 1e-16);
    EXPECT_EQ(n.y, 1.0);
    // cos(pi/6) = sqrt(3)/2 evaluated in long double.
    const Point s = unit_direction(Angle{kPi / 6});
    EXPECT_NEAR(s.x, static_cast<double>(std::sqrt(3.0L) / 2.0L), 1e-15);
    EXPECT_NEAR(s.y, 0.5, 1e-15);
    EXPECT_NEAR(norm(s), 1.0, 1e-15);
}

TEST(PointTest, RejectsNonFinite)
{
    EXPECT_THROW(Point(std::numeric_limits<double>::quiet_NaN(), 0.0), Error);
    EXPECT_THROW(Point(0.0, std::numeric_limits<double>::infinity()), Error);
}

TEST(AngleTest, NormalizationPreservesRaw)
{
    const Angle a{-kPi / 2};
    EXPECT_DOUBLE_EQ(a.radians, -kPi / 2);
    EXPECT_NEAR(a.normalized().radians, 1.5 * kPi, 1e-15);
    EXPECT_EQ(normalize_angle(kTwoPi), 0.0);
}

TEST(TangentTouchPoints, AlgebraicSolutions)
{
    // p . (2,0) = 1 gives p.x = 1/2; |p| = 1 gives p.y = +-sqrt(3)/2.
    auto [plus, minus] = tangent_touch_points({2.0, 0.0});
    const double root = std::sqrt(0.75);
    EXPECT_NEAR(plus.x, 0.5, 1e-15);
    EXPECT_NEAR(plus.y, root, 1e-15);
    EXPECT_NEAR(minus.x, 0.5, 1e-15);
    EXPECT_NEAR(minus.y, -root, 1e-15);

    // p . (0,3) = 1 gives p.y = 1/3; p.x = +-sqrt(8)/3.
    std::tie(plus, minus) = tangent_touch_points({0.0, 3.0});
    EXPECT_NEAR(plus.x, -std::sqrt(8.0) / 3.0, 1e-15);
    EXPECT_NEAR(plus.y, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(minus.x, std::sqrt(8.0) / 3.0, 1e-15);
    EXPECT_NEAR(minus.y, 1.0 / 3.0, 1e-15);
}

TEST(TangentTouchPoints, InteriorAndBoundaryRejected)
{
    EXPECT_THROW(tangent_touch_points({0.5, 0.0}), Error);
    EXPECT_THROW(tangent_touch_points({1.0, 0.0}), Error);
    EXPECT_THROW(tangent_touch_points({1.0 + 1e-13, 0.0}), Error);
    try
    {
        tangent_touch_points({0.0, 0.0});
        FAIL();
    }
    catch (const Error& e)
    {
        EXPECT_EQ(e.code(), ErrorCode::InteriorPoint);
    }
}

TEST(TangentTouchPoints, PropertyRandomExterior)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> radius(1.001, 10.0);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    for (int i = 0; i < 1000; ++i)
    {
        const Point X = radius(rng) * unit_direction(angle(rng));
        const auto [plus, minus] = tangent_touch_points(X);
        for (const Point p : {plus, minus})
        {
            EXPECT_NEAR(dot(p, X), 1.0, 1e-12);
            EXPECT_NEAR(norm(p), 1.0, 1e-12);
        }
        // Circle (origin) to the left of X -> P+.
        EXPECT_GT(cross(plus - X, Point{0.0, 0.0} - X), 0.0);
        EXPECT_LT(cross(minus - X, Point{0.0, 0.0} - X), 0.0);
    }
}

TEST(PieceLength, SegmentsAndArcs)
{
    EXPECT_DOUBLE_EQ(piece_length(Segment{{0, 0}, {1, 0}}), 1.0);
    EXPECT_DOUBLE_EQ(piece_length(Arc{{0, 0}, 1.0, 0.0, kPi, true}), kPi);
    const double sweep = 1.5 * kPi - 2.0 * (kPi / 6.0);
    EXPECT_NEAR(piece_length(Arc{{0, 0}, 1.0, 0.0, sweep, true}), 7.0 * kPi / 6.0, 1e-15);
    EXPECT_NEAR(piece_length(Arc{{0, 0}, 1.0, 0.0, -sweep, false}), 3.6651914291880923, 1e-15);
}

TEST(PieceLength, DegenerateRejected)
{
    EXPECT_THROW(piece_length(Segment{{1, 1}, {1, 1}}), Error);
    EXPECT_THROW(piece_length(Arc{{0, 0}, 0.0, 0.0, 1.0, true}), Error);
    EXPECT_THROW(piece_length(Arc{{0, 0}, 1.0, 0.5, 0.5, true}), Error);
    try
    {
        piece_length(Segment{{0, 0}, {0, 0}});
    }
    catch (const Error& e)
    {
        EXPECT_EQ(e.code(), ErrorCode::DegeneratePiece);
    }
}

TEST(ArcTest, SweepWrapsIntoFullTurn)
{
    EXPECT_DOUBLE_EQ(arc_sweep(Arc{{0, 0}, 1.0, 0.0, kTwoPi, true}), kTwoPi);
    EXPECT_NEAR(arc_sweep(Arc{{0, 0}, 1.0, 0.0, -0.5, true}), kTwoPi - 0.5, 1e-15);
    EXPECT_NEAR(arc_sweep(Arc{{0, 0}, 1.0, 0.0, -0.5, false}), 0.5, 1e-15);
    const Point e = end_point(Arc{{0, 0}, 1.0, 0.0, 1.5 * kPi, true});
    EXPECT_NEAR(e.x, 0.0, 1e-15);
    EXPECT_NEAR(e.y, -1.0, 1e-15);
}

TEST(PathLength, CanonicalPaths)
{
    EXPECT_NEAR(path_length(naive_path()), 1.0 + 2.0 * kPi, 1e-12);
    EXPECT_NEAR(path_length(theorem1_path()), 7.0 * kPi / 6.0 + 1.0 + std::sqrt(3.0), 1e-12);
    EXPECT_NEAR(path_length(theorem2_path()), kPi + 2.0, 1e-12);
}

TEST(PiecewisePathTest, BrokenChainRejected)
{
    std::vector<PathPiece> pieces{Segment{{0, 0}, {1, 0}}, Segment{{1, 1e-8}, {2, 0}}};
    try
    {
        PiecewisePath p(pieces);
        FAIL();
    }
    catch (const Error& e)
    {
        EXPECT_EQ(e.code(), ErrorCode::BrokenChain);
    }
    // Within the continuity tolerance the chain is accepted as is.
    std::vector<PathPiece> close{Segment{{0, 0}, {1, 0}}, Segment{{1, 5e-10}, {2, 0}}};
    EXPECT_NO_THROW(PiecewisePath{close});
    EXPECT_THROW(PiecewisePath{std::vector<PathPiece>{}}, Error);
}

TEST(PathPointAt, EndpointsAndInterpolation)
{
    const auto t2 = theorem2_path();
    const Point s = path_point_at(t2, 0.0);
    EXPECT_EQ(s.x, 1.0);
    EXPECT_EQ(s.y, -1.0);
    const Point e = path_point_at(t2, path_length(t2));
    EXPECT_NEAR(e.x, -1.0, 1e-15);
    EXPECT_NEAR(e.y, -1.0, 1e-15);
    // Semicircle midpoint sits at (0, 1).
    const Point top = path_point_at(t2, 1.0 + kPi / 2);
    EXPECT_NEAR(top.x, 0.0, 1e-15);
    EXPECT_NEAR(top.y, 1.0, 1e-15);

    const PiecewisePath unit({Segment{{0, 0}, {1, 0}}});
    const Point q = path_point_at(unit, 0.25);
    EXPECT_DOUBLE_EQ(q.x, 0.25);
    EXPECT_DOUBLE_EQ(q.y, 0.0);
    EXPECT_THROW(path_point_at(unit, -0.1), Error);
    EXPECT_THROW(path_point_at(unit, 1.1), Error);
}

TEST(PathPointAt, ContinuousAcrossPieces)
{
    const auto t1 = theorem1_path();
    const double len = path_length(t1);
    Point prev = path_point_at(t1, 0.0);
    for (int i = 1; i <= 20000; ++i)
    {
        const double s = len * i / 20000.0;
        const Point p = path_point_at(t1, s);
        EXPECT_LE(distance(prev, p), len / 20000.0 + 1e-12);
        prev = p;
    }
}

TEST(PieceSupport, Examples)
{
    EXPECT_DOUBLE_EQ(piece_support(Segment{{0, 0}, {1, 0}}, Angle{0.0}), 1.0);
    const Arc full{{0, 0}, 1.0, 0.0, kTwoPi, true};
    for (double t : {0.0, 0.3, 2.0, 4.5, 6.2})
        EXPECT_DOUBLE_EQ(piece_support(full, Angle{t}), 1.0);
    // Upper semicircle seen from below: endpoints (+-1, 0) project to 0.
    EXPECT_NEAR(piece_support(Arc{{0, 0}, 1.0, 0.0, kPi, true}, Angle{1.5 * kPi}), 0.0, 1e-15);
}

TEST(PieceLipschitz, Examples)
{
    EXPECT_DOUBLE_EQ(piece_lipschitz_bound(Segment{{0, 0}, {2, 0}}), 2.0);
    EXPECT_DOUBLE_EQ(piece_lipschitz_bound(Arc{{0, 0}, 1.0, 0.0, 1.0, true}), 1.0);
    EXPECT_NEAR(piece_lipschitz_bound(Arc{{1, 1}, 0.5, 0.0, 1.0, true}), std::sqrt(2.0) + 0.5, 1e-15);
}

TEST(PieceSupport, PropertyMatchesDenseSampling)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(-kTwoPi, kTwoPi);
    for (int trial = 0; trial < 200; ++trial)
    {
        const PathPiece p = gen::random_piece(rng);
        const double len = piece_length(p);
        const double theta = angle(rng);
        const Point u = unit_direction(theta);
        double sampled = -1e300;
        constexpr int kSamples = 1000;
        for (int i = 0; i <= kSamples; ++i)
            sampled = std::max(sampled, dot(piece_point_at(p, len * i / kSamples), u));
        // Sagitta of the sampling step bounds how far the sampled max can fall short.
        double slack = 1e-9;
        if (const auto* a = std::get_if<Arc>(&p))
            slack += a->radius * (1.0 - std::cos(0.5 * arc_sweep(*a) / kSamples));
        const double exact = piece_support(p, Angle{theta});
        EXPECT_GE(exact, sampled - 1e-9);
        EXPECT_LE(exact, sampled + slack);
    }
}

TEST(PieceSupport, PropertyLipschitz)
{
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    for (int trial = 0; trial < 2000; ++trial)
    {
        const PathPiece p = gen::random_piece(rng);
        const double a = angle(rng);
        const double b = angle(rng);
        const double l = piece_lipschitz_bound(p);
        EXPECT_LE(std::abs(piece_support(p, Angle{a}) - piece_support(p, Angle{b})), l * std::abs(a - b) + 1e-12);
    }
}

TEST(PieceSupport, IntervalLowerBoundIsSound)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    std::uniform_real_distribution<double> width(1e-6, 0.5);
    for (int trial = 0; trial < 2000; ++trial)
    {
        const PathPiece p = gen::random_piece(rng);
        const double lo = angle(rng);
        const double hi = lo + width(rng);
        const double bound = piece_support_lower_bound(p, lo, hi);
        for (int i = 0; i <= 64; ++i)
            EXPECT_LE(bound, piece_support(p, Angle{lo + (hi - lo) * i / 64.0}) + 1e-13);
    }
}

TEST(PathLength, AdditiveAndRotationInvariant)
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    for (int trial = 0; trial < 50; ++trial)
    {
        const auto a = gen::random_arc_path(rng, 5, 2.0);
        const auto b0 = gen::random_arc_path(rng, 4, 2.0);
        // Translate b so it starts where a ends.
        std::vector<PathPiece> moved;
        const Point shift = a.end() - b0.start();
        for (const auto& p : b0.pieces())
        {
            if (const auto* s = std::get_if<Segment>(&p))
                moved.emplace_back(Segment{s->from + shift, s->to + shift});
            else
            {
                Arc arc = std::get<Arc>(p);
                arc.center = arc.center + shift;
                moved.emplace_back(arc);
            }
        }
        const PiecewisePath b(std::move(moved));
        EXPECT_NEAR(path_length(concatenate(a, b)), path_length(a) + path_length(b), 1e-12);
        EXPECT_NEAR(path_length(rotated(a, angle(rng))), path_length(a), 1e-12);
    }
}

TEST(Subpath, SlicesReassembleToTheWhole)
{
    const auto t1 = theorem1_path();
    const double len = path_length(t1);
    const auto head = subpath_pieces(t1, 0.0, 2.0);
    const auto tail = subpath_pieces(t1, 2.0, len);
    std::vector<PathPiece> all(head);
    all.insert(all.end(), tail.begin(), tail.end());
    const PiecewisePath joined(all);
    EXPECT_NEAR(path_length(joined), len, 1e-12);
    EXPECT_NEAR(distance(joined.end(), t1.end()), 0.0, 1e-12);
}
