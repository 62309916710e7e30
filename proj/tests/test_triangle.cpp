#include <gtest/gtest.h>

#include "support.hpp"

using namespace tritei;
using tritei::testing::Sampler;

namespace
{

constexpr double kSqrt2 = 1.4142135623730951;

LabeledTriangle unit_half_plus_i() { return normalized_triangle(ShapePoint{0.5, 1.0}); }

}  // namespace

TEST(EdgeLengths, UnitAreaIsosceles)
{
    const auto e = edge_lengths(unit_half_plus_i());
    EXPECT_NEAR(e.a, 1.414214, 1e-6);
    EXPECT_NEAR(e.b, 1.581139, 1e-6);
    EXPECT_NEAR(e.c, 1.581139, 1e-6);
}

TEST(EdgeLengths, RightIsoscelesAndEquilateral)
{
    const auto e = edge_lengths(tilde_triangle(ShapePoint{0.0, 1.0}));
    EXPECT_NEAR(e.a, 1.0, 1e-15);
    EXPECT_NEAR(e.b, kSqrt2, 1e-15);
    EXPECT_NEAR(e.c, 1.0, 1e-15);

    const double s = 3.0;
    const LabeledTriangle eq{s * Point{0.5, std::sqrt(3.0) / 2}, 0.0, s};
    for (double len : {edge_lengths(eq).a, edge_lengths(eq).b, edge_lengths(eq).c}) EXPECT_NEAR(len, s, 1e-14);
}

TEST(Angles, Examples)
{
    const auto t = angles(unit_half_plus_i());
    EXPECT_NEAR(t.a, 0.927295, 1e-6);
    EXPECT_NEAR(t.b, 1.107149, 1e-6);
    EXPECT_NEAR(t.c, 1.107149, 1e-6);

    const auto r = angles(tilde_triangle(ShapePoint{0.0, 1.0}));
    EXPECT_NEAR(r.a, kPi / 4, 1e-15);
    EXPECT_NEAR(r.b, kPi / 2, 1e-15);
    EXPECT_NEAR(r.c, kPi / 4, 1e-15);

    const auto q = angles(tilde_triangle(ShapePoint{0.5, std::sqrt(3.0) / 2}));
    for (double x : {q.a, q.b, q.c}) EXPECT_NEAR(x, kPi / 3, 1e-15);
}

TEST(AreaAltitudes, Examples)
{
    EXPECT_NEAR(area(unit_half_plus_i()), 1.0, 1e-15);
    const auto h = altitudes(unit_half_plus_i());
    EXPECT_NEAR(h.a, 1.414214, 1e-6);
    EXPECT_NEAR(h.b, 1.264911, 1e-6);
    EXPECT_NEAR(h.c, 1.264911, 1e-6);

    EXPECT_NEAR(area(tilde_triangle(ShapePoint{0.0, 1.0})), 0.5, 1e-15);
    EXPECT_NEAR(area(tilde_triangle(ShapePoint{0.5, 0.9})), 0.45, 1e-15);
    EXPECT_NEAR(altitudes(normalized_triangle(ShapePoint{0.5, 2.0})).a, 2.0, 1e-15);
}

TEST(ZParam, Examples)
{
    const Point r = z_param(tilde_triangle(ShapePoint{0.0, 1.0})).value();
    EXPECT_NEAR(std::abs(r - Point{0.0, 1.0}), 0.0, 1e-15);

    const LabeledTriangle eq{Point{0.5, std::sqrt(3.0) / 2}, 0.0, 1.0};
    EXPECT_NEAR(z_param(eq).re(), 0.5, 1e-15);
    EXPECT_NEAR(z_param(eq).im(), 0.866025, 1e-6);

    const Point z = z_param(unit_half_plus_i()).value();
    EXPECT_NEAR(std::abs(z - Point{0.5, 1.0}), 0.0, 1e-15);
}

TEST(NormalizedTriangle, Examples)
{
    const auto t = unit_half_plus_i();
    EXPECT_NEAR(std::abs(t.va() - Point{0.707107, 1.414214}), 0.0, 1e-6);
    EXPECT_EQ(t.vb(), Point(0.0, 0.0));
    EXPECT_NEAR(t.vc().real(), 1.414214, 1e-6);

    const auto r = normalized_triangle(ShapePoint{0.0, 1.0});
    EXPECT_NEAR(std::abs(r.va() - Point{0.0, kSqrt2}), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(r.vc() - kSqrt2), 0.0, 1e-15);

    const auto u = normalized_triangle(ShapePoint{0.5, 2.0});
    EXPECT_EQ(u.va(), Point(0.5, 2.0));
    EXPECT_EQ(u.vc(), Point(1.0, 0.0));
}

TEST(TildeTriangle, Definition)
{
    const auto t = tilde_triangle(ShapePoint{0.5, 1.0});
    EXPECT_EQ(t.va(), Point(0.5, 1.0));
    EXPECT_EQ(t.vb(), Point(0.0, 0.0));
    EXPECT_EQ(t.vc(), Point(1.0, 0.0));
}

TEST(Classify, Examples)
{
    EXPECT_EQ(classify(ShapePoint{0.5, 1.0}).kind, RegionKind::acute);
    EXPECT_EQ(classify(ShapePoint{0.0, 1.0}), (RegionTag{RegionKind::right, Vertex::b}));
    EXPECT_EQ(classify(ShapePoint{0.5, 0.4}), (RegionTag{RegionKind::obtuse, Vertex::a}));
    EXPECT_EQ(classify(ShapePoint{1.0, 2.0}), (RegionTag{RegionKind::right, Vertex::c}));
    EXPECT_EQ(classify(ShapePoint{1.5, 2.0}), (RegionTag{RegionKind::obtuse, Vertex::c}));
    EXPECT_EQ(classify(ShapePoint{-0.2, 1.0}), (RegionTag{RegionKind::obtuse, Vertex::b}));
    EXPECT_EQ(classify(ShapePoint{0.5, 0.5}), (RegionTag{RegionKind::right, Vertex::a}));
}

TEST(Classify, SnapIsCallerControlled)
{
    const ShapePoint z{1e-10, 1.0};
    EXPECT_EQ(classify(z).kind, RegionKind::acute);
    EXPECT_EQ(classify(z, 1e-9), (RegionTag{RegionKind::right, Vertex::b}));
}

TEST(Validation, RejectsBadInput)
{
    EXPECT_THROW(ShapePoint(0.5, 0.0), Error);
    EXPECT_THROW(ShapePoint(0.5, -1.0), Error);
    try {
        LabeledTriangle t{Point{0.5, 1.0}, 1.0, 0.0};
        FAIL() << "clockwise triangle accepted";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::clockwise_triangle);
    }
    try {
        LabeledTriangle t{0.0, 1.0, 2.0};
        FAIL() << "collinear triangle accepted";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::degenerate_triangle);
    }
    EXPECT_THROW(scaled_to_area(tilde_triangle(ShapePoint{0.5, 1.0}), 0.0), Error);
}

TEST(ScaledToArea, RescalesOnly)
{
    const auto t = scaled_to_area(tilde_triangle(ShapePoint{0.3, 0.7}), 5.0);
    EXPECT_NEAR(area(t), 5.0, 1e-13);
    EXPECT_NEAR(std::abs(z_param(t).value() - Point{0.3, 0.7}), 0.0, 1e-14);
}

// ---------------------------------------------------------------------------
// Properties

TEST(TriangleProperties, RoundTrip)
{
    Sampler s{11};
    for (int i = 0; i < 10000; ++i) {
        const Point z{s.uniform(-3.0, 4.0), s.uniform(0.05, 20.0)};
        const Point back = z_param(normalized_triangle(ShapePoint{z})).value();
        ASSERT_LE(std::abs(back - z), 1e-12 * std::abs(z)) << z;
    }
}

TEST(TriangleProperties, SimilarityInvariance)
{
    Sampler s{12};
    for (int i = 0; i < 2000; ++i) {
        const ShapePoint z{s.uniform(-2.0, 3.0), s.uniform(0.05, 5.0)};
        const LabeledTriangle t = tilde_triangle(z);
        const Point rot = std::polar(s.uniform(0.01, 100.0), s.uniform(-kPi, kPi));
        const Point shift{s.uniform(-10.0, 10.0), s.uniform(-10.0, 10.0)};
        const LabeledTriangle moved{rot * t.va() + shift, rot * t.vb() + shift, rot * t.vc() + shift};
        ASSERT_LE(std::abs(z_param(moved).value() - z.value()), 1e-12 * std::max(1.0, std::abs(z.value())));
    }
}

TEST(TriangleProperties, IndependentShapeFormulaAgrees)
{
    Sampler s{13};
    for (int i = 0; i < 2000; ++i) {
        const ShapePoint z{s.uniform(-2.0, 3.0), s.uniform(0.05, 5.0)};
        const LabeledTriangle t = normalized_triangle(z);
        const Point ref = tritei::testing::z_by_cosines(t.va(), t.vb(), t.vc());
        ASSERT_LE(std::abs(ref - z.value()), 1e-9 * std::max(1.0, std::abs(z.value())));
    }
}

TEST(TriangleProperties, AngleSumAndCosines)
{
    Sampler s{14};
    for (int i = 0; i < 5000; ++i) {
        const LabeledTriangle t = normalized_triangle(ShapePoint{s.uniform(-2.0, 3.0), s.uniform(0.05, 5.0)});
        const auto th = angles(t);
        const auto e = edge_lengths(t);
        ASSERT_NEAR(th.a + th.b + th.c, kPi, 1e-12);
        for (Vertex v : kVertices) {
            const double lhs = e[v] * e[v];
            const double rhs = e[next(v)] * e[next(v)] + e[after(v)] * e[after(v)] -
                               2.0 * e[next(v)] * e[after(v)] * std::cos(th[v]);
            ASSERT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, lhs));
        }
    }
}

TEST(TriangleProperties, ClassifyMatchesAngleTest)
{
    Sampler s{15};
    for (int i = 0; i < 10000; ++i) {
        const ShapePoint z{s.uniform(-1.0, 2.0), s.uniform(0.02, 3.0)};
        const auto th = angles(tilde_triangle(z));
        const RegionTag tag = classify(z);
        for (Vertex v : kVertices) {
            const double c = std::cos(th[v]);
            if (std::abs(c) <= 1e-12) continue;
            const bool obtuse = c < 0.0;
            ASSERT_EQ(obtuse, tag.kind == RegionKind::obtuse && tag.at == v) << z.value();
        }
    }
    // Exact right angles land on the right boundary.
    for (Vertex v : kVertices) {
        const Point z = v == Vertex::b ? Point{0.0, 0.7} : v == Vertex::c ? Point{1.0, 0.7} : 0.5 + 0.5 * std::polar(1.0, 1.1);
        const auto tag = classify(ShapePoint{z}, 1e-12);
        EXPECT_EQ(tag, (RegionTag{RegionKind::right, v}));
        EXPECT_NEAR(std::cos(angle_at(tilde_triangle(ShapePoint{z}), v)), 0.0, 1e-12);
    }
}

TEST(TriangleProperties, AltitudeTimesEdgeIsTwo)
{
    Sampler s{16};
    for (int i = 0; i < 5000; ++i) {
        const LabeledTriangle t = normalized_triangle(ShapePoint{s.uniform(-2.0, 3.0), s.uniform(0.05, 5.0)});
        const auto h = altitudes(t);
        const auto e = edge_lengths(t);
        for (Vertex v : kVertices) ASSERT_NEAR(h[v] * e[v], 2.0, 1e-12);
    }
}
