#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace tritei;
using tritei::testing::Sampler;

namespace
{

const ShapePoint z0{0.5, 1.0};
// (29 + 20i) / 34 is the b-pencil image of 0.5+i with witness (0.5, 0.5).
const ShapePoint b_anchor{29.0 / 34.0, 20.0 / 34.0};

double dist(Point p, Point q) { return std::abs(p - q); }

/// Random shape point in the a-, b- or c-pencil of z.
ShapePoint pencil_target(Sampler& s, const ShapePoint& z, Vertex v)
{
    const auto [k1, k2] = s.ks();
    return stretch_target(z, v, k1, k2);
}

}  // namespace

TEST(LabelAction, Examples)
{
    EXPECT_NEAR(dist(omega_ab(z0.value()), {0.6, 0.8}), 0.0, 1e-15);
    EXPECT_NEAR(dist(omega_ac(z0.value()), {0.4, 0.8}), 0.0, 1e-15);
    EXPECT_NEAR(dist(omega_bc(z0.value()), {0.5, 1.0}), 0.0, 1e-15);
}

TEST(LabelAction, MatchesGeometricRelabelling)
{
    Sampler s{21};
    for (int i = 0; i < 2000; ++i) {
        const Point z{s.uniform(-2.0, 3.0), s.uniform(0.05, 4.0)};
        for (const auto& sigma : LabelPermutation::all()) {
            const Point ref = tritei::testing::relabelled_shape(z, sigma);
            const Point got = apply_label_permutation(z, sigma);
            ASSERT_LE(dist(ref, got), 1e-9 * std::max(1.0, std::abs(ref))) << sigma.name() << " " << z;
        }
    }
}

TEST(LabelAction, GroupLaw)
{
    Sampler s{22};
    const auto all = LabelPermutation::all();
    for (int i = 0; i < 10000; ++i) {
        const Point z{s.uniform(-2.0, 3.0), s.uniform(0.05, 4.0)};
        const auto& sg = all[static_cast<std::size_t>(s.integer(0, 5))];
        const auto& tau = all[static_cast<std::size_t>(s.integer(0, 5))];
        const Point lhs = apply_label_permutation(apply_label_permutation(z, tau), sg);
        const Point rhs = apply_label_permutation(z, sg.compose(tau));
        ASSERT_LE(dist(lhs, rhs), 1e-12 * std::max(1.0, std::norm(z))) << sg.name() << " " << tau.name();
        ASSERT_EQ(apply_label_permutation(z, LabelPermutation::identity()), z);
    }
}

TEST(LabelAction, Involutions)
{
    Sampler s{23};
    for (int i = 0; i < 10000; ++i) {
        const Point z{s.uniform(-2.0, 3.0), s.uniform(0.05, 4.0)};
        const double tol = 1e-12 * std::max(1.0, std::norm(z));
        ASSERT_LE(dist(omega_ab(omega_ab(z)), z), tol);
        ASSERT_LE(dist(omega_ac(omega_ac(z)), z), tol);
        ASSERT_LE(dist(omega_bc(omega_bc(z)), z), tol);
    }
}

TEST(LabelPermutationType, ParseAndAlgebra)
{
    for (const auto& s : LabelPermutation::all()) {
        EXPECT_EQ(LabelPermutation::parse(s.name()), s);
        EXPECT_TRUE(s.compose(s.inverse()).is_identity());
    }
    EXPECT_EQ(LabelPermutation::parse("abc")(Vertex::a), Vertex::b);
    EXPECT_EQ(LabelPermutation::parse("acb")(Vertex::a), Vertex::c);
    EXPECT_THROW(LabelPermutation::parse("xyz"), Error);
}

TEST(Congruence, VertexImagesAndUnitConstant)
{
    Sampler s{24};
    for (int i = 0; i < 500; ++i) {
        const ShapePoint z{s.uniform(-2.0, 3.0), s.uniform(0.05, 4.0)};
        for (const char* n : {"ab", "ac", "bc"}) {
            const auto sigma = LabelPermutation::parse(n);
            const PLMap r = congruence_map(z, sigma);
            ASSERT_EQ(r.size(), 1u);
            const auto& lin = r.pieces()[0].map.lin;
            ASSERT_NEAR(lin.sigma_max(), 1.0, 1e-12);
            ASSERT_NEAR(lin.singular_values().second, 1.0, 1e-12);
            ASSERT_LT(lin.det(), 0.0);
            const LabeledTriangle from = normalized_triangle(z);
            const LabeledTriangle to = normalized_triangle(apply_label_permutation(z, sigma));
            for (Vertex v : kVertices) {
                ASSERT_LE(dist(r(from.vertex(v)), to.vertex(sigma(v))), 1e-12 * std::max(1.0, std::abs(from.va())))
                    << n;
            }
        }
    }
}

TEST(Congruence, Examples)
{
    const auto rac = congruence_map(z0, LabelPermutation::parse("ac"));
    const LabeledTriangle t = normalized_triangle(z0);
    const LabeledTriangle u = normalized_triangle(ShapePoint{0.4, 0.8});
    EXPECT_NEAR(dist(rac(t.va()), u.vc()), 0.0, 1e-12);
    EXPECT_NEAR(dist(rac(t.vc()), u.va()), 0.0, 1e-12);
    EXPECT_NEAR(pl_lipschitz_constant(rac), 1.0, 1e-12);

    // R_bc on the isosceles shape fixes a and swaps b with c.
    const auto rbc = congruence_map(z0, LabelPermutation::parse("bc"));
    EXPECT_NEAR(dist(rbc(t.va()), t.va()), 0.0, 1e-12);
    EXPECT_NEAR(dist(rbc(t.vb()), t.vc()), 0.0, 1e-12);
    EXPECT_NEAR(dist(rbc(0.5 * (t.vb() + t.vc())), 0.5 * (t.vb() + t.vc())), 0.0, 1e-12);

    // R_ab followed by the R_ab of the image shape is the identity.
    const auto rab = congruence_map(z0, LabelPermutation::parse("ab"));
    const auto back = congruence_map(ShapePoint{omega_ab(z0.value())}, LabelPermutation::parse("ab"));
    for (Vertex v : kVertices) EXPECT_NEAR(dist(back(rab(t.vertex(v))), t.vertex(v)), 0.0, 1e-12);

    EXPECT_THROW(congruence_map(z0, LabelPermutation::parse("abc")), Error);
}

TEST(Pencil, Examples)
{
    const auto w = pencil_membership(z0, ShapePoint{0.5, 2.0}, Vertex::a);
    ASSERT_TRUE(w);
    EXPECT_NEAR(w->k1, 0.5, 1e-15);
    EXPECT_NEAR(w->k2, 0.5, 1e-15);

    const auto wb = pencil_membership(z0, b_anchor, Vertex::b);
    ASSERT_TRUE(wb);
    EXPECT_NEAR(wb->k1, 0.5, 1e-12);
    EXPECT_NEAR(wb->k2, 0.5, 1e-12);

    // The rounded literal from the worked example also lands in the pencil.
    const auto wr = pencil_membership(z0, ShapePoint{0.852941, 0.588235}, Vertex::b);
    ASSERT_TRUE(wr);
    EXPECT_NEAR(wr->k1, 0.5, 1e-5);

    EXPECT_FALSE(pencil_membership(z0, ShapePoint{0.5, 0.9}, Vertex::a));
}

TEST(Pencil, WitnessMatchesStretchParameters)
{
    Sampler s{25};
    for (int i = 0; i < 2000; ++i) {
        const ShapePoint z = s.acute();
        const Vertex v = s.vertex();
        const auto [k1, k2] = s.ks();
        const auto w = pencil_membership(z, stretch_target(z, v, k1, k2), v);
        ASSERT_TRUE(w);
        ASSERT_NEAR(w->k1, k1, 1e-9);
        ASSERT_NEAR(w->k2, k2, 1e-9);
    }
}

TEST(BackwardPencil, Examples)
{
    EXPECT_TRUE(backward_pencil_membership(z0, ShapePoint{0.5, 0.9}, Vertex::a));
    EXPECT_FALSE(backward_pencil_membership(z0, ShapePoint{0.5, 2.0}, Vertex::a));
    for (Vertex v : kVertices) EXPECT_TRUE(backward_pencil_membership(z0, z0, v));
    EXPECT_THROW(backward_pencil_membership(ShapePoint{0.5, 0.4}, z0, Vertex::a), Error);
}

TEST(BackwardPencil, IsTheReverseOfThePencil)
{
    Sampler s{26};
    int checked = 0;
    for (int i = 0; i < 3000; ++i) {
        const ShapePoint z = s.acute();
        const Vertex v = s.vertex();
        const ShapePoint w = pencil_target(s, z, v);
        if (!is_acute(w)) continue;
        ++checked;
        ASSERT_TRUE(backward_pencil_membership(w, z, v)) << z.value() << " " << w.value();
    }
    EXPECT_GT(checked, 500);
}

TEST(ClassifyPair, Examples)
{
    const auto c1 = classify_pair(z0, ShapePoint{0.5, 2.0});
    EXPECT_EQ(c1.vertex, Vertex::a);
    EXPECT_EQ(c1.kind, PencilKind::pencil);
    ASSERT_TRUE(c1.witness);
    EXPECT_NEAR(c1.witness->k1, 0.5, 1e-15);

    const auto c2 = classify_pair(z0, b_anchor);
    EXPECT_EQ(c2.vertex, Vertex::b);
    EXPECT_EQ(c2.kind, PencilKind::pencil);
    ASSERT_TRUE(c2.witness);
    EXPECT_NEAR(c2.witness->k1, 0.5, 1e-12);
    EXPECT_NEAR(c2.witness->k2, 0.5, 1e-12);

    const auto c3 = classify_pair(z0, ShapePoint{0.5, 0.9});
    EXPECT_EQ(c3.vertex, Vertex::a);
    EXPECT_EQ(c3.kind, PencilKind::backward);
    EXPECT_FALSE(c3.witness);
}

TEST(ClassifyPair, Errors)
{
    try {
        classify_pair(ShapePoint{0.5, 0.4}, z0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::outside_domain);
    }
    try {
        try_classify_pair(z0, ShapePoint{3.0, 0.1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::outside_domain);
    }
}

TEST(ClassifyPair, Equivariance)
{
    Sampler s{27};
    for (int i = 0; i < 10000; ++i) {
        const ShapePoint z = s.acute();
        const ShapePoint w = s.integer(0, 1) ? pencil_target(s, z, s.vertex()) : s.acute();
        const auto c = try_classify_pair(z, w);
        if (!c) continue;
        for (const auto& sigma : LabelPermutation::all()) {
            const auto cs = try_classify_pair(apply_label_permutation(z, sigma), apply_label_permutation(w, sigma));
            ASSERT_TRUE(cs);
            ASSERT_EQ(cs->vertex, sigma(c->vertex)) << sigma.name() << z.value() << w.value();
            ASSERT_EQ(cs->kind, c->kind);
            if (c->witness) {
                const std::multiset<double> a{c->witness->k1, c->witness->k2};
                const std::multiset<double> b{cs->witness->k1, cs->witness->k2};
                ASSERT_NEAR(*a.begin(), *b.begin(), 1e-9);
                ASSERT_NEAR(*a.rbegin(), *b.rbegin(), 1e-9);
            }
        }
    }
}

TEST(Sector, Examples)
{
    EXPECT_EQ(sector_of(z0, {0.0, 1.0}), (SectorTag{Vertex::a, false}));
    EXPECT_EQ(sector_of(z0, {0.0, -1.0}), (SectorTag{Vertex::a, true}));
    EXPECT_EQ(sector_of(z0, {0.9, -0.1}), (SectorTag{Vertex::b, false}));
    EXPECT_THROW(sector_of(z0, 0.0), Error);
    EXPECT_THROW(sector_of(ShapePoint{0.5, 0.4}, 1.0), Error);
}

TEST(Sector, TilingAndAntipodes)
{
    Sampler s{28};
    for (int i = 0; i < 10000; ++i) {
        const ShapePoint z = s.acute();
        const Point u = s.direction();
        const SectorTag t = sector_of(z, u);
        const SectorTag m = sector_of(z, -u);
        ASSERT_EQ(t.vertex, m.vertex);
        ASSERT_NE(t.backward, m.backward);
    }
    // Every sector is hit and the six open cones are disjoint by construction.
    std::set<std::string> seen;
    for (int k = 0; k < 720; ++k) seen.insert(sector_of(z0, std::polar(1.0, k * kPi / 360 + 1e-3)).name());
    EXPECT_EQ(seen.size(), 6u);
}

TEST(Sector, BoundaryRaysGoToTheEarlierSector)
{
    // arg 0 is the ray between S_b and S_c^B for 0.5+i; S_b comes first.
    EXPECT_EQ(sector_of(z0, 2.5), (SectorTag{Vertex::b, false}));
    EXPECT_EQ(sector_of(z0, z0.value()), (SectorTag{Vertex::a, false}));
}

TEST(Sector, PencilCompatibility)
{
    Sampler s{29};
    int pencil = 0, backward = 0;
    for (int i = 0; i < 3000; ++i) {
        const ShapePoint z = s.acute(0.05);
        const Point dir = s.direction();
        const SectorTag tag = sector_of(z, dir);
        // Keep clear of the sector's edges.
        if (sector_of(z, dir * std::polar(1.0, 2e-3)) != tag || sector_of(z, dir * std::polar(1.0, -2e-3)) != tag) {
            continue;
        }
        const Point u = 1e-4 * z.im() * dir;
        for (int k = 1; k <= 10; ++k) {
            const ShapePoint w{z.value() + 0.1 * k * u};
            if (tag.backward) {
                ASSERT_TRUE(backward_pencil_membership(z, w, tag.vertex)) << tag.name() << z.value() << dir;
            } else {
                ASSERT_TRUE(pencil_membership(z, w, tag.vertex)) << tag.name() << z.value() << dir;
            }
        }
        ++(tag.backward ? backward : pencil);
    }
    EXPECT_GT(pencil, 1000);
    EXPECT_GT(backward, 1000);
}

TEST(Hypercycle, Examples)
{
    EXPECT_NEAR(hypercycle_distance(kPi / 2), 0.0, 1e-15);
    EXPECT_NEAR(hypercycle_distance(kPi / 3), 0.549306, 1e-6);
    EXPECT_NEAR(hypercycle_distance(kPi / 4), 0.881374, 1e-6);
    EXPECT_THROW(hypercycle_distance(0.0), Error);
    EXPECT_THROW(hypercycle_distance(2.0), Error);
}

TEST(Hypercycle, MatchesDistanceToImaginaryAxis)
{
    Sampler s{30};
    for (int i = 0; i < 1000; ++i) {
        const double theta = s.uniform(0.01, kPi / 2);
        const Point w = std::polar(s.uniform(0.1, 10.0), theta);
        ASSERT_NEAR(hypercycle_distance(theta), tritei::testing::dist_to_right_b(w), 1e-12);
    }
}

TEST(Hypercycle, NeighbourhoodFormOfThePencil)
{
    Sampler s{31};
    int inside = 0, outside = 0;
    for (int i = 0; i < 1000; ++i) {
        const ShapePoint z = s.acute();
        const ShapePoint w{s.uniform(-0.2, 1.2), s.uniform(0.05, 6.0)};
        const double db = tritei::testing::dist_to_right_b(w.value()) - tritei::testing::dist_to_right_b(z.value());
        const double dc = tritei::testing::dist_to_right_c(w.value()) - tritei::testing::dist_to_right_c(z.value());
        if (std::abs(db) < 1e-9 || std::abs(dc) < 1e-9) continue;
        // The definition through hypercycles about the two right-angle geodesics.
        const double tb = std::atan2(w.im(), std::abs(w.re()));
        const double tc = std::atan2(w.im(), std::abs(1.0 - w.re()));
        const double zb = std::atan2(z.im(), z.re());
        const double zc = std::atan2(z.im(), 1.0 - z.re());
        const bool by_hypercycles = w.re() >= 0.0 && w.re() <= 1.0 && hypercycle_distance(tb) <= hypercycle_distance(zb) &&
                                    hypercycle_distance(tc) <= hypercycle_distance(zc);
        const bool by_witness = pencil_membership(z, w, Vertex::a).has_value();
        ASSERT_EQ(by_witness, tritei::testing::a_pencil_by_neighbourhoods(z.value(), w.value()));
        ASSERT_EQ(by_witness, by_hypercycles) << z.value() << " " << w.value();
        ++(by_witness ? inside : outside);
    }
    EXPECT_GT(inside, 50);
    EXPECT_GT(outside, 50);
}
