#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "tritei/core.hpp"
#include "tritei/linalg.hpp"
#include "tritei/moduli.hpp"
#include "tritei/plmap.hpp"
#include "tritei/triangle.hpp"

namespace tritei
{

/// Exact Lipschitz constant of a continuous piecewise-affine map on a convex
/// domain: the largest singular value over all pieces.
inline double pl_lipschitz_constant(const PLMap& m)
{
    if (m.empty()) throw Error(ErrorCode::empty_map, "Lipschitz constant of an empty map");
    double best = 0.0;
    for (const auto& p : m.pieces()) best = std::max(best, p.map.lin.sigma_max());
    return best;
}

/// Label-preserving affine map between the normalised triangles.
inline PLMap affine_map(const ShapePoint& z1, const ShapePoint& z2)
{
    const Point a = z1.value();
    const Point b = z2.value();
    const Point denom = a - std::conj(a);
    const double scale = std::sqrt(a.imag() / b.imag());
    const Mat2 lin =
        Mat2::from_complex(scale * (b - std::conj(a)) / denom, scale * (a - b) / denom);
    return PLMap::affine(normalized_triangle(z1), Affine2{lin, 0.0});
}

namespace detail
{

inline void check_stretch_args(const ShapePoint& z0, Vertex v, double k1, double k2)
{
    if (!in_vertex_domain(z0, v)) {
        throw Error(ErrorCode::outside_domain,
                    std::string("stretch needs z0 acute, right or obtuse at ") + name(v));
    }
    if (!(k1 >= 0.0 && k1 <= 1.0 && k2 >= 0.0 && k2 <= 1.0) || (k1 == 0.0 && k2 == 0.0)) {
        throw Error(ErrorCode::invalid_argument, "stretch parameters need 0 <= k1, k2 <= 1, not both 0");
    }
}

inline Point stretch_target_a(Point z0, double k1, double k2)
{
    const double x0 = z0.real();
    return Point{k1 * x0, z0.imag()} / (k1 * x0 + k2 * (1.0 - x0));
}

/// Intersection of the lines p + s d and q + t e.
inline Point intersect_lines(Point p, Point d, Point q, Point e)
{
    const double den = cross(d, e);
    if (den == 0.0) throw Error(ErrorCode::invalid_argument, "parallel lines");
    return p + (cross(q - p, e) / den) * d;
}

/// Orthogonal projection of x onto the line through p and q.
inline Point project_to_line(Point x, Point p, Point q)
{
    const Point d = q - p;
    return p + (dot(x - p, d) / std::norm(d)) * d;
}

inline Point unit(Point d) { return d / std::abs(d); }

/// Conjugate a map between normalised triangles of the a-frame back to the
/// v-frame through the realising congruences.
inline PLMap conjugate_back(Vertex v, const PLMap& in_a_frame, const ShapePoint& z0,
                            const ShapePoint& z1_a_frame)
{
    if (v == Vertex::a) return in_a_frame;
    const LabelPermutation sigma = to_vertex_a(v);
    const PLMap in = congruence_map(z0, sigma);
    const PLMap out = congruence_map(z1_a_frame, sigma);
    return compose(out, compose(in_a_frame, in));
}

}  // namespace detail

/// Shape reached from z0 by the stretch map of vertex v with parameters (k1, k2).
inline ShapePoint stretch_target(const ShapePoint& z0, Vertex v, double k1, double k2)
{
    detail::check_stretch_args(z0, v, k1, k2);
    const Point za = conjugate_to_a(v, z0.value());
    return ShapePoint{conjugate_to_a(v, detail::stretch_target_a(za, k1, k2))};
}

/// Two-piece stretch map on the normalised triangle of z0, split by the
/// altitude from vertex v, onto the normalised triangle of the target.
inline PLMap stretch_map(const ShapePoint& z0, Vertex v, double k1, double k2)
{
    detail::check_stretch_args(z0, v, k1, k2);
    const ShapePoint za = conjugate_to_a(v, z0);
    const double x0 = za.re();
    const double s = normalization_scale(za);
    const double xi0 = s * x0;
    const double r = 1.0 / std::sqrt(k1 * x0 + k2 * (1.0 - x0));
    const Point a = s * za.value();
    const Point p{xi0, 0.0};
    const Point c{s, 0.0};
    PLMap f{{
        Piece{{a, Point{0.0, 0.0}, p}, Affine2{Mat2::diagonal(k1 * r, r), 0.0}},
        Piece{{a, p, c}, Affine2{Mat2::diagonal(k2 * r, r), Point{(k1 - k2) * xi0 * r, 0.0}}},
    }};
    const ShapePoint target_a{detail::stretch_target_a(za.value(), k1, k2)};
    return detail::conjugate_back(v, f, z0, target_a);
}

/// True when the extremal stretch lands on a right triangle at one of the
/// other two vertices, where no homeomorphism attains the infimum.
inline bool nonexistence_flag(const ShapePoint& z0, double k1, double k2, Vertex v)
{
    detail::check_stretch_args(z0, v, k1, k2);
    return k1 == 0.0 || k2 == 0.0;
}

// ---------------------------------------------------------------------------
// Stretch loci

struct LocusSpec
{
    enum class Kind { G, F };
    Kind kind{Kind::G};
    Vertex vertex{Vertex::a};
    Vertex other{Vertex::b};  // F only: vertex whose perpendicular is drawn
    double theta{0.0};        // F only

    static LocusSpec G(Vertex v) { return {Kind::G, v, next(v), 0.0}; }
    static LocusSpec F(Vertex v, Vertex other, double theta) { return {Kind::F, v, other, theta}; }
};

struct LocusRegion
{
    enum class Role { foliated, expanding, complement };
    std::string name;
    Role role{Role::foliated};
    std::vector<Point> polygon;  // counter-clockwise
    std::optional<Point> leaf;   // unit leaf direction for foliated regions
};

inline std::string to_string(LocusRegion::Role r)
{
    switch (r) {
        case LocusRegion::Role::foliated: return "foliated";
        case LocusRegion::Role::expanding: return "expanding";
        case LocusRegion::Role::complement: return "complement";
    }
    return "foliated";
}

struct StretchLocus
{
    LocusSpec spec;
    LabeledTriangle triangle;  // normalised triangle carrying the locus
    std::vector<LocusRegion> regions;
    std::vector<std::pair<std::string, Point>> points;

    Point point(const std::string& key) const
    {
        for (const auto& [k, p] : points) {
            if (k == key) return p;
        }
        throw Error(ErrorCode::invalid_argument, "locus has no point '" + key + "'");
    }
};

namespace detail
{

inline std::vector<Point> ccw_polygon(std::vector<Point> poly)
{
    if (polygon_area(poly) < 0.0) std::reverse(poly.begin(), poly.end());
    return poly;
}

}  // namespace detail

/// Maximal stretching locus on the normalised triangle of the acute point z0.
///
/// G(v): the altitude from v splits the triangle into two regions foliated
/// by segments parallel to it.
///
/// F(v, v', theta): with v'' the remaining vertex, r is the foot of the
/// perpendicular from v', p is the point of side v v' with angle
/// v' p v'' = theta, and q is where v' r meets v'' p. The expanding region
/// is v' v'' q, the foliated regions are v' p q (leaves parallel to v' r)
/// and v'' q r (leaves parallel to v'' p); the quadrilateral v p q r is the
/// complement.
inline StretchLocus stretch_locus(const ShapePoint& z0, const LocusSpec& spec)
{
    if (!is_acute(z0)) throw Error(ErrorCode::outside_domain, "stretch loci need acute z0");
    const LabeledTriangle t = normalized_triangle(z0);
    const Vertex v = spec.vertex;
    StretchLocus out{spec, t, {}, {}};
    const std::string vn(1, name(v));
    if (spec.kind == LocusSpec::Kind::G) {
        const Point pv = t.vertex(v);
        const Point p1 = t.vertex(next(v));
        const Point p2 = t.vertex(after(v));
        const Point foot = detail::project_to_line(pv, p1, p2);
        const Point leaf = detail::unit(pv - foot);
        out.regions.push_back({std::string("D_") + name(next(v)), LocusRegion::Role::foliated,
                               detail::ccw_polygon({pv, p1, foot}), leaf});
        out.regions.push_back({std::string("D_") + name(after(v)), LocusRegion::Role::foliated,
                               detail::ccw_polygon({pv, foot, p2}), leaf});
        out.points.emplace_back("p", foot);
        return out;
    }
    if (spec.other == v) throw Error(ErrorCode::invalid_argument, "F locus needs two distinct vertices");
    const Vertex v1 = spec.other;
    const Vertex v2 = next(v) == v1 ? after(v) : next(v);
    const double lo = angle_at(t, v);
    if (!(spec.theta > lo && spec.theta < kPi / 2)) {
        throw Error(ErrorCode::invalid_argument, "F locus angle must lie strictly between the vertex angle and pi/2");
    }
    const Point pv = t.vertex(v);
    const Point p1 = t.vertex(v1);
    const Point p2 = t.vertex(v2);
    const Point r = detail::project_to_line(p1, pv, p2);
    const Point u = detail::unit(p1 - pv);
    const double side = cross(u, p2 - pv) > 0.0 ? 1.0 : -1.0;
    const Point d = u * std::polar(1.0, side * spec.theta);
    const Point p = detail::intersect_lines(p2, d, pv, u);
    const Point q = detail::intersect_lines(p1, r - p1, p2, p - p2);
    const std::string n1(1, name(v1));
    const std::string n2(1, name(v2));
    out.regions.push_back({"E_" + vn, LocusRegion::Role::expanding,
                           detail::ccw_polygon({p1, p2, q}), std::nullopt});
    out.regions.push_back({"D_" + n1, LocusRegion::Role::foliated,
                           detail::ccw_polygon({p1, p, q}), detail::unit(r - p1)});
    out.regions.push_back({"D_" + n2, LocusRegion::Role::foliated,
                           detail::ccw_polygon({p2, q, r}), detail::unit(p - p2)});
    out.regions.push_back({"rest", LocusRegion::Role::complement,
                           detail::ccw_polygon({pv, p, q, r}), std::nullopt});
    out.points.emplace_back("p", p);
    out.points.emplace_back("q", q);
    out.points.emplace_back("r", r);
    return out;
}

// ---------------------------------------------------------------------------
// Contractions for backward pencils

/// Data of one contraction on the triangle (z0, 0, 1).
struct Contraction
{
    PLMap map;
    Point foot;    // foot of the perpendicular from the contracting vertex
    Point target;  // new a-vertex
    double k;      // contraction factor in (0, 1]
};

namespace detail
{

inline double backward_slack(Point z0) { return kMembershipTol * std::max(1.0, std::abs(z0)); }

/// Contraction about the b-vertex; z0 may lie on the boundary of the acute
/// region. Requires z1 in the closed a-backward pencil of z0.
inline Contraction contraction_b(Point z0, Point z1)
{
    if (!backward_a(z0, z1, backward_slack(z0))) {
        throw Error(ErrorCode::outside_domain, "target is not in the a-backward pencil");
    }
    const double y0 = z0.imag();
    const Point foot = Point{0.0, 1.0} * y0 / (1.0 - std::conj(z0));
    const Point target = intersect_lines(0.0, z1, z0, 1.0 - z0);
    const double len = std::abs(z0 - foot);
    const double k = len > 0.0 ? std::min(1.0, std::abs(target - foot) / len) : 1.0;
    const Mat2 lin = Mat2::from_complex((1.0 + k) / 2.0, (1.0 - k) / 2.0 * foot / std::conj(foot));
    PLMap m{{
        Piece{ccw({Point{0.0, 0.0}, foot, Point{1.0, 0.0}}), Affine2::identity()},
        Piece{ccw({z0, Point{0.0, 0.0}, foot}), Affine2{lin, 0.0}},
    }};
    return {std::move(m), foot, target, k};
}

/// The reflection zeta -> 1 - conj(zeta) swapping the b- and c-vertices of
/// the triangle (z0, 0, 1).
inline Affine2 mirror_bc() { return {Mat2::from_complex(0.0, -1.0), Point{1.0, 0.0}}; }

inline Contraction contraction_c(Point z0, Point z1)
{
    const Affine2 m = mirror_bc();
    Contraction cb = contraction_b(m(z0), m(z1));
    const std::array<Point, 3> tri{z0, Point{0.0, 0.0}, Point{1.0, 0.0}};
    const PLMap in = PLMap::affine(tri, m);
    const PLMap out = PLMap::affine(std::array<Point, 3>{m(z0), 1.0, 0.0}, m);
    return {compose(out, compose(cb.map, in)), m(cb.foot), m(cb.target), cb.k};
}

}  // namespace detail

/// Contraction C^x on the triangle (z0, 0, 1) for x in {b, c}: identity on
/// the part cut off by the perpendicular from x that contains the other
/// base vertex, and on the part containing a the map fixing the
/// perpendicular and scaling the ac-side (ab-side for x = c) by k.
inline Contraction contraction_C(const ShapePoint& z0, const ShapePoint& z1, Vertex x)
{
    if (!is_acute(z0)) throw Error(ErrorCode::outside_domain, "contractions need acute z0");
    if (x == Vertex::b) return detail::contraction_b(z0.value(), z1.value());
    if (x == Vertex::c) return detail::contraction_c(z0.value(), z1.value());
    throw Error(ErrorCode::invalid_argument, "contractions are associated with b or c");
}

struct BackwardMap
{
    PLMap map;            // normalised source onto normalised target
    PLMap contraction;    // composed 1-Lipschitz map between the (z, 0, 1) triangles
    Contraction first;    // applied on the source triangle
    Contraction second;   // applied on the intermediate triangle
    double lipschitz;     // sqrt(Im z0 / Im z1)
    std::optional<StretchLocus> locus;  // induced maximal stretching locus
};

namespace detail
{

/// a-frame construction G^x with x in {b, c}, between tilde triangles.
inline BackwardMap backward_a_frame(const ShapePoint& z0, const ShapePoint& z1, Vertex x)
{
    const Point p0 = z0.value();
    const Point p1 = z1.value();
    Contraction first = x == Vertex::b ? contraction_b(p0, p1) : contraction_c(p0, p1);
    const Point mid = first.target;
    const double tol = 1e-12 * std::max(1.0, std::abs(mid));
    Contraction second{PLMap::affine(std::array<Point, 3>{mid, 0.0, 1.0}, Affine2::identity()), mid, mid, 1.0};
    if (std::abs(mid - p1) > tol) {
        second = x == Vertex::b ? contraction_c(mid, p1) : contraction_b(mid, p1);
    }
    PLMap g = std::abs(mid - p1) > tol ? compose(second.map, first.map) : first.map;

    const double y0 = z0.im();
    const double v0 = z1.im();
    const double in_scale = std::sqrt(y0 / 2.0);
    const double out_scale = std::sqrt(2.0 / v0);
    const LabeledTriangle src = normalized_triangle(z0);
    const PLMap scale_in = PLMap::affine(src, Affine2{Mat2::identity() * in_scale, 0.0});
    const PLMap scale_out =
        PLMap::affine(std::array<Point, 3>{p1, 0.0, 1.0}, Affine2{Mat2::identity() * out_scale, 0.0});
    PLMap full = compose(scale_out, compose(g, scale_in));

    // Induced locus: q is where the second contraction's perpendicular meets
    // the first one's; p continues the straight segment from the second
    // contracting vertex through q to the opposite side.
    std::optional<StretchLocus> locus;
    const Affine2 m = mirror_bc();
    const Point a0 = x == Vertex::b ? p0 : m(p0);
    const Point a1 = x == Vertex::b ? mid : m(mid);
    const Point foot_first = x == Vertex::b ? first.foot : m(first.foot);
    const Point foot_second = project_to_line(1.0, 0.0, a1);
    if (std::abs(cross(foot_first, foot_second - 1.0)) > 1e-14) {
        const Point q = intersect_lines(0.0, foot_first, 1.0, foot_second - 1.0);
        const Point p = intersect_lines(1.0, q - 1.0, 0.0, a0);
        const double theta = std::abs(std::arg((0.0 - p) / (1.0 - p)));
        const double lo = angle_at(tilde_triangle(z0), Vertex::a);
        if (theta > lo && theta < kPi / 2 - 1e-12) {
            locus = stretch_locus(z0, LocusSpec::F(Vertex::a, x, theta));
        }
    }
    return {std::move(full), std::move(g), std::move(first), std::move(second),
            std::sqrt(y0 / v0), std::move(locus)};
}

}  // namespace detail

/// Extremal map from the normalised triangle of z0 onto that of z1 for z1 in
/// the v-backward pencil of z0, built from the contraction pair associated
/// with vertex x (x != v). For v != a the construction runs in the frame
/// where v is relabelled a and is conjugated back by congruences.
inline BackwardMap backward_extremal_construction(const ShapePoint& z0, const ShapePoint& z1,
                                                  Vertex x, Vertex v = Vertex::a)
{
    if (!is_acute(z0)) throw Error(ErrorCode::outside_domain, "backward maps need acute z0");
    if (x == v) throw Error(ErrorCode::invalid_argument, "contraction vertex must differ from the pencil vertex");
    if (!backward_pencil_membership(z0, z1, v)) {
        throw Error(ErrorCode::outside_domain, "target is not in the backward pencil");
    }
    const LabelPermutation sigma = to_vertex_a(v);
    const ShapePoint z0a = apply_label_permutation(z0, sigma);
    const ShapePoint z1a = apply_label_permutation(z1, sigma);
    BackwardMap bm = detail::backward_a_frame(z0a, z1a, sigma(x));
    if (v != Vertex::a) {
        bm.map = detail::conjugate_back(v, bm.map, z0, z1a);
        if (bm.locus) {
            bm.locus = stretch_locus(z0, LocusSpec::F(v, x, bm.locus->spec.theta));
        }
    }
    return bm;
}

inline PLMap backward_extremal_map(const ShapePoint& z0, const ShapePoint& z1, Vertex x,
                                   Vertex v = Vertex::a)
{
    return backward_extremal_construction(z0, z1, x, v).map;
}

}  // namespace tritei
