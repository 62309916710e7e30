#pragma once

#include <cmath>
#include <string>

#include "tritei/core.hpp"

namespace tritei
{

/// A point of the upper half-plane: the shape coordinate of a marked
/// triangle, z = (|e_c| / |e_a|) exp(i theta_b).
class ShapePoint
{
public:
    explicit ShapePoint(Point z) : z_{z}
    {
        if (!(z.imag() > 0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw Error(ErrorCode::not_in_upper_half_plane,
                        "shape point must satisfy Im z > 0");
        }
    }
    ShapePoint(double re, double im) : ShapePoint(Point{re, im}) {}

    Point value() const { return z_; }
    double re() const { return z_.real(); }
    double im() const { return z_.imag(); }

    friend bool operator==(const ShapePoint&, const ShapePoint&) = default;

private:
    Point z_;
};

/// Three planar vertices labelled a, b, c in counter-clockwise order.
class LabeledTriangle
{
public:
    LabeledTriangle(Point va, Point vb, Point vc) : v_{va, vb, vc}
    {
        const double s = signed_area(va, vb, vc);
        if (!std::isfinite(s) || s == 0.0) {
            throw Error(ErrorCode::degenerate_triangle, "triangle vertices are collinear");
        }
        if (s < 0.0) {
            throw Error(ErrorCode::clockwise_triangle,
                        "labelled vertices a, b, c must be counter-clockwise");
        }
    }

    Point vertex(Vertex v) const { return v_[v]; }
    Point va() const { return v_.a; }
    Point vb() const { return v_.b; }
    Point vc() const { return v_.c; }

private:
    PerVertex<Point> v_;
};

/// |e_v|: length of the side opposite vertex v.
inline PerVertex<double> edge_lengths(const LabeledTriangle& t)
{
    return {std::abs(t.vc() - t.vb()), std::abs(t.va() - t.vc()), std::abs(t.vb() - t.va())};
}

/// Interior angle at vertex v.
inline double angle_at(const LabeledTriangle& t, Vertex v)
{
    const Point p = t.vertex(v);
    const Point u = t.vertex(next(v)) - p;
    const Point w = t.vertex(after(v)) - p;
    return std::atan2(std::abs(cross(u, w)), dot(u, w));
}

inline PerVertex<double> angles(const LabeledTriangle& t)
{
    return {angle_at(t, Vertex::a), angle_at(t, Vertex::b), angle_at(t, Vertex::c)};
}

inline double area(const LabeledTriangle& t) { return signed_area(t.va(), t.vb(), t.vc()); }

/// h_v = 2 area / |e_v|
inline PerVertex<double> altitudes(const LabeledTriangle& t)
{
    const auto e = edge_lengths(t);
    const double two_area = 2.0 * area(t);
    return {two_area / e.a, two_area / e.b, two_area / e.c};
}

/// Shape coordinate. Computed as (a - b) / (c - b), which equals
/// (|e_c| / |e_a|) exp(i theta_b) for counter-clockwise labels.
inline ShapePoint z_param(const LabeledTriangle& t)
{
    return ShapePoint{(t.va() - t.vb()) / (t.vc() - t.vb())};
}

/// Unit-area normalised position: a = sqrt(2/y) z, b = 0, c = sqrt(2/y).
inline LabeledTriangle normalized_triangle(const ShapePoint& z)
{
    const double s = std::sqrt(2.0 / z.im());
    return {s * z.value(), Point{0.0, 0.0}, Point{s, 0.0}};
}

/// Scale factor sqrt(2 / Im z) of the normalised position.
inline double normalization_scale(const ShapePoint& z) { return std::sqrt(2.0 / z.im()); }

/// The triangle (z, 0, 1) of area Im(z) / 2.
inline LabeledTriangle tilde_triangle(const ShapePoint& z)
{
    return {z.value(), Point{0.0, 0.0}, Point{1.0, 0.0}};
}

/// Label-preserving similarity (about the b-vertex) rescaling t to the given area.
inline LabeledTriangle scaled_to_area(const LabeledTriangle& t, double target_area)
{
    if (!(target_area > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "target area must be positive");
    }
    const double k = std::sqrt(target_area / area(t));
    const Point o = t.vb();
    return {o + k * (t.va() - o), o, o + k * (t.vc() - o)};
}

enum class RegionKind { acute, right, obtuse };

/// Position of a shape point relative to the ideal triangle of acute shapes.
struct RegionTag
{
    RegionKind kind{RegionKind::acute};
    Vertex at{Vertex::a};  // meaningful for right/obtuse

    friend bool operator==(const RegionTag&, const RegionTag&) = default;
};

inline std::string to_string(const RegionTag& tag)
{
    switch (tag.kind) {
        case RegionKind::acute: return "acute";
        case RegionKind::right: return std::string("right_at_") + name(tag.at);
        case RegionKind::obtuse: return std::string("obtuse_at_") + name(tag.at);
    }
    return "acute";
}

/// Classify by the defining quantities Re z, Re z - 1 and |z - 1/2|^2 - 1/4.
/// A quantity within `snap` of zero is treated as zero (right angle).
inline RegionTag classify(const ShapePoint& z, double snap = 0.0)
{
    const double qb = z.re();
    const double qc = z.re() - 1.0;
    const double qa = std::norm(z.value() - 0.5) - 0.25;
    if (std::abs(qb) <= snap) return {RegionKind::right, Vertex::b};
    if (std::abs(qc) <= snap) return {RegionKind::right, Vertex::c};
    if (std::abs(qa) <= snap) return {RegionKind::right, Vertex::a};
    if (qb < 0.0) return {RegionKind::obtuse, Vertex::b};
    if (qc > 0.0) return {RegionKind::obtuse, Vertex::c};
    if (qa < 0.0) return {RegionKind::obtuse, Vertex::a};
    return {RegionKind::acute, Vertex::a};
}

inline bool is_acute(const ShapePoint& z) { return classify(z).kind == RegionKind::acute; }

/// Membership in the closure of the acute region, with slack eps on the
/// defining quantities.
inline bool in_closed_acute(const ShapePoint& z, double eps = 0.0)
{
    return z.re() >= -eps && z.re() <= 1.0 + eps && std::norm(z.value() - 0.5) - 0.25 >= -eps;
}

/// z in T(v): acute, right at v, or obtuse at v.
inline bool in_vertex_domain(const ShapePoint& z, Vertex v, double snap = 0.0)
{
    const RegionTag tag = classify(z, snap);
    return tag.kind == RegionKind::acute || tag.at == v;
}

}  // namespace tritei
