#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "tritei/core.hpp"
#include "tritei/moduli.hpp"
#include "tritei/triangle.hpp"

namespace tritei
{

/// Lipschitz constant of the label-preserving affine map between the
/// normalised triangles of z1 and z2.
inline double affine_lipschitz_constant(const ShapePoint& z1, const ShapePoint& z2)
{
    const Point a = z1.value();
    const Point b = z2.value();
    return (std::abs(b - std::conj(a)) + std::abs(b - a)) / (2.0 * std::sqrt(a.imag() * b.imag()));
}

struct DistanceReport
{
    double d;
    PairClass pair_class;
    Vertex formula;  // vertex whose closed form produced d
};

/// Closed-form Lipschitz distance for a classified pair (z acute, w in the
/// closed acute region). The class is conjugated to vertex a, where the
/// distance is half the absolute log-ratio of imaginary parts.
inline DistanceReport lipschitz_distance_report(const ShapePoint& z, const ShapePoint& w)
{
    const PairClass cls = classify_pair(z, w);
    const Point zc = conjugate_to_a(cls.vertex, z.value());
    const Point wc = conjugate_to_a(cls.vertex, w.value());
    return {0.5 * std::abs(std::log(wc.imag() / zc.imag())), cls, cls.vertex};
}

inline double lipschitz_distance(const ShapePoint& z, const ShapePoint& w)
{
    return lipschitz_distance_report(z, w).d;
}

/// Log of the largest ratio among the three edge lengths and the three
/// altitudes of the two unit-area triangles (both directions).
inline double max_ratio_distance(const ShapePoint& z, const ShapePoint& w)
{
    const auto ez = edge_lengths(normalized_triangle(z));
    const auto ew = edge_lengths(normalized_triangle(w));
    double best = 1.0;
    for (Vertex v : kVertices) {
        const double rho = ew[v] / ez[v];
        best = std::max({best, rho, 1.0 / rho});
    }
    return std::log(best);
}

/// Finsler norm of the tangent vector u at the acute point z0.
inline double finsler_norm(const ShapePoint& z0, Point u)
{
    if (!is_acute(z0)) throw Error(ErrorCode::outside_domain, "Finsler norm needs acute z0");
    if (u == Point{0.0, 0.0}) return 0.0;
    const double growth = u.imag() / z0.im();
    switch (sector_of(z0, u).vertex) {
        case Vertex::a: return 0.5 * std::abs(growth);
        case Vertex::b: return 0.5 * std::abs(growth - 2.0 * (u / (z0.value() - 1.0)).real());
        case Vertex::c: return 0.5 * std::abs(growth - 2.0 * (u / z0.value()).real());
    }
    return 0.0;
}

/// Finsler unit sphere: a centrally symmetric hexagon in cyclic order.
struct Hexagon
{
    std::array<Point, 6> vertices;
};

inline Hexagon unit_ball_hexagon(const ShapePoint& z0)
{
    if (!is_acute(z0)) throw Error(ErrorCode::outside_domain, "unit ball needs acute z0");
    const Point z = z0.value();
    const Point v1 = 2.0 * z;
    const Point v2 = 2.0 * (z - 1.0);
    const Point v3 = 2.0 * z * (z - 1.0);
    return {{v1, v2, v3, -v1, -v2, -v3}};
}

/// Linear invariant of a centrally symmetric hexagon v1..v6 relative to a
/// starting vertex and orientation: coefficients (alpha, beta) with
/// v3 = alpha v1 + beta v2 after relabelling.
inline std::array<std::array<double, 2>, 12> hexagon_linear_invariants(const Hexagon& h)
{
    std::array<std::array<double, 2>, 12> out{};
    for (int dir = 0; dir < 2; ++dir) {
        for (int s = 0; s < 6; ++s) {
            auto at = [&](int k) {
                const int i = dir == 0 ? (s + k) % 6 : (s - k + 12) % 6;
                return h.vertices[static_cast<std::size_t>(i)];
            };
            const Point p = at(0), q = at(1), r = at(2);
            const double det = cross(p, q);
            out[static_cast<std::size_t>(dir * 6 + s)] = {cross(r, q) / det, cross(p, r) / det};
        }
    }
    return out;
}

/// Whether some linear map carries one hexagon onto the other, i.e. whether
/// the two Finsler tangent spaces are linearly isometric.
inline bool hexagons_linearly_equivalent(const Hexagon& h0, const Hexagon& h1, double tol = 1e-9)
{
    const auto inv0 = hexagon_linear_invariants(h0);
    const auto ref = hexagon_linear_invariants(h1)[0];
    return std::any_of(inv0.begin(), inv0.end(), [&](const auto& p) {
        return std::abs(p[0] - ref[0]) <= tol && std::abs(p[1] - ref[1]) <= tol;
    });
}

struct GeodesicPath
{
    std::vector<ShapePoint> points;
};

/// Straight-segment geodesic in the frame where the pair's class sits at
/// vertex a, sampled at n + 1 points and mapped back.
inline GeodesicPath geodesic_path(const ShapePoint& z, const ShapePoint& w, int n)
{
    if (n < 1) throw Error(ErrorCode::invalid_argument, "geodesic needs n >= 1 segments");
    const PairClass cls = classify_pair(z, w);
    const Point zc = conjugate_to_a(cls.vertex, z.value());
    const Point wc = conjugate_to_a(cls.vertex, w.value());
    GeodesicPath path;
    path.points.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / n;
        const Point p = i == 0 ? zc : i == n ? wc : zc + t * (wc - zc);
        path.points.emplace_back(i == 0 ? z.value()
                                 : i == n ? w.value()
                                          : conjugate_to_a(cls.vertex, p));
    }
    return path;
}

/// Sum of closed-form distances along consecutive path points.
inline double path_length(const GeodesicPath& path)
{
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < path.points.size(); ++i) {
        if (path.points[i] == path.points[i + 1]) continue;
        total += lipschitz_distance(path.points[i], path.points[i + 1]);
    }
    return total;
}

}  // namespace tritei
