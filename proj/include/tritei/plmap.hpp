#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "tritei/core.hpp"
#include "tritei/linalg.hpp"
#include "tritei/triangle.hpp"

namespace tritei
{

/// One affine piece of a piecewise-affine map: a counter-clockwise source
/// triangle and the affine map applied on it. `conj` marks orientation
/// reversing pieces; the matrix always holds the full real-linear part.
struct Piece
{
    std::array<Point, 3> tri;
    Affine2 map;
    bool conj{false};

    Point operator()(Point p) const { return map(p); }
    double source_area() const { return signed_area(tri[0], tri[1], tri[2]); }
};

namespace detail
{

inline double polygon_area(const std::vector<Point>& poly)
{
    double s = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        s += cross(poly[i], poly[(i + 1) % poly.size()]);
    }
    return 0.5 * s;
}

/// Sutherland-Hodgman clip of a polygon against a counter-clockwise triangle.
inline std::vector<Point> clip_to_triangle(std::vector<Point> poly, const std::array<Point, 3>& tri)
{
    for (int e = 0; e < 3 && !poly.empty(); ++e) {
        const Point p = tri[e];
        const Point q = tri[(e + 1) % 3];
        const double len = std::abs(q - p);
        auto side = [&](Point x) { return cross(q - p, x - p) / len; };
        std::vector<Point> out;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const Point cur = poly[i];
            const Point nxt = poly[(i + 1) % poly.size()];
            const double sc = side(cur);
            const double sn = side(nxt);
            const bool in_c = sc >= 0.0;
            const bool in_n = sn >= 0.0;
            if (in_c) out.push_back(cur);
            if (in_c != in_n) {
                const double t = sc / (sc - sn);
                out.push_back(cur + t * (nxt - cur));
            }
        }
        poly = std::move(out);
    }
    return poly;
}

/// Removes near-duplicate consecutive vertices and collinear spikes.
inline std::vector<Point> simplify(const std::vector<Point>& poly, double tol)
{
    std::vector<Point> out;
    for (const Point& p : poly) {
        if (out.empty() || std::abs(p - out.back()) > tol) out.push_back(p);
    }
    while (out.size() > 1 && std::abs(out.front() - out.back()) <= tol) out.pop_back();
    bool changed = true;
    while (changed && out.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < out.size(); ++i) {
            const Point a = out[(i + out.size() - 1) % out.size()];
            const Point b = out[i];
            const Point c = out[(i + 1) % out.size()];
            const double scale = std::max(std::abs(c - a), tol);
            if (std::abs(cross(b - a, c - a)) / scale <= tol) {
                out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    return out;
}

inline std::array<Point, 3> ccw(std::array<Point, 3> t)
{
    if (signed_area(t[0], t[1], t[2]) < 0.0) std::swap(t[1], t[2]);
    return t;
}

}  // namespace detail

/// A piecewise-affine planar map on a triangulated domain.
class PLMap
{
public:
    PLMap() = default;
    explicit PLMap(std::vector<Piece> pieces) : pieces_{std::move(pieces)}
    {
        for (auto& p : pieces_) p.conj = p.map.lin.det() < 0.0;
    }

    /// Single-piece map defined on a triangle.
    static PLMap affine(const std::array<Point, 3>& tri, const Affine2& map)
    {
        return PLMap{{Piece{detail::ccw(tri), map, false}}};
    }

    static PLMap affine(const LabeledTriangle& t, const Affine2& map)
    {
        return affine(std::array<Point, 3>{t.va(), t.vb(), t.vc()}, map);
    }

    const std::vector<Piece>& pieces() const { return pieces_; }
    bool empty() const { return pieces_.empty(); }
    std::size_t size() const { return pieces_.size(); }

    double domain_area() const
    {
        double s = 0.0;
        for (const auto& p : pieces_) s += p.source_area();
        return s;
    }

    /// Index of the first piece containing p (barycentric slack tol).
    std::optional<std::size_t> locate(Point p, double tol = 1e-12) const
    {
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            const auto& t = pieces_[i].tri;
            const double a = signed_area(t[0], t[1], t[2]);
            const double l0 = signed_area(p, t[1], t[2]) / a;
            const double l1 = signed_area(t[0], p, t[2]) / a;
            const double l2 = signed_area(t[0], t[1], p) / a;
            if (l0 >= -tol && l1 >= -tol && l2 >= -tol) return i;
        }
        return std::nullopt;
    }

    /// Evaluate at a domain point.
    Point operator()(Point p) const
    {
        const auto i = locate(p, 1e-9);
        if (!i) throw Error(ErrorCode::outside_domain, "point outside the map's domain");
        return pieces_[*i](p);
    }

private:
    std::vector<Piece> pieces_;
};

/// outer o inner. Pieces of the result are the intersections of inner
/// pieces with preimages of outer pieces. When outer has a single piece it
/// is applied globally; otherwise inner pieces must be invertible.
inline PLMap compose(const PLMap& outer, const PLMap& inner)
{
    if (outer.empty() || inner.empty()) throw Error(ErrorCode::empty_map, "empty map");
    std::vector<Piece> out;
    if (outer.size() == 1) {
        const Affine2& g = outer.pieces().front().map;
        for (const auto& p : inner.pieces()) out.push_back({p.tri, g.compose(p.map), false});
        return PLMap{std::move(out)};
    }
    const bool onto_outer =
        inner.size() == 1 &&
        std::abs(std::abs(inner.pieces().front().map.lin.det()) * inner.domain_area() -
                 outer.domain_area()) <= 1e-12 * outer.domain_area();
    if (onto_outer) {
        // inner maps its triangle onto the whole outer domain, so preimages
        // of outer pieces are exact triangles
        const Affine2& f = inner.pieces().front().map;
        const Affine2 f_inv = f.inverse();
        for (const auto& q : outer.pieces()) {
            std::array<Point, 3> tri{f_inv(q.tri[0]), f_inv(q.tri[1]), f_inv(q.tri[2])};
            out.push_back({detail::ccw(tri), q.map.compose(f), false});
        }
        return PLMap{std::move(out)};
    }
    double scale = 0.0;
    for (const auto& p : inner.pieces()) {
        for (const auto& v : p.tri) scale = std::max(scale, std::abs(v));
    }
    const double tol = 1e-13 * std::max(scale, 1.0);
    for (const auto& p : inner.pieces()) {
        const Affine2 f = p.map;
        const Affine2 f_inv = f.inverse();
        const std::vector<Point> image{f(p.tri[0]), f(p.tri[1]), f(p.tri[2])};
        for (const auto& q : outer.pieces()) {
            std::vector<Point> poly = detail::clip_to_triangle(
                signed_area(image[0], image[1], image[2]) < 0.0
                    ? std::vector<Point>{image[0], image[2], image[1]}
                    : image,
                q.tri);
            poly = detail::simplify(poly, tol);
            if (poly.size() < 3 || std::abs(detail::polygon_area(poly)) <= tol * tol) continue;
            for (auto& v : poly) v = f_inv(v);
            if (detail::polygon_area(poly) < 0.0) std::reverse(poly.begin(), poly.end());
            const Affine2 g = q.map.compose(f);
            for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
                out.push_back({{poly[0], poly[k], poly[k + 1]}, g, false});
            }
        }
    }
    return PLMap{std::move(out)};
}

/// Largest disagreement between the affine extensions of pieces that share
/// (part of) an edge, sampled at `samples` points of each overlap.
inline double max_seam_mismatch(const PLMap& m, int samples = 100)
{
    double worst = 0.0;
    const auto& ps = m.pieces();
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            for (int ei = 0; ei < 3; ++ei) {
                const Point p0 = ps[i].tri[ei];
                const Point p1 = ps[i].tri[(ei + 1) % 3];
                const Point d = p1 - p0;
                const double len = std::abs(d);
                if (len == 0.0) continue;
                for (int ej = 0; ej < 3; ++ej) {
                    const Point q0 = ps[j].tri[ej];
                    const Point q1 = ps[j].tri[(ej + 1) % 3];
                    const double tol = 1e-10 * len;
                    if (std::abs(cross(d, q0 - p0)) / len > tol) continue;
                    if (std::abs(cross(d, q1 - p0)) / len > tol) continue;
                    const double s0 = dot(q0 - p0, d) / (len * len);
                    const double s1 = dot(q1 - p0, d) / (len * len);
                    const double lo = std::max(0.0, std::min(s0, s1));
                    const double hi = std::min(1.0, std::max(s0, s1));
                    if (hi - lo <= 1e-9) continue;
                    for (int k = 0; k < samples; ++k) {
                        const double s = lo + (hi - lo) * (k + 0.5) / samples;
                        const Point x = p0 + s * d;
                        worst = std::max(worst, std::abs(ps[i](x) - ps[j](x)));
                    }
                }
            }
        }
    }
    return worst;
}

}  // namespace tritei
