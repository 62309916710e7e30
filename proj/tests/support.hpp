#pragma once

// Shared samplers and independent reference computations for the tests.
// Nothing here calls into the library code it is meant to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "tritei/tritei.hpp"

namespace tritei::testing
{

class Sampler
{
public:
    explicit Sampler(std::uint64_t seed) : rng_{seed} {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    Vertex vertex() { return kVertices[static_cast<std::size_t>(integer(0, 2))]; }

    /// Acute shape point kept a little away from the region's boundary.
    ShapePoint acute(double margin = 1e-3, double height = 3.0)
    {
        const double x = uniform(0.02, 0.98);
        const double floor = std::sqrt(x * (1.0 - x)) + margin;
        return ShapePoint{x, uniform(floor, floor + height)};
    }

    Point direction() { return std::polar(1.0, uniform(-kPi, kPi)); }

    /// Stretch parameters with neither equal to zero.
    std::pair<double, double> ks()
    {
        return {uniform(0.01, 1.0), uniform(0.01, 1.0)};
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Random acute pair that classifies. Half are stretch targets (either
/// direction) so all three vertices and both kinds show up often.
inline std::pair<ShapePoint, ShapePoint> classified_pair(Sampler& s)
{
    while (true) {
        ShapePoint z = s.acute();
        ShapePoint w = s.acute();
        if (s.integer(0, 1)) {
            const auto [k1, k2] = s.ks();
            w = stretch_target(z, s.vertex(), k1, k2);
            if (!is_acute(w)) continue;
            if (s.integer(0, 1)) std::swap(z, w);
        }
        if (try_classify_pair(z, w)) return {z, w};
    }
}

/// Random pair (z0, z1) with z1 in the v-backward pencil of acute z0, built by
/// stretching z1 at v.
inline std::pair<ShapePoint, ShapePoint> backward_pair(Sampler& s, Vertex v)
{
    while (true) {
        const ShapePoint z1 = s.acute();
        const auto [k1, k2] = s.ks();
        const ShapePoint z = stretch_target(z1, v, k1, k2);
        if (is_acute(z) && backward_pencil_membership(z, z1, v)) return {z, z1};
    }
}

/// Shape parameter from side lengths and the angle at b only:
/// z = (|ba| / |bc|) e^{i angle_b}.
inline Point z_by_cosines(Point a, Point b, Point c)
{
    const double ab = std::abs(a - b), bc = std::abs(c - b), ca = std::abs(a - c);
    const double cos_b = (ab * ab + bc * bc - ca * ca) / (2.0 * ab * bc);
    const double angle_b = std::acos(std::clamp(cos_b, -1.0, 1.0));
    return std::polar(ab / bc, angle_b);
}

/// Shape after renaming: the vertex called w in (z, 0, 1) is called sigma(w)
/// afterwards. Mirrored when the renaming reverses orientation.
inline Point relabelled_shape(Point z, const LabelPermutation& sigma)
{
    PerVertex<Point> old{z, Point{0.0, 0.0}, Point{1.0, 0.0}};
    PerVertex<Point> now{};
    for (Vertex w : kVertices) now[sigma(w)] = old[w];
    const double s = signed_area(now.a, now.b, now.c);
    if (s < 0.0) {
        for (Vertex w : kVertices) now[w] = std::conj(now[w]);
    }
    return z_by_cosines(now.a, now.b, now.c);
}

/// Largest singular value by scanning unit directions.
inline double sigma_max_scan(const Mat2& m, int steps = 20000)
{
    double best = 0.0;
    for (int i = 0; i < steps; ++i) {
        best = std::max(best, std::abs(m * std::polar(1.0, kPi * i / steps)));
    }
    return best;
}

/// Hyperbolic distance from w to the right-at-b geodesic Re z = 0.
inline double dist_to_right_b(Point w) { return std::asinh(std::abs(w.real()) / w.imag()); }
/// Hyperbolic distance from w to the right-at-c geodesic Re z = 1.
inline double dist_to_right_c(Point w) { return std::asinh(std::abs(w.real() - 1.0) / w.imag()); }

/// a-pencil membership written with hyperbolic neighbourhoods of the two
/// right-angle geodesics through the shape z.
inline bool a_pencil_by_neighbourhoods(Point z, Point w)
{
    if (w.real() < 0.0 || w.real() > 1.0) return false;
    return dist_to_right_b(w) <= dist_to_right_b(z) && dist_to_right_c(w) <= dist_to_right_c(z);
}

/// Largest stretch or shrink factor among the three unit-area edges. The
/// altitudes are 2 / edge, so this also covers the altitude ratios.
inline double unit_area_edges_ratio(const ShapePoint& z, const ShapePoint& w)
{
    const LabeledTriangle tz = normalized_triangle(z);
    const LabeledTriangle tw = normalized_triangle(w);
    double best = 0.0;
    for (Vertex v : kVertices) {
        const double ez = std::abs(tz.vertex(next(v)) - tz.vertex(after(v)));
        const double ew = std::abs(tw.vertex(next(v)) - tw.vertex(after(v)));
        best = std::max({best, ew / ez, ez / ew});
    }
    return best;
}

/// Distance of a point to the segment pq.
inline double segment_distance(Point x, Point p, Point q)
{
    const Point d = q - p;
    const double t = std::clamp(dot(x - p, d) / std::norm(d), 0.0, 1.0);
    return std::abs(x - (p + t * d));
}

/// Chord of a convex counter-clockwise polygon through o along direction d.
inline std::optional<std::pair<Point, Point>> chord(const std::vector<Point>& poly, Point o, Point d)
{
    double lo = -1e300, hi = 1e300;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point a = poly[i], b = poly[(i + 1) % poly.size()];
        const double den = cross(b - a, d);
        const double num = cross(b - a, o - a);
        if (std::abs(den) < 1e-15) {
            if (num < 0.0) return std::nullopt;
            continue;
        }
        const double t = -num / den;
        if (den > 0.0) lo = std::max(lo, t);
        else hi = std::min(hi, t);
    }
    if (!(hi > lo)) return std::nullopt;
    return std::pair{o + lo * d, o + hi * d};
}

}  // namespace tritei::testing
