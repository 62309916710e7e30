#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tritei/core.hpp"
#include "tritei/maps.hpp"
#include "tritei/metric.hpp"
#include "tritei/moduli.hpp"
#include "tritei/triangle.hpp"

namespace tritei::svg
{

/// Versioned colours and stroke proportions. Widths are fractions of the
/// padded view diagonal.
struct Style
{
    int version{1};
    std::string outline;
    std::string context;
    std::string accent;
    std::string foliated;
    std::string expanding;
    std::string complement;
    std::string hatch;
    std::string background;
    double stroke{0.004};
    double thin{0.002};
    double dash{0.015};
    double marker{0.008};
    double font{0.03};
};

inline Style style_table(int version)
{
    switch (version) {
        case 1:
            return {1, "#1f2937", "#9ca3af", "#dc2626", "#bfdbfe", "#fecaca", "#e5e7eb",
                    "#1d4ed8", "#ffffff", 0.004, 0.002, 0.015, 0.008, 0.03};
        case 2:
            return {2, "#000000", "#808080", "#000000", "#d9d9d9", "#a6a6a6", "#f2f2f2",
                    "#404040", "#ffffff", 0.005, 0.0025, 0.02, 0.01, 0.03};
        default:
            throw Error(ErrorCode::invalid_argument, "unknown SVG style version " + std::to_string(version));
    }
}

/// Style selected by TRITEI_STYLE (unset or empty selects version 1).
inline Style style_from_env()
{
    const char* env = std::getenv("TRITEI_STYLE");
    if (!env || !*env) return style_table(1);
    const std::string s(env);
    if (s == "1") return style_table(1);
    if (s == "2") return style_table(2);
    throw Error(ErrorCode::invalid_argument, "unknown TRITEI_STYLE '" + s + "'");
}

/// World-coordinate drawing surface: elements are collected first so the
/// padded bounding box and the stroke scale are known when rendering.
class Canvas
{
public:
    explicit Canvas(Style style) : style_{std::move(style)} {}

    const Style& style() const { return style_; }

    void polygon(const std::vector<Point>& pts, std::string fill, std::string stroke, double width)
    {
        add({Kind::path, pts, true, std::move(fill), std::move(stroke), width, false, 0.0, {}});
    }

    void polyline(const std::vector<Point>& pts, std::string stroke, double width, bool dashed = false)
    {
        add({Kind::path, pts, false, "none", std::move(stroke), width, dashed, 0.0, {}});
    }

    void marker(Point p, std::string fill, double radius)
    {
        add({Kind::circle, {p}, false, std::move(fill), "none", 0.0, false, radius, {}});
    }

    void label(Point p, std::string text)
    {
        add({Kind::text, {p}, false, style_.outline, "none", 0.0, false, 0.0, std::move(text)});
    }

    /// Bounding box of everything drawn so far: xmin, ymin, xmax, ymax.
    std::array<double, 4> bounds() const { return box_; }

    std::string render() const
    {
        double x0 = box_[0], y0 = box_[1], x1 = box_[2], y1 = box_[3];
        if (!(x1 >= x0)) x0 = y0 = -1.0, x1 = y1 = 1.0;
        double w = x1 - x0, h = y1 - y0;
        const double side = std::max({w, h, 1e-9});
        if (w < 1e-9 * side) w = 0.1 * side, x0 -= 0.5 * w;
        if (h < 1e-9 * side) h = 0.1 * side, y0 -= 0.5 * h;
        const double px = 0.1 * w, py = 0.1 * h;
        x0 -= px, y0 -= py, w += 2 * px, h += 2 * py;
        const double diag = std::hypot(w, h);

        std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + num(x0) + " " + num(-(y0 + h)) + " " +
               num(w) + " " + num(h) + "\" data-style=\"" + std::to_string(style_.version) + "\">\n";
        out += "<rect x=\"" + num(x0) + "\" y=\"" + num(-(y0 + h)) + "\" width=\"" + num(w) + "\" height=\"" +
               num(h) + "\" fill=\"" + style_.background + "\"/>\n";
        for (const auto& e : items_) {
            switch (e.kind) {
                case Kind::path: {
                    std::string d;
                    for (std::size_t i = 0; i < e.pts.size(); ++i) {
                        d += (i == 0 ? "M" : " L") + num(e.pts[i].real()) + " " + num(-e.pts[i].imag());
                    }
                    if (e.closed) d += " Z";
                    out += "<path d=\"" + d + "\" fill=\"" + e.fill + "\" stroke=\"" + e.stroke +
                           "\" stroke-width=\"" + num(e.width * diag) + "\" stroke-linejoin=\"round\"";
                    if (e.dashed) {
                        out += " stroke-dasharray=\"" + num(style_.dash * diag) + " " +
                               num(0.6 * style_.dash * diag) + "\"";
                    }
                    out += "/>\n";
                    break;
                }
                case Kind::circle:
                    out += "<circle cx=\"" + num(e.pts[0].real()) + "\" cy=\"" + num(-e.pts[0].imag()) +
                           "\" r=\"" + num(e.radius * diag) + "\" fill=\"" + e.fill + "\"/>\n";
                    break;
                case Kind::text:
                    out += "<text x=\"" + num(e.pts[0].real()) + "\" y=\"" + num(-e.pts[0].imag()) +
                           "\" font-size=\"" + num(style_.font * diag) + "\" font-family=\"sans-serif\" fill=\"" +
                           e.fill + "\">" + e.text + "</text>\n";
                    break;
            }
        }
        out += "</svg>\n";
        return out;
    }

private:
    enum class Kind { path, circle, text };
    struct Item
    {
        Kind kind;
        std::vector<Point> pts;
        bool closed;
        std::string fill;
        std::string stroke;
        double width;
        bool dashed;
        double radius;
        std::string text;
    };

    static std::string num(double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", v);
        std::string s(buf);
        if (s == "-0.000000") s = "0.000000";
        return s;
    }

    void add(Item item)
    {
        for (const Point& p : item.pts) {
            box_[0] = std::min(box_[0], p.real());
            box_[1] = std::min(box_[1], p.imag());
            box_[2] = std::max(box_[2], p.real());
            box_[3] = std::max(box_[3], p.imag());
        }
        items_.push_back(std::move(item));
    }

    Style style_;
    std::vector<Item> items_;
    std::array<double, 4> box_{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                               -std::numeric_limits<double>::infinity(),
                               -std::numeric_limits<double>::infinity()};
};

namespace detail
{

inline std::vector<Point> sample_segment(Point p, Point q, int n)
{
    std::vector<Point> out;
    for (int i = 0; i <= n; ++i) out.push_back(p + (static_cast<double>(i) / n) * (q - p));
    return out;
}

inline void append(std::vector<Point>& dst, const std::vector<Point>& src)
{
    dst.insert(dst.end(), src.begin() + (dst.empty() ? 0 : 1), src.end());
}

/// The closure of the acute region, truncated at height top.
inline void draw_acute_context(Canvas& c, double top)
{
    const Style& s = c.style();
    c.polyline({Point{0.0, 0.0}, Point{0.0, top}}, s.context, s.thin);
    c.polyline({Point{1.0, 0.0}, Point{1.0, top}}, s.context, s.thin);
    std::vector<Point> arc;
    for (int i = 0; i <= 96; ++i) arc.push_back(0.5 + 0.5 * std::polar(1.0, kPi * i / 96.0));
    c.polyline(arc, s.context, s.thin);
    c.polyline({Point{-0.1, 0.0}, Point{1.1, 0.0}}, s.context, s.thin);
}

/// Part of the line p + t d inside a convex counter-clockwise polygon.
inline std::optional<std::pair<Point, Point>> clip_line(Point p, Point d, const std::vector<Point>& poly)
{
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point a = poly[i];
        const Point e = poly[(i + 1) % poly.size()] - a;
        // inside: cross(e, x - a) >= 0
        const double c0 = cross(e, p - a);
        const double c1 = cross(e, d);
        if (c1 == 0.0) {
            if (c0 < 0.0) return std::nullopt;
            continue;
        }
        const double t = -c0 / c1;
        if (c1 > 0.0) lo = std::max(lo, t);
        else hi = std::min(hi, t);
    }
    if (!(hi > lo)) return std::nullopt;
    return std::pair{p + lo * d, p + hi * d};
}

}  // namespace detail

/// The Finsler unit sphere with its three dashed main diagonals.
inline std::string render_hexagon(const Hexagon& h, const Style& style)
{
    Canvas c(style);
    const std::vector<Point> v(h.vertices.begin(), h.vertices.end());
    c.polygon(v, style.complement, style.outline, style.stroke);
    for (int i = 0; i < 3; ++i) {
        c.polyline({v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i + 3)]}, style.outline,
                   style.thin, true);
    }
    for (const Point& p : v) c.marker(p, style.accent, style.marker);
    c.marker(0.0, style.outline, 0.5 * style.marker);
    return c.render();
}

/// Stretch locus on its normalised triangle: filled regions, leaf hatching
/// in foliated regions and the distinguished points.
inline std::string render_locus(const StretchLocus& l, const Style& style)
{
    Canvas c(style);
    const LabeledTriangle& t = l.triangle;
    const std::vector<Point> tri{t.va(), t.vb(), t.vc()};
    double diag = 0.0;
    for (const Point& p : tri) {
        for (const Point& q : tri) diag = std::max(diag, std::abs(p - q));
    }
    for (const auto& r : l.regions) {
        const std::string& fill = r.role == LocusRegion::Role::foliated    ? style.foliated
                                  : r.role == LocusRegion::Role::expanding ? style.expanding
                                                                           : style.complement;
        c.polygon(r.polygon, fill, style.context, style.thin);
    }
    for (const auto& r : l.regions) {
        if (!r.leaf) continue;
        const Point d = *r.leaf;
        const Point n = d * Point{0.0, 1.0};
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const Point& p : r.polygon) {
            lo = std::min(lo, dot(p, n));
            hi = std::max(hi, dot(p, n));
        }
        const double gap = diag / 30.0;
        for (double s = std::ceil(lo / gap) * gap; s < hi; s += gap) {
            if (auto seg = detail::clip_line(s * n, d, r.polygon)) {
                c.polyline({seg->first, seg->second}, style.hatch, style.thin);
            }
        }
    }
    c.polygon(tri, "none", style.outline, style.stroke);
    for (Vertex v : kVertices) c.label(t.vertex(v), std::string(1, name(v)));
    for (const auto& [key, p] : l.points) {
        c.marker(p, style.accent, style.marker);
        c.label(p, key);
    }
    return c.render();
}

/// Boundary of the closed v-pencil (or v-backward pencil) of z, computed in
/// the frame where v is relabelled a and mapped back.
inline std::vector<Point> pencil_boundary(const ShapePoint& z, Vertex v, PencilKind kind, int samples = 96)
{
    const Point za = conjugate_to_a(v, z.value());
    const double x0 = za.real(), y0 = za.imag();
    std::vector<Point> loop;
    if (kind == PencilKind::pencil) {
        if (!in_vertex_domain(z, v)) throw Error(ErrorCode::outside_domain, "pencil base point outside its domain");
        const Point right = za / x0;
        const Point left{0.0, y0 / (1.0 - x0)};
        const double top = 2.0 * std::max(right.imag(), left.imag());
        detail::append(loop, detail::sample_segment(za, right, samples));
        detail::append(loop, detail::sample_segment(right, Point{1.0, top}, samples));
        detail::append(loop, detail::sample_segment(Point{1.0, top}, Point{0.0, top}, samples));
        detail::append(loop, detail::sample_segment(Point{0.0, top}, left, samples));
        detail::append(loop, detail::sample_segment(left, za, samples));
    } else {
        if (!is_acute(z)) throw Error(ErrorCode::outside_domain, "backward pencils need acute z");
        const Point a = za * (x0 / std::norm(za));
        const Point b = 1.0 + (za - 1.0) * ((1.0 - x0) / std::norm(za - 1.0));
        detail::append(loop, detail::sample_segment(za, a, samples));
        const double pa = std::arg(a - 0.5), pb = std::arg(b - 0.5);
        std::vector<Point> arc;
        for (int i = 0; i <= samples; ++i) arc.push_back(0.5 + 0.5 * std::polar(1.0, pa + (pb - pa) * i / samples));
        detail::append(loop, arc);
        detail::append(loop, detail::sample_segment(b, za, samples));
    }
    for (Point& p : loop) p = conjugate_to_a(v, p);
    return loop;
}

/// Pencil region of z over the acute region. With debug_grid > 0 the
/// region is also sampled on a debug_grid x debug_grid lattice by the
/// membership predicates.
inline std::string render_pencil(const ShapePoint& z, Vertex v, PencilKind kind, const Style& style,
                                 int debug_grid = 0)
{
    Canvas c(style);
    const std::vector<Point> loop = pencil_boundary(z, v, kind);
    double top = 1.0;
    for (const Point& p : loop) top = std::max(top, p.imag());
    top = std::min(top, 8.0 * std::max(1.0, z.im()));
    std::vector<Point> clipped;
    for (const Point& p : loop) clipped.push_back({p.real(), std::min(p.imag(), top)});
    detail::draw_acute_context(c, top);
    c.polygon(clipped, kind == PencilKind::pencil ? style.foliated : style.expanding, style.outline, style.stroke);
    if (debug_grid > 0) {
        const auto box = c.bounds();
        for (int i = 0; i < debug_grid; ++i) {
            for (int j = 0; j < debug_grid; ++j) {
                const Point w{box[0] + (box[2] - box[0]) * (i + 0.5) / debug_grid,
                              box[1] + (box[3] - box[1]) * (j + 0.5) / debug_grid};
                if (!(w.imag() > 0.0)) continue;
                const ShapePoint sw{w};
                bool in = false;
                if (kind == PencilKind::pencil) {
                    in = pencil_membership(z, sw, v).has_value();
                } else {
                    in = in_closed_acute(sw) && backward_pencil_membership(z, sw, v);
                }
                if (in) c.marker(w, style.hatch, 0.3 * style.marker);
            }
        }
    }
    c.marker(z.value(), style.accent, style.marker);
    return c.render();
}

/// Sampled geodesic over the acute region; a single marker when constant.
inline std::string render_geodesic(const GeodesicPath& path, const Style& style)
{
    Canvas c(style);
    double top = 1.0;
    for (const auto& p : path.points) top = std::max(top, 1.1 * p.im());
    detail::draw_acute_context(c, top);
    const bool constant = std::all_of(path.points.begin(), path.points.end(),
                                      [&](const ShapePoint& p) { return p == path.points.front(); });
    if (constant) {
        c.marker(path.points.front().value(), style.accent, style.marker);
    } else {
        std::vector<Point> pts;
        for (const auto& p : path.points) pts.push_back(p.value());
        c.polyline(pts, style.accent, style.stroke);
        c.marker(pts.front(), style.outline, style.marker);
        c.marker(pts.back(), style.outline, style.marker);
    }
    return c.render();
}

}  // namespace tritei::svg
