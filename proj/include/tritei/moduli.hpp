#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "tritei/core.hpp"
#include "tritei/linalg.hpp"
#include "tritei/plmap.hpp"
#include "tritei/triangle.hpp"

namespace tritei
{

/// Slack used for closed-set membership tests (k-witnesses, arguments,
/// defining quantities of the acute region).
inline constexpr double kMembershipTol = 1e-12;

// ---------------------------------------------------------------------------
// Label permutations

/// Element of S_3 stored as the image of each label. Acting on a marked
/// triangle, sigma relabels the v-vertex as sigma(v).
class LabelPermutation
{
public:
    constexpr LabelPermutation() = default;
    constexpr explicit LabelPermutation(PerVertex<Vertex> image) : image_{image} {}

    static constexpr LabelPermutation identity() { return {}; }

    static constexpr LabelPermutation transposition(Vertex x, Vertex y)
    {
        PerVertex<Vertex> im{Vertex::a, Vertex::b, Vertex::c};
        im[x] = y;
        im[y] = x;
        return LabelPermutation{im};
    }

    /// "id", "ab", "ac", "bc", "abc" (a->b->c->a), "acb" (a->c->b->a).
    static LabelPermutation parse(std::string_view s)
    {
        if (s == "id") return identity();
        if (s == "ab" || s == "ba") return transposition(Vertex::a, Vertex::b);
        if (s == "ac" || s == "ca") return transposition(Vertex::a, Vertex::c);
        if (s == "bc" || s == "cb") return transposition(Vertex::b, Vertex::c);
        if (s == "abc" || s == "bca" || s == "cab") {
            return LabelPermutation{{Vertex::b, Vertex::c, Vertex::a}};
        }
        if (s == "acb" || s == "cba" || s == "bac") {
            return LabelPermutation{{Vertex::c, Vertex::a, Vertex::b}};
        }
        throw Error(ErrorCode::parse_error, "unknown permutation '" + std::string(s) + "'");
    }

    static std::array<LabelPermutation, 6> all()
    {
        return {parse("id"), parse("ab"), parse("ac"), parse("bc"), parse("abc"), parse("acb")};
    }

    constexpr Vertex operator()(Vertex v) const { return image_[v]; }

    /// (*this) o other
    constexpr LabelPermutation compose(const LabelPermutation& other) const
    {
        return LabelPermutation{
            {image_[other(Vertex::a)], image_[other(Vertex::b)], image_[other(Vertex::c)]}};
    }

    constexpr LabelPermutation inverse() const
    {
        PerVertex<Vertex> inv{};
        for (Vertex v : kVertices) inv[image_[v]] = v;
        return LabelPermutation{inv};
    }

    constexpr int fixed_points() const
    {
        int n = 0;
        for (Vertex v : kVertices) n += image_[v] == v ? 1 : 0;
        return n;
    }

    constexpr bool is_identity() const { return fixed_points() == 3; }
    constexpr bool is_transposition() const { return fixed_points() == 1; }

    std::string name() const
    {
        if (is_identity()) return "id";
        if (is_transposition()) {
            std::string s;
            for (Vertex v : kVertices) {
                if (image_[v] != v) s += tritei::name(v);
            }
            return s;
        }
        return image_[Vertex::a] == Vertex::b ? "abc" : "acb";
    }

    friend constexpr bool operator==(const LabelPermutation& x, const LabelPermutation& y)
    {
        return x.image_.a == y.image_.a && x.image_.b == y.image_.b && x.image_.c == y.image_.c;
    }

private:
    PerVertex<Vertex> image_{Vertex::a, Vertex::b, Vertex::c};
};

// ---------------------------------------------------------------------------
// Anti-Moebius action on the half-plane

inline Point omega_ab(Point z)
{
    const Point zb = std::conj(z);
    return zb / (zb - 1.0);
}
inline Point omega_ac(Point z) { return 1.0 / std::conj(z); }
inline Point omega_bc(Point z) { return 1.0 - std::conj(z); }

inline Point apply_label_permutation(Point z, const LabelPermutation& sigma)
{
    const std::string n = sigma.name();
    if (n == "id") return z;
    if (n == "ab") return omega_ab(z);
    if (n == "ac") return omega_ac(z);
    if (n == "bc") return omega_bc(z);
    if (n == "abc") return omega_ac(omega_ab(z));  // (a b c) = (a c)(a b)
    return omega_ab(omega_ac(z));                  // (a c b) = (a b)(a c)
}

inline ShapePoint apply_label_permutation(const ShapePoint& z, const LabelPermutation& sigma)
{
    return ShapePoint{apply_label_permutation(z.value(), sigma)};
}

/// The transposition carrying vertex v to a (identity for v = a).
inline LabelPermutation to_vertex_a(Vertex v)
{
    return v == Vertex::a ? LabelPermutation::identity()
                          : LabelPermutation::transposition(Vertex::a, v);
}

/// Conjugation used to reduce vertex-v questions to vertex a. Involutive.
inline Point conjugate_to_a(Vertex v, Point z)
{
    switch (v) {
        case Vertex::a: return z;
        case Vertex::b: return omega_ab(z);
        case Vertex::c: return omega_ac(z);
    }
    return z;
}

inline ShapePoint conjugate_to_a(Vertex v, const ShapePoint& z)
{
    return ShapePoint{conjugate_to_a(v, z.value())};
}

/// Orientation-reversing congruence from the normalised triangle of z onto
/// that of sigma(z), carrying each labelled vertex to its relabelled image.
inline PLMap congruence_map(const ShapePoint& z, const LabelPermutation& sigma)
{
    if (!sigma.is_transposition()) {
        throw Error(ErrorCode::not_a_transposition, "congruence maps exist for transpositions");
    }
    const Point z0 = z.value();
    const double s = normalization_scale(z);
    Affine2 r;
    const std::string n = sigma.name();
    if (n == "ab") {
        const Point u = std::abs(z0 - 1.0) / (std::conj(z0) - 1.0);
        r = {Mat2::from_complex(0.0, -u), u * s + s * std::abs(z0 - 1.0)};
    } else if (n == "ac") {
        r = {Mat2::from_complex(0.0, std::abs(z0) / std::conj(z0)), 0.0};
    } else {
        r = {Mat2::from_complex(0.0, -1.0), Point{s, 0.0}};
    }
    return PLMap::affine(normalized_triangle(z), r);
}

// ---------------------------------------------------------------------------
// Pencils and backward pencils

enum class PencilKind { pencil, backward };

/// Stretch parameters (k1, k2) of a point of a pencil, in the frame where the
/// pencil vertex is a.
struct Witness
{
    double k1;
    double k2;
};

struct PairClass
{
    Vertex vertex{Vertex::a};
    PencilKind kind{PencilKind::pencil};
    std::optional<Witness> witness;  // present iff kind == pencil
};

namespace detail
{

inline double clamp_unit(double k, double tol)
{
    if (k < 0.0 && k >= -tol) return 0.0;
    if (k > 1.0 && k <= 1.0 + tol) return 1.0;
    return k;
}

inline std::optional<Witness> pencil_witness_a(Point z, Point w, double tol)
{
    const double x0 = z.real(), y0 = z.imag();
    const double x = w.real(), y = w.imag();
    const double k1 = clamp_unit(x * y0 / (x0 * y), tol);
    const double k2 = clamp_unit((1.0 - x) * y0 / ((1.0 - x0) * y), tol);
    if (k1 < 0.0 || k1 > 1.0 || k2 < 0.0 || k2 > 1.0) return std::nullopt;
    if (k1 == 0.0 && k2 == 0.0) return std::nullopt;
    return Witness{k1, k2};
}

inline bool backward_a(Point z, Point w, double tol)
{
    return in_closed_acute(ShapePoint{w}, tol) && std::arg(w) <= std::arg(z) + tol &&
           std::arg(w - 1.0) >= std::arg(z - 1.0) - tol;
}

}  // namespace detail

/// Witness (k1, k2) when w lies in the v-pencil of z; nullopt otherwise.
inline std::optional<Witness> pencil_membership(const ShapePoint& z, const ShapePoint& w, Vertex v,
                                                double tol = kMembershipTol)
{
    if (!in_vertex_domain(z, v)) {
        throw Error(ErrorCode::outside_domain,
                    std::string("pencil base point must be acute, right or obtuse at ") + name(v));
    }
    return detail::pencil_witness_a(conjugate_to_a(v, z.value()), conjugate_to_a(v, w.value()),
                                    tol);
}

/// Whether w lies in the v-backward pencil of the acute point z.
inline bool backward_pencil_membership(const ShapePoint& z, const ShapePoint& w, Vertex v,
                                       double tol = kMembershipTol)
{
    if (!is_acute(z)) throw Error(ErrorCode::outside_domain, "backward pencils need acute z");
    return detail::backward_a(conjugate_to_a(v, z.value()), conjugate_to_a(v, w.value()), tol);
}

/// First match in the order a-P, a-BP, b-P, b-BP, c-P, c-BP; nullopt if none.
inline std::optional<PairClass> try_classify_pair(const ShapePoint& z, const ShapePoint& w,
                                                  double tol = kMembershipTol)
{
    if (!is_acute(z)) {
        throw Error(ErrorCode::outside_domain, "classification needs an acute base point");
    }
    if (!in_closed_acute(w, tol)) {
        throw Error(ErrorCode::outside_domain,
                    "classification needs w in the closed acute region");
    }
    for (Vertex v : kVertices) {
        if (auto k = pencil_membership(z, w, v, tol)) return PairClass{v, PencilKind::pencil, k};
        if (backward_pencil_membership(z, w, v, tol)) {
            return PairClass{v, PencilKind::backward, std::nullopt};
        }
    }
    return std::nullopt;
}

inline PairClass classify_pair(const ShapePoint& z, const ShapePoint& w,
                               double tol = kMembershipTol)
{
    if (auto c = try_classify_pair(z, w, tol)) return *c;
    throw Error(ErrorCode::no_classification, "pair lies in no pencil or backward pencil");
}

// ---------------------------------------------------------------------------
// Tangent sectors

/// One of the six sectors S_v / S_v^B of the tangent plane at an acute point.
struct SectorTag
{
    Vertex vertex{Vertex::a};
    bool backward{false};

    std::string name() const
    {
        return std::string("S_") + tritei::name(vertex) + (backward ? "^B" : "");
    }
    friend bool operator==(const SectorTag&, const SectorTag&) = default;
};

/// Sector of direction u at z0. With t1 = arg z0 and t2 = arg(z0 - 1) the
/// boundaries are t1, t2, t1 + t2 (mod pi); a boundary ray belongs to the
/// earlier sector in the order S_a, S_b^B, S_c, S_a^B, S_b, S_c^B.
inline SectorTag sector_of(const ShapePoint& z0, Point u)
{
    if (!is_acute(z0)) throw Error(ErrorCode::outside_domain, "sectors need an acute base point");
    if (u == Point{0.0, 0.0}) throw Error(ErrorCode::invalid_argument, "zero tangent vector");
    const double t1 = std::arg(z0.value());
    const double t2 = std::arg(z0.value() - 1.0);
    double phi = std::fmod(std::arg(u) - t1 + 4.0 * kPi, 2.0 * kPi);
    phi += t1;
    const std::array<std::pair<double, SectorTag>, 6> table{{
        {t2, {Vertex::a, false}},
        {t1 + t2, {Vertex::b, true}},
        {t1 + kPi, {Vertex::c, false}},
        {t2 + kPi, {Vertex::a, true}},
        {t1 + t2 + kPi, {Vertex::b, false}},
        {t1 + 2.0 * kPi, {Vertex::c, true}},
    }};
    // Rays within roundoff of a boundary go to the earlier sector.
    constexpr double eps = 1e-12;
    if (phi > t1 + 2.0 * kPi - eps) phi -= 2.0 * kPi;
    for (const auto& [upper, tag] : table) {
        if (phi <= upper + eps) return tag;
    }
    return {Vertex::c, true};
}

/// Hyperbolic distance -log tan(theta / 2) between a geodesic and the
/// hypercycle meeting the boundary at angle theta.
inline double hypercycle_distance(double theta)
{
    if (!(theta > 0.0 && theta <= kPi / 2)) {
        throw Error(ErrorCode::invalid_argument, "hypercycle angle must lie in (0, pi/2]");
    }
    return -std::log(std::tan(theta / 2.0));
}

}  // namespace tritei
