#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tritei
{

/// Planar points and tangent vectors are complex numbers (x + iy).
using Point = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Vertex labels of a marked triangle.
enum class Vertex { a = 0, b = 1, c = 2 };

inline constexpr std::array<Vertex, 3> kVertices{Vertex::a, Vertex::b, Vertex::c};

constexpr int index(Vertex v) { return static_cast<int>(v); }

constexpr char name(Vertex v) { return "abc"[index(v)]; }

inline Vertex parse_vertex(std::string_view s);

/// The two labels different from v, in cyclic order (v, next, after).
constexpr Vertex next(Vertex v) { return static_cast<Vertex>((index(v) + 1) % 3); }
constexpr Vertex after(Vertex v) { return static_cast<Vertex>((index(v) + 2) % 3); }

/// One value per vertex label.
template <class T>
struct PerVertex
{
    T a{}, b{}, c{};

    constexpr T& operator[](Vertex v) { return v == Vertex::a ? a : v == Vertex::b ? b : c; }
    constexpr const T& operator[](Vertex v) const
    {
        return v == Vertex::a ? a : v == Vertex::b ? b : c;
    }
};

/// Stable machine-readable error codes surfaced by the library and the CLI.
enum class ErrorCode {
    degenerate_triangle,
    clockwise_triangle,
    not_in_upper_half_plane,
    outside_domain,
    no_classification,
    invalid_argument,
    not_a_transposition,
    empty_map,
    parse_error,
};

constexpr std::string_view to_string(ErrorCode code)
{
    switch (code) {
        case ErrorCode::degenerate_triangle: return "degenerate_triangle";
        case ErrorCode::clockwise_triangle: return "clockwise_triangle";
        case ErrorCode::not_in_upper_half_plane: return "not_in_upper_half_plane";
        case ErrorCode::outside_domain: return "outside_domain";
        case ErrorCode::no_classification: return "no_classification";
        case ErrorCode::invalid_argument: return "invalid_argument";
        case ErrorCode::not_a_transposition: return "not_a_transposition";
        case ErrorCode::empty_map: return "empty_map";
        case ErrorCode::parse_error: return "parse_error";
    }
    return "unknown";
}

/** @brief Exception carrying a stable error code */
class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_{code} {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline Vertex parse_vertex(std::string_view s)
{
    if (s == "a") return Vertex::a;
    if (s == "b") return Vertex::b;
    if (s == "c") return Vertex::c;
    throw Error(ErrorCode::parse_error, "unknown vertex label '" + std::string(s) + "'");
}

/// Signed area of the triangle (p, q, r); positive for counter-clockwise order.
inline double signed_area(Point p, Point q, Point r)
{
    const Point u = q - p;
    const Point w = r - p;
    return 0.5 * (u.real() * w.imag() - u.imag() * w.real());
}

inline double cross(Point u, Point w) { return u.real() * w.imag() - u.imag() * w.real(); }
inline double dot(Point u, Point w) { return u.real() * w.real() + u.imag() * w.imag(); }

}  // namespace tritei
