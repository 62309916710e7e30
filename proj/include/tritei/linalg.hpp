#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "tritei/core.hpp"

namespace tritei
{

/// Real 2x2 matrix acting on points of the plane, row-major.
struct Mat2
{
    double m11{1}, m12{0}, m21{0}, m22{1};

    static constexpr Mat2 identity() { return {1, 0, 0, 1}; }
    static constexpr Mat2 diagonal(double d1, double d2) { return {d1, 0, 0, d2}; }

    /// Real-linear map zeta -> alpha*zeta + beta*conj(zeta).
    static Mat2 from_complex(Point alpha, Point beta)
    {
        return {alpha.real() + beta.real(), -alpha.imag() + beta.imag(),
                alpha.imag() + beta.imag(), alpha.real() - beta.real()};
    }

    /// Inverse of from_complex(): the pair (alpha, beta).
    std::pair<Point, Point> complex_parts() const
    {
        return {Point{0.5 * (m11 + m22), 0.5 * (m21 - m12)},
                Point{0.5 * (m11 - m22), 0.5 * (m21 + m12)}};
    }

    double det() const { return m11 * m22 - m12 * m21; }

    Point operator*(Point p) const
    {
        return {m11 * p.real() + m12 * p.imag(), m21 * p.real() + m22 * p.imag()};
    }

    Mat2 operator*(const Mat2& o) const
    {
        return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
                m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
    }

    Mat2 operator*(double s) const { return {m11 * s, m12 * s, m21 * s, m22 * s}; }

    Mat2 inverse() const
    {
        const double d = det();
        if (d == 0.0) throw Error(ErrorCode::invalid_argument, "singular linear part");
        return {m22 / d, -m12 / d, -m21 / d, m11 / d};
    }

    Mat2 transpose() const { return {m11, m21, m12, m22}; }

    /// Singular values (largest, smallest). Uses |alpha| +- |beta|, which is
    /// exact for 2x2 real matrices and stable for nearly isotropic maps.
    std::pair<double, double> singular_values() const
    {
        const auto [alpha, beta] = complex_parts();
        const double ra = std::abs(alpha);
        const double rb = std::abs(beta);
        return {ra + rb, std::abs(ra - rb)};
    }

    double sigma_max() const { return singular_values().first; }
};

/// Top singular pair of a 2x2 matrix: unit vectors u, v with M v = sigma_max u.
struct TopSingular
{
    double sigma;
    Point u;
    Point v;
};

inline TopSingular top_singular(const Mat2& m)
{
    // With M = alpha*z + beta*conj(z), |M e^{it}| is maximal when
    // arg(alpha) + t = arg(beta) - t.
    const auto [alpha, beta] = m.complex_parts();
    const double ra = std::abs(alpha);
    const double rb = std::abs(beta);
    double t = 0.0;
    if (ra > 0.0 && rb > 0.0) t = 0.5 * (std::arg(beta) - std::arg(alpha));
    const Point v = std::polar(1.0, t);
    const Point image = m * v;
    const double s = std::abs(image);
    const Point u = s > 0.0 ? image / s : Point{1.0, 0.0};
    return {ra + rb, u, v};
}

/// Affine map p -> lin * p + tr.
struct Affine2
{
    Mat2 lin{};
    Point tr{0.0, 0.0};

    static Affine2 identity() { return {}; }

    Point operator()(Point p) const { return lin * p + tr; }

    /// (*this) o inner
    Affine2 compose(const Affine2& inner) const { return {lin * inner.lin, lin * inner.tr + tr}; }

    Affine2 inverse() const
    {
        const Mat2 inv = lin.inverse();
        return {inv, -(inv * tr)};
    }

    /// The unique affine map sending (p0, p1, p2) to (q0, q1, q2).
    static Affine2 from_points(Point p0, Point p1, Point p2, Point q0, Point q1, Point q2)
    {
        const Mat2 src{p1.real() - p0.real(), p2.real() - p0.real(), p1.imag() - p0.imag(),
                       p2.imag() - p0.imag()};
        const Mat2 dst{q1.real() - q0.real(), q2.real() - q0.real(), q1.imag() - q0.imag(),
                       q2.imag() - q0.imag()};
        const Mat2 lin = dst * src.inverse();
        return {lin, q0 - lin * p0};
    }
};

}  // namespace tritei
