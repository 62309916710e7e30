#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "tritei/core.hpp"
#include "tritei/linalg.hpp"
#include "tritei/maps.hpp"
#include "tritei/metric.hpp"
#include "tritei/moduli.hpp"
#include "tritei/plmap.hpp"
#include "tritei/triangle.hpp"

namespace tritei
{

/// Structured triangulation of a labelled source triangle.
///
/// Bit index(v) of a side mask is set when the vertex lies on the side e_v
/// opposite v; corners carry two bits, edge vertices one, interior none.
struct TriMesh
{
    LabeledTriangle source;
    int level{1};
    std::optional<Vertex> aligned;
    std::vector<Point> vertices;
    std::vector<std::array<int, 3>> triangles;  // counter-clockwise
    std::vector<std::uint8_t> side_mask;

    std::string tag(std::size_t i) const
    {
        const std::uint8_t m = side_mask[i];
        int bits = 0;
        for (Vertex v : kVertices) bits += (m >> index(v)) & 1;
        if (bits == 0) return "interior";
        if (bits == 1) {
            for (Vertex v : kVertices) {
                if (m & (1u << index(v))) return std::string("edge_e_") + name(v);
            }
        }
        for (Vertex v : kVertices) {
            if (!(m & (1u << index(v)))) return std::string("corner_") + name(v);
        }
        return "interior";
    }
};

namespace detail
{

inline std::uint8_t side_bit(Vertex v) { return static_cast<std::uint8_t>(1u << index(v)); }

/// Lattice of level n on (P0, P1, P2) = (v, next v, after v). With
/// `aligned`, n is even, the diagonal quads i = j are split along the
/// diagonal and the lattice is warped so that the diagonal lands on the
/// altitude from v.
inline TriMesh lattice_mesh(const LabeledTriangle& t, int n, Vertex v, bool aligned)
{
    const Point p0 = t.vertex(v);
    const Point p1 = t.vertex(next(v));
    const Point p2 = t.vertex(after(v));
    const Point foot = project_to_line(p0, p1, p2);
    const Point mid = 0.5 * (p1 + p2);
    const Affine2 lower = Affine2::from_points(p0, p1, mid, p0, p1, foot);
    const Affine2 upper = Affine2::from_points(p0, mid, p2, p0, foot, p2);

    TriMesh m{t, n, aligned ? std::optional<Vertex>{v} : std::nullopt, {}, {}, {}};
    std::vector<std::vector<int>> id(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        id[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(n - i) + 1, -1);
        for (int j = 0; j + i <= n; ++j) {
            const Point ref = p0 + (static_cast<double>(i) / n) * (p1 - p0) +
                              (static_cast<double>(j) / n) * (p2 - p0);
            Point pos = ref;
            if (aligned) pos = i >= j ? lower(ref) : upper(ref);
            if (i == 0 && j == 0) pos = p0;
            if (i == n) pos = p1;
            if (j == n) pos = p2;
            std::uint8_t mask = 0;
            if (j == 0) mask |= side_bit(after(v));
            if (i == 0) mask |= side_bit(next(v));
            if (i + j == n) mask |= side_bit(v);
            id[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                static_cast<int>(m.vertices.size());
            m.vertices.push_back(pos);
            m.side_mask.push_back(mask);
        }
    }
    auto at = [&](int i, int j) {
        return id[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; i + j < n; ++j) {
            const bool has_down = i + j + 2 <= n;
            if (aligned && i == j && has_down) {
                m.triangles.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1)});
                m.triangles.push_back({at(i, j), at(i + 1, j + 1), at(i, j + 1)});
                continue;
            }
            m.triangles.push_back({at(i, j), at(i + 1, j), at(i, j + 1)});
            if (has_down) m.triangles.push_back({at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)});
        }
    }
    return m;
}

/// Midpoint refinement; new vertices are appended and `parents` receives
/// their two parent vertices.
inline TriMesh subdivide(const TriMesh& m, std::vector<std::pair<int, int>>* parents = nullptr)
{
    TriMesh out{m.source, 2 * m.level, m.aligned, m.vertices, {}, m.side_mask};
    std::map<std::pair<int, int>, int> mids;
    auto midpoint = [&](int p, int q) {
        const std::pair<int, int> key{std::min(p, q), std::max(p, q)};
        if (auto it = mids.find(key); it != mids.end()) return it->second;
        const int idx = static_cast<int>(out.vertices.size());
        out.vertices.push_back(0.5 * (m.vertices[static_cast<std::size_t>(p)] +
                                      m.vertices[static_cast<std::size_t>(q)]));
        out.side_mask.push_back(m.side_mask[static_cast<std::size_t>(p)] &
                                m.side_mask[static_cast<std::size_t>(q)]);
        if (parents) parents->push_back(key);
        mids.emplace(key, idx);
        return idx;
    };
    for (const auto& [p, q, r] : m.triangles) {
        const int pq = midpoint(p, q);
        const int qr = midpoint(q, r);
        const int rp = midpoint(r, p);
        out.triangles.push_back({p, pq, rp});
        out.triangles.push_back({pq, q, qr});
        out.triangles.push_back({rp, qr, r});
        out.triangles.push_back({pq, qr, rp});
    }
    return out;
}

inline std::pair<int, int> split_level(int n)
{
    int k = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++k;
    }
    return {k, n};
}

}  // namespace detail

/// Structured level-n refinement of the normalised triangle of z, with n^2
/// triangles and (n + 1)(n + 2) / 2 vertices. With `align` and even n the
/// foot of the altitude from that vertex is a mesh vertex; the meshes of
/// levels n and 2n are then nested.
inline TriMesh mesh_triangle(const ShapePoint& z, int level, std::optional<Vertex> align = std::nullopt)
{
    if (level < 1) throw Error(ErrorCode::invalid_argument, "mesh level must be at least 1");
    const LabeledTriangle t = normalized_triangle(z);
    const auto [k, n0] = detail::split_level(level);
    if (!align || k == 0 || !is_acute(z)) {
        TriMesh m = detail::lattice_mesh(t, n0, Vertex::a, false);
        for (int i = 0; i < k; ++i) m = detail::subdivide(m);
        return m;
    }
    TriMesh m = detail::lattice_mesh(t, 2 * n0, *align, true);
    for (int i = 1; i < k; ++i) m = detail::subdivide(m);
    return m;
}

/// exp of the edge/altitude max-ratio distance; bounds the Lipschitz
/// constant of every label- and edge-preserving map from below.
inline double lower_bound(const ShapePoint& z, const ShapePoint& w)
{
    return std::exp(max_ratio_distance(z, w));
}

struct OracleOptions
{
    int budget{5000};          // ADMM iterations per bisection probe
    double width{1e-6};        // bisection bracket width relative to the lower bound
    int max_probes{64};
};

struct OptimalPL
{
    double value{0.0};        // max sigma_max of the returned map
    double lower{0.0};        // final bisection lower end
    PLMap map;
    TriMesh mesh;
    std::vector<Point> images;
    int iterations{0};
    int probes{0};
    bool converged{false};
    double max_violation{0.0};
};

namespace detail
{

/// Feasibility solver for max_k sigma_max(J_k) <= L over vertex images.
///
/// Unknowns are the free coordinates of interior vertices and the edge
/// parameters of boundary vertices, so every Jacobian J_k is affine in
/// them. A probe runs ADMM on the splitting J_k(x) = Z_k with Z_k in the
/// spectral-norm ball of radius L and t = s with s in [0, 1]; the
/// least-squares step uses a sparse factorisation computed once per mesh.
class OracleSolver
{
public:
    OracleSolver(const TriMesh& mesh, const LabeledTriangle& target)
        : mesh_{mesh}, target_{target}, kind_(mesh.vertices.size()), side_(mesh.vertices.size()),
          var_(mesh.vertices.size(), -1)
    {
        for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
            const std::uint8_t m = mesh.side_mask[i];
            int bits = 0;
            for (Vertex v : kVertices) bits += (m >> index(v)) & 1;
            kind_[i] = bits;
            if (bits == 1) {
                for (Vertex v : kVertices) {
                    if (m & side_bit(v)) side_[i] = v;
                }
                var_[i] = nvar_;
                edge_vars_.push_back(nvar_);
                nvar_ += 1;
            } else if (bits == 0) {
                var_[i] = nvar_;
                nvar_ += 2;
            }
        }
        double total_area = 0.0;
        for (const auto& tri : mesh.triangles) {
            const Point x0 = mesh.vertices[static_cast<std::size_t>(tri[0])];
            const Point x1 = mesh.vertices[static_cast<std::size_t>(tri[1])];
            const Point x2 = mesh.vertices[static_cast<std::size_t>(tri[2])];
            const Mat2 e{(x1 - x0).real(), (x2 - x0).real(), (x1 - x0).imag(), (x2 - x0).imag()};
            einv_.push_back(e.inverse());
            weight_.push_back(signed_area(x0, x1, x2));
            total_area += weight_.back();
        }
        box_weight_ = total_area / static_cast<double>(std::max<std::size_t>(1, mesh.triangles.size()));
        build_rows();
        factorise();
    }

    /// Target side e_v as (start, direction): from next(v) to after(v).
    std::pair<Point, Point> target_side(Vertex v) const
    {
        const Point s = target_.vertex(next(v));
        return {s, target_.vertex(after(v)) - s};
    }

    std::pair<Point, Point> source_side(Vertex v) const
    {
        const Point s = mesh_.source.vertex(next(v));
        return {s, mesh_.source.vertex(after(v)) - s};
    }

    double raw_edge_param(std::size_t i, Point y) const
    {
        const auto [s, d] = target_side(side_[i]);
        return dot(y - s, d) / std::norm(d);
    }

    Point place_on_side(std::size_t i, double t) const
    {
        const auto [s, d] = target_side(side_[i]);
        return s + t * d;
    }

    /// Images under the label-preserving affine map, boundary vertices
    /// placed exactly on their target sides.
    std::vector<Point> affine_start() const
    {
        std::vector<Point> y(mesh_.vertices.size());
        const Affine2 a = Affine2::from_points(mesh_.source.va(), mesh_.source.vb(), mesh_.source.vc(),
                                               target_.va(), target_.vb(), target_.vc());
        for (std::size_t i = 0; i < y.size(); ++i) {
            const Point x = mesh_.vertices[i];
            if (kind_[i] == 1) {
                const auto [s, d] = source_side(side_[i]);
                y[i] = place_on_side(i, std::clamp(dot(x - s, d) / std::norm(d), 0.0, 1.0));
            } else {
                y[i] = a(x);
            }
        }
        pin_corners(y);
        return y;
    }

    void pin_corners(std::vector<Point>& y) const
    {
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (kind_[i] < 2) continue;
            for (Vertex v : kVertices) {
                if (!(mesh_.side_mask[i] & side_bit(v))) y[i] = target_.vertex(v);
            }
        }
    }

    /// Snap boundary images back onto their target sides.
    void project(std::vector<Point>& y) const
    {
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (kind_[i] == 1) y[i] = place_on_side(i, std::clamp(raw_edge_param(i, y[i]), 0.0, 1.0));
        }
        pin_corners(y);
    }

    Mat2 jacobian(std::size_t k, const std::vector<Point>& y) const
    {
        const auto& tri = mesh_.triangles[k];
        const Point y0 = y[static_cast<std::size_t>(tri[0])];
        const Point d1 = y[static_cast<std::size_t>(tri[1])] - y0;
        const Point d2 = y[static_cast<std::size_t>(tri[2])] - y0;
        const Mat2 q{d1.real(), d2.real(), d1.imag(), d2.imag()};
        return q * einv_[k];
    }

    double max_sigma(const std::vector<Point>& y) const
    {
        double best = 0.0;
        for (std::size_t k = 0; k < einv_.size(); ++k) {
            const double s = jacobian(k, y).sigma_max();
            if (!std::isfinite(s)) return std::numeric_limits<double>::infinity();
            best = std::max(best, s);
        }
        return best;
    }

    /// ADMM feasibility probe started from y. Returns true once an iterate
    /// (with edge parameters clamped) has every sigma_k <= level; `best`
    /// tracks the iterate with the smallest max sigma.
    bool probe(double level, const std::vector<Point>& y, int budget, int& iterations,
               std::vector<Point>& best, double& best_value) const
    {
        const std::size_t nt = einv_.size();
        Eigen::VectorXd x = unknowns(y);
        std::vector<std::array<double, 4>> z(nt), u(nt, {0.0, 0.0, 0.0, 0.0});
        for (std::size_t k = 0; k < nt; ++k) z[k] = clamp_sigma(eval_row(k, x), level);
        std::vector<double> s(edge_vars_.size()), v(edge_vars_.size(), 0.0);
        for (std::size_t e = 0; e < edge_vars_.size(); ++e) {
            s[e] = std::clamp(x[edge_vars_[e]], 0.0, 1.0);
        }
        std::vector<Point> cur = y;
        Eigen::VectorXd rhs(nvar_);
        for (int it = 0; it < budget; ++it) {
            ++iterations;
            rhs.setZero();
            for (std::size_t k = 0; k < nt; ++k) {
                for (int q = 0; q < 4; ++q) {
                    const double target = z[k][static_cast<std::size_t>(q)] - u[k][static_cast<std::size_t>(q)] -
                                          rows_[k].constant[static_cast<std::size_t>(q)];
                    for (const auto& [var, coef] : rows_[k].terms[static_cast<std::size_t>(q)]) {
                        rhs[var] += weight_[k] * coef * target;
                    }
                }
            }
            for (std::size_t e = 0; e < edge_vars_.size(); ++e) {
                rhs[edge_vars_[e]] += box_weight_ * (s[e] - v[e]);
            }
            x = solver_.solve(rhs);
            if (!x.allFinite()) return false;

            images(x, cur);
            const double worst = max_sigma(cur);
            if (worst < best_value) {
                best_value = worst;
                best = cur;
            }
            if (worst <= level) return true;

            for (std::size_t k = 0; k < nt; ++k) {
                std::array<double, 4> j = eval_row(k, x);
                std::array<double, 4> ju{};
                for (int q = 0; q < 4; ++q) {
                    ju[static_cast<std::size_t>(q)] = j[static_cast<std::size_t>(q)] + u[k][static_cast<std::size_t>(q)];
                }
                z[k] = clamp_sigma(ju, level);
                for (int q = 0; q < 4; ++q) {
                    const auto qi = static_cast<std::size_t>(q);
                    u[k][qi] = ju[qi] - z[k][qi];
                }
            }
            for (std::size_t e = 0; e < edge_vars_.size(); ++e) {
                const double tv = x[edge_vars_[e]] + v[e];
                s[e] = std::clamp(tv, 0.0, 1.0);
                v[e] = tv - s[e];
            }
        }
        return false;
    }

    double max_violation(const std::vector<Point>& y) const
    {
        double worst = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (kind_[i] == 1) {
                const auto [s, d] = target_side(side_[i]);
                const double t = dot(y[i] - s, d) / std::norm(d);
                const double off = std::abs(cross(d, y[i] - s)) / std::abs(d);
                const double out = std::max({0.0, -t, t - 1.0}) * std::abs(d);
                worst = std::max({worst, off, out});
            } else if (kind_[i] == 2) {
                for (Vertex v : kVertices) {
                    if (!(mesh_.side_mask[i] & side_bit(v))) {
                        worst = std::max(worst, std::abs(y[i] - target_.vertex(v)));
                    }
                }
            }
        }
        return worst;
    }

    PLMap to_map(const std::vector<Point>& y) const
    {
        std::vector<Piece> pieces;
        pieces.reserve(mesh_.triangles.size());
        for (const auto& tri : mesh_.triangles) {
            const auto& x = mesh_.vertices;
            const std::size_t i0 = static_cast<std::size_t>(tri[0]);
            const std::size_t i1 = static_cast<std::size_t>(tri[1]);
            const std::size_t i2 = static_cast<std::size_t>(tri[2]);
            pieces.push_back({{x[i0], x[i1], x[i2]},
                              Affine2::from_points(x[i0], x[i1], x[i2], y[i0], y[i1], y[i2]),
                              false});
        }
        return PLMap{std::move(pieces)};
    }

private:
    // J_k entries in row-major order (m11, m12, m21, m22), each an affine
    // function of the unknowns.
    struct Row
    {
        std::array<double, 4> constant{};
        std::array<std::vector<std::pair<int, double>>, 4> terms;
    };

    void build_rows()
    {
        rows_.resize(mesh_.triangles.size());
        for (std::size_t k = 0; k < mesh_.triangles.size(); ++k) {
            const auto& tri = mesh_.triangles[k];
            const Mat2& ei = einv_[k];
            // J = sum_m Y_m (x) g_m with g_1, g_2 the rows of E^{-1}
            const std::array<std::array<double, 2>, 3> g{{
                {-(ei.m11 + ei.m21), -(ei.m12 + ei.m22)},
                {ei.m11, ei.m12},
                {ei.m21, ei.m22},
            }};
            Row& row = rows_[k];
            for (int m = 0; m < 3; ++m) {
                const auto i = static_cast<std::size_t>(tri[static_cast<std::size_t>(m)]);
                const auto& gm = g[static_cast<std::size_t>(m)];
                for (int r = 0; r < 2; ++r) {
                    for (int c = 0; c < 2; ++c) {
                        const auto q = static_cast<std::size_t>(2 * r + c);
                        const double gc = gm[static_cast<std::size_t>(c)];
                        if (kind_[i] == 0) {
                            row.terms[q].emplace_back(var_[i] + r, gc);
                        } else if (kind_[i] == 1) {
                            const auto [s, d] = target_side(side_[i]);
                            row.constant[q] += (r == 0 ? s.real() : s.imag()) * gc;
                            row.terms[q].emplace_back(var_[i], (r == 0 ? d.real() : d.imag()) * gc);
                        } else {
                            const Point p = corner_image(i);
                            row.constant[q] += (r == 0 ? p.real() : p.imag()) * gc;
                        }
                    }
                }
            }
        }
    }

    void factorise()
    {
        std::vector<Eigen::Triplet<double>> trips;
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            for (const auto& terms : rows_[k].terms) {
                for (const auto& [a, ca] : terms) {
                    for (const auto& [b, cb] : terms) trips.emplace_back(a, b, weight_[k] * ca * cb);
                }
            }
        }
        for (int e : edge_vars_) trips.emplace_back(e, e, box_weight_);
        Eigen::SparseMatrix<double> h(nvar_, nvar_);
        h.setFromTriplets(trips.begin(), trips.end());
        solver_.compute(h);
        if (solver_.info() != Eigen::Success) {
            throw Error(ErrorCode::invalid_argument, "oracle normal equations are singular");
        }
    }

    Point corner_image(std::size_t i) const
    {
        for (Vertex v : kVertices) {
            if (!(mesh_.side_mask[i] & side_bit(v))) return target_.vertex(v);
        }
        return {};
    }

    Eigen::VectorXd unknowns(const std::vector<Point>& y) const
    {
        Eigen::VectorXd x(nvar_);
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (kind_[i] == 0) {
                x[var_[i]] = y[i].real();
                x[var_[i] + 1] = y[i].imag();
            } else if (kind_[i] == 1) {
                x[var_[i]] = raw_edge_param(i, y[i]);
            }
        }
        return x;
    }

    /// Vertex images for the unknowns, edge parameters clamped to [0, 1].
    void images(const Eigen::VectorXd& x, std::vector<Point>& y) const
    {
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (kind_[i] == 0) {
                y[i] = {x[var_[i]], x[var_[i] + 1]};
            } else if (kind_[i] == 1) {
                y[i] = place_on_side(i, std::clamp(x[var_[i]], 0.0, 1.0));
            } else {
                y[i] = corner_image(i);
            }
        }
    }

    std::array<double, 4> eval_row(std::size_t k, const Eigen::VectorXd& x) const
    {
        std::array<double, 4> j = rows_[k].constant;
        for (std::size_t q = 0; q < 4; ++q) {
            for (const auto& [var, coef] : rows_[k].terms[q]) j[q] += coef * x[var];
        }
        return j;
    }

    /// Frobenius projection onto {sigma_max <= level}: clamp both singular
    /// values, keeping the singular vectors.
    static std::array<double, 4> clamp_sigma(const std::array<double, 4>& j, double level)
    {
        const Mat2 m{j[0], j[1], j[2], j[3]};
        auto [alpha, beta] = m.complex_parts();
        const double ra = std::abs(alpha);
        const double rb = std::abs(beta);
        const double s1 = ra + rb;
        if (s1 <= level) return j;
        const double s2 = std::abs(ra - rb);
        const double c1 = level;
        const double c2 = std::min(s2, level);
        const double big = 0.5 * (c1 + c2);
        const double small = 0.5 * (c1 - c2);
        const double na = ra >= rb ? big : small;
        const double nb = ra >= rb ? small : big;
        alpha = ra > 0.0 ? alpha * (na / ra) : Point{na, 0.0};
        beta = rb > 0.0 ? beta * (nb / rb) : Point{nb, 0.0};
        const Mat2 out = Mat2::from_complex(alpha, beta);
        return {out.m11, out.m12, out.m21, out.m22};
    }

    const TriMesh& mesh_;
    LabeledTriangle target_;
    std::vector<int> kind_;  // 0 interior, 1 edge, 2 corner
    std::vector<Vertex> side_;
    std::vector<int> var_;   // first unknown of each vertex, -1 for corners
    std::vector<int> edge_vars_;
    int nvar_{0};
    std::vector<Mat2> einv_;
    std::vector<double> weight_;
    double box_weight_{1.0};
    std::vector<Row> rows_;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver_;
};

/// Bisection on the level between `lo` and the value of the start map.
inline void bisect(const OracleSolver& solver, double lo, double width, const OracleOptions& opts,
                   std::vector<Point>& y, double& value, double& lower, int& iterations, int& probes,
                   bool& converged)
{
    value = solver.max_sigma(y);
    lower = std::min(lo, value);
    converged = value - lower <= width;
    while (!converged && probes < opts.max_probes) {
        const double level = 0.5 * (lower + value);
        std::vector<Point> best = y;
        double best_value = value;
        ++probes;
        const bool feasible = solver.probe(level, y, opts.budget, iterations, best, best_value);
        if (best_value < value) {
            solver.project(best);
            const double v = solver.max_sigma(best);
            if (v < value) {
                y = std::move(best);
                value = v;
            }
        }
        if (!feasible) lower = std::max(lower, level);
        converged = value - lower <= width;
    }
}

}  // namespace detail

/// Minimal Lipschitz constant over label- and edge-preserving maps that are
/// affine on each triangle of the level-n mesh, by bisection with ADMM
/// feasibility probes. Even levels run a cascade through the
/// nested coarser meshes, each warm-started from the previous solution.
inline OptimalPL optimal_pl_constant(const ShapePoint& z, const ShapePoint& w, int level,
                                     const OracleOptions& opts = {})
{
    if (level < 1) throw Error(ErrorCode::invalid_argument, "mesh level must be at least 1");
    if (opts.budget < 0 || !(opts.width > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "oracle budget must be >= 0 and width > 0");
    }
    std::optional<Vertex> align;
    if (is_acute(z) && in_closed_acute(w, kMembershipTol)) {
        if (auto cls = try_classify_pair(z, w)) align = cls->vertex;
    }
    const LabeledTriangle target = normalized_triangle(w);
    const double lb = lower_bound(z, w);
    const double width = opts.width * lb;
    const auto [k, n0] = detail::split_level(level);

    const bool aligned = align && k > 0 && is_acute(z);
    TriMesh mesh = aligned ? mesh_triangle(z, 2 * n0, align) : mesh_triangle(z, n0);
    int steps = aligned ? k - 1 : k;

    std::vector<Point> y;
    double value = 0.0, lower = 0.0;
    int iterations = 0, probes = 0;
    bool converged = false;
    while (true) {
        const detail::OracleSolver solver(mesh, target);
        if (y.empty()) y = solver.affine_start();
        solver.project(y);
        detail::bisect(solver, lb, width, opts, y, value, lower, iterations, probes, converged);
        if (steps == 0) break;
        std::vector<std::pair<int, int>> parents;
        mesh = detail::subdivide(mesh, &parents);
        for (const auto& [p, q] : parents) {
            y.push_back(0.5 * (y[static_cast<std::size_t>(p)] + y[static_cast<std::size_t>(q)]));
        }
        --steps;
    }
    const detail::OracleSolver solver(mesh, target);
    PLMap map = solver.to_map(y);
    const double violation = solver.max_violation(y);
    const double recomputed = pl_lipschitz_constant(map);
    return {recomputed, lower, std::move(map), std::move(mesh), std::move(y), iterations, probes, converged, violation};
}

struct OracleReport
{
    double L_hat{0.0};
    std::optional<double> L_star;
    double L_lb{0.0};
    int level{0};
    int iterations{0};
    int probes{0};
    bool converged{false};
    double max_violation{0.0};
    std::optional<PairClass> pair_class;
    bool lower_ok{false};   // L_lb <= L* (or <= L_hat when no closed form)
    bool upper_ok{false};   // L_hat <= L* (1 + tol); bracket check otherwise
};

/// Runs the lower bound, the numeric optimum and, for classified pairs, the
/// closed form, and records the sandwich checks.
inline OracleReport certify(const ShapePoint& z, const ShapePoint& w, int level, double tol,
                            const OracleOptions& opts = {})
{
    if (!(tol >= 0.0)) throw Error(ErrorCode::invalid_argument, "tolerance must be nonnegative");
    const OptimalPL opt = optimal_pl_constant(z, w, level, opts);
    OracleReport r;
    r.L_hat = opt.value;
    r.L_lb = lower_bound(z, w);
    r.level = level;
    r.iterations = opt.iterations;
    r.probes = opt.probes;
    r.converged = opt.converged;
    r.max_violation = opt.max_violation;
    const double slack = 1e-9;
    if (is_acute(z) && in_closed_acute(w, kMembershipTol)) r.pair_class = try_classify_pair(z, w);
    if (r.pair_class) {
        r.L_star = std::exp(lipschitz_distance(z, w));
        r.lower_ok = r.L_lb <= *r.L_star * (1.0 + slack);
        r.upper_ok = r.L_hat <= *r.L_star * (1.0 + tol) && r.L_hat >= *r.L_star * (1.0 - slack);
    } else {
        r.lower_ok = r.L_lb <= r.L_hat * (1.0 + slack);
        r.upper_ok = r.lower_ok;
    }
    return r;
}

}  // namespace tritei
