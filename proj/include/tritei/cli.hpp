#pragma once

#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tritei/core.hpp"
#include "tritei/maps.hpp"
#include "tritei/metric.hpp"
#include "tritei/moduli.hpp"
#include "tritei/oracle.hpp"
#include "tritei/serialize.hpp"
#include "tritei/svg.hpp"
#include "tritei/triangle.hpp"

namespace tritei::cli
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitParse = 3;

inline Json error_json(std::string_view code, const std::string& message)
{
    return versioned({{"error", {{"code", std::string(code)}, {"message", message}}}});
}

namespace detail
{

inline ShapePoint shape(const std::string& text)
{
    const Point p = parse_complex(text);
    return ShapePoint{p};
}

inline Vertex vertex(const std::string& text) { return parse_vertex(text); }

inline void write_file(const std::string& path, const std::string& content)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::invalid_argument, "cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw Error(ErrorCode::invalid_argument, "cannot write '" + path + "'");
}

inline Json measures(const LabeledTriangle& t)
{
    const auto e = edge_lengths(t);
    const auto th = angles(t);
    const auto h = altitudes(t);
    return {{"edges", {e.a, e.b, e.c}},
            {"angles", {th.a, th.b, th.c}},
            {"area", area(t)},
            {"altitudes", {h.a, h.b, h.c}}};
}

inline Json contraction_json(const Contraction& c) { return to_json(c); }

}  // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Lipschitz geometry of marked Euclidean triangles", "tritei"};
    app.require_subcommand(1);
    std::function<Json()> action;
    std::string z_text, w_text, u_text, triangle_text, vertex_text, kind_text, sigma_text, x_text,
        other_text, svg_path;
    double k1 = 1.0, k2 = 1.0, theta = 0.0, tol = 0.02;
    int n = 4, level = 16, budget = 5000, debug_grid = 0;

    auto svg_out = [&](const std::string& doc) {
        if (!svg_path.empty()) detail::write_file(svg_path, doc);
    };

    auto* param = app.add_subcommand("param", "shape point of a labelled triangle, or the realisations of a shape");
    param->add_option("--triangle", triangle_text, R"(JSON {"va":[x,y],"vb":[x,y],"vc":[x,y]})");
    param->add_option("--z", z_text, "shape point x+yi");
    param->callback([&] {
        action = [&]() -> Json {
            if (!triangle_text.empty()) {
                const LabeledTriangle t = parse_triangle(triangle_text);
                const ShapePoint z = z_param(t);
                Json j = to_json(z);
                j["region"] = to_string(classify(z));
                j.update(detail::measures(t));
                return j;
            }
            if (z_text.empty()) throw Error(ErrorCode::parse_error, "param needs --triangle or --z");
            const ShapePoint z = detail::shape(z_text);
            Json j = to_json(z);
            j["region"] = to_string(classify(z));
            j["normalized"] = to_json(normalized_triangle(z));
            j["tilde"] = to_json(tilde_triangle(z));
            j.update(detail::measures(normalized_triangle(z)));
            return j;
        };
    });

    auto* classify_cmd = app.add_subcommand("classify", "region of z, or the class of the pair (z, w)");
    classify_cmd->add_option("--z", z_text, "shape point")->required();
    classify_cmd->add_option("--w", w_text, "second shape point");
    classify_cmd->callback([&] {
        action = [&]() -> Json {
            const ShapePoint z = detail::shape(z_text);
            if (w_text.empty()) return {{"region", to_string(classify(z))}};
            return {{"region", to_string(classify(z))}, {"class", to_json(classify_pair(z, detail::shape(w_text)))}};
        };
    });

    auto* distance = app.add_subcommand("distance", "closed-form Lipschitz distance");
    distance->add_option("--z", z_text, "acute shape point")->required();
    distance->add_option("--w", w_text, "shape point in the closed acute region")->required();
    distance->callback([&] {
        action = [&]() -> Json {
            const ShapePoint z = detail::shape(z_text);
            const ShapePoint w = detail::shape(w_text);
            Json j = to_json(lipschitz_distance_report(z, w));
            j["max_ratio"] = max_ratio_distance(z, w);
            j["affine_log"] = std::log(affine_lipschitz_constant(z, w));
            return j;
        };
    });

    auto* norm = app.add_subcommand("norm", "Finsler norm of a tangent vector");
    norm->add_option("--z", z_text, "acute base point")->required();
    norm->add_option("--u", u_text, "tangent vector x+yi")->required();
    norm->callback([&] {
        action = [&]() -> Json {
            const ShapePoint z = detail::shape(z_text);
            const Point u = parse_complex(u_text);
            Json j{{"F", finsler_norm(z, u)}};
            j["sector"] = u == Point{0.0, 0.0} ? Json(nullptr) : Json(sector_of(z, u).name());
            return j;
        };
    });

    auto* ball = app.add_subcommand("ball", "Finsler unit ball");
    ball->add_option("--z", z_text, "acute base point")->required();
    ball->add_option("--svg", svg_path, "write an SVG figure");
    ball->callback([&] {
        action = [&]() -> Json {
            const Hexagon h = unit_ball_hexagon(detail::shape(z_text));
            if (!svg_path.empty()) svg_out(svg::render_hexagon(h, svg::style_from_env()));
            return to_json(h);
        };
    });

    auto* pencil = app.add_subcommand("pencil", "pencil or backward pencil of z at a vertex");
    pencil->add_option("--z", z_text, "base point")->required();
    pencil->add_option("--vertex", vertex_text, "a, b or c")->required();
    pencil->add_option("--kind", kind_text, "pencil (default) or backward");
    pencil->add_option("--w", w_text, "test membership of this point");
    pencil->add_option("--svg", svg_path, "write an SVG figure");
    pencil->add_option("--debug-membership", debug_grid, "overlay an N x N membership sample on the SVG");
    pencil->callback([&] {
        action = [&]() -> Json {
            const ShapePoint z = detail::shape(z_text);
            const Vertex v = detail::vertex(vertex_text);
            PencilKind kind = PencilKind::pencil;
            if (kind_text == "backward") kind = PencilKind::backward;
            else if (!kind_text.empty() && kind_text != "pencil") {
                throw Error(ErrorCode::parse_error, "unknown pencil kind '" + kind_text + "'");
            }
            Json j{{"vertex", std::string(1, name(v))},
                   {"kind", kind == PencilKind::pencil ? "pencil" : "backward"},
                   {"z", to_json(z)}};
            if (!w_text.empty()) {
                const ShapePoint w = detail::shape(w_text);
                if (kind == PencilKind::pencil) {
                    const auto k = pencil_membership(z, w, v);
                    j["member"] = k.has_value();
                    if (k) {
                        j["k1"] = k->k1;
                        j["k2"] = k->k2;
                    }
                } else {
                    j["member"] = backward_pencil_membership(z, w, v);
                }
            }
            if (!svg_path.empty()) svg_out(svg::render_pencil(z, v, kind, svg::style_from_env(), debug_grid));
            return j;
        };
    });

    auto* stretch = app.add_subcommand("stretch", "stretch map at a vertex");
    stretch->add_option("--z", z_text, "source shape point")->required();
    stretch->add_option("--vertex", vertex_text, "a, b or c")->required();
    stretch->add_option("--k1", k1, "first stretch parameter in [0, 1]")->required();
    stretch->add_option("--k2", k2, "second stretch parameter in [0, 1]")->required();
    stretch->callback([&] {
        action = [&]() -> Json {
            const ShapePoint z = detail::shape(z_text);
            const Vertex v = detail::vertex(vertex_text);
            const ShapePoint target = stretch_target(z, v, k1, k2);
            const PLMap m = stretch_map(z, v, k1, k2);
            const bool flag = nonexistence_flag(z, k1, k2, v);
            Json j{{"target", to_json(target)},
                   {"target_region", to_string(classify(target))},
                   {"L", pl_lipschitz_constant(m)},
                   {"map", to_json(m)},
                   {"nonexistence", flag}};
            if (flag) j["note"] = "extremum not attained by any homeomorphism";
            return j;
        };
    });

    auto* contract = app.add_subcommand("contract", "extremal map onto a backward-pencil target");
    contract->add_option("--z", z_text, "acute source shape point")->required();
    contract->add_option("--w", w_text, "target in the backward pencil")->required();
    contract->add_option("--x", x_text, "contraction vertex, b or c (default b)");
    contract->add_option("--vertex", vertex_text, "backward pencil vertex (default a)");
    contract->add_option("--svg", svg_path, "write the induced stretch locus as SVG");
    contract->callback([&] {
        action = [&]() -> Json {
            const ShapePoint z = detail::shape(z_text);
            const ShapePoint w = detail::shape(w_text);
            const Vertex v = vertex_text.empty() ? Vertex::a : detail::vertex(vertex_text);
            const Vertex x = x_text.empty() ? (v == Vertex::b ? Vertex::c : Vertex::b) : detail::vertex(x_text);
            const BackwardMap bm = backward_extremal_construction(z, w, x, v);
            Json j{{"L", pl_lipschitz_constant(bm.map)},
                   {"L_closed_form", bm.lipschitz},
                   {"map", to_json(bm.map)},
                   {"first", detail::contraction_json(bm.first)},
                   {"second", detail::contraction_json(bm.second)},
                   {"locus", bm.locus ? to_json(*bm.locus) : Json(nullptr)}};
            if (!svg_path.empty()) {
                if (!bm.locus) throw Error(ErrorCode::outside_domain, "identity map has no induced locus to draw");
                svg_out(svg::render_locus(*bm.locus, svg::style_from_env()));
            }
            return j;
        };
    });

    auto* locus = app.add_subcommand("locus", "maximal stretching locus");
    locus->add_option("--z", z_text, "acute shape point")->required();
    locus->add_option("--kind", kind_text, "G (default) or F");
    locus->add_option("--vertex", vertex_text, "a, b or c")->required();
    locus->add_option("--other", other_text, "F only: vertex whose perpendicular is drawn");
    locus->add_option("--theta", theta, "F only: angle in (theta_v, pi/2)");
    locus->add_option("--svg", svg_path, "write an SVG figure");
    locus->callback([&] {
        action = [&]() -> Json {
            const ShapePoint z = detail::shape(z_text);
            const Vertex v = detail::vertex(vertex_text);
            LocusSpec spec = LocusSpec::G(v);
            if (kind_text == "F") {
                if (other_text.empty()) throw Error(ErrorCode::parse_error, "F locus needs --other");
                spec = LocusSpec::F(v, detail::vertex(other_text), theta);
            } else if (!kind_text.empty() && kind_text != "G") {
                throw Error(ErrorCode::parse_error, "unknown locus kind '" + kind_text + "'");
            }
            const StretchLocus l = stretch_locus(z, spec);
            if (!svg_path.empty()) svg_out(svg::render_locus(l, svg::style_from_env()));
            return to_json(l);
        };
    });

    auto* geodesic = app.add_subcommand("geodesic", "straight geodesic between a classified pair");
    geodesic->add_option("--z", z_text, "acute shape point")->required();
    geodesic->add_option("--w", w_text, "second shape point")->required();
    geodesic->add_option("--n", n, "number of segments (default 4)");
    geodesic->add_option("--svg", svg_path, "write an SVG figure");
    geodesic->callback([&] {
        action = [&]() -> Json {
            const GeodesicPath path = geodesic_path(detail::shape(z_text), detail::shape(w_text), n);
            Json pts = Json::array();
            Json sums = Json::array();
            double total = 0.0;
            for (std::size_t i = 0; i < path.points.size(); ++i) {
                pts.push_back(to_json(path.points[i]));
                if (i > 0 && !(path.points[i] == path.points[i - 1])) {
                    total += lipschitz_distance(path.points[i - 1], path.points[i]);
                }
                if (i > 0) sums.push_back(total);
            }
            if (!svg_path.empty()) svg_out(svg::render_geodesic(path, svg::style_from_env()));
            return {{"points", pts}, {"partial_sums", sums}, {"length", total}};
        };
    });

    auto* certify_cmd = app.add_subcommand("certify", "numerical certification against piecewise-linear maps");
    certify_cmd->add_option("--z", z_text, "source shape point")->required();
    certify_cmd->add_option("--w", w_text, "target shape point")->required();
    certify_cmd->add_option("--level", level, "mesh level (default 16)");
    certify_cmd->add_option("--tol", tol, "relative tolerance (default 0.02)");
    certify_cmd->add_option("--budget", budget, "iterations per bisection probe (default 5000)");
    certify_cmd->callback([&] {
        action = [&]() -> Json {
            OracleOptions opts;
            opts.budget = budget;
            return to_json(certify(detail::shape(z_text), detail::shape(w_text), level, tol, opts));
        };
    });

    auto* symmetry = app.add_subcommand("symmetry", "action of a label permutation");
    symmetry->add_option("--z", z_text, "shape point")->required();
    symmetry->add_option("--sigma", sigma_text, "id, ab, ac, bc, abc or acb")->required();
    symmetry->add_option("--w", w_text, "second shape point; reports both distances");
    symmetry->callback([&] {
        action = [&]() -> Json {
            const ShapePoint z = detail::shape(z_text);
            const LabelPermutation sigma = LabelPermutation::parse(sigma_text);
            const ShapePoint sz = apply_label_permutation(z, sigma);
            Json j{{"sigma", sigma.name()}, {"z", to_json(sz)}};
            if (sigma.is_transposition()) j["congruence"] = to_json(congruence_map(z, sigma));
            if (!w_text.empty()) {
                const ShapePoint w = detail::shape(w_text);
                const ShapePoint sw = apply_label_permutation(w, sigma);
                j["w"] = to_json(sw);
                j["d"] = lipschitz_distance(z, w);
                j["d_image"] = lipschitz_distance(sz, sw);
            }
            return j;
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << error_json(to_string(ErrorCode::parse_error), e.what()).dump() << '\n';
        return kExitParse;
    }

    try {
        out << versioned(action()).dump() << '\n';
        return kExitOk;
    } catch (const Error& e) {
        err << error_json(to_string(e.code()), e.what()).dump() << '\n';
        return e.code() == ErrorCode::parse_error ? kExitParse : kExitDomain;
    } catch (const Json::exception& e) {
        err << error_json(to_string(ErrorCode::parse_error), e.what()).dump() << '\n';
        return kExitParse;
    }
}

}  // namespace tritei::cli
