#pragma once

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tritei/core.hpp"
#include "tritei/maps.hpp"
#include "tritei/metric.hpp"
#include "tritei/moduli.hpp"
#include "tritei/oracle.hpp"
#include "tritei/plmap.hpp"
#include "tritei/triangle.hpp"

namespace tritei
{

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline Json versioned(Json j)
{
    j["v"] = kSchemaVersion;
    return j;
}

inline Json point_json(Point p) { return Json::array({p.real(), p.imag()}); }

inline Json to_json(const ShapePoint& z) { return {{"re", z.re()}, {"im", z.im()}}; }

inline Json to_json(const LabeledTriangle& t)
{
    return {{"va", point_json(t.va())}, {"vb", point_json(t.vb())}, {"vc", point_json(t.vc())}};
}

inline Json to_json(const PairClass& c)
{
    Json j{{"vertex", std::string(1, name(c.vertex))},
           {"kind", c.kind == PencilKind::pencil ? "pencil" : "backward"}};
    if (c.witness) {
        j["k1"] = c.witness->k1;
        j["k2"] = c.witness->k2;
    }
    return j;
}

inline Json to_json(const DistanceReport& r)
{
    return {{"d", r.d}, {"class", to_json(r.pair_class)}, {"formula", std::string(1, name(r.formula))}};
}

inline Json to_json(const Hexagon& h)
{
    Json verts = Json::array();
    for (const Point& p : h.vertices) verts.push_back(point_json(p));
    return {{"center", Json::array({0.0, 0.0})}, {"vertices", verts}};
}

inline Json to_json(const PLMap& m)
{
    Json pieces = Json::array();
    for (const auto& p : m.pieces()) {
        const Mat2& a = p.map.lin;
        pieces.push_back({{"tri", Json::array({point_json(p.tri[0]), point_json(p.tri[1]), point_json(p.tri[2])})},
                          {"lin", Json::array({Json::array({a.m11, a.m12}), Json::array({a.m21, a.m22})})},
                          {"tr", point_json(p.map.tr)},
                          {"conj", p.conj}});
    }
    return {{"pieces", pieces}};
}

inline Json to_json(const StretchLocus& l)
{
    Json j;
    j["kind"] = l.spec.kind == LocusSpec::Kind::G ? "G" : "F";
    j["vertex"] = std::string(1, name(l.spec.vertex));
    if (l.spec.kind == LocusSpec::Kind::F) {
        j["other"] = std::string(1, name(l.spec.other));
        j["theta"] = l.spec.theta;
    }
    j["triangle"] = to_json(l.triangle);
    Json regions = Json::array();
    for (const auto& r : l.regions) {
        Json poly = Json::array();
        for (const Point& p : r.polygon) poly.push_back(point_json(p));
        regions.push_back({{"name", r.name},
                           {"role", to_string(r.role)},
                           {"polygon", poly},
                           {"leaf", r.leaf ? point_json(*r.leaf) : Json(nullptr)}});
    }
    j["regions"] = regions;
    Json pts = Json::object();
    for (const auto& [k, p] : l.points) pts[k] = point_json(p);
    j["points"] = pts;
    return j;
}

inline Json to_json(const Contraction& c)
{
    return {{"foot", point_json(c.foot)}, {"target", point_json(c.target)}, {"k", c.k}};
}

inline Json to_json(const OracleReport& r)
{
    return {{"L_hat", r.L_hat},
            {"L_star", r.L_star ? Json(*r.L_star) : Json(nullptr)},
            {"L_lb", r.L_lb},
            {"level", r.level},
            {"iterations", r.iterations},
            {"probes", r.probes},
            {"converged", r.converged},
            {"max_violation", r.max_violation},
            {"class", r.pair_class ? to_json(*r.pair_class) : Json(nullptr)},
            {"lower_ok", r.lower_ok},
            {"upper_ok", r.upper_ok}};
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail
{

inline double parse_real(std::string_view s, std::string_view whole)
{
    const std::string buf(s);
    if (buf.empty()) throw Error(ErrorCode::parse_error, "bad number in '" + std::string(whole) + "'");
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || errno == ERANGE) {
        throw Error(ErrorCode::parse_error, "bad number in '" + std::string(whole) + "'");
    }
    return v;
}

}  // namespace detail

/// Complex literal "x+yi", "x-yi", "yi", "x", "i" with optional spaces.
inline Point parse_complex(std::string_view text)
{
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    }
    if (s.empty()) throw Error(ErrorCode::parse_error, "empty complex literal");
    if (s.back() != 'i') return {detail::parse_real(s, text), 0.0};
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const std::string re = split == std::string::npos ? "" : s.substr(0, split);
    std::string im = split == std::string::npos ? s : s.substr(split);
    if (im.empty() || im == "+") im = "1";
    if (im == "-") im = "-1";
    return {re.empty() ? 0.0 : detail::parse_real(re, text), detail::parse_real(im, text)};
}

inline Point parse_point_json(const Json& j)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw Error(ErrorCode::parse_error, "point must be [x, y]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

/// {"va":[x,y],"vb":[x,y],"vc":[x,y]}
inline LabeledTriangle parse_triangle(std::string_view text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::parse_error, std::string("triangle JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("va") || !j.contains("vb") || !j.contains("vc")) {
        throw Error(ErrorCode::parse_error, "triangle JSON needs va, vb, vc");
    }
    return {parse_point_json(j["va"]), parse_point_json(j["vb"]), parse_point_json(j["vc"])};
}

inline ShapePoint parse_shape_json(const Json& j)
{
    if (!j.is_object() || !j.contains("re") || !j.contains("im") || !j["re"].is_number() ||
        !j["im"].is_number()) {
        throw Error(ErrorCode::parse_error, "shape point JSON needs numeric re, im");
    }
    return ShapePoint{j["re"].get<double>(), j["im"].get<double>()};
}

}  // namespace tritei
