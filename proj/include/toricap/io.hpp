#pragma once

// JSON and CSV encodings. Rationals travel as "p/q" strings, floats are
// printed with 12 significant digits.

#include <cstdio>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "toricap/capacities.hpp"
#include "toricap/error.hpp"
#include "toricap/moment_domain.hpp"
#include "toricap/rational.hpp"
#include "toricap/rounding.hpp"
#include "toricap/sft_ledger.hpp"

namespace toricap::io {

using json = nlohmann::json;

inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    throw Error(ErrorCode::ParseError, "expected a rational string or integer, got " + j.dump());
}

inline json rational_to_json(const Rational& r) { return to_string(r); }

// ---------------------------------------------------------------------------
// domains

using DomainInput = std::variant<MomentDomain2D, EllipsoidSpec>;

inline DomainInput domain_from_json(const json& j) {
    try {
        const std::string type = j.at("type").get<std::string>();
        if (type == "polygon") {
            std::vector<Point2> vertices;
            for (const auto& v : j.at("vertices")) {
                if (!v.is_array() || v.size() != 2) throw Error(ErrorCode::ParseError, "vertex must be a pair");
                vertices.push_back({rational_from_json(v[0]), rational_from_json(v[1])});
            }
            return make_polygon_domain(std::move(vertices));
        }
        if (type == "ellipsoid") {
            std::vector<Rational> axes;
            for (const auto& a : j.at("axes")) axes.push_back(rational_from_json(a));
            return EllipsoidSpec(std::move(axes));
        }
        throw Error(ErrorCode::ParseError, "unknown domain type '" + type + "'");
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

inline json domain_to_json(const MomentDomain2D& d) {
    json vertices = json::array();
    for (const auto& p : d.vertices()) vertices.push_back({to_string(p.x), to_string(p.y)});
    return {{"type", "polygon"}, {"vertices", vertices}};
}

inline json domain_to_json(const EllipsoidSpec& e) {
    json axes = json::array();
    for (const auto& a : e.axes()) axes.push_back(to_string(a));
    return {{"type", "ellipsoid"}, {"axes", axes}};
}

inline json domain_to_json(const DomainInput& d) {
    return std::visit([](const auto& x) { return domain_to_json(x); }, d);
}

inline void write_polyline_csv(std::ostream& out, const std::vector<Point2>& points) {
    out << "x,y\n";
    for (const auto& p : points) out << to_string(p.x) << ',' << to_string(p.y) << '\n';
}

inline void write_polyline_csv(std::ostream& out, const std::vector<std::pair<double, double>>& points) {
    out << "x,y\n";
    for (const auto& [x, y] : points) out << format_double(x) << ',' << format_double(y) << '\n';
}

// ---------------------------------------------------------------------------
// capacities

inline json capacity_to_json(const CapacityReport& r) {
    json j = {{"k", r.k}, {"value", to_string(r.value)}};
    if (r.minimizer) {
        j["minimizer"] = {r.minimizer->l(), r.minimizer->m()};
    } else if (r.multiple) {
        j["minimizer"] = {{"axis", r.multiple->axis == AxisMultiple::Axis::A ? "a" : "b"},
                          {"multiple", r.multiple->multiple}};
    }
    return j;
}

inline CapacityReport capacity_from_json(const json& j) {
    CapacityReport r;
    r.k = j.at("k").get<long long>();
    r.value = rational_from_json(j.at("value"));
    if (j.contains("minimizer")) {
        const auto& m = j.at("minimizer");
        if (m.is_array()) {
            r.minimizer = LatticeDirection(m.at(0).get<long long>(), m.at(1).get<long long>());
        } else {
            r.multiple = AxisMultiple{m.at("axis").get<std::string>() == "a" ? AxisMultiple::Axis::A : AxisMultiple::Axis::B,
                                      m.at("multiple").get<long long>()};
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// spectrum

inline void write_spectrum_csv(std::ostream& out, const std::vector<ReebOrbitFamily>& families) {
    out << "l,m,gcd,action,elliptic_cz,hyperbolic_cz\n";
    for (const auto& f : families) {
        OrbitSplit split = split_family(f);
        out << f.direction.l() << ',' << f.direction.m() << ',' << f.multiplicity << ',' << format_double(f.action)
            << ',' << split.elliptic_cz << ',' << split.hyperbolic_cz << '\n';
    }
}

inline json spectrum_to_json(const std::vector<ReebOrbitFamily>& families) {
    json rows = json::array();
    for (const auto& f : families) {
        OrbitSplit split = split_family(f);
        rows.push_back({{"l", f.direction.l()},
                        {"m", f.direction.m()},
                        {"gcd", f.multiplicity},
                        {"action", format_double(f.action)},
                        {"point", {format_double(f.point.x), format_double(f.point.y)}},
                        {"elliptic_cz", split.elliptic_cz},
                        {"hyperbolic_cz", split.hyperbolic_cz}});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// buildings

inline NodeKind node_kind_from_string(const std::string& s) {
    if (s == "cotangent") return NodeKind::Cotangent;
    if (s == "symplectization") return NodeKind::Symplectization;
    if (s == "top") return NodeKind::Top;
    throw Error(ErrorCode::ParseError, "unknown node kind '" + s + "'");
}

inline PunctureSign sign_from_string(const std::string& s) {
    if (s == "positive") return PunctureSign::Positive;
    if (s == "negative") return PunctureSign::Negative;
    throw Error(ErrorCode::ParseError, "unknown puncture sign '" + s + "'");
}

inline json building_to_json(const Building& b) {
    json nodes = json::array();
    for (const auto& n : b.nodes) {
        json punctures = json::array();
        for (const auto& p : n.punctures) {
            json pw = nullptr;
            if (p.paired_with) pw = {{"node", p.paired_with->node}, {"puncture", p.paired_with->puncture}};
            punctures.push_back({{"cz", p.cz}, {"action", to_string(p.action)}, {"sign", to_string(p.sign)}, {"paired_with", pw}});
        }
        nodes.push_back({{"id", n.id},
                         {"level", n.level},
                         {"kind", to_string(n.kind)},
                         {"index", n.index},
                         {"energy", to_string(n.energy)},
                         {"divisor_hits", n.divisor_hits},
                         {"punctures", punctures}});
    }
    return {{"nodes", nodes},
            {"index_total", b.index_total},
            {"energy_budget", to_string(b.energy_budget)},
            {"energy_exact", b.energy_exact},
            {"check_parity", b.check_parity}};
}

inline Building building_from_json(const json& j) {
    try {
        Building b;
        for (const auto& jn : j.at("nodes")) {
            BuildingNode n{jn.at("id").get<long long>(),
                           jn.at("level").get<int>(),
                           node_kind_from_string(jn.at("kind").get<std::string>()),
                           jn.at("index").get<long long>(),
                           rational_from_json(jn.at("energy")),
                           jn.value("divisor_hits", 0LL),
                           {}};
            for (const auto& jp : jn.at("punctures")) {
                BuildingPuncture p{jp.at("cz").get<long long>(), rational_from_json(jp.at("action")),
                                   sign_from_string(jp.at("sign").get<std::string>()), std::nullopt};
                if (jp.contains("paired_with") && !jp.at("paired_with").is_null()) {
                    const auto& pw = jp.at("paired_with");
                    p.paired_with = PunctureRef{pw.at("node").get<long long>(), pw.at("puncture").get<std::size_t>()};
                }
                n.punctures.push_back(std::move(p));
            }
            b.nodes.push_back(std::move(n));
        }
        b.index_total = j.value("index_total", 0LL);
        b.energy_budget = j.contains("energy_budget") ? rational_from_json(j.at("energy_budget")) : Rational(0);
        b.energy_exact = j.value("energy_exact", false);
        b.check_parity = j.value("check_parity", false);
        return b;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

inline json report_to_json(const ValidationReport& report) {
    json out = json::array();
    for (const auto& c : report) out.push_back({{"check", c.check}, {"status", to_string(c.status)}, {"detail", c.detail}});
    return out;
}

inline ValidationReport report_from_json(const json& j) {
    ValidationReport out;
    for (const auto& c : j) {
        const std::string status = c.at("status").get<std::string>();
        CheckStatus s = status == "pass" ? CheckStatus::Pass : status == "fail" ? CheckStatus::Fail : CheckStatus::Skip;
        out.push_back({c.at("check").get<std::string>(), s, c.at("detail").get<std::string>()});
    }
    return out;
}

}  // namespace toricap::io
