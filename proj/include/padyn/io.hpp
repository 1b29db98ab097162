#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "padyn/geometry.hpp"
#include "padyn/herman.hpp"
#include "padyn/ratmap.hpp"
#include "padyn/region.hpp"
#include "padyn/report.hpp"

namespace padyn {

using json = nlohmann::ordered_json;

// Input that fails schema validation; the CLI maps this to exit code 2.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace io {

inline const json& need(const json& j, const char* key, const char* where) {
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError(std::string(where) + ": missing field '" + key + "'");
    return *it;
}

inline std::string need_string(const json& j, const char* key, const char* where) {
    const json& v = need(j, key, where);
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (!v.is_string())
        throw ParseError(std::string(where) + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

inline FieldContext parse_context(const json& j, const char* where) {
    const json& pv = need(j, "p", where);
    if (!pv.is_number_integer())
        throw ParseError(std::string(where) + ": 'p' must be an integer");
    try {
        return FieldContext(pv.get<long>(), 2);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string(where) + ": " + e.what());
    }
}

inline Poly parse_poly(const json& j, const char* where) {
    if (!j.is_array() || j.empty())
        throw ParseError(std::string(where) + ": expected a non-empty coefficient array");
    std::vector<mpq_class> cs;
    for (const json& c : j) {
        if (c.is_number_integer()) cs.emplace_back(c.get<long>());
        else if (c.is_string()) {
            try {
                cs.push_back(parse_rational(c.get<std::string>()));
            } catch (const std::invalid_argument& e) {
                throw ParseError(std::string(where) + ": " + e.what());
            }
        } else throw ParseError(std::string(where) + ": coefficients must be strings");
    }
    return Poly(std::move(cs));
}

/// {"p": 5, "num": ["0", "-1/5", "1"], "den": ["-1", "0", "1"]}
/// (coefficients ascending).
inline RationalMap parse_map(const json& j, const char* where = "map") {
    if (!j.is_object()) throw ParseError(std::string(where) + ": expected an object");
    FieldContext ctx = parse_context(j, where);
    Poly num = parse_poly(need(j, "num", where), where);
    Poly den = parse_poly(need(j, "den", where), where);
    try {
        return RationalMap(ctx, num, den);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string(where) + ": " + e.what());
    }
}

inline json poly_to_json(const Poly& f) {
    json a = json::array();
    if (f.is_zero()) {
        a.push_back("0");
        return a;
    }
    for (int i = 0; i <= f.degree(); ++i) a.push_back(rational_str(f.coeff(i)));
    return a;
}

inline json map_to_json(const RationalMap& r) {
    json j;
    j["p"] = r.context().prime;
    j["num"] = poly_to_json(r.num());
    j["den"] = poly_to_json(r.den());
    return j;
}

inline FieldElement parse_element(const FieldContext& ctx, const json& v, const char* where) {
    std::string s;
    if (v.is_number_integer()) s = std::to_string(v.get<long long>());
    else if (v.is_string()) s = v.get<std::string>();
    else throw ParseError(std::string(where) + ": expected a field element string");
    try {
        return FieldElement::parse(ctx, s);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string(where) + ": " + e.what());
    }
}

inline HalfInt parse_halfint(const json& v, const char* key, const char* where) {
    std::string s;
    if (v.is_number_integer()) s = std::to_string(v.get<long long>());
    else if (v.is_string()) s = v.get<std::string>();
    else throw ParseError(std::string(where) + ": '" + key + "' must be an integer or half-integer string");
    try {
        return HalfInt::parse(s);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string(where) + ": " + e.what());
    }
}

/// {"kind":"disk","center":"0","radius_exp":"1","open":true} and the ball /
/// around-infinity / annulus variants.  radius = p^{-radius_exp}.
inline Region parse_region(const FieldContext& ctx, const json& j, const char* where = "region") {
    if (!j.is_object()) throw ParseError(std::string(where) + ": expected an object");
    std::string kind = need_string(j, "kind", where);
    try {
        if (kind == "disk" || kind == "ball") {
            FieldElement c = parse_element(ctx, need(j, "center", where), where);
            HalfInt k = parse_halfint(need(j, "radius_exp", where), "radius_exp", where);
            bool open = kind == "disk";
            if (j.contains("open") && j["open"].is_boolean()) open = j["open"].get<bool>();
            return open ? Region::disk(c, k) : Region::ball(c, k);
        }
        if (kind == "around-infinity") {
            HalfInt k = parse_halfint(need(j, "radius_exp", where), "radius_exp", where);
            bool open = true;
            if (j.contains("open") && j["open"].is_boolean()) open = j["open"].get<bool>();
            return Region::around_infinity(ctx, k, open);
        }
        if (kind == "annulus") {
            FieldElement c = parse_element(ctx, need(j, "center", where), where);
            HalfInt in = parse_halfint(need(j, "inner_exp", where), "inner_exp", where);
            HalfInt out = parse_halfint(need(j, "outer_exp", where), "outer_exp", where);
            bool in_open = true, out_open = true;
            if (j.contains("inner_open") && j["inner_open"].is_boolean()) in_open = j["inner_open"].get<bool>();
            if (j.contains("outer_open") && j["outer_open"].is_boolean()) out_open = j["outer_open"].get<bool>();
            return Region::annulus(c, in, out, in_open, out_open);
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string(where) + ": " + e.what());
    }
    throw ParseError(std::string(where) + ": unknown kind '" + kind + "'");
}

inline json region_to_json(const Region& g) {
    json j;
    switch (g.kind()) {
        case RegionKind::Disk:
        case RegionKind::Ball:
            j["kind"] = g.kind() == RegionKind::Disk ? "disk" : "ball";
            j["center"] = g.center().str();
            j["radius_exp"] = g.radius_exp().str();
            j["open"] = g.kind() == RegionKind::Disk;
            break;
        case RegionKind::AroundInfinity:
            j["kind"] = "around-infinity";
            j["radius_exp"] = g.radius_exp().str();
            j["open"] = !g.boundary_included();
            break;
        case RegionKind::Annulus:
            j["kind"] = "annulus";
            j["center"] = g.center().str();
            j["inner_exp"] = g.inner_exp().str();
            j["outer_exp"] = g.outer_exp().str();
            j["inner_open"] = g.inner_strict();
            j["outer_open"] = g.outer_strict();
            break;
    }
    return j;
}

/// {"z0": "0", "mu": "25"}
inline HermanParams parse_params(const FieldContext& ctx, const json& j, const char* where = "params") {
    if (!j.is_object()) throw ParseError(std::string(where) + ": expected an object");
    return HermanParams{parse_element(ctx, need(j, "z0", where), where),
                        parse_element(ctx, need(j, "mu", where), where)};
}

inline json params_to_json(const HermanParams& prm) {
    json j;
    j["z0"] = prm.z0.str();
    j["mu"] = prm.mu.str();
    return j;
}

inline json report_to_json(const VerificationReport& rep) {
    json checks = json::array();
    for (const Check& c : rep.checks) {
        json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        if (!c.note.empty()) jc["note"] = c.note;
        json ws = json::array();
        for (const Witness& w : c.witnesses) {
            json jw;
            jw["label"] = w.label;
            jw["detail"] = w.detail;
            ws.push_back(jw);
        }
        if (!ws.empty()) jc["witnesses"] = ws;
        checks.push_back(jc);
    }
    json j;
    if (!rep.title.empty()) j["title"] = rep.title;
    j["checks"] = checks;
    if (!rep.notes.empty()) j["notes"] = rep.notes;
    j["pass"] = rep.pass();
    return j;
}

inline json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file: " + path);
    try {
        return json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
}

} // namespace io

} // namespace padyn
