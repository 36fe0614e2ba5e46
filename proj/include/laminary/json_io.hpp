#pragma once

// JSON serialization for scenarios, built universal circles, laminations,
// and classification reports. All rationals travel as "p/q" strings; output
// uses insertion-ordered objects so serialization is byte-deterministic.

#include "laminary/invariant_lams.hpp"
#include "laminary/universal_circle.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace laminary {

using json = nlohmann::ordered_json;

struct JsonFormatError : std::runtime_error {
    explicit JsonFormatError(const std::string& what)
        : std::runtime_error("malformed document: " + what) {}
};

namespace jsondetail {

inline std::string side_name(Side s) { return to_string(s); }

inline Side parse_side(const std::string& s) {
    if (s == "positive") return Side::Positive;
    if (s == "negative") return Side::Negative;
    throw JsonFormatError("side must be \"positive\" or \"negative\", got \"" + s + "\"");
}

inline CirclePoint parse_point(const json& j) {
    if (!j.is_string()) throw JsonFormatError("expected a rational string");
    return CirclePoint::from_string(j.get<std::string>());
}

inline const json& need(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw JsonFormatError(std::string("missing key \"") + key + "\"");
    return *it;
}

}  // namespace jsondetail

// ---------------------------------------------------------------------------
// Leaf space

inline json leafspace_to_json(const LeafSpace& space) {
    json j;
    j["leaves"] = space.leaves();
    json segs = json::array();
    for (const auto& [lo, hi] : space.cover_edges())
        segs.push_back(json::array({space.name_of(lo), space.name_of(hi)}));
    j["segments"] = std::move(segs);
    json ns = json::array();
    for (const auto& p : space.nonseparated())
        ns.push_back({{"pair", json::array({p.a, p.b})},
                      {"side", jsondetail::side_name(p.side)}});
    j["nonseparated"] = std::move(ns);
    return j;
}

inline LeafSpace leafspace_from_json(const json& j) {
    std::vector<std::string> leaves =
        jsondetail::need(j, "leaves").get<std::vector<std::string>>();
    std::vector<std::vector<std::string>> segments;
    for (const auto& seg : jsondetail::need(j, "segments"))
        segments.push_back(seg.get<std::vector<std::string>>());
    std::vector<NonsepPair> nonsep;
    if (j.contains("nonseparated"))
        for (const auto& p : j.at("nonseparated")) {
            const auto& pair = jsondetail::need(p, "pair");
            if (!pair.is_array() || pair.size() != 2)
                throw JsonFormatError("nonseparated pair must be a 2-array");
            nonsep.push_back({pair[0].get<std::string>(), pair[1].get<std::string>(),
                              jsondetail::parse_side(
                                  jsondetail::need(p, "side").get<std::string>())});
        }
    return LeafSpace(std::move(leaves), std::move(segments), std::move(nonsep));
}

// ---------------------------------------------------------------------------
// Scenario

inline json scenario_to_json(const Scenario& s) {
    json j = leafspace_to_json(s.space);
    json circles = json::object();
    for (const auto& [leaf, circle] : s.circles) {
        json marks = json::object();
        for (const auto& [name, pos] : circle.marks) marks[name] = pos.str();
        circles[leaf] = std::move(marks);
    }
    j["circles"] = std::move(circles);
    json markers = json::array();
    for (const auto& m : s.markers)
        markers.push_back({{"support", m.support}, {"points", m.points}});
    j["markers"] = std::move(markers);
    json gens = json::array();
    for (const auto& g : s.generators) {
        json marks = json::object();
        for (const auto& [leaf, table] : g.mark_maps) {
            json t = json::object();
            for (const auto& [from, to] : table) t[from] = to;
            marks[leaf] = std::move(t);
        }
        gens.push_back({{"name", g.autom.name},
                        {"map", json(g.autom.map)},
                        {"marks", std::move(marks)}});
    }
    j["generators"] = std::move(gens);
    return j;
}

inline Scenario scenario_from_json(const json& j) {
    Scenario s;
    s.space = leafspace_from_json(j);
    for (const auto& [leaf, marks] : jsondetail::need(j, "circles").items()) {
        MarkedCircle circle;
        for (const auto& [name, pos] : marks.items())
            circle.marks.emplace(name, jsondetail::parse_point(pos));
        s.circles.emplace(leaf, std::move(circle));
    }
    for (const auto& m : jsondetail::need(j, "markers"))
        s.markers.push_back(
            {jsondetail::need(m, "support").get<std::vector<std::string>>(),
             jsondetail::need(m, "points").get<std::vector<std::string>>()});
    if (j.contains("generators"))
        for (const auto& g : j.at("generators")) {
            Generator gen;
            gen.autom.name = jsondetail::need(g, "name").get<std::string>();
            for (const auto& [from, to] : jsondetail::need(g, "map").items())
                gen.autom.map.emplace(from, to.get<std::string>());
            if (g.contains("marks"))
                for (const auto& [leaf, table] : g.at("marks").items())
                    for (const auto& [from, to] : table.items())
                        gen.mark_maps[leaf].emplace(from, to.get<std::string>());
            s.generators.push_back(std::move(gen));
        }
    return s;
}

// ---------------------------------------------------------------------------
// Built universal circle

inline json result_to_json(const UniversalCircleResult& r) {
    json j;
    j["leafspace"] = leafspace_to_json(r.space);
    json secs = json::array();
    const std::size_t n = r.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& sec = r.sections[i];
        json values = json::object();
        for (const auto& [leaf, v] : sec.values) values[leaf] = v.str();
        json origins = json::array();
        for (const auto& [leaf, mark] : sec.origins)
            origins.push_back(json::array({leaf, mark}));
        secs.push_back({{"name", sec.name},
                        {"position", format_rational(Rational(i, n))},
                        {"values", std::move(values)},
                        {"origins", std::move(origins)}});
    }
    j["sections"] = std::move(secs);
    json phi = json::object();
    for (const auto& [leaf, m] : r.phi) {
        json bps = json::array();
        for (const auto& bp : m.breakpoints())
            bps.push_back(json::array({bp.x.str(), bp.y.str()}));
        phi[leaf] = std::move(bps);
    }
    j["phi"] = std::move(phi);
    j["generator_actions"] = json(r.generator_actions);
    return j;
}

inline UniversalCircleResult result_from_json(const json& j) {
    UniversalCircleResult r;
    r.space = leafspace_from_json(jsondetail::need(j, "leafspace"));
    for (const auto& sec : jsondetail::need(j, "sections")) {
        SpecialSection s;
        s.name = jsondetail::need(sec, "name").get<std::string>();
        for (const auto& [leaf, v] : jsondetail::need(sec, "values").items())
            s.values.emplace(leaf, jsondetail::parse_point(v));
        for (const auto& o : jsondetail::need(sec, "origins")) {
            if (!o.is_array() || o.size() != 2)
                throw JsonFormatError("origin must be a [leaf, mark] pair");
            s.origins.emplace_back(o[0].get<std::string>(), o[1].get<std::string>());
        }
        r.sections.push_back(std::move(s));
    }
    if (r.sections.empty()) throw JsonFormatError("result has no sections");
    const std::size_t n = r.sections.size();
    for (const auto& leaf : r.space.leaves()) {
        std::vector<MonotoneMap::Breakpoint> bps;
        for (std::size_t i = 0; i < n; ++i) {
            auto it = r.sections[i].values.find(leaf);
            if (it == r.sections[i].values.end())
                throw JsonFormatError("section " + r.sections[i].name +
                                      " has no value at leaf " + leaf);
            bps.push_back({CirclePoint(Rational(i, n)), it->second});
        }
        r.phi.emplace(leaf, make_monotone(std::move(bps)));
    }
    if (j.contains("generator_actions"))
        for (const auto& [name, perm] : j.at("generator_actions").items()) {
            auto p = perm.get<std::vector<std::size_t>>();
            if (p.size() != n)
                throw JsonFormatError("generator action " + name + " has wrong length");
            r.generator_actions.emplace(name, std::move(p));
        }
    return r;
}

// ---------------------------------------------------------------------------
// Laminations

inline json lamination_to_json(const Lamination& lam) {
    json arr = json::array();
    for (const auto& c : lam.leaves())
        arr.push_back(json::array({c.a.str(), c.b.str()}));
    return arr;
}

inline Lamination lamination_from_json(const json& j) {
    std::vector<Chord> chords;
    for (const auto& c : j) {
        if (!c.is_array() || c.size() != 2)
            throw JsonFormatError("chord must be a 2-array of rational strings");
        chords.emplace_back(jsondetail::parse_point(c[0]), jsondetail::parse_point(c[1]));
    }
    return make_lamination(std::move(chords));
}

/// Universal laminations plus their per-leaf pushforwards. Chord endpoints at
/// section positions are also reported by section name.
inline json laminations_to_json(const UniversalCircleResult& r,
                                const UnivLaminationPair& lams) {
    json j;
    const std::size_t n = r.size();
    auto section_name = [&](const CirclePoint& p) -> json {
        Rational idx = p.turn() * Rational(n);
        if (denominator(idx) == 1) {
            auto i = static_cast<std::size_t>(numerator(idx));
            if (i < n) return r.sections[i].name;
        }
        return nullptr;
    };
    for (Side sign : {Side::Positive, Side::Negative}) {
        const Lamination& lam = sign == Side::Positive ? lams.plus : lams.minus;
        const char* key = sign == Side::Positive ? "plus" : "minus";
        j[key] = lamination_to_json(lam);
        json names = json::array();
        for (const auto& c : lam.leaves())
            names.push_back(json::array({section_name(c.a), section_name(c.b)}));
        j[std::string(key) + "_sections"] = std::move(names);
    }
    json leaves = json::object();
    for (const auto& leaf : r.space.leaves())
        leaves[leaf] = {
            {"plus", lamination_to_json(leaf_lamination(r, lams, leaf, Side::Positive))},
            {"minus", lamination_to_json(leaf_lamination(r, lams, leaf, Side::Negative))}};
    j["leaves"] = std::move(leaves);
    return j;
}

// ---------------------------------------------------------------------------
// Classification

inline std::string to_string(Alternative a) {
    switch (a) {
        case Alternative::FanEverywhere: return "FanEverywhere";
        case Alternative::GenuineCandidate: return "GenuineCandidate";
        default: return "Mixed";
    }
}

inline std::string to_string(FixedPointReport::Status s) {
    switch (s) {
        case FixedPointReport::Status::NoGenerators: return "NoGenerators";
        case FixedPointReport::Status::Consistent: return "Consistent";
        default: return "Inconsistent";
    }
}

inline json classification_to_json(const ClassifyReport& cls,
                                   const FixedPointReport& fp) {
    json j;
    j["verdict"] = to_string(cls.verdict);
    json leaves = json::array();
    for (const auto& d : cls.detail)
        leaves.push_back(
            {{"leaf", d.leaf},
             {"lamination", lamination_to_json(d.lamination)},
             {"fan_center", d.fan_center ? json(d.fan_center->str()) : json(nullptr)}});
    j["leaves"] = std::move(leaves);
    j["fixed_point"] = {{"status", to_string(fp.status)},
                        {"branching", std::string(to_string(fp.branching))},
                        {"fixed_sections", fp.fixed_sections}};
    return j;
}

/// Canonical dump used by every writer: two-space indent, trailing newline.
inline std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace laminary
