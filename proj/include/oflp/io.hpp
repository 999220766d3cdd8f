#pragma once

#include "oflp/core.hpp"
#include "oflp/fairness.hpp"

#include <json.hpp>

#include <fstream>
#include <string>
#include <vector>

namespace oflp::io {

using nlohmann::json;

/// Numbers are accepted as strings ("0.1", "1/2") or integers; JSON floats
/// are rejected because they would not round-trip exactly.
inline Rational rational_from_json(const json& v, const std::string& where) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_number())
        throw ParseError(where + ": write numbers as strings, floating-point JSON is inexact");
    throw ParseError(where + ": expected a number string");
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw ParseError("invalid JSON in '" + path + "'");
    return j;
}

inline std::vector<Rational> locations_from_json(const json& j, const std::string& key) {
    if (!j.is_object() || !j.contains(key) || !j[key].is_array())
        throw ParseError("expected an object with a '" + key + "' array");
    std::vector<Rational> xs;
    for (const auto& v : j[key]) xs.push_back(rational_from_json(v, key));
    return xs;
}

/// Agent-indexed locations, input order preserved.
inline std::vector<Rational> read_locations(const std::string& path) {
    return locations_from_json(load_json_file(path), "locations");
}

inline Profile read_profile(const std::string& path) { return Profile(read_locations(path)); }

inline bool is_hybrid_file(const json& j) {
    return j.is_object() && (j.contains("classic") || j.contains("obnoxious"));
}

inline HybridProfile read_hybrid(const std::string& path) {
    json j = load_json_file(path);
    std::vector<Rational> classic, obnoxious;
    if (j.contains("classic")) classic = locations_from_json(j, "classic");
    if (j.contains("obnoxious")) obnoxious = locations_from_json(j, "obnoxious");
    return HybridProfile(std::move(classic), std::move(obnoxious));
}

inline Lottery read_lottery(const std::string& path) {
    json j = load_json_file(path);
    if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array())
        throw ParseError("expected an object with an 'atoms' array of [location, probability]");
    std::vector<Lottery::Atom> atoms;
    for (const auto& a : j["atoms"]) {
        if (!a.is_array() || a.size() != 2)
            throw ParseError("each atom must be a [location, probability] pair");
        atoms.push_back({Loc(rational_from_json(a[0], "atom location")),
                         rational_from_json(a[1], "atom probability")});
    }
    try {
        return Lottery(std::move(atoms));
    } catch (const std::domain_error& e) {
        throw ParseError(std::string("bad lottery: ") + e.what());
    }
}

inline json locations_to_json(const std::vector<Rational>& xs) {
    json arr = json::array();
    for (const auto& x : xs) arr.push_back(to_fraction(x));
    return json{{"locations", arr}};
}

inline json lottery_to_json(const Lottery& l) {
    json arr = json::array();
    for (const auto& a : l.atoms())
        arr.push_back(json::array({to_fraction(a.location.value()), to_fraction(a.probability)}));
    return json{{"atoms", arr}};
}

} // namespace oflp::io
