#pragma once

// JSON documents for complexes, vertex maps, surfaces, arcs, disk catalogs and
// certificates, plus the plain-text certificate report. Writers emit keys in a
// fixed order so repeated runs are byte-identical.

#include <nlohmann/json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "tminimal/disk_model.hpp"
#include "tminimal/flag_complex.hpp"
#include "tminimal/retraction_engine.hpp"
#include "tminimal/simplicial_map.hpp"
#include "tminimal/surface_model.hpp"

namespace tminimal {

using Json = nlohmann::ordered_json;

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {
inline const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw FormatError(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw FormatError(where + ": missing field '" + key + "'");
    return *it;
}
inline int int_field(const Json& j, const char* key, const std::string& where) {
    const Json& v = field(j, key, where);
    if (!v.is_number_integer()) throw FormatError(where + "." + key + ": expected an integer");
    return v.get<int>();
}
inline std::string string_field(const Json& j, const char* key, const std::string& where) {
    const Json& v = field(j, key, where);
    if (!v.is_string()) throw FormatError(where + "." + key + ": expected a string");
    return v.get<std::string>();
}
inline std::vector<int> code_field(const Json& j, const char* key, const std::string& where) {
    const Json& v = field(j, key, where);
    if (!v.is_array()) throw FormatError(where + "." + key + ": expected an array of letters");
    std::vector<int> out;
    for (const auto& x : v) {
        if (!x.is_number_integer()) throw FormatError(where + "." + key + ": letters must be integers");
        out.push_back(x.get<int>());
    }
    return out;
}
}  // namespace detail

/// Parses text, reporting the byte position of syntax errors.
inline Json parse_json(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw FormatError(source + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

// ---------------------------------------------------------------- complexes

inline Json to_json(const FlagComplex& c) {
    Json j;
    j["vertices"] = Json::array();
    for (const auto& v : c.vertices()) j["vertices"].push_back({{"id", v.id}, {"label", v.label}});
    j["edges"] = Json::array();
    for (const auto& [a, b] : c.edges()) j["edges"].push_back({a, b});
    return j;
}

/// Edges must list the smaller id first and appear once.
inline FlagComplex complex_from_json(const Json& j) {
    const Json& vs = detail::field(j, "vertices", "complex");
    const Json& es = detail::field(j, "edges", "complex");
    if (!vs.is_array() || !es.is_array()) throw FormatError("complex: vertices and edges must be arrays");
    std::vector<Vertex> vertices;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        std::string where = "complex.vertices[" + std::to_string(i) + "]";
        std::string id = detail::string_field(vs[i], "id", where);
        std::string label = vs[i].contains("label") && vs[i]["label"].is_string() ? vs[i]["label"].get<std::string>() : id;
        vertices.push_back({id, label});
    }
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::set<std::pair<VertexId, VertexId>> seen;
    for (std::size_t i = 0; i < es.size(); ++i) {
        std::string where = "complex.edges[" + std::to_string(i) + "]";
        const Json& e = es[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw FormatError(where + ": expected a pair of vertex ids");
        std::string a = e[0].get<std::string>(), b = e[1].get<std::string>();
        if (!(a < b)) throw FormatError(where + ": edge [" + a + ", " + b + "] is not listed smaller id first");
        if (!seen.emplace(a, b).second) throw FormatError(where + ": duplicate edge");
        edges.emplace_back(a, b);
    }
    try {
        return FlagComplex(std::move(vertices), edges);
    } catch (const ComplexError& e) {
        throw FormatError(std::string("complex: ") + e.what());
    }
}

inline Json to_json(const VertexMap& f) {
    Json j;
    j["map"] = Json::array();
    for (const auto& [a, b] : f.assignment()) j["map"].push_back({a, b});
    return j;
}

inline VertexMap vertex_map_from_json(const Json& j, const FlagComplex& domain, const FlagComplex& codomain) {
    const Json& m = detail::field(j, "map", "vertex map");
    if (!m.is_array()) throw FormatError("vertex map: 'map' must be an array");
    std::map<VertexId, VertexId> a;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const Json& e = m[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw FormatError("vertex map.map[" + std::to_string(i) + "]: expected [from, to]");
        if (!a.emplace(e[0].get<std::string>(), e[1].get<std::string>()).second)
            throw FormatError("vertex map.map[" + std::to_string(i) + "]: vertex assigned twice");
    }
    try {
        return VertexMap(domain, codomain, std::move(a));
    } catch (const ComplexError& e) {
        throw FormatError(std::string("vertex map: ") + e.what());
    }
}

// ---------------------------------------------------------------- surfaces

inline Json to_json(const TubedSurface& s) {
    Json j;
    j["base_genus"] = s.base_genus;
    j["tubes"] = s.tubes;
    j["copies"] = s.copies();
    j["genus"] = s.genus();
    j["w_side"] = to_string(s.w_side());
    j["tube_sides"] = Json::array();
    for (int i = 1; i <= s.tubes; ++i) j["tube_sides"].push_back(to_string(s.tube_side(i)));
    j["regions"] = Json::array();
    for (int r = 1; r <= s.tubes; ++r) {
        const auto& m = s.region(r);
        Json feet = Json::array();
        for (const auto& f : m.feet) feet.push_back({{"tube", f.tube}, {"boundary", to_string(f.boundary)}});
        j["regions"].push_back({{"region", r},
                                {"copies", {r - 1, r}},
                                {"puncture_tube", r},
                                {"block_side", to_string(s.block_side(r))},
                                {"relative_side", to_string(s.relative(s.block_side(r)))},
                                {"polygon_word", m.word()},
                                {"feet", feet}});
    }
    return j;
}

inline Json to_json(const ArcClass& a) {
    return {{"code", a.code}, {"start_corner", a.start_corner}, {"end_corner", a.end_corner}};
}

inline Json arcs_to_json(const PuncturedSurfaceModel& m, int arc_bound, const std::vector<ArcClass>& arcs) {
    Json j;
    j["genus"] = m.genus;
    j["arc_bound"] = arc_bound;
    j["count"] = arcs.size();
    j["arcs"] = Json::array();
    for (const auto& a : arcs) j["arcs"].push_back(to_json(a));
    return j;
}

// ---------------------------------------------------------------- disks

inline Json to_json(const DiskVertex& d) {
    Json j;
    j["kind"] = to_string(d.kind());
    switch (d.kind()) {
        case DiskKind::Meridian:
            j["tube"] = d.index();
            break;
        case DiskKind::Vertical:
            j["region"] = d.index();
            j["arc"] = d.arc().code;
            break;
        case DiskKind::BandSum:
            j["base"] = d.index();
            j["partner"] = to_json(d.partner());
            j["band"] = d.arc().code;
            j["copies"] = d.copies();
            break;
    }
    return j;
}

/// Arc codes must already be in canonical form.
inline DiskVertex disk_from_json(const Json& j, const PuncturedSurfaceModel& m, const std::string& where) {
    std::string kind = detail::string_field(j, "kind", where);
    auto arc = [&](const char* key) {
        std::vector<int> code = detail::code_field(j, key, where);
        ArcClass a;
        try {
            a = make_arc(m, code);
        } catch (const ArcError& e) {
            throw FormatError(where + "." + key + ": " + e.what());
        }
        if (a.code != code) throw FormatError(where + "." + key + ": arc code is not in canonical form");
        return a;
    };
    try {
        if (kind == "meridian") return meridian(detail::int_field(j, "tube", where));
        if (kind == "vertical") return vertical_disk(detail::int_field(j, "region", where), arc("arc"));
        if (kind == "bandsum") {
            DiskVertex p = disk_from_json(detail::field(j, "partner", where), m, where + ".partner");
            return band_sum(detail::int_field(j, "base", where), p, arc("band"), detail::int_field(j, "copies", where));
        }
    } catch (const DiskError& e) {
        throw FormatError(where + ": " + e.what());
    }
    throw FormatError(where + ".kind: unknown disk kind '" + kind + "'");
}

inline Json to_json(const CatalogBounds& b) {
    return {{"arc_bound", b.arc_bound}, {"band_bound", b.band_bound}, {"bandsum_depth", b.depth},
            {"max_copies", b.max_copies}};
}

inline Json catalog_to_json(const DiskCatalog& c) {
    Json j;
    j["genus"] = c.surface().base_genus;
    j["tubes"] = c.surface().tubes;
    j["bounds"] = to_json(c.bounds());
    j["count"] = c.size();
    j["disks"] = Json::array();
    for (const auto& d : c.disks()) {
        Json e;
        e["id"] = d.id();
        e["type"] = to_string(c.type(d));
        e["side"] = to_string(absolute_side(d));
        e["disk"] = to_json(d);
        j["disks"].push_back(std::move(e));
    }
    return j;
}

/// Disks listed in a catalog document for surface s; each stored id must match
/// the canonical id of its descriptor.
inline std::vector<DiskVertex> disks_from_json(const Json& j, const TubedSurface& s) {
    const Json& ds = detail::field(j, "disks", "disks.json");
    if (!ds.is_array()) throw FormatError("disks.json: 'disks' must be an array");
    std::vector<DiskVertex> out;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        std::string where = "disks.json.disks[" + std::to_string(i) + "]";
        DiskVertex d = disk_from_json(detail::field(ds[i], "disk", where), s.region(1), where + ".disk");
        if (ds[i].contains("id") && ds[i]["id"] != d.id())
            throw FormatError(where + ".id: stored id does not match descriptor " + d.id());
        if (d.level() > s.tubes) throw FormatError(where + ": disk " + d.id() + " does not exist on this surface");
        out.push_back(std::move(d));
    }
    return out;
}

// ---------------------------------------------------------------- certificates

inline Json to_json(const HomologyProfile& h) {
    Json j = Json::array();
    for (std::size_t k = 0; k < h.groups.size(); ++k) j.push_back({{"dim", k}, {"group", h.groups[k].to_string()}});
    return j;
}

inline Json to_json(const Certificate& c) {
    Json j;
    j["status"] = c.passed ? "PASSED" : "FAILED";
    if (!c.failed_check.empty()) j["failed_check"] = c.failed_check;
    j["complete"] = c.complete;
    j["parameters"] = {{"genus", c.genus}, {"n", c.n}, {"surface", "F_" + std::to_string(c.n + 1)}};
    j["parameters"]["bounds"] = to_json(c.bounds);
    j["model"] = {{"surface_genus", c.surface_genus},
                  {"arcs", c.arc_count},
                  {"disks", c.disk_count},
                  {"edges", c.edge_count},
                  {"by_kind", c.kind_counts},
                  {"by_type", c.type_counts}};
    Json pairs = Json::array();
    for (std::size_t i = 0; i < c.sphere_pairs.size(); ++i)
        pairs.push_back({{"i", i}, {"D", c.sphere_pairs[i].first}, {"E", c.sphere_pairs[i].second}});
    j["sphere"] = {{"dimension", static_cast<int>(c.sphere_pairs.size()) - 1},
                   {"pairs", pairs},
                   {"reduced_homology", to_json(c.sphere_homology)},
                   {"generating_cycle", c.generating_cycle}};
    Json cases = Json::object();
    for (int k = 1; k <= 6; ++k) cases[std::to_string(k)] = c.claims.per_case[static_cast<std::size_t>(k)];
    Json viol = Json::array();
    for (const auto& v : c.claims.violations)
        viol.push_back({{"case", v.claim_case}, {"first", v.first}, {"second", v.second},
                        {"first_image", v.first_image}, {"second_image", v.second_image}});
    j["claim"] = {{"pairs_checked", c.claims.pairs_checked},
                  {"per_case", cases},
                  {"all_cases_covered", c.claims.all_cases_covered()},
                  {"empty_cases", c.claims.empty_cases()},
                  {"violations", viol}};
    j["retraction"] = {{"provenance", c.provenance_counts},
                       {"multi_arc_disks", c.multi_arc_disks},
                       {"multi_arc_disagreements", c.multi_arc_disagreements},
                       {"surgery_level_spectrum", c.level_spectrum}};
    if (c.witness) j["not_strongly_irreducible_witness"] = {{"V", c.witness->first}, {"W", c.witness->second}};
    Json checks = Json::array();
    for (const auto& ch : c.checks) checks.push_back({{"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
    j["checks"] = checks;
    j["assumptions"] = c.assumptions;
    j["caveats"] = c.caveats;
    j["conclusion"] = c.conclusion;
    return j;
}

inline std::string report_text(const Certificate& c) {
    std::ostringstream os;
    os << "certificate for F_" << c.n + 1 << " over base genus " << c.genus << ": " << (c.passed ? "PASSED" : "FAILED")
       << "\n";
    os << "catalog bounds: arc length <= " << c.bounds.arc_bound << ", band length <= " << c.bounds.band_bound
       << ", band sum depth <= " << c.bounds.depth << ", copies <= " << c.bounds.max_copies << "\n";
    os << "surface genus " << c.surface_genus << "; " << c.arc_count << " arcs, " << c.disk_count << " disks, "
       << c.edge_count << " disjoint pairs\n";
    os << "types:";
    for (const auto& [t, k] : c.type_counts) os << " " << t << "=" << k;
    os << "\nsphere S^" << static_cast<int>(c.sphere_pairs.size()) - 1 << ":";
    for (std::size_t i = 0; i < c.sphere_pairs.size(); ++i)
        os << " (" << c.sphere_pairs[i].first << ", " << c.sphere_pairs[i].second << ")";
    os << "\nclaim cases:";
    for (int k = 1; k <= 6; ++k) os << " " << k << "=" << c.claims.per_case[static_cast<std::size_t>(k)];
    os << "; violations=" << c.claims.violations.size() << "\n";
    if (c.witness) os << "disjoint V'/W' pair: " << c.witness->first << ", " << c.witness->second << "\n";
    os << "checks:\n";
    for (const auto& ch : c.checks) os << "  [" << (ch.passed ? "ok" : "FAIL") << "] " << ch.name << ": " << ch.detail << "\n";
    os << "assumptions:\n";
    for (const auto& a : c.assumptions) os << "  - " << a << "\n";
    os << "caveats:\n";
    for (const auto& a : c.caveats) os << "  - " << a << "\n";
    os << "conclusion: " << c.conclusion << "\n";
    return os.str();
}

}  // namespace tminimal
