#pragma once

// The suspension sphere inside the disk catalog of F_L, the level-by-level
// retraction r' onto it, the six-case edge check, and the certificate driver.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tminimal/disk_model.hpp"
#include "tminimal/flag_complex.hpp"
#include "tminimal/homology.hpp"
#include "tminimal/simplicial_map.hpp"

namespace tminimal {

class SphereError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Pairs (D_i, E_i), i = 0..L-1, spanning an octahedral S^{L-1}.
struct SuspensionSphere {
    std::vector<std::pair<DiskVertex, DiskVertex>> pairs;
    FlagComplex complex;

    int dimension() const { return static_cast<int>(pairs.size()) - 1; }

    /// Pair index holding the vertex: the least i with the vertex in S^i.
    std::optional<int> pair_of(const std::string& id) const {
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (pairs[i].first.id() == id || pairs[i].second.id() == id) return static_cast<int>(i);
        return std::nullopt;
    }
    std::vector<VertexId> vertex_ids(int up_to_pair) const {
        std::vector<VertexId> out;
        for (int i = 0; i <= up_to_pair && i < static_cast<int>(pairs.size()); ++i) {
            out.push_back(pairs[static_cast<std::size_t>(i)].first.id());
            out.push_back(pairs[static_cast<std::size_t>(i)].second.id());
        }
        return out;
    }
    const DiskVertex& d(int i) const { return pairs.at(static_cast<std::size_t>(i)).first; }
    const DiskVertex& e(int i) const { return pairs.at(static_cast<std::size_t>(i)).second; }
};

/// Flag complex of a catalog: vertices are disks, edges are disjoint pairs.
inline FlagComplex catalog_complex(const std::vector<DiskVertex>& disks, const ArcCrossing& cross) {
    std::vector<Vertex> vs;
    vs.reserve(disks.size());
    for (const auto& d : disks) vs.push_back({d.id(), to_string(d.kind())});
    std::vector<std::pair<VertexId, VertexId>> es;
    for (std::size_t i = 0; i < disks.size(); ++i)
        for (std::size_t j = i + 1; j < disks.size(); ++j)
            if (disks_disjoint(disks[i], disks[j], cross)) es.emplace_back(disks[i].id(), disks[j].id());
    return FlagComplex(std::move(vs), es);
}

inline FlagComplex catalog_complex(const DiskCatalog& c) { return catalog_complex(c.disks(), c.crossing()); }

/// E_i = Meridian(i+1); D_i = VerticalDisk(i+1, a*) with a* the least cataloged
/// arc. Every invariant is checked against the disjointness relation.
inline SuspensionSphere build_suspension_sphere(const DiskCatalog& c) {
    const int L = c.surface().tubes;
    if (c.arcs().empty())
        throw SphereError("missing pair (D_0, E_0): no essential arc of length <= " +
                          std::to_string(c.bounds().arc_bound) + " in region 1");
    const ArcClass& a = c.arcs().front();
    SuspensionSphere s;
    for (int i = 0; i < L; ++i) {
        std::string d_id = vertical_disk(i + 1, a).id();
        if (!c.contains(d_id))
            throw SphereError("missing pair (D_" + std::to_string(i) + ", E_" + std::to_string(i) +
                              "): no vertical disk over tube " + std::to_string(i + 1));
        s.pairs.emplace_back(c.at(d_id), c.at(meridian(i + 1).id()));
    }
    std::vector<DiskVertex> verts;
    for (const auto& [d, e] : s.pairs) {
        verts.push_back(d);
        verts.push_back(e);
    }
    s.complex = catalog_complex(verts, c.crossing());

    for (int i = 0; i < L; ++i) {
        if (c.disjoint(s.d(i), s.e(i)))
            throw SphereError("pair " + std::to_string(i) + ": " + s.d(i).id() + " and " + s.e(i).id() +
                              " are disjoint");
        if (disk_side(s.d(i), c.surface()).absolute == disk_side(s.e(i), c.surface()).absolute)
            throw SphereError("pair " + std::to_string(i) + " lies on one side");
    }
    // relabel to the standard octahedron and compare edge sets
    std::map<VertexId, VertexId> relabel;
    for (int i = 0; i < L; ++i) {
        relabel[s.d(i).id()] = octahedral_d(i);
        relabel[s.e(i).id()] = octahedral_e(i);
    }
    std::set<std::pair<VertexId, VertexId>> got, want;
    for (const auto& [x, y] : s.complex.edges()) got.insert(std::minmax(relabel.at(x), relabel.at(y)));
    for (const auto& [x, y] : octahedral_sphere(L).edges()) want.insert(std::minmax(x, y));
    if (got != want) {
        for (const auto& e : want)
            if (!got.count(e))
                throw SphereError("suspension condition fails: " + e.first + " and " + e.second +
                                  " are not disjoint");
        throw SphereError("sphere has an edge inside a pair");
    }
    return s;
}

class SurgeryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One outermost arc gamma of e0 cap E and the two disks obtained by cutting E
/// along gamma and capping with the outermost subdisk of e0.
struct SurgeryOutcome {
    int gamma = 0;
    std::vector<DiskVertex> candidates;  // merged when canonical forms agree
    std::optional<std::string> image;
    std::optional<int> level_index;
};

/// Both halves of E cut along an outermost arc, capped off by the outermost
/// subdisk, are pushed off E and isotoped back to the band sum's partner.
inline std::vector<SurgeryOutcome> outermost_surgery(const DiskVertex& e0, const TubedSurface& s) {
    IntersectionPattern p = intersection_pattern(e0, s);
    if (p.circles > 0)
        throw SurgeryError("intersection pattern of " + e0.id() + " has circle components");
    if (p.empty())
        throw SurgeryError(e0.id() + " misses E; project it instead of surgering");
    std::vector<SurgeryOutcome> out;
    for (int g : p.outermost) {
        SurgeryOutcome o;
        o.gamma = g;
        DiskVertex d_prime = e0.partner(), d_second = e0.partner();
        o.candidates.push_back(d_prime);
        if (!(d_second == d_prime)) o.candidates.push_back(d_second);
        out.push_back(std::move(o));
    }
    return out;
}

enum class Rule { T1Identity, T2Surgery, T2Projection, T3ToD, T4Recursion };

inline const char* to_string(Rule r) {
    switch (r) {
        case Rule::T1Identity: return "T1";
        case Rule::T2Surgery: return "T2-surgery";
        case Rule::T2Projection: return "T2-projection";
        case Rule::T3ToD: return "T3";
        case Rule::T4Recursion: return "T4-recursion";
    }
    return "?";
}

class WellDefinednessError : public std::runtime_error {
public:
    WellDefinednessError(std::string disk, std::string first, std::string second)
        : std::runtime_error("r' is not well defined on " + disk + ": candidates map to " + first +
                             " and " + second),
          disk_(std::move(disk)), first_(std::move(first)), second_(std::move(second)) {}
    const std::string& disk() const noexcept { return disk_; }
    const std::string& first() const noexcept { return first_; }
    const std::string& second() const noexcept { return second_; }

private:
    std::string disk_, first_, second_;
};

struct RetractionLevel {
    int level = 0;
    std::map<std::string, std::string> image;
    std::map<std::string, Rule> provenance;
};

/// T2 disk with several outermost arcs and the images its candidates reached.
struct WellDefinednessRecord {
    std::string disk;
    int level = 0;
    int outermost_arcs = 0;
    std::vector<std::string> images;
    bool agree = true;
};

/// r_1, ..., r_L; the top level is r'.
struct RetractionMap {
    std::vector<RetractionLevel> levels;
    std::vector<WellDefinednessRecord> multi_arc_checks;
    std::set<int> level_spectrum;  // minimal S^i reached by surgery candidates

    const RetractionLevel& top() const { return levels.back(); }
    const RetractionLevel& at(int level) const { return levels.at(static_cast<std::size_t>(level - 1)); }
    const std::string& operator()(const std::string& id) const { return top().image.at(id); }

    VertexMap as_vertex_map(const FlagComplex& domain, const FlagComplex& sphere) const {
        return VertexMap(domain, sphere, top().image);
    }
};

/// Image of one level-`level` disk. `r_prev` is r_{level-1} (null at level 1).
inline std::pair<std::string, Rule> retract_vertex(const DiskVertex& d, const TubedSurface& s,
                                                   const ArcCrossing& cross, const SuspensionSphere& sphere,
                                                   const RetractionLevel* r_prev,
                                                   WellDefinednessRecord* record = nullptr,
                                                   std::set<int>* spectrum = nullptr) {
    const int L = s.tubes;
    auto prev = [&](const DiskVertex& x) -> const std::string& {
        if (!r_prev) throw DiskError("disk " + d.id() + " is neither E nor a V' disk meeting E on F_1");
        auto it = r_prev->image.find(x.id());
        if (it == r_prev->image.end())
            throw DiskError("level " + std::to_string(L - 1) + " retraction is undefined on " + x.id());
        return it->second;
    };
    switch (classify_type(d, s, cross)) {
        case DiskType::T1: return {sphere.e(L - 1).id(), Rule::T1Identity};
        case DiskType::T3: return {sphere.d(L - 1).id(), Rule::T3ToD};
        case DiskType::T4: return {prev(project_disk(d, s)), Rule::T4Recursion};
        case DiskType::T2: break;
    }
    if (intersection_pattern(d, s).empty()) return {prev(project_disk(d, s)), Rule::T2Projection};

    auto outcomes = outermost_surgery(d, s);
    int best = -1;
    for (auto& o : outcomes) {
        for (const auto& cand : o.candidates) {
            const std::string& img = prev(cand);
            int lvl = *sphere.pair_of(img);
            if (!o.level_index || lvl < *o.level_index) {
                o.level_index = lvl;
                o.image = img;
            }
        }
        if (best < 0 || *o.level_index < best) best = *o.level_index;
    }
    // candidates in the minimal S^i, in canonical order
    std::vector<std::pair<std::string, std::string>> at_min;
    for (const auto& o : outcomes)
        for (const auto& cand : o.candidates) {
            const std::string& img = prev(cand);
            if (*sphere.pair_of(img) == best) at_min.emplace_back(cand.id(), img);
        }
    std::sort(at_min.begin(), at_min.end());
    if (spectrum) spectrum->insert(best);
    if (record) {
        record->disk = d.id();
        record->level = L;
        record->outermost_arcs = static_cast<int>(outcomes.size());
        for (const auto& [c, img] : at_min) record->images.push_back(img);
        record->agree = true;
    }
    for (const auto& [c, img] : at_min)
        if (img != at_min.front().second) {
            if (record) record->agree = false;
            throw WellDefinednessError(d.id(), at_min.front().second, img);
        }
    return {at_min.front().second, Rule::T2Surgery};
}

/// Builds r_1..r_L over the catalog of F_L, each level on the disks existing there.
inline RetractionMap build_retraction(const DiskCatalog& c, const SuspensionSphere& sphere) {
    RetractionMap r;
    const int L = c.surface().tubes;
    auto cross = c.crossing();
    for (int level = 1; level <= L; ++level) {
        TubedSurface s = build_tubed_surface(c.surface().base_genus, level);
        RetractionLevel lv;
        lv.level = level;
        const RetractionLevel* prev = level > 1 ? &r.levels.back() : nullptr;
        for (const auto& d : c.at_level(level)) {
            WellDefinednessRecord rec;
            auto [img, rule] = retract_vertex(d, s, cross, sphere, prev, &rec, &r.level_spectrum);
            if (rule == Rule::T2Surgery && rec.outermost_arcs >= 2) r.multi_arc_checks.push_back(rec);
            lv.image.emplace(d.id(), img);
            lv.provenance.emplace(d.id(), rule);
        }
        r.levels.push_back(std::move(lv));
    }
    return r;
}

struct ClaimViolation {
    int claim_case = 0;
    std::string first, second;
    std::string first_image, second_image;
};

struct ClaimReport {
    std::array<std::size_t, 7> per_case{};  // index 1..6
    std::size_t pairs_checked = 0;
    std::vector<ClaimViolation> violations;

    bool all_cases_covered() const {
        for (int k = 1; k <= 6; ++k)
            if (per_case[static_cast<std::size_t>(k)] == 0) return false;
        return true;
    }
    std::vector<int> empty_cases() const {
        std::vector<int> out;
        for (int k = 1; k <= 6; ++k)
            if (per_case[static_cast<std::size_t>(k)] == 0) out.push_back(k);
        return out;
    }
};

/// Case of a disjoint pair of distinct disks; 0 if no case applies (a T1 or T3
/// disk disjoint from E cannot occur).
inline int claim_case(DiskType a, DiskType b) {
    if (a > b) std::swap(a, b);
    using T = DiskType;
    if (a == T::T1) return (b == T::T2 || b == T::T4) ? 1 : 0;
    if (a == T::T2 && b == T::T3) return 2;
    if (a == T::T3 && b == T::T4) return 2;
    if (a == T::T3 && b == T::T3) return 3;
    if (a == T::T2 && b == T::T4) return 4;
    if (a == T::T2 && b == T::T2) return 5;
    if (a == T::T4 && b == T::T4) return 6;
    return 0;
}

/// Every disjoint pair must map to one vertex or to an edge of the sphere.
inline ClaimReport verify_claim_cases(const DiskCatalog& c, const SuspensionSphere& sphere, const RetractionMap& r) {
    ClaimReport rep;
    const auto& disks = c.disks();
    auto cross = c.crossing();
    std::vector<DiskType> types;
    types.reserve(disks.size());
    for (const auto& d : disks) types.push_back(classify_type(d, c.surface(), cross));
    for (std::size_t i = 0; i < disks.size(); ++i)
        for (std::size_t j = i + 1; j < disks.size(); ++j) {
            if (!disks_disjoint(disks[i], disks[j], cross)) continue;
            int k = claim_case(types[i], types[j]);
            const std::string& a = r(disks[i].id());
            const std::string& b = r(disks[j].id());
            ++rep.pairs_checked;
            if (k > 0) ++rep.per_case[static_cast<std::size_t>(k)];
            bool ok = k > 0 && (a == b || sphere.complex.adjacent(a, b));
            if (!ok) rep.violations.push_back({k, disks[i].id(), disks[j].id(), a, b});
        }
    return rep;
}

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Certificate {
    // parameters
    int genus = 1;
    int n = 0;  // certifies F_{n+1}
    CatalogBounds bounds;
    // model
    int surface_genus = 0;
    std::size_t arc_count = 0;
    std::map<std::string, std::size_t> kind_counts;
    std::map<std::string, std::size_t> type_counts;
    std::size_t disk_count = 0;
    std::size_t edge_count = 0;
    // sphere and retraction
    std::vector<std::pair<std::string, std::string>> sphere_pairs;
    HomologyProfile sphere_homology;
    std::map<std::string, std::size_t> provenance_counts;
    ClaimReport claims;
    std::size_t multi_arc_disks = 0;
    std::size_t multi_arc_disagreements = 0;
    std::set<int> level_spectrum;
    std::optional<std::pair<std::string, std::string>> witness;  // (V' disk, W' disk)
    std::string generating_cycle;
    // outcome
    std::vector<CheckResult> checks;
    bool passed = false;
    std::string failed_check;
    bool complete = true;
    std::vector<std::string> assumptions;
    std::vector<std::string> caveats;
    std::string conclusion;
};

class CertificationCapError : public std::runtime_error {
public:
    CertificationCapError(const std::string& what, Certificate partial)
        : std::runtime_error(what), partial_(std::move(partial)) {}
    const Certificate& partial() const noexcept { return partial_; }

private:
    Certificate partial_;
};

struct CertifyOptions {
    int genus = 1;
    int n = 0;
    CatalogBounds bounds;
    std::size_t max_simplices = kDefaultMaxSimplices;
    std::optional<std::vector<DiskVertex>> disks;  // replaces the generated catalog
};

/// Full pipeline for F_{n+1}; the first failing check names the certificate's failure.
inline Certificate certify_minimality(const CertifyOptions& opt) {
    if (opt.genus < 1) throw std::invalid_argument("genus must be >= 1");
    if (opt.n < 0) throw std::invalid_argument("n must be >= 0");
    Certificate cert;
    cert.genus = opt.genus;
    cert.n = opt.n;
    cert.bounds = opt.bounds;
    const int L = opt.n + 1;
    cert.assumptions = {
        "r at each lower level is the map built by this same pipeline",
        "E is the only cataloged disk of F_1 on its side (one meridian per tube)",
    };
    cert.caveats = {
        "statements concern the cataloged subcomplex: vertical arcs of length <= " +
            std::to_string(opt.bounds.arc_bound) + ", band arcs of length <= " +
            std::to_string(opt.bounds.band_bound) + ", band sum depth <= " + std::to_string(opt.bounds.depth) +
            ", at most " + std::to_string(opt.bounds.max_copies) + " parallel band copies",
        "disjointness is sound but incomplete, so some edges of the true disk complex may be absent",
        "a nonzero homology summand is certified; homotopy groups are not computed",
        "uniqueness of E is a model fact and exotic disks outside the catalog are not excluded",
        "tubes attach at fixed reference corners; arcs use the first embedded straight chord per code",
    };

    auto record = [&cert](std::string name, bool ok, std::string detail) {
        cert.checks.push_back({std::move(name), ok, std::move(detail)});
        if (!ok && cert.failed_check.empty()) cert.failed_check = cert.checks.back().name;
        return ok;
    };
    auto finish = [&cert, L]() {
        cert.passed = cert.failed_check.empty();
        std::ostringstream os;
        if (cert.passed) {
            os << "F_" << L << " (genus " << cert.surface_genus << ") is topologically minimal of index at most "
               << L << " within the catalog: r' retracts it onto S^" << L - 1;
            if (L == 1) os << " and every cataloged V' disk meets E (strongly irreducible within the catalog)";
            else os << "; it is not strongly irreducible";
        } else {
            os << "FAILED at check '" << cert.failed_check << "'";
        }
        cert.conclusion = os.str();
        return cert;
    };

    std::optional<DiskCatalog> cat;
    try {
        if (opt.disks) cat.emplace(build_tubed_surface(opt.genus, L), opt.bounds, *opt.disks);
        else cat.emplace(build_tubed_surface(opt.genus, L), opt.bounds);
    } catch (const ResourceCapError& e) {
        cert.complete = false;
        record("catalog", false, e.what());
        throw CertificationCapError(e.what(), finish());
    } catch (const CatalogCapError& e) {
        cert.complete = false;
        record("catalog", false, e.what());
        throw CertificationCapError(e.what(), finish());
    }
    const DiskCatalog& c = *cat;
    auto cross = c.crossing();
    cert.surface_genus = c.surface().genus();
    cert.arc_count = c.arcs().size();
    cert.disk_count = c.size();
    for (const auto& d : c.disks()) {
        ++cert.kind_counts[to_string(d.kind())];
        ++cert.type_counts[to_string(classify_type(d, c.surface(), cross))];
    }
    record("catalog", true, std::to_string(c.size()) + " disks over " + std::to_string(c.arcs().size()) + " arcs");
    record("type partition", cert.type_counts["T1"] == 1,
           "T1 " + std::to_string(cert.type_counts["T1"]) + ", T2 " + std::to_string(cert.type_counts["T2"]) +
               ", T3 " + std::to_string(cert.type_counts["T3"]) + ", T4 " + std::to_string(cert.type_counts["T4"]));

    std::optional<SuspensionSphere> sphere;
    try {
        sphere = build_suspension_sphere(c);
        record("suspension sphere", true, "octahedral S^" + std::to_string(L - 1) + " on " +
                                              std::to_string(2 * L) + " vertices");
    } catch (const SphereError& e) {
        record("suspension sphere", false, e.what());
        return finish();
    }
    for (const auto& [d, e] : sphere->pairs) cert.sphere_pairs.emplace_back(d.id(), e.id());

    RetractionMap r;
    try {
        r = build_retraction(c, *sphere);
        record("well-definedness", true, std::to_string(r.multi_arc_checks.size()) +
                                             " disks with several outermost arcs agree");
    } catch (const WellDefinednessError& e) {
        record("well-definedness", false, e.what());
        return finish();
    }
    cert.multi_arc_disks = r.multi_arc_checks.size();
    for (const auto& w : r.multi_arc_checks)
        if (!w.agree) ++cert.multi_arc_disagreements;
    cert.level_spectrum = r.level_spectrum;
    for (const auto& [id, rule] : r.top().provenance) ++cert.provenance_counts[to_string(rule)];

    // recursion consistency: off tube L, r' agrees with r_{L-1}
    if (L >= 2) {
        std::size_t bad = 0;
        const auto& lower = r.at(L - 1).image;
        for (const auto& [id, img] : lower)
            if (r(id) != img) ++bad;
        record("recursion consistency", bad == 0,
               std::to_string(bad) + " of " + std::to_string(lower.size()) + " disks of F_" + std::to_string(L - 1) +
                   " change image");
    }

    FlagComplex domain = catalog_complex(c);
    cert.edge_count = domain.edge_count();
    VertexMap f = r.as_vertex_map(domain, sphere->complex);
    RetractionReport rr = check_retraction(f, sphere->complex);
    record("retraction", rr.ok, rr.summary());

    cert.claims = verify_claim_cases(c, *sphere, r);
    {
        std::ostringstream os;
        os << cert.claims.pairs_checked << " disjoint pairs, " << cert.claims.violations.size() << " violations";
        auto empty = cert.claims.empty_cases();
        if (!empty.empty()) {
            os << "; no cataloged pair in case";
            for (int k : empty) os << " " << k;
        }
        record("claim cases", cert.claims.violations.empty(), os.str());
    }

    try {
        cert.sphere_homology = reduced_homology(sphere->complex, L - 1, opt.max_simplices);
        record("sphere homology", cert.sphere_homology.is_sphere_like(static_cast<std::size_t>(L - 1)),
               "reduced H_" + std::to_string(L - 1) + " = " + cert.sphere_homology[static_cast<std::size_t>(L - 1)].to_string());
        auto h = certify_homology_retraction(f, sphere->complex, L, opt.max_simplices);
        cert.generating_cycle = chain_to_string(h.generating_cycle);
        record("homology retraction", h.passed, h.passed ? h.conclusion : h.reason);
    } catch (const ResourceLimitError& e) {
        cert.complete = false;
        record("sphere homology", false, e.what());
        throw CertificationCapError(e.what(), finish());
    }

    if (L == 1) {
        std::size_t missed = 0, total = 0;
        DiskVertex e = the_meridian_e(c.surface());
        for (const auto& d : c.disks())
            if (disk_side(d, c.surface()).relative == RelativeSide::V) {
                ++total;
                if (c.disjoint(d, e)) ++missed;
            }
        record("every V' disk meets E", missed == 0,
               std::to_string(total - missed) + " of " + std::to_string(total) + " V' disks meet E");
    } else {
        for (const auto& x : c.disks()) {
            if (disk_side(x, c.surface()).relative != RelativeSide::V) continue;
            for (const auto& y : c.disks())
                if (disk_side(y, c.surface()).relative == RelativeSide::W && c.disjoint(x, y)) {
                    cert.witness.emplace(x.id(), y.id());
                    break;
                }
            if (cert.witness) break;
        }
        record("not strongly irreducible", cert.witness.has_value(),
               cert.witness ? "disjoint " + cert.witness->first + " (V') and " + cert.witness->second + " (W')"
                            : "no disjoint V'/W' pair in the catalog");
    }
    return finish();
}

}  // namespace tminimal
