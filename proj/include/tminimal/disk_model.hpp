#pragma once

// Compressing disks of F_n as canonical descriptors.
//
// Meridian(i)          the disk of solid tube i.
// VerticalDisk(r, a)   a x I in region r's product block; its boundary runs
//                      over copies r-1 and r and twice over tube r.
// BandSum(b, P, c, m)  P banded to m parallel copies of Meridian(b) along the
//                      arc c of region b-1. P is a disk of F_{b-1} on the side
//                      of tube b, so the result lies on that side too.
//
// Descriptors are immutable; a descriptor valid on F_n is valid on every
// F_m with m >= n and means the same disk there.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tminimal/surface_model.hpp"

namespace tminimal {

enum class DiskKind { Meridian, Vertical, BandSum };
enum class DiskType { T1, T2, T3, T4 };

inline const char* to_string(DiskKind k) {
    switch (k) {
        case DiskKind::Meridian: return "meridian";
        case DiskKind::Vertical: return "vertical";
        case DiskKind::BandSum: return "bandsum";
    }
    return "?";
}
inline const char* to_string(DiskType t) {
    switch (t) {
        case DiskType::T1: return "T1";
        case DiskType::T2: return "T2";
        case DiskType::T3: return "T3";
        case DiskType::T4: return "T4";
    }
    return "?";
}

class DiskError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Where a disk's boundary lives on F_n.
struct Footprint {
    std::set<int> tubes;
    std::set<int> regions;
    std::set<int> copies;
    std::map<int, std::vector<ArcClass>> arcs;  // region -> arcs drawn there

    bool operator==(const Footprint&) const = default;
};

class DiskVertex {
public:
    DiskKind kind() const noexcept { return kind_; }
    /// Tube for a meridian, region for a vertical disk, base tube for a band sum.
    int index() const noexcept { return index_; }
    /// Vertical arc, or the band's core arc.
    const ArcClass& arc() const {
        if (kind_ == DiskKind::Meridian) throw DiskError("a meridian carries no arc");
        return arc_;
    }
    const DiskVertex& partner() const {
        if (!partner_) throw DiskError("only band sums have a partner");
        return *partner_;
    }
    int copies() const noexcept { return copies_; }
    int depth() const noexcept { return depth_; }
    /// Highest tube the boundary meets: the least level the disk exists at.
    int level() const noexcept { return level_; }
    const std::string& id() const noexcept { return id_; }
    const Footprint& footprint() const noexcept { return footprint_; }

    bool operator==(const DiskVertex& o) const { return id_ == o.id_; }
    bool operator<(const DiskVertex& o) const { return id_ < o.id_; }

    friend DiskVertex meridian(int tube);
    friend DiskVertex vertical_disk(int region, ArcClass arc);
    friend DiskVertex band_sum(int base, const DiskVertex& partner, ArcClass band, int copies);

private:
    DiskKind kind_ = DiskKind::Meridian;
    int index_ = 0;
    ArcClass arc_;
    std::shared_ptr<const DiskVertex> partner_;
    int copies_ = 0;
    int depth_ = 0;
    int level_ = 0;
    std::string id_;
    Footprint footprint_;
};

inline DiskVertex meridian(int tube) {
    if (tube < 1) throw DiskError("meridian tube index must be >= 1");
    DiskVertex d;
    d.kind_ = DiskKind::Meridian;
    d.index_ = tube;
    d.level_ = tube;
    d.id_ = "M" + std::to_string(tube);
    d.footprint_.tubes = {tube};
    return d;
}

inline DiskVertex vertical_disk(int region, ArcClass arc) {
    if (region < 1) throw DiskError("vertical disk region index must be >= 1");
    if (arc.code.empty()) throw DiskError("vertical disk needs an essential arc");
    DiskVertex d;
    d.kind_ = DiskKind::Vertical;
    d.index_ = region;
    d.level_ = region;
    d.id_ = "V" + std::to_string(region) + arc.to_string();
    d.footprint_.tubes = {region};
    d.footprint_.regions = {region};
    d.footprint_.copies = {region - 1, region};
    d.footprint_.arcs[region] = {arc};
    d.arc_ = std::move(arc);
    return d;
}

inline Side absolute_side(const DiskVertex& d);

inline DiskVertex band_sum(int base, const DiskVertex& partner, ArcClass band, int copies) {
    if (base < 2) throw DiskError("band sum base tube must be >= 2");
    if (copies < 1) throw DiskError("band sum needs at least one copy of the base meridian");
    if (band.code.empty()) throw DiskError("band sum needs an essential band arc");
    if (partner.level() > base - 1)
        throw DiskError("band sum partner " + partner.id() + " does not live below tube " + std::to_string(base));
    Side want = base % 2 == 1 ? Side::B : Side::A;
    if (absolute_side(partner) != want)
        throw DiskError("band sum partner " + partner.id() + " is on the wrong side of tube " + std::to_string(base));
    DiskVertex d;
    d.kind_ = DiskKind::BandSum;
    d.index_ = base;
    d.partner_ = std::make_shared<const DiskVertex>(partner);
    d.copies_ = copies;
    d.depth_ = partner.depth() + 1;
    d.level_ = base;
    d.id_ = "B" + std::to_string(base) + "{" + partner.id() + "}" + band.to_string() + "x" + std::to_string(copies);
    d.footprint_ = partner.footprint();
    d.footprint_.tubes.insert(base);
    d.footprint_.regions.insert(base - 1);
    d.footprint_.arcs[base - 1].push_back(band);
    d.arc_ = std::move(band);
    return d;
}

/// Sides depend only on the descriptor: solid tube i is on side B iff i is odd.
inline Side absolute_side(const DiskVertex& d) {
    Side tube = d.index() % 2 == 1 ? Side::B : Side::A;
    return d.kind() == DiskKind::Vertical ? opposite(tube) : tube;
}

struct DiskSide {
    Side absolute;
    RelativeSide relative;
    bool operator==(const DiskSide&) const = default;
};

inline void require_disk_of(const DiskVertex& d, const TubedSurface& s) {
    if (d.level() > s.tubes)
        throw DiskError("disk " + d.id() + " does not exist on F_" + std::to_string(s.tubes));
}

inline DiskSide disk_side(const DiskVertex& d, const TubedSurface& s) {
    require_disk_of(d, s);
    Side a = absolute_side(d);
    return {a, s.relative(a)};
}

inline bool touches_tube(const DiskVertex& d, int tube) {
    return d.footprint().tubes.count(tube) != 0;
}

/// Crossing number of two arcs drawn in one region.
using ArcCrossing = std::function<int(const ArcClass&, const ArcClass&)>;

namespace detail {

inline bool basic_disjoint(const DiskVertex& x, const DiskVertex& y, const ArcCrossing& cross) {
    using K = DiskKind;
    if (x.kind() == K::Meridian && y.kind() == K::Meridian) return true;
    if (x.kind() == K::Meridian) return x.index() != y.index();
    if (y.kind() == K::Meridian) return x.index() != y.index();
    int r = x.index(), t = y.index();
    if (r == t) return cross(x.arc(), y.arc()) == 0;
    // adjacent blocks share a copy; only parallel arcs are known to separate
    if (std::abs(r - t) == 1) return x.arc() == y.arc();
    return true;
}

inline bool disjoint(const DiskVertex& x, const DiskVertex& y, const ArcCrossing& cross);

// x is a band sum; y is anything else.
inline bool band_sum_avoids(const DiskVertex& x, const DiskVertex& y, const ArcCrossing& cross) {
    const int b = x.index();
    if (touches_tube(y, b)) return false;
    if (!disjoint(x.partner(), y, cross)) return false;
    auto it = y.footprint().arcs.find(b - 1);
    if (it != y.footprint().arcs.end())
        for (const auto& a : it->second)
            if (cross(a, x.arc()) != 0) return false;
    return true;
}

inline bool disjoint(const DiskVertex& x, const DiskVertex& y, const ArcCrossing& cross) {
    if (x == y) return true;
    const bool bx = x.kind() == DiskKind::BandSum, by = y.kind() == DiskKind::BandSum;
    if (bx && by && x.index() == y.index())
        return disjoint(x.partner(), y.partner(), cross) && cross(x.arc(), y.arc()) == 0;
    if (bx && by) return band_sum_avoids(x, y, cross) && band_sum_avoids(y, x, cross);
    if (bx) return band_sum_avoids(x, y, cross);
    if (by) return band_sum_avoids(y, x, cross);
    return basic_disjoint(x, y, cross);
}

}  // namespace detail

/// Sound but incomplete: true only when disjoint representatives are known.
inline bool disks_disjoint(const DiskVertex& a, const DiskVertex& b, const ArcCrossing& cross) {
    return detail::disjoint(a, b, cross);
}

inline bool disks_disjoint(const DiskVertex& a, const DiskVertex& b, const TubedSurface& s) {
    require_disk_of(a, s);
    require_disk_of(b, s);
    const PuncturedSurfaceModel& m = s.region(1);
    return detail::disjoint(a, b, [&m](const ArcClass& x, const ArcClass& y) { return arc_intersection(x, y, m); });
}

inline DiskVertex the_meridian_e(const TubedSurface& s) { return meridian(s.tubes); }

inline DiskType classify_type(const DiskVertex& d, const TubedSurface& s, const ArcCrossing& cross) {
    require_disk_of(d, s);
    DiskVertex e = the_meridian_e(s);
    if (d == e) return DiskType::T1;
    if (disk_side(d, s).relative == RelativeSide::W) return DiskType::T2;
    return disks_disjoint(d, e, cross) ? DiskType::T4 : DiskType::T3;
}

inline DiskType classify_type(const DiskVertex& d, const TubedSurface& s) {
    const PuncturedSurfaceModel& m = s.region(1);
    return classify_type(d, s, [&m](const ArcClass& x, const ArcClass& y) { return arc_intersection(x, y, m); });
}

/// Arcs of d cut by the top meridian E of s, as they sit in d. Only band sums
/// based at the top tube meet E on the W' side; each band copy contributes one
/// arc and the two extreme copies are outermost.
struct IntersectionPattern {
    int arcs = 0;
    int circles = 0;
    std::vector<int> outermost;
    bool empty() const { return arcs == 0 && circles == 0; }
};

inline IntersectionPattern intersection_pattern(const DiskVertex& d, const TubedSurface& s) {
    require_disk_of(d, s);
    IntersectionPattern p;
    if (d.kind() == DiskKind::BandSum && d.index() == s.tubes) {
        p.arcs = d.copies();
        p.outermost = d.copies() == 1 ? std::vector<int>{0} : std::vector<int>{0, d.copies() - 1};
    }
    return p;
}

class ProjectionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Reads a level-(n+1) disk that misses E as a disk of F_n. Descriptors that
/// avoid tube n+1 are unchanged by removing it.
inline DiskVertex project_disk(const DiskVertex& d, const TubedSurface& s) {
    DiskType t = classify_type(d, s);
    if (t == DiskType::T1) throw ProjectionError("cannot project E = " + d.id() + " itself");
    if (t == DiskType::T3) throw ProjectionError("cannot project " + d.id() + ": it meets E on the V' side");
    if (t == DiskType::T2 && !intersection_pattern(d, s).empty())
        throw ProjectionError("cannot project " + d.id() + ": it meets E; surger it first");
    if (s.tubes < 2 || touches_tube(d, s.tubes))
        throw ProjectionError("disk " + d.id() + " has no counterpart on F_" + std::to_string(s.tubes - 1));
    return d;
}

class CatalogCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CatalogBounds {
    int arc_bound = 3;       // vertical arcs of length <= arc_bound
    int band_bound = 1;      // band arcs of length <= band_bound
    int depth = 2;           // band sum nesting
    int max_copies = 2;      // parallel copies of the base meridian
    std::size_t max_arcs = kDefaultMaxArcs;
    std::size_t max_disks = 200'000;
};

/// Finite catalog of disks of one F_n. Order: meridians by tube, vertical disks
/// by region then arc, band sums by base, depth and construction order.
class DiskCatalog {
public:
    DiskCatalog(TubedSurface s, CatalogBounds bounds)
        : surface_(std::move(s)), bounds_(bounds) {
        auto arcs = prepare();
        const int n = surface_.tubes;
        for (int i = 1; i <= n; ++i) add(meridian(i));
        for (int r = 1; r <= n; ++r)
            for (const auto& a : arcs) add(vertical_disk(r, a));
        std::vector<ArcClass> bands;
        for (const auto& a : arcs)
            if (static_cast<int>(a.code.size()) <= bounds_.band_bound) bands.push_back(a);
        for (int b = 2; b <= n; ++b) {
            Side want = surface_.tube_side(b);
            // partners: disks of F_{b-1} on the side of tube b, already listed
            std::vector<DiskVertex> partners;
            for (const auto& d : disks_)
                if (d.level() <= b - 1 && absolute_side(d) == want && d.depth() < bounds_.depth)
                    partners.push_back(d);
            for (const auto& p : partners)
                for (const auto& band : bands)
                    for (int c = 1; c <= bounds_.max_copies; ++c) add(band_sum(b, p, band, c));
        }
    }

    /// A catalog with a given disk list (e.g. read back from disk). Every disk
    /// must exist on the surface; order is preserved and duplicates rejected.
    DiskCatalog(TubedSurface s, CatalogBounds bounds, std::vector<DiskVertex> disks)
        : surface_(std::move(s)), bounds_(bounds) {
        prepare();
        for (auto& d : disks) {
            require_disk_of(d, surface_);
            if (index_.count(d.id())) throw DiskError("duplicate disk " + d.id());
            add(std::move(d));
        }
    }

    const TubedSurface& surface() const noexcept { return surface_; }
    const CatalogBounds& bounds() const noexcept { return bounds_; }
    const std::vector<DiskVertex>& disks() const noexcept { return disks_; }
    const std::vector<ArcClass>& arcs() const noexcept { return table_->arcs(); }
    std::size_t size() const noexcept { return disks_.size(); }
    bool contains(const std::string& id) const { return index_.count(id) != 0; }
    std::size_t index_of(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw DiskError("disk " + id + " is not in the catalog");
        return it->second;
    }
    const DiskVertex& at(const std::string& id) const { return disks_[index_of(id)]; }

    ArcCrossing crossing() const {
        auto t = table_;
        const PuncturedSurfaceModel* m = &surface_.region(1);
        return [t, m](const ArcClass& a, const ArcClass& b) {
            if (t->contains(a) && t->contains(b)) return (*t)(a, b);
            return arc_intersection(a, b, *m);
        };
    }

    bool disjoint(const DiskVertex& a, const DiskVertex& b) const { return disks_disjoint(a, b, crossing()); }
    DiskType type(const DiskVertex& d) const { return classify_type(d, surface_, crossing()); }

    /// Disks of the catalog that already exist on F_level, in catalog order.
    std::vector<DiskVertex> at_level(int level) const {
        std::vector<DiskVertex> out;
        for (const auto& d : disks_)
            if (d.level() <= level) out.push_back(d);
        return out;
    }

private:
    std::vector<ArcClass> prepare() {
        if (bounds_.arc_bound < 1) throw std::invalid_argument("arc bound must be >= 1");
        if (bounds_.band_bound < 1) throw std::invalid_argument("band bound must be >= 1");
        if (bounds_.depth < 0) throw std::invalid_argument("band sum depth must be >= 0");
        if (bounds_.max_copies < 1) throw std::invalid_argument("copies bound must be >= 1");
        const PuncturedSurfaceModel& m = surface_.region(1);
        auto arcs = enumerate_arcs(m, bounds_.arc_bound, bounds_.max_arcs);
        table_ = std::make_shared<const ArcIntersectionTable>(m, arcs);
        return arcs;
    }

    void add(DiskVertex d) {
        if (index_.count(d.id())) return;
        if (disks_.size() >= bounds_.max_disks)
            throw CatalogCapError("disk catalog exceeds cap of " + std::to_string(bounds_.max_disks));
        index_.emplace(d.id(), disks_.size());
        disks_.push_back(std::move(d));
    }

    TubedSurface surface_;
    CatalogBounds bounds_;
    std::shared_ptr<const ArcIntersectionTable> table_;
    std::vector<DiskVertex> disks_;
    std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace tminimal
