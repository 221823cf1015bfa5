#pragma once

// Combinatorial model of the surfaces involved:
//
//  * a genus-g surface cut open along its standard generators into a 4g-gon
//    with side word a1 b1 a1^-1 b1^-1 ... ag bg ag^-1 bg^-1;
//  * the polygon's corners (all identified to one point) are the puncture,
//    i.e. the foot of the region's own tube;
//  * an arc is a reduced sequence of side crossings together with the
//    corners its ends leave from, drawn as straight chords. Its crossing
//    count with another arc is found by exhaustive search over the relative
//    order of all endpoints on the polygon boundary;
//  * feet of neighbouring tubes are marked points on side a1 next to corner 0,
//    before every crossing slot, so every arc avoids them in the same way.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tminimal {

enum class Side { A, B };
enum class RelativeSide { V, W };

inline Side opposite(Side s) { return s == Side::A ? Side::B : Side::A; }
inline const char* to_string(Side s) { return s == Side::A ? "A" : "B"; }
inline const char* to_string(RelativeSide s) { return s == RelativeSide::V ? "V'" : "W'"; }

enum class FootBoundary { Lower, Upper };
inline const char* to_string(FootBoundary b) { return b == FootBoundary::Lower ? "lower" : "upper"; }

struct Foot {
    int tube = 0;  // tube whose hole this foot marks
    FootBoundary boundary = FootBoundary::Lower;
    bool operator==(const Foot&) const = default;
};

struct PuncturedSurfaceModel {
    int genus = 1;
    std::vector<Foot> feet;

    int side_count() const { return 4 * genus; }

    /// Signed generator letter carried by polygon side s (1-based generators:
    /// a_i = 2i-1, b_i = 2i).
    int letter_of_side(int s) const {
        int handle = s / 4, pos = s % 4;
        int gen = 2 * handle + (pos % 2) + 1;
        return pos < 2 ? gen : -gen;
    }
    int side_of_letter(int letter) const {
        int gen = letter > 0 ? letter : -letter;
        if (gen < 1 || gen > 2 * genus) throw std::out_of_range("letter out of range");
        int handle = (gen - 1) / 2, parity = (gen - 1) % 2;
        return 4 * handle + parity + (letter > 0 ? 0 : 2);
    }
    /// The side glued to s.
    int partner(int s) const { return (s % 4) < 2 ? s + 2 : s - 2; }

    std::vector<int> word() const {
        std::vector<int> w;
        for (int s = 0; s < side_count(); ++s) w.push_back(letter_of_side(s));
        return w;
    }

    bool operator==(const PuncturedSurfaceModel&) const = default;
};

inline PuncturedSurfaceModel build_punctured_model(int genus, int feet) {
    if (genus < 1) throw std::invalid_argument("genus must be >= 1");
    if (feet < 0 || feet > 2) throw std::invalid_argument("feet must be 0, 1 or 2");
    PuncturedSurfaceModel m;
    m.genus = genus;
    // generic reference feet; tubed surfaces overwrite them with real tube ids
    if (feet >= 1) m.feet.push_back({0, FootBoundary::Lower});
    if (feet >= 2) m.feet.push_back({0, FootBoundary::Upper});
    return m;
}

/// An arc class: the signed letters of the sides it exits through, in
/// canonical orientation (lexicographically not greater than its inverse),
/// plus the polygon corners its two ends are anchored at.
struct ArcClass {
    std::vector<int> code;
    int start_corner = 0;
    int end_corner = 0;

    auto operator<=>(const ArcClass& o) const {
        if (code.size() != o.code.size()) return code.size() <=> o.code.size();
        if (auto c = code <=> o.code; c != 0) return c;
        if (auto c = start_corner <=> o.start_corner; c != 0) return c;
        return end_corner <=> o.end_corner;
    }
    bool operator==(const ArcClass&) const = default;

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < code.size(); ++i) s += (i ? "," : "") + std::to_string(code[i]);
        return s + "]";
    }
};

inline std::vector<int> inverse_code(const std::vector<int>& code) {
    std::vector<int> r(code.rbegin(), code.rend());
    for (int& x : r) x = -x;
    return r;
}

inline bool is_reduced(const std::vector<int>& code) {
    for (std::size_t i = 1; i < code.size(); ++i)
        if (code[i] == -code[i - 1]) return false;
    return true;
}

class ArcError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

// One boundary endpoint of a straight segment inside the polygon.
struct EndPoint {
    bool corner;
    int item;   // index into the realization's items
    int where;  // corner index or side index
};

struct Segment {
    EndPoint a, b;
};

// Items whose relative order is free: crossing points on a glued side pair,
// and arc ends sharing a corner.
struct Realization {
    const PuncturedSurfaceModel* model;
    std::vector<std::vector<Segment>> arcs;
    std::map<std::pair<bool, int>, std::vector<int>> groups;  // (is corner, pair/corner) -> items
    int items = 0;

    int new_item(bool corner, int key) {
        groups[{corner, key}].push_back(items);
        return items++;
    }

    static int pair_of(int s) { return (s / 4) * 2 + (s % 2); }

    void add_arc(const ArcClass& a) {
        const auto& m = *model;
        std::vector<int> sides;
        for (int x : a.code) sides.push_back(m.side_of_letter(x));
        std::vector<Segment> segs;
        int c0 = a.start_corner;
        int start = new_item(true, c0);
        EndPoint prev{true, start, c0};
        for (int s : sides) {
            int pt = new_item(false, pair_of(s));
            segs.push_back({prev, EndPoint{false, pt, s}});
            prev = EndPoint{false, pt, m.partner(s)};
        }
        int c1 = a.end_corner;
        int end = new_item(true, c1);
        segs.push_back({prev, EndPoint{true, end, c1}});
        arcs.push_back(std::move(segs));
    }
};

inline std::int64_t boundary_key(const PuncturedSurfaceModel& m, const EndPoint& e,
                                 const std::vector<int>& rank, const std::vector<int>& group_size) {
    constexpr std::int64_t kSlots = 1024;
    if (e.corner) return (2LL * e.where) * kSlots + rank[static_cast<std::size_t>(e.item)];
    // side s of a pair whose lower member is the "positive" copy; the glued copy
    // runs the other way around the boundary
    int r = rank[static_cast<std::size_t>(e.item)];
    bool positive = (e.where % 4) < 2;
    int pos = positive ? r : group_size[static_cast<std::size_t>(e.item)] - 1 - r;
    (void)m;
    return (2LL * e.where + 1) * kSlots + pos;
}

inline bool interleaved(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    if (a > b) std::swap(a, b);
    if (c > d) std::swap(c, d);
    return (a < c && c < b && b < d) || (c < a && a < d && d < b);
}

// Minimum number of crossings, over every ordering of the free groups, counted
// between the listed arc pairs (self pairs count crossings within one arc).
inline int min_crossings(Realization& R, const std::vector<std::pair<int, int>>& arc_pairs, int give_up_below = 0) {
    std::vector<std::vector<int>> perms;
    for (auto& [key, items] : R.groups) perms.push_back(items);
    std::vector<int> rank(static_cast<std::size_t>(R.items), 0), gsize(static_cast<std::size_t>(R.items), 0);
    for (auto& p : perms) std::sort(p.begin(), p.end());

    int best = std::numeric_limits<int>::max();
    for (;;) {
        for (const auto& p : perms)
            for (std::size_t i = 0; i < p.size(); ++i) {
                rank[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
                gsize[static_cast<std::size_t>(p[i])] = static_cast<int>(p.size());
            }
        int count = 0;
        for (auto [x, y] : arc_pairs) {
            const auto& sx = R.arcs[static_cast<std::size_t>(x)];
            const auto& sy = R.arcs[static_cast<std::size_t>(y)];
            for (std::size_t i = 0; i < sx.size() && count < best; ++i) {
                auto a = boundary_key(*R.model, sx[i].a, rank, gsize);
                auto b = boundary_key(*R.model, sx[i].b, rank, gsize);
                for (std::size_t j = (x == y ? i + 1 : 0); j < sy.size(); ++j) {
                    auto c = boundary_key(*R.model, sy[j].a, rank, gsize);
                    auto d = boundary_key(*R.model, sy[j].b, rank, gsize);
                    if (interleaved(a, b, c, d)) ++count;
                }
            }
        }
        best = std::min(best, count);
        if (best <= give_up_below) return best;

        // odometer over the per-group permutations
        std::size_t g = 0;
        for (; g < perms.size(); ++g)
            if (std::next_permutation(perms[g].begin(), perms[g].end())) break;
        if (g == perms.size()) break;
    }
    return best;
}

}  // namespace detail

/// Fewest self-crossings of any straight realization; 0 means the arc embeds.
inline int arc_self_crossings(const ArcClass& a, const PuncturedSurfaceModel& m) {
    detail::Realization R{&m, {}, {}, 0};
    R.add_arc(a);
    return detail::min_crossings(R, {{0, 0}});
}

/// Minimal crossing number of two arcs over all boundary orderings; parallel
/// copies of one class are disjoint.
inline int arc_intersection(const ArcClass& a, const ArcClass& b, const PuncturedSurfaceModel& m) {
    if (a == b) return 0;
    detail::Realization R{&m, {}, {}, 0};
    R.add_arc(a);
    R.add_arc(b);
    return detail::min_crossings(R, {{0, 1}});
}

namespace detail {
inline void check_code(const PuncturedSurfaceModel& m, const std::vector<int>& code) {
    if (code.empty()) throw ArcError("an essential arc must cross at least one side");
    for (int x : code)
        if (x == 0 || std::abs(x) > 2 * m.genus)
            throw ArcError("letter " + std::to_string(x) + " out of range for genus " + std::to_string(m.genus));
    if (!is_reduced(code)) throw ArcError("arc code is not reduced");
}

// An end segment may not leave from a corner of the side it crosses first:
// such a crossing slides off through the puncture.
inline bool corners_allowed(const PuncturedSurfaceModel& m, const std::vector<int>& code, int c0, int c1) {
    const int n = m.side_count();
    int first = m.side_of_letter(code.front());
    int last_entry = m.partner(m.side_of_letter(code.back()));
    auto touches = [n](int corner, int side) { return corner == side || corner == (side + 1) % n; };
    return c0 >= 0 && c0 < n && c1 >= 0 && c1 < n && !touches(c0, first) && !touches(c1, last_entry);
}
}  // namespace detail

/// Canonical arc with explicitly given end corners (in the orientation of
/// `code`). Throws if the realization is not embedded.
inline ArcClass make_arc(const PuncturedSurfaceModel& m, std::vector<int> code, int c0, int c1) {
    detail::check_code(m, code);
    if (!detail::corners_allowed(m, code, c0, c1)) throw ArcError("arc end corners are not admissible");
    auto inv = inverse_code(code);
    ArcClass a = inv < code ? ArcClass{inv, c1, c0} : ArcClass{code, c0, c1};
    if (arc_self_crossings(a, m) != 0) throw ArcError("arc " + a.to_string() + " is not embedded");
    return a;
}

/// Canonical arc for a letter sequence: the first admissible corner pair
/// (lexicographically) whose straight realization embeds. Returns nullopt if
/// none does.
inline std::optional<ArcClass> straightened_arc(const PuncturedSurfaceModel& m, const std::vector<int>& code) {
    detail::check_code(m, code);
    auto inv = inverse_code(code);
    const std::vector<int>& canon = inv < code ? inv : code;
    for (int c0 = 0; c0 < m.side_count(); ++c0)
        for (int c1 = 0; c1 < m.side_count(); ++c1) {
            if (!detail::corners_allowed(m, canon, c0, c1)) continue;
            ArcClass a{canon, c0, c1};
            if (arc_self_crossings(a, m) == 0) return a;
        }
    return std::nullopt;
}

inline ArcClass make_arc(const PuncturedSurfaceModel& m, std::vector<int> code) {
    auto a = straightened_arc(m, code);
    if (!a) throw ArcError("no embedded realization for code");
    return *a;
}

class ResourceCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultMaxArcs = 20'000;

/// One embedded arc per canonical code of length 1..k (codes with no embedded
/// straight realization are skipped), ordered by length then code.
inline std::vector<ArcClass> enumerate_arcs(const PuncturedSurfaceModel& m, int k,
                                            std::size_t max_arcs = kDefaultMaxArcs) {
    std::vector<ArcClass> out;
    if (k <= 0) return out;
    std::vector<int> letters;
    for (int gen = 1; gen <= 2 * m.genus; ++gen) {
        letters.push_back(gen);
        letters.push_back(-gen);
    }
    std::sort(letters.begin(), letters.end());
    std::vector<std::vector<int>> layer{{}};
    for (int len = 1; len <= k; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& w : layer)
            for (int x : letters) {
                if (!w.empty() && x == -w.back()) continue;
                auto v = w;
                v.push_back(x);
                next.push_back(std::move(v));
            }
        for (const auto& w : next) {
            if (w > inverse_code(w)) continue;
            auto a = straightened_arc(m, w);
            if (!a) continue;
            out.push_back(std::move(*a));
            if (out.size() > max_arcs)
                throw ResourceCapError("arc enumeration exceeds cap of " + std::to_string(max_arcs));
        }
        layer = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Symmetric table of crossing numbers for a fixed arc list.
class ArcIntersectionTable {
public:
    ArcIntersectionTable() = default;
    ArcIntersectionTable(const PuncturedSurfaceModel& m, std::vector<ArcClass> arcs)
        : arcs_(std::move(arcs)), n_(arcs_.size()), table_(n_ * n_, 0) {
        for (std::size_t i = 0; i < n_; ++i) index_.emplace(arcs_[i], i);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j) {
                int v = arc_intersection(arcs_[i], arcs_[j], m);
                table_[i * n_ + j] = table_[j * n_ + i] = v;
            }
    }

    const std::vector<ArcClass>& arcs() const noexcept { return arcs_; }
    bool contains(const ArcClass& a) const { return index_.count(a) != 0; }
    std::size_t index_of(const ArcClass& a) const { return index_.at(a); }
    int operator()(const ArcClass& a, const ArcClass& b) const {
        return table_[index_of(a) * n_ + index_of(b)];
    }

private:
    std::vector<ArcClass> arcs_;
    std::size_t n_ = 0;
    std::vector<int> table_;
    std::map<ArcClass, std::size_t> index_;
};

/// F_n: n+1 parallel copies of a genus-g surface F chained by n unknotted
/// tubes. Region r lies between copies r-1 and r and holds solid tube r; the
/// rest of the region is a product block on the opposite side.
struct TubedSurface {
    int base_genus = 1;
    int tubes = 1;
    std::vector<PuncturedSurfaceModel> regions;  // regions[r-1] for r = 1..n

    int copies() const { return tubes + 1; }
    int genus() const { return copies() * base_genus; }

    /// Solid tube 1 sits on side B; sides alternate along the chain.
    Side tube_side(int i) const {
        check_tube(i);
        return i % 2 == 1 ? Side::B : Side::A;
    }
    Side block_side(int r) const { return opposite(tube_side(r)); }
    /// W' at this level is the side holding the last tube.
    Side w_side() const { return tube_side(tubes); }
    RelativeSide relative(Side s) const { return s == w_side() ? RelativeSide::W : RelativeSide::V; }

    const PuncturedSurfaceModel& region(int r) const {
        check_tube(r);
        return regions[static_cast<std::size_t>(r - 1)];
    }

    void check_tube(int i) const {
        if (i < 1 || i > tubes) throw std::out_of_range("tube/region index " + std::to_string(i) + " out of range 1.." + std::to_string(tubes));
    }

    bool operator==(const TubedSurface&) const = default;
};

inline TubedSurface build_tubed_surface(int g, int n) {
    if (g < 1) throw std::invalid_argument("genus must be >= 1");
    if (n < 1) throw std::invalid_argument("tube count must be >= 1");
    TubedSurface s;
    s.base_genus = g;
    s.tubes = n;
    for (int r = 1; r <= n; ++r) {
        PuncturedSurfaceModel m = build_punctured_model(g, 0);
        // the block's faces have holes where the neighbouring tubes leave
        if (r >= 2) m.feet.push_back({r - 1, FootBoundary::Lower});
        if (r <= n - 1) m.feet.push_back({r + 1, FootBoundary::Upper});
        s.regions.push_back(std::move(m));
    }
    return s;
}

}  // namespace tminimal
