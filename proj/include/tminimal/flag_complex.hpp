#pragma once

// Flag complexes stored by their 1-skeleton. Simplices are the cliques of the
// adjacency graph and are never stored.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tminimal {

using VertexId = std::string;
using Simplex = std::vector<std::size_t>;  // sorted vertex indices

struct Vertex {
    VertexId id;
    std::string label;
};

class ComplexError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ResourceLimitError : public std::runtime_error {
public:
    ResourceLimitError(const std::string& what, int dimension)
        : std::runtime_error(what), dimension_(dimension) {}
    int dimension() const noexcept { return dimension_; }

private:
    int dimension_;
};

inline constexpr std::size_t kDefaultMaxSimplices = 1'000'000;

/// Vertices are kept sorted by id so every derived matrix has a canonical
/// ordering; `index_of` maps ids back to positions.
class FlagComplex {
public:
    FlagComplex() = default;

    /// Builds a complex, validating ids and edges. Edges may be given in either
    /// orientation; they are normalized.
    FlagComplex(std::vector<Vertex> vertices,
                const std::vector<std::pair<VertexId, VertexId>>& edges) {
        std::sort(vertices.begin(), vertices.end(),
                  [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            if (!index_.emplace(vertices[i].id, i).second)
                throw ComplexError("duplicate vertex id '" + vertices[i].id + "'");
        }
        vertices_ = std::move(vertices);
        adjacency_.assign(vertices_.size(), {});
        for (const auto& [a, b] : edges) add_edge_internal(a, b);
    }

    std::size_t size() const noexcept { return vertices_.size(); }
    bool empty() const noexcept { return vertices_.empty(); }
    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
    const Vertex& vertex(std::size_t i) const { return vertices_.at(i); }

    bool contains(const VertexId& id) const { return index_.count(id) != 0; }

    std::size_t index_of(const VertexId& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw ComplexError("unknown vertex id '" + id + "'");
        return it->second;
    }

    bool adjacent(std::size_t i, std::size_t j) const {
        return adjacency_.at(i).count(j) != 0;
    }
    bool adjacent(const VertexId& a, const VertexId& b) const {
        return adjacent(index_of(a), index_of(b));
    }

    const std::set<std::size_t>& neighbours(std::size_t i) const { return adjacency_.at(i); }

    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (const auto& n : adjacency_) twice += n.size();
        return twice / 2;
    }

    /// Edges as id pairs, lexicographically smaller id first, sorted.
    std::vector<std::pair<VertexId, VertexId>> edges() const {
        std::vector<std::pair<VertexId, VertexId>> out;
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            for (std::size_t j : adjacency_[i])
                if (i < j) out.emplace_back(vertices_[i].id, vertices_[j].id);
        return out;
    }

    /// Full subcomplex spanned by the given vertex ids.
    FlagComplex induced(const std::vector<VertexId>& ids) const {
        std::vector<Vertex> vs;
        std::set<VertexId> keep(ids.begin(), ids.end());
        for (const auto& id : keep) vs.push_back(vertices_.at(index_of(id)));
        std::vector<std::pair<VertexId, VertexId>> es;
        for (const auto& [a, b] : edges())
            if (keep.count(a) && keep.count(b)) es.emplace_back(a, b);
        return FlagComplex(std::move(vs), es);
    }

private:
    void add_edge_internal(const VertexId& a, const VertexId& b) {
        if (a == b) throw ComplexError("self-loop on vertex '" + a + "'");
        std::size_t i = index_of(a);
        std::size_t j = index_of(b);
        adjacency_[i].insert(j);
        adjacency_[j].insert(i);
    }

    std::vector<Vertex> vertices_;
    std::map<VertexId, std::size_t> index_;
    std::vector<std::set<std::size_t>> adjacency_;
};

/// All cliques with at most d+1 vertices, grouped by dimension: result[k] holds
/// the k-simplices in lexicographic order of their (sorted) index tuples.
inline std::vector<std::vector<Simplex>> flag_cliques_by_dimension(
    const FlagComplex& c, int d, std::size_t max_per_dimension = kDefaultMaxSimplices) {
    if (d < 0) throw std::invalid_argument("flag_cliques: dimension must be >= 0");
    std::vector<std::vector<Simplex>> out(static_cast<std::size_t>(d) + 1);
    for (std::size_t v = 0; v < c.size(); ++v) out[0].push_back({v});
    if (out[0].size() > max_per_dimension)
        throw ResourceLimitError("clique count exceeds cap in dimension 0", 0);
    for (int k = 1; k <= d; ++k) {
        auto& cur = out[static_cast<std::size_t>(k)];
        for (const auto& s : out[static_cast<std::size_t>(k) - 1]) {
            // extend by a common neighbour larger than the last vertex
            const auto& first = c.neighbours(s.front());
            for (auto it = first.upper_bound(s.back()); it != first.end(); ++it) {
                std::size_t w = *it;
                bool ok = true;
                for (std::size_t i = 1; i < s.size() && ok; ++i) ok = c.adjacent(s[i], w);
                if (!ok) continue;
                Simplex t = s;
                t.push_back(w);
                cur.push_back(std::move(t));
                if (cur.size() > max_per_dimension)
                    throw ResourceLimitError(
                        "clique count exceeds cap in dimension " + std::to_string(k), k);
            }
        }
        if (cur.empty()) break;
    }
    return out;
}

/// Flat list of all simplices of dimension <= d, ordered by dimension and then
/// lexicographically.
inline std::vector<Simplex> flag_cliques(const FlagComplex& c, int d,
                                         std::size_t max_per_dimension = kDefaultMaxSimplices) {
    std::vector<Simplex> flat;
    for (auto& layer : flag_cliques_by_dimension(c, d, max_per_dimension))
        for (auto& s : layer) flat.push_back(std::move(s));
    return flat;
}

/// Suspension: two new cone points, each joined to every old vertex but not to
/// each other.
inline FlagComplex suspend(const FlagComplex& c, const Vertex& a, const Vertex& b) {
    if (a.id == b.id) throw ComplexError("suspension points must be distinct");
    for (const auto* p : {&a, &b})
        if (c.contains(p->id)) throw ComplexError("duplicate vertex id '" + p->id + "'");
    std::vector<Vertex> vs = c.vertices();
    auto es = c.edges();
    for (const auto& v : c.vertices()) {
        es.emplace_back(a.id, v.id);
        es.emplace_back(b.id, v.id);
    }
    vs.push_back(a);
    vs.push_back(b);
    return FlagComplex(std::move(vs), es);
}

inline FlagComplex suspend(const FlagComplex& c, const VertexId& a, const VertexId& b) {
    return suspend(c, Vertex{a, a}, Vertex{b, b});
}

/// Ids used by octahedral_sphere: pair i is ("D<i>", "E<i>").
inline VertexId octahedral_d(int i) { return "D" + std::to_string(i); }
inline VertexId octahedral_e(int i) { return "E" + std::to_string(i); }

/// Boundary of the n-dimensional cross-polytope, a flag (n-1)-sphere, built by
/// n-1 suspensions of S^0.
inline FlagComplex octahedral_sphere(int n) {
    if (n < 1) throw std::invalid_argument("octahedral_sphere: n must be >= 1");
    FlagComplex s = suspend(FlagComplex{}, octahedral_d(0), octahedral_e(0));
    for (int i = 1; i < n; ++i) s = suspend(s, octahedral_d(i), octahedral_e(i));
    return s;
}

}  // namespace tminimal
