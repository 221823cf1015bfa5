#pragma once

// Vertex maps between flag complexes: simplicial and retraction checks, and a
// chain-level certificate that a retraction onto a sphere-like subcomplex
// splits off its top reduced homology.

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tminimal/flag_complex.hpp"
#include "tminimal/homology.hpp"

namespace tminimal {

class ContainmentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Total assignment from domain vertex ids to codomain vertex ids. The map
/// refers to both complexes, which must outlive it.
class VertexMap {
public:
    VertexMap(const FlagComplex& domain, const FlagComplex& codomain,
              std::map<VertexId, VertexId> assignment)
        : domain_(&domain), codomain_(&codomain), assignment_(std::move(assignment)) {
        for (const auto& v : domain.vertices()) {
            auto it = assignment_.find(v.id);
            if (it == assignment_.end())
                throw ComplexError("vertex map is not total: missing '" + v.id + "'");
            if (!codomain.contains(it->second))
                throw ComplexError("image '" + it->second + "' of '" + v.id +
                                   "' is not a codomain vertex");
        }
        for (const auto& [from, to] : assignment_)
            if (!domain.contains(from))
                throw ComplexError("vertex map assigns unknown domain vertex '" + from + "'");
    }

    const FlagComplex& domain() const noexcept { return *domain_; }
    const FlagComplex& codomain() const noexcept { return *codomain_; }
    const std::map<VertexId, VertexId>& assignment() const noexcept { return assignment_; }
    const VertexId& operator()(const VertexId& v) const { return assignment_.at(v); }

    static VertexMap identity(const FlagComplex& c) {
        std::map<VertexId, VertexId> a;
        for (const auto& v : c.vertices()) a.emplace(v.id, v.id);
        return VertexMap(c, c, std::move(a));
    }

private:
    const FlagComplex* domain_;
    const FlagComplex* codomain_;
    std::map<VertexId, VertexId> assignment_;
};

using Edge = std::pair<VertexId, VertexId>;

namespace detail {
inline std::vector<Edge> simplicial_violations(const VertexMap& f, const FlagComplex& target) {
    std::vector<Edge> bad;
    for (const auto& [a, b] : f.domain().edges()) {
        const VertexId& fa = f(a);
        const VertexId& fb = f(b);
        if (fa == fb) continue;
        if (!target.contains(fa) || !target.contains(fb) || !target.adjacent(fa, fb))
            bad.emplace_back(a, b);
    }
    return bad;
}
}  // namespace detail

/// Domain edges whose endpoints map to two distinct non-adjacent vertices.
inline std::vector<Edge> check_simplicial(const VertexMap& f) {
    return detail::simplicial_violations(f, f.codomain());
}

struct RetractionReport {
    bool ok = false;
    std::vector<Edge> non_simplicial_edges;
    std::vector<VertexId> moved_vertices;  // x in s with f(x) != x

    std::string summary() const {
        std::ostringstream os;
        os << (ok ? "retraction" : "not a retraction");
        for (const auto& [a, b] : non_simplicial_edges)
            os << "; edge {" << a << ", " << b << "} not preserved";
        for (const auto& v : moved_vertices) os << "; vertex " << v << " moved";
        return os.str();
    }
};

/// `s` is a subcomplex of the domain; the image of f must lie in it.
inline RetractionReport check_retraction(const VertexMap& f, const FlagComplex& s) {
    for (const auto& v : s.vertices()) {
        if (!f.domain().contains(v.id))
            throw ContainmentError("subcomplex vertex '" + v.id + "' is not in the domain");
    }
    for (const auto& [from, to] : f.assignment())
        if (!s.contains(to))
            throw ContainmentError("image of '" + from + "' is '" + to + "', outside the subcomplex");

    RetractionReport r;
    r.non_simplicial_edges = detail::simplicial_violations(f, s);
    for (const auto& v : s.vertices())
        if (f(v.id) != v.id) r.moved_vertices.push_back(v.id);
    r.ok = r.non_simplicial_edges.empty() && r.moved_vertices.empty();
    return r;
}

/// An integer chain: oriented simplices given by sorted vertex ids.
using Chain = std::map<std::vector<VertexId>, BigInt>;

inline std::string chain_to_string(const Chain& c) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, k] : c) {
        if (k == 0) continue;
        if (!first) os << (k > 0 ? " + " : " - ");
        else if (k < 0) os << "-";
        BigInt m = k < 0 ? BigInt(-k) : k;
        if (m != 1) os << m << "*";
        os << "[";
        for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
        os << "]";
        first = false;
    }
    return first ? "0" : os.str();
}

/// Push a chain forward along a vertex assignment: degenerate images vanish,
/// others are reordered with the sign of the sorting permutation.
inline Chain push_forward(const Chain& c, const std::map<VertexId, VertexId>& f) {
    Chain out;
    for (const auto& [s, k] : c) {
        std::vector<VertexId> img;
        img.reserve(s.size());
        for (const auto& v : s) img.push_back(f.at(v));
        int sign = 1;
        // insertion sort, counting transpositions
        for (std::size_t i = 1; i < img.size(); ++i)
            for (std::size_t j = i; j > 0 && img[j - 1] > img[j]; --j) {
                std::swap(img[j - 1], img[j]);
                sign = -sign;
            }
        if (std::adjacent_find(img.begin(), img.end()) != img.end()) continue;
        out[img] += sign * k;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

/// Integral boundary of a chain (k >= 1).
inline Chain boundary(const Chain& c) {
    Chain out;
    for (const auto& [s, k] : c) {
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            std::vector<VertexId> f;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (i != drop) f.push_back(s[i]);
            out[f] += (drop % 2 == 0 ? 1 : -1) * k;
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

/// Cycles representing a basis of the free part of reduced H_k(c).
inline std::vector<Chain> homology_free_generators(const FlagComplex& c, int k,
                                                   std::size_t max_simplices = kDefaultMaxSimplices) {
    ChainComplex cc = chain_complex(c, k + 1, max_simplices);
    const std::size_t nk = cc.count(k);
    if (nk == 0) return {};
    SmithForm a = smith_normal_form(cc.boundary(k));
    const std::size_t kernel_dim = nk - a.rank;
    if (kernel_dim == 0) return {};

    // coordinates of the (k+1)-boundaries in the kernel basis R[:, rank..]
    IntMatrix b = cc.boundary(k + 1);
    IntMatrix coords = a.right_inverse * (b.cols() ? b : IntMatrix(nk, 0));
    IntMatrix x(kernel_dim, coords.cols());
    for (std::size_t i = 0; i < kernel_dim; ++i)
        for (std::size_t j = 0; j < coords.cols(); ++j) x(i, j) = coords(a.rank + i, j);
    SmithForm sx = smith_normal_form(x);

    std::vector<Chain> gens;
    for (std::size_t g = sx.rank; g < kernel_dim; ++g) {
        // y = Lx^-1 e_g in kernel coordinates, then z = K y
        std::vector<BigInt> z(nk);
        for (std::size_t i = 0; i < kernel_dim; ++i) {
            const BigInt& yi = sx.left_inverse(i, g);
            if (yi == 0) continue;
            for (std::size_t r = 0; r < nk; ++r) z[r] += a.right(r, a.rank + i) * yi;
        }
        Chain chain;
        const auto& cells = cc.cells.at(static_cast<std::size_t>(k));
        for (std::size_t r = 0; r < nk; ++r) {
            if (z[r] == 0) continue;
            std::vector<VertexId> ids;
            for (std::size_t v : cells[r]) ids.push_back(c.vertex(v).id);
            chain[ids] = z[r];
        }
        gens.push_back(std::move(chain));
    }
    return gens;
}

struct HomologyRetractionCertificate {
    bool passed = false;
    int dimension = 0;  // reduced homology degree checked (n - 1)
    std::string reason;
    RetractionReport retraction;
    HomologyProfile subcomplex_homology;
    Chain generating_cycle;
    Chain image_cycle;
    std::string conclusion;
};

/// Checks r_# o i_# = id on a generator of reduced H_{n-1}(s) ~ Z. Since a
/// retraction splits the inclusion, the ambient complex then has a Z summand
/// in reduced degree n-1.
inline HomologyRetractionCertificate certify_homology_retraction(
    const VertexMap& f, const FlagComplex& s, int n,
    std::size_t max_simplices = kDefaultMaxSimplices) {
    if (n < 1) throw std::invalid_argument("certify_homology_retraction: n must be >= 1");
    HomologyRetractionCertificate cert;
    cert.dimension = n - 1;
    cert.retraction = check_retraction(f, s);
    if (!cert.retraction.ok) {
        cert.reason = "refused: " + cert.retraction.summary();
        return cert;
    }
    cert.subcomplex_homology = reduced_homology(s, n - 1, max_simplices);
    const auto& h = cert.subcomplex_homology[static_cast<std::size_t>(n - 1)];
    if (h.betti != 1 || !h.torsion.empty()) {
        cert.reason = "refused: reduced H_" + std::to_string(n - 1) +
                      " of the subcomplex is " + h.to_string() + ", not Z";
        return cert;
    }
    auto gens = homology_free_generators(s, n - 1, max_simplices);
    cert.generating_cycle = gens.at(0);
    if (n - 1 >= 1 && !boundary(cert.generating_cycle).empty()) {
        cert.reason = "internal: generator is not a cycle";
        return cert;
    }
    // i is the identity on ids; r_# o i_# is the push-forward along f
    cert.image_cycle = push_forward(cert.generating_cycle, f.assignment());
    if (cert.image_cycle != cert.generating_cycle) {
        cert.reason = "composite r#.i# moved the generating cycle";
        return cert;
    }
    cert.passed = true;
    cert.conclusion = "r#.i# fixes a generator of reduced H_" + std::to_string(n - 1) +
                      "(S) = Z, so reduced H_" + std::to_string(n - 1) +
                      " of the ambient complex contains a Z summand (homology surrogate for "
                      "pi_" + std::to_string(n - 1) + " being non-trivial)";
    return cert;
}

}  // namespace tminimal
