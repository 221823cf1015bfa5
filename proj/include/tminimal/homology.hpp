#pragma once

// Exact integer homology of flag complexes. All arithmetic uses unbounded
// integers (boost::multiprecision::cpp_int); nothing here can overflow.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tminimal/flag_complex.hpp"

namespace tminimal {

using BigInt = boost::multiprecision::cpp_int;

/// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntMatrix operator*(const IntMatrix& o) const {
        IntMatrix out(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const BigInt& a = (*this)(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
            }
        return out;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (x != 0) return false;
        return true;
    }

    bool operator==(const IntMatrix&) const = default;

    // elementary operations
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
    }
    /// row[dst] += q * row[src]
    void add_row(std::size_t dst, std::size_t src, const BigInt& q) {
        if (q == 0) return;
        for (std::size_t c = 0; c < cols_; ++c)
            if ((*this)(src, c) != 0) (*this)(dst, c) += q * (*this)(src, c);
    }
    /// col[dst] += q * col[src]
    void add_col(std::size_t dst, std::size_t src, const BigInt& q) {
        if (q == 0) return;
        for (std::size_t r = 0; r < rows_; ++r)
            if ((*this)(r, src) != 0) (*this)(r, dst) += q * (*this)(r, src);
    }
    void negate_row(std::size_t r) {
        for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
    }
    void negate_col(std::size_t c) {
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigInt> data_;
};

/// Result of a Smith normal form reduction L * A * R = D with L, R unimodular.
/// D is diagonal with d_1 | d_2 | ... | d_rank, all positive.
struct SmithForm {
    IntMatrix diagonal;
    IntMatrix left, left_inverse;
    IntMatrix right, right_inverse;
    std::size_t rank = 0;

    std::vector<BigInt> invariant_factors() const {
        std::vector<BigInt> out;
        for (std::size_t i = 0; i < rank; ++i) out.push_back(diagonal(i, i));
        return out;
    }
};

namespace detail {

// Carries the matrix under reduction plus the transforms. Every row operation
// on A is mirrored on L (same op) and L^-1 (inverse op as a column op); column
// operations likewise on R and R^-1.
struct SmithState {
    IntMatrix a, l, linv, r, rinv;
    bool track;

    void swap_rows(std::size_t i, std::size_t j) {
        a.swap_rows(i, j);
        if (track) { l.swap_rows(i, j); linv.swap_cols(i, j); }
    }
    void swap_cols(std::size_t i, std::size_t j) {
        a.swap_cols(i, j);
        if (track) { r.swap_cols(i, j); rinv.swap_rows(i, j); }
    }
    void add_row(std::size_t dst, std::size_t src, const BigInt& q) {
        a.add_row(dst, src, q);
        if (track) { l.add_row(dst, src, q); linv.add_col(src, dst, -q); }
    }
    void add_col(std::size_t dst, std::size_t src, const BigInt& q) {
        a.add_col(dst, src, q);
        if (track) { r.add_col(dst, src, q); rinv.add_row(src, dst, -q); }
    }
    void negate_row(std::size_t i) {
        a.negate_row(i);
        if (track) { l.negate_row(i); linv.negate_col(i); }
    }
};

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;  // truncates toward zero
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace detail

inline SmithForm smith_normal_form(const IntMatrix& input, bool track_transforms = true) {
    detail::SmithState st{input, {}, {}, {}, {}, track_transforms};
    const std::size_t m = input.rows(), n = input.cols();
    if (track_transforms) {
        st.l = st.linv = IntMatrix::identity(m);
        st.r = st.rinv = IntMatrix::identity(n);
    }
    IntMatrix& a = st.a;
    std::size_t t = 0;
    for (; t < m && t < n; ++t) {
        for (;;) {
            // smallest nonzero |entry| in the trailing block becomes the pivot
            std::optional<std::pair<std::size_t, std::size_t>> best;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (a(i, j) != 0 && (!best || abs(a(i, j)) < abs(a(best->first, best->second))))
                        best = {i, j};
            if (!best) goto done;
            st.swap_rows(t, best->first);
            st.swap_cols(t, best->second);

            bool dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a(i, t) == 0) continue;
                st.add_row(i, t, -detail::floor_div(a(i, t), a(t, t)));
                if (a(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a(t, j) == 0) continue;
                st.add_col(j, t, -detail::floor_div(a(t, j), a(t, t)));
                if (a(t, j) != 0) dirty = true;
            }
            if (dirty) continue;

            // divisibility: pull any offending row into row t and go again
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n && divides; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        st.add_row(t, i, 1);
                        divides = false;
                    }
            if (divides) break;
        }
        if (a(t, t) < 0) st.negate_row(t);
    }
done:
    SmithForm out;
    out.rank = t;
    out.diagonal = std::move(st.a);
    out.left = std::move(st.l);
    out.left_inverse = std::move(st.linv);
    out.right = std::move(st.r);
    out.right_inverse = std::move(st.rinv);
    return out;
}

/// Boundary matrix from k-simplices (columns) to (k-1)-simplices (rows).
/// For k = 0 this is the augmentation row of ones, which yields reduced homology.
inline IntMatrix boundary_matrix(const std::vector<Simplex>& faces,
                                 const std::vector<Simplex>& cells, int k) {
    if (k == 0) {
        IntMatrix aug(1, cells.size());
        for (std::size_t j = 0; j < cells.size(); ++j) aug(0, j) = 1;
        return aug;
    }
    std::map<Simplex, std::size_t> row_of;
    for (std::size_t i = 0; i < faces.size(); ++i) row_of.emplace(faces[i], i);
    IntMatrix d(faces.size(), cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j) {
        const Simplex& s = cells[j];
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            Simplex f;
            f.reserve(s.size() - 1);
            for (std::size_t i = 0; i < s.size(); ++i)
                if (i != drop) f.push_back(s[i]);
            d(row_of.at(f), j) = (drop % 2 == 0) ? 1 : -1;
        }
    }
    return d;
}

struct HomologyGroup {
    std::size_t betti = 0;
    std::vector<BigInt> torsion;  // each > 1, each divides the next

    bool trivial() const { return betti == 0 && torsion.empty(); }
    bool operator==(const HomologyGroup&) const = default;

    std::string to_string() const {
        if (trivial()) return "0";
        std::ostringstream os;
        bool first = true;
        if (betti > 0) {
            os << "Z";
            if (betti > 1) os << "^" << betti;
            first = false;
        }
        for (const auto& t : torsion) {
            if (!first) os << " + ";
            os << "Z/" << t;
            first = false;
        }
        return os.str();
    }
};

/// Reduced integer homology in dimensions 0..d_max.
struct HomologyProfile {
    std::vector<HomologyGroup> groups;

    const HomologyGroup& operator[](std::size_t k) const { return groups.at(k); }
    std::size_t max_dimension() const { return groups.empty() ? 0 : groups.size() - 1; }
    bool operator==(const HomologyProfile&) const = default;

    /// True iff the only nonzero group is Z in dimension k.
    bool is_sphere_like(std::size_t k) const {
        for (std::size_t i = 0; i < groups.size(); ++i) {
            const auto& g = groups[i];
            if (i == k ? !(g.betti == 1 && g.torsion.empty()) : !g.trivial()) return false;
        }
        return k < groups.size();
    }
};

/// Chain groups C_{-1..d_max+1} and boundaries, shared by homology and the
/// retraction certificate.
struct ChainComplex {
    std::vector<std::vector<Simplex>> cells;  // cells[k] = k-simplices, k = 0..top
    // boundary(k): C_k -> C_{k-1}; k = 0 is the augmentation
    IntMatrix boundary(int k) const {
        if (k < 0) return IntMatrix(0, 0);
        const auto& cur = k < static_cast<int>(cells.size()) ? cells[static_cast<std::size_t>(k)]
                                                             : empty_;
        if (k == 0) return boundary_matrix({}, cur, 0);
        const auto& prev = k - 1 < static_cast<int>(cells.size())
                               ? cells[static_cast<std::size_t>(k - 1)]
                               : empty_;
        return boundary_matrix(prev, cur, k);
    }
    std::size_t count(int k) const {
        if (k == -1) return 1;
        return k >= 0 && k < static_cast<int>(cells.size()) ? cells[static_cast<std::size_t>(k)].size()
                                                            : 0;
    }

private:
    std::vector<Simplex> empty_;
};

inline ChainComplex chain_complex(const FlagComplex& c, int top,
                                  std::size_t max_simplices = kDefaultMaxSimplices) {
    ChainComplex cc;
    cc.cells = flag_cliques_by_dimension(c, top, max_simplices);
    return cc;
}

inline HomologyProfile reduced_homology(const FlagComplex& c, int d_max,
                                        std::size_t max_simplices = kDefaultMaxSimplices) {
    if (d_max < 0) throw std::invalid_argument("reduced_homology: d_max must be >= 0");
    HomologyProfile out;
    if (c.empty()) {
        // reduced homology of the empty complex is Z in degree -1 only
        out.groups.assign(static_cast<std::size_t>(d_max) + 1, HomologyGroup{});
        return out;
    }
    ChainComplex cc = chain_complex(c, d_max + 1, max_simplices);
    std::vector<std::size_t> ranks(static_cast<std::size_t>(d_max) + 3, 0);
    std::vector<std::vector<BigInt>> factors(static_cast<std::size_t>(d_max) + 3);
    for (int k = 0; k <= d_max + 1; ++k) {
        IntMatrix d = cc.boundary(k);
        if (d.rows() == 0 || d.cols() == 0) continue;
        SmithForm snf = smith_normal_form(d, false);
        ranks[static_cast<std::size_t>(k)] = snf.rank;
        factors[static_cast<std::size_t>(k)] = snf.invariant_factors();
    }
    for (int k = 0; k <= d_max; ++k) {
        HomologyGroup g;
        std::size_t n = cc.count(k);
        g.betti = n - ranks[static_cast<std::size_t>(k)] - ranks[static_cast<std::size_t>(k) + 1];
        for (const auto& f : factors[static_cast<std::size_t>(k) + 1])
            if (f > 1) g.torsion.push_back(f);
        out.groups.push_back(std::move(g));
    }
    return out;
}

}  // namespace tminimal
