#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tminimal/flag_complex.hpp"
#include "tminimal/homology.hpp"
#include "tminimal/simplicial_map.hpp"

using namespace tminimal;

namespace {

FlagComplex graph(std::vector<std::string> ids, std::vector<std::pair<std::string, std::string>> edges) {
    std::vector<Vertex> vs;
    for (auto& id : ids) vs.push_back({id, id});
    return FlagComplex(vs, edges);
}

FlagComplex complete_graph(int n) {
    std::vector<std::string> ids;
    std::vector<std::pair<std::string, std::string>> es;
    for (int i = 0; i < n; ++i) ids.push_back("k" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.emplace_back(ids[i], ids[j]);
    return graph(ids, es);
}

std::vector<std::size_t> counts_by_dim(const FlagComplex& c, int d) {
    std::vector<std::size_t> out;
    for (const auto& layer : flag_cliques_by_dimension(c, d)) out.push_back(layer.size());
    out.resize(static_cast<std::size_t>(d) + 1, 0);
    return out;
}

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST(FlagComplex, RejectsSelfLoopsAndUnknownVertices) {
    EXPECT_THROW(graph({"a"}, {{"a", "a"}}), ComplexError);
    EXPECT_THROW(graph({"a"}, {{"a", "b"}}), ComplexError);
    EXPECT_THROW(graph({"a", "a"}, {}), ComplexError);
}

TEST(FlagComplex, EdgesAreNormalizedSmallerIdFirst) {
    auto c = graph({"b", "a"}, {{"b", "a"}});
    ASSERT_EQ(c.edges().size(), 1u);
    EXPECT_EQ(c.edges()[0], (Edge{"a", "b"}));
    EXPECT_TRUE(c.adjacent("b", "a"));
}

TEST(FlagCliques, EdgelessGraphHasOnlyVertices) {
    auto c = graph({"a", "b", "c"}, {});
    EXPECT_EQ(counts_by_dim(c, 2), (std::vector<std::size_t>{3, 0, 0}));
}

TEST(FlagCliques, CompleteGraphOnFourVertices) {
    EXPECT_EQ(counts_by_dim(complete_graph(4), 3), (std::vector<std::size_t>{4, 6, 4, 1}));
    EXPECT_EQ(flag_cliques(complete_graph(4), 3).size(), 15u);
}

TEST(FlagCliques, OctahedronMatchesSubsetScan) {
    auto oct = octahedral_sphere(3);
    auto brute = oracle::clique_counts(oct, 3);
    auto fast = counts_by_dim(oct, 2);
    EXPECT_EQ(fast, (std::vector<std::size_t>{brute[1], brute[2], brute[3]}));
    EXPECT_EQ(fast, (std::vector<std::size_t>{6, 12, 8}));
}

TEST(FlagCliques, CanonicalOrderAndNoDuplicates) {
    std::mt19937_64 rng(7);
    auto c = oracle::random_flag_complex(rng, 10, 0.5);
    auto flat = flag_cliques(c, 4);
    EXPECT_EQ(flat, flag_cliques(c, 4));
    std::set<Simplex> seen(flat.begin(), flat.end());
    EXPECT_EQ(seen.size(), flat.size());
    for (std::size_t i = 1; i < flat.size(); ++i) {
        if (flat[i].size() == flat[i - 1].size()) EXPECT_LT(flat[i - 1], flat[i]);
        else EXPECT_LT(flat[i - 1].size(), flat[i].size());
    }
}

TEST(FlagCliques, OctahedralCountsFollowClosedForm) {
    for (int n = 1; n <= 5; ++n) {
        auto counts = counts_by_dim(octahedral_sphere(n), n - 1);
        for (int k = 0; k < n; ++k)
            EXPECT_EQ(counts[static_cast<std::size_t>(k)],
                      (std::size_t{1} << (k + 1)) * binomial(static_cast<std::size_t>(n), static_cast<std::size_t>(k) + 1))
                << "n=" << n << " k=" << k;
    }
}

TEST(FlagCliques, ResourceCapNamesDimension) {
    try {
        flag_cliques(complete_graph(8), 3, 40);
        FAIL() << "expected a resource limit error";
    } catch (const ResourceLimitError& e) {
        EXPECT_EQ(e.dimension(), 2);  // C(8,3) = 56 > 40, C(8,2) = 28 fits
    }
}

TEST(Suspend, OfEmptyComplexIsZeroSphere) {
    auto s = suspend(FlagComplex{}, "a", "b");
    EXPECT_EQ(s.size(), 2u);
    EXPECT_EQ(s.edge_count(), 0u);
}

TEST(Suspend, OfZeroSphereIsFourCycle) {
    auto s0 = graph({"D0", "E0"}, {});
    auto s1 = suspend(s0, "D1", "E1");
    EXPECT_EQ(s1.edge_count(), 4u);
    EXPECT_TRUE(s1.adjacent("D0", "D1"));
    EXPECT_TRUE(s1.adjacent("D1", "E0"));
    EXPECT_TRUE(s1.adjacent("E0", "E1"));
    EXPECT_TRUE(s1.adjacent("E1", "D0"));
    EXPECT_FALSE(s1.adjacent("D0", "E0"));
    EXPECT_FALSE(s1.adjacent("D1", "E1"));
}

TEST(Suspend, OfFourCycleIsOctahedron) {
    auto oct = suspend(octahedral_sphere(2), "a", "b");
    auto h = reduced_homology(oct, 3);
    EXPECT_TRUE(h.is_sphere_like(2));
    EXPECT_EQ(oracle::reduced_betti_mod_p(oct, 3), (std::vector<std::size_t>{0, 0, 1, 0}));
}

TEST(Suspend, RejectsCollidingIds) {
    auto s0 = graph({"D0", "E0"}, {});
    EXPECT_THROW(suspend(s0, "D0", "x"), ComplexError);
    EXPECT_THROW(suspend(s0, "x", "x"), ComplexError);
}

TEST(OctahedralSphere, SmallCases) {
    EXPECT_EQ(octahedral_sphere(1).size(), 2u);
    EXPECT_EQ(octahedral_sphere(1).edge_count(), 0u);
    auto c4 = octahedral_sphere(2);
    EXPECT_EQ(c4.size(), 4u);
    EXPECT_EQ(c4.edge_count(), 4u);
    for (const auto& v : c4.vertices()) EXPECT_EQ(c4.neighbours(c4.index_of(v.id)).size(), 2u);
}

TEST(OctahedralSphere, FourPairsCountsAndEuler) {
    auto counts = counts_by_dim(octahedral_sphere(4), 3);
    EXPECT_EQ(counts, (std::vector<std::size_t>{8, 24, 32, 16}));
    long euler = 0;
    for (std::size_t k = 0; k < counts.size(); ++k) euler += (k % 2 ? -1L : 1L) * static_cast<long>(counts[k]);
    EXPECT_EQ(euler, 0);
}

TEST(OctahedralSphere, AdjacentIffDifferentPairs) {
    auto s = octahedral_sphere(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            bool expect = i != j;
            EXPECT_EQ(s.adjacent(octahedral_d(i), octahedral_d(j)), expect);
            EXPECT_EQ(s.adjacent(octahedral_d(i), octahedral_e(j)), expect);
            EXPECT_EQ(s.adjacent(octahedral_e(i), octahedral_e(j)), expect);
        }
}

TEST(SmithNormalForm, InvariantFactorsAndTransforms) {
    IntMatrix m(2, 2);
    m(0, 0) = 2;
    m(1, 1) = 3;
    auto snf = smith_normal_form(m);
    EXPECT_EQ(snf.invariant_factors(), (std::vector<BigInt>{1, 6}));
    EXPECT_EQ(snf.left * m * snf.right, snf.diagonal);
    EXPECT_EQ(snf.left * snf.left_inverse, IntMatrix::identity(2));
    EXPECT_EQ(snf.right * snf.right_inverse, IntMatrix::identity(2));
}

TEST(SmithNormalForm, TransformsOnRandomMatrices) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> entry(-4, 4);
    for (int trial = 0; trial < 30; ++trial) {
        IntMatrix m(5, 7);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 7; ++j) m(i, j) = entry(rng);
        auto snf = smith_normal_form(m);
        EXPECT_EQ(snf.left * m * snf.right, snf.diagonal);
        EXPECT_EQ(snf.left_inverse * snf.left, IntMatrix::identity(5));
        EXPECT_EQ(snf.right_inverse * snf.right, IntMatrix::identity(7));
        auto f = snf.invariant_factors();
        for (std::size_t i = 1; i < f.size(); ++i) EXPECT_EQ(f[i] % f[i - 1], 0);
    }
}

TEST(SmithNormalForm, LargeEntriesStayExact) {
    IntMatrix m(2, 2);
    m(0, 0) = BigInt("123456789012345678901234567890");
    m(0, 1) = BigInt("987654321098765432109876543210");
    m(1, 0) = 3;
    m(1, 1) = 7;
    auto snf = smith_normal_form(m);
    EXPECT_EQ(snf.left * m * snf.right, snf.diagonal);
}

TEST(ReducedHomology, SingleVertexIsAcyclic) {
    auto h = reduced_homology(graph({"a"}, {}), 3);
    for (const auto& g : h.groups) EXPECT_TRUE(g.trivial());
}

TEST(ReducedHomology, FourCycle) {
    auto c4 = octahedral_sphere(2);
    auto h = reduced_homology(c4, 2);
    EXPECT_TRUE(h.is_sphere_like(1));
    EXPECT_EQ(oracle::reduced_betti_mod_p(c4, 2), (std::vector<std::size_t>{0, 1, 0}));
}

TEST(ReducedHomology, Octahedron) {
    auto h = reduced_homology(octahedral_sphere(3), 3);
    EXPECT_TRUE(h.is_sphere_like(2));
    EXPECT_EQ(h[2].to_string(), "Z");
}

TEST(ReducedHomology, DisjointPointsGiveRankInDegreeZero) {
    auto h = reduced_homology(graph({"a", "b", "c"}, {}), 1);
    EXPECT_EQ(h[0].betti, 2u);
}

TEST(ReducedHomology, BoundaryOfBoundaryVanishes) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        auto c = oracle::random_flag_complex(rng, 9, 0.6);
        auto cc = chain_complex(c, 4);
        for (int k = 1; k <= 4; ++k) {
            auto d1 = cc.boundary(k);
            auto d2 = cc.boundary(k + 1);
            if (d1.cols() == 0 || d2.cols() == 0) continue;
            EXPECT_TRUE((d1 * d2).is_zero()) << "k=" << k;
        }
    }
}

TEST(ReducedHomology, SuspensionShiftsDegreeOnRandomComplexes) {
    std::mt19937_64 rng(20240501);
    std::uniform_int_distribution<std::size_t> size(1, 12);
    std::uniform_real_distribution<double> density(0.2, 0.8);
    for (int trial = 0; trial < 25; ++trial) {
        auto x = oracle::random_flag_complex(rng, size(rng), density(rng));
        auto hx = reduced_homology(x, 4);
        auto hs = reduced_homology(suspend(x, "zz_a", "zz_b"), 5);
        for (std::size_t k = 1; k <= 5; ++k) EXPECT_EQ(hs[k], hx[k - 1]) << "trial " << trial << " k=" << k;
        EXPECT_TRUE(hs[0].trivial());
    }
}

TEST(CheckSimplicial, IdentityAndConstantMaps) {
    auto c4 = octahedral_sphere(2);
    EXPECT_TRUE(check_simplicial(VertexMap::identity(c4)).empty());
    std::map<VertexId, VertexId> constant;
    for (const auto& v : c4.vertices()) constant[v.id] = "D0";
    EXPECT_TRUE(check_simplicial(VertexMap(c4, c4, constant)).empty());
}

TEST(CheckSimplicial, ReportsEdgeSentOntoNonEdge) {
    auto c4 = octahedral_sphere(2);
    std::map<VertexId, VertexId> f{{"D0", "D0"}, {"D1", "E0"}, {"E0", "E0"}, {"E1", "E1"}};
    // D0-D1 lands on {D0, E0}, a non-edge; D1-E0 collapses; E1 edges survive
    auto bad = check_simplicial(VertexMap(c4, c4, f));
    ASSERT_EQ(bad.size(), 1u);
    EXPECT_EQ(bad[0], (Edge{"D0", "D1"}));
}

TEST(VertexMapTest, MustBeTotal) {
    auto c4 = octahedral_sphere(2);
    EXPECT_THROW(VertexMap(c4, c4, {{"D0", "D0"}}), ComplexError);
}

TEST(CheckRetraction, IdentityOnWholeComplex) {
    auto c4 = octahedral_sphere(2);
    EXPECT_TRUE(check_retraction(VertexMap::identity(c4), c4).ok);
}

TEST(CheckRetraction, CollapsingConeVertexOntoBase) {
    // suspension of the 4-cycle; send cone point "a" to D0 and "b" to E0.
    auto base = octahedral_sphere(2);
    auto sus = suspend(base, "a", "b");
    std::map<VertexId, VertexId> f;
    for (const auto& v : base.vertices()) f[v.id] = v.id;
    f["a"] = "D0";
    f["b"] = "D0";
    auto r = check_retraction(VertexMap(sus, base, f), base);
    // exhaustive scan: a-E0 lands on {D0,E0}, a non-edge of the base
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.non_simplicial_edges.size(), 2u);  // (E0,a) and (E0,b)
    EXPECT_TRUE(r.moved_vertices.empty());

    // a cone over a single edge retracts fine onto that edge's endpoint set
    auto seg = graph({"p", "q"}, {{"p", "q"}});
    auto cone = suspend(seg, "a", "b");
    std::map<VertexId, VertexId> g{{"p", "p"}, {"q", "q"}, {"a", "p"}, {"b", "q"}};
    EXPECT_TRUE(check_retraction(VertexMap(cone, seg, g), seg).ok);
}

TEST(CheckRetraction, MovedVertexIsNamed) {
    auto c4 = octahedral_sphere(2);
    std::map<VertexId, VertexId> f{{"D0", "D0"}, {"D1", "D1"}, {"E0", "E0"}, {"E1", "D1"}};
    auto r = check_retraction(VertexMap(c4, c4, f), c4);
    EXPECT_FALSE(r.ok);
    ASSERT_EQ(r.moved_vertices.size(), 1u);
    EXPECT_EQ(r.moved_vertices[0], "E1");
}

TEST(CheckRetraction, ImageOutsideSubcomplexIsAnError) {
    auto c4 = octahedral_sphere(2);
    auto sub = c4.induced({"D0", "E0"});
    EXPECT_THROW(check_retraction(VertexMap::identity(c4), sub), ContainmentError);
}

TEST(CertifyHomologyRetraction, IdentityOnFourCycle) {
    auto c4 = octahedral_sphere(2);
    auto cert = certify_homology_retraction(VertexMap::identity(c4), c4, 2);
    EXPECT_TRUE(cert.passed) << cert.reason;
    EXPECT_EQ(cert.generating_cycle.size(), 4u);
    EXPECT_TRUE(boundary(cert.generating_cycle).empty());
    EXPECT_EQ(cert.image_cycle, cert.generating_cycle);
}

TEST(CertifyHomologyRetraction, ZeroSphereGeneratorHasZeroSum) {
    auto s0 = octahedral_sphere(1);
    auto cert = certify_homology_retraction(VertexMap::identity(s0), s0, 1);
    ASSERT_TRUE(cert.passed) << cert.reason;
    BigInt sum = 0;
    for (const auto& [s, k] : cert.generating_cycle) sum += k;
    EXPECT_EQ(sum, 0);
}

TEST(CertifyHomologyRetraction, RefusesNonSimplicialMap) {
    // 4-cycle plus an extra vertex x joined to D0, E0, D1; x -> E1 would send the
    // edge x-E1? no such edge; x-D1 -> {E1, D1} is a non-edge of the sphere.
    auto s1 = octahedral_sphere(2);
    std::vector<Vertex> vs = s1.vertices();
    vs.push_back({"x", "x"});
    auto es = s1.edges();
    es.emplace_back("D0", "x");
    es.emplace_back("E0", "x");
    es.emplace_back("D1", "x");
    FlagComplex ambient(vs, es);
    std::map<VertexId, VertexId> f;
    for (const auto& v : s1.vertices()) f[v.id] = v.id;
    f["x"] = "E1";
    VertexMap r(ambient, s1, f);
    auto bad = check_simplicial(r);
    ASSERT_EQ(bad.size(), 1u);
    EXPECT_EQ(bad[0], (Edge{"D1", "x"}));
    auto cert = certify_homology_retraction(r, s1, 2);
    EXPECT_FALSE(cert.passed);
    EXPECT_NE(cert.reason.find("refused"), std::string::npos);
}

TEST(CertifyHomologyRetraction, RequiresRankOneHomology) {
    auto seg = graph({"p", "q"}, {{"p", "q"}});
    auto cert = certify_homology_retraction(VertexMap::identity(seg), seg, 2);
    EXPECT_FALSE(cert.passed);
}

TEST(CertifyHomologyRetraction, ConsistentWithRetractionCheckOnRandomMaps) {
    // whenever check_retraction accepts, the certificate never reports a moved cycle
    std::mt19937_64 rng(99);
    auto s = octahedral_sphere(3);
    int accepted = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Vertex> vs = s.vertices();
        auto es = s.edges();
        std::bernoulli_distribution coin(0.5);
        for (int extra = 0; extra < 3; ++extra) {
            std::string id = "y" + std::to_string(extra);
            for (const auto& v : vs)
                if (coin(rng)) es.emplace_back(v.id, id);
            vs.push_back({id, id});
        }
        FlagComplex ambient(vs, es);
        std::map<VertexId, VertexId> f;
        for (const auto& v : s.vertices()) f[v.id] = v.id;
        std::uniform_int_distribution<std::size_t> pick(0, s.size() - 1);
        for (int extra = 0; extra < 3; ++extra) f["y" + std::to_string(extra)] = s.vertex(pick(rng)).id;
        VertexMap r(ambient, s, f);
        auto cert = certify_homology_retraction(r, s, 3);
        if (check_retraction(r, s).ok) {
            ++accepted;
            EXPECT_TRUE(cert.passed) << cert.reason;
        } else {
            EXPECT_FALSE(cert.passed);
        }
    }
    EXPECT_GT(accepted, 0);
}
