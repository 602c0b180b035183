#include <gtest/gtest.h>

#include "ccf/residue_graph.hpp"

using namespace ccf;

static SymbolMatrix matrix_of(u64 c) { return symbol_matrix(decompose(3, c)); }

TEST(ResidueGraph, MutualDoublets) {
    SymbolMatrix sm = matrix_of(657);  // 9 * 73
    EXPECT_EQ(sm.primes, (std::vector<u64>{9, 73}));
    EXPECT_EQ(sm.a[0][1], 0u);
    EXPECT_EQ(sm.a[1][0], 0u);

    sm = matrix_of(1267);  // 7 * 181
    EXPECT_EQ(sm.a[0][1], 0u);
    EXPECT_EQ(sm.a[1][0], 0u);

    sm = matrix_of(63);  // 9 * 7, not mutual
    EXPECT_TRUE(sm.a[0][1] != 0 || sm.a[1][0] != 0);
}

TEST(ResidueGraph, AttractorAndCycle) {
    // 3913 = 7 * 13 * 43, arrows 13 -> 7 <- 43
    ResidueGraph g = build_graph(matrix_of(3913));
    EXPECT_EQ(g.n_edges, 2u);
    EXPECT_EQ(g.n_bidirectional, 0u);
    EXPECT_EQ(g.n_attractive, 1u);
    EXPECT_EQ(g.n_repulsive, 0u);

    // 6643 = 7 * 13 * 73, a 3-cycle
    g = build_graph(matrix_of(6643));
    EXPECT_EQ(g.n_edges, 3u);
    EXPECT_EQ(g.n_bidirectional, 0u);
    EXPECT_EQ(g.n_attractive, 0u);
    EXPECT_EQ(g.n_repulsive, 0u);

    // 7657 = 13 * 19 * 31, arrows 13 <- 31 -> 19
    g = build_graph(matrix_of(7657));
    EXPECT_EQ(g.n_edges, 2u);
    EXPECT_EQ(g.n_repulsive, 1u);
    EXPECT_EQ(g.n_attractive, 0u);

    // 8541 = 9 * 13 * 73, arrows 9 <-> 73 -> 13
    g = build_graph(matrix_of(8541));
    EXPECT_EQ(g.n_edges, 3u);
    EXPECT_EQ(g.n_bidirectional, 1u);
}

TEST(ResidueGraph, DeltaFrozen) {
    ResidueGraph g = build_graph(matrix_of(1953));  // 9 * 7 * 31
    EXPECT_EQ(g.n_edges, 0u);
    EXPECT_FALSE(g.delta_zero);

    g = build_graph(matrix_of(4977));  // 9 * 7 * 79
    EXPECT_EQ(g.n_edges, 0u);
    EXPECT_TRUE(g.delta_zero);

    g = build_graph(matrix_of(14539));  // 7 * 31 * 67
    EXPECT_EQ(g.n_edges, 0u);
    EXPECT_FALSE(g.delta_zero);
}

TEST(ResidueGraph, Errors) {
    EXPECT_THROW(build_graph(matrix_of(7)), std::invalid_argument);       // t = 1
    EXPECT_THROW(build_graph(matrix_of(53599)), std::invalid_argument);   // t = 4
    EXPECT_THROW(delta(matrix_of(657)), std::invalid_argument);           // t = 2
    Conductor k = decompose(5, 275);
    EXPECT_THROW(symbol_matrix(k), std::invalid_argument);                // ell != 3
}

// character exponent computed against an explicitly chosen primitive root
static u32 exp_with_root(u64 m, u64 r, u64 g) {
    u64 phi = (m == 9) ? 6 : m - 1;
    u64 omega = pow_mod(g, phi / 3, m);
    u64 x = pow_mod(r % m, phi / 3, m);
    u64 w = 1;
    for (u32 e = 0; e < 3; ++e) {
        if (w == x) return e;
        w = mul_mod(w, omega, m);
    }
    throw std::domain_error("not coprime");
}

static u64 second_primitive_root(u64 m) {
    u64 phi = (m == 9) ? 6 : m - 1;
    Factorization pf = factorize(phi);
    int found = 0;
    for (u64 g = 2; g < m; ++g) {
        if (std::gcd(g, m) != 1) continue;
        bool ok = true;
        for (auto [q, e] : pf.factors) {
            (void)e;
            if (pow_mod(g, phi / q, m) == 1) { ok = false; break; }
        }
        if (ok && ++found == 2) return g;
    }
    throw std::logic_error("no second root");
}

// The edge set and the vanishing of delta do not depend on the primitive
// roots used for the characters; the exponents themselves may.
TEST(ResidueGraph, DeltaInvariantUnderRootChoice) {
    u32 zero_edge = 0;
    for (u64 c = 2; c < 25000; ++c) {
        if (!is_admissible(3, c)) continue;
        Conductor k = decompose(3, c);
        if (k.t != 3) continue;
        SymbolMatrix sm = symbol_matrix(k);
        SymbolMatrix alt = sm;
        for (u32 i = 0; i < 3; ++i)
            for (u32 j = 0; j < 3; ++j) {
                if (i == j) continue;
                alt.a[i][j] = exp_with_root(sm.primes[j], sm.primes[i],
                                            second_primitive_root(sm.primes[j]));
            }
        for (u32 i = 0; i < 3; ++i)
            for (u32 j = 0; j < 3; ++j)
                if (i != j) ASSERT_EQ(sm.a[i][j] == 0, alt.a[i][j] == 0) << c;
        ResidueGraph g = build_graph(sm);
        if (g.n_edges == 0) {
            ++zero_edge;
            ASSERT_EQ(delta(sm) == 0, delta(alt) == 0) << c;
        }
    }
    EXPECT_EQ(zero_edge, 18u);  // graphs I/1 and III/1 below 25000: 7 + 11
}
