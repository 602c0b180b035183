#pragma once

// Cubic residue symbols between the ramified primes of a conductor, and the
// directed graph they induce: edge i -> j iff q_i is a cubic residue mod q_j.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ccf/arith.hpp"
#include "ccf/conductor.hpp"

namespace ccf {

struct SymbolMatrix {
    std::vector<u64> primes;              // vertex i is primes[i]; 9 stands for the wild prime
    std::array<std::array<u32, 4>, 4> a{}; // a[i][j] = exponent of primes[i] mod primes[j]
    u32 t = 0;
};

// Modulus side uses the unit group mod q_j (mod 9 for the wild prime); the
// residue side uses the literal integer, reduced mod the modulus.
inline SymbolMatrix symbol_matrix(const Conductor& k) {
    if (k.ell != 3) throw std::invalid_argument("symbol_matrix: ell must be 3");
    if (k.t > 4) throw std::invalid_argument("symbol_matrix: t <= 4");
    SymbolMatrix sm;
    sm.primes = k.ramified_primes;
    sm.t = k.t;
    for (u32 i = 0; i < k.t; ++i)
        for (u32 j = 0; j < k.t; ++j) {
            if (i == j) continue;
            sm.a[i][j] = cubic_exponent(3, sm.primes[j], sm.primes[i]).exponent;
        }
    return sm;
}

struct ResidueGraph {
    u32 t = 0;
    std::vector<std::pair<u32, u32>> edges;  // (i, j) for i -> j, lexicographic
    std::vector<u32> isolated;               // vertices with no incident edge
    u32 n_bidirectional = 0;                 // pairs with both directions
    u32 n_edges = 0;                         // directed count; a mutual pair adds 2
    u32 n_attractive = 0;                    // t = 3: in-edges from both other vertices
    u32 n_repulsive = 0;                     // t = 3: out-edges to both other vertices
    bool delta_zero = false;                 // t = 3, zero-edge graphs only
};

// delta = a_12 a_23 a_31 - a_13 a_32 a_21 (mod 3); only its vanishing is
// independent of the primitive root choices.
inline u32 delta(const SymbolMatrix& sm) {
    if (sm.t != 3) throw std::invalid_argument("delta: t must be 3");
    const auto& a = sm.a;
    u32 x = a[0][1] * a[1][2] * a[2][0] % 3;
    u32 y = a[0][2] * a[2][1] * a[1][0] % 3;
    return (x + 3 - y) % 3;
}

inline ResidueGraph build_graph(const SymbolMatrix& sm) {
    if (sm.t < 2 || sm.t > 3) throw std::invalid_argument("build_graph: t in {2,3}");
    ResidueGraph g;
    g.t = sm.t;
    std::array<u32, 3> indeg{}, outdeg{};
    for (u32 i = 0; i < sm.t; ++i)
        for (u32 j = 0; j < sm.t; ++j) {
            if (i == j || sm.a[i][j] != 0) continue;
            g.edges.emplace_back(i, j);
            ++outdeg[i];
            ++indeg[j];
            ++g.n_edges;
        }
    for (u32 i = 0; i < sm.t; ++i)
        for (u32 j = i + 1; j < sm.t; ++j)
            if (sm.a[i][j] == 0 && sm.a[j][i] == 0) ++g.n_bidirectional;
    for (u32 i = 0; i < sm.t; ++i) {
        if (indeg[i] == 0 && outdeg[i] == 0) g.isolated.push_back(i);
        if (sm.t == 3 && indeg[i] == 2) ++g.n_attractive;
        if (sm.t == 3 && outdeg[i] == 2) ++g.n_repulsive;
    }
    if (sm.t == 3 && g.n_edges == 0) g.delta_zero = (delta(sm) == 0);
    return g;
}

}  // namespace ccf
