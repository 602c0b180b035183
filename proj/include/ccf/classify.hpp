#pragma once

// Category and graph classification of admissible cubic conductors from the
// residue graph on the ramified primes: singlets (t=1), doublet graphs 1..3
// (t=2), and the quartet categories I..V with their numbered graphs (t=3).

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccf/conductor.hpp"
#include "ccf/residue_graph.hpp"

namespace ccf {

enum class Category { Singlet, Doublet, I, II, III, IV, V };

inline const char* category_name(Category c) {
    switch (c) {
        case Category::Singlet: return "Singlet";
        case Category::Doublet: return "Doublet";
        case Category::I: return "I";
        case Category::II: return "II";
        case Category::III: return "III";
        case Category::IV: return "IV";
        case Category::V: return "V";
    }
    return "?";
}

struct CategoryGraph {
    Category category = Category::Singlet;
    u32 graph = 0;                // 0 for singlets
    std::string symbol;           // canonical ASCII form, e.g. "{9<->73->13}"
    std::vector<u64> primes;      // vertices ascending; 9 for the wild prime
    std::string label() const {
        if (category == Category::Singlet) return "S";
        if (category == Category::Doublet) return "D/" + std::to_string(graph);
        return std::string(category_name(category)) + "/" + std::to_string(graph);
    }
};

// 3-rank of the quartet / multiplet members, largest first.
inline std::vector<u32> rank_distribution(const CategoryGraph& cg) {
    switch (cg.category) {
        case Category::Singlet: return {0};
        case Category::Doublet: return cg.graph == 3 ? std::vector<u32>{2, 2} : std::vector<u32>{1, 1};
        case Category::I: return {3, 2, 2, 2};
        case Category::II: return {3, 3, 2, 2};
        case Category::III: return {2, 2, 2, 2};
        case Category::IV: return {3, 3, 3, 3};
        case Category::V: return {4, 4, 4, 4};
    }
    return {};
}

namespace detail {

inline std::string sym_num(u64 q) { return std::to_string(q); }

// Render the canonical symbol for a t = 3 graph once the roles are known.
struct Adj {
    bool m[3][3] = {{false}};
    u32 in[3] = {0}, out[3] = {0};
};

inline Adj adjacency(const ResidueGraph& g) {
    Adj a;
    for (auto [i, j] : g.edges) {
        a.m[i][j] = true;
        ++a.out[i];
        ++a.in[j];
    }
    return a;
}

}  // namespace detail

inline CategoryGraph classify(const Conductor& k) {
    CategoryGraph cg;
    cg.primes = k.ramified_primes;
    if (k.t == 1) {
        cg.category = Category::Singlet;
        cg.symbol = "{" + std::to_string(cg.primes[0]) + "}";
        return cg;
    }
    if (k.t > 3) throw std::invalid_argument("classify: t = " + std::to_string(k.t) + " not supported");
    SymbolMatrix sm = symbol_matrix(k);
    ResidueGraph g = build_graph(sm);
    const auto& P = sm.primes;
    auto N = [&](u32 v) { return std::to_string(P[v]); };

    if (k.t == 2) {
        cg.category = Category::Doublet;
        if (g.n_edges == 2) {
            cg.graph = 3;
            cg.symbol = "{" + N(0) + "<->" + N(1) + "}";
        } else if (g.n_edges == 1) {
            cg.graph = 2;
            u32 s = g.edges[0].first, d = g.edges[0].second;
            cg.symbol = "{" + N(s) + "->" + N(d) + "}";
        } else {
            cg.graph = 1;
            cg.symbol = "{" + N(0) + "," + N(1) + "}";
        }
        return cg;
    }

    detail::Adj a = detail::adjacency(g);
    u32 bid = g.n_bidirectional, knt = g.n_edges, att = g.n_attractive, rep = g.n_repulsive;
    // Mutual pair and its complement, when bid >= 1.
    u32 pi = 0, pj = 0, pk = 0;
    for (u32 i = 0; i < 3 && bid; ++i)
        for (u32 j = i + 1; j < 3; ++j)
            if (a.m[i][j] && a.m[j][i]) { pi = i; pj = j; pk = 3 - i - j; }

    auto set_graph = [&](Category c, u32 n) { cg.category = c; cg.graph = n; };

    if (bid == 3) {
        set_graph(Category::V, 1);
        cg.symbol = "{" + N(0) + "<->" + N(1) + "<->" + N(2) + "<->" + N(0) + "}";
    } else if (bid == 2) {
        u32 mid = 0;  // vertex in both mutual pairs
        for (u32 v = 0; v < 3; ++v) {
            u32 x = (v + 1) % 3, y = (v + 2) % 3;
            if (a.m[v][x] && a.m[x][v] && a.m[v][y] && a.m[y][v]) mid = v;
        }
        u32 ea = 3, eb = 3;
        for (u32 v = 0; v < 3; ++v)
            if (v != mid) (ea == 3 ? ea : eb) = v;
        if (knt == 4) {
            set_graph(Category::IV, 2);
            cg.symbol = "{" + N(ea) + "<->" + N(mid) + "<->" + N(eb) + "}";
        } else {  // knt == 5: one extra edge between the ends
            set_graph(Category::IV, 3);
            u32 s = a.m[ea][eb] ? ea : eb, d = 3 - mid - s;
            cg.symbol = "{" + N(s) + "<->" + N(mid) + "<->" + N(d) + "<-" + N(s) + "}";
        }
    } else if (bid == 1) {
        if (knt == 2) {
            set_graph(Category::III, 5);
            cg.symbol = "{" + N(pi) + "<->" + N(pj) + ";" + N(pk) + "}";
        } else if (knt == 3) {
            if (rep == 1) {
                set_graph(Category::III, 6);  // pair member u sends to the outsider
                u32 u = a.m[pi][pk] ? pi : pj, o = pi + pj - u;
                cg.symbol = "{" + N(o) + "<->" + N(u) + "->" + N(pk) + "}";
            } else {
                set_graph(Category::III, 7);  // outsider sends into pair member u
                u32 u = a.m[pk][pi] ? pi : pj, o = pi + pj - u;
                cg.symbol = "{" + N(o) + "<->" + N(u) + "<-" + N(pk) + "}";
            }
        } else {  // knt == 4
            if (att == 1 && rep == 1) {
                set_graph(Category::III, 9);  // pk -> u <-> w -> pk
                u32 u = a.m[pk][pi] ? pi : pj, w = pi + pj - u;
                cg.symbol = "{" + N(pk) + "->" + N(u) + "<->" + N(w) + "->" + N(pk) + "}";
            } else if (att == 2 && rep == 1) {
                set_graph(Category::III, 8);  // pk -> both pair members
                cg.symbol = "{" + N(pk) + "->" + N(pi) + "<->" + N(pj) + "<-" + N(pk) + "}";
            } else {  // att == 1, rep == 2
                set_graph(Category::IV, 1);  // both pair members -> pk
                cg.symbol = "{" + N(pi) + "<->" + N(pj) + "->" + N(pk) + "<-" + N(pi) + "}";
            }
        }
    } else {  // bid == 0
        if (knt == 0) {
            bool dz = g.delta_zero;
            set_graph(dz ? Category::I : Category::III, 1);
            cg.symbol = "{" + N(0) + "," + N(1) + "," + N(2) + (dz ? ";delta=0" : ";delta!=0") + "}";
        } else if (knt == 1) {
            set_graph(Category::III, 2);
            u32 s = g.edges[0].first, d = g.edges[0].second, k3 = 3 - s - d;
            cg.symbol = "{" + N(s) + "->" + N(d) + ";" + N(k3) + "}";
        } else if (knt == 2) {
            if (rep == 1) {
                set_graph(Category::I, 2);
                u32 r = 0;
                while (a.out[r] != 2) ++r;
                u32 x = (r + 1) % 3, y = (r + 2) % 3;
                if (x > y) std::swap(x, y);
                cg.symbol = "{" + N(x) + "<-" + N(r) + "->" + N(y) + "}";
            } else if (att == 1) {
                set_graph(Category::II, 1);
                u32 c = 0;
                while (a.in[c] != 2) ++c;
                u32 x = (c + 1) % 3, y = (c + 2) % 3;
                if (x > y) std::swap(x, y);
                cg.symbol = "{" + N(x) + "->" + N(c) + "<-" + N(y) + "}";
            } else {
                set_graph(Category::III, 3);  // chain s -> m -> d
                u32 s = 0, m = 0, d = 0;
                for (u32 v = 0; v < 3; ++v) {
                    if (a.out[v] == 1 && a.in[v] == 0) s = v;
                    if (a.out[v] == 1 && a.in[v] == 1) m = v;
                    if (a.out[v] == 0 && a.in[v] == 1) d = v;
                }
                cg.symbol = "{" + N(s) + "->" + N(m) + "->" + N(d) + "}";
            }
        } else {  // knt == 3
            if (att == 1 && rep == 1) {
                set_graph(Category::II, 2);  // i -> j <- k -> i with j attractive, k repulsive
                u32 j = 0, kk = 0;
                for (u32 v = 0; v < 3; ++v) {
                    if (a.in[v] == 2) j = v;
                    if (a.out[v] == 2) kk = v;
                }
                u32 i = 3 - j - kk;
                cg.symbol = "{" + N(i) + "->" + N(j) + "<-" + N(kk) + "->" + N(i) + "}";
            } else {
                set_graph(Category::III, 4);  // pure 3-cycle, start at vertex 0
                u32 b = a.m[0][1] ? 1 : 2, c = 3 - b;
                cg.symbol = "{" + N(0) + "->" + N(b) + "->" + N(c) + "->" + N(0) + "}";
            }
        }
    }
    return cg;
}

inline CategoryGraph classify(u64 c) { return classify(decompose(3, c)); }

inline u32 doublet_graph(const Conductor& k) {
    if (k.t != 2) throw std::invalid_argument("doublet_graph: t must be 2");
    return classify(k).graph;
}

// ---- structural symbol comparison -----------------------------------------
// Printed symbols vary in vertex order; equivalence is by vertex set, directed
// edge set, and the delta annotation when both sides carry one.

struct SymbolShape {
    std::set<u64> vertices;
    std::set<std::pair<u64, u64>> edges;
    int delta = -1;  // -1 absent, 0 "delta=0", 1 "delta!=0"
};

inline SymbolShape parse_symbol(const std::string& s) {
    SymbolShape sh;
    size_t i = 0, n = s.size();
    auto skip = [&] { while (i < n && (s[i] == '{' || s[i] == '}' || s[i] == ' ')) ++i; };
    u64 prev = 0;
    bool have_prev = false;
    int pending = 0;  // 1: prev->next, 2: next->prev, 3: both
    skip();
    while (i < n) {
        if (s.compare(i, 6, "delta=") == 0 && i + 6 < n && s[i + 6] == '0') {
            sh.delta = 0; i += 7;
        } else if (s.compare(i, 7, "delta!=") == 0) {
            sh.delta = 1;
            while (i < n && s[i] != ';' && s[i] != '}') ++i;
        } else if (isdigit(static_cast<unsigned char>(s[i]))) {
            u64 v = 0;
            while (i < n && isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
            sh.vertices.insert(v);
            if (have_prev && pending) {
                if (pending & 1) sh.edges.insert({prev, v});
                if (pending & 2) sh.edges.insert({v, prev});
            }
            prev = v;
            have_prev = true;
            pending = 0;
        } else if (s.compare(i, 3, "<->") == 0) {
            pending = 3; i += 3;
        } else if (s.compare(i, 2, "->") == 0) {
            pending = 1; i += 2;
        } else if (s.compare(i, 2, "<-") == 0) {
            pending = 2; i += 2;
        } else if (s[i] == ',' || s[i] == ';') {
            have_prev = false; pending = 0; ++i;
        } else {
            ++i;
        }
        skip();
    }
    return sh;
}

inline bool symbols_equivalent(const std::string& x, const std::string& y) {
    SymbolShape a = parse_symbol(x), b = parse_symbol(y);
    if (a.vertices != b.vertices || a.edges != b.edges) return false;
    if (a.delta >= 0 && b.delta >= 0 && a.delta != b.delta) return false;
    return true;
}

}  // namespace ccf
