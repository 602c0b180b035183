#pragma once

// Finite p-groups as multiplication tables, their automorphism groups, and the
// census of order-d automorphisms acting like a Galois generator: counts of
// weak (trace in the derived subgroup) and strong (trace trivial) actions.
// Traces are taken over the designated generating set, ascending products
// x * s(x) * ... * s^{d-1}(x).

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccf/arith.hpp"

namespace ccf {

struct FiniteGroup {
    u32 n = 1;
    std::vector<u32> table;      // row-major, table[a * n + b] = a * b
    u32 identity = 0;
    std::vector<u32> generators; // designated generating set, order matters
    std::string name;

    u32 mul(u32 a, u32 b) const { return table[a * n + b]; }
    u32 inv(u32 a) const {
        for (u32 b = 0; b < n; ++b)
            if (mul(a, b) == identity) return b;
        throw std::logic_error("inv: no inverse");
    }
    u32 order_of(u32 a) const {
        u32 x = a, k = 1;
        while (x != identity) { x = mul(x, a); ++k; }
        return k;
    }

    static FiniteGroup make(std::string name, u32 n, std::vector<u32> table, u32 identity,
                            std::vector<u32> generators) {
        FiniteGroup g;
        g.n = n;
        g.table = std::move(table);
        g.identity = identity;
        g.generators = std::move(generators);
        g.name = std::move(name);
        if (n <= 1000) g.verify();
        return g;
    }

    // Group axioms; associativity via Light's test over the generating set.
    void verify() const {
        if (table.size() != static_cast<size_t>(n) * n) throw std::invalid_argument(name + ": table size");
        for (u32 a = 0; a < n; ++a)
            if (mul(identity, a) != a || mul(a, identity) != a)
                throw std::invalid_argument(name + ": identity fails");
        for (u32 a = 0; a < n; ++a) {
            bool ok = false;
            for (u32 b = 0; b < n && !ok; ++b) ok = mul(a, b) == identity && mul(b, a) == identity;
            if (!ok) throw std::invalid_argument(name + ": inverse fails");
        }
        for (u32 g : generators)
            for (u32 a = 0; a < n; ++a)
                for (u32 b = 0; b < n; ++b)
                    if (mul(mul(a, g), b) != mul(a, mul(g, b)))
                        throw std::invalid_argument(name + ": associativity fails");
        std::vector<char> seen(n, 0);
        seen[identity] = 1;
        std::vector<u32> q = {identity};
        for (size_t h = 0; h < q.size(); ++h)
            for (u32 g : generators) {
                u32 x = mul(q[h], g);
                if (!seen[x]) { seen[x] = 1; q.push_back(x); }
            }
        if (q.size() != static_cast<size_t>(n)) throw std::invalid_argument(name + ": generators do not generate");
    }
};

// ---- constructors ----------------------------------------------------------

inline FiniteGroup cyclic_group(u32 n) {
    std::vector<u32> t(static_cast<size_t>(n) * n);
    for (u32 a = 0; a < n; ++a)
        for (u32 b = 0; b < n; ++b) t[a * n + b] = (a + b) % n;
    std::vector<u32> gens;
    if (n > 1) gens.push_back(1);
    return FiniteGroup::make("C" + std::to_string(n), n, std::move(t), 0, std::move(gens));
}

inline FiniteGroup elementary_abelian(u32 p, u32 rank) {
    u32 n = 1;
    for (u32 i = 0; i < rank; ++i) n *= p;
    std::vector<u32> t(static_cast<size_t>(n) * n);
    auto add = [&](u32 a, u32 b) {
        u32 r = 0, m = 1;
        for (u32 i = 0; i < rank; ++i, m *= p) r += ((a / m + b / m) % p) * m;
        return r;
    };
    for (u32 a = 0; a < n; ++a)
        for (u32 b = 0; b < n; ++b) t[a * n + b] = add(a, b);
    std::vector<u32> gens;
    for (u32 i = 0, m = 1; i < rank; ++i, m *= p) gens.push_back(m);
    return FiniteGroup::make("(" + std::to_string(p) + ")^" + std::to_string(rank), n, std::move(t), 0,
                             std::move(gens));
}

// D4 = <r, s | r^4 = s^2 = 1, s r s = r^-1>, element i + 4j for r^i s^j.
inline FiniteGroup dihedral8() {
    std::vector<u32> t(64);
    for (u32 i = 0; i < 4; ++i)
        for (u32 j = 0; j < 2; ++j)
            for (u32 k = 0; k < 4; ++k)
                for (u32 l = 0; l < 2; ++l) {
                    u32 ii = (j ? (i + 4 - k) % 4 : (i + k) % 4);
                    t[(i + 4 * j) * 8 + (k + 4 * l)] = ii + 4 * ((j + l) % 2);
                }
    return FiniteGroup::make("<8,3>", 8, std::move(t), 0, {1, 4});
}

// Q8 = <i, j>, element a + 4b for i^a j^b; j i = i^-1 j and j^2 = i^2.
inline FiniteGroup quaternion8() {
    std::vector<u32> t(64);
    for (u32 a = 0; a < 4; ++a)
        for (u32 b = 0; b < 2; ++b)
            for (u32 c = 0; c < 4; ++c)
                for (u32 d = 0; d < 2; ++d) {
                    u32 aa, bb;
                    if (b == 0) { aa = (a + c) % 4; bb = d; }
                    else if (d == 0) { aa = (a + 4 - c) % 4; bb = 1; }
                    else { aa = (a + 4 - c + 2) % 4; bb = 0; }
                    t[(a + 4 * b) * 8 + (c + 4 * d)] = aa + 4 * bb;
                }
    return FiniteGroup::make("<8,4>", 8, std::move(t), 0, {1, 4});
}

// Unitriangular 3x3 over F_p: (a, b, c) * (a', b', c') = (a+a', b+b', c+c'+ab').
// For p = 5 this is <125,3>, the extraspecial group of exponent 5.
inline FiniteGroup heisenberg(u32 p) {
    u32 n = p * p * p;
    std::vector<u32> t(static_cast<size_t>(n) * n);
    auto enc = [&](u32 a, u32 b, u32 c) { return a + p * b + p * p * c; };
    for (u32 a = 0; a < p; ++a)
        for (u32 b = 0; b < p; ++b)
            for (u32 c = 0; c < p; ++c)
                for (u32 x = 0; x < p; ++x)
                    for (u32 y = 0; y < p; ++y)
                        for (u32 z = 0; z < p; ++z)
                            t[enc(a, b, c) * n + enc(x, y, z)] =
                                enc((a + x) % p, (b + y) % p, (c + z + a * y) % p);
    return FiniteGroup::make(p == 5 ? "<125,3>" : "He" + std::to_string(p), n, std::move(t), 0,
                             {enc(1, 0, 0), enc(0, 1, 0)});
}

// Modular group of order p^3: <a, b | a^(p^2) = b^p = 1, b a b^-1 = a^(1+p)>.
// For p = 5 this is <125,4>.
inline FiniteGroup modular_p3(u32 p) {
    u32 pp = p * p, n = pp * p;
    std::vector<u32> t(static_cast<size_t>(n) * n);
    std::vector<u32> up(p);  // (1+p)^j mod p^2
    up[0] = 1;
    for (u32 j = 1; j < p; ++j) up[j] = up[j - 1] * (1 + p) % pp;
    for (u32 i = 0; i < pp; ++i)
        for (u32 j = 0; j < p; ++j)
            for (u32 k = 0; k < pp; ++k)
                for (u32 l = 0; l < p; ++l)
                    t[(i + pp * j) * n + (k + pp * l)] = (i + k * up[j]) % pp + pp * ((j + l) % p);
    return FiniteGroup::make(p == 5 ? "<125,4>" : "M" + std::to_string(n), n, std::move(t), 0, {1, pp});
}

// ---- automorphisms ---------------------------------------------------------

// Backtracking over generator images; candidates must match generator orders.
// Results sorted by image tuple (enumeration order is ascending).
inline std::vector<std::vector<u32>> automorphisms(const FiniteGroup& G) {
    if (G.n > 512) throw std::invalid_argument("automorphisms: order <= 512 required");
    if (G.generators.empty() || G.generators.size() > 4)
        throw std::invalid_argument("automorphisms: 1..4 generators required");
    const u32 n = G.n;
    const auto& gens = G.generators;
    const u32 k = static_cast<u32>(gens.size());

    // BFS expression of every element as parent * generator.
    std::vector<int> parent(n, -1), via(n, -1);
    std::vector<u32> bfs = {G.identity};
    {
        std::vector<char> seen(n, 0);
        seen[G.identity] = 1;
        for (size_t h = 0; h < bfs.size(); ++h)
            for (u32 gi = 0; gi < k; ++gi) {
                u32 x = G.mul(bfs[h], gens[gi]);
                if (!seen[x]) {
                    seen[x] = 1;
                    parent[x] = static_cast<int>(bfs[h]);
                    via[x] = static_cast<int>(gi);
                    bfs.push_back(x);
                }
            }
    }

    std::vector<u32> ord(n);
    for (u32 a = 0; a < n; ++a) ord[a] = G.order_of(a);
    std::vector<std::vector<u32>> candidates(k);
    for (u32 gi = 0; gi < k; ++gi)
        for (u32 a = 0; a < n; ++a)
            if (ord[a] == ord[gens[gi]]) candidates[gi].push_back(a);

    std::vector<std::vector<u32>> result;
    std::vector<u32> img(k);
    std::vector<u32> phi(n);
    std::vector<char> hit(n);
    auto try_tuple = [&]() {
        for (u32 x : bfs)
            phi[x] = (parent[x] < 0) ? G.identity
                                     : G.mul(phi[static_cast<u32>(parent[x])], img[static_cast<u32>(via[x])]);
        for (u32 x = 0; x < n; ++x)
            for (u32 gi = 0; gi < k; ++gi)
                if (phi[G.mul(x, gens[gi])] != G.mul(phi[x], img[gi])) return;
        std::fill(hit.begin(), hit.end(), 0);
        for (u32 x = 0; x < n; ++x) {
            if (hit[phi[x]]) return;
            hit[phi[x]] = 1;
        }
        result.push_back(phi);
    };
    auto rec = [&](auto&& self, u32 pos) -> void {
        if (pos == k) { try_tuple(); return; }
        for (u32 c : candidates[pos]) { img[pos] = c; self(self, pos + 1); }
    };
    rec(rec, 0);
    return result;
}

inline std::vector<u32> derived_subgroup(const FiniteGroup& G) {
    std::vector<char> in(G.n, 0);
    std::vector<u32> q;
    auto push = [&](u32 x) { if (!in[x]) { in[x] = 1; q.push_back(x); } };
    push(G.identity);
    for (u32 a = 0; a < G.n; ++a) {
        u32 ia = G.inv(a);
        for (u32 b = 0; b < G.n; ++b)
            push(G.mul(G.mul(ia, G.inv(b)), G.mul(a, b)));
    }
    for (size_t h = 0; h < q.size(); ++h)
        for (size_t j = 0; j < q.size(); ++j) push(G.mul(q[h], q[j]));
    std::sort(q.begin(), q.end());
    return q;
}

// ---- sigma census ----------------------------------------------------------

struct SigmaCensus {
    u64 c = 0;  // |Aut(G)|
    u64 o = 0;  // automorphisms of order exactly d
    u64 w = 0;  // of those, trace of every designated generator in G'
    u64 s = 0;  // of those, trace of every designated generator trivial
};

inline u64 permutation_order(const std::vector<u32>& perm) {
    u32 n = static_cast<u32>(perm.size());
    std::vector<char> seen(n, 0);
    u64 ord = 1;
    for (u32 i = 0; i < n; ++i) {
        if (seen[i]) continue;
        u64 len = 0;
        for (u32 j = i; !seen[j]; j = perm[j]) { seen[j] = 1; ++len; }
        ord = std::lcm(ord, len);
    }
    return ord;
}

inline SigmaCensus sigma_census(const FiniteGroup& G, u32 d = 3) {
    auto auts = automorphisms(G);
    std::vector<char> in_derived(G.n, 0);
    for (u32 x : derived_subgroup(G)) in_derived[x] = 1;
    SigmaCensus sc;
    sc.c = auts.size();
    for (const auto& sg : auts) {
        if (permutation_order(sg) != d) continue;
        ++sc.o;
        bool weak = true, strong = true;
        for (u32 x : G.generators) {
            u32 tr = x, y = x;
            for (u32 j = 1; j < d; ++j) { y = sg[y]; tr = G.mul(tr, y); }
            if (!in_derived[tr]) weak = false;
            if (tr != G.identity) strong = false;
        }
        if (weak) ++sc.w;
        if (strong) ++sc.s;
    }
    return sc;
}

// ---- elementary abelian census via GL(rank, p) -----------------------------

namespace detail {

inline u64 ipow(u64 b, u32 e) {
    u64 r = 1;
    while (e--) r *= b;
    return r;
}

inline u64 gl_order(u32 r, u64 q) {
    u64 qr = ipow(q, r), res = 1;
    for (u32 i = 0; i < r; ++i) res *= qr - ipow(q, i);
    return res;
}

}  // namespace detail

// Census over GL(rank, p) for d = 3 and p != 3: c = |GL|, o = order-3 count,
// w = s = #{M : I + M + M^2 = 0}.  Brute force over all matrices when that is
// feasible; class-size formulas otherwise.
inline SigmaCensus elementary_sigma(u32 p, u32 rank, u32 d = 3) {
    if (d != 3) throw std::invalid_argument("elementary_sigma: d = 3 only");
    if (p == 3 || !is_prime(p)) throw std::invalid_argument("elementary_sigma: p prime, p != 3");
    if (rank < 1 || rank > 4 || detail::ipow(p, rank) > 10000)
        throw std::invalid_argument("elementary_sigma: rank 1..4, p^rank <= 10^4");
    SigmaCensus sc;
    u32 rr = rank * rank;
    u64 total = detail::ipow(p, rr);
    if (total <= (1ull << 26)) {
        std::vector<u32> m(rr), sq(rr), cu(rr);
        for (u64 code = 0; code < total; ++code) {
            u64 x = code;
            for (u32 i = 0; i < rr; ++i) { m[i] = x % p; x /= p; }
            // rank via Gaussian elimination mod p
            std::vector<u32> g = m;
            u32 rk = 0;
            for (u32 col = 0; col < rank && rk < rank; ++col) {
                u32 piv = rank;
                for (u32 row = rk; row < rank; ++row)
                    if (g[row * rank + col]) { piv = row; break; }
                if (piv == rank) continue;
                for (u32 j = 0; j < rank; ++j) std::swap(g[rk * rank + j], g[piv * rank + j]);
                u32 lead = g[rk * rank + col], li = 1;
                while (lead * li % p != 1) ++li;
                for (u32 row = rk + 1; row < rank; ++row) {
                    u32 f = g[row * rank + col] * li % p;
                    for (u32 j = 0; j < rank; ++j)
                        g[row * rank + j] = (g[row * rank + j] + (p - f) * g[rk * rank + j]) % p;
                }
                ++rk;
            }
            if (rk < rank) continue;
            ++sc.c;
            auto matmul = [&](const std::vector<u32>& a, const std::vector<u32>& b, std::vector<u32>& out) {
                for (u32 i = 0; i < rank; ++i)
                    for (u32 j = 0; j < rank; ++j) {
                        u32 acc = 0;
                        for (u32 l = 0; l < rank; ++l) acc += a[i * rank + l] * b[l * rank + j];
                        out[i * rank + j] = acc % p;
                    }
            };
            matmul(m, m, sq);
            matmul(sq, m, cu);
            bool is_id = true, cube_id = true, quad = true;
            for (u32 i = 0; i < rank && (is_id || cube_id || quad); ++i)
                for (u32 j = 0; j < rank; ++j) {
                    u32 id = (i == j) ? 1u : 0u;
                    if (m[i * rank + j] != id) is_id = false;
                    if (cu[i * rank + j] != id) cube_id = false;
                    if ((id + m[i * rank + j] + sq[i * rank + j]) % p != 0)
                        quad = false;  // I + M + M^2 == 0 entrywise
                }
            if (cube_id && !is_id) ++sc.o;
            if (quad) { ++sc.w; ++sc.s; }
        }
        return sc;
    }
    // Counting by semisimple class sizes: M^3 = I splits by eigenvalue
    // multiplicities; x^2+x+1 splits over F_p iff p == 1 (mod 3).
    using detail::gl_order;
    u64 c = gl_order(rank, p);
    sc.c = c;
    u64 w = 0, cnt3 = 0;
    if (p % 3 == 1) {
        for (u32 m1 = 0; m1 <= rank; ++m1) {
            u32 m2 = rank - m1;
            w += c / (gl_order(m1, p) * gl_order(m2, p));
        }
        for (u32 m0 = 0; m0 <= rank; ++m0)
            for (u32 m1 = 0; m0 + m1 <= rank; ++m1) {
                u32 m2 = rank - m0 - m1;
                cnt3 += c / (gl_order(m0, p) * gl_order(m1, p) * gl_order(m2, p));
            }
    } else {
        if (rank % 2 == 0) w = c / gl_order(rank / 2, static_cast<u64>(p) * p);
        for (u32 m0 = 0; m0 <= rank; ++m0) {
            if ((rank - m0) % 2) continue;
            u32 k2 = (rank - m0) / 2;
            cnt3 += c / (gl_order(m0, p) * gl_order(k2, static_cast<u64>(p) * p));
        }
    }
    sc.o = cnt3 - 1;
    sc.w = sc.s = w;
    return sc;
}

// ---- Frattini quotient test ------------------------------------------------

// True iff the image of Aut(G) in Aut(G / Phi(G)) has order divisible by
// critical_order, i.e. contains an element of that (prime) order.
inline bool frattini_admits(const FiniteGroup& G, u32 critical_order = 3) {
    Factorization f = factorize(G.n);
    if (f.factors.size() != 1) throw std::invalid_argument("frattini_admits: p-group required");
    u32 p = static_cast<u32>(f.factors[0].first);

    // Phi(G) = G' G^p.
    std::vector<char> in_phi(G.n, 0);
    std::vector<u32> phi_elems;
    auto push = [&](u32 x) { if (!in_phi[x]) { in_phi[x] = 1; phi_elems.push_back(x); } };
    for (u32 x : derived_subgroup(G)) push(x);
    for (u32 a = 0; a < G.n; ++a) {
        u32 y = G.identity;
        for (u32 i = 0; i < p; ++i) y = G.mul(y, a);
        push(y);
    }
    for (size_t h = 0; h < phi_elems.size(); ++h)
        for (size_t j = 0; j < phi_elems.size(); ++j) push(G.mul(phi_elems[h], phi_elems[j]));

    // Coset representative = least element of x Phi.
    std::vector<u32> rep(G.n);
    for (u32 x = 0; x < G.n; ++x) {
        u32 r = x;
        for (u32 h : phi_elems) r = std::min(r, G.mul(x, h));
        rep[x] = r;
    }

    // Greedy basis of the quotient; coordinates by spanning enumeration.
    std::vector<u32> basis;
    std::vector<u32> span = {rep[G.identity]};
    std::vector<std::vector<u32>> coords_of(G.n);  // indexed by representative
    coords_of[rep[G.identity]] = {};
    for (u32 x = 0; x < G.n; ++x) {
        u32 r = rep[x];
        if (std::find(span.begin(), span.end(), r) != span.end()) continue;
        basis.push_back(r);
        std::vector<u32> nspan = span;
        for (u32 s : span) {
            u32 acc = s;
            std::vector<u32> base_coords = coords_of[s];
            for (u32 e = 1; e < p; ++e) {
                acc = rep[G.mul(acc, r)];
                auto cc = base_coords;
                cc.resize(basis.size(), 0);
                cc[basis.size() - 1] = e;
                coords_of[acc] = cc;
                nspan.push_back(acc);
            }
        }
        for (u32 s : span) coords_of[s].resize(basis.size(), 0);
        span = std::move(nspan);
    }
    for (u32 s : span) coords_of[s].resize(basis.size(), 0);

    u32 rho = static_cast<u32>(basis.size());
    std::set<std::vector<u32>> images;
    for (const auto& sg : automorphisms(G)) {
        std::vector<u32> mat(rho * rho);
        for (u32 i = 0; i < rho; ++i) {
            const auto& cc = coords_of[rep[sg[basis[i]]]];
            for (u32 j = 0; j < rho; ++j) mat[j * rho + i] = cc[j];
        }
        images.insert(mat);
    }
    return images.size() % critical_order == 0;
}

}  // namespace ccf
