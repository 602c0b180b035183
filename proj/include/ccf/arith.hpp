#pragma once

// Integer and modular arithmetic: primality, factorization, primitive roots,
// ell-th power residue characters.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ccf {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<__uint128_t>(a) * b) % m);
}

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin; the witness set covers all 64-bit inputs.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

struct Factorization {
    u64 value = 1;
    std::vector<std::pair<u64, u32>> factors;  // (prime, exponent), primes strictly increasing

    u64 product() const {
        u64 v = 1;
        for (auto [p, e] : factors)
            for (u32 i = 0; i < e; ++i) v *= p;
        return v;
    }
};

namespace detail {

inline u64 pollard_rho(u64 n) {
    if ((n & 1) == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (mul_mod(x, x, n) + c) % n;
            y = (mul_mod(y, y, n) + c) % n;
            y = (mul_mod(y, y, n) + c) % n;
            u64 diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            d = std::gcd(diff, n);
        }
        if (d != 1 && d != n) return d;
    }
}

inline void factor_into(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) { out.push_back(n); return; }
    u64 d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace detail

inline Factorization factorize(u64 n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    Factorization f;
    f.value = n;
    std::vector<u64> primes;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        while (n % p == 0) { primes.push_back(p); n /= p; }
    }
    detail::factor_into(n, primes);
    std::sort(primes.begin(), primes.end());
    for (u64 p : primes) {
        if (!f.factors.empty() && f.factors.back().first == p)
            ++f.factors.back().second;
        else
            f.factors.emplace_back(p, 1);
    }
    return f;
}

// Factors every integer in [lo, hi) via a segmented sieve; fn(value, factors)
// receives (prime, exponent) pairs with primes increasing.
inline void factor_range(u64 lo, u64 hi,
                         const std::function<void(u64, const std::vector<std::pair<u64, u32>>&)>& fn) {
    if (lo < 2) lo = 2;
    if (lo >= hi) return;
    u64 root = 1;
    while ((root + 1) * (root + 1) < hi) ++root;
    std::vector<u64> base;
    {
        std::vector<bool> comp(root + 1, false);
        for (u64 p = 2; p <= root; ++p) {
            if (comp[p]) continue;
            base.push_back(p);
            for (u64 q = p * p; q <= root; q += p) comp[q] = true;
        }
    }
    const u64 seg = 1 << 18;
    std::vector<u64> rest(seg);
    std::vector<std::vector<std::pair<u64, u32>>> facs(seg);
    for (u64 start = lo; start < hi; start += seg) {
        u64 end = std::min(hi, start + seg);
        u64 len = end - start;
        for (u64 i = 0; i < len; ++i) {
            rest[i] = start + i;
            facs[i].clear();
        }
        for (u64 p : base) {
            for (u64 m = ((start + p - 1) / p) * p; m < end; m += p) {
                u64 i = m - start;
                u32 e = 0;
                while (rest[i] % p == 0) { rest[i] /= p; ++e; }
                facs[i].emplace_back(p, e);
            }
        }
        for (u64 i = 0; i < len; ++i) {
            if (rest[i] > 1) facs[i].emplace_back(rest[i], 1);  // cofactor > sqrt is prime
            fn(start + i, facs[i]);
        }
    }
}

// Least generator of (Z/m)^*; m an odd prime or 9.
inline u64 smallest_primitive_root(u64 m) {
    if (m == 9) return 2;
    if (m < 3 || !is_prime(m)) throw std::invalid_argument("smallest_primitive_root: modulus must be an odd prime or 9");
    u64 phi = m - 1;
    Factorization pf = factorize(phi);
    for (u64 g = 2; g < m; ++g) {
        bool ok = true;
        for (auto [q, e] : pf.factors) {
            (void)e;
            if (pow_mod(g, phi / q, m) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw std::logic_error("smallest_primitive_root: no generator found");
}

struct CubicCharacter {
    u64 modulus = 0;
    u64 residue = 0;
    u32 exponent = 0;   // in {0, ..., ell-1}, relative to omega = g^(phi/ell)
    int coarse = 0;     // +1 residue, -1 non-residue, 0 zero
};

// Euler-criterion fast character: a = index of r base g, mod ell.
// Modulus m is a prime == 1 (mod ell) or ell^2.
inline CubicCharacter cubic_exponent(u64 ell, u64 m, u64 r) {
    if (ell < 3 || !is_prime(ell)) throw std::invalid_argument("cubic_exponent: ell must be an odd prime");
    u64 phi;
    if (m == ell * ell) {
        phi = ell * (ell - 1);
    } else if (is_prime(m) && m % ell == 1) {
        phi = m - 1;
    } else {
        throw std::invalid_argument("cubic_exponent: modulus must be a prime == 1 mod ell, or ell^2");
    }
    CubicCharacter ch;
    ch.modulus = m;
    ch.residue = r % m;
    if (ch.residue == 0) { ch.coarse = 0; return ch; }
    u64 g = smallest_primitive_root(m);
    u64 omega = pow_mod(g, phi / ell, m);
    u64 x = pow_mod(ch.residue, phi / ell, m);
    u64 w = 1;
    for (u32 e = 0; e < ell; ++e) {
        if (w == x) {
            ch.exponent = e;
            ch.coarse = (e == 0) ? +1 : -1;
            return ch;
        }
        w = mul_mod(w, omega, m);
    }
    throw std::domain_error("cubic_exponent: residue not coprime to modulus");
}

}  // namespace ccf
