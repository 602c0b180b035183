#pragma once

// Admissible conductors for cyclic fields of odd prime degree ell:
// c = ell^e * q_1 ... q_tau with e in {0,2} and q_i == 1 (mod ell), distinct.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ccf/arith.hpp"

namespace ccf {

struct Conductor {
    u64 ell = 3;
    u64 c = 1;
    u32 e = 0;                       // exponent of ell in c, 0 or 2
    std::vector<u64> ramified_primes; // ell recorded as ell^2, ascending by value
    u32 t = 0;                       // count of ramified primes
    u32 tau = 0;                     // count of primes == 1 (mod ell)
};

// True iff every prime power q^n || c has (q == 1 mod ell, n = 1) or (q = ell, n = 2).
inline bool admissible_factors(u64 ell, const std::vector<std::pair<u64, u32>>& factors) {
    if (factors.empty()) return false;  // c = 1
    for (auto [q, n] : factors) {
        if (q == ell) {
            if (n != 2) return false;
        } else if (q % ell == 1 && n == 1) {
            if (!is_prime(q)) return false;  // factor lists from factorize are prime already
        } else {
            return false;
        }
    }
    return true;
}

inline bool is_admissible(u64 ell, u64 c) {
    if (c < 2) return false;
    return admissible_factors(ell, factorize(c).factors);
}

inline Conductor decompose(u64 ell, u64 c) {
    Factorization f = factorize(c);
    if (!admissible_factors(ell, f.factors))
        throw std::invalid_argument("decompose: inadmissible conductor");
    Conductor k;
    k.ell = ell;
    k.c = c;
    for (auto [q, n] : f.factors) {
        (void)n;
        if (q == ell) {
            k.e = 2;
            k.ramified_primes.push_back(ell * ell);  // formal q_{tau+1}
        } else {
            ++k.tau;
            k.ramified_primes.push_back(q);
        }
    }
    std::sort(k.ramified_primes.begin(), k.ramified_primes.end());
    k.t = k.tau + (k.e == 2 ? 1 : 0);
    return k;
}

inline u64 multiplicity(u64 ell, u64 c) {
    Conductor k = decompose(ell, c);
    u64 m = 1;
    for (u32 i = 1; i < k.t; ++i) m *= (ell - 1);
    return m;
}

// d_F = c^(ell-1); overflow signaled.
inline u64 discriminant(u64 ell, u64 c) {
    if (!is_admissible(ell, c)) throw std::invalid_argument("discriminant: inadmissible conductor");
    __uint128_t d = 1;
    for (u64 i = 0; i + 1 < ell; ++i) {
        d *= c;
        if (d > static_cast<__uint128_t>(INT64_MAX)) throw std::overflow_error("discriminant: exceeds 63 bits");
    }
    return static_cast<u64>(d);
}

// Hilbert 93 / Herbrand: (# primitive ambiguous ideals, # ambiguous principal ideals).
inline std::pair<u64, u64> ambiguous_counts(u32 t) {
    if (t < 1) throw std::invalid_argument("ambiguous_counts: t >= 1");
    u64 p = 1;
    for (u32 i = 0; i < t; ++i) p *= 3;
    return {p, 3};
}

}  // namespace ccf
