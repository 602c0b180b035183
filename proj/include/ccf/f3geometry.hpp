#pragma once

// The projective geometry of F_3^3: 13 lines, 13 planes, 13 bundles, and the
// linear orderings of the subgroups of index p in (p,p) and (p,p,p).

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccf/arith.hpp"

namespace ccf {

struct Line {
    u32 index;              // 1..13
    std::string name;       // multiplicative generator, e.g. "xy^2"
    std::array<u32, 3> gen; // exponent vector of the generator
};

struct Plane {
    u32 index;                   // 1..13
    std::array<std::string, 2> gens;
    std::array<u32, 4> lines;    // indices of the four contained lines, ascending
};

struct Bundle {
    u32 index;                 // 1..13
    std::array<u32, 4> planes; // indices of the four planes through line
};

inline const std::vector<Line>& lines() {
    static const std::vector<Line> L = {
        {1, "x", {1, 0, 0}},    {2, "y", {0, 1, 0}},     {3, "z", {0, 0, 1}},
        {4, "xy", {1, 1, 0}},   {5, "xy^2", {1, 2, 0}},  {6, "yz", {0, 1, 1}},
        {7, "yz^2", {0, 1, 2}}, {8, "zx", {1, 0, 1}},    {9, "zx^2", {2, 0, 1}},
        {10, "xyz", {1, 1, 1}}, {11, "xyz^2", {1, 1, 2}},{12, "xy^2z", {1, 2, 1}},
        {13, "x^2yz", {2, 1, 1}},
    };
    return L;
}

inline const std::vector<Plane>& planes() {
    static const std::vector<Plane> P = {
        {1, {"y", "z"}, {2, 3, 6, 7}},        {2, {"z", "x"}, {1, 3, 8, 9}},
        {3, {"x", "y"}, {1, 2, 4, 5}},        {4, {"x", "yz"}, {1, 6, 10, 13}},
        {5, {"xy", "zx"}, {4, 7, 8, 13}},     {6, {"y", "zx"}, {2, 8, 10, 12}},
        {7, {"xy", "yz"}, {4, 6, 9, 12}},     {8, {"z", "xy"}, {3, 4, 10, 11}},
        {9, {"zx", "yz"}, {5, 6, 8, 11}},     {10, {"z", "xy^2"}, {3, 5, 12, 13}},
        {11, {"zx^2", "yz^2"}, {5, 7, 9, 10}},{12, {"y", "zx^2"}, {2, 9, 11, 13}},
        {13, {"x", "yz^2"}, {1, 7, 11, 12}},
    };
    return P;
}

inline const std::vector<Bundle>& bundles() {
    static const std::vector<Bundle> B = {
        {1, {2, 3, 4, 13}}, {2, {1, 3, 6, 12}}, {3, {1, 2, 8, 10}},
        {4, {3, 5, 7, 8}},  {5, {3, 9, 10, 11}},{6, {1, 4, 7, 9}},
        {7, {1, 5, 11, 13}},{8, {2, 5, 6, 9}},  {9, {2, 7, 11, 12}},
        {10, {4, 6, 8, 11}},{11, {8, 9, 12, 13}},{12, {6, 7, 10, 13}},
        {13, {4, 5, 10, 12}},
    };
    return B;
}

// Subgroups of index p in (p,p) = <H, K>: slot 1 is <H>, slot 2 is <K>,
// slot e+2 is <H + eK>.
inline std::vector<std::string> subgroup_order_pp(u32 p) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("subgroup_order_pp: p prime");
    std::vector<std::string> out = {"H", "K"};
    for (u32 e = 1; e < p; ++e)
        out.push_back(e == 1 ? "H+K" : "H+" + std::to_string(e) + "K");
    return out;
}

// Subgroups of index p in (p,p,p) = <u, v, w>, p^2 + p + 1 slots:
//   u -> 1, v -> 2, w -> 3, u+ev -> 3+e, v+ew -> 2+p+e, w+eu -> 1+2p+e,
//   u+ev+fw -> 3p + (e-1)(p-1) + f.
inline std::vector<std::string> subgroup_order_ppp(u32 p) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("subgroup_order_ppp: p prime");
    auto coef = [](u32 e, const char* s) {
        return e == 1 ? std::string(s) : std::to_string(e) + s;
    };
    std::vector<std::string> out(p * p + p + 1);
    out[0] = "u";
    out[1] = "v";
    out[2] = "w";
    for (u32 e = 1; e < p; ++e) {
        out[3 + e - 1] = "u+" + coef(e, "v");
        out[2 + p + e - 1] = "v+" + coef(e, "w");
        out[1 + 2 * p + e - 1] = "w+" + coef(e, "u");
        for (u32 f = 1; f < p; ++f)
            out[3 * p + (e - 1) * (p - 1) + f - 1] = "u+" + coef(e, "v") + "+" + coef(f, "w");
    }
    return out;
}

}  // namespace ccf
