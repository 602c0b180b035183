#pragma once

// Deterministic rules mapping rational invariants (residue graphs, principal
// factors, genus valuations, genus ATIs, capitulation types) to second 3-class
// groups and tower lengths.  Rules are data tables keyed by canonical pattern
// strings; fixtures and rules share one format.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccf/classify.hpp"
#include "ccf/conductor.hpp"

namespace ccf {

// ---- pattern canonicalization ---------------------------------------------

namespace pat {

// "1^2" -> "11", "21" -> "21"; digits sorted descending.
inline std::string canon_entry(const std::string& tok) {
    std::string digits;
    for (size_t i = 0; i < tok.size(); ++i) {
        char ch = tok[i];
        if (isdigit(static_cast<unsigned char>(ch))) {
            digits.push_back(ch);
        } else if (ch == '^') {
            size_t j = i + 1;
            u32 k = 0;
            while (j < tok.size() && isdigit(static_cast<unsigned char>(tok[j]))) k = k * 10 + (tok[j++] - '0');
            if (digits.empty() || k == 0) throw std::invalid_argument("canon_entry: bad token " + tok);
            digits.append(k - 1, digits.back());
            i = j - 1;
        }
    }
    std::sort(digits.rbegin(), digits.rend());
    return digits;
}

// Split "a,b,(c)^2,d" at top level (outside parentheses/brackets/group names).
inline std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '(' || ch == '[' || ch == '<') ++depth;
        if (ch == ')' || ch == ']' || ch == '>') --depth;
        if (ch == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

// Entry list "1,(21)^3,2^2" -> sorted multiset of canonical entries.
inline std::vector<std::string> parse_entries(const std::string& s) {
    std::vector<std::string> out;
    for (std::string tok : split_top(s, ',')) {
        tok = strip(tok);
        if (tok.empty()) continue;
        u32 rep = 1;
        if (tok.front() == '(') {
            size_t close = tok.rfind(')');
            std::string inner = tok.substr(1, close - 1);
            if (close + 1 < tok.size() && tok[close + 1] == '^') rep = std::stoul(tok.substr(close + 2));
            tok = inner;
        }
        std::string e = canon_entry(tok);
        for (u32 r = 0; r < rep; ++r) out.push_back(e);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
}

// tau pattern "[21,(1^2)^3]" or with genus prefix "[111;1111,...]" ->
// canonical "prefix;sorted entries".
inline std::string canon_tau(const std::string& s) {
    std::string body = strip(s);
    if (!body.empty() && body.front() == '[') body = body.substr(1, body.rfind(']') - 1);
    auto parts = split_top(body, ';');
    if (parts.size() == 2) return canon_entry(parts[0]) + ";" + join(parse_entries(parts[1]));
    return join(parse_entries(body));
}

// (3,3) capitulation type from a digit pattern or a type label; keyed by the
// digit multiset, which separates all types used here.
inline std::string kappa33_type(const std::string& s) {
    std::string t = strip(s);
    if (t.find('.') != std::string::npos) return t;  // already a label like "a.3"
    std::string digits;
    for (char ch : t)
        if (isdigit(static_cast<unsigned char>(ch))) digits.push_back(ch);
    std::sort(digits.begin(), digits.end());
    static const std::map<std::string, std::string> types = {
        {"0000", "a.1"}, {"0001", "a.2"}, {"0002", "a.3"}, {"1111", "A.1"},
        {"0034", "b.10"}, {"0123", "c.21"}, {"0344", "d.19"}, {"1234", "G.16"},
    };
    auto it = types.find(digits);
    if (it == types.end()) return "?" + digits;
    return it->second;
}

// (3,3,3) capitulation pattern -> counts of O / P / L placements.
// Handles letter exponents "O^9" and group repeats "(P_i^3)_4".
inline std::array<u32, 3> kappa333_counts(const std::string& s) {
    std::array<u32, 3> cnt{0, 0, 0};
    std::vector<std::array<u32, 3>> saved;
    std::array<u32, 3> cur{0, 0, 0};
    auto flushed = [&](char letter, u32 k) {
        if (letter == 'O') cur[0] += k;
        if (letter == 'P') cur[1] += k;
        if (letter == 'L') cur[2] += k;
    };
    for (size_t i = 0; i < s.size(); ++i) {
        char ch = s[i];
        if (ch == 'O' || ch == 'P' || ch == 'L') {
            u32 k = 1;
            size_t j = i + 1;
            if (j < s.size() && s[j] == '_') {  // subscript, ignored
                ++j;
                while (j < s.size() && (isalnum(static_cast<unsigned char>(s[j])))) ++j;
            }
            if (j < s.size() && s[j] == '^') {
                ++j;
                k = 0;
                while (j < s.size() && isdigit(static_cast<unsigned char>(s[j]))) k = k * 10 + (s[j++] - '0');
            }
            flushed(ch, k);
            i = j - 1;
        } else if (ch == '(' && i > 0) {  // inner group
            saved.push_back(cur);
            cur = {0, 0, 0};
        } else if (ch == ')' && !saved.empty()) {
            u32 k = 1;
            size_t j = i + 1;
            if (j < s.size() && (s[j] == '_' || s[j] == '^')) {
                ++j;
                k = 0;
                while (j < s.size() && isdigit(static_cast<unsigned char>(s[j]))) k = k * 10 + (s[j++] - '0');
            }
            auto outer = saved.back();
            saved.pop_back();
            for (int c = 0; c < 3; ++c) cur[c] = outer[c] + cur[c] * k;
            i = j - 1;
        }
    }
    cnt = cur;
    return cnt;
}

// Second-order tau "(11;[22;(211)^4],...)" -> canonical string: prefix plus
// the sorted multiset of canonicalized components "[first;entries]".
inline std::string canon_tau2(const std::string& s) {
    std::string body = strip(s);
    if (!body.empty() && body.front() == '(') body = body.substr(1, body.rfind(')') - 1);
    auto parts = split_top(body, ';');
    if (parts.size() != 2) throw std::invalid_argument("canon_tau2: expected (prefix;components)");
    std::vector<std::string> comps;
    for (std::string c : split_top(parts[1], ',')) {
        c = strip(c);
        if (c.empty()) continue;
        if (c.front() != '[') throw std::invalid_argument("canon_tau2: component " + c);
        std::string inner = c.substr(1, c.rfind(']') - 1);
        auto halves = split_top(inner, ';');
        if (halves.size() != 2) throw std::invalid_argument("canon_tau2: component " + c);
        comps.push_back(canon_entry(halves[0]) + ":" + join(parse_entries(halves[1])));
    }
    std::sort(comps.begin(), comps.end());
    std::string out = canon_entry(parts[0]) + ";";
    for (size_t i = 0; i < comps.size(); ++i) out += (i ? "|" : "") + comps[i];
    return out;
}

}  // namespace pat

// ---- group identifiers -----------------------------------------------------

struct GroupId {
    u64 order = 0;
    std::vector<u32> ids;  // admissible identifiers; singleton for a plain group
    u32 wild = 0;          // 1 for "*", 2 for "**" (unknown group)
    std::string text;      // source form, kept for display

    std::string display() const {
        if (!text.empty()) return text;
        if (wild) return wild == 1 ? "*" : "**";
        std::string s = "<" + std::to_string(order) + ",";
        for (size_t i = 0; i < ids.size(); ++i) s += (i ? "|" : "") + std::to_string(ids[i]);
        return s + ">";
    }
    // printed value p matches an expected family q
    static bool matches(const GroupId& p, const GroupId& q) {
        if (p.wild || q.wild) return true;
        if (p.order != q.order) return false;
        for (u32 id : p.ids)
            if (std::find(q.ids.begin(), q.ids.end(), id) == q.ids.end()) return false;
        return true;
    }
};

// "<81,7>", "<3^6,37..39>", "<2187,307|308>", "*", "**"
inline GroupId parse_group(const std::string& s0) {
    std::string s = pat::strip(s0);
    GroupId g;
    g.text = s;
    if (s == "*") { g.wild = 1; return g; }
    if (s == "**") { g.wild = 2; return g; }
    if (s.size() < 2 || s.front() != '<' || s.back() != '>')
        throw std::invalid_argument("parse_group: " + s0);
    std::string body = s.substr(1, s.size() - 2);
    size_t comma = body.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("parse_group: " + s0);
    std::string ord = body.substr(0, comma), idpart = body.substr(comma + 1);
    size_t caret = ord.find('^');
    if (caret != std::string::npos) {
        u64 base = std::stoull(ord.substr(0, caret));
        u32 exp = std::stoul(ord.substr(caret + 1));
        g.order = 1;
        while (exp--) g.order *= base;
    } else {
        g.order = std::stoull(ord);
    }
    size_t dots = idpart.find("..");
    if (dots != std::string::npos) {
        u32 lo = std::stoul(idpart.substr(0, dots)), hi = std::stoul(idpart.substr(dots + 2));
        for (u32 i = lo; i <= hi; ++i) g.ids.push_back(i);
    } else {
        for (const std::string& tok : pat::split_top(idpart, '|')) g.ids.push_back(std::stoul(pat::strip(tok)));
    }
    return g;
}

// A multiplet's group list: "<81,14>;<81,8>,<81,10>^2".  The ';' separates the
// rank-3 members from the rest.  memberwise marks a candidate set instead of a
// positional list.
struct GroupPattern {
    std::vector<GroupId> groups;
    int separator = -1;  // members before ';'
    bool memberwise = false;
    std::string text;
};

inline GroupPattern parse_groups(const std::string& s0) {
    GroupPattern gp;
    gp.text = pat::strip(s0);
    auto segs = pat::split_top(gp.text, ';');
    if (segs.size() > 2) throw std::invalid_argument("parse_groups: " + s0);
    for (size_t si = 0; si < segs.size(); ++si) {
        if (si == 1) gp.separator = static_cast<int>(gp.groups.size());
        for (std::string tok : pat::split_top(segs[si], ',')) {
            tok = pat::strip(tok);
            if (tok.empty()) continue;
            u32 rep = 1;
            size_t caret = tok.rfind('^');
            if (caret != std::string::npos && caret > 0 && (tok[caret - 1] == '>' || tok[caret - 1] == '*')) {
                rep = std::stoul(tok.substr(caret + 1));
                tok = tok.substr(0, caret);
            }
            GroupId g = parse_group(tok);
            for (u32 r = 0; r < rep; ++r) gp.groups.push_back(g);
        }
    }
    if (gp.separator < 0 && segs.size() == 2) gp.separator = 0;
    return gp;
}

// Printed row vs expected pattern.  Candidate sets match each printed member
// against any expected entry; positional lists match segment by segment, order
// inside a segment free.
inline bool groups_match(const GroupPattern& printed, const GroupPattern& expected) {
    if (expected.memberwise) {
        // a candidate-set wildcard stands for an unidentified group, not a
        // catch-all: concrete printed members must hit a concrete candidate
        for (const auto& p : printed.groups) {
            if (p.wild) continue;
            bool ok = false;
            for (const auto& q : expected.groups)
                if (!q.wild && GroupId::matches(p, q)) { ok = true; break; }
            if (!ok) return false;
        }
        return true;
    }
    if (printed.groups.size() != expected.groups.size()) return false;
    if (printed.separator >= 0 && expected.separator >= 0 && printed.separator != expected.separator)
        return false;
    int cut = expected.separator >= 0 ? expected.separator
                                      : (printed.separator >= 0 ? printed.separator : 0);
    auto match_segment = [&](size_t lo, size_t hi) {
        std::vector<u32> idx(hi - lo);
        std::iota(idx.begin(), idx.end(), 0);
        // segments have at most 4 members; try all assignments
        std::sort(idx.begin(), idx.end());
        do {
            bool ok = true;
            for (size_t i = lo; i < hi && ok; ++i)
                ok = GroupId::matches(printed.groups[i], expected.groups[lo + idx[i - lo]]);
            if (ok) return true;
        } while (std::next_permutation(idx.begin(), idx.end()));
        return false;
    };
    size_t c = static_cast<size_t>(cut);
    return match_segment(0, c) && match_segment(c, printed.groups.size());
}

// ---- genus ATI -------------------------------------------------------------

// 13 logarithmic abelian type invariants; the first three belong to the sub
// genus fields.
struct GenusATI {
    std::vector<std::string> head;  // 3 entries, canonical
    std::vector<std::string> tail;  // 10 entries, canonical
    std::string text;

    std::string key() const { return pat::join(head) + ";" + pat::join(tail); }
    bool operator==(const GenusATI& o) const { return head == o.head && tail == o.tail; }
};

inline GenusATI parse_ati(const std::string& s0) {
    GenusATI a;
    a.text = pat::strip(s0);
    std::string body = a.text;
    if (!body.empty() && body.front() == '[') body = body.substr(1, body.rfind(']') - 1);
    auto parts = pat::split_top(body, ';');
    if (parts.size() != 2) throw std::invalid_argument("parse_ati: expected [head;tail] in " + s0);
    a.head = pat::parse_entries(parts[0]);
    a.tail = pat::parse_entries(parts[1]);
    if (a.head.size() != 3 || a.tail.size() != 10)
        throw std::invalid_argument("parse_ati: need 3 + 10 entries in " + s0);
    return a;
}

// ---- predictions -----------------------------------------------------------

enum class RuleStatus { Definite, Candidates, Ambiguous, NoRule };

struct TowerPrediction {
    RuleStatus status = RuleStatus::NoRule;
    std::vector<GroupPattern> alternatives;  // any match passes
    std::string kappa;  // capitulation type, display form
    std::string tau;    // transfer-target list, display form
    u32 length = 0;     // 0 when unknown
    bool length_lower_bound = false;
    std::string doublet_class;  // regular / singular / super-singular
    std::string principal_factors;
    std::string note;
};

namespace detail {

inline TowerPrediction definite(const std::string& groups, const std::string& kappa,
                                const std::string& tau, u32 length) {
    TowerPrediction t;
    t.status = RuleStatus::Definite;
    t.alternatives.push_back(parse_groups(groups));
    t.kappa = kappa;
    t.tau = tau;
    t.length = length;
    return t;
}

}  // namespace detail

// ---- doublet rules ---------------------------------------------------------

// B(F) = min{a b^2, a^2 b} for coprime squarefree a, b.
inline u64 principal_factor(u64 a, u64 b) {
    if (a == 0 || b == 0) throw std::invalid_argument("principal_factor: positive integers");
    if (std::gcd(a, b) != 1) throw std::invalid_argument("principal_factor: coprime required");
    if (a == b) return 1;  // only a = b = 1
    return b < a ? a * b * b : a * a * b;
}

// Principal factor criterion: n = number of prime divisors of B(F).
inline TowerPrediction two_prime_rule(u32 n) {
    if (n == 2) {
        TowerPrediction t = detail::definite("<9,2>^2", "a.1 (0000)", "[(1)^4]", 1);
        t.doublet_class = "regular";
        return t;
    }
    if (n == 1) {
        TowerPrediction t = detail::definite("<27,4>^2", "A.1 (1111)", "[1^2,(2)^3]", 2);
        t.doublet_class = "regular";
        return t;
    }
    throw std::invalid_argument("two_prime_rule: n in {1,2}");
}

// Genus field criterion, keyed by v = v_3(h(genus field)).
inline TowerPrediction genus_rule(u32 v, const std::string& class_shape = "") {
    TowerPrediction t;
    if (v == 0) {
        t = detail::definite("<3,1>^2", "(0)", "[(0)^3]", 1);
        t.doublet_class = "regular";
        t.note = "trivial second group, h3 = 3";
        return t;
    }
    if (v == 1) {
        t = detail::definite("<9,2>^2", "a.1 (0000)", "[(1)^4]", 1);
        t.doublet_class = "regular";
        return t;
    }
    if (v == 2) {
        t = detail::definite("<27,4>^2", "A.1 (1111)", "[1^2,(2)^3]", 2);
        t.doublet_class = "regular";
        return t;
    }
    if (v == 3) {
        t = detail::definite("<81,3>^2", "a.1 (000;0)", "[(21)^3;1^3]", 2);
        t.doublet_class = "singular";
        t.note = "Cl3 of type (3,9)";
        return t;
    }
    t.doublet_class = "super-singular";
    t.status = RuleStatus::NoRule;
    // Candidate groups observed per Cl3(F*) shape.
    static const std::map<std::string, std::string> candidates = {
        {"(3,3,9)", "<243,14>,<243,15>,<729,17>,*"},
        {"(3,3,3,3)", "<243,13>,<729,12>"},
        {"(3,9,9)", "<243,14>,*"},
        {"(3,9,27)", "<243,14>,**"},
        {"(3,3,9,9)", "*,**"},
    };
    if (!class_shape.empty()) {
        auto it = candidates.find(class_shape);
        if (it != candidates.end()) {
            t.status = RuleStatus::Candidates;
            GroupPattern gp = parse_groups(it->second);
            gp.memberwise = true;
            t.alternatives.push_back(gp);
            t.note = "candidates for Cl3(F*) = " + class_shape;
        } else {
            t.note = "no candidate table for Cl3(F*) = " + class_shape;
        }
    } else {
        t.note = "super-singular: supply the Cl3(F*) shape for candidates";
    }
    return t;
}

// v = vI - 5 + v3 + v4, checked against the case table of the genus theorem.
inline int two_prime_genus_valuation(bool mutual, int v3, int v4, int vI) {
    if (vI < 0 || vI > 3) throw std::invalid_argument("two_prime_genus_valuation: vI in 0..3");
    int v = vI - 5 + v3 + v4;
    if (!mutual) {
        if (v3 != 1 || v4 != 1 || vI != 3)
            throw std::invalid_argument("two_prime_genus_valuation: not mutual forces v3=v4=1, vI=3");
        return 0;  // v as computed
    }
    if (v3 == 2 && v4 == 2) {
        if (vI == 2) return 1;
        if (vI == 3) return 2;
        throw std::invalid_argument("two_prime_genus_valuation: mutual, v3=v4=2 needs vI in {2,3}");
    }
    if (v3 >= 3 && v4 >= 3) {
        if (v < 3) throw std::invalid_argument("two_prime_genus_valuation: inconsistent singular case");
        return v;
    }
    throw std::invalid_argument("two_prime_genus_valuation: inconsistent case");
}

// ---- capitulation ----------------------------------------------------------

struct Capitulation {
    u32 kernel_order = 3;
    std::string geometry;  // line / plane / space
};

inline Capitulation capitulation_lookup(u32 unit_norm_index) {
    switch (unit_norm_index) {
        case 1: return {3, "line"};
        case 3: return {9, "plane"};
        case 9: return {27, "space"};
    }
    throw std::invalid_argument("capitulation_lookup: index in {1,3,9}");
}

// ---- quartet rules ---------------------------------------------------------

struct RuleContext {
    std::optional<u32> v;            // genus valuation of the partial conductor
    std::optional<GenusATI> ati;     // 3-genus field ATI
    std::optional<std::string> cl;   // Cl3(F*) shape for super-singular doublets
};

inline TowerPrediction quartet_rule(const CategoryGraph& cg, const RuleContext& ctx = {}) {
    TowerPrediction t;
    auto ati_key = [&]() { return ctx.ati ? ctx.ati->key() : std::string(); };
    if (cg.category == Category::III) {
        if (cg.graph >= 1 && cg.graph <= 4) {
            t = detail::definite("<9,2>^4", "a.1 (0000)", "[1,1,1,1]", 1);
            t.note = "genus ATI [(0)^3;(1)^10]";
            return t;
        }
        if (cg.graph == 6 || cg.graph == 7 || cg.graph == 9) {
            u32 v = ctx.v.value_or(1);
            if (v >= 3) {
                t.status = RuleStatus::NoRule;
                t.note = "singular or super-singular partial conductor";
                return t;
            }
            if (cg.graph == 7 && v == 2) {
                t.status = RuleStatus::Ambiguous;
                t.note = "graph 7 with v=2 is outside the theorem";
                return t;
            }
            t = detail::definite("<81,7>^4", "a.3 (2000)", "[111,(11)^3]", 2);
            if (!ctx.v) t.note = "assumes a regular partial conductor";
            t.principal_factors = cg.graph == 7 ? "B = q_i q_k twice, q_i^2 q_k twice"
                                                : "B = q_j for all four fields";
            return t;
        }
        if (cg.graph == 5 || cg.graph == 8) {
            if (ctx.v && *ctx.v >= 3) {
                t.status = RuleStatus::NoRule;
                t.note = "singular or super-singular partial conductor";
                return t;
            }
            if (!ctx.ati) {
                t.status = RuleStatus::NoRule;
                t.note = "genus ATI required";
                return t;
            }
            std::string k = ati_key();
            if (k == parse_ati("[(0)^2,1^2;(11)^8,(111)^2]").key()) {
                t = detail::definite("<81,7>^4", "a.3 (2000)", "[111,(11)^3]", 2);
            } else if (k == parse_ati("[(0)^2,1;(11)^7,(21)^3]").key()) {
                t = detail::definite("<243,28|29|30>^4", "a.1 (0000)", "[21,(11)^3]", 2);
            } else if (k == parse_ati("[(0)^2,1;(11)^7,(21)^2,22]").key()) {
                t = detail::definite("<243,27>,<243,28|29|30>^3", "", "", 2);
                t.alternatives.push_back(parse_groups("<243,25>^2,<243,28|29|30>^2"));
                t.note = "mixed <243,25|27|28> case";
            } else if (k == parse_ati("[(0)^2,1;(11)^7,(22)^3]").key()) {
                t = detail::definite("<243,25>^2,<243,27>^2", "", "", 2);
            } else {
                t.status = RuleStatus::NoRule;
                t.note = "genus ATI outside the graph-5/8 case table";
                return t;
            }
            t.principal_factors = cg.graph == 8
                                      ? "B = q_k"
                                      : "B in {q_i q_j q_k, q_i^2 q_j q_k, q_i q_j^2 q_k, q_i q_j q_k^2}";
            return t;
        }
        t.status = RuleStatus::NoRule;
        return t;
    }
    if (cg.category == Category::II) {
        if (!ctx.ati) {
            t.status = RuleStatus::NoRule;
            t.note = "genus ATI required";
            return t;
        }
        if (ati_key() == parse_ati("[(0)^3;(11)^8,(111)^2]").key()) {
            t = detail::definite("<81,13>^2;<81,7>^2", "(O^9 P^4) ; a.3 (2000)", "", 2);
            t.note = "rank-3 members before the separator";
            return t;
        }
        t.status = RuleStatus::NoRule;
        t.note = "genus ATI outside the category-II theorem";
        return t;
    }
    if (cg.category == Category::I) {
        if (!ctx.ati) {
            t.status = RuleStatus::NoRule;
            t.note = "genus ATI required";
            return t;
        }
        std::string k = ati_key();
        if (k == parse_ati("[(0)^3;(11)^7,(21)^3]").key()) {
            t = detail::definite("<81,14>;<81,8>,<81,10>^2", "(O^9 P^4) ; a.3/a.2", "", 2);
            return t;
        }
        if (k == parse_ati("[(0)^3;(11)^6,(21)^2,22,1^3]").key()) {
            t = detail::definite("<243,46|47>;<243,25>,<243,28|29|30>^2", "", "", 2);
            return t;
        }
        if (k == parse_ati("[(0)^3;(21)^9,21^2]").key()) {
            t = detail::definite("<243,42>;<243,8>^3", "; c.21 (0231)", "", 2);
            return t;
        }
        t.status = RuleStatus::NoRule;
        t.note = "genus ATI outside the category-I theorem";
        return t;
    }
    t.status = RuleStatus::NoRule;
    t.note = "no deterministic rule for category " + std::string(category_name(cg.category));
    return t;
}

// ---- stage rules for (3,3) and (3,3,3) fields ------------------------------

struct StageResult {
    RuleStatus status = RuleStatus::NoRule;
    std::vector<GroupId> groups;  // one entry unless a candidate list
    u32 length = 0;
    std::string note;
};

inline const std::string& tau2_c21() {
    static const std::string s = pat::canon_tau2(
        "(11;[22;(211)^4],[21;211,(31)^3],[21;211,(21)^3],[21;211,(21)^3])");
    return s;
}
inline const std::string& tau2_d19() {
    static const std::string s = pat::canon_tau2(
        "(11;[22;(211)^4],[21;211,(21)^3],[111;(211)^4,(11)^9],[111;211,(111)^3,(11)^9])");
    return s;
}

inline StageResult stage_rule_33(const std::string& tau, const std::string& kappa,
                                 const std::string& tau2 = "") {
    StageResult r;
    std::string type = pat::kappa33_type(kappa);
    std::string tk = tau.empty() ? "" : pat::canon_tau(tau);
    auto is_tau = [&](const char* pattern) { return tk.empty() || tk == pat::canon_tau(pattern); };
    auto out = [&](const char* g, u32 len, const char* note = "") {
        r.status = RuleStatus::Definite;
        r.groups = {parse_group(g)};
        r.length = len;
        r.note = note;
        return r;
    };
    // Second-order patterns decide the three-stage types.
    if (!tau2.empty() && tau2.front() == '(') {
        std::string t2 = pat::canon_tau2(tau2);
        if (type == "c.21" && t2 == tau2_c21() && is_tau("[22,21,21,21]"))
            return out("<2187,307|308>", 3, "<2187,308> with double probability");
        if (type == "d.19" && t2 == tau2_d19() && is_tau("[22,21,111,111]"))
            return out("<2187,265>", 3);
        r.note = "second-order pattern not covered";
        return r;
    }
    if (type == "a.1" && is_tau("[(1)^4]") && tau2.empty()) return out("<9,2>", 1);
    if (type == "A.1" && is_tau("[1^2,(2)^3]")) return out("<27,4>", 2);
    if (type == "a.3" && is_tau("[1^3,(1^2)^3]") && tk == pat::canon_tau("[1^3,(1^2)^3]"))
        return out("<81,7>", 2);
    if (type == "a.3" && tk == pat::canon_tau("[21,(1^2)^3]")) return out("<81,8>", 2);
    if (type == "a.2" && tk == pat::canon_tau("[21,(1^2)^3]")) return out("<81,10>", 2);
    if (type == "a.3" && tk == pat::canon_tau("[2^2,(1^2)^3]")) return out("<243,25>", 2);
    if (type == "a.2" && tk == pat::canon_tau("[2^2,(1^2)^3]")) return out("<243,27>", 2);
    if (type == "a.1" && tk == pat::canon_tau("[21,(1^2)^3]")) {
        if (tau2.empty()) {
            r.status = RuleStatus::Ambiguous;
            r.note = "tau2 required for the a.1 [21,(11)^3] case";
            return r;
        }
        std::string t2 = pat::canon_entry(pat::canon_tau(tau2));
        if (t2 == "11") return out("<81,9>", 2);
        if (t2 == "21") return out("<243,28|29|30>", 2);
        r.note = "tau2 not covered";
        return r;
    }
    if (type == "b.10" && tk == pat::canon_tau("[(21)^2,(1^3)^2]")) {
        if (tau2.empty()) {
            r.status = RuleStatus::Ambiguous;
            r.note = "tau2 required for the b.10 case";
            return r;
        }
        std::string t2 = pat::canon_entry(pat::canon_tau(tau2));
        if (t2 == "1111") return out("<729,34..36>", 2);
        if (t2 == "211") return out("<729,37..39>", 2);
        r.note = "tau2 not covered";
        return r;
    }
    r.note = "pattern not covered";
    return r;
}

inline StageResult stage_rule_333(const std::string& tau, const std::string& kappa) {
    StageResult r;
    auto cnt = pat::kappa333_counts(kappa);
    std::string tk = pat::canon_tau(tau);
    auto out = [&](const char* g, u32 len) {
        r.status = RuleStatus::Definite;
        r.groups = {parse_group(g)};
        r.length = len;
        return r;
    };
    if (cnt == std::array<u32, 3>{13, 0, 0} && tk == pat::canon_tau("[(1^2)^13]")) return out("<27,5>", 1);
    if (cnt == std::array<u32, 3>{9, 4, 0}) {
        if (tk == pat::canon_tau("[(1^2)^9,(21)^3,1^3]")) return out("<81,13>", 2);
        if (tk == pat::canon_tau("[(1^2)^9,(21)^4]")) return out("<81,14>", 2);
    }
    if (cnt == std::array<u32, 3>{0, 12, 1}) {
        if (tk == pat::canon_tau("[1^3,(21)^11,2^2]")) return out("<243,46>", 2);
        if (tk == pat::canon_tau("[(1^3)^4,(21)^8,2^2]")) return out("<243,47>", 2);
    }
    if (cnt == std::array<u32, 3>{3, 10, 0} && tk == pat::canon_tau("[111;1111,(111)^3,(21)^9]")) {
        r.status = RuleStatus::Definite;
        for (u32 id = 261262; id <= 261270; ++id) {
            GroupId g;
            g.order = 6561;
            g.ids = {id};
            r.groups.push_back(g);
        }
        r.length = 3;
        r.note = "one of nine candidates";
        return r;
    }
    r.note = "pattern not covered";
    return r;
}

}  // namespace ccf
