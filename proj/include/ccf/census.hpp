#pragma once

// Censuses over conductor ranges (multiplets by t, quartet categories, doublet
// graphs) and verification of fixture tables against the classifier and the
// rule engine.

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ccf/classify.hpp"
#include "ccf/conductor.hpp"
#include "ccf/tower_rules.hpp"

namespace ccf {

using ordered_json = nlohmann::ordered_json;

// ---- multiplet census ------------------------------------------------------

struct CensusCell {
    u64 conductors = 0;
    u64 fields = 0;
    u64 min_conductor = 0;

    void add(u64 c, u64 m) {
        ++conductors;
        fields += m;
        if (min_conductor == 0 || c < min_conductor) min_conductor = c;
    }
    void merge(const CensusCell& o) {
        conductors += o.conductors;
        fields += o.fields;
        if (o.min_conductor && (min_conductor == 0 || o.min_conductor < min_conductor))
            min_conductor = o.min_conductor;
    }
};

struct MultipletCensus {
    u64 ell = 3;
    u64 bound = 0;
    std::map<u32, CensusCell> by_t;  // t -> cell
    CensusCell total;
};

namespace detail {

inline bool admissible_t(u64 ell, const std::vector<std::pair<u64, u32>>& facs, u32& t) {
    t = 0;
    for (auto [q, e] : facs) {
        if (q == ell) {
            if (e != 2) return false;
        } else if (q % ell == 1 && e == 1) {
            // prime by construction of factor_range
        } else {
            return false;
        }
        ++t;
    }
    return t > 0;
}

template <typename Fn>
inline void parallel_ranges(u64 lo, u64 hi, u32 jobs, const Fn& fn) {
    if (jobs <= 1 || hi - lo < 4096) {
        fn(0, lo, hi);
        return;
    }
    std::vector<std::thread> threads;
    u64 span = (hi - lo + jobs - 1) / jobs;
    for (u32 j = 0; j < jobs; ++j) {
        u64 a = lo + j * span, b = std::min(hi, a + span);
        if (a >= b) break;
        threads.emplace_back([&fn, j, a, b] { fn(j, a, b); });
    }
    for (auto& th : threads) th.join();
}

}  // namespace detail

inline MultipletCensus multiplet_census(u64 ell, u64 bound, u32 jobs = 1) {
    if (bound > 10000000) throw std::invalid_argument("multiplet_census: bound <= 10^7");
    MultipletCensus mc;
    mc.ell = ell;
    mc.bound = bound;
    u32 nj = jobs ? jobs : 1;
    std::vector<std::map<u32, CensusCell>> parts(nj);
    detail::parallel_ranges(2, bound, nj, [&](u32 slot, u64 a, u64 b) {
        auto& local = parts[slot];
        factor_range(a, b, [&](u64 c, const std::vector<std::pair<u64, u32>>& facs) {
            u32 t;
            if (!detail::admissible_t(ell, facs, t)) return;
            u64 m = 1;
            for (u32 i = 1; i < t; ++i) m *= (ell - 1);
            local[t].add(c, m);
        });
    });
    for (const auto& part : parts)
        for (const auto& [t, cell] : part) mc.by_t[t].merge(cell);
    for (const auto& [t, cell] : mc.by_t) mc.total.merge(cell);
    return mc;
}

// ---- quartet and doublet censuses (ell = 3) --------------------------------

struct CategoryCensus {
    u64 bound = 0;
    std::map<std::string, CensusCell> cells;      // "I/1" .. "V/1", fixed key set
    std::map<std::string, CensusCell> subtotals;  // "I" .. "V"
    CensusCell total;
};

inline const std::vector<std::string>& category_labels() {
    static const std::vector<std::string> L = {
        "I/1", "I/2", "II/1", "II/2", "III/1", "III/2", "III/3", "III/4", "III/5",
        "III/6", "III/7", "III/8", "III/9", "IV/1", "IV/2", "IV/3", "V/1"};
    return L;
}

inline Conductor conductor_from_factors(u64 ell, u64 c, const std::vector<std::pair<u64, u32>>& facs) {
    Conductor k;
    k.ell = ell;
    k.c = c;
    for (auto [q, e] : facs) {
        if (q == ell) {
            k.e = 2;
            k.ramified_primes.push_back(ell * ell);
        } else {
            ++k.tau;
            k.ramified_primes.push_back(q);
        }
        (void)e;
    }
    std::sort(k.ramified_primes.begin(), k.ramified_primes.end());
    k.t = k.tau + (k.e == 2 ? 1 : 0);
    return k;
}

inline CategoryCensus quartet_census(u64 bound, u32 jobs = 1) {
    if (bound > 1000000) throw std::invalid_argument("quartet_census: bound <= 10^6");
    CategoryCensus cc;
    cc.bound = bound;
    u32 nj = jobs ? jobs : 1;
    std::vector<std::map<std::string, CensusCell>> parts(nj);
    detail::parallel_ranges(2, bound, nj, [&](u32 slot, u64 a, u64 b) {
        auto& local = parts[slot];
        factor_range(a, b, [&](u64 c, const std::vector<std::pair<u64, u32>>& facs) {
            u32 t;
            if (!detail::admissible_t(3, facs, t) || t != 3) return;
            CategoryGraph cg = classify(conductor_from_factors(3, c, facs));
            local[cg.label()].add(c, 4);
        });
    });
    for (const auto& lbl : category_labels()) cc.cells[lbl];  // fixed key set, zeros kept
    for (const auto& part : parts)
        for (const auto& [lbl, cell] : part) cc.cells[lbl].merge(cell);
    for (const auto& [lbl, cell] : cc.cells) {
        cc.subtotals[lbl.substr(0, lbl.find('/'))].merge(cell);
        cc.total.merge(cell);
    }
    return cc;
}

struct DoubletCensus {
    u64 bound = 0;
    std::array<CensusCell, 3> graphs;  // graphs 1..3
    CensusCell total;
};

inline DoubletCensus doublet_census(u64 bound, u32 jobs = 1) {
    if (bound > 1000000) throw std::invalid_argument("doublet_census: bound <= 10^6");
    DoubletCensus dc;
    dc.bound = bound;
    u32 nj = jobs ? jobs : 1;
    std::vector<std::array<CensusCell, 3>> parts(nj);
    detail::parallel_ranges(2, bound, nj, [&](u32 slot, u64 a, u64 b) {
        auto& local = parts[slot];
        factor_range(a, b, [&](u64 c, const std::vector<std::pair<u64, u32>>& facs) {
            u32 t;
            if (!detail::admissible_t(3, facs, t) || t != 2) return;
            CategoryGraph cg = classify(conductor_from_factors(3, c, facs));
            local[cg.graph - 1].add(c, 2);
        });
    });
    for (const auto& part : parts)
        for (int i = 0; i < 3; ++i) dc.graphs[i].merge(part[i]);
    for (int i = 0; i < 3; ++i) dc.total.merge(dc.graphs[i]);
    return dc;
}

// ---- report emission -------------------------------------------------------

inline std::string multiplet_label(u64 m) {
    switch (m) {
        case 1: return "singlets";
        case 2: return "doublets";
        case 4: return "quartets";
        case 8: return "octets";
        case 16: return "hexadecuplets";
    }
    return "multiplets_m" + std::to_string(m);
}

inline ordered_json to_json(const CensusCell& cell) {
    return ordered_json{{"conductors", cell.conductors},
                        {"fields", cell.fields},
                        {"min", cell.min_conductor}};
}

inline ordered_json to_json(const MultipletCensus& mc) {
    ordered_json j;
    j["ell"] = mc.ell;
    j["bound"] = mc.bound;
    for (const auto& [t, cell] : mc.by_t) {
        u64 m = 1;
        for (u32 i = 1; i < t; ++i) m *= (mc.ell - 1);
        j[multiplet_label(m)] = to_json(cell);
    }
    j["total"] = to_json(mc.total);
    return j;
}

inline ordered_json to_json(const CategoryCensus& cc) {
    ordered_json j;
    j["bound"] = cc.bound;
    for (const auto& lbl : category_labels()) j[lbl] = to_json(cc.cells.at(lbl));
    for (const auto& [lbl, cell] : cc.subtotals) j["category " + lbl] = to_json(cell);
    j["total"] = to_json(cc.total);
    return j;
}

inline ordered_json to_json(const DoubletCensus& dc) {
    ordered_json j;
    j["bound"] = dc.bound;
    for (int i = 0; i < 3; ++i) j["D/" + std::to_string(i + 1)] = to_json(dc.graphs[i]);
    j["total"] = to_json(dc.total);
    return j;
}

inline std::string emit_json(const ordered_json& j) { return j.dump(2) + "\n"; }

inline std::string emit_csv(const ordered_json& j) {
    std::string out = "label,conductors,fields,min\n";
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it.value().is_object()) continue;
        out += it.key() + "," + it.value()["conductors"].dump() + "," +
               it.value()["fields"].dump() + "," + it.value()["min"].dump() + "\n";
    }
    return out;
}

// ---- fixtures --------------------------------------------------------------

// CSV columns: conductor,category,graph,symbol,partial_conductor,doublet_graph,
// groups,exception,context.  Fields with commas are double-quoted.  '#' starts
// a comment line.
struct FixtureRow {
    u64 conductor = 0;
    std::string category;
    u32 graph = 0;
    std::string symbol;
    u64 partial_conductor = 0;
    u32 dgraph = 0;
    std::string groups;
    bool exception = false;
    std::string context;
    std::string file;
    int line = 0;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') { cur.push_back('"'); ++i; }
                else quoted = false;
            } else {
                cur.push_back(ch);
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace detail

inline std::vector<FixtureRow> parse_fixtures(std::istream& in, const std::string& filename = "") {
    std::vector<FixtureRow> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = pat::strip(line);
        if (s.empty() || s[0] == '#') continue;
        auto f = detail::split_csv_line(s);
        if (f.size() > 0 && f[0] == "conductor") continue;  // header
        if (f.size() < 8 || f.size() > 9)
            throw std::invalid_argument(filename + ":" + std::to_string(lineno) +
                                        ": expected 8 or 9 fields, got " + std::to_string(f.size()));
        FixtureRow r;
        r.file = filename;
        r.line = lineno;
        try {
            r.conductor = std::stoull(f[0]);
            r.category = pat::strip(f[1]);
            r.graph = f[2].empty() ? 0 : std::stoul(f[2]);
            r.symbol = pat::strip(f[3]);
            r.partial_conductor = f[4].empty() ? 0 : std::stoull(f[4]);
            r.dgraph = f[5].empty() ? 0 : std::stoul(f[5]);
            r.groups = pat::strip(f[6]);
            r.exception = f[7] == "1" || f[7] == "true";
            if (f.size() == 9) r.context = pat::strip(f[8]);
        } catch (const std::exception& e) {
            throw std::invalid_argument(filename + ":" + std::to_string(lineno) + ": " + e.what());
        }
        rows.push_back(r);
    }
    return rows;
}

inline std::vector<FixtureRow> load_fixture_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_fixture_file: cannot open " + path);
    return parse_fixtures(in, std::filesystem::path(path).filename().string());
}

inline std::vector<FixtureRow> load_fixture_dir(const std::string& dir) {
    std::vector<std::string> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".csv") files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    std::vector<FixtureRow> rows;
    for (const auto& f : files) {
        auto part = load_fixture_file(f);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
}

struct FixtureReport {
    u64 rows = 0;
    u64 classified_ok = 0;
    u64 classify_failures = 0;
    u64 groups_checked = 0;
    u64 groups_ok = 0;
    u64 group_failures = 0;
    u64 skipped_exception = 0;
    u64 skipped_no_rule = 0;
    std::vector<std::string> failures;

    bool ok() const { return classify_failures == 0 && group_failures == 0; }
};

inline RuleContext parse_context(const std::string& ctx) {
    RuleContext rc;
    std::istringstream in(ctx);
    std::string tok;
    while (in >> tok) {
        if (tok.rfind("v=", 0) == 0) rc.v = std::stoul(tok.substr(2));
        else if (tok.rfind("ati=", 0) == 0) rc.ati = parse_ati(tok.substr(4));
        else if (tok.rfind("cl=", 0) == 0) rc.cl = tok.substr(3);
        else throw std::invalid_argument("parse_context: bad token " + tok);
    }
    return rc;
}

inline FixtureReport verify_fixtures(const std::vector<FixtureRow>& rows) {
    FixtureReport rep;
    for (const auto& r : rows) {
        ++rep.rows;
        std::string where = r.file + ":" + std::to_string(r.line) + " c=" + std::to_string(r.conductor);
        auto fail_classify = [&](const std::string& msg) {
            ++rep.classify_failures;
            rep.failures.push_back(where + ": " + msg);
        };
        CategoryGraph cg;
        try {
            cg = classify(decompose(3, r.conductor));
        } catch (const std::exception& e) {
            fail_classify(std::string("classify: ") + e.what());
            continue;
        }
        bool class_ok = true;
        std::string want = r.category == "doublet" ? "Doublet" : r.category;
        if (std::string(category_name(cg.category)) != want || cg.graph != r.graph) {
            class_ok = false;
            fail_classify("category/graph " + cg.label() + " != " + want + "/" + std::to_string(r.graph));
        } else if (!r.symbol.empty() && !symbols_equivalent(cg.symbol, r.symbol)) {
            class_ok = false;
            fail_classify("symbol " + cg.symbol + " !~ " + r.symbol);
        }
        if (class_ok && r.partial_conductor) {
            try {
                Conductor pf = decompose(3, r.partial_conductor);
                if (pf.t != 2 || r.conductor % r.partial_conductor != 0) {
                    class_ok = false;
                    fail_classify("partial conductor not a doublet divisor");
                } else if (r.dgraph && doublet_graph(pf) != r.dgraph) {
                    class_ok = false;
                    fail_classify("doublet graph " + std::to_string(doublet_graph(pf)) +
                                  " != " + std::to_string(r.dgraph));
                }
            } catch (const std::exception& e) {
                class_ok = false;
                fail_classify(std::string("partial conductor: ") + e.what());
            }
        }
        if (class_ok) ++rep.classified_ok;

        if (r.groups.empty()) continue;
        if (r.exception) {
            ++rep.skipped_exception;
            continue;
        }
        if (!class_ok) continue;
        TowerPrediction pred;
        try {
            RuleContext ctx = parse_context(r.context);
            if (cg.category == Category::Doublet)
                pred = ctx.v ? genus_rule(*ctx.v, ctx.cl.value_or("")) : TowerPrediction{};
            else
                pred = quartet_rule(cg, ctx);
        } catch (const std::exception& e) {
            ++rep.group_failures;
            rep.failures.push_back(where + ": rule: " + e.what());
            continue;
        }
        if (pred.status == RuleStatus::NoRule || pred.status == RuleStatus::Ambiguous) {
            ++rep.skipped_no_rule;
            continue;
        }
        ++rep.groups_checked;
        GroupPattern printed = parse_groups(r.groups);
        bool ok = false;
        for (const auto& alt : pred.alternatives)
            if (groups_match(printed, alt)) { ok = true; break; }
        if (ok) {
            ++rep.groups_ok;
        } else {
            ++rep.group_failures;
            rep.failures.push_back(where + ": groups " + r.groups + " != predicted " +
                                   (pred.alternatives.empty() ? "(none)" : pred.alternatives[0].text));
        }
    }
    return rep;
}

inline ordered_json to_json(const FixtureReport& rep) {
    ordered_json j;
    j["rows"] = rep.rows;
    j["classified_ok"] = rep.classified_ok;
    j["classify_failures"] = rep.classify_failures;
    j["groups_checked"] = rep.groups_checked;
    j["groups_ok"] = rep.groups_ok;
    j["group_failures"] = rep.group_failures;
    j["skipped_exception"] = rep.skipped_exception;
    j["skipped_no_rule"] = rep.skipped_no_rule;
    j["failures"] = rep.failures;
    return j;
}

}  // namespace ccf
