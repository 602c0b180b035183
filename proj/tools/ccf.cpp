// ccf: sieve, classify and census admissible conductors of cyclic cubic and
// quintic fields, verify fixture tables, and run the sigma-automorphism census.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccf/census.hpp"
#include "ccf/f3geometry.hpp"
#include "ccf/galois_action.hpp"

using namespace ccf;

namespace {

std::string rule_text(const TowerPrediction& t) {
    switch (t.status) {
        case RuleStatus::Definite: {
            std::string s;
            for (size_t i = 0; i < t.alternatives.size(); ++i)
                s += (i ? " or " : "") + t.alternatives[i].text;
            return s;
        }
        case RuleStatus::Candidates:
            return "candidates " + t.alternatives[0].text;
        case RuleStatus::Ambiguous:
            return "ambiguous";
        case RuleStatus::NoRule:
            return "none";
    }
    return "none";
}

const char* status_name(RuleStatus s) {
    switch (s) {
        case RuleStatus::Definite: return "definite";
        case RuleStatus::Candidates: return "candidates";
        case RuleStatus::Ambiguous: return "ambiguous";
        case RuleStatus::NoRule: return "no-rule";
    }
    return "?";
}

ordered_json rule_json(const TowerPrediction& t) {
    ordered_json j;
    j["status"] = status_name(t.status);
    j["groups"] = ordered_json::array();
    for (const auto& alt : t.alternatives) j["groups"].push_back(alt.text);
    if (!t.kappa.empty()) j["kappa"] = t.kappa;
    if (!t.tau.empty()) j["tau"] = t.tau;
    if (t.length) j["length"] = t.length;
    if (!t.doublet_class.empty()) j["doublet_class"] = t.doublet_class;
    if (!t.principal_factors.empty()) j["principal_factors"] = t.principal_factors;
    if (!t.note.empty()) j["note"] = t.note;
    return j;
}

// Aligned table from a census JSON object: scalar entries first, then one row
// per {conductors, fields, min} cell.
std::string text_table(const ordered_json& j) {
    std::string head;
    std::vector<std::array<std::string, 4>> rows = {{"label", "conductors", "fields", "min"}};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it.value().is_object()) {
            head += it.key() + " = " + it.value().dump() + "\n";
            continue;
        }
        rows.push_back({it.key(), it.value()["conductors"].dump(), it.value()["fields"].dump(),
                        it.value()["min"].dump()});
    }
    std::array<size_t, 4> w{};
    for (const auto& r : rows)
        for (int i = 0; i < 4; ++i) w[i] = std::max(w[i], r[i].size());
    std::string out = head;
    for (const auto& r : rows) {
        out += r[0] + std::string(w[0] - r[0].size(), ' ');
        for (int i = 1; i < 4; ++i) out += "  " + std::string(w[i] - r[i].size(), ' ') + r[i];
        out += "\n";
    }
    return out;
}

void emit(const ordered_json& j, const std::string& format) {
    if (format == "json") std::cout << emit_json(j);
    else if (format == "csv") std::cout << emit_csv(j);
    else std::cout << text_table(j);
}

FiniteGroup group_by_name(const std::string& name) {
    if (name == "<4,2>") return elementary_abelian(2, 2);
    if (name == "<8,3>") return dihedral8();
    if (name == "<8,4>") return quaternion8();
    if (name == "<8,5>") return elementary_abelian(2, 3);
    if (name == "<9,2>") return elementary_abelian(3, 2);
    if (name == "<25,2>") return elementary_abelian(5, 2);
    if (name == "<125,3>") return heisenberg(5);
    if (name == "<125,4>") return modular_p3(5);
    if (name.size() > 1 && name[0] == 'C') return cyclic_group(std::stoul(name.substr(1)));
    throw std::invalid_argument("unknown group " + name + "; use <4,2> <8,3> <8,4> <8,5> <9,2> <25,2> <125,3> <125,4> or C<n>");
}

int cmd_sieve(u64 ell, u64 max, const std::string& format) {
    ordered_json arr = ordered_json::array();
    if (format == "csv") std::cout << "conductor,t,multiplicity\n";
    factor_range(2, max, [&](u64 c, const std::vector<std::pair<u64, u32>>& facs) {
        if (!admissible_factors(ell, facs)) return;
        u32 t = static_cast<u32>(facs.size());
        u64 m = 1;
        for (u32 i = 1; i < t; ++i) m *= (ell - 1);
        if (format == "json") arr.push_back(ordered_json{{"conductor", c}, {"t", t}, {"m", m}});
        else if (format == "csv") std::cout << c << "," << t << "," << m << "\n";
        else std::cout << c << " " << t << " " << m << "\n";
    });
    if (format == "json") std::cout << emit_json(arr);
    return 0;
}

int cmd_classify(u64 c, const RuleContext& ctx, const std::string& format) {
    Conductor k = decompose(3, c);
    CategoryGraph cg = classify(k);

    TowerPrediction pred;
    if (cg.category == Category::Doublet) {
        if (cg.graph != 3) pred = genus_rule(0);
        else if (ctx.v) pred = genus_rule(*ctx.v, ctx.cl.value_or(""));
        // graph 3 without v: no prediction
    } else if (k.t == 3) {
        pred = quartet_rule(cg, ctx);
    }

    std::vector<u32> ranks = rank_distribution(cg);
    std::string rk;
    for (size_t i = 0; i < ranks.size(); ++i) rk += (i ? "," : "") + std::to_string(ranks[i]);

    if (format == "json") {
        ordered_json j;
        j["conductor"] = c;
        j["ell"] = 3;
        j["ramified_primes"] = k.ramified_primes;
        j["t"] = k.t;
        j["multiplicity"] = multiplicity(3, c);
        j["category"] = category_name(cg.category);
        j["graph"] = cg.graph;
        j["symbol"] = cg.symbol;
        j["ranks"] = ranks;
        if (cg.category == Category::Singlet) {
            j["rule"] = ordered_json{{"status", "definite"}, {"groups", {"<1,1>"}}};
        } else {
            j["rule"] = rule_json(pred);
        }
        std::cout << emit_json(j);
        return 0;
    }

    std::cout << "conductor " << c << ", ramified primes";
    for (u64 q : k.ramified_primes) std::cout << " " << q;
    std::cout << ", multiplicity " << multiplicity(3, c) << "\n";
    if (k.t >= 2 && k.t <= 4) {
        SymbolMatrix sm = symbol_matrix(k);
        std::cout << "symbol matrix (a[i][j] = exponent of q_i mod q_j):\n";
        for (u32 i = 0; i < sm.t; ++i) {
            std::cout << " ";
            for (u32 j = 0; j < sm.t; ++j)
                std::cout << " " << (i == j ? "." : std::to_string(sm.a[i][j]));
            std::cout << "\n";
        }
    }
    if (cg.category == Category::Singlet) {
        std::cout << "Singlet, " << cg.symbol << ", ranks (" << rk << "), rule: <1,1>\n";
    } else if (cg.category == Category::Doublet) {
        std::cout << "Doublet, Graph " << cg.graph << ", " << cg.symbol << ", ranks (" << rk
                  << "), rule: " << rule_text(pred) << "\n";
    } else {
        std::cout << "Category " << category_name(cg.category) << ", Graph " << cg.graph << ", "
                  << cg.symbol << ", ranks (" << rk << "), rule: " << rule_text(pred) << "\n";
    }
    if (!pred.kappa.empty()) std::cout << "kappa: " << pred.kappa << "\n";
    if (!pred.tau.empty()) std::cout << "tau: " << pred.tau << "\n";
    if (pred.length) std::cout << "tower length: " << pred.length << "\n";
    if (!pred.principal_factors.empty()) std::cout << "principal factors: " << pred.principal_factors << "\n";
    if (!pred.note.empty()) std::cout << "note: " << pred.note << "\n";
    return 0;
}

int cmd_symbol(u64 ell, u64 m, u64 r, const std::string& format) {
    CubicCharacter ch = cubic_exponent(ell, m, r);
    if (format == "json") {
        ordered_json j{{"ell", ell}, {"modulus", m}, {"residue", ch.residue},
                       {"exponent", ch.exponent}, {"coarse", ch.coarse}};
        std::cout << emit_json(j);
        return 0;
    }
    std::cout << "[" << r << " | " << m << "]_" << ell << " = omega^" << ch.exponent << " ("
              << (ch.coarse > 0 ? "residue" : ch.coarse < 0 ? "non-residue" : "zero") << ")\n";
    return 0;
}

int cmd_sigma(const std::string& group, bool table, const std::vector<u32>& elementary,
              const std::string& format) {
    if (!elementary.empty()) {
        SigmaCensus sc = elementary_sigma(elementary[0], elementary[1]);
        ordered_json j{{"group", "(" + std::to_string(elementary[0]) + ")^" + std::to_string(elementary[1])},
                       {"aut", sc.c}, {"order3", sc.o}, {"weak", sc.w}, {"strong", sc.s}};
        if (format == "json") std::cout << emit_json(j);
        else std::cout << j["group"].get<std::string>() << ": |Aut| " << sc.c << ", order-3 " << sc.o
                       << ", weak " << sc.w << ", strong " << sc.s << "\n";
        return 0;
    }
    std::vector<std::string> names;
    if (table)
        names = {"<4,2>", "<8,3>", "<8,4>", "<8,5>", "<25,2>", "<125,3>", "<125,4>"};
    else
        names = {group};
    ordered_json arr = ordered_json::array();
    for (const auto& nm : names) {
        SigmaCensus sc = sigma_census(group_by_name(nm));
        arr.push_back(ordered_json{{"group", nm}, {"aut", sc.c}, {"order3", sc.o},
                                   {"weak", sc.w}, {"strong", sc.s}});
    }
    if (format == "json") {
        std::cout << emit_json(arr);
        return 0;
    }
    if (format == "csv") std::cout << "group,aut,order3,weak,strong\n";
    for (const auto& row : arr) {
        if (format == "csv")
            std::cout << row["group"].get<std::string>() << "," << row["aut"] << "," << row["order3"]
                      << "," << row["weak"] << "," << row["strong"] << "\n";
        else
            std::cout << row["group"].get<std::string>() << ": |Aut| " << row["aut"] << ", order-3 "
                      << row["order3"] << ", weak " << row["weak"] << ", strong " << row["strong"]
                      << "\n";
    }
    return 0;
}

int cmd_geometry(const std::string& format) {
    ordered_json j;
    j["lines"] = ordered_json::array();
    for (const auto& l : lines())
        j["lines"].push_back(ordered_json{{"index", l.index}, {"name", l.name}, {"gen", l.gen}});
    j["planes"] = ordered_json::array();
    for (const auto& p : planes())
        j["planes"].push_back(ordered_json{{"index", p.index}, {"gens", p.gens}, {"lines", p.lines}});
    j["bundles"] = ordered_json::array();
    for (const auto& b : bundles())
        j["bundles"].push_back(ordered_json{{"index", b.index}, {"planes", b.planes}});
    if (format == "json") {
        std::cout << emit_json(j);
        return 0;
    }
    std::cout << "lines:\n";
    for (const auto& l : lines())
        std::cout << "  " << l.index << "\t" << l.name << "\t(" << l.gen[0] << "," << l.gen[1] << ","
                  << l.gen[2] << ")\n";
    std::cout << "planes:\n";
    for (const auto& p : planes()) {
        std::cout << "  " << p.index << "\t<" << p.gens[0] << "," << p.gens[1] << ">\tlines";
        for (u32 li : p.lines) std::cout << " " << li;
        std::cout << "\n";
    }
    std::cout << "bundles:\n";
    for (const auto& b : bundles()) {
        std::cout << "  " << b.index << "\tplanes";
        for (u32 pi : b.planes) std::cout << " " << pi;
        std::cout << "\n";
    }
    return 0;
}

int cmd_fixtures(const std::string& path, const std::string& format) {
    std::string dir = path;
    if (dir.empty()) {
        const char* env = std::getenv("CCF_FIXTURE_DIR");
        dir = env ? env : "data/fixtures";
    }
    std::vector<FixtureRow> rows;
    if (std::filesystem::is_directory(dir)) rows = load_fixture_dir(dir);
    else rows = load_fixture_file(dir);
    FixtureReport rep = verify_fixtures(rows);
    if (format == "json") {
        std::cout << emit_json(to_json(rep));
    } else {
        std::cout << "rows " << rep.rows << ", classified ok " << rep.classified_ok
                  << ", groups checked " << rep.groups_checked << ", groups ok " << rep.groups_ok
                  << ", skipped (exception) " << rep.skipped_exception << ", skipped (no rule) "
                  << rep.skipped_no_rule << "\n";
        for (const auto& f : rep.failures) std::cout << "FAIL " << f << "\n";
        std::cout << (rep.ok() ? "OK" : "FAILED") << "\n";
    }
    return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cyclic cubic field classification and census engine"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "text";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "csv", "json"}));

    u64 ell = 3, maxc = 100000, conductor = 0, sym_ell = 3, sym_mod = 0, sym_res = 0;
    u32 jobs = 1, opt_v = 0;
    std::string opt_ati, opt_cl, fixture_path, sigma_group = "<4,2>";
    bool by_category = false, by_doublets = false, sigma_table = false;
    std::vector<u32> sigma_elem;

    auto* sieve = app.add_subcommand("sieve", "stream admissible conductors with t and m");
    sieve->add_option("--ell", ell, "field degree, an odd prime")->default_val(3);
    sieve->add_option("--max", maxc, "upper bound, exclusive")->default_val(100000);

    auto* cls = app.add_subcommand("classify", "category, graph, symbol and tower rule of a conductor");
    cls->add_option("conductor", conductor, "admissible cubic conductor")->required();
    auto* vopt = cls->add_option("--v", opt_v, "genus valuation of the (partial) conductor");
    cls->add_option("--ati", opt_ati, "genus ATI, e.g. [(0)^3;(11)^8,(111)^2]");
    cls->add_option("--cl", opt_cl, "Cl3(F*) shape for super-singular doublets, e.g. (3,3,9)");

    auto* sym = app.add_subcommand("symbol", "cubic residue character [r | m]_ell");
    sym->add_option("ell", sym_ell, "odd prime degree")->required();
    sym->add_option("modulus", sym_mod, "prime == 1 mod ell, or ell^2")->required();
    sym->add_option("residue", sym_res, "residue to test")->required();

    auto* cen = app.add_subcommand("census", "multiplet, category or doublet census");
    cen->add_option("--ell", ell, "field degree, an odd prime")->default_val(3);
    cen->add_option("--max", maxc, "upper bound, exclusive")->default_val(100000);
    cen->add_option("--jobs", jobs, "worker threads")->default_val(1);
    cen->add_flag("--by-category", by_category, "quartet census by category/graph (ell = 3)");
    cen->add_flag("--doublets", by_doublets, "doublet census by graph (ell = 3)");

    auto* fix = app.add_subcommand("fixtures", "verify fixture tables against the engine");
    fix->add_option("path", fixture_path, "fixture file or directory (default: CCF_FIXTURE_DIR)");

    auto* sig = app.add_subcommand("sigma", "automorphisms of order 3 with annihilating trace");
    sig->add_option("--group", sigma_group, "group name, e.g. <8,4> or C9");
    sig->add_flag("--table", sigma_table, "all tabulated groups of order <= 125");
    sig->add_option("--elementary", sigma_elem, "p rank: census over GL(rank, p)")->expected(2);

    app.add_subcommand("geometry", "lines, planes and bundles of PG(2,3)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "sieve") return cmd_sieve(ell, maxc, format);
        if (name == "classify") {
            RuleContext ctx;
            if (vopt->count()) ctx.v = opt_v;
            if (!opt_ati.empty()) ctx.ati = parse_ati(opt_ati);
            if (!opt_cl.empty()) ctx.cl = opt_cl;
            return cmd_classify(conductor, ctx, format);
        }
        if (name == "symbol") return cmd_symbol(sym_ell, sym_mod, sym_res, format);
        if (name == "census") {
            if (by_category && by_doublets) throw std::invalid_argument("choose one of --by-category, --doublets");
            if (by_category) {
                if (ell != 3) throw std::invalid_argument("--by-category requires --ell 3");
                emit(to_json(quartet_census(maxc, jobs)), format);
            } else if (by_doublets) {
                if (ell != 3) throw std::invalid_argument("--doublets requires --ell 3");
                emit(to_json(doublet_census(maxc, jobs)), format);
            } else {
                emit(to_json(multiplet_census(ell, maxc, jobs)), format);
            }
            return 0;
        }
        if (name == "fixtures") return cmd_fixtures(fixture_path, format);
        if (name == "sigma") return cmd_sigma(sigma_group, sigma_table, sigma_elem, format);
        if (name == "geometry") return cmd_geometry(format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
