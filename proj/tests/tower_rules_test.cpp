#include <gtest/gtest.h>

#include "ccf/tower_rules.hpp"

using namespace ccf;

TEST(TowerRules, PrincipalFactor) {
    EXPECT_EQ(principal_factor(7, 1), 7u);
    EXPECT_EQ(principal_factor(1, 7), 7u);    // 1 * 7^2 vs 1^2 * 7
    EXPECT_EQ(principal_factor(2, 3), 12u);   // 2^2 * 3
    EXPECT_EQ(principal_factor(3, 2), 12u);   // 3 * 2^2
    EXPECT_EQ(principal_factor(271, 1), 271u);
    EXPECT_EQ(principal_factor(1, 1), 1u);
    EXPECT_EQ(principal_factor(6, 35), 1260u);  // 6^2 * 35
    EXPECT_THROW(principal_factor(6, 9), std::invalid_argument);   // not coprime
    EXPECT_THROW(principal_factor(0, 5), std::invalid_argument);
}

TEST(TowerRules, TwoPrimeRule) {
    TowerPrediction t = two_prime_rule(2);
    ASSERT_EQ(t.status, RuleStatus::Definite);
    ASSERT_EQ(t.alternatives[0].groups.size(), 2u);
    EXPECT_EQ(t.alternatives[0].groups[0].order, 9u);
    EXPECT_EQ(t.alternatives[0].groups[0].ids, (std::vector<u32>{2}));
    EXPECT_EQ(t.length, 1u);
    EXPECT_EQ(t.doublet_class, "regular");

    t = two_prime_rule(1);
    EXPECT_EQ(t.alternatives[0].groups[0].order, 27u);
    EXPECT_EQ(t.alternatives[0].groups[0].ids, (std::vector<u32>{4}));
    EXPECT_EQ(t.length, 2u);

    EXPECT_THROW(two_prime_rule(3), std::invalid_argument);
    EXPECT_THROW(two_prime_rule(0), std::invalid_argument);
}

TEST(TowerRules, GenusRule) {
    EXPECT_EQ(genus_rule(0).alternatives[0].groups[0].order, 3u);
    EXPECT_EQ(genus_rule(1).alternatives[0].groups[0].order, 9u);
    EXPECT_EQ(genus_rule(2).alternatives[0].groups[0].order, 27u);
    TowerPrediction t = genus_rule(3);
    EXPECT_EQ(t.alternatives[0].groups[0].order, 81u);
    EXPECT_EQ(t.alternatives[0].groups[0].ids, (std::vector<u32>{3}));
    EXPECT_EQ(t.doublet_class, "singular");
    EXPECT_EQ(t.length, 2u);

    // the two-prime and genus criteria agree: n = 2 <=> v = 1, n = 1 <=> v = 2
    EXPECT_EQ(two_prime_rule(2).alternatives[0].text, genus_rule(1).alternatives[0].text);
    EXPECT_EQ(two_prime_rule(1).alternatives[0].text, genus_rule(2).alternatives[0].text);

    t = genus_rule(4);
    EXPECT_EQ(t.status, RuleStatus::NoRule);
    EXPECT_EQ(t.doublet_class, "super-singular");

    t = genus_rule(4, "(3,3,9)");
    ASSERT_EQ(t.status, RuleStatus::Candidates);
    ASSERT_TRUE(t.alternatives[0].memberwise);
    GroupPattern printed = parse_groups("<243,14>^2");
    EXPECT_TRUE(groups_match(printed, t.alternatives[0]));
    printed = parse_groups("<243,15>,*");
    EXPECT_TRUE(groups_match(printed, t.alternatives[0]));
    printed = parse_groups("<243,13>^2");
    EXPECT_FALSE(groups_match(printed, t.alternatives[0]));

    t = genus_rule(4, "(3,3,3,3)");
    ASSERT_EQ(t.status, RuleStatus::Candidates);
    EXPECT_TRUE(groups_match(parse_groups("<243,13>,<729,12>"), t.alternatives[0]));
    t = genus_rule(5, "(3,9,9)");
    EXPECT_TRUE(groups_match(parse_groups("<243,14>,*"), t.alternatives[0]));
    t = genus_rule(6, "(3,9,27)");
    EXPECT_EQ(t.status, RuleStatus::Candidates);
    t = genus_rule(6, "(3,3,9,9)");
    EXPECT_TRUE(groups_match(parse_groups("*,**"), t.alternatives[0]));
}

TEST(TowerRules, TwoPrimeGenusValuation) {
    EXPECT_EQ(two_prime_genus_valuation(false, 1, 1, 3), 0);
    EXPECT_EQ(two_prime_genus_valuation(true, 2, 2, 2), 1);
    EXPECT_EQ(two_prime_genus_valuation(true, 2, 2, 3), 2);
    EXPECT_EQ(two_prime_genus_valuation(true, 3, 3, 2), 3);
    EXPECT_EQ(two_prime_genus_valuation(true, 4, 3, 2), 4);
    EXPECT_THROW(two_prime_genus_valuation(false, 2, 2, 3), std::invalid_argument);
    EXPECT_THROW(two_prime_genus_valuation(false, 1, 1, 2), std::invalid_argument);
    EXPECT_THROW(two_prime_genus_valuation(true, 2, 2, 1), std::invalid_argument);
    EXPECT_THROW(two_prime_genus_valuation(true, 3, 3, 4), std::invalid_argument);
    EXPECT_THROW(two_prime_genus_valuation(true, 1, 2, 3), std::invalid_argument);
}

TEST(TowerRules, CapitulationLookup) {
    EXPECT_EQ(capitulation_lookup(1).kernel_order, 3u);
    EXPECT_EQ(capitulation_lookup(1).geometry, "line");
    EXPECT_EQ(capitulation_lookup(3).kernel_order, 9u);
    EXPECT_EQ(capitulation_lookup(3).geometry, "plane");
    EXPECT_EQ(capitulation_lookup(9).kernel_order, 27u);
    EXPECT_EQ(capitulation_lookup(9).geometry, "space");
    EXPECT_THROW(capitulation_lookup(2), std::invalid_argument);
    EXPECT_THROW(capitulation_lookup(27), std::invalid_argument);
}

TEST(TowerRules, GroupParsing) {
    GroupId g = parse_group("<81,7>");
    EXPECT_EQ(g.order, 81u);
    EXPECT_EQ(g.ids, (std::vector<u32>{7}));
    g = parse_group("<3^7,250>");
    EXPECT_EQ(g.order, 2187u);
    g = parse_group("<3^6,37..39>");
    EXPECT_EQ(g.order, 729u);
    EXPECT_EQ(g.ids, (std::vector<u32>{37, 38, 39}));
    g = parse_group("<2187,307|308>");
    EXPECT_EQ(g.ids, (std::vector<u32>{307, 308}));
    g = parse_group("*");
    EXPECT_EQ(g.wild, 1u);
    EXPECT_EQ(parse_group("**").wild, 2u);
    EXPECT_THROW(parse_group("81,7"), std::invalid_argument);

    GroupPattern gp = parse_groups("<81,14>;<81,8>,<81,10>^2");
    ASSERT_EQ(gp.groups.size(), 4u);
    EXPECT_EQ(gp.separator, 1);
    EXPECT_EQ(gp.groups[2].order, 81u);
    EXPECT_EQ(gp.groups[3].ids, (std::vector<u32>{10}));

    gp = parse_groups("<3^7,250>^2,<3^7,251>^2");
    ASSERT_EQ(gp.groups.size(), 4u);
    EXPECT_EQ(gp.separator, -1);

    // segment membership is order-free; family ids use containment
    EXPECT_TRUE(groups_match(parse_groups("<243,28>^4"), parse_groups("<243,28|29|30>^4")));
    EXPECT_TRUE(groups_match(parse_groups("<243,29>,<243,28>^3"), parse_groups("<243,28|29|30>^4")));
    EXPECT_FALSE(groups_match(parse_groups("<243,31>^4"), parse_groups("<243,28|29|30>^4")));
    EXPECT_FALSE(groups_match(parse_groups("<243,28>^3"), parse_groups("<243,28|29|30>^4")));
    EXPECT_TRUE(groups_match(parse_groups("<81,13>^2;<81,7>^2"), parse_groups("<81,13>^2;<81,7>^2")));
    EXPECT_FALSE(groups_match(parse_groups("<81,13>;<81,13>,<81,7>^2"),
                              parse_groups("<81,13>^2;<81,7>^2")));
    EXPECT_TRUE(groups_match(parse_groups("*;<243,8>^3"), parse_groups("<243,42>;<243,8>^3")));
}

TEST(TowerRules, PatternCanonicalization) {
    EXPECT_EQ(pat::canon_entry("1^2"), "11");
    EXPECT_EQ(pat::canon_entry("21"), "21");
    EXPECT_EQ(pat::canon_entry("12"), "21");  // digits sorted descending
    EXPECT_EQ(pat::canon_entry("1^3"), "111");
    EXPECT_EQ(pat::canon_tau("[21,(1^2)^3]"), pat::canon_tau("[11,21,11,11]"));
    EXPECT_EQ(pat::canon_tau("[(1)^4]"), "1,1,1,1");
    EXPECT_EQ(pat::kappa33_type("(2000)"), "a.3");
    EXPECT_EQ(pat::kappa33_type("(0000)"), "a.1");
    EXPECT_EQ(pat::kappa33_type("(1000)"), "a.2");
    EXPECT_EQ(pat::kappa33_type("(1111)"), "A.1");
    EXPECT_EQ(pat::kappa33_type("(0231)"), "c.21");
    EXPECT_EQ(pat::kappa33_type("(4034)"), "d.19");
    EXPECT_EQ(pat::kappa33_type("(0034)"), "b.10");
    EXPECT_EQ(pat::kappa33_type("a.3"), "a.3");
    EXPECT_EQ(pat::kappa333_counts("(O^13)"), (std::array<u32, 3>{13, 0, 0}));
    EXPECT_EQ(pat::kappa333_counts("(O^9 P^4)"), (std::array<u32, 3>{9, 4, 0}));
    EXPECT_EQ(pat::kappa333_counts("((P_i^3)_4 L)"), (std::array<u32, 3>{0, 12, 1}));
    EXPECT_EQ(pat::kappa333_counts("(O^3 P^10)"), (std::array<u32, 3>{3, 10, 0}));

    GenusATI a = parse_ati("[(0)^3;(11)^7,(21)^3]");
    EXPECT_EQ(a.head.size(), 3u);
    EXPECT_EQ(a.tail.size(), 10u);
    EXPECT_EQ(a, parse_ati("[0,0,0;(21)^3,(1^2)^7]"));
    EXPECT_FALSE(parse_ati("[(0)^3;(11)^8,(111)^2]") == parse_ati("[(0)^3;(11)^7,(21)^3]"));
    EXPECT_THROW(parse_ati("[(0)^2;(11)^7,(21)^3]"), std::invalid_argument);
}

TEST(TowerRules, QuartetRuleByGraph) {
    // graphs III/1..4: one fixed outcome, no context needed
    TowerPrediction t = quartet_rule(classify(819));  // III/2
    ASSERT_EQ(t.status, RuleStatus::Definite);
    EXPECT_EQ(t.alternatives[0].groups.size(), 4u);
    EXPECT_EQ(t.alternatives[0].groups[0].order, 9u);
    EXPECT_EQ(t.length, 1u);
    EXPECT_EQ(quartet_rule(classify(1953)).alternatives[0].groups[0].order, 9u);   // III/1
    EXPECT_EQ(quartet_rule(classify(1197)).alternatives[0].groups[0].order, 9u);   // III/3
    EXPECT_EQ(quartet_rule(classify(6643)).alternatives[0].groups[0].order, 9u);   // III/4

    RuleContext v1;
    v1.v = 1;
    t = quartet_rule(classify(8541), v1);  // III/6
    ASSERT_EQ(t.status, RuleStatus::Definite);
    EXPECT_EQ(t.alternatives[0].groups[0].order, 81u);
    EXPECT_EQ(t.alternatives[0].groups[0].ids, (std::vector<u32>{7}));
    EXPECT_EQ(t.length, 2u);
    EXPECT_NE(t.kappa.find("2000"), std::string::npos);

    t = quartet_rule(classify(4599), v1);  // III/7, v = 1
    EXPECT_EQ(t.status, RuleStatus::Definite);
    RuleContext v2;
    v2.v = 2;
    t = quartet_rule(classify(4599), v2);  // III/7, v = 2: open case
    EXPECT_EQ(t.status, RuleStatus::Ambiguous);
    t = quartet_rule(classify(16471), v2);  // III/9, v = 2 stays definite
    EXPECT_EQ(t.status, RuleStatus::Definite);
    RuleContext v3;
    v3.v = 3;
    EXPECT_EQ(quartet_rule(classify(8541), v3).status, RuleStatus::NoRule);

    // IV and V have no deterministic rule
    EXPECT_EQ(quartet_rule(classify(61579)).status, RuleStatus::NoRule);
    EXPECT_EQ(quartet_rule(classify(49543)).status, RuleStatus::NoRule);
}

TEST(TowerRules, QuartetRuleByATI) {
    CategoryGraph g5 = classify(14049), g8 = classify(20293);
    ASSERT_EQ(g5.label(), "III/5");
    ASSERT_EQ(g8.label(), "III/8");

    EXPECT_EQ(quartet_rule(g5).status, RuleStatus::NoRule);  // ATI required

    RuleContext ctx;
    ctx.ati = parse_ati("[(0)^2,1;(1^2)^7,(21)^3]");
    TowerPrediction t = quartet_rule(g5, ctx);
    ASSERT_EQ(t.status, RuleStatus::Definite);
    EXPECT_TRUE(groups_match(parse_groups("<3^5,28>^4"), t.alternatives[0]));

    ctx.ati = parse_ati("[(0)^2,1^2;(1^2)^8,(1^3)^2]");
    ctx.v = 2;
    t = quartet_rule(g5, ctx);
    ASSERT_EQ(t.status, RuleStatus::Definite);
    EXPECT_TRUE(groups_match(parse_groups("<81,7>^4"), t.alternatives[0]));

    ctx.v.reset();
    ctx.ati = parse_ati("[(0)^2,1;(1^2)^7,(21)^2,2^2]");
    t = quartet_rule(g5, ctx);
    ASSERT_EQ(t.alternatives.size(), 2u);  // <243,27>,<243,28|29|30>^3 or <243,25>^2,...^2
    EXPECT_TRUE(groups_match(parse_groups("<3^5,27>,<3^5,28>^3"), t.alternatives[0]));
    EXPECT_TRUE(groups_match(parse_groups("<3^5,25>^2,<3^5,28>^2"), t.alternatives[1]));

    ctx.ati = parse_ati("[(0)^2,1;(1^2)^7,(2^2)^3]");
    t = quartet_rule(g8, ctx);
    ASSERT_EQ(t.status, RuleStatus::Definite);
    EXPECT_TRUE(groups_match(parse_groups("<3^5,25>^2,<3^5,27>^2"), t.alternatives[0]));
    EXPECT_EQ(t.principal_factors, "B = q_k");

    ctx.ati = parse_ati("[(0)^2,1;(21)^6,(1^3)^4]");  // the graph-8 table rows
    EXPECT_EQ(quartet_rule(g8, ctx).status, RuleStatus::NoRule);

    // category II and I
    CategoryGraph c2 = classify(3913);
    EXPECT_EQ(quartet_rule(c2).status, RuleStatus::NoRule);
    ctx.ati = parse_ati("[(0)^3;(1^2)^8,(1^3)^2]");
    t = quartet_rule(c2, ctx);
    ASSERT_EQ(t.status, RuleStatus::Definite);
    EXPECT_TRUE(groups_match(parse_groups("<81,13>^2;<81,7>^2"), t.alternatives[0]));
    EXPECT_EQ(t.length, 2u);

    CategoryGraph c1 = classify(7657);
    ctx.ati = parse_ati("[(0)^3;(1^2)^7,(21)^3]");
    t = quartet_rule(c1, ctx);
    EXPECT_TRUE(groups_match(parse_groups("<81,14>;<81,8>,<81,10>^2"), t.alternatives[0]));
    ctx.ati = parse_ati("[(0)^3;(1^2)^6,(21)^2,2^2,1^3]");
    t = quartet_rule(c1, ctx);
    EXPECT_TRUE(groups_match(parse_groups("<243,46>;<243,25>,<243,28>^2"), t.alternatives[0]));
    EXPECT_TRUE(groups_match(parse_groups("<243,47>;<243,25>,<243,30>^2"), t.alternatives[0]));
    ctx.ati = parse_ati("[(0)^3;(21)^9,21^2]");
    t = quartet_rule(c1, ctx);
    EXPECT_TRUE(groups_match(parse_groups("<243,42>;<243,8>^3"), t.alternatives[0]));
    EXPECT_TRUE(groups_match(parse_groups("*;<243,8>^3"), t.alternatives[0]));
    ctx.ati = parse_ati("[(0)^3;(21)^6,(2^2)^3,2^2 1]");
    EXPECT_EQ(quartet_rule(c1, ctx).status, RuleStatus::NoRule);
}

TEST(TowerRules, StageRule33) {
    StageResult r = stage_rule_33("[(1)^4]", "(0000)");
    ASSERT_EQ(r.status, RuleStatus::Definite);
    EXPECT_EQ(r.groups[0].display(), "<9,2>");
    EXPECT_EQ(r.length, 1u);

    r = stage_rule_33("[1^2,(2)^3]", "(1111)");
    EXPECT_EQ(r.groups[0].display(), "<27,4>");
    EXPECT_EQ(r.length, 2u);

    EXPECT_EQ(stage_rule_33("[1^3,(1^2)^3]", "a.3").groups[0].display(), "<81,7>");
    EXPECT_EQ(stage_rule_33("[21,(1^2)^3]", "a.3").groups[0].display(), "<81,8>");
    EXPECT_EQ(stage_rule_33("[21,(1^2)^3]", "a.2").groups[0].display(), "<81,10>");
    EXPECT_EQ(stage_rule_33("[2^2,(1^2)^3]", "a.3").groups[0].display(), "<243,25>");
    EXPECT_EQ(stage_rule_33("[2^2,(1^2)^3]", "a.2").groups[0].display(), "<243,27>");

    r = stage_rule_33("[21,(1^2)^3]", "a.1");
    EXPECT_EQ(r.status, RuleStatus::Ambiguous);  // needs tau2
    r = stage_rule_33("[21,(1^2)^3]", "a.1", "[1^2]");
    EXPECT_EQ(r.groups[0].display(), "<81,9>");
    r = stage_rule_33("[21,(1^2)^3]", "a.1", "[21]");
    EXPECT_EQ(r.groups[0].ids, (std::vector<u32>{28, 29, 30}));

    r = stage_rule_33("[(21)^2,(1^3)^2]", "b.10");
    EXPECT_EQ(r.status, RuleStatus::Ambiguous);
    r = stage_rule_33("[(21)^2,(1^3)^2]", "(0043)", "[1^4]");
    EXPECT_EQ(r.groups[0].ids, (std::vector<u32>{34, 35, 36}));
    EXPECT_EQ(r.groups[0].order, 729u);
    r = stage_rule_33("[(21)^2,(1^3)^2]", "b.10", "[211]");
    EXPECT_EQ(r.groups[0].ids, (std::vector<u32>{37, 38, 39}));

    // three-stage towers from second-order patterns
    r = stage_rule_33("[22,21,21,21]", "(0231)",
                      "(11;[22;(211)^4],[21;211,(31)^3],[21;211,(21)^3],[21;211,(21)^3])");
    ASSERT_EQ(r.status, RuleStatus::Definite);
    EXPECT_EQ(r.groups[0].order, 2187u);
    EXPECT_EQ(r.groups[0].ids, (std::vector<u32>{307, 308}));
    EXPECT_EQ(r.length, 3u);
    EXPECT_NE(r.note.find("308"), std::string::npos);

    r = stage_rule_33("[22,21,111,111]", "d.19",
                      "(11;[22;(211)^4],[21;211,(21)^3],[111;(211)^4,(11)^9],[111;211,(111)^3,(11)^9])");
    ASSERT_EQ(r.status, RuleStatus::Definite);
    EXPECT_EQ(r.groups[0].display(), "<2187,265>");
    EXPECT_EQ(r.length, 3u);

    EXPECT_EQ(stage_rule_33("[(1)^4]", "(0123)").status, RuleStatus::NoRule);
}

TEST(TowerRules, StageRule333) {
    StageResult r = stage_rule_333("[(1^2)^13]", "(O^13)");
    ASSERT_EQ(r.status, RuleStatus::Definite);
    EXPECT_EQ(r.groups[0].display(), "<27,5>");
    EXPECT_EQ(r.length, 1u);

    r = stage_rule_333("[(1^2)^9,(21)^3,1^3]", "(O^9 P^4)");
    EXPECT_EQ(r.groups[0].display(), "<81,13>");
    r = stage_rule_333("[(1^2)^9,(21)^4]", "(O^9 P^4)");
    EXPECT_EQ(r.groups[0].display(), "<81,14>");

    r = stage_rule_333("[1^3,(21)^11,2^2]", "((P_i^3)_4 L)");
    EXPECT_EQ(r.groups[0].display(), "<243,46>");
    r = stage_rule_333("[(1^3)^4,(21)^8,2^2]", "((P_i^3)_4 L)");
    EXPECT_EQ(r.groups[0].display(), "<243,47>");

    r = stage_rule_333("[111;1111,(111)^3,(21)^9]", "(O^3 P^10)");
    ASSERT_EQ(r.status, RuleStatus::Definite);
    ASSERT_EQ(r.groups.size(), 9u);
    EXPECT_EQ(r.groups.front().ids, (std::vector<u32>{261262}));
    EXPECT_EQ(r.groups.back().ids, (std::vector<u32>{261270}));
    EXPECT_EQ(r.groups.front().order, 6561u);
    EXPECT_EQ(r.length, 3u);

    EXPECT_EQ(stage_rule_333("[(1^2)^13]", "(O^12 P)").status, RuleStatus::NoRule);
}
