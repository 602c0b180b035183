#include <gtest/gtest.h>

#include <set>

#include "ccf/f3geometry.hpp"

using namespace ccf;

TEST(F3Geometry, TableShapes) {
    ASSERT_EQ(lines().size(), 13u);
    ASSERT_EQ(planes().size(), 13u);
    ASSERT_EQ(bundles().size(), 13u);
    for (u32 i = 0; i < 13; ++i) {
        EXPECT_EQ(lines()[i].index, i + 1);
        EXPECT_EQ(planes()[i].index, i + 1);
        EXPECT_EQ(bundles()[i].index, i + 1);
    }
    // every line index appears in exactly 4 planes, every plane in 4 bundles
    std::vector<u32> line_uses(14, 0), plane_uses(14, 0);
    for (const Plane& p : planes())
        for (u32 l : p.lines) ++line_uses[l];
    for (const Bundle& b : bundles())
        for (u32 p : b.planes) ++plane_uses[p];
    for (u32 i = 1; i <= 13; ++i) {
        EXPECT_EQ(line_uses[i], 4u) << "line " << i;
        EXPECT_EQ(plane_uses[i], 4u) << "plane " << i;
    }
}

// exponent vector of a generator name over {x, y, z}
static std::array<u32, 3> vec_of(const std::string& name) {
    std::array<u32, 3> v{0, 0, 0};
    for (size_t i = 0; i < name.size(); ++i) {
        char ch = name[i];
        if (ch == 'x' || ch == 'y' || ch == 'z') {
            u32 e = 1;
            if (i + 2 < name.size() && name[i + 1] == '^') {
                e = name[i + 2] - '0';
                i += 2;
            }
            v[ch - 'x'] = e;
        }
    }
    return v;
}

static bool in_span(const std::array<u32, 3>& g, const std::array<u32, 3>& a,
                    const std::array<u32, 3>& b) {
    for (u32 s = 0; s < 3; ++s)
        for (u32 t = 0; t < 3; ++t) {
            bool ok = true;
            for (int i = 0; i < 3; ++i)
                if ((s * a[i] + t * b[i]) % 3 != g[i]) ok = false;
            if (ok) return true;
        }
    return false;
}

TEST(F3Geometry, LineNamesMatchGenerators) {
    for (const Line& l : lines()) EXPECT_EQ(vec_of(l.name), l.gen) << l.name;
}

// T_j lists exactly the lines inside plane j, computed from the span of its
// two generators over F_3
TEST(F3Geometry, PlaneLineIncidence) {
    for (const Plane& p : planes()) {
        std::array<u32, 3> a = vec_of(p.gens[0]), b = vec_of(p.gens[1]);
        std::set<u32> contained;
        for (const Line& l : lines())
            if (in_span(l.gen, a, b)) contained.insert(l.index);
        std::set<u32> stated(p.lines.begin(), p.lines.end());
        EXPECT_EQ(contained, stated) << "plane " << p.index;
    }
}

// bundle i = planes through line i: the 13 x 13 incidence duality
TEST(F3Geometry, BundlePlaneDuality) {
    for (const Bundle& b : bundles()) {
        std::set<u32> through;
        for (const Plane& p : planes())
            for (u32 l : p.lines)
                if (l == b.index) through.insert(p.index);
        std::set<u32> stated(b.planes.begin(), b.planes.end());
        EXPECT_EQ(through, stated) << "bundle " << b.index;
    }
}

TEST(F3Geometry, SubgroupOrderPP) {
    EXPECT_EQ(subgroup_order_pp(3), (std::vector<std::string>{"H", "K", "H+K", "H+2K"}));
    EXPECT_EQ(subgroup_order_pp(2), (std::vector<std::string>{"H", "K", "H+K"}));
    EXPECT_EQ(subgroup_order_pp(5).size(), 6u);
    EXPECT_THROW(subgroup_order_pp(4), std::invalid_argument);
}

TEST(F3Geometry, SubgroupOrderPPP) {
    std::vector<std::string> s = subgroup_order_ppp(3);
    ASSERT_EQ(s.size(), 13u);
    EXPECT_EQ(s[0], "u");
    EXPECT_EQ(s[8], "w+2u");
    EXPECT_EQ(s[9], "u+v+w");
    EXPECT_EQ(s[12], "u+2v+2w");
    std::set<std::string> uniq(s.begin(), s.end());
    EXPECT_EQ(uniq.size(), 13u);  // every slot filled, no repeats
    for (const std::string& e : s) EXPECT_FALSE(e.empty());

    // slot k corresponds projectively to line k under u = x, v = y, w = z
    auto vec_uvw = [](const std::string& name) {
        std::array<u32, 3> v{0, 0, 0};
        u32 coef = 1;
        for (char ch : name) {
            if (ch >= '1' && ch <= '9') coef = ch - '0';
            if (ch == 'u' || ch == 'v' || ch == 'w') {
                v[ch - 'u'] = coef;
                coef = 1;
            }
        }
        return v;
    };
    for (u32 k = 0; k < 13; ++k) {
        std::array<u32, 3> a = vec_uvw(s[k]), g = lines()[k].gen;
        bool proportional = false;
        for (u32 lam = 1; lam < 3; ++lam)
            if (a[0] == lam * g[0] % 3 && a[1] == lam * g[1] % 3 && a[2] == lam * g[2] % 3)
                proportional = true;
        EXPECT_TRUE(proportional) << "slot " << k + 1 << " " << s[k] << " vs " << lines()[k].name;
    }

    EXPECT_EQ(subgroup_order_ppp(2).size(), 7u);
    EXPECT_THROW(subgroup_order_ppp(6), std::invalid_argument);
}
