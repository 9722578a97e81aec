#include <gtest/gtest.h>

#include "amalgam/chevlie.hpp"

using namespace amalgam;

TEST(Chevlie, AlgebraAxioms) {
    for (std::string d : {"A1", "A2", "B2", "G2", "A3", "B3", "C3", "D4", "A1+A1", "F4"}) {
        ChevalleyAlgebra g(parse_diagram(d));
        auto c = check_algebra(g);
        EXPECT_TRUE(c.jacobi) << d;
        EXPECT_TRUE(c.serre) << d;
        EXPECT_TRUE(c.chevalley) << d;
    }
}

TEST(Chevlie, Dimensions) {
    EXPECT_EQ(ChevalleyAlgebra(parse_diagram("G2")).dim(), 14u);
    EXPECT_EQ(ChevalleyAlgebra(parse_diagram("F4")).dim(), 52u);
    EXPECT_EQ(ChevalleyAlgebra(parse_diagram("B3")).dim(), 21u);
    EXPECT_THROW(ChevalleyAlgebra(parse_diagram("A1~")), NotSpherical);
}

TEST(Chevlie, ExtraspecialSignsPositive) {
    ChevalleyAlgebra g(parse_diagram("G2"));
    auto es = g.extraspecial_pair({3, 2});
    ASSERT_TRUE(es);
    EXPECT_GT(g.structure_constant(es->first, es->second), 0);
    // [e_s, e_l] with s short: the s-string through l has length 4, p = 0.
    EXPECT_EQ(g.structure_constant({1, 0}, {0, 1}), 1);
    EXPECT_EQ(g.structure_constant({1, 0}, {1, 1}), 2);
    EXPECT_EQ(std::abs(g.structure_constant({1, 0}, {2, 1})), 3);
}

// In sl2: exp(t ad e) f = f - t h + t^2 e, with f = -e_{-alpha} and
// [e, f] = -h.
TEST(Chevlie, Sl2Exponential) {
    ChevalleyAlgebra g(parse_diagram("A1"));
    LaurentRing l({"r"}, {"t"});
    auto t = l.var("t");
    auto x = g.exp_ad(RootVec{1}, t, l);
    auto be = g.root_basis({1}), bf = g.root_basis({-1}), bh = g.cartan_basis(0);
    // f = -e_{-alpha}; column bf of x times -1.
    EXPECT_EQ(l.neg(x(bf, bf)), l.neg(l.one()));
    EXPECT_EQ(l.neg(x(bh, bf)), l.neg(t));
    EXPECT_EQ(l.neg(x(be, bf)), l.mul(t, t));
}

TEST(Chevlie, PGammaWord) {
    auto a = parse_diagram("A3");
    EXPECT_EQ(p_gamma_word(a, {0, 1}), (WStarWord{{0, 1}, {1, 1}}));
    EXPECT_EQ(p_gamma_word(a, {0, 1, 2}), (WStarWord{{1, 1}, {2, 1}, {0, 1}, {1, 1}}));
    EXPECT_TRUE(p_gamma_word(a, {2}).empty());
    EXPECT_THROW(p_gamma_word(a, {0, 2}), NotAnOddPath);
    EXPECT_THROW(p_gamma_word(parse_diagram("B2"), {0, 1}), NotAnOddPath);
}

TEST(Chevlie, SStarSquareIsAdCoroot) {
    ChevalleyAlgebra g(parse_diagram("B2"));
    for (std::size_t i = 0; i < 2; ++i) {
        auto sq = g.s_star(i) * g.s_star(i);
        EXPECT_EQ(sq, g.ad_coroot(simple_root(2, i)));
    }
}

TEST(Chevlie, ESetAtMostTwo) {
    ChevalleyAlgebra g(parse_diagram("G2"));
    for (auto& r : g.roots().roots) {
        auto s = g.e_set(r.root);
        EXPECT_GE(s.size(), 1u);
        EXPECT_LE(s.size(), 2u);
    }
}

TEST(Chevlie, WStarSuite) {
    for (std::string d : {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2"}) {
        ChevalleyAlgebra g(parse_diagram(d));
        for (const auto& line : wstar_checks(g)) EXPECT_TRUE(line.pass) << d << ": " << line.name << " " << line.detail;
    }
}

TEST(Chevlie, F4StabilizerCount) {
    auto a = parse_diagram("F4");
    std::vector<IntMatrix> images;
    for (const auto& gen : stabilizer_generators(a, 0)) {
        std::vector<std::size_t> plain;
        for (auto [k, e] : gen.word) plain.push_back(k);
        images.push_back(weyl_element_of_word(a, plain));
    }
    EXPECT_EQ(*int_group_order(images, 4, 100000), 48u);
}
