#include <gtest/gtest.h>

#include <set>

#include "amalgam/weyl.hpp"

using namespace amalgam;

// Independent oracle: the W-orbit of the simple roots, computed by closing
// under reflection matrices.
static std::set<RootVec> orbit_roots(const CartanMatrix& a) {
    std::set<RootVec> seen;
    std::vector<RootVec> todo;
    for (std::size_t i = 0; i < a.size(); ++i) {
        seen.insert(simple_root(a.size(), i));
        todo.push_back(simple_root(a.size(), i));
    }
    while (!todo.empty()) {
        auto r = todo.back();
        todo.pop_back();
        for (std::size_t j = 0; j < a.size(); ++j) {
            auto x = act(simple_reflection_matrix(a, j), r);
            if (seen.insert(x).second) todo.push_back(x);
        }
    }
    return seen;
}

TEST(Weyl, RootCounts) {
    const std::vector<std::pair<std::string, std::size_t>> cases{
        {"A2", 6}, {"B2", 8}, {"G2", 12}, {"A3", 12}, {"B3", 18}, {"C3", 18}, {"F4", 48}, {"D4", 24}, {"E6", 72}};
    for (auto& [d, n] : cases) {
        auto a = parse_diagram(d);
        auto rs = finite_roots(a);
        EXPECT_EQ(rs.roots.size(), n) << d;
        std::set<RootVec> got;
        for (auto& r : rs.roots) got.insert(r.root);
        EXPECT_EQ(got, orbit_roots(a)) << d;
    }
}

TEST(Weyl, G2PositiveRoots) {
    auto rs = finite_roots(parse_diagram("G2"));
    std::set<RootVec> pos;
    for (std::size_t i = 0; i < rs.positive_count(); ++i) pos.insert(rs.roots[i].root);
    EXPECT_EQ(pos, (std::set<RootVec>{{1, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}, {3, 2}}));
}

TEST(Weyl, Coroots) {
    auto a = parse_diagram("B2");
    auto rs = finite_roots(a);
    for (auto& r : rs.roots) {
        EXPECT_EQ(pairing(a, r.coroot, r.root), 2);
        // s_r is an involution preserving the root set.
        for (auto& x : rs.roots) {
            RootVec y = x.root - pairing(a, r.coroot, x.root) * r.root;
            EXPECT_TRUE(rs.contains(y));
        }
    }
    // Long root 2s+l and short root s+l.
    EXPECT_EQ(rs.at({2, 1}).coroot, (RootVec{1, 1}));
    EXPECT_EQ(rs.at({1, 1}).coroot, (RootVec{1, 2}));
}

TEST(Weyl, AffineBound) {
    auto a = parse_diagram("[[2,-2],[-2,2]]");
    auto rs = enumerate_roots(a, 3);
    std::set<RootVec> got;
    for (auto& r : rs.roots) got.insert(r.root);
    std::set<RootVec> want;
    for (RootVec v : {RootVec{1, 0}, {0, 1}, {2, 1}, {1, 2}, {3, 2}, {2, 3}}) {
        want.insert(v);
        want.insert(-v);
    }
    EXPECT_EQ(got, want);
    EXPECT_FALSE(rs.complete);
}

TEST(Weyl, Rank2Types) {
    auto b2 = parse_diagram("B2");
    auto rs = finite_roots(b2);
    EXPECT_EQ(rank2_type(b2, rs, {1, 0}, {0, 1}), Rank2Kind::B2);
    EXPECT_EQ(rank2_type(b2, rs, {0, 1}, {2, 1}), Rank2Kind::B2);  // orthogonal long roots span B2
    EXPECT_EQ(rank2_type(b2, rs, {1, 0}, {-1, 0}), Rank2Kind::A1);
    auto a3 = parse_diagram("A3");
    auto r3 = finite_roots(a3);
    EXPECT_EQ(rank2_type(a3, r3, {1, 0, 0}, {0, 0, 1}), Rank2Kind::A1xA1);
    EXPECT_EQ(rank2_type(a3, r3, {1, 0, 0}, {0, 1, 1}), Rank2Kind::A2);
    auto g2 = parse_diagram("G2");
    EXPECT_EQ(rank2_type(g2, finite_roots(g2), {1, 0}, {0, 1}), Rank2Kind::G2);
    auto aff = parse_diagram("A1~");
    EXPECT_EQ(rank2_type(aff, enumerate_roots(aff, 4), {1, 0}, {0, 1}), Rank2Kind::Infinite);
}

TEST(Weyl, ClassifyPair) {
    auto aff = parse_diagram("A1~");
    auto rs = enumerate_roots(aff, 6);
    auto c = classify_pair(aff, rs, {1, 0}, {0, 1});
    EXPECT_EQ(c.kind, PairClass::NotPrenilpotent);
    // alpha_1 and alpha_1 + 2 delta: a translation pushes both below zero.
    auto c2 = classify_pair(aff, rs, {1, 0}, {3, 2});
    EXPECT_EQ(c2.kind, PairClass::PrenilpotentOnly);
    auto b2 = parse_diagram("B2");
    auto c3 = classify_pair(b2, finite_roots(b2), {1, 0}, {0, 1});
    EXPECT_EQ(c3.kind, PairClass::ClassicallyPrenilpotent);
    EXPECT_EQ(c3.type, Rank2Kind::B2);
    EXPECT_EQ(classify_pair(b2, finite_roots(b2), {1, 0}, {-1, 0}).kind, PairClass::NotPrenilpotent);
    EXPECT_THROW(classify_pair(b2, finite_roots(b2), {1, 0}, {5, 5}), NotRealRoots);
}

TEST(Weyl, Theta) {
    auto b2 = parse_diagram("B2");
    auto rs = finite_roots(b2);
    EXPECT_EQ(theta(b2, rs, {1, 0}, {0, 1}), (std::vector<RootVec>{{1, 0}, {0, 1}, {1, 1}, {2, 1}}));
    auto aff = parse_diagram("A1~");
    EXPECT_THROW(theta(aff, enumerate_roots(aff, 5), {1, 0}, {0, 1}), PairNotClassicallyPrenilpotent);
}

TEST(Weyl, GroupOrders) {
    EXPECT_EQ(*weyl_group_order(parse_diagram("F4")), 1152u);
    EXPECT_EQ(*weyl_group_order(parse_diagram("G2")), 12u);
    EXPECT_EQ(*weyl_group_order(parse_diagram("B3")), 48u);
    EXPECT_EQ(*weyl_group_order(parse_diagram("D4")), 192u);
    EXPECT_FALSE(weyl_group_order(parse_diagram("A1~"), 500));
    auto w = weyl_element_of_word(parse_diagram("A2"), {0, 1});
    EXPECT_EQ(act(w, {1, 0}), (RootVec{0, 1}));
}
