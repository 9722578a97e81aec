#include <gtest/gtest.h>

#include <set>

#include "amalgam/present.hpp"

using namespace amalgam;

static FiniteRing fin(const std::string& s) { return std::get<FiniteRing>(parse_ring(s)); }

template <class Ring>
static std::string key(const CartanMatrix& a, const Ring& r, const Relator<typename Ring::Elem>& rel) {
    std::string k = std::to_string(rel.batch) + "|" + rel.family + "|";
    for (auto v : rel.nodes) k += a.name(v) + ",";
    k += "|";
    for (const auto& t : rel.params) k += r.format(t) + ",";
    return k + "|" + word_to_string(a, r, rel.word);
}

TEST(Present, A1OverZ2Counts) {
    auto p = emit_presentation(parse_diagram("A1"), fin("z/2"));
    EXPECT_EQ(p.generators.size(), 3u);
    EXPECT_EQ(p.count(0), 0u);
    EXPECT_EQ(p.count(1), 4u);
    EXPECT_EQ(p.count(2), 2u);
    EXPECT_EQ(p.count(3), 0u);
    EXPECT_EQ(p.count(4), 5u);  // h~(1) on X and on S X S^-1 for t in {0,1}, plus collapse
    EXPECT_EQ(p.count(kKacMoodyBatch), 0u);
}

TEST(Present, PerNodeCounts) {
    auto r = fin("gf4");
    auto p = emit_presentation(parse_diagram("A1"), r, {.kac_moody = true});
    EXPECT_EQ(p.count(1), 16u);
    EXPECT_EQ(p.count(kKacMoodyBatch), 9u);
    auto sparse = emit_presentation(parse_diagram("A1"), r, {.sparse = true});
    EXPECT_EQ(sparse.count(1), 4u * 2u);  // GF(4) is generated additively by 1 and x
}

TEST(Present, AtMostTwoNodes) {
    for (std::string d : {"A2", "B3", "G2", "A2~", "D4", "A1+A1"}) {
        auto p = emit_presentation(parse_diagram(d), fin("z/2"));
        for (const auto& rel : p.relators) EXPECT_LE(word_nodes(rel.word).size(), 2u) << d;
    }
    EXPECT_EQ(emit_presentation(parse_diagram("A2"), fin("z/2")).generators.size(), 6u);
}

TEST(Present, A2WeylRelators) {
    auto a = parse_diagram("A2");
    auto r = fin("z/3");
    auto p = emit_presentation(a, r);
    std::vector<std::string> batch0;
    for (const auto& rel : p.relators)
        if (rel.batch == 0) batch0.push_back(word_to_string(a, r, rel.word));
    EXPECT_EQ(batch0, (std::vector<std::string>{"S1 S2 S1 S2^-1 S1^-1 S2^-1", "S1 S1 S2 S1^-1 S1^-1 S2",
                                                "S2 S2 S1 S2^-1 S2^-1 S1"}));
}

TEST(Present, B2EvenSquareAction) {
    // Node 1 is short.  S_s^2 commutes with S_l, S_l^2 inverts S_s.
    auto a = parse_diagram("B2");
    auto r = fin("z/2");
    auto p = emit_presentation(a, r);
    std::set<std::string> words;
    for (const auto& rel : p.relators) words.insert(word_to_string(a, r, rel.word));
    EXPECT_TRUE(words.count("S1 S1 S2 S1^-1 S1^-1 S2^-1"));
    EXPECT_TRUE(words.count("S2 S2 S1 S2^-1 S2^-1 S1"));
    // S S' S commutes with X'(t).
    EXPECT_TRUE(words.count("S1 S2 S1 X2(1) S1^-1 S2^-1 S1^-1 X2(1)^-1"));
}

TEST(Present, Collapse) {
    auto a = parse_diagram("A2");
    auto r = fin("z/2");
    auto p = emit_presentation(a, r);
    std::set<std::string> words;
    for (const auto& rel : p.relators)
        if (rel.family == "collapse") words.insert(word_to_string(a, r, rel.word));
    EXPECT_TRUE(words.count("S1 X1(1)^-1 S1 X1(1)^-1 S1^-1 X1(1)^-1"));
}

TEST(Present, InfiniteEdge) {
    auto a = parse_diagram("A1~");
    EXPECT_THROW(chevalley_relators(a, fin("z/2"), 0, 1), UnsupportedEdge);
    auto p = emit_presentation(a, fin("z/2"));
    EXPECT_EQ(p.count(3), 0u);
    EXPECT_GT(p.count(0), 0u);
}

// The full relator set equals the union of the emissions of the rank <= 2
// subdiagrams.
TEST(Present, CurtisTits) {
    for (std::string d : {"A3", "B3", "G2", "A2~", "A1~", "D4", "A1+B2", "C3"}) {
        auto a = parse_diagram(d);
        auto r = fin("z/2");
        auto p = emit_presentation(a, r);
        std::set<std::string> full, uni;
        for (const auto& rel : p.relators) full.insert(key(a, r, rel));
        for (const auto& rel : subdiagram_union(a, r)) uni.insert(key(a, r, rel));
        EXPECT_EQ(full, uni) << d;
        EXPECT_EQ(full.size(), p.relators.size()) << d;
    }
}

TEST(Present, PruneCounts) {
    auto m2 = [](const std::string& d) { return prune_keep(parse_diagram(d)).m2.size(); };
    auto m3 = [](const std::string& d) { return prune_keep(parse_diagram(d)).m3.size(); };
    EXPECT_EQ(m2("D4"), 3u);
    for (std::string d : {"B4", "C4", "D5"}) EXPECT_EQ(m2(d), 2u) << d;
    for (std::string d : {"A3", "A5", "B3", "C3", "E6", "E7", "F4"}) EXPECT_EQ(m2(d), 1u) << d;
    EXPECT_EQ(m3("F4"), 4u);
    for (std::string d : {"A2", "A3", "A5", "B3", "C4"}) EXPECT_EQ(m3(d), 2u) << d;
    for (std::string d : {"D4", "D5", "E6", "E8"}) EXPECT_EQ(m3(d), 1u) << d;
}

TEST(Present, PruneDropsOnlyBatch3) {
    auto a = parse_diagram("A3");
    auto r = fin("z/2");
    auto full = emit_presentation(a, r);
    auto pr = emit_presentation(a, r, {.prune = true});
    for (int b : {0, 1, 2, 4}) EXPECT_EQ(full.count(b), pr.count(b));
    // 2 of 4 ordered m = 3 pairs remain, each with two families over R x R.
    EXPECT_EQ(pr.count(3), 4u + 2u * 2u * 4u);
    EXPECT_EQ(full.count(3), 4u + 4u * 2u * 4u);
}

TEST(Present, TableMode) {
    auto a = parse_diagram("A3");
    auto r = fin("z/2");
    auto p = emit_presentation(a, r, {.table1 = true});
    std::set<std::string> fams;
    for (const auto& rel : p.relators) fams.insert(rel.family);
    EXPECT_EQ(fams.size(), 12u);
    EXPECT_THROW(emit_presentation(parse_diagram("A1+A2"), r, {.table1 = true}), NotSupported);
    EXPECT_THROW(emit_presentation(parse_diagram("B2"), r, {.table1 = true}), NotSupported);
}

TEST(Present, Symbolic) {
    auto l = std::get<LaurentRing>(parse_ring("laurent(r;t,u)"));
    auto p = emit_presentation(parse_diagram("A1"), l);
    EXPECT_EQ(p.count(1), 1u);
    auto a = parse_diagram("A1");
    bool found = false;
    for (const auto& rel : p.relators)
        if (rel.family == "torus_x") {
            found = true;
            EXPECT_EQ(word_to_string(a, l, {rel.word.back()}), "X1(r^2*t)^-1");
        }
    EXPECT_TRUE(found);
}

TEST(Present, Export) {
    auto p = emit_presentation(parse_diagram("A1"), fin("z/2"));
    auto j = to_json(p);
    EXPECT_EQ(j["generators"], (nlohmann::ordered_json{"S1", "X1_0", "X1_1"}));
    EXPECT_EQ(j["relators"].size(), p.relators.size());
    EXPECT_EQ(j["relators"][0]["batch"], 1);
    auto gap = to_gap(p);
    EXPECT_NE(gap.find("F := FreeGroup(3);"), std::string::npos);
    EXPECT_NE(gap.find("# F.2 = X1_0"), std::string::npos);
    EXPECT_NE(gap.find("rels := ["), std::string::npos);
    EXPECT_EQ(gap, to_gap(emit_presentation(parse_diagram("A1"), fin("z/2"))));
}
