#include <gtest/gtest.h>

#include <set>

#include "amalgam/fpgroup.hpp"
#include "amalgam/verify.hpp"

using namespace amalgam;

static FiniteRing fin(const std::string& s) { return std::get<FiniteRing>(parse_ring(s)); }

static Matrix<FiniteRing> mat2(const FiniteRing& r, long long a, long long b, long long c, long long d) {
    return {2, {r.from_int(a), r.from_int(b), r.from_int(c), r.from_int(d)}};
}

TEST(FpGroup, Reduce) {
    using L = Letter<FiniteRing::Elem>;
    L s{GenKind::S, 0, 0, 1}, si{GenKind::S, 0, 0, -1};
    L x{GenKind::X, 0, 1, 1}, xi{GenKind::X, 0, 1, -1};
    EXPECT_TRUE(reduce(Word<FiniteRing::Elem>{s, si}).empty());
    EXPECT_EQ(reduce(Word<FiniteRing::Elem>{x, xi, x}), (Word<FiniteRing::Elem>{x}));
    Word<FiniteRing::Elem> w{s, x, s};
    EXPECT_EQ(reduce(w), w);
    EXPECT_EQ(reduce(reduce(w)), reduce(w));
    EXPECT_EQ(fp_reduce(fp_parse("abBA")), std::vector<int>{});
    EXPECT_EQ(fp_cyclic_reduce(fp_parse("Aba")), fp_parse("b"));
    EXPECT_EQ(fp_parse("ab^-1"), fp_parse("aB"));
}

TEST(FpGroup, SmallOrders) {
    EXPECT_EQ(todd_coxeter({1, {fp_parse("aaa")}}).index, 3u);
    FpPresentation s3{2, {fp_parse("aa"), fp_parse("bb"), fp_parse("ababab")}};
    auto r = todd_coxeter(s3);
    EXPECT_TRUE(r.complete);
    EXPECT_EQ(r.index, 6u);
    EXPECT_EQ(todd_coxeter(s3, {fp_parse("a")}).index, 3u);

    // Coxeter presentation of Sym(4); the parabolic <a, b> is Sym(3).
    FpPresentation s4{3, {fp_parse("aa"), fp_parse("bb"), fp_parse("cc"), fp_parse("ababab"),
                          fp_parse("bcbcbc"), fp_parse("acac")}};
    EXPECT_EQ(todd_coxeter(s4).index, 24u);
    EXPECT_EQ(todd_coxeter(s4, {fp_parse("a"), fp_parse("b")}).index, 4u);

    // Binary-tetrahedral-type presentation <a, b | a^3, b^3, (ab)^2> is A4.
    EXPECT_EQ(todd_coxeter({2, {fp_parse("aaa"), fp_parse("bbb"), fp_parse("abab")}}).index, 12u);
}

TEST(FpGroup, CapOnInfiniteGroup) {
    auto r = todd_coxeter({2, {fp_parse("aa"), fp_parse("bb")}}, {}, 1000);
    EXPECT_FALSE(r.complete);
    EXPECT_GT(r.live_peak, 900u);
    auto again = todd_coxeter({2, {fp_parse("aa"), fp_parse("bb")}}, {}, 1000);
    EXPECT_EQ(r.defined, again.defined);
}

TEST(FpGroup, MatrixClosure) {
    auto f2 = fin("gf2");
    EXPECT_EQ(matrix_closure_order(f2, {mat2(f2, 1, 1, 0, 1), mat2(f2, 0, 1, -1, 0)}), 6u);
    auto f3 = fin("gf3");
    EXPECT_EQ(matrix_closure_order(f3, {mat2(f3, 1, 1, 0, 1), mat2(f3, 0, 1, -1, 0)}), 24u);
    // |SL2(F_q)| = q (q^2 - 1)
    auto f4 = fin("gf4");
    auto x = f4.parse("x");
    Matrix<FiniteRing> xa{2, {f4.one(), x, f4.zero(), f4.one()}};
    EXPECT_EQ(matrix_closure_order(f4, {mat2(f4, 1, 1, 0, 1), xa, mat2(f4, 0, 1, -1, 0)}), 60u);

    MatrixGroup g(f3, {mat2(f3, 1, 1, 0, 1)});
    EXPECT_EQ(g.order(), 3u);
    EXPECT_TRUE(g.contains(mat2(f3, 1, 2, 0, 1)));
    EXPECT_FALSE(g.contains(mat2(f3, 0, 1, -1, 0)));
    EXPECT_THROW(MatrixGroup(f3, {mat2(f3, 1, 1, 0, 1), mat2(f3, 0, 1, -1, 0)}, 10), CapExceeded);

    // Conjugating the generating set does not change the order.
    auto c = mat2(f3, 1, 0, 1, 1);
    auto ci = mat2(f3, 1, 0, -1, 1);
    EXPECT_EQ(matrix_closure_order(f3, {mul(f3, mul(f3, c, mat2(f3, 1, 1, 0, 1)), ci),
                                        mul(f3, mul(f3, c, mat2(f3, 0, 1, -1, 0)), ci)}),
              24u);
}

TEST(FpGroup, PositiveUnipotentB2) {
    auto a = parse_diagram("B2");
    auto f2 = fin("gf2");
    Evaluator<FiniteRing> ev(defining_rep(a), f2);
    WordKit<FiniteRing> k(f2);
    using K = WordKit<FiniteRing>;
    std::vector<Matrix<FiniteRing>> gens{ev.eval(k.x(0, 1)), ev.eval(k.x(1, 1)), ev.eval(K::conj(k.s(1), k.x(0, 1))),
                                         ev.eval(K::conj(k.s(0), k.x(1, 1)))};
    EXPECT_EQ(matrix_closure_order(f2, gens), 16u);
}

// Dihedral groups: <a, b | a^2, b^2, (ab)^n> against x -> -x, x -> 1 - x on Z/n.
TEST(FpGroup, AgreesWithMatrixClosure) {
    for (int n : {3, 4, 5, 6, 7}) {
        auto r = fin("z/" + std::to_string(n));
        auto order = matrix_closure_order(r, {mat2(r, -1, 0, 0, 1), mat2(r, -1, 1, 0, 1)});
        std::string ab;
        for (int k = 0; k < n; ++k) ab += "ab";
        auto tc = todd_coxeter({2, {fp_parse("aa"), fp_parse("bb"), fp_parse(ab)}});
        EXPECT_EQ(tc.index, order) << n;
        EXPECT_EQ(order, 2u * n);
    }
}

TEST(FpGroup, EmittedA1) {
    auto a = parse_diagram("A1");
    for (std::string f : {"gf2", "gf3"}) {
        auto r = fin(f);
        auto p = emit_presentation(a, r);
        auto tc = todd_coxeter(p);
        ASSERT_TRUE(tc.complete) << f;
        Evaluator<FiniteRing> ev(defining_rep(a), r);
        std::vector<Matrix<FiniteRing>> gens;
        for (const auto& g : p.generators) gens.push_back(ev.eval(Word<FiniteRing::Elem>{g}));
        auto image = matrix_closure_order(r, gens);
        EXPECT_EQ(image, f == "gf2" ? 6u : 24u);
        EXPECT_EQ(tc.index % image, 0u) << f;
    }
}

TEST(FpGroup, NodeSubgroup) {
    auto p = emit_presentation(parse_diagram("A2"), fin("gf2"));
    auto h = node_subgroup(p, {0});
    EXPECT_EQ(h.size(), 3u);
    auto tc = todd_coxeter(p, h);
    ASSERT_TRUE(tc.complete);
    auto full = todd_coxeter(p);
    ASSERT_TRUE(full.complete);
    EXPECT_EQ(full.index % 168u, 0u);
    EXPECT_EQ(full.index % tc.index, 0u);
}
