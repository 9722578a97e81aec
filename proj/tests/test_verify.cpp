#include <gtest/gtest.h>

#include "amalgam/verify.hpp"

using namespace amalgam;

static FiniteRing fin(const std::string& s) { return std::get<FiniteRing>(parse_ring(s)); }
static LaurentRing sym() { return std::get<LaurentRing>(parse_ring("laurent(r;t,u)")); }

TEST(Verify, RepDimensions) {
    const std::vector<std::pair<std::string, std::size_t>> cases{
        {"A1", 2}, {"A1+A1", 4}, {"A2", 3}, {"B2", 4}, {"G2", 7}, {"A3", 4}, {"C3", 6}, {"D4", 8}};
    for (auto& [d, n] : cases) {
        auto rep = defining_rep(parse_diagram(d));
        EXPECT_EQ(rep.dim, n) << d;
        EXPECT_TRUE(rep_relation_failures(rep).empty()) << d;
    }
    EXPECT_EQ(adjoint_rep(parse_diagram("G2")).dim, 14u);
    EXPECT_THROW(defining_rep(parse_diagram("F4")), NotSupported);
}

TEST(Verify, A1Defining) {
    auto a = parse_diagram("A1");
    auto rep = defining_rep(a);
    auto l = sym();
    Evaluator<LaurentRing> ev(rep, l);
    auto t = l.var("t"), r = l.var("r");
    WordKit<LaurentRing> k(l);
    auto x = ev.eval(k.x(0, t));
    EXPECT_EQ(x.a, (std::vector<LaurentPoly>{l.one(), t, l.zero(), l.one()}));
    auto s = ev.eval(k.s(0));
    EXPECT_EQ(s.a, (std::vector<LaurentPoly>{l.zero(), l.one(), l.from_int(-1), l.zero()}));
    auto h = ev.eval(k.h_tilde(0, r));
    EXPECT_EQ(h.a, (std::vector<LaurentPoly>{r, l.zero(), l.zero(), *l.inverse(r)}));
}

TEST(Verify, A1AdjointOnF) {
    ChevalleyAlgebra g(parse_diagram("A1"));
    auto l = sym();
    auto t = l.var("t");
    auto x = g.exp_ad(RootVec{1}, t, l);
    // Basis e, e_{-alpha}, h; f = -e_{-alpha}.
    std::vector<LaurentPoly> f{l.zero(), l.from_int(-1), l.zero()};
    auto img = apply(l, x, f);
    // f - t h + t^2 e
    EXPECT_EQ(img, (std::vector<LaurentPoly>{l.mul(t, t), l.from_int(-1), l.neg(t)}));
}

TEST(Verify, SymbolicAllBatches) {
    auto l = sym();
    for (std::string d : {"A1", "A1+A1", "A2", "B2", "G2"}) {
        auto a = parse_diagram(d);
        auto p = emit_presentation(a, l, {.kac_moody = true});
        for (std::string kind : {"defining", "adjoint"}) {
            auto rep = build_rep(a, kind);
            auto report = check_presentation(rep, p);
            EXPECT_EQ(report.failed, 0u) << d << " " << kind;
            EXPECT_EQ(report.passed, p.relators.size()) << d << " " << kind;
            for (const auto& c : report.results)
                if (!c.pass) ADD_FAILURE() << d << " " << kind << " " << c.family << ": " << c.detail;
        }
    }
}

TEST(Verify, TableModeSymbolic) {
    auto l = sym();
    auto a = parse_diagram("A2");
    auto p = emit_presentation(a, l, {.table1 = true});
    auto report = check_presentation(defining_rep(a), p);
    EXPECT_TRUE(report.ok());
}

// Flipping the sign of t^2 u in the B2 commutator relation must be caught.
TEST(Verify, Sabotage) {
    auto l = sym();
    auto a = parse_diagram("B2");
    auto t = l.var("t"), u = l.var("u");
    using K = WordKit<LaurentRing>;
    K k(l);
    auto tu = l.mul(t, u), t2u = l.mul(l.mul(t, t), u);
    auto good = K::eq(K::comm(k.x(0, t), k.x(1, u)), K::conj(k.s(1), k.x(0, l.neg(tu))) * K::conj(k.s(0), k.x(1, t2u)));
    auto bad = K::eq(K::comm(k.x(0, t), k.x(1, u)),
                     K::conj(k.s(1), k.x(0, l.neg(tu))) * K::conj(k.s(0), k.x(1, l.neg(t2u))));
    for (std::string kind : {"defining", "adjoint"}) {
        auto rep = build_rep(a, kind);
        EXPECT_TRUE(is_identity(l, eval_word(rep, l, good))) << kind;
        EXPECT_FALSE(is_identity(l, eval_word(rep, l, bad))) << kind;
    }
    auto p = emit_presentation(a, l);
    for (auto& rel : p.relators)
        if (rel.family == "b2_4") rel.word = free_reduce(bad);
    auto report = check_presentation(defining_rep(a), p);
    EXPECT_EQ(report.failed, 1u);
}

TEST(Verify, FiniteRingsLocal) {
    for (std::string d : {"A3", "B3", "A2~", "D4"}) {
        auto p = emit_presentation(parse_diagram(d), fin("z/4"));
        auto report = check_presentation_local(p);
        EXPECT_TRUE(report.ok()) << d;
        EXPECT_EQ(report.skipped, 0u) << d;
    }
    auto aff = emit_presentation(parse_diagram("A1~"), fin("z/2"));
    auto report = check_presentation_local(aff);
    EXPECT_TRUE(report.ok());
    EXPECT_GT(report.skipped, 0u);
}

TEST(Verify, DiagramEndomorphisms) {
    auto b2 = parse_diagram("B2");
    auto f8 = fin("gf8");
    WordKit<FiniteRing> k(f8);
    auto x = f8.parse("x");
    // phi(X_s(t)) = X_l(t^2), phi(X_l(u)) = X_s(u)
    EXPECT_EQ(apply_diagram_endo(EndoType::B2Char2, b2, f8, k.x(0, x)), k.x(1, f8.mul(x, x)));
    EXPECT_EQ(apply_diagram_endo(EndoType::B2Char2, b2, f8, k.x(1, x)), k.x(0, x));
    auto g2 = parse_diagram("G2");
    auto f9 = fin("gf9");
    EXPECT_EQ(apply_diagram_endo(EndoType::G2Char3, g2, f9, k.x(0, 3)), k.x(1, f9.pow(3, 3)));
    EXPECT_THROW(apply_diagram_endo(EndoType::B2Char2, b2, f9, k.x(0, 1)), WrongCharacteristic);
    EXPECT_THROW(apply_diagram_endo(EndoType::B2Char2, g2, f8, k.x(0, 1)), WrongDiagram);

    for (std::string f : {"gf2", "gf4", "gf8"})
        for (std::string kind : {"defining", "adjoint"}) {
            auto rep = check_endomorphism(EndoType::B2Char2, fin(f), kind);
            EXPECT_TRUE(rep.ok()) << f << " " << kind << " " << (rep.failures.empty() ? "" : rep.failures[0]);
            EXPECT_TRUE(rep.inverse_ok.value_or(false));
        }
    for (std::string f : {"gf3", "gf9"}) {
        auto rep = check_endomorphism(EndoType::G2Char3, fin(f));
        EXPECT_TRUE(rep.ok()) << f << " " << (rep.failures.empty() ? "" : rep.failures[0]);
    }
}

// Outside characteristic 2 the same substitution breaks some relators.
TEST(Verify, EndomorphismNeedsCharacteristic) {
    auto b2 = parse_diagram("B2");
    auto f = fin("z/4");
    auto p = emit_presentation(b2, f);
    auto rep = defining_rep(b2);
    Evaluator<FiniteRing> ev(rep, f);
    std::size_t broken = 0;
    for (const auto& rel : p.relators) {
        Word<FiniteRing::Elem> img;
        for (auto l : rel.word) {
            if (l.kind == GenKind::S) l.node = 1 - l.node;
            else if (l.node == 1) l.node = 0;
            else l.node = 1, l.t = f.mul(l.t, l.t);
            img.push_back(l);
        }
        if (!is_identity(f, ev.eval(img))) ++broken;
    }
    EXPECT_GT(broken, 0u);
}

TEST(Verify, UnipotentGeneration) {
    auto run = [](const std::string& d, const std::string& f, const std::string& gens) {
        auto a = parse_diagram(d);
        auto res = unipotent_generation_index(a, fin(f), parse_root_list(a, gens));
        EXPECT_EQ(res.closure_of_all, res.unipotent_order) << d << " " << f;
        EXPECT_EQ(res.index() == 1, res.abelian_index() == 1) << d << " " << f;
        return res;
    };
    auto idx = [&](const std::string& d, const std::string& f, const std::string& gens) {
        return run(d, f, gens).index();
    };
    EXPECT_EQ(idx("B2", "gf2", "s,l"), 2u);
    EXPECT_EQ(idx("B2", "gf3", "s,l"), 1u);
    EXPECT_EQ(idx("B2", "gf2", "s,l,s'"), 1u);
    EXPECT_EQ(idx("B2", "gf2", "s,l,l'"), 1u);
    // Over F2 the subgroup is dihedral of order 16 (x_s(1) x_l(1) has order
    // 8) inside |U| = 64; its image in the abelianization has index 2.
    EXPECT_EQ(idx("G2", "gf2", "s,l"), 4u);
    EXPECT_EQ(run("G2", "gf2", "s,l").abelian_index(), 2u);
    EXPECT_EQ(run("G2", "gf3", "s,l").abelian_index(), 3u);
    EXPECT_EQ(run("B2", "gf2", "s,l").abelian_index(), 2u);
    EXPECT_EQ(idx("G2", "gf3", "s,l"), 3u);
    EXPECT_EQ(idx("G2", "gf4", "s,l"), 1u);
    EXPECT_EQ(idx("G2", "gf3", "s,l,s'"), 1u);
    EXPECT_EQ(idx("A2", "gf2", "simple"), 1u);
    for (std::string d : {"A3", "B3", "C3"})
        for (std::string f : {"gf2", "gf3"}) EXPECT_EQ(idx(d, f, "beta+gamma"), 1u) << d << f;
    EXPECT_THROW(unipotent_generation_index(parse_diagram("A2"), fin("z/4"), {{1, 0}}), NotAField);
}

TEST(Verify, RootNames) {
    auto b2 = parse_diagram("B2");
    EXPECT_EQ(parse_root_list(b2, "s,l,s',l'"), (std::vector<RootVec>{{1, 0}, {0, 1}, {1, 1}, {2, 1}}));
    auto g2 = parse_diagram("G2");
    EXPECT_EQ(parse_root_list(g2, "s',s'',l',l''"), (std::vector<RootVec>{{1, 1}, {2, 1}, {3, 1}, {3, 2}}));
    EXPECT_EQ(parse_root_list(parse_diagram("A3"), "[1,1,0]"), (std::vector<RootVec>{{1, 1, 0}}));
    EXPECT_THROW(parse_root_list(b2, "q"), MalformedSpec);
}

// Independent oracle for G2 over F2: x_s(1) and x_l(1) are involutions, so
// they generate a dihedral group whose order is twice that of their product.
TEST(Verify, G2OverF2IsDihedral) {
    auto a = parse_diagram("G2");
    auto f = fin("gf2");
    WordKit<FiniteRing> k(f);
    for (std::string kind : {"defining", "adjoint"}) {
        Evaluator<FiniteRing> ev(build_rep(a, kind), f);
        auto xs = ev.eval(k.x(0, 1)), xl = ev.eval(k.x(1, 1));
        EXPECT_TRUE(is_identity(f, mul(f, xs, xs)));
        EXPECT_TRUE(is_identity(f, mul(f, xl, xl)));
        auto p = mul(f, xs, xl), q = p;
        int order = 1;
        while (!is_identity(f, q)) q = mul(f, q, p), ++order;
        EXPECT_EQ(order, 8) << kind;
        EXPECT_EQ(matrix_closure_order(f, {xs, xl}), 16u) << kind;
    }
}
