#include <gtest/gtest.h>

#include "amalgam/ring.hpp"

using namespace amalgam;

static FiniteRing fin(const std::string& s) { return std::get<FiniteRing>(parse_ring(s)); }

TEST(Ring, Parse) {
    EXPECT_EQ(fin("z/4").size(), 4u);
    EXPECT_EQ(fin("gf2").size(), 2u);
    EXPECT_EQ(fin("gf8=x^3+x+1").size(), 8u);
    EXPECT_EQ(fin("gf8=x^3+x+1").characteristic(), 2u);
    EXPECT_EQ(fin("gf9").modulus(), (std::vector<std::uint32_t>{1, 0, 1}));
    auto l = std::get<LaurentRing>(parse_ring("laurent(r;t,u)"));
    EXPECT_EQ(l.unit_vars(), std::vector<std::string>{"r"});
    EXPECT_EQ(l.poly_vars(), (std::vector<std::string>{"t", "u"}));
}

TEST(Ring, ParseErrors) {
    EXPECT_THROW(parse_ring("gf8=x^3+x^2+x+1"), InvalidDescriptor);  // (x+1)^3
    EXPECT_THROW(parse_ring("gf6"), InvalidDescriptor);
    EXPECT_THROW(parse_ring("gf8=x^2+x+1"), InvalidDescriptor);
    EXPECT_THROW(parse_ring("z/1"), InvalidDescriptor);
    EXPECT_THROW(parse_ring("q/5"), InvalidDescriptor);
    EXPECT_THROW(parse_ring("laurent(r;r)"), InvalidDescriptor);
}

TEST(Ring, GF4Multiplication) {
    auto f = fin("gf4=x^2+x+1");
    auto x = f.parse("x");
    EXPECT_EQ(f.format(f.mul(x, x)), "x+1");
    EXPECT_EQ(f.format(f.add(x, f.one())), "x+1");
    EXPECT_EQ(f.units().size(), 3u);
}

// Field axioms spot-checked against a naive polynomial model.
TEST(Ring, FieldAxioms) {
    for (std::string s : {"gf8=x^3+x+1", "gf9=x^2+1", "gf27=x^3+2x+1", "gf5"}) {
        auto f = fin(s);
        for (auto a : f.elements()) {
            if (a != 0) {
                ASSERT_TRUE(f.inverse(a)) << s;
                EXPECT_EQ(f.mul(a, *f.inverse(a)), f.one());
            }
            for (auto b : f.elements()) {
                EXPECT_EQ(f.mul(a, b), f.mul(b, a));
                for (auto c : {f.one(), f.size() - 1u})
                    EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            }
        }
    }
}

TEST(Ring, Units) {
    auto z = fin("z/12");
    EXPECT_EQ(z.units(), (std::vector<std::uint32_t>{1, 5, 7, 11}));
    auto u = units_with_inverses(parse_ring("z/9"));
    EXPECT_EQ(u.size(), 6u);
    for (auto [a, b] : u) EXPECT_EQ((a * b) % 9, 1u);
    EXPECT_THROW(units_with_inverses(parse_ring("laurent(r;t)")), InfiniteRing);
}

TEST(Ring, TinyQuotient) {
    EXPECT_TRUE(has_tiny_quotient(parse_ring("z/6"), 3));
    EXPECT_TRUE(has_tiny_quotient(parse_ring("z/6"), 2));
    EXPECT_FALSE(has_tiny_quotient(parse_ring("z/5"), 2));
    EXPECT_FALSE(has_tiny_quotient(parse_ring("gf4"), 2));
    EXPECT_TRUE(has_tiny_quotient(parse_ring("gf2"), 2));
    EXPECT_TRUE(has_tiny_quotient(parse_ring("z/4"), 2));
    EXPECT_TRUE(has_tiny_quotient(parse_ring("z/9"), 3));
    // GF(p^k) maps onto F_p iff k = 1.
    EXPECT_TRUE(has_tiny_quotient(parse_ring("gf3"), 3));
    EXPECT_FALSE(has_tiny_quotient(parse_ring("gf9"), 3));
    EXPECT_FALSE(has_tiny_quotient(parse_ring("gf27"), 3));
    EXPECT_FALSE(has_tiny_quotient(parse_ring("gf8"), 2));
    EXPECT_THROW(has_tiny_quotient(parse_ring("laurent(r;t)"), 2), InfiniteRing);
}

TEST(Ring, FrobeniusSqrt) {
    for (std::string s : {"gf2", "gf4", "gf8", "gf3", "gf9", "gf27"}) {
        auto f = fin(s);
        for (auto v : f.elements()) {
            auto w = frobenius_sqrt(f, v);
            EXPECT_EQ(f.pow(w, f.characteristic()), v) << s;
        }
    }
}

TEST(Ring, Laurent) {
    LaurentRing l({"r"}, {"t", "u"});
    auto r = l.var("r"), t = l.var("t"), u = l.var("u");
    auto rinv = *l.inverse(r);
    EXPECT_EQ(l.mul(r, rinv), l.one());
    EXPECT_EQ(l.pow(r, -2), l.mul(rinv, rinv));
    EXPECT_FALSE(l.inverse(t));
    EXPECT_FALSE(l.inverse(l.add(r, l.one())));
    auto p = l.mul(l.add(t, u), l.sub(t, u));
    EXPECT_EQ(p, l.sub(l.mul(t, t), l.mul(u, u)));
    EXPECT_EQ(l.format(l.add(l.mul(l.from_int(3), t), rinv)), "3*t + r^-1");
    EXPECT_TRUE(l.is_zero(l.sub(p, p)));
    // Coefficients are unbounded.
    auto big = l.pow(l.add(t, l.one()), 80);
    EXPECT_EQ(big.terms().size(), 81u);
    EXPECT_EQ(big.terms()[40].second.str(), "107507208733336176461620");
}
