#pragma once

// Coefficient rings: Z/n, GF(p^k) from an explicit irreducible polynomial,
// and symbolic Laurent polynomial rings Z[r^{+-1},...; t,...].
//
// Every ring type exposes the same small interface (Elem, zero, one,
// from_int, add, sub, neg, mul, pow, inverse, is_zero, format) so matrix and
// word code is written once as templates.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "amalgam/errors.hpp"

namespace amalgam {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Finite rings

class FiniteRing {
public:
    using Elem = std::uint32_t;
    enum class Kind { ZmodN, GaloisField };

    static constexpr std::size_t kMaxSize = 1024;

    static FiniteRing zmod(std::uint32_t n) {
        if (n < 2) throw InvalidDescriptor("Z/n needs n >= 2");
        if (n > kMaxSize) throw InvalidDescriptor("ring too large for table arithmetic");
        FiniteRing r;
        r.kind_ = Kind::ZmodN;
        r.n_ = n;
        r.p_ = n;
        r.k_ = 1;
        r.build_tables();
        return r;
    }

    // modulus: coefficients c_0..c_k of a monic irreducible polynomial over F_p.
    static FiniteRing galois(std::uint32_t p, std::vector<std::uint32_t> modulus) {
        if (p < 2 || smallest_prime_factor(p) != p) throw InvalidDescriptor("characteristic must be prime");
        if (modulus.size() < 2) throw InvalidDescriptor("modulus must have degree >= 1");
        for (auto& c : modulus) c %= p;
        if (modulus.back() != 1) throw InvalidDescriptor("modulus must be monic");
        if (!is_irreducible(p, modulus)) throw InvalidDescriptor("modulus is reducible over F_p");
        FiniteRing r;
        r.kind_ = Kind::GaloisField;
        r.p_ = p;
        r.k_ = static_cast<std::uint32_t>(modulus.size() - 1);
        std::uint64_t n = 1;
        for (std::uint32_t i = 0; i < r.k_; ++i) {
            n *= p;
            if (n > kMaxSize) throw InvalidDescriptor("ring too large for table arithmetic");
        }
        r.n_ = static_cast<std::uint32_t>(n);
        r.modulus_ = std::move(modulus);
        r.build_tables();
        return r;
    }

    // Lexicographically first monic irreducible polynomial of degree k.
    static std::vector<std::uint32_t> first_irreducible(std::uint32_t p, std::uint32_t k) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < k; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            std::vector<std::uint32_t> poly(k + 1, 0);
            poly[k] = 1;
            auto c = code;
            for (std::uint32_t i = 0; i < k; ++i) poly[i] = c % p, c /= p;
            if (is_irreducible(p, poly)) return poly;
        }
        throw InvalidDescriptor("no irreducible polynomial found");
    }

    Kind kind() const { return kind_; }
    std::uint32_t size() const { return n_; }
    std::uint32_t characteristic() const { return p_; }
    std::uint32_t degree() const { return k_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    bool is_finite() const { return true; }
    bool is_field() const { return kind_ == Kind::GaloisField || (smallest_prime_factor(n_) == n_); }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(long long v) const {
        long long m = static_cast<long long>(kind_ == Kind::ZmodN ? n_ : p_);
        long long r = v % m;
        if (r < 0) r += m;
        return static_cast<Elem>(r);
    }
    Elem add(Elem a, Elem b) const { return add_[a * n_ + b]; }
    Elem mul(Elem a, Elem b) const { return mul_[a * n_ + b]; }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    bool is_zero(Elem a) const { return a == 0; }
    bool equal(Elem a, Elem b) const { return a == b; }
    std::optional<Elem> inverse(Elem a) const {
        if (inv_[a] < 0) return std::nullopt;
        return static_cast<Elem>(inv_[a]);
    }
    bool is_unit(Elem a) const { return inv_[a] >= 0; }

    Elem pow(Elem a, long long e) const {
        if (e < 0) {
            auto inv = inverse(a);
            if (!inv) throw ArithmeticError("negative power of a non-unit");
            a = *inv;
            e = -e;
        }
        Elem r = one();
        while (e > 0) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    std::vector<Elem> elements() const {
        std::vector<Elem> v(n_);
        for (Elem i = 0; i < n_; ++i) v[i] = i;
        return v;
    }

    // Parameter values substituted for the t-slot / u-slot of a relator
    // family; for finite rings that is every element.
    std::vector<Elem> parameter_values(int /*slot*/) const { return elements(); }
    std::vector<Elem> parameter_units(int /*slot*/) const { return units(); }

    std::vector<Elem> units() const {
        std::vector<Elem> v;
        for (Elem i = 0; i < n_; ++i)
            if (inv_[i] >= 0) v.push_back(i);
        return v;
    }

    std::string format(Elem a) const {
        if (kind_ == Kind::ZmodN || k_ == 1) return std::to_string(a);
        std::vector<std::uint32_t> c = digits(a);
        std::string out;
        for (int i = static_cast<int>(k_) - 1; i >= 0; --i) {
            if (c[i] == 0) continue;
            if (!out.empty()) out += "+";
            if (i == 0 || c[i] != 1) out += std::to_string(c[i]);
            if (i >= 1) out += "x";
            if (i >= 2) out += "^" + std::to_string(i);
        }
        return out.empty() ? "0" : out;
    }

    // Identifier-safe label used in generator names.
    std::string label(Elem a) const { return std::to_string(a); }

    Elem parse(const std::string& text) const {
        auto coeffs = parse_poly(text, p_);
        if (kind_ == Kind::ZmodN) {
            if (coeffs.size() > 1) throw InvalidDescriptor("Z/n elements are integers");
            long long v = 0;
            try {
                v = std::stoll(trim_copy(text));
            } catch (...) {
                throw InvalidDescriptor("cannot parse element '" + text + "'");
            }
            return from_int(v);
        }
        return reduce(coeffs);
    }

    std::string descriptor() const {
        if (kind_ == Kind::ZmodN) return "z/" + std::to_string(n_);
        std::string s = "gf" + std::to_string(n_);
        if (k_ > 1) s += "=" + poly_to_string(modulus_);
        return s;
    }

    bool operator==(const FiniteRing& o) const {
        return kind_ == o.kind_ && n_ == o.n_ && modulus_ == o.modulus_;
    }

    static std::uint32_t smallest_prime_factor(std::uint32_t n) {
        for (std::uint32_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return d;
        return n;
    }

    static std::string poly_to_string(const std::vector<std::uint32_t>& c) {
        std::string out;
        for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
            if (c[i] == 0) continue;
            if (!out.empty()) out += "+";
            if (i == 0 || c[i] != 1) out += std::to_string(c[i]);
            if (i >= 1) out += "x";
            if (i >= 2) out += "^" + std::to_string(i);
        }
        return out.empty() ? "0" : out;
    }

    // Parses "x^3+2x+1" style polynomials; returns coefficients mod p.
    static std::vector<std::uint32_t> parse_poly(const std::string& text, std::uint32_t p) {
        std::string s;
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
        if (s.empty()) throw InvalidDescriptor("empty polynomial");
        static const std::regex term_re(R"(([+-]?)(\d*)\*?(x(\^(\d+))?)?)");
        std::map<std::uint32_t, long long> acc;
        std::size_t pos = 0;
        while (pos < s.size()) {
            std::smatch m;
            std::string rest = s.substr(pos);
            if (!std::regex_search(rest, m, term_re, std::regex_constants::match_continuous) || m.length(0) == 0)
                throw InvalidDescriptor("cannot parse polynomial '" + text + "'");
            if (m[2].str().empty() && m[3].str().empty()) throw InvalidDescriptor("cannot parse polynomial '" + text + "'");
            long long coef = m[2].str().empty() ? 1 : std::stoll(m[2].str());
            if (m[1].str() == "-") coef = -coef;
            std::uint32_t e = 0;
            if (!m[3].str().empty()) e = m[5].str().empty() ? 1 : static_cast<std::uint32_t>(std::stoul(m[5].str()));
            acc[e] += coef;
            pos += static_cast<std::size_t>(m.length(0));
        }
        std::uint32_t deg = acc.rbegin()->first;
        std::vector<std::uint32_t> c(deg + 1, 0);
        for (auto [e, v] : acc) {
            long long r = v % static_cast<long long>(p);
            if (r < 0) r += p;
            c[e] = static_cast<std::uint32_t>(r);
        }
        while (c.size() > 1 && c.back() == 0) c.pop_back();
        return c;
    }

    // Brute force: no monic factor of degree 1..k/2 divides.
    static bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly) {
        const std::size_t k = poly.size() - 1;
        for (std::size_t d = 1; d <= k / 2; ++d) {
            std::uint64_t count = 1;
            for (std::size_t i = 0; i < d; ++i) count *= p;
            for (std::uint64_t code = 0; code < count; ++code) {
                std::vector<std::uint32_t> f(d + 1, 0);
                f[d] = 1;
                auto c = code;
                for (std::size_t i = 0; i < d; ++i) f[i] = c % p, c /= p;
                if (poly_mod(p, poly, f).empty()) return false;
            }
        }
        return true;
    }

private:
    Kind kind_ = Kind::ZmodN;
    std::uint32_t n_ = 0, p_ = 0, k_ = 1;
    std::vector<std::uint32_t> modulus_;
    std::vector<Elem> add_, mul_, neg_;
    std::vector<std::int32_t> inv_;

    static std::string trim_copy(const std::string& s) {
        auto b = s.find_first_not_of(" \t");
        auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? "" : s.substr(b, e - b + 1);
    }

    // Remainder of a by monic f over F_p, trailing zeros stripped.
    static std::vector<std::uint32_t> poly_mod(std::uint32_t p, std::vector<std::uint32_t> a,
                                               const std::vector<std::uint32_t>& f) {
        const std::size_t d = f.size() - 1;
        while (a.size() > d) {
            std::uint32_t lead = a.back();
            std::size_t shift = a.size() - 1 - d;
            for (std::size_t i = 0; i <= d; ++i) a[shift + i] = (a[shift + i] + (p - lead) * f[i]) % p;
            a.pop_back();
        }
        while (!a.empty() && a.back() == 0) a.pop_back();
        return a;
    }

    std::vector<std::uint32_t> digits(Elem a) const {
        std::vector<std::uint32_t> c(k_, 0);
        for (std::uint32_t i = 0; i < k_; ++i) c[i] = a % p_, a /= p_;
        return c;
    }

    Elem encode(const std::vector<std::uint32_t>& c) const {
        Elem v = 0;
        for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * p_ + c[i];
        return v;
    }

    Elem reduce(std::vector<std::uint32_t> c) const {
        auto r = poly_mod(p_, std::move(c), modulus_);
        r.resize(k_, 0);
        return encode(r);
    }

    void build_tables() {
        add_.assign(std::size_t(n_) * n_, 0);
        mul_.assign(std::size_t(n_) * n_, 0);
        neg_.assign(n_, 0);
        inv_.assign(n_, -1);
        for (Elem a = 0; a < n_; ++a) {
            for (Elem b = 0; b < n_; ++b) {
                Elem s, m;
                if (kind_ == Kind::ZmodN) {
                    s = (a + b) % n_;
                    m = static_cast<Elem>((std::uint64_t(a) * b) % n_);
                } else {
                    auto da = digits(a), db = digits(b);
                    std::vector<std::uint32_t> sum(k_), prod(2 * k_ - 1, 0);
                    for (std::uint32_t i = 0; i < k_; ++i) sum[i] = (da[i] + db[i]) % p_;
                    for (std::uint32_t i = 0; i < k_; ++i)
                        for (std::uint32_t j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
                    s = encode(sum);
                    m = reduce(prod);
                }
                add_[a * n_ + b] = s;
                mul_[a * n_ + b] = m;
            }
        }
        for (Elem a = 0; a < n_; ++a)
            for (Elem b = 0; b < n_; ++b) {
                if (add_[a * n_ + b] == 0) neg_[a] = b;
                if (mul_[a * n_ + b] == 1) inv_[a] = static_cast<std::int32_t>(b);
            }
    }
};

// ---------------------------------------------------------------------------
// Symbolic Laurent polynomials over Z

inline constexpr std::size_t kMaxVars = 6;

struct Monomial {
    std::array<std::int16_t, kMaxVars> e{};
    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;
    bool is_one() const {
        for (auto x : e)
            if (x) return false;
        return true;
    }
};

class LaurentPoly {
public:
    using Term = std::pair<Monomial, BigInt>;

    LaurentPoly() = default;
    explicit LaurentPoly(BigInt c) {
        if (c != 0) terms_.push_back({Monomial{}, std::move(c)});
    }
    static LaurentPoly monomial(const Monomial& m, BigInt c = 1) {
        LaurentPoly p;
        if (c != 0) p.terms_.push_back({m, std::move(c)});
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first)) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || b.terms_[j].first < a.terms_[i].first) {
                r.terms_.push_back(b.terms_[j++]);
            } else {
                BigInt c = a.terms_[i].second + b.terms_[j].second;
                if (c != 0) r.terms_.push_back({a.terms_[i].first, std::move(c)});
                ++i, ++j;
            }
        }
        return r;
    }

    LaurentPoly operator-() const {
        LaurentPoly r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Term> prod;
        prod.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m;
                for (std::size_t v = 0; v < kMaxVars; ++v) m.e[v] = static_cast<std::int16_t>(ma.e[v] + mb.e[v]);
                prod.push_back({m, ca * cb});
            }
        std::sort(prod.begin(), prod.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
        LaurentPoly r;
        for (auto& t : prod) {
            if (!r.terms_.empty() && r.terms_.back().first == t.first) {
                r.terms_.back().second += t.second;
                if (r.terms_.back().second == 0) r.terms_.pop_back();
            } else {
                r.terms_.push_back(std::move(t));
            }
        }
        return r;
    }

    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
    bool operator<(const LaurentPoly& o) const {
        return std::lexicographical_compare(terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end());
    }

private:
    std::vector<Term> terms_;  // sorted by monomial, coefficients nonzero
};

class LaurentRing {
public:
    using Elem = LaurentPoly;

    LaurentRing(std::vector<std::string> unit_vars, std::vector<std::string> poly_vars)
        : units_(std::move(unit_vars)), polys_(std::move(poly_vars)) {
        if (units_.size() + polys_.size() > kMaxVars) throw InvalidDescriptor("too many variables");
        std::set<std::string> seen;
        for (const auto& v : names()) {
            if (v.empty() || !std::isalpha(static_cast<unsigned char>(v[0])))
                throw InvalidDescriptor("bad variable name '" + v + "'");
            if (!seen.insert(v).second) throw InvalidDescriptor("duplicate variable '" + v + "'");
        }
    }

    std::vector<std::string> names() const {
        auto v = units_;
        v.insert(v.end(), polys_.begin(), polys_.end());
        return v;
    }
    const std::vector<std::string>& unit_vars() const { return units_; }
    const std::vector<std::string>& poly_vars() const { return polys_; }
    bool is_finite() const { return false; }
    std::uint32_t characteristic() const { return 0; }

    Elem zero() const { return {}; }
    Elem one() const { return LaurentPoly(1); }
    Elem from_int(long long v) const { return LaurentPoly(BigInt(v)); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    bool is_zero(const Elem& a) const { return a.is_zero(); }
    bool equal(const Elem& a, const Elem& b) const { return a == b; }

    // Variable by name as a polynomial.
    Elem var(const std::string& name) const {
        auto nm = names();
        for (std::size_t i = 0; i < nm.size(); ++i)
            if (nm[i] == name) {
                Monomial m;
                m.e[i] = 1;
                return LaurentPoly::monomial(m);
            }
        throw InvalidDescriptor("unknown variable '" + name + "'");
    }

    // Units are +-(monomial in the unit variables).
    std::optional<Elem> inverse(const Elem& a) const {
        if (a.terms().size() != 1) return std::nullopt;
        const auto& [m, c] = a.terms()[0];
        if (c != 1 && c != -1) return std::nullopt;
        Monomial inv;
        for (std::size_t v = 0; v < kMaxVars; ++v) {
            if (v >= units_.size() && m.e[v] != 0) return std::nullopt;
            inv.e[v] = static_cast<std::int16_t>(-m.e[v]);
        }
        return LaurentPoly::monomial(inv, c);
    }
    bool is_unit(const Elem& a) const { return inverse(a).has_value(); }

    Elem pow(Elem a, long long e) const {
        if (e < 0) {
            auto inv = inverse(a);
            if (!inv) throw ArithmeticError("negative power of a non-unit");
            a = *inv;
            e = -e;
        }
        Elem r = one();
        while (e > 0) {
            if (e & 1) r = r * a;
            a = a * a;
            e >>= 1;
        }
        return r;
    }

    // The generic point: slot 0 is the first polynomial variable (t), slot 1
    // the second (u).  Unit slots use the unit variables the same way.
    std::vector<Elem> parameter_values(int slot) const {
        if (polys_.empty()) throw InfiniteRing("symbolic ring has no polynomial variable");
        return {var(polys_[std::min<std::size_t>(slot, polys_.size() - 1)])};
    }
    std::vector<Elem> parameter_units(int slot) const {
        if (units_.empty()) throw InfiniteRing("symbolic ring has no unit variable");
        return {var(units_[std::min<std::size_t>(slot, units_.size() - 1)])};
    }

    std::string format(const Elem& a) const {
        if (a.is_zero()) return "0";
        auto nm = names();
        std::string out;
        // Highest monomial first reads more naturally.
        for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
            const auto& [m, c] = *it;
            BigInt ac = c < 0 ? BigInt(-c) : c;
            std::string mono;
            for (std::size_t v = 0; v < nm.size(); ++v) {
                if (m.e[v] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += nm[v];
                if (m.e[v] != 1) mono += "^" + std::to_string(m.e[v]);
            }
            std::string term;
            if (mono.empty()) term = ac.str();
            else if (ac == 1) term = mono;
            else term = ac.str() + "*" + mono;
            if (out.empty()) out = (c < 0 ? "-" : "") + term;
            else out += (c < 0 ? " - " : " + ") + term;
        }
        return out;
    }

    std::string label(const Elem& a) const { return format(a); }

    std::string descriptor() const {
        std::string s = "laurent(";
        for (std::size_t i = 0; i < units_.size(); ++i) s += (i ? "," : "") + units_[i];
        s += ";";
        for (std::size_t i = 0; i < polys_.size(); ++i) s += (i ? "," : "") + polys_[i];
        return s + ")";
    }

private:
    std::vector<std::string> units_, polys_;
};

// ---------------------------------------------------------------------------
// Integers with overflow checks, for Lie algebra and Weyl group matrices.

class IntegerRing {
public:
    using Elem = long long;
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(long long v) const { return v; }
    Elem add(Elem a, Elem b) const {
        Elem r;
        if (__builtin_add_overflow(a, b, &r)) throw ArithmeticError("integer overflow");
        return r;
    }
    Elem sub(Elem a, Elem b) const {
        Elem r;
        if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticError("integer overflow");
        return r;
    }
    Elem neg(Elem a) const { return sub(0, a); }
    Elem mul(Elem a, Elem b) const {
        Elem r;
        if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticError("integer overflow");
        return r;
    }
    bool is_zero(Elem a) const { return a == 0; }
    bool equal(Elem a, Elem b) const { return a == b; }
    std::optional<Elem> inverse(Elem a) const {
        if (a == 1 || a == -1) return a;
        return std::nullopt;
    }
    Elem pow(Elem a, long long e) const {
        if (e < 0) {
            if (a != 1 && a != -1) throw ArithmeticError("negative power of a non-unit");
            e = -e;
        }
        Elem r = 1;
        while (e-- > 0) r = mul(r, a);
        return r;
    }
    std::string format(Elem a) const { return std::to_string(a); }
    std::uint32_t characteristic() const { return 0; }
};

// ---------------------------------------------------------------------------
// Descriptors

using AnyRing = std::variant<FiniteRing, LaurentRing>;

// Ring DSL: "z/4", "gf2", "gf8=x^3+x+1", "laurent(r;t,u)".  For a prime
// power q without a modulus, the lexicographically first monic irreducible
// polynomial is used.
inline AnyRing parse_ring(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    std::smatch m;
    static const std::regex zmod_re(R"([zZ]/(\d+))");
    static const std::regex gf_re(R"((?:gf|GF)\(?(\d+)\)?(?:=(.+))?)");
    static const std::regex laurent_re(R"(laurent\(([^;]*);([^)]*)\))");
    auto to_u32 = [&](const std::string& d) -> std::uint32_t {
        if (d.size() > 6) throw InvalidDescriptor("ring too large");
        return static_cast<std::uint32_t>(std::stoul(d));
    };
    if (std::regex_match(s, m, zmod_re)) return FiniteRing::zmod(to_u32(m[1].str()));
    if (std::regex_match(s, m, gf_re)) {
        std::uint32_t q = to_u32(m[1].str());
        if (q < 2) throw InvalidDescriptor("field size must be >= 2");
        std::uint32_t p = FiniteRing::smallest_prime_factor(q);
        std::uint32_t k = 0;
        for (std::uint32_t x = q; x > 1; x /= p) {
            if (x % p) throw InvalidDescriptor(std::to_string(q) + " is not a prime power");
            ++k;
        }
        std::vector<std::uint32_t> mod;
        if (m[2].matched) {
            mod = FiniteRing::parse_poly(m[2].str(), p);
            if (mod.size() != k + 1) throw InvalidDescriptor("modulus degree does not match field size");
        } else if (k == 1) {
            mod = {0, 1};
        } else {
            mod = FiniteRing::first_irreducible(p, k);
        }
        return FiniteRing::galois(p, mod);
    }
    if (std::regex_match(s, m, laurent_re)) {
        auto split = [](const std::string& x) {
            std::vector<std::string> out;
            std::stringstream ss(x);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty()) out.push_back(tok);
            return out;
        };
        return LaurentRing(split(m[1].str()), split(m[2].str()));
    }
    throw InvalidDescriptor("unrecognized ring '" + text + "'");
}

inline std::string ring_descriptor(const AnyRing& r) {
    return std::visit([](const auto& x) { return x.descriptor(); }, r);
}

// Units of a finite ring; symbolic rings have infinitely many.
inline std::vector<std::pair<FiniteRing::Elem, FiniteRing::Elem>> units_with_inverses(const AnyRing& r) {
    if (!std::holds_alternative<FiniteRing>(r)) throw InfiniteRing("symbolic rings have infinitely many units");
    const auto& f = std::get<FiniteRing>(r);
    std::vector<std::pair<FiniteRing::Elem, FiniteRing::Elem>> out;
    for (auto u : f.units()) out.push_back({u, *f.inverse(u)});
    return out;
}

// Ideal generated by a set of elements of a finite commutative ring.
inline std::set<FiniteRing::Elem> ideal_closure(const FiniteRing& r, const std::vector<FiniteRing::Elem>& gens) {
    std::set<FiniteRing::Elem> ideal{0};
    std::vector<FiniteRing::Elem> todo;
    auto add_elem = [&](FiniteRing::Elem x) {
        if (ideal.insert(x).second) todo.push_back(x);
    };
    for (auto g : gens)
        for (auto s : r.elements()) add_elem(r.mul(s, g));
    while (!todo.empty()) {
        auto x = todo.back();
        todo.pop_back();
        std::vector<FiniteRing::Elem> cur(ideal.begin(), ideal.end());
        for (auto y : cur) add_elem(r.add(x, y));
    }
    return ideal;
}

// True when R has a quotient onto F_q (q in {2, 3}): the ideal generated by
// q and all x^q - x is proper.
inline bool has_tiny_quotient(const FiniteRing& r, std::uint32_t q) {
    if (q != 2 && q != 3) throw InvalidDescriptor("tiny quotient is defined for q in {2, 3}");
    std::vector<FiniteRing::Elem> gens{r.from_int(q)};
    for (auto x : r.elements()) gens.push_back(r.sub(r.pow(x, q), x));
    return !ideal_closure(r, gens).count(r.one());
}

inline bool has_tiny_quotient(const AnyRing& r, std::uint32_t q) {
    if (!std::holds_alternative<FiniteRing>(r)) throw InfiniteRing("tiny quotient test needs a finite ring");
    return has_tiny_quotient(std::get<FiniteRing>(r), q);
}

// Inverse Frobenius on a finite field of characteristic p: v^(|R|/p).
inline FiniteRing::Elem frobenius_sqrt(const FiniteRing& r, FiniteRing::Elem v) {
    if (r.kind() != FiniteRing::Kind::GaloisField && !r.is_field()) throw NotAField("Frobenius root needs a field");
    return r.pow(v, r.size() / r.characteristic());
}

}  // namespace amalgam
