#pragma once

// Real roots, coroots, simple reflections and rank-2 subsystems.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "amalgam/cartan.hpp"
#include "amalgam/errors.hpp"
#include "amalgam/matrix.hpp"

namespace amalgam {

// Coordinates in the basis of simple roots (or simple coroots).
using RootVec = std::vector<int>;

inline RootVec simple_root(std::size_t n, std::size_t i) {
    RootVec v(n, 0);
    v[i] = 1;
    return v;
}

inline int height(const RootVec& v) { return std::accumulate(v.begin(), v.end(), 0); }

inline bool is_positive(const RootVec& v) {
    bool any = false;
    for (int x : v) {
        if (x < 0) return false;
        any = any || x > 0;
    }
    return any;
}

inline RootVec operator-(const RootVec& v) {
    RootVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
    return r;
}

inline RootVec operator+(const RootVec& a, const RootVec& b) {
    RootVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline RootVec operator-(const RootVec& a, const RootVec& b) { return a + (-b); }

inline RootVec operator*(int k, const RootVec& a) {
    RootVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = k * a[i];
    return r;
}

inline std::string root_to_string(const RootVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

// <x^vee, y> for a coroot x^vee and root y in simple coordinates.
inline int pairing(const CartanMatrix& a, const RootVec& coroot, const RootVec& root) {
    int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!coroot[i]) continue;
        for (std::size_t j = 0; j < a.size(); ++j) s += coroot[i] * root[j] * a(i, j);
    }
    return s;
}

// s_i(beta) = beta - <alpha_i^vee, beta> alpha_i
inline RootVec reflect_root(const CartanMatrix& a, std::size_t i, RootVec beta) {
    int c = pairing(a, simple_root(a.size(), i), beta);
    beta[i] -= c;
    return beta;
}

// s_i(x^vee) = x^vee - <x^vee, alpha_i> alpha_i^vee
inline RootVec reflect_coroot(const CartanMatrix& a, std::size_t i, RootVec x) {
    int c = pairing(a, x, simple_root(a.size(), i));
    x[i] -= c;
    return x;
}

struct Root {
    RootVec root;
    RootVec coroot;
    int depth = 0;  // depth of the positive root +-root
};

// Positive roots first (by height, then coordinates descending), followed by
// their negatives in the same order.
struct RootSet {
    std::vector<Root> roots;
    bool complete = false;  // enumeration stabilized below the bound
    std::map<RootVec, std::size_t> index;

    bool contains(const RootVec& v) const { return index.count(v) > 0; }
    const Root& at(const RootVec& v) const { return roots.at(index.at(v)); }
    std::size_t positive_count() const { return roots.size() / 2; }
};

// Real roots whose positive representative has depth <= bound.  The depth of
// a positive root is the least length of a Weyl element making it negative;
// simple roots have depth 1 and each depth-raising reflection adds 1.
inline RootSet enumerate_roots(const CartanMatrix& a, int bound) {
    const std::size_t n = a.size();
    std::map<RootVec, Root> pos;
    std::vector<RootVec> layer;
    if (bound >= 1)
        for (std::size_t i = 0; i < n; ++i) {
            auto r = simple_root(n, i);
            pos[r] = Root{r, r, 1};
            layer.push_back(r);
        }
    bool complete = true;
    for (int d = 1; !layer.empty(); ++d) {
        std::vector<RootVec> next;
        for (const auto& r : layer) {
            const auto& co = pos[r].coroot;
            for (std::size_t j = 0; j < n; ++j) {
                if (pairing(a, simple_root(n, j), r) >= 0) continue;
                auto r2 = reflect_root(a, j, r);
                if (pos.count(r2)) continue;
                if (d + 1 > bound) {
                    complete = false;
                    continue;
                }
                pos[r2] = Root{r2, reflect_coroot(a, j, co), d + 1};
                next.push_back(r2);
            }
        }
        layer = std::move(next);
    }
    if (bound < 1 && n > 0) complete = false;

    std::vector<Root> p;
    for (auto& [k, v] : pos) p.push_back(v);
    std::sort(p.begin(), p.end(), [](const Root& x, const Root& y) {
        if (height(x.root) != height(y.root)) return height(x.root) < height(y.root);
        return x.root > y.root;
    });
    RootSet rs;
    rs.complete = complete;
    for (auto& r : p) rs.roots.push_back(r);
    for (auto& r : p) rs.roots.push_back(Root{-r.root, -r.coroot, r.depth});
    for (std::size_t i = 0; i < rs.roots.size(); ++i) rs.index[rs.roots[i].root] = i;
    return rs;
}

// Full root system of a spherical diagram.
inline RootSet finite_roots(const CartanMatrix& a) {
    if (!is_spherical(a)) throw NotSpherical("diagram " + a.to_string() + " is not spherical");
    // Depth is bounded by the Coxeter number, at most 30 for E8.
    auto rs = enumerate_roots(a, 64);
    if (!rs.complete) throw NotSpherical("root enumeration did not stabilize");
    return rs;
}

// Matrix of the Weyl element s_{w_1} ... s_{w_k} on root coordinates.
inline IntMatrix simple_reflection_matrix(const CartanMatrix& a, std::size_t i) {
    auto m = int_identity(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) m(i, j) -= a(i, j);
    return m;
}

inline IntMatrix weyl_element_of_word(const CartanMatrix& a, const std::vector<std::size_t>& word) {
    auto m = int_identity(a.size());
    for (auto i : word) m = m * simple_reflection_matrix(a, i);
    return m;
}

inline RootVec act(const IntMatrix& w, const RootVec& v) {
    RootVec r(v.size(), 0);
    for (std::size_t i = 0; i < w.n; ++i)
        for (std::size_t j = 0; j < w.n; ++j) r[i] += static_cast<int>(w(i, j)) * v[j];
    return r;
}

// Closure of a set of matrices under multiplication (a finite group);
// returns nullopt past the cap.
inline std::optional<std::size_t> int_group_order(const std::vector<IntMatrix>& gens, std::size_t n, std::size_t cap) {
    std::set<std::vector<long long>> seen;
    std::queue<IntMatrix> q;
    auto id = int_identity(n);
    seen.insert(id.a);
    q.push(id);
    while (!q.empty()) {
        auto m = q.front();
        q.pop();
        for (const auto& g : gens) {
            auto x = m * g;
            if (seen.insert(x.a).second) {
                if (seen.size() > cap) return std::nullopt;
                q.push(x);
            }
        }
    }
    return seen.size();
}

// nullopt past the cap; entry overflow also means the group is infinite.
inline std::optional<std::size_t> weyl_group_order(const CartanMatrix& a, std::size_t cap = 1'000'000) {
    std::vector<IntMatrix> gens;
    for (std::size_t i = 0; i < a.size(); ++i) gens.push_back(simple_reflection_matrix(a, i));
    try {
        return int_group_order(gens, a.size(), cap);
    } catch (const ArithmeticError&) {
        return std::nullopt;
    }
}

enum class Rank2Kind { A1, A1xA1, A2, B2, G2, Infinite };

inline std::string to_string(Rank2Kind k) {
    switch (k) {
        case Rank2Kind::A1: return "A1";
        case Rank2Kind::A1xA1: return "A1xA1";
        case Rank2Kind::A2: return "A2";
        case Rank2Kind::B2: return "B2";
        case Rank2Kind::G2: return "G2";
        default: return "Infinite";
    }
}

namespace detail {

// Rank of the integer vectors (as rows), via fraction-free elimination.
inline int vector_rank(std::vector<std::vector<long long>> rows) {
    int rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == static_cast<std::size_t>(rank) || rows[r][c] == 0) continue;
            long long f = rows[r][c], g = rows[rank][c];
            for (std::size_t k = 0; k < cols; ++k) rows[r][k] = rows[r][k] * g - rows[rank][k] * f;
            long long d = 0;
            for (auto x : rows[r]) d = std::gcd(d, std::llabs(x));
            if (d > 1)
                for (auto& x : rows[r]) x /= d;
        }
        ++rank;
    }
    return rank;
}

inline bool in_span(const RootVec& x, const RootVec& y, const RootVec& z) {
    auto to = [](const RootVec& v) { return std::vector<long long>(v.begin(), v.end()); };
    int base = vector_rank({to(x), to(y)});
    return vector_rank({to(x), to(y), to(z)}) == base;
}

}  // namespace detail

// (Q alpha + Q beta) cap Phi among the enumerated roots, closed under the
// reflections in its own members.  The boolean reports that closing added
// roots beyond the enumeration or exceeded 12 roots.
inline std::pair<std::vector<Root>, bool> rank2_subsystem(const CartanMatrix& a, const RootSet& phi,
                                                          const RootVec& alpha, const RootVec& beta) {
    std::map<RootVec, Root> sub;
    for (const auto& r : phi.roots)
        if (detail::in_span(alpha, beta, r.root)) sub[r.root] = r;
    bool overflow = false;
    bool grew = true;
    while (grew && !overflow) {
        grew = false;
        std::vector<Root> cur;
        for (auto& [k, v] : sub) cur.push_back(v);
        for (const auto& g : cur)
            for (const auto& d : cur) {
                int c = pairing(a, g.coroot, d.root);
                int cc = pairing(a, d.coroot, g.root);
                Root img{d.root - c * g.root, d.coroot - cc * g.coroot, 0};
                if (!sub.count(img.root)) {
                    sub[img.root] = img;
                    grew = true;
                    if (!phi.contains(img.root)) overflow = true;
                }
            }
        if (sub.size() > 12) overflow = true;
    }
    std::vector<Root> out;
    for (auto& [k, v] : sub) out.push_back(v);
    return {out, overflow};
}

inline Rank2Kind rank2_type(const CartanMatrix& a, const RootSet& phi, const RootVec& alpha, const RootVec& beta) {
    if (!phi.contains(alpha) || !phi.contains(beta)) throw NotRealRoots("pair contains a non-root");
    if (alpha == beta || alpha == -beta) return Rank2Kind::A1;
    const auto& ra = phi.at(alpha);
    const auto& rb = phi.at(beta);
    if (pairing(a, ra.coroot, beta) * pairing(a, rb.coroot, alpha) >= 4) return Rank2Kind::Infinite;
    auto [sub, overflow] = rank2_subsystem(a, phi, alpha, beta);
    if (overflow) return Rank2Kind::Infinite;
    switch (sub.size()) {
        case 4: return Rank2Kind::A1xA1;
        case 6: return Rank2Kind::A2;
        case 8: return Rank2Kind::B2;
        case 12: return Rank2Kind::G2;
        default: return Rank2Kind::Infinite;
    }
}

enum class PairClass { NotPrenilpotent, PrenilpotentOnly, ClassicallyPrenilpotent, Unknown };

struct PairClassification {
    PairClass kind = PairClass::Unknown;
    Rank2Kind type = Rank2Kind::Infinite;  // meaningful for ClassicallyPrenilpotent
};

// A pair is prenilpotent when some Weyl element makes both roots positive
// and another makes both negative.  Weyl words up to length `budget` are
// searched; a null vector c alpha + d beta (c, d >= 0) fixed by both rank-2
// reflections and positive in every chamber visited certifies the negative
// answer.
inline PairClassification classify_pair(const CartanMatrix& a, const RootSet& phi, const RootVec& alpha,
                                        const RootVec& beta, int budget = 12) {
    if (!phi.contains(alpha) || !phi.contains(beta)) throw NotRealRoots("pair contains a non-root");
    if (alpha == -beta) return {PairClass::NotPrenilpotent, Rank2Kind::Infinite};
    auto t = rank2_type(a, phi, alpha, beta);
    if (t != Rank2Kind::Infinite) return {PairClass::ClassicallyPrenilpotent, t};

    const std::size_t n = a.size();
    int ab = pairing(a, phi.at(alpha).coroot, beta);
    int ba = pairing(a, phi.at(beta).coroot, alpha);
    std::optional<RootVec> null_vec;
    if (ab * ba == 4 && ab <= 0) {
        // Kernel of [[2, ab], [ba, 2]] is spanned by (-ab, 2).
        null_vec = (-ab) * alpha + 2 * beta;
    }

    bool both_pos = false, both_neg = false, null_ok = null_vec.has_value();
    std::set<std::tuple<RootVec, RootVec, RootVec>> seen;
    std::vector<std::tuple<RootVec, RootVec, RootVec>> layer{{alpha, beta, null_vec.value_or(RootVec(n, 0))}};
    seen.insert(layer[0]);
    for (int len = 0; len <= budget && !layer.empty(); ++len) {
        std::vector<std::tuple<RootVec, RootVec, RootVec>> next;
        for (auto& [x, y, v] : layer) {
            both_pos = both_pos || (is_positive(x) && is_positive(y));
            both_neg = both_neg || (is_positive(-x) && is_positive(-y));
            if (null_vec && !is_positive(v)) null_ok = false;
            if (len == budget) continue;
            for (std::size_t j = 0; j < n; ++j) {
                std::tuple<RootVec, RootVec, RootVec> s{reflect_root(a, j, x), reflect_root(a, j, y),
                                                         reflect_root(a, j, v)};
                if (seen.insert(s).second) next.push_back(s);
            }
        }
        if (both_pos && both_neg) return {PairClass::PrenilpotentOnly, Rank2Kind::Infinite};
        layer = std::move(next);
    }
    if (null_ok && !both_neg) return {PairClass::NotPrenilpotent, Rank2Kind::Infinite};
    return {PairClass::Unknown, Rank2Kind::Infinite};
}

// Roots in N alpha + N beta for a classically prenilpotent pair.
inline std::vector<RootVec> theta(const CartanMatrix& a, const RootSet& phi, const RootVec& alpha,
                                  const RootVec& beta) {
    auto c = classify_pair(a, phi, alpha, beta);
    if (c.kind != PairClass::ClassicallyPrenilpotent)
        throw PairNotClassicallyPrenilpotent(root_to_string(alpha) + ", " + root_to_string(beta));
    auto [sub, overflow] = rank2_subsystem(a, phi, alpha, beta);
    std::vector<RootVec> out;
    for (const auto& r : sub) {
        // Small search: coefficients of roots in a finite rank-2 system are at most 3.
        bool hit = false;
        for (int m = 0; m <= 3 && !hit; ++m)
            for (int k = 0; k <= 3 && !hit; ++k)
                if ((m || k) && m * alpha + k * beta == r.root) hit = true;
        if (hit) out.push_back(r.root);
    }
    std::sort(out.begin(), out.end(), [](const RootVec& x, const RootVec& y) {
        if (height(x) != height(y)) return height(x) < height(y);
        return x > y;
    });
    return out;
}

}  // namespace amalgam
