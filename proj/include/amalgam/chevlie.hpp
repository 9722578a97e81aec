#pragma once

// Chevalley basis of the split semisimple Lie algebra of a spherical
// diagram, the extended Weyl group W* acting on it, and the stabilizer
// generators of e_i in W*.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "amalgam/cartan.hpp"
#include "amalgam/errors.hpp"
#include "amalgam/matrix.hpp"
#include "amalgam/weyl.hpp"

namespace amalgam {

// Word in the W* generators: (node, +1 or -1).
using WStarWord = std::vector<std::pair<std::size_t, int>>;

inline WStarWord inverse_word(const WStarWord& w) {
    WStarWord out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->first, -it->second});
    return out;
}

inline WStarWord concat(std::initializer_list<WStarWord> parts) {
    WStarWord out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

inline std::string word_to_string(const CartanMatrix& a, const WStarWord& w) {
    if (w.empty()) return "1";
    std::string s;
    for (auto [i, e] : w) {
        if (!s.empty()) s += " ";
        s += "s" + a.name(i) + (e < 0 ? "^-1" : "");
    }
    return s;
}

class ChevalleyAlgebra {
public:
    explicit ChevalleyAlgebra(CartanMatrix a) : a_(std::move(a)), roots_(finite_roots(a_)) {
        d_ = symmetrizer(a_);
        const std::size_t nr = roots_.roots.size();
        dim_ = nr + a_.size();
        extraspecial_.assign(nr, {nr, nr});
        for (std::size_t g = 0; g < roots_.positive_count(); ++g) {
            const auto& gam = roots_.roots[g].root;
            for (std::size_t x = 0; x < g; ++x) {
                auto rest = gam - roots_.roots[x].root;
                if (is_positive(rest) && roots_.contains(rest)) {
                    extraspecial_[g] = {x, roots_.index.at(rest)};
                    break;
                }
            }
        }
        build_ad();
    }

    const CartanMatrix& cartan() const { return a_; }
    const RootSet& roots() const { return roots_; }
    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return a_.size(); }

    std::size_t root_basis(const RootVec& r) const {
        auto it = roots_.index.find(r);
        if (it == roots_.index.end()) throw NotRealRoots(root_to_string(r) + " is not a root");
        return it->second;
    }
    std::size_t cartan_basis(std::size_t i) const { return roots_.roots.size() + i; }
    bool is_root_basis(std::size_t b) const { return b < roots_.roots.size(); }
    const RootVec& basis_root(std::size_t b) const { return roots_.roots[b].root; }

    std::string basis_name(std::size_t b) const {
        if (is_root_basis(b)) return "e" + root_to_string(basis_root(b));
        return "h" + a_.name(b - roots_.roots.size());
    }

    // Invariant form with (alpha_i, alpha_j) = d_i A_ij.
    long long inner(const RootVec& x, const RootVec& y) const {
        long long s = 0;
        for (std::size_t i = 0; i < a_.size(); ++i) {
            if (!x[i]) continue;
            for (std::size_t j = 0; j < a_.size(); ++j) s += static_cast<long long>(x[i]) * y[j] * d_[i] * a_(i, j);
        }
        return s;
    }
    long long norm(const RootVec& x) const { return inner(x, x); }

    // N_{alpha,beta}: [e_alpha, e_beta] = N e_{alpha+beta}; 0 when alpha+beta
    // is not a root.
    int structure_constant(const RootVec& alpha, const RootVec& beta) const {
        auto key = std::make_pair(roots_.index.at(alpha), roots_.index.at(beta));
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        int v = compute_n(alpha, beta);
        memo_[key] = v;
        return v;
    }

    // Extraspecial pair (xi, zeta) of a positive non-simple root.
    std::optional<std::pair<RootVec, RootVec>> extraspecial_pair(const RootVec& gamma) const {
        auto g = roots_.index.at(gamma);
        if (extraspecial_[g].first >= roots_.roots.size()) return std::nullopt;
        return std::make_pair(roots_.roots[extraspecial_[g].first].root, roots_.roots[extraspecial_[g].second].root);
    }

    // Bracket of two basis vectors as a coefficient vector.
    std::vector<long long> bracket_basis(std::size_t x, std::size_t y) const {
        std::vector<long long> out(dim_, 0);
        const std::size_t nr = roots_.roots.size();
        if (x >= nr && y >= nr) return out;
        if (x >= nr) {
            const auto& b = basis_root(y);
            out[y] = pairing(a_, simple_root(rank(), x - nr), b);
            return out;
        }
        if (y >= nr) {
            auto v = bracket_basis(y, x);
            for (auto& e : v) e = -e;
            return v;
        }
        const auto& p = basis_root(x);
        const auto& q = basis_root(y);
        auto s = p + q;
        if (std::all_of(s.begin(), s.end(), [](int c) { return c == 0; })) {
            const auto& co = roots_.roots[x].coroot;
            for (std::size_t i = 0; i < rank(); ++i) out[nr + i] = co[i];
            return out;
        }
        if (roots_.contains(s)) out[roots_.index.at(s)] = structure_constant(p, q);
        return out;
    }

    std::vector<long long> bracket(const std::vector<long long>& x, const std::vector<long long>& y) const {
        std::vector<long long> out(dim_, 0);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (!x[i]) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (!y[j]) continue;
                auto b = bracket_basis(i, j);
                for (std::size_t k = 0; k < dim_; ++k) out[k] += x[i] * y[j] * b[k];
            }
        }
        return out;
    }

    // ad of a basis vector; column j is [b, basis_j].
    const IntMatrix& ad_basis(std::size_t b) const { return ad_[b]; }
    const IntMatrix& ad_root(const RootVec& r) const { return ad_[root_basis(r)]; }

    // ad e_i and ad f_i with f_i = -e_{-alpha_i}.
    IntMatrix ad_e(std::size_t i) const { return ad_root(simple_root(rank(), i)); }
    IntMatrix ad_f(std::size_t i) const {
        auto m = ad_root(-simple_root(rank(), i));
        for (auto& x : m.a) x = -x;
        return m;
    }

    const std::vector<IntMatrix>& divided_powers_of_root(const RootVec& r) const {
        auto b = root_basis(r);
        auto it = dp_cache_.find(b);
        if (it != dp_cache_.end()) return it->second;
        return dp_cache_[b] = divided_powers(ad_[b]);
    }

    // exp(t ad e_gamma) over any ring, from exact integer divided powers.
    template <class Ring>
    Matrix<Ring> exp_ad(const RootVec& gamma, const typename Ring::Elem& t, const Ring& r) const {
        return exp_divided(r, divided_powers_of_root(gamma), t);
    }

    IntMatrix exp_ad_int(const RootVec& gamma, long long t) const { return exp_ad(gamma, t, IntegerRing{}); }

    // s*_i = exp(ad e_i) exp(ad f_i) exp(ad e_i), and its inverse.
    const IntMatrix& s_star(std::size_t i, int sign = 1) const {
        auto key = std::make_pair(i, sign);
        auto it = s_cache_.find(key);
        if (it != s_cache_.end()) return it->second;
        auto e = exp_ad_int(simple_root(rank(), i), sign);
        auto f = exp_ad_int(-simple_root(rank(), i), -sign);  // exp(sign ad f_i) = exp(-sign ad e_{-i})
        return s_cache_[key] = e * f * e;
    }

    IntMatrix w_star_of_word(const WStarWord& w) const {
        auto m = int_identity(dim_);
        for (auto [i, e] : w) m = m * s_star(i, e);
        return m;
    }

    // Ad(beta^vee): (-1)^<beta^vee, gamma> on e_gamma, identity on the Cartan.
    IntMatrix ad_coroot(const RootVec& coroot) const {
        auto m = int_identity(dim_);
        for (std::size_t b = 0; b < roots_.roots.size(); ++b)
            if (pairing(a_, coroot, basis_root(b)) % 2 != 0) m(b, b) = -1;
        return m;
    }

    // Image of e_gamma under a monomial matrix: (basis index, sign).
    std::pair<std::size_t, int> monomial_image(const IntMatrix& m, std::size_t b) const {
        std::optional<std::pair<std::size_t, int>> hit;
        for (std::size_t r = 0; r < dim_; ++r) {
            auto v = m(r, b);
            if (v == 0) continue;
            if ((v != 1 && v != -1) || hit) throw ArithmeticError("W* element is not monomial on root vectors");
            hit = std::make_pair(r, static_cast<int>(v));
        }
        if (!hit) throw ArithmeticError("W* element kills a basis vector");
        return *hit;
    }

    // {+-e_gamma} reachable from the simple root vectors under W*.
    std::vector<int> e_set(const RootVec& gamma) const {
        std::set<std::pair<std::size_t, int>> seen;
        std::vector<std::pair<std::size_t, int>> todo;
        for (std::size_t i = 0; i < rank(); ++i) {
            auto b = root_basis(simple_root(rank(), i));
            seen.insert({b, 1});
            todo.push_back({b, 1});
        }
        while (!todo.empty()) {
            auto [b, s] = todo.back();
            todo.pop_back();
            for (std::size_t j = 0; j < rank(); ++j)
                for (int e : {1, -1}) {
                    auto [b2, s2] = monomial_image(s_star(j, e), b);
                    std::pair<std::size_t, int> nxt{b2, s * s2};
                    if (seen.insert(nxt).second) todo.push_back(nxt);
                }
        }
        std::vector<int> out;
        auto g = root_basis(gamma);
        for (int s : {1, -1})
            if (seen.count({g, s})) out.push_back(s);
        return out;
    }

private:
    CartanMatrix a_;
    RootSet roots_;
    std::vector<long long> d_;
    std::size_t dim_ = 0;
    std::vector<std::pair<std::size_t, std::size_t>> extraspecial_;
    std::vector<IntMatrix> ad_;
    mutable std::map<std::pair<std::size_t, std::size_t>, int> memo_;
    mutable std::map<std::size_t, std::vector<IntMatrix>> dp_cache_;
    mutable std::map<std::pair<std::size_t, int>, IntMatrix> s_cache_;

    static long long exact_div(long long num, long long den) {
        if (den == 0 || num % den != 0) throw ArithmeticError("structure constant is not integral");
        return num / den;
    }

    int compute_n(const RootVec& alpha, const RootVec& beta) const {
        auto gamma = alpha + beta;
        if (!roots_.contains(gamma)) return 0;
        bool pa = is_positive(alpha), pb = is_positive(beta);
        if (!pa && !pb) return -structure_constant(-alpha, -beta);
        if (!pa && pb) return -structure_constant(beta, alpha);
        if (pa && !pb) {
            // N_{x,y}/|z|^2 = N_{y,z}/|x|^2 = N_{z,x}/|y|^2 for x + y + z = 0.
            if (is_positive(gamma))
                return static_cast<int>(exact_div(-norm(gamma) * structure_constant(-beta, gamma), norm(alpha)));
            return static_cast<int>(exact_div(norm(gamma) * structure_constant(-gamma, alpha), norm(beta)));
        }
        auto [xi, zeta] = *extraspecial_pair(gamma);
        int p = 0;
        while (roots_.contains(zeta - (p + 1) * xi)) ++p;
        int nxz = p + 1;
        if (alpha == xi) return nxz;
        if (alpha == zeta) return -nxz;
        long long n1 = 0, l1 = 1, n2 = 0, l2 = 1;
        auto bx = beta - xi;
        if (roots_.contains(bx)) {
            n1 = static_cast<long long>(structure_constant(beta, -xi)) * structure_constant(alpha, -zeta);
            l1 = norm(bx);
        }
        auto ax = alpha - xi;
        if (roots_.contains(ax)) {
            n2 = static_cast<long long>(structure_constant(-xi, alpha)) * structure_constant(beta, -zeta);
            l2 = norm(ax);
        }
        return static_cast<int>(exact_div(norm(gamma) * (n1 * l2 + n2 * l1), l1 * l2 * nxz));
    }

    void build_ad() {
        ad_.clear();
        for (std::size_t b = 0; b < dim_; ++b) {
            auto m = int_zero(dim_);
            for (std::size_t j = 0; j < dim_; ++j) {
                auto col = bracket_basis(b, j);
                for (std::size_t r = 0; r < dim_; ++r) m(r, j) = col[r];
            }
            ad_.push_back(m);
        }
    }
};

// Jacobi identity on all basis triples and the Serre relations.
struct LieCheck {
    bool jacobi = true;
    bool serre = true;
    bool chevalley = true;  // |N_{a,b}| = p + 1 and h-actions integral
};

inline LieCheck check_algebra(const ChevalleyAlgebra& g) {
    LieCheck out;
    const std::size_t n = g.dim();
    for (std::size_t x = 0; x < n && out.jacobi; ++x)
        for (std::size_t y = x + 1; y < n && out.jacobi; ++y) {
            auto xy = g.bracket_basis(x, y);
            for (std::size_t z = y + 1; z < n; ++z) {
                auto yz = g.bracket_basis(y, z);
                auto zx = g.bracket_basis(z, x);
                std::vector<long long> ex(n, 0), ey(n, 0), ez(n, 0);
                ex[x] = ey[y] = ez[z] = 1;
                auto t1 = g.bracket(ex, yz), t2 = g.bracket(ey, zx), t3 = g.bracket(ez, xy);
                for (std::size_t k = 0; k < n; ++k)
                    if (t1[k] + t2[k] + t3[k] != 0) {
                        out.jacobi = false;
                        break;
                    }
                if (!out.jacobi) break;
            }
        }
    const auto& a = g.cartan();
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (i == j) continue;
            // (ad e_i)^{1 - A_ij} e_j = 0 and likewise for f.
            IntMatrix pe = int_identity(g.dim()), pf = int_identity(g.dim());
            for (int k = 0; k < 1 - a(i, j); ++k) pe = pe * g.ad_e(i), pf = pf * g.ad_f(i);
            auto bj = g.root_basis(simple_root(a.size(), j));
            auto bfj = g.root_basis(-simple_root(a.size(), j));
            for (std::size_t r = 0; r < g.dim(); ++r)
                if (pe(r, bj) != 0 || pf(r, bfj) != 0) out.serre = false;
        }
    const auto& rs = g.roots();
    for (const auto& x : rs.roots)
        for (const auto& y : rs.roots) {
            auto s = x.root + y.root;
            if (!rs.contains(s)) continue;
            int p = 0;
            while (rs.contains(y.root - (p + 1) * x.root)) ++p;
            if (std::abs(g.structure_constant(x.root, y.root)) != p + 1) out.chevalley = false;
        }
    return out;
}

// p_gamma for an odd path i_0 ... i_n: (s_{i_{n-1}} s_{i_n}) ... (s_{i_0} s_{i_1}).
inline WStarWord p_gamma_word(const CartanMatrix& a, const std::vector<std::size_t>& path) {
    for (std::size_t k = 0; k + 1 < path.size(); ++k)
        if (coxeter_m(a, path[k], path[k + 1]) != 3) throw NotAnOddPath("consecutive nodes not joined by a simple edge");
    WStarWord w;
    for (std::size_t k = path.size(); k-- > 1;) {
        w.push_back({path[k - 1], 1});
        w.push_back({path[k], 1});
    }
    return w;
}

struct StabilizerGenerator {
    std::string kind;  // "cycle", "edge", "square"
    WStarWord word;
};

// Generators of the stabilizer of e_i in W*.
inline std::vector<StabilizerGenerator> stabilizer_generators(const CartanMatrix& a, std::size_t i) {
    auto od = odd_diagram(a, i);
    std::vector<std::size_t> comp;
    for (const auto& c : od.components)
        if (std::find(c.begin(), c.end(), i) != c.end()) comp = c;

    // Tree path i ... j; p_{delta_j} carries e_i to e_j.
    auto delta = [&](std::size_t j) { return od.path_from_root(j); };

    std::vector<StabilizerGenerator> out;
    for (auto [x, y] : od.cycle_edges) {
        if (std::find(comp.begin(), comp.end(), x) == comp.end()) continue;
        // Closed path i ... x y ... i.
        auto z = delta(x);
        auto back = delta(y);
        z.insert(z.end(), back.rbegin(), back.rend());
        out.push_back({"cycle", p_gamma_word(a, z)});
    }
    for (auto j : comp) {
        auto p = p_gamma_word(a, delta(j));
        auto pinv = inverse_word(p);
        for (std::size_t k = 0; k < a.size(); ++k) {
            int m = coxeter_m(a, j, k);
            WStarWord mid;
            if (m == 2) mid = {{k, 1}};
            else if (m == 4) mid = {{k, 1}, {j, 1}, {k, 1}};
            else if (m == 6) mid = {{k, 1}, {j, 1}, {k, 1}, {j, 1}, {k, 1}};
            else continue;
            out.push_back({"edge", concat({pinv, mid, p})});
        }
    }
    for (std::size_t l = 0; l < a.size(); ++l) out.push_back({"square", {{l, 1}, {l, 1}}});
    return out;
}

struct CheckLine {
    std::string name;
    bool pass = true;
    std::string detail;
};

// Relations of W* acting on the Chevalley basis, plus the orbit-stabilizer
// count for the stabilizer generators of each e_i.
inline std::vector<CheckLine> wstar_checks(const ChevalleyAlgebra& g) {
    const auto& a = g.cartan();
    const std::size_t n = a.size();
    std::vector<CheckLine> out;
    auto s2 = [&](std::size_t i) { return g.s_star(i) * g.s_star(i); };

    CheckLine lie{"lie algebra", true, ""};
    auto lc = check_algebra(g);
    lie.pass = lc.jacobi && lc.serre && lc.chevalley;
    if (!lc.jacobi) lie.detail += "jacobi ";
    if (!lc.serre) lie.detail += "serre ";
    if (!lc.chevalley) lie.detail += "structure constants ";
    out.push_back(lie);

    CheckLine inv{"s*_i s*_i^-1 = 1", true, ""};
    CheckLine sq{"s*_i^2 = Ad(alpha_i^vee)", true, ""};
    CheckLine sq2{"s*_i^4 = 1", true, ""};
    for (std::size_t i = 0; i < n; ++i) {
        if (!is_identity(IntegerRing{}, g.s_star(i) * g.s_star(i, -1))) inv.pass = false, inv.detail += a.name(i) + " ";
        if (!(s2(i) == g.ad_coroot(simple_root(n, i)))) sq.pass = false, sq.detail += a.name(i) + " ";
        if (!is_identity(IntegerRing{}, s2(i) * s2(i))) sq2.pass = false, sq2.detail += a.name(i) + " ";
    }
    out.push_back(inv);
    out.push_back(sq);
    out.push_back(sq2);

    CheckLine artin{"braid relations", true, ""};
    CheckLine conj{"s*_i s*_j^2 s*_i^-1 = s*_j^2 s*_i^(-2 A_ji)", true, ""};
    CheckLine moving{"root vector transport", true, ""};
    CheckLine equiv{"w Ad(b^vee) w^-1 = Ad(w b^vee)", true, ""};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            int m = coxeter_m(a, i, j);
            if (i < j) {
                WStarWord x, y;
                for (int k = 0; k < m; ++k) {
                    x.push_back({k % 2 ? j : i, 1});
                    y.push_back({k % 2 ? i : j, 1});
                }
                if (!(g.w_star_of_word(x) == g.w_star_of_word(y)))
                    artin.pass = false, artin.detail += a.name(i) + a.name(j) + " ";
            }
            auto lhs = g.s_star(i) * s2(j) * g.s_star(i, -1);
            auto rhs = s2(j);
            int e = -2 * a(j, i);
            for (int k = 0; k < std::abs(e); ++k) rhs = rhs * g.s_star(i, e > 0 ? 1 : -1);
            if (!(lhs == rhs)) conj.pass = false, conj.detail += a.name(i) + a.name(j) + " ";

            auto ej = g.root_basis(simple_root(n, j));
            auto ei = g.root_basis(simple_root(n, i));
            if (m == 3) {
                auto img = g.monomial_image(g.s_star(j) * g.s_star(i), ej);
                if (img != std::make_pair(ei, 1)) moving.pass = false, moving.detail += a.name(i) + a.name(j) + " ";
            } else if (m == 2 || m == 4 || m == 6) {
                WStarWord w{{i, 1}};
                if (m >= 4) w = {{i, 1}, {j, 1}, {i, 1}};
                if (m == 6) w = {{i, 1}, {j, 1}, {i, 1}, {j, 1}, {i, 1}};
                auto img = g.monomial_image(g.w_star_of_word(w), ej);
                if (img != std::make_pair(ej, 1)) moving.pass = false, moving.detail += a.name(i) + a.name(j) + " ";
            }
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto beta = simple_root(n, j);
            auto lhs = g.s_star(i) * g.ad_coroot(beta) * g.s_star(i, -1);
            if (!(lhs == g.ad_coroot(reflect_coroot(a, i, beta)))) equiv.pass = false, equiv.detail += a.name(i) + a.name(j) + " ";
        }
    out.push_back(artin);
    out.push_back(conj);
    out.push_back(moving);
    out.push_back(equiv);

    CheckLine eset{"e_set has at most two signs", true, ""};
    for (const auto& r : g.roots().roots)
        if (g.e_set(r.root).size() > 2) eset.pass = false;
    out.push_back(eset);

    CheckLine fix{"stabilizer generators fix e_i", true, ""};
    CheckLine count{"stabilizer image order = |W| / |W alpha_i|", true, ""};
    auto worder = weyl_group_order(a);
    for (std::size_t i = 0; i < n; ++i) {
        auto ei = g.root_basis(simple_root(n, i));
        std::vector<IntMatrix> images;
        for (const auto& gen : stabilizer_generators(a, i)) {
            auto m = g.w_star_of_word(gen.word);
            int expect = 1;
            if (gen.kind == "square") expect = a(gen.word[0].first, i) % 2 ? -1 : 1;
            if (g.monomial_image(m, ei) != std::make_pair(ei, expect))
                fix.pass = false, fix.detail += a.name(i) + ":" + word_to_string(a, gen.word) + " ";
            std::vector<std::size_t> plain;
            for (auto [k, e] : gen.word) plain.push_back(k);
            images.push_back(weyl_element_of_word(a, plain));
        }
        std::set<RootVec> orbit{simple_root(n, i)};
        std::vector<RootVec> todo{simple_root(n, i)};
        while (!todo.empty()) {
            auto r = todo.back();
            todo.pop_back();
            for (std::size_t k = 0; k < n; ++k) {
                auto x = reflect_root(a, k, r);
                if (orbit.insert(x).second) todo.push_back(x);
            }
        }
        auto stab = int_group_order(images, n, 10'000'000);
        bool ok = worder && stab && *stab * orbit.size() == *worder;
        if (!ok) {
            count.pass = false;
            count.detail += a.name(i) + " ";
        }
    }
    out.push_back(fix);
    out.push_back(count);
    return out;
}

}  // namespace amalgam
