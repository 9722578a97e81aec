#pragma once

// Matrix representations, word evaluation, relator checks, the exceptional
// diagram endomorphisms in characteristic 2 and 3, and generation of
// unipotent groups by root subgroups.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "amalgam/cartan.hpp"
#include "amalgam/chevlie.hpp"
#include "amalgam/errors.hpp"
#include "amalgam/fpgroup.hpp"
#include "amalgam/matrix.hpp"
#include "amalgam/present.hpp"
#include "amalgam/ring.hpp"
#include "amalgam/weyl.hpp"
#include "amalgam/word.hpp"

namespace amalgam {

inline IntMatrix operator+(const IntMatrix& x, const IntMatrix& y) { return add(IntegerRing{}, x, y); }

// A representation of the Lie algebra by integer matrices e_i, f_i with
// [e_i, f_i] = -h_i.  The group acts by X_i(t) = exp(t e_i) and
// S_i = X_i(1) exp(f_i) X_i(1).
struct Rep {
    std::string kind;
    CartanMatrix diagram;
    std::size_t dim = 0;
    std::vector<IntMatrix> e, f;
    std::vector<std::vector<IntMatrix>> dpe, dpf;  // divided powers
};

// Failures of the Chevalley-Serre relations, empty when e_i, f_i define a
// representation of the Lie algebra of the diagram.
inline std::vector<std::string> rep_relation_failures(const Rep& rep) {
    std::vector<std::string> bad;
    const std::size_t n = rep.diagram.size();
    IntegerRing z;
    auto ad_pow_kills = [&](const IntMatrix& x, const IntMatrix& y, int k) {
        IntMatrix cur = y;
        for (int s = 0; s < k; ++s) cur = bracket(z, x, cur);
        return is_zero_matrix(z, cur);
    };
    std::vector<IntMatrix> h;
    for (std::size_t i = 0; i < n; ++i) h.push_back(scale(z, -1, bracket(z, rep.e[i], rep.f[i])));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto tag = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
            const int aij = rep.diagram(i, j);
            if (!equal(z, bracket(z, h[i], rep.e[j]), scale(z, aij, rep.e[j]))) bad.push_back("[h,e]" + tag);
            if (!equal(z, bracket(z, h[i], rep.f[j]), scale(z, -aij, rep.f[j]))) bad.push_back("[h,f]" + tag);
            if (!is_zero_matrix(z, bracket(z, h[i], h[j]))) bad.push_back("[h,h]" + tag);
            if (i == j) continue;
            if (!is_zero_matrix(z, bracket(z, rep.e[i], rep.f[j]))) bad.push_back("[e,f]" + tag);
            if (!ad_pow_kills(rep.e[i], rep.e[j], 1 - aij)) bad.push_back("serre e" + tag);
            if (!ad_pow_kills(rep.f[i], rep.f[j], 1 - aij)) bad.push_back("serre f" + tag);
        }
    return bad;
}

inline Rep make_rep(std::string kind, const CartanMatrix& a, std::vector<IntMatrix> e, std::vector<IntMatrix> f) {
    Rep rep{std::move(kind), a, e.empty() ? 0 : e[0].n, std::move(e), std::move(f), {}, {}};
    auto bad = rep_relation_failures(rep);
    if (!bad.empty()) throw Error("representation fails " + bad.front());
    for (std::size_t i = 0; i < a.size(); ++i) {
        rep.dpe.push_back(divided_powers(rep.e[i]));
        rep.dpf.push_back(divided_powers(rep.f[i]));
    }
    return rep;
}

// Module with weights the W-orbit of a minuscule fundamental weight, all
// structure constants 1 (up to the sign convention for f).  Throws
// NotSupported when the weight is not minuscule.
inline Rep minuscule_rep(const CartanMatrix& a, std::size_t node) {
    const std::size_t n = a.size();
    using Wt = std::vector<int>;
    Wt top(n, 0);
    top[node] = 1;
    std::set<Wt> seen{top};
    std::vector<Wt> todo{top};
    while (!todo.empty()) {
        Wt w = todo.back();
        todo.pop_back();
        for (std::size_t j = 0; j < n; ++j) {
            if (w[j] == 0) continue;
            if (w[j] < -1 || w[j] > 1) throw NotSupported("fundamental weight " + a.name(node) + " is not minuscule");
            Wt v = w;
            for (std::size_t i = 0; i < n; ++i) v[i] -= w[j] * a(i, j);
            if (seen.insert(v).second) todo.push_back(v);
        }
        if (seen.size() > 4096) throw NotSupported("weight orbit too large");
    }
    std::vector<Wt> wts(seen.rbegin(), seen.rend());
    std::map<Wt, std::size_t> pos;
    for (std::size_t k = 0; k < wts.size(); ++k) pos[wts[k]] = k;
    const std::size_t d = wts.size();
    std::vector<IntMatrix> e(n, int_zero(d)), f(n, int_zero(d));
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            Wt up = wts[k], down = wts[k];
            for (std::size_t l = 0; l < n; ++l) up[l] += a(l, i), down[l] -= a(l, i);
            if (wts[k][i] == -1) e[i](pos.at(up), k) = 1;
            if (wts[k][i] == 1) f[i](pos.at(down), k) = -1;
        }
    return make_rep("minuscule", a, std::move(e), std::move(f));
}

namespace detail {

// Integer row echelon basis of the lattice spanned by rows.
inline std::vector<std::vector<long long>> echelon(std::vector<std::vector<long long>> rows) {
    if (rows.empty()) return rows;
    const std::size_t m = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < m && r < rows.size(); ++c) {
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t k = r; k < rows.size(); ++k)
                if (rows[k][c] != 0 && (best == rows.size() || std::llabs(rows[k][c]) < std::llabs(rows[best][c])))
                    best = k;
            if (best == rows.size()) break;
            std::swap(rows[r], rows[best]);
            bool done = true;
            for (std::size_t k = r + 1; k < rows.size(); ++k) {
                if (rows[k][c] == 0) continue;
                long long q = rows[k][c] / rows[r][c];
                for (std::size_t l = 0; l < m; ++l) rows[k][l] -= q * rows[r][l];
                if (rows[k][c] != 0) done = false;
            }
            if (done) {
                if (rows[r][c] < 0)
                    for (auto& v : rows[r]) v = -v;
                ++r;
                break;
            }
        }
    }
    rows.resize(r);
    return rows;
}

// Coordinates of y in an echelon basis; throws if y is outside the lattice.
inline std::vector<long long> lattice_coords(const std::vector<std::vector<long long>>& basis,
                                             std::vector<long long> y) {
    std::vector<long long> c(basis.size(), 0);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        std::size_t p = 0;
        while (basis[k][p] == 0) ++p;
        if (y[p] % basis[k][p] != 0) throw ArithmeticError("vector outside the lattice");
        c[k] = y[p] / basis[k][p];
        for (std::size_t l = 0; l < y.size(); ++l) y[l] -= c[k] * basis[k][l];
    }
    for (auto v : y)
        if (v != 0) throw ArithmeticError("vector outside the lattice");
    return c;
}

}  // namespace detail

// The 7-dimensional G2 module: fold the 8-dimensional D4 module along the
// triality automorphism and keep the lattice generated from the highest
// weight vector by divided powers of the lowering operators.
inline Rep g2_seven_rep(const CartanMatrix& g2) {
    if (g2.size() != 2 || coxeter_m(g2, 0, 1) != 6) throw WrongDiagram("expected G2");
    auto d4 = minuscule_rep(parse_diagram("D4"), 0);
    const std::size_t s = short_node(g2, 0, 1), l = 1 - s;
    std::vector<IntMatrix> e8(2), f8(2);
    e8[s] = d4.e[0] + d4.e[2] + d4.e[3];
    f8[s] = d4.f[0] + d4.f[2] + d4.f[3];
    e8[l] = d4.e[1];
    f8[l] = d4.f[1];
    std::vector<std::vector<IntMatrix>> dpf{divided_powers(f8[0]), divided_powers(f8[1])};
    using V = std::vector<long long>;
    V top(8, 0);
    top[0] = 1;  // weights are sorted highest first
    std::set<V> seen{top};
    std::vector<V> todo{top};
    auto apply_int = [](const IntMatrix& m, const V& v) {
        V out(m.n, 0);
        for (std::size_t i = 0; i < m.n; ++i)
            for (std::size_t j = 0; j < m.n; ++j) out[i] += m(i, j) * v[j];
        return out;
    };
    while (!todo.empty()) {
        V v = todo.back();
        todo.pop_back();
        for (const auto& dp : dpf)
            for (std::size_t k = 1; k < dp.size(); ++k) {
                V w = apply_int(dp[k], v);
                if (std::all_of(w.begin(), w.end(), [](long long x) { return x == 0; })) continue;
                if (seen.insert(w).second) todo.push_back(w);
            }
    }
    auto basis = detail::echelon(std::vector<V>(seen.begin(), seen.end()));
    const std::size_t d = basis.size();
    auto restrict = [&](const IntMatrix& m) {
        IntMatrix out = int_zero(d);
        for (std::size_t k = 0; k < d; ++k) {
            auto c = detail::lattice_coords(basis, apply_int(m, basis[k]));
            for (std::size_t r = 0; r < d; ++r) out(r, k) = c[r];
        }
        return out;
    };
    std::vector<IntMatrix> e{restrict(e8[0]), restrict(e8[1])}, f{restrict(f8[0]), restrict(f8[1])};
    return make_rep("defining", g2, std::move(e), std::move(f));
}

// Block sum of representations of the components of a diagram.
inline Rep defining_rep(const CartanMatrix& a) {
    std::vector<Rep> parts;
    auto comps = components(a);
    for (const auto& comp : comps) {
        auto sub = a.sub(comp);
        if (sub.size() == 2 && coxeter_m(sub, 0, 1) == 6) {
            parts.push_back(g2_seven_rep(sub));
            continue;
        }
        std::optional<Rep> best;
        for (std::size_t k = 0; k < sub.size(); ++k) {
            try {
                auto r = minuscule_rep(sub, k);
                if (!best || r.dim < best->dim) best = std::move(r);
            } catch (const NotSupported&) {
            }
        }
        if (!best) throw NotSupported("no defining representation for " + sub.to_string());
        parts.push_back(std::move(*best));
    }
    std::size_t d = 0;
    for (const auto& p : parts) d += p.dim;
    std::vector<IntMatrix> e(a.size(), int_zero(d)), f(a.size(), int_zero(d));
    std::size_t off = 0;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        const auto& p = parts[c];
        for (std::size_t k = 0; k < comps[c].size(); ++k)
            for (std::size_t r = 0; r < p.dim; ++r)
                for (std::size_t s = 0; s < p.dim; ++s) {
                    e[comps[c][k]](off + r, off + s) = p.e[k](r, s);
                    f[comps[c][k]](off + r, off + s) = p.f[k](r, s);
                }
        off += p.dim;
    }
    return make_rep("defining", a, std::move(e), std::move(f));
}

inline Rep adjoint_rep(const ChevalleyAlgebra& g) {
    std::vector<IntMatrix> e, f;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        e.push_back(g.ad_e(i));
        f.push_back(g.ad_f(i));
    }
    return make_rep("adjoint", g.cartan(), std::move(e), std::move(f));
}

inline Rep adjoint_rep(const CartanMatrix& a) { return adjoint_rep(ChevalleyAlgebra(a)); }

inline Rep build_rep(const CartanMatrix& a, const std::string& kind) {
    if (kind == "defining") return defining_rep(a);
    if (kind == "adjoint") return adjoint_rep(a);
    throw NotSupported("unknown representation kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Word evaluation

template <class Ring>
class Evaluator {
public:
    using Elem = typename Ring::Elem;
    using M = Matrix<Ring>;

    Evaluator(const Rep& rep, const Ring& r) : rep_(rep), r_(r) {}

    M x(std::size_t i, const Elem& t) const { return exp_divided(r_, rep_.dpe.at(i), t); }
    M y(std::size_t i, const Elem& t) const { return exp_divided(r_, rep_.dpf.at(i), t); }

    const M& letter(const Letter<Elem>& l) {
        if (l.node >= rep_.diagram.size()) throw UnassignedGenerator("node " + std::to_string(l.node));
        auto key = std::make_tuple(l.kind == GenKind::S, l.node, l.kind == GenKind::S ? r_.zero() : l.t, l.exp);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        M m;
        if (l.kind == GenKind::X) {
            m = x(l.node, l.exp > 0 ? l.t : r_.neg(l.t));
        } else {
            Elem c = l.exp > 0 ? r_.one() : r_.neg(r_.one());
            m = mul(r_, mul(r_, x(l.node, c), y(l.node, c)), x(l.node, c));
        }
        return cache_[key] = std::move(m);
    }

    M eval(const Word<Elem>& w) {
        M out = identity(r_, rep_.dim);
        for (const auto& l : w) out = mul(r_, out, letter(l));
        return out;
    }

    const Rep& rep() const { return rep_; }
    const Ring& ring() const { return r_; }

private:
    Rep rep_;
    Ring r_;
    std::map<std::tuple<bool, std::size_t, Elem, int>, M> cache_;
};

template <class Ring>
Matrix<Ring> eval_word(const Rep& rep, const Ring& r, const Word<typename Ring::Elem>& w) {
    Evaluator<Ring> ev(rep, r);
    return ev.eval(w);
}

template <class Ring>
std::string matrix_to_string(const Ring& r, const Matrix<Ring>& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.n; ++i) {
        s += i ? ",[" : "[";
        for (std::size_t j = 0; j < m.n; ++j) s += (j ? "," : "") + r.format(m(i, j));
        s += "]";
    }
    return s + "]";
}

struct RelatorCheck {
    std::size_t index = 0;
    int batch = 0;
    std::string family;
    bool pass = false;
    bool skipped = false;
    std::string detail;  // relator text, plus the offending matrix on failure
};

struct CheckReport {
    std::vector<RelatorCheck> results;
    std::size_t passed = 0, failed = 0, skipped = 0;
    bool ok() const { return failed == 0; }
    void add(RelatorCheck c) {
        if (c.skipped) ++skipped;
        else if (c.pass) ++passed;
        else ++failed;
        results.push_back(std::move(c));
    }
};

template <class Ring>
RelatorCheck check_relator(Evaluator<Ring>& ev, const CartanMatrix& names, std::size_t index,
                           const Relator<typename Ring::Elem>& rel, const Word<typename Ring::Elem>& word) {
    RelatorCheck c{index, rel.batch, rel.family, false, false, {}};
    auto m = ev.eval(word);
    c.pass = is_identity(ev.ring(), m);
    c.detail = word_to_string(names, ev.ring(), rel.word);
    if (!c.pass) c.detail += " -> " + matrix_to_string(ev.ring(), m);
    return c;
}

// Evaluates every relator of p in rep, whose diagram must be p's.
template <class Ring>
CheckReport check_presentation(const Rep& rep, const Presentation<Ring>& p) {
    if (!(rep.diagram == p.diagram)) throw WrongDiagram("representation and presentation diagrams differ");
    Evaluator<Ring> ev(rep, p.ring);
    CheckReport report;
    for (std::size_t k = 0; k < p.relators.size(); ++k)
        report.add(check_relator(ev, p.diagram, k, p.relators[k], p.relators[k].word));
    return report;
}

// Evaluates each relator in the adjoint representation of the subdiagram on
// the nodes it mentions.  Relators on non-spherical subdiagrams are skipped.
template <class Ring>
CheckReport check_presentation_local(const Presentation<Ring>& p) {
    std::map<std::vector<std::size_t>, std::optional<Rep>> reps;
    CheckReport report;
    for (std::size_t k = 0; k < p.relators.size(); ++k) {
        const auto& rel = p.relators[k];
        auto nodes = word_nodes(rel.word);
        if (nodes.empty()) nodes = {rel.nodes.front()};
        auto it = reps.find(nodes);
        if (it == reps.end()) {
            auto sub = p.diagram.sub(nodes);
            std::optional<Rep> rep;
            if (is_spherical(sub)) rep = adjoint_rep(sub);
            it = reps.emplace(nodes, std::move(rep)).first;
        }
        if (!it->second) {
            report.add(RelatorCheck{k, rel.batch, rel.family, false, true, "non-spherical subdiagram"});
            continue;
        }
        auto local = rel.word;
        for (auto& l : local) l.node = std::find(nodes.begin(), nodes.end(), l.node) - nodes.begin();
        Evaluator<Ring> ev(*it->second, p.ring);
        report.add(check_relator(ev, p.diagram, k, rel, local));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Diagram endomorphisms in characteristic 2 (B2) and 3 (G2)

enum class EndoType { B2Char2, G2Char3 };

inline int endo_prime(EndoType t) { return t == EndoType::B2Char2 ? 2 : 3; }

inline void check_endo_domain(EndoType type, const CartanMatrix& a, std::uint32_t characteristic) {
    const int m = type == EndoType::B2Char2 ? 4 : 6;
    if (a.size() != 2 || coxeter_m(a, 0, 1) != m)
        throw WrongDiagram(std::string("expected ") + (m == 4 ? "B2" : "G2"));
    if (characteristic != static_cast<std::uint32_t>(endo_prime(type)))
        throw WrongCharacteristic("need characteristic " + std::to_string(endo_prime(type)));
}

// S_s <-> S_l, X_l(t) -> X_s(t), X_s(t) -> X_l(t^p).
template <class Ring>
Word<typename Ring::Elem> apply_diagram_endo(EndoType type, const CartanMatrix& a, const Ring& r,
                                             const Word<typename Ring::Elem>& w) {
    check_endo_domain(type, a, r.characteristic());
    const std::size_t s = short_node(a, 0, 1), l = 1 - s;
    Word<typename Ring::Elem> out;
    for (auto x : w) {
        if (x.kind == GenKind::S) {
            x.node = x.node == s ? l : s;
        } else if (x.node == l) {
            x.node = s;
        } else {
            x.node = l;
            x.t = r.pow(x.t, endo_prime(type));
        }
        out.push_back(x);
    }
    return out;
}

// X(t) -> X(t^(1/p)) on both root groups, fixing S_s and S_l.
inline Word<FiniteRing::Elem> apply_root_endo(const FiniteRing& r, const Word<FiniteRing::Elem>& w) {
    auto out = w;
    for (auto& x : out)
        if (x.kind == GenKind::X) x.t = frobenius_sqrt(r, x.t);
    return out;
}

// Defining relators of the Steinberg group in the characteristic where the
// diagram endomorphism exists; several families collapse there.
template <class Ring>
std::vector<Relator<typename Ring::Elem>> reduced_relators(EndoType type, const CartanMatrix& a, const Ring& r) {
    check_endo_domain(type, a, r.characteristic());
    using Elem = typename Ring::Elem;
    using K = WordKit<Ring>;
    K k(r);
    const std::size_t s = short_node(a, 0, 1), l = 1 - s;
    auto S = k.s(s), Sp = k.s(l);
    auto X = [&](const Elem& t) { return k.x(s, t); };
    auto Xp = [&](const Elem& t) { return k.x(l, t); };
    auto mul = [&](const Elem& x, const Elem& y) { return r.mul(x, y); };
    std::vector<Relator<Elem>> out;
    std::vector<std::size_t> nodes{s, l};
    auto push = [&](const std::string& fam, std::vector<Elem> params, const Word<Elem>& w) {
        out.push_back(Relator<Elem>{3, fam, nodes, std::move(params), free_reduce(w)});
    };
    const auto P = r.parameter_values(0), Q = r.parameter_values(1);
    auto one = r.one();
    auto collapse = [&](std::size_t i) {
        return K::eq(k.s(i), k.x(i, one) * k.s(i) * k.x(i, one) * k.s(i, -1) * k.x(i, one));
    };
    if (type == EndoType::B2Char2) {
        push("artin", {}, K::eq(S * Sp * S * Sp, Sp * S * Sp * S));
        for (const auto& t : P) {
            push("sls_commute", {t}, K::comm(S * Sp * S, Xp(t)));
            push("sls_commute'", {t}, K::comm(Sp * S * Sp, X(t)));
            for (const auto& u : Q) {
                std::vector<Elem> tu{t, u};
                push("additivity", tu, X(t) * X(u) * k.x(s, r.add(t, u), -1));
                push("additivity'", tu, Xp(t) * Xp(u) * k.x(l, r.add(t, u), -1));
                push("close", tu, K::comm(K::conj(S, Xp(t)), K::conj(Sp, X(u))));
                push("orthogonal", tu, K::comm(Xp(t), K::conj(S, Xp(u))));
                push("orthogonal'", tu, K::comm(X(t), K::conj(Sp, X(u))));
                push("simple", tu,
                     K::eq(K::comm(X(t), Xp(u)), K::conj(Sp, X(r.neg(mul(t, u)))) * K::conj(S, Xp(mul(mul(t, t), u)))));
            }
        }
        push("collapse", {}, collapse(s));
        push("collapse'", {}, collapse(l));
        return out;
    }
    auto SSp = S * Sp, SpS = Sp * S;
    push("artin", {}, K::eq(S * Sp * S * Sp * S * Sp, Sp * S * Sp * S * Sp * S));
    push("square_conj", {}, K::eq(S * S * Sp * inverse(S) * inverse(S), inverse(Sp)));
    push("square_conj'", {}, K::eq(Sp * Sp * S * inverse(Sp) * inverse(Sp), inverse(S)));
    for (const auto& t : P) {
        push("square_x", {t}, K::comm(S * S, X(t)));
        push("square_x'", {t}, K::comm(Sp * Sp, Xp(t)));
        push("square_action", {t}, K::eq(K::conj(S * S, Xp(t)), Xp(r.neg(t))));
        push("square_action'", {t}, K::eq(K::conj(Sp * Sp, X(t)), X(r.neg(t))));
        push("weyl_commute", {t}, K::comm(S * Sp * S * Sp * S, Xp(t)));
        push("weyl_commute'", {t}, K::comm(Sp * S * Sp * S * Sp, X(t)));
        for (const auto& u : Q) {
            std::vector<Elem> tu{t, u};
            Elem t2 = mul(t, t), t3 = mul(t2, t);
            push("additivity", tu, X(t) * X(u) * k.x(s, r.add(t, u), -1));
            push("additivity'", tu, Xp(t) * Xp(u) * k.x(l, r.add(t, u), -1));
            push("adjacent", tu, K::comm(Xp(t), K::conj(SpS, Xp(u))));
            push("adjacent'", tu, K::comm(X(t), K::conj(SSp, X(u))));
            push("distant_mixed", tu, K::comm(K::conj(SSp, X(t)), K::conj(SpS, Xp(u))));
            push("close", tu, K::comm(K::conj(S, Xp(t)), K::conj(Sp, X(u))));
            push("distant", tu, K::eq(K::comm(Xp(t), K::conj(S, Xp(u))), K::conj(SpS, Xp(mul(t, u)))));
            push("distant'", tu, K::eq(K::comm(X(t), K::conj(Sp, X(u))), K::conj(SSp, X(mul(t, u)))));
            push("simple", tu,
                 K::eq(K::comm(X(t), Xp(u)), K::conj(SSp, X(mul(t2, u))) * K::conj(Sp, X(r.neg(mul(t, u)))) *
                                                 K::conj(S, Xp(mul(t3, u))) *
                                                 K::conj(SpS, Xp(r.neg(mul(t3, mul(u, u)))))));
        }
    }
    push("collapse", {}, collapse(s));
    push("collapse'", {}, collapse(l));
    return out;
}

struct EndoReport {
    std::size_t relators = 0;
    std::size_t relators_hold = 0;     // the reduced relators themselves
    std::size_t images_hold = 0;       // their images under phi
    std::size_t generators = 0;
    bool frobenius_ok = false;         // phi o phi = Frobenius on generators
    std::optional<bool> inverse_ok;    // psi o phi o phi = id, on perfect fields
    std::vector<std::string> failures;
    bool ok() const {
        return relators_hold == relators && images_hold == relators && frobenius_ok && inverse_ok.value_or(true);
    }
};

inline EndoReport check_endomorphism(EndoType type, const FiniteRing& r, const std::string& rep_kind = "defining") {
    auto a = parse_diagram(type == EndoType::B2Char2 ? "B2" : "G2");
    check_endo_domain(type, a, r.characteristic());
    auto rep = build_rep(a, rep_kind);
    Evaluator<FiniteRing> ev(rep, r);
    EndoReport rep_out;
    auto rels = reduced_relators(type, a, r);
    rep_out.relators = rels.size();
    for (const auto& rel : rels) {
        if (is_identity(r, ev.eval(rel.word))) ++rep_out.relators_hold;
        else rep_out.failures.push_back("relator " + rel.family + ": " + word_to_string(a, r, rel.word));
        auto img = apply_diagram_endo(type, a, r, rel.word);
        if (is_identity(r, ev.eval(img))) ++rep_out.images_hold;
        else rep_out.failures.push_back("image of " + rel.family + ": " + word_to_string(a, r, img));
    }
    const int p = endo_prime(type);
    const bool perfect = r.kind() == FiniteRing::Kind::GaloisField || r.is_field();
    rep_out.frobenius_ok = true;
    if (perfect) rep_out.inverse_ok = true;
    for (std::size_t i = 0; i < 2; ++i) {
        std::vector<Word<FiniteRing::Elem>> gens{{Letter<FiniteRing::Elem>{GenKind::S, i, 0, 1}}};
        for (auto t : r.elements()) gens.push_back({Letter<FiniteRing::Elem>{GenKind::X, i, t, 1}});
        for (const auto& g : gens) {
            ++rep_out.generators;
            auto twice = apply_diagram_endo(type, a, r, apply_diagram_endo(type, a, r, g));
            auto frob = g;
            if (frob[0].kind == GenKind::X) frob[0].t = r.pow(frob[0].t, p);
            if (!(twice == frob)) {
                rep_out.frobenius_ok = false;
                rep_out.failures.push_back("phi^2 differs from Frobenius on " + word_to_string(a, r, g));
            }
            if (perfect && !(apply_root_endo(r, twice) == g)) {
                rep_out.inverse_ok = false;
                rep_out.failures.push_back("psi phi^2 moves " + word_to_string(a, r, g));
            }
        }
    }
    return rep_out;
}

// ---------------------------------------------------------------------------
// Generation of the positive unipotent group by root subgroups

struct GenerationResult {
    std::size_t unipotent_order = 0;  // |F|^(number of positive roots)
    std::size_t subgroup_order = 0;
    std::size_t closure_of_all = 0;   // closure of every positive root group, as a cross-check
    std::size_t abelian_image = 0;    // order of the subgroup times [U, U]
    std::size_t index() const { return subgroup_order ? unipotent_order / subgroup_order : 0; }
    // Index of the image in the abelianization of U.  The subgroup is all of
    // U exactly when this is 1, but the two indices can differ otherwise.
    std::size_t abelian_index() const { return abelian_image ? unipotent_order / abelian_image : 0; }
};

// Root vectors by name for rank 2 diagrams: s and l are the short and long
// simple roots, s' and l' their reflections in the other simple root, and for
// G2 s'' = s_s s_l(s) and l'' = s_l s_s(l).  "simple" stands for all simple
// roots, "beta+gamma" for the simple roots and every s_i(beta_j).  Vectors
// are written [a,b,...].
inline std::vector<RootVec> parse_root_list(const CartanMatrix& a, const std::string& text) {
    std::vector<std::string> toks;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (ch == '[') ++depth;
        if (ch == ']') --depth;
        if (ch == ',' && depth == 0) {
            toks.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    if (!cur.empty()) toks.push_back(cur);
    const std::size_t n = a.size();
    std::vector<RootVec> out;
    auto add = [&](const RootVec& v) {
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    };
    auto refl = [&](std::size_t i, const RootVec& v) {
        RootVec w = v;
        long long c = 0;
        for (std::size_t k = 0; k < n; ++k) c += static_cast<long long>(a(i, k)) * v[k];
        w[i] -= static_cast<int>(c);
        return w;
    };
    for (const auto& t : toks) {
        if (t == "simple" || t == "beta+gamma") {
            for (std::size_t i = 0; i < n; ++i) add(simple_root(n, i));
            if (t == "beta+gamma")
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        if (i != j && a(i, j) != 0) add(refl(i, simple_root(n, j)));
            continue;
        }
        if (!t.empty() && t[0] == '[') {
            auto j = nlohmann::json::parse(t, nullptr, false);
            if (j.is_discarded() || !j.is_array() || j.size() != n) throw MalformedSpec("bad root vector " + t);
            RootVec v;
            for (auto& x : j) v.push_back(x.get<int>());
            add(v);
            continue;
        }
        if (n != 2 || coxeter_m(a, 0, 1) < 4) throw MalformedSpec("root name '" + t + "' needs B2 or G2");
        const std::size_t s = short_node(a, 0, 1), l = 1 - s;
        RootVec as = simple_root(2, s), al = simple_root(2, l);
        if (t == "s") add(as);
        else if (t == "l") add(al);
        else if (t == "s'") add(refl(l, as));
        else if (t == "l'") add(refl(s, al));
        else if (t == "s''" && coxeter_m(a, 0, 1) == 6) add(refl(s, refl(l, as)));
        else if (t == "l''" && coxeter_m(a, 0, 1) == 6) add(refl(l, refl(s, al)));
        else throw MalformedSpec("unknown root name '" + t + "'");
    }
    return out;
}

inline GenerationResult unipotent_generation_index(const CartanMatrix& a, const FiniteRing& field,
                                                   const std::vector<RootVec>& roots) {
    if (!field.is_field()) throw NotAField("generation indices are computed over fields");
    ChevalleyAlgebra g(a);
    const auto& rs = g.roots();
    for (const auto& v : roots)
        if (!rs.contains(v) || !is_positive(v)) throw NotRealRoots("not a positive root: " + root_to_string(v));
    auto basis = additive_generators(field);
    auto gens_for = [&](const std::vector<RootVec>& rv, bool with_inverses = false) {
        std::vector<Matrix<FiniteRing>> gens;
        for (const auto& v : rv)
            for (auto t : basis) {
                gens.push_back(g.exp_ad(v, t, field));
                if (with_inverses) gens.push_back(g.exp_ad(v, field.neg(t), field));
            }
        return gens;
    };
    GenerationResult res;
    const std::size_t np = rs.positive_count();
    res.unipotent_order = 1;
    for (std::size_t k = 0; k < np; ++k) res.unipotent_order *= field.size();
    res.subgroup_order = matrix_closure_order(field, gens_for(roots));
    std::vector<RootVec> all;
    for (std::size_t k = 0; k < np; ++k) all.push_back(rs.roots[k].root);
    res.closure_of_all = matrix_closure_order(field, gens_for(all));

    // [U, U] is the normal closure of the commutators of the generators.
    auto ugens = gens_for(all, true);
    std::vector<Matrix<FiniteRing>> dgens;
    for (std::size_t x = 0; x < ugens.size(); x += 2)
        for (std::size_t y = 0; y < ugens.size(); y += 2) {
            auto c = mul(field, mul(field, ugens[x], ugens[y]), mul(field, ugens[x + 1], ugens[y + 1]));
            if (!is_identity(field, c)) dgens.push_back(std::move(c));
        }
    for (bool grew = true; grew;) {
        grew = false;
        MatrixGroup n(field, dgens);
        const std::size_t count = dgens.size();
        for (std::size_t x = 0; x < ugens.size(); x += 2)
            for (std::size_t k = 0; k < count; ++k) {
                auto c = mul(field, mul(field, ugens[x], dgens[k]), ugens[x + 1]);
                if (!n.contains(c)) {
                    dgens.push_back(std::move(c));
                    grew = true;
                    break;
                }
            }
    }
    auto hgens = gens_for(roots);
    hgens.insert(hgens.end(), dgens.begin(), dgens.end());
    res.abelian_image = matrix_closure_order(field, hgens);
    return res;
}

}  // namespace amalgam
