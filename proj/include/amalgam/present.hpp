#pragma once

// Presentations of pre-Steinberg groups: generators S_i and X_i(t), relators
// in batches 0 (Weyl group extension), 1 (additivity), 2 (Weyl action on root
// groups), 3 (Chevalley commutator relations), 4 (torus and collapse), and an
// optional batch 5 of Kac-Moody quotient relators.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "amalgam/cartan.hpp"
#include "amalgam/errors.hpp"
#include "amalgam/ring.hpp"
#include "amalgam/word.hpp"

namespace amalgam {

inline constexpr int kKacMoodyBatch = 5;

template <class Elem>
struct Relator {
    int batch = 0;
    std::string family;
    std::vector<std::size_t> nodes;  // ordered as in the defining formula
    std::vector<Elem> params;
    Word<Elem> word;
};

struct EmitOptions {
    bool prune = false;
    bool kac_moody = false;
    bool sparse = false;  // additivity only against an additive generating set
    bool table1 = false;  // the simply-laced table of defining relations
};

template <class Ring>
struct Presentation {
    using Elem = typename Ring::Elem;
    CartanMatrix diagram;
    Ring ring;
    EmitOptions options;
    std::vector<Letter<Elem>> generators;
    std::vector<Relator<Elem>> relators;

    std::size_t count(int batch) const {
        return static_cast<std::size_t>(
            std::count_if(relators.begin(), relators.end(), [&](const auto& r) { return r.batch == batch; }));
    }
};

// Additive generators of a finite ring, chosen greedily in element order.
inline std::vector<FiniteRing::Elem> additive_generators(const FiniteRing& r) {
    std::vector<FiniteRing::Elem> gens;
    std::set<FiniteRing::Elem> span{r.zero()};
    for (auto x : r.elements()) {
        if (span.count(x)) continue;
        gens.push_back(x);
        std::vector<FiniteRing::Elem> todo(span.begin(), span.end());
        while (!todo.empty()) {
            auto y = r.add(todo.back(), x);
            todo.pop_back();
            if (span.insert(y).second) todo.push_back(y);
        }
    }
    return gens;
}

// Word-building helpers bound to a diagram and ring.
template <class Ring>
class WordKit {
public:
    using Elem = typename Ring::Elem;
    using W = Word<Elem>;

    explicit WordKit(const Ring& r) : r_(r) {}

    W s(std::size_t i, int e = 1) const { return {Letter<Elem>{GenKind::S, i, r_.zero(), e}}; }
    W x(std::size_t i, const Elem& t, int e = 1) const { return {Letter<Elem>{GenKind::X, i, t, e}}; }
    // Product S_{w0} S_{w1} ... of simple generators.
    W s_word(std::initializer_list<std::size_t> nodes) const {
        W w;
        for (auto i : nodes) w.push_back(Letter<Elem>{GenKind::S, i, r_.zero(), 1});
        return w;
    }
    static W conj(const W& g, const W& y) { return g * y * inverse(g); }
    static W comm(const W& a, const W& b) { return a * b * inverse(a) * inverse(b); }
    // Relator expressing lhs = rhs.
    static W eq(const W& lhs, const W& rhs) { return lhs * inverse(rhs); }

    // s~_i(r) = X_i(r) S_i X_i(1/r) S_i^-1 X_i(r)
    W s_tilde(std::size_t i, const Elem& r) const {
        auto ri = r_.inverse(r);
        if (!ri) throw ArithmeticError("s~(r) needs a unit r");
        return x(i, r) * s(i) * x(i, *ri) * s(i, -1) * x(i, r);
    }
    // h~_i(r) = s~_i(r) s~_i(-1)
    W h_tilde(std::size_t i, const Elem& r) const { return s_tilde(i, r) * s_tilde(i, r_.neg(r_.one())); }

    const Ring& ring() const { return r_; }

private:
    const Ring& r_;
};

namespace detail {

template <class Ring>
class Emitter {
public:
    using Elem = typename Ring::Elem;
    using W = Word<Elem>;

    Emitter(const CartanMatrix& a, const Ring& r, const EmitOptions& opt)
        : a_(a), r_(r), k_(r), opt_(opt), P_(r.parameter_values(0)), Q_(r.parameter_values(1)) {}

    std::vector<Relator<Elem>> out;

    void push(int batch, const std::string& fam, std::vector<std::size_t> nodes, std::vector<Elem> params,
              const W& w) {
        out.push_back(Relator<Elem>{batch, fam, std::move(nodes), std::move(params), free_reduce(w)});
    }

    Elem neg(const Elem& t) const { return r_.neg(t); }
    Elem mul(const Elem& a, const Elem& b) const { return r_.mul(a, b); }
    Elem c(long long v) const { return r_.from_int(v); }

    std::vector<Elem> units(int slot) const { return r_.parameter_units(slot); }

    void batch0() {
        const std::size_t n = a_.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                int m = coxeter_m(a_, i, j);
                if (m == kInfiniteM) continue;
                W lhs, rhs;
                for (int k = 0; k < m; ++k) {
                    lhs = lhs * k_.s(k % 2 ? j : i);
                    rhs = rhs * k_.s(k % 2 ? i : j);
                }
                push(0, "artin", {i, j}, {}, WordKit<Ring>::eq(lhs, rhs));
            }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                int eps = a_(i, j) % 2 == 0 ? 1 : -1;
                push(0, "square_conj", {i, j}, {}, k_.s(i) * k_.s(i) * k_.s(j) * k_.s(i, -1) * k_.s(i, -1) * k_.s(j, -eps));
            }
    }

    void batch1() {
        for (std::size_t i = 0; i < a_.size(); ++i) {
            std::vector<Elem> second = Q_;
            if constexpr (std::is_same_v<Ring, FiniteRing>) {
                if (opt_.sparse) second = additive_generators(r_);
            }
            for (const auto& t : P_)
                for (const auto& u : second)
                    push(1, "additivity", {i}, {t, u}, k_.x(i, t) * k_.x(i, u) * k_.x(i, r_.add(t, u), -1));
        }
    }

    void batch2() {
        const std::size_t n = a_.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (const auto& t : P_) {
                    Elem st = a_(i, j) % 2 == 0 ? t : neg(t);
                    push(2, "square_action", {i, j}, {t},
                         k_.s(i) * k_.s(i) * k_.x(j, t) * k_.s(i, -1) * k_.s(i, -1) * k_.x(j, st, -1));
                }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                int m = coxeter_m(a_, i, j);
                for (const auto& t : P_) {
                    if (m == 3) {
                        push(2, "transport", {i, j}, {t},
                             WordKit<Ring>::eq(k_.x(i, t) * k_.s_word({j, i}), k_.s_word({j, i}) * k_.x(j, t)));
                    } else if (m == 2 || m == 4 || m == 6) {
                        W w = m == 2 ? k_.s_word({j}) : m == 4 ? k_.s_word({j, i, j}) : k_.s_word({j, i, j, i, j});
                        push(2, "weyl_commute", {i, j}, {t}, WordKit<Ring>::comm(w, k_.x(i, t)));
                    }
                }
            }
    }

    // Chevalley commutator relators for one pair of nodes.
    void edge(std::size_t i, std::size_t j) {
        using K = WordKit<Ring>;
        int m = coxeter_m(a_, i, j);
        if (m == kInfiniteM) throw UnsupportedEdge("nodes " + a_.name(i) + "," + a_.name(j) + " have m = infinity");
        if (m == 2) {
            for (const auto& t : P_)
                for (const auto& u : Q_) push(3, "commute", {i, j}, {t, u}, K::comm(k_.x(i, t), k_.x(j, u)));
            return;
        }
        if (m == 3) {
            for (auto [p, q] : {std::pair{i, j}, std::pair{j, i}})
                for (const auto& t : P_)
                    for (const auto& u : Q_) {
                        push(3, "a2_commutator", {p, q}, {t, u},
                             K::eq(K::comm(k_.x(p, t), k_.x(q, u)), K::conj(k_.s(p), k_.x(q, mul(t, u)))));
                        push(3, "a2_commute", {p, q}, {t, u}, K::comm(k_.x(p, t), K::conj(k_.s(p), k_.x(q, u))));
                    }
            return;
        }
        // Unprimed letters belong to the short node s, primed to the long node l.
        const std::size_t s = short_node(a_, i, j), l = s == i ? j : i;
        auto S = k_.s(s), Sp = k_.s(l);
        auto X = [&](const Elem& t) { return k_.x(s, t); };
        auto Xp = [&](const Elem& t) { return k_.x(l, t); };
        std::vector<std::size_t> nodes{s, l};
        if (m == 4) {
            for (const auto& t : P_)
                for (const auto& u : Q_) {
                    std::vector<Elem> tu{t, u};
                    push(3, "b2_1", nodes, tu, K::comm(K::conj(S, Xp(t)), K::conj(Sp, X(u))));
                    push(3, "b2_2", nodes, tu, K::comm(Xp(t), K::conj(S, Xp(u))));
                    push(3, "b2_3", nodes, tu,
                         K::eq(K::comm(X(t), K::conj(Sp, X(u))), K::conj(S, Xp(mul(c(-2), mul(t, u))))));
                    push(3, "b2_4", nodes, tu,
                         K::eq(K::comm(X(t), Xp(u)),
                               K::conj(Sp, X(neg(mul(t, u)))) * K::conj(S, Xp(mul(mul(t, t), u)))));
                }
            return;
        }
        if (m == 6) {
            auto SSp = S * Sp, SpS = Sp * S;
            for (const auto& t : P_)
                for (const auto& u : Q_) {
                    std::vector<Elem> tu{t, u};
                    Elem t2 = mul(t, t), t3 = mul(t2, t), u2 = mul(u, u);
                    push(3, "g2_1", nodes, tu, K::comm(Xp(t), K::conj(SpS, Xp(u))));
                    push(3, "g2_2", nodes, tu, K::comm(K::conj(SSp, X(t)), K::conj(SpS, Xp(u))));
                    push(3, "g2_3", nodes, tu, K::comm(K::conj(S, Xp(t)), K::conj(Sp, X(u))));
                    push(3, "g2_4", nodes, tu,
                         K::eq(K::comm(Xp(t), K::conj(S, Xp(u))), K::conj(SpS, Xp(mul(t, u)))));
                    push(3, "g2_5", nodes, tu,
                         K::eq(K::comm(X(t), K::conj(SSp, X(u))), K::conj(S, Xp(mul(c(3), mul(t, u))))));
                    push(3, "g2_6", nodes, tu,
                         K::eq(K::comm(X(t), K::conj(Sp, X(u))),
                               K::conj(SSp, X(mul(c(-2), mul(t, u)))) * K::conj(S, Xp(mul(c(-3), mul(t2, u)))) *
                                   K::conj(SpS, Xp(mul(c(-3), mul(t, u2))))));
                    push(3, "g2_7", nodes, tu,
                         K::eq(K::comm(X(t), Xp(u)),
                               K::conj(SSp, X(mul(t2, u))) * K::conj(Sp, X(neg(mul(t, u)))) *
                                   K::conj(S, Xp(mul(t3, u))) * K::conj(SpS, Xp(neg(mul(t3, u2))))));
                }
            return;
        }
        throw UnsupportedEdge("unexpected Coxeter exponent " + std::to_string(m));
    }

    void batch3() {
        for (std::size_t i = 0; i < a_.size(); ++i)
            for (std::size_t j = i + 1; j < a_.size(); ++j)
                if (coxeter_m(a_, i, j) != kInfiniteM) edge(i, j);
    }

    void batch4() {
        using K = WordKit<Ring>;
        const std::size_t n = a_.size();
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& r : units(0)) {
                auto h = k_.h_tilde(i, r);
                for (std::size_t j = 0; j < n; ++j)
                    for (const auto& t : P_) {
                        Elem a = mul(r_.pow(r, a_(i, j)), t);
                        Elem b = mul(r_.pow(r, -a_(i, j)), t);
                        push(4, "torus_x", {i, j}, {r, t}, K::eq(K::conj(h, k_.x(j, t)), k_.x(j, a)));
                        push(4, "torus_sxs", {i, j}, {r, t},
                             K::eq(K::conj(h, K::conj(k_.s(j), k_.x(j, t))), K::conj(k_.s(j), k_.x(j, b))));
                    }
            }
        for (std::size_t i = 0; i < n; ++i) {
            auto one = r_.one();
            push(4, "collapse", {i}, {},
                 K::eq(k_.s(i), k_.x(i, one) * k_.s(i) * k_.x(i, one) * k_.s(i, -1) * k_.x(i, one)));
        }
    }

    void kac_moody() {
        for (std::size_t i = 0; i < a_.size(); ++i)
            for (const auto& u : units(0))
                for (const auto& v : units(1))
                    push(kKacMoodyBatch, "km", {i}, {u, v},
                         k_.h_tilde(i, mul(u, v)) * inverse(k_.h_tilde(i, u)) * inverse(k_.h_tilde(i, v)));
    }

    // The simply-laced table of defining relations.
    void table1() {
        using K = WordKit<Ring>;
        const std::size_t n = a_.size();
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& t : P_)
                for (const auto& u : Q_)
                    push(1, "additivity", {i}, {t, u}, k_.x(i, t) * k_.x(i, u) * k_.x(i, r_.add(t, u), -1));
            for (const auto& t : P_) push(2, "square_commute", {i}, {t}, K::comm(k_.s(i) * k_.s(i), k_.x(i, t)));
            auto one = r_.one();
            push(4, "collapse", {i}, {},
                 K::eq(k_.s(i), k_.x(i, one) * k_.s(i) * k_.x(i, one) * k_.s(i, -1) * k_.x(i, one)));
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                if (a_(i, j) == 0) {
                    push(0, "commute_s", {i, j}, {}, K::comm(k_.s(i), k_.s(j)));
                    for (const auto& t : P_) push(2, "commute_sx", {i, j}, {t}, K::comm(k_.s(i), k_.x(j, t)));
                    for (const auto& t : P_)
                        for (const auto& u : Q_) push(3, "commute", {i, j}, {t, u}, K::comm(k_.x(i, t), k_.x(j, u)));
                } else {
                    push(0, "artin", {i, j}, {}, K::eq(k_.s_word({i, j, i}), k_.s_word({j, i, j})));
                    push(0, "square_conj", {i, j}, {}, K::eq(k_.s_word({i, i, j}) * k_.s(i, -1) * k_.s(i, -1), k_.s(j, -1)));
                    for (const auto& t : P_) {
                        push(2, "transport", {i, j}, {t}, K::eq(k_.x(i, t) * k_.s_word({j, i}), k_.s_word({j, i}) * k_.x(j, t)));
                        push(2, "square_action", {i, j}, {t},
                             K::eq(k_.s_word({i, i}) * k_.x(j, t) * k_.s(i, -1) * k_.s(i, -1), k_.x(j, t, -1)));
                    }
                    for (const auto& t : P_)
                        for (const auto& u : Q_) {
                            push(3, "a2_commute", {i, j}, {t, u}, K::comm(k_.x(i, t), K::conj(k_.s(i), k_.x(j, u))));
                            push(3, "a2_commutator", {i, j}, {t, u},
                                 K::eq(K::comm(k_.x(i, t), k_.x(j, u)), K::conj(k_.s(i), k_.x(j, mul(t, u)))));
                        }
                }
            }
    }

private:
    const CartanMatrix& a_;
    const Ring& r_;
    WordKit<Ring> k_;
    EmitOptions opt_;
    std::vector<Elem> P_, Q_;
};

}  // namespace detail

// Batch 3 relators for a single edge (i, j).
template <class Ring>
std::vector<Relator<typename Ring::Elem>> chevalley_relators(const CartanMatrix& a, const Ring& r, std::size_t i,
                                                             std::size_t j) {
    detail::Emitter<Ring> e(a, r, {});
    e.edge(i, j);
    return std::move(e.out);
}

// Index pairs whose batch 3 relators are kept by pruning.  Unordered pairs
// with m = 2 are linked through A1A2 subdiagrams, ordered pairs with m = 3
// through A3 subdiagrams; the first pair of each linked class is kept.
struct PruneKeep {
    std::set<std::pair<std::size_t, std::size_t>> m2, m3;
};

inline PruneKeep prune_keep(const CartanMatrix& a) {
    const std::size_t n = a.size();
    auto m = [&](std::size_t i, std::size_t j) { return coxeter_m(a, i, j); };
    using P = std::pair<std::size_t, std::size_t>;
    std::map<P, P> parent;
    std::function<P(P)> find = [&](P x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    auto unite = [&](P x, P y) {
        x = find(x), y = find(y);
        if (y < x) std::swap(x, y);
        parent[y] = x;
    };
    auto key2 = [](std::size_t i, std::size_t j) { return i < j ? P{i, j} : P{j, i}; };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (m(i, j) == 2) parent[key2(i, j)] = key2(i, j);
            if (m(i, j) == 3) parent[P{i, j}] = P{i, j};
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                if (m(i, j) == 2 && m(i, k) == 2 && m(j, k) == 3) unite(key2(i, j), key2(i, k));
                if (m(i, j) == 3 && m(j, k) == 3 && m(i, k) == 2) unite(P{i, j}, P{j, k});
            }
    PruneKeep keep;
    for (auto& [p, _] : parent) {
        if (find(p) != p) continue;
        (m(p.first, p.second) == 2 ? keep.m2 : keep.m3).insert(p);
    }
    return keep;
}

// Drops the batch 3 relators derivable from the kept ones.
template <class Ring>
Presentation<Ring> prune(Presentation<Ring> p) {
    auto keep = prune_keep(p.diagram);
    std::erase_if(p.relators, [&](const auto& r) {
        if (r.batch != 3) return false;
        if (r.family == "commute") {
            auto k = std::minmax(r.nodes[0], r.nodes[1]);
            return !keep.m2.count({k.first, k.second});
        }
        if (r.family.rfind("a2_", 0) == 0) return !keep.m3.count({r.nodes[0], r.nodes[1]});
        return false;
    });
    p.options.prune = true;
    return p;
}

template <class Ring>
Presentation<Ring> emit_presentation(const CartanMatrix& a, const Ring& r, const EmitOptions& opt = {}) {
    Presentation<Ring> p{a, r, opt, {}, {}};
    for (std::size_t i = 0; i < a.size(); ++i) {
        p.generators.push_back(Letter<typename Ring::Elem>{GenKind::S, i, r.zero(), 1});
        for (const auto& t : r.parameter_values(0))
            p.generators.push_back(Letter<typename Ring::Elem>{GenKind::X, i, t, 1});
    }
    detail::Emitter<Ring> e(a, r, opt);
    if (opt.table1) {
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < a.size(); ++j)
                if (i != j && a(i, j) != 0 && a(i, j) != -1)
                    throw NotSupported("table mode needs a simply-laced diagram");
        for (const auto& comp : components(a))
            if (comp.size() == 1) throw NotSupported("table mode excludes A1 components");
        e.table1();
        std::stable_sort(e.out.begin(), e.out.end(), [](const auto& x, const auto& y) { return x.batch < y.batch; });
    } else {
        e.batch0();
        e.batch1();
        e.batch2();
        e.batch3();
        e.batch4();
        if (opt.kac_moody) e.kac_moody();
    }
    p.relators = std::move(e.out);
    if (opt.prune && !opt.table1) {
        p = prune(std::move(p));
    }
    return p;
}

// Union of the emissions of all one- and two-node subdiagrams, with node
// indices mapped back into the full diagram.
template <class Ring>
std::vector<Relator<typename Ring::Elem>> subdiagram_union(const CartanMatrix& a, const Ring& r,
                                                           const EmitOptions& opt = {}) {
    std::vector<Relator<typename Ring::Elem>> out;
    auto add = [&](const std::vector<std::size_t>& nodes) {
        auto sub = emit_presentation(a.sub(nodes), r, opt);
        for (auto rel : sub.relators) {
            for (auto& v : rel.nodes) v = nodes[v];
            for (auto& l : rel.word) l.node = nodes[l.node];
            out.push_back(std::move(rel));
        }
    };
    for (std::size_t i = 0; i < a.size(); ++i) add({i});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) add({i, j});
    return out;
}

// ---------------------------------------------------------------------------
// Export

template <class Ring>
nlohmann::ordered_json to_json(const Presentation<Ring>& p) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["diagram"] = p.diagram.to_string();
    j["ring"] = p.ring.descriptor();
    ordered_json gens = ordered_json::array();
    for (const auto& g : p.generators) gens.push_back(generator_name(p.diagram, p.ring, g));
    j["generators"] = gens;
    ordered_json rels = ordered_json::array();
    for (const auto& r : p.relators) {
        ordered_json o;
        o["batch"] = r.batch;
        o["family"] = r.family;
        ordered_json nodes = ordered_json::array();
        for (auto v : r.nodes) nodes.push_back(p.diagram.name(v));
        o["nodes"] = nodes;
        ordered_json params = ordered_json::array();
        for (const auto& t : r.params) params.push_back(p.ring.format(t));
        o["params"] = params;
        ordered_json word = ordered_json::array();
        for (const auto& l : r.word) word.push_back(ordered_json::array({generator_name(p.diagram, p.ring, l), l.exp}));
        o["word"] = word;
        rels.push_back(o);
    }
    j["relators"] = rels;
    return j;
}

template <class Ring>
std::string to_gap(const Presentation<Ring>& p) {
    std::map<std::string, std::size_t> index;
    std::ostringstream os;
    os << "# diagram " << p.diagram.to_string() << " over " << p.ring.descriptor() << "\n";
    for (std::size_t k = 0; k < p.generators.size(); ++k) {
        auto name = generator_name(p.diagram, p.ring, p.generators[k]);
        index[name] = k + 1;
        os << "# F." << k + 1 << " = " << name << "\n";
    }
    os << "F := FreeGroup(" << p.generators.size() << ");\n";
    os << "rels := [\n";
    bool first = true;
    for (const auto& r : p.relators) {
        if (r.word.empty()) continue;
        if (!first) os << ",\n";
        first = false;
        os << "  ";
        for (std::size_t k = 0; k < r.word.size(); ++k) {
            auto it = index.find(generator_name(p.diagram, p.ring, r.word[k]));
            if (it == index.end()) throw NotSupported("relator uses a generator outside the generator list");
            if (k) os << "*";
            os << "F." << it->second;
            if (r.word[k].exp != 1) os << "^" << r.word[k].exp;
        }
    }
    os << "\n];\n";
    return os.str();
}

}  // namespace amalgam
