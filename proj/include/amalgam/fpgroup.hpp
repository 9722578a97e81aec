#pragma once

// Finitely presented groups: free reduction, Todd-Coxeter coset enumeration
// (HLT strategy with lookahead), and closure of finite matrix groups.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "amalgam/errors.hpp"
#include "amalgam/matrix.hpp"
#include "amalgam/present.hpp"
#include "amalgam/ring.hpp"
#include "amalgam/word.hpp"

namespace amalgam {

template <class Elem>
Word<Elem> reduce(const Word<Elem>& w) {
    return free_reduce(w);
}

// A presentation on generators 0..n-1.  Letter 2g is generator g, letter
// 2g+1 its inverse.
struct FpPresentation {
    std::size_t generators = 0;
    std::vector<std::vector<int>> relators;
};

inline int fp_inverse(int x) { return x ^ 1; }

inline std::vector<int> fp_reduce(const std::vector<int>& w) {
    std::vector<int> out;
    for (int x : w) {
        if (!out.empty() && out.back() == fp_inverse(x)) out.pop_back();
        else out.push_back(x);
    }
    return out;
}

// Free and cyclic reduction.
inline std::vector<int> fp_cyclic_reduce(const std::vector<int>& w) {
    auto r = fp_reduce(w);
    std::size_t b = 0, e = r.size();
    while (e - b >= 2 && r[b] == fp_inverse(r[e - 1])) ++b, --e;
    return {r.begin() + b, r.begin() + e};
}

// Parses words like "a b A" or "ab^-1": lower-case letters are generators,
// upper-case their inverses, "^-1" inverts the previous letter.
inline std::vector<int> fp_parse(const std::string& text) {
    std::vector<int> w;
    for (std::size_t k = 0; k < text.size(); ++k) {
        char ch = text[k];
        if (ch >= 'a' && ch <= 'z') w.push_back(2 * (ch - 'a'));
        else if (ch >= 'A' && ch <= 'Z') w.push_back(2 * (ch - 'A') + 1);
        else if (ch == '^' && text.compare(k, 3, "^-1") == 0 && !w.empty()) {
            w.back() = fp_inverse(w.back());
            k += 2;
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            throw MalformedSpec(std::string("unexpected character in word: ") + ch);
        }
    }
    return w;
}

template <class Ring>
std::vector<int> to_fp_word(const Presentation<Ring>& p, const std::map<std::string, std::size_t>& index,
                            const Word<typename Ring::Elem>& w) {
    std::vector<int> out;
    for (const auto& l : w) {
        auto name = generator_name(p.diagram, p.ring, l);
        auto it = index.find(name);
        if (it == index.end()) throw UnassignedGenerator(name);
        for (int k = 0; k < std::abs(l.exp); ++k) out.push_back(static_cast<int>(2 * it->second) + (l.exp < 0));
    }
    return out;
}

template <class Ring>
std::map<std::string, std::size_t> generator_index(const Presentation<Ring>& p) {
    std::map<std::string, std::size_t> index;
    for (std::size_t k = 0; k < p.generators.size(); ++k)
        index[generator_name(p.diagram, p.ring, p.generators[k])] = k;
    return index;
}

template <class Ring>
FpPresentation to_fp(const Presentation<Ring>& p) {
    auto index = generator_index(p);
    FpPresentation fp{p.generators.size(), {}};
    for (const auto& r : p.relators) fp.relators.push_back(to_fp_word(p, index, r.word));
    return fp;
}

struct CosetResult {
    bool complete = false;
    std::size_t index = 0;       // number of cosets when complete
    std::size_t live_peak = 0;   // largest number of live cosets seen
    std::size_t defined = 0;     // total coset definitions
};

// Coset enumeration for the subgroup generated by `subgroup` in the group
// presented by fp.  Relators are processed in the given order, so the run is
// deterministic.  Incomplete when more than max_cosets live cosets are needed.
class ToddCoxeter {
public:
    ToddCoxeter(const FpPresentation& fp, const std::vector<std::vector<int>>& subgroup, std::size_t max_cosets)
        : cols_(2 * fp.generators), cap_(max_cosets) {
        std::set<std::vector<int>> seen;
        for (const auto& r : fp.relators) {
            auto c = fp_cyclic_reduce(r);
            if (!c.empty() && seen.insert(c).second) rels_.push_back(std::move(c));
        }
        for (const auto& h : subgroup) {
            auto c = fp_reduce(h);
            if (!c.empty()) subgroup_.push_back(std::move(c));
        }
    }

    CosetResult run() {
        new_coset();
        for (const auto& h : subgroup_) scan_and_fill(0, h);
        for (std::size_t c = 0; c < p_.size(); ++c) {
            if (!alive(c)) continue;
            for (const auto& r : rels_) {
                if (!alive(c)) break;
                if (!scan_and_fill(c, r)) return finish(false);
            }
            for (int x = 0; x < static_cast<int>(cols_) && alive(c); ++x) {
                if (at(c, x) >= 0) continue;
                if (!ensure_room()) return finish(false);
                if (!alive(c)) break;
                define(static_cast<int>(c), x);
            }
            if (need_compact_ && alive(c)) c = compact(c);
        }
        return finish(true);
    }

private:
    std::size_t cols_, cap_;
    std::vector<std::vector<int>> rels_, subgroup_;
    std::vector<int> table_, p_;
    std::vector<int> queue_;
    std::size_t live_ = 0, peak_ = 0, defined_ = 0;
    bool need_compact_ = false;

    int& at(std::size_t c, int x) { return table_[c * cols_ + static_cast<std::size_t>(x)]; }
    bool alive(std::size_t c) const { return p_[c] == static_cast<int>(c); }

    CosetResult finish(bool complete) {
        CosetResult r;
        r.complete = complete;
        r.index = complete ? live_ : 0;
        r.live_peak = peak_;
        r.defined = defined_;
        return r;
    }

    int new_coset() {
        int c = static_cast<int>(p_.size());
        p_.push_back(c);
        table_.resize(table_.size() + cols_, -1);
        ++live_;
        peak_ = std::max(peak_, live_);
        return c;
    }

    void define(int c, int x) {
        int d = new_coset();
        ++defined_;
        at(c, x) = d;
        at(d, fp_inverse(x)) = c;
    }

    // Lookahead when the table is full: scan every coset without defining,
    // then compact.  Returns false if there is still no room.
    bool ensure_room() {
        if (live_ < cap_) return true;
        for (std::size_t c = 0; c < p_.size(); ++c)
            for (const auto& r : rels_) {
                if (!alive(c)) break;
                scan(static_cast<int>(c), r);
            }
        need_compact_ = true;
        return live_ < cap_;
    }

    // Renumbers live cosets in order; returns the new index of coset c.
    std::size_t compact(std::size_t c) {
        need_compact_ = false;
        std::vector<int> fresh(p_.size(), -1);
        int k = 0;
        for (std::size_t d = 0; d < p_.size(); ++d)
            if (alive(d)) fresh[d] = k++;
        std::vector<int> nt(static_cast<std::size_t>(k) * cols_, -1);
        for (std::size_t d = 0; d < p_.size(); ++d) {
            if (fresh[d] < 0) continue;
            for (std::size_t x = 0; x < cols_; ++x) {
                int v = table_[d * cols_ + x];
                nt[static_cast<std::size_t>(fresh[d]) * cols_ + x] = v < 0 ? -1 : fresh[static_cast<std::size_t>(v)];
            }
        }
        table_ = std::move(nt);
        p_.resize(static_cast<std::size_t>(k));
        std::iota(p_.begin(), p_.end(), 0);
        return static_cast<std::size_t>(fresh[c]);
    }

    int rep(int c) {
        int r = c;
        while (p_[static_cast<std::size_t>(r)] != r) r = p_[static_cast<std::size_t>(r)];
        while (p_[static_cast<std::size_t>(c)] != r) {
            int nx = p_[static_cast<std::size_t>(c)];
            p_[static_cast<std::size_t>(c)] = r;
            c = nx;
        }
        return r;
    }

    void merge(int a, int b) {
        a = rep(a), b = rep(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        p_[static_cast<std::size_t>(b)] = a;
        --live_;
        queue_.push_back(b);
    }

    void coincidence(int a, int b) {
        queue_.clear();
        merge(a, b);
        for (std::size_t q = 0; q < queue_.size(); ++q) {
            int e = queue_[q];
            for (int x = 0; x < static_cast<int>(cols_); ++x) {
                int f = at(static_cast<std::size_t>(e), x);
                if (f < 0) continue;
                int xi = fp_inverse(x);
                if (at(static_cast<std::size_t>(f), xi) == e) at(static_cast<std::size_t>(f), xi) = -1;
                int e1 = rep(e), f1 = rep(f);
                int& ex = at(static_cast<std::size_t>(e1), x);
                if (ex >= 0) {
                    merge(f1, ex);
                } else if (at(static_cast<std::size_t>(f1), xi) >= 0) {
                    merge(e1, at(static_cast<std::size_t>(f1), xi));
                } else {
                    ex = f1;
                    at(static_cast<std::size_t>(f1), xi) = e1;
                }
            }
        }
    }

    // Scans w from coset a, filling gaps by new definitions.  Returns false
    // when out of room.
    bool scan_and_fill(std::size_t a0, const std::vector<int>& w) {
        int a = static_cast<int>(a0);
        int f = a, b = a;
        int i = 0, j = static_cast<int>(w.size()) - 1;
        while (true) {
            while (i <= j && at(static_cast<std::size_t>(f), w[static_cast<std::size_t>(i)]) >= 0)
                f = at(static_cast<std::size_t>(f), w[static_cast<std::size_t>(i++)]);
            if (i > j) {
                if (f != a) coincidence(f, a);
                return true;
            }
            while (j >= i && at(static_cast<std::size_t>(b), fp_inverse(w[static_cast<std::size_t>(j)])) >= 0)
                b = at(static_cast<std::size_t>(b), fp_inverse(w[static_cast<std::size_t>(j--)]));
            if (j < i) {
                coincidence(f, b);
                return true;
            }
            if (i == j) {
                at(static_cast<std::size_t>(f), w[static_cast<std::size_t>(i)]) = b;
                at(static_cast<std::size_t>(b), fp_inverse(w[static_cast<std::size_t>(i)])) = f;
                return true;
            }
            if (live_ >= cap_) {
                if (!ensure_room()) return false;
                if (!alive(a0)) return true;
                f = b = a;  // the lookahead may have changed the table
                i = 0, j = static_cast<int>(w.size()) - 1;
                continue;
            }
            define(f, w[static_cast<std::size_t>(i)]);
        }
    }

    void scan(int a, const std::vector<int>& w) {
        int f = a, b = a;
        int i = 0, j = static_cast<int>(w.size()) - 1;
        while (i <= j && at(static_cast<std::size_t>(f), w[static_cast<std::size_t>(i)]) >= 0)
            f = at(static_cast<std::size_t>(f), w[static_cast<std::size_t>(i++)]);
        if (i > j) {
            if (f != a) coincidence(f, a);
            return;
        }
        while (j >= i && at(static_cast<std::size_t>(b), fp_inverse(w[static_cast<std::size_t>(j)])) >= 0)
            b = at(static_cast<std::size_t>(b), fp_inverse(w[static_cast<std::size_t>(j--)]));
        if (j < i) {
            coincidence(f, b);
        } else if (i == j) {
            at(static_cast<std::size_t>(f), w[static_cast<std::size_t>(i)]) = b;
            at(static_cast<std::size_t>(b), fp_inverse(w[static_cast<std::size_t>(i)])) = f;
        }
    }
};

inline constexpr std::size_t kDefaultMaxCosets = 2'000'000;

inline CosetResult todd_coxeter(const FpPresentation& fp, const std::vector<std::vector<int>>& subgroup = {},
                                std::size_t max_cosets = kDefaultMaxCosets) {
    return ToddCoxeter(fp, subgroup, max_cosets).run();
}

template <class Ring>
CosetResult todd_coxeter(const Presentation<Ring>& p, const std::vector<Word<typename Ring::Elem>>& subgroup = {},
                         std::size_t max_cosets = kDefaultMaxCosets) {
    auto index = generator_index(p);
    std::vector<std::vector<int>> h;
    for (const auto& w : subgroup) h.push_back(to_fp_word(p, index, w));
    return todd_coxeter(to_fp(p), h, max_cosets);
}

// The subgroup generated by S_i and every X_i(t) for i in nodes.
template <class Ring>
std::vector<Word<typename Ring::Elem>> node_subgroup(const Presentation<Ring>& p, const std::vector<std::size_t>& nodes) {
    std::vector<Word<typename Ring::Elem>> out;
    for (const auto& g : p.generators)
        if (std::find(nodes.begin(), nodes.end(), g.node) != nodes.end()) out.push_back({g});
    return out;
}

// ---------------------------------------------------------------------------
// Matrix groups

namespace detail {

struct VecHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
        std::size_t h = 1469598103934665603ULL;
        for (auto x : v) h = (h ^ x) * 1099511628211ULL;
        return h;
    }
};

}  // namespace detail

// The group generated by invertible matrices over a finite ring, by
// breadth-first closure.  Throws CapExceeded beyond cap elements.
class MatrixGroup {
public:
    MatrixGroup(const FiniteRing& r, const std::vector<Matrix<FiniteRing>>& gens, std::size_t cap = 5'000'000) {
        if (gens.empty()) {
            seen_.insert(std::vector<std::uint32_t>{});
            return;
        }
        for (const auto& g : gens)
            if (g.n != gens[0].n) throw DimensionMismatch("generator sizes differ");
        std::vector<Matrix<FiniteRing>> todo{identity(r, gens[0].n)};
        seen_.insert(todo[0].a);
        while (!todo.empty()) {
            auto cur = std::move(todo.back());
            todo.pop_back();
            for (const auto& g : gens) {
                auto nx = mul(r, cur, g);
                if (seen_.insert(nx.a).second) {
                    if (seen_.size() > cap) throw CapExceeded("matrix group exceeds " + std::to_string(cap) + " elements");
                    todo.push_back(std::move(nx));
                }
            }
        }
    }

    std::size_t order() const { return seen_.size(); }
    bool contains(const Matrix<FiniteRing>& m) const { return seen_.count(m.a) > 0; }

private:
    std::unordered_set<std::vector<std::uint32_t>, detail::VecHash> seen_;
};

inline std::size_t matrix_closure_order(const FiniteRing& r, const std::vector<Matrix<FiniteRing>>& gens,
                                        std::size_t cap = 5'000'000) {
    return MatrixGroup(r, gens, cap).order();
}

}  // namespace amalgam
