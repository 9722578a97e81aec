#pragma once

// Group words in the generators S_i and X_i(t).

#include <cstdint>
#include <string>
#include <vector>

#include "amalgam/cartan.hpp"

namespace amalgam {

enum class GenKind : std::uint8_t { S, X };

template <class Elem>
struct Letter {
    GenKind kind = GenKind::S;
    std::size_t node = 0;
    Elem t{};  // unused for S
    int exp = 1;

    bool same_generator(const Letter& o) const {
        return kind == o.kind && node == o.node && (kind == GenKind::S || t == o.t);
    }
    bool operator==(const Letter& o) const { return same_generator(o) && exp == o.exp; }
};

template <class Elem>
using Word = std::vector<Letter<Elem>>;

// Cancels adjacent x x^-1 pairs until none remain.
template <class Elem>
Word<Elem> free_reduce(const Word<Elem>& w) {
    Word<Elem> out;
    out.reserve(w.size());
    for (const auto& l : w) {
        if (!out.empty() && out.back().same_generator(l) && out.back().exp == -l.exp) out.pop_back();
        else out.push_back(l);
    }
    return out;
}

template <class Elem>
Word<Elem> inverse(const Word<Elem>& w) {
    Word<Elem> out(w.rbegin(), w.rend());
    for (auto& l : out) l.exp = -l.exp;
    return out;
}

template <class Elem>
Word<Elem> operator*(Word<Elem> a, const Word<Elem>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// Distinct nodes mentioned by a word.
template <class Elem>
std::vector<std::size_t> word_nodes(const Word<Elem>& w) {
    std::vector<std::size_t> out;
    for (const auto& l : w)
        if (std::find(out.begin(), out.end(), l.node) == out.end()) out.push_back(l.node);
    std::sort(out.begin(), out.end());
    return out;
}

template <class Ring>
std::string generator_name(const CartanMatrix& a, const Ring& r, const Letter<typename Ring::Elem>& l) {
    if (l.kind == GenKind::S) return "S" + a.name(l.node);
    return "X" + a.name(l.node) + "_" + r.label(l.t);
}

// Human-readable form such as "S1 X2(x+1) S1^-1".
template <class Ring>
std::string word_to_string(const CartanMatrix& a, const Ring& r, const Word<typename Ring::Elem>& w) {
    if (w.empty()) return "1";
    std::string s;
    for (const auto& l : w) {
        if (!s.empty()) s += " ";
        if (l.kind == GenKind::S) s += "S" + a.name(l.node);
        else s += "X" + a.name(l.node) + "(" + r.format(l.t) + ")";
        if (l.exp < 0) s += "^-1";
    }
    return s;
}

}  // namespace amalgam
