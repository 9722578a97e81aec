#pragma once

// Generalized Cartan matrices, the diagram DSL, spherical classification and
// the odd subdiagram (edges with m = 3).

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "amalgam/errors.hpp"

namespace amalgam {

// m_ij for an infinite edge.
inline constexpr int kInfiniteM = 0;

class CartanMatrix {
public:
    CartanMatrix() = default;

    CartanMatrix(std::vector<std::vector<int>> rows, std::vector<std::string> names = {})
        : n_(rows.size()), names_(std::move(names)) {
        for (const auto& r : rows)
            if (r.size() != n_) throw NotAGcm("matrix is not square");
        if (names_.empty())
            for (std::size_t i = 0; i < n_; ++i) names_.push_back(std::to_string(i + 1));
        if (names_.size() != n_) throw NotAGcm("node name count does not match rank");
        a_.reserve(n_ * n_);
        for (const auto& r : rows) a_.insert(a_.end(), r.begin(), r.end());
        for (std::size_t i = 0; i < n_; ++i) {
            if ((*this)(i, i) != 2) throw NotAGcm("diagonal entry is not 2");
            for (std::size_t j = 0; j < n_; ++j) {
                if (i == j) continue;
                if ((*this)(i, j) > 0) throw NotAGcm("positive off-diagonal entry");
                if (((*this)(i, j) == 0) != ((*this)(j, i) == 0))
                    throw NotAGcm("zero pattern is not symmetric");
            }
        }
        std::set<std::string> uniq(names_.begin(), names_.end());
        if (uniq.size() != n_) throw NotAGcm("duplicate node names");
    }

    std::size_t size() const { return n_; }
    int operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t i) const { return names_[i]; }

    std::optional<std::size_t> index_of(const std::string& name) const {
        for (std::size_t i = 0; i < n_; ++i)
            if (names_[i] == name) return i;
        return std::nullopt;
    }

    std::vector<std::vector<int>> rows() const {
        std::vector<std::vector<int>> r(n_, std::vector<int>(n_));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) r[i][j] = (*this)(i, j);
        return r;
    }

    // Principal submatrix on the given nodes, keeping their names.
    CartanMatrix sub(const std::vector<std::size_t>& nodes) const {
        std::vector<std::vector<int>> r;
        std::vector<std::string> nm;
        for (auto i : nodes) {
            std::vector<int> row;
            for (auto j : nodes) row.push_back((*this)(i, j));
            r.push_back(row);
            nm.push_back(names_[i]);
        }
        return CartanMatrix(r, nm);
    }

    std::string to_string() const {
        std::ostringstream os;
        os << '[';
        for (std::size_t i = 0; i < n_; ++i) {
            os << (i ? ",[" : "[");
            for (std::size_t j = 0; j < n_; ++j) os << (j ? "," : "") << (*this)(i, j);
            os << ']';
        }
        os << ']';
        return os.str();
    }

    bool operator==(const CartanMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

private:
    std::size_t n_ = 0;
    std::vector<std::string> names_;
    std::vector<int> a_;
};

// Coxeter exponent of the edge {i, j}; kInfiniteM when A_ij A_ji >= 4.
inline int coxeter_m(const CartanMatrix& a, std::size_t i, std::size_t j) {
    if (i == j) return 1;
    switch (a(i, j) * a(j, i)) {
        case 0: return 2;
        case 1: return 3;
        case 2: return 4;
        case 3: return 6;
        default: return kInfiniteM;
    }
}

// For an edge with m in {4, 6}, the node carrying the short simple root:
// the one whose row holds the -2 or -3.
inline std::size_t short_node(const CartanMatrix& a, std::size_t i, std::size_t j) {
    return a(i, j) < a(j, i) ? i : j;
}

// Minimal positive integers d_i with d_i A_ij = d_j A_ji, per connected
// component.  Throws NotSupported for non-symmetrizable matrices.
inline std::vector<long long> symmetrizer(const CartanMatrix& a) {
    const std::size_t n = a.size();
    // d_i = num_i / den_i as rationals propagated along edges.
    std::vector<long long> num(n, 0), den(n, 1);
    std::vector<long long> d(n, 0);
    for (std::size_t root = 0; root < n; ++root) {
        if (num[root] != 0) continue;
        num[root] = 1;
        std::vector<std::size_t> comp{root};
        std::queue<std::size_t> q;
        q.push(root);
        while (!q.empty()) {
            auto i = q.front();
            q.pop();
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j || a(i, j) == 0) continue;
                // d_j = d_i A_ij / A_ji
                long long nn = num[i] * a(i, j), dd = den[i] * a(j, i);
                if (dd < 0) nn = -nn, dd = -dd;
                long long g = std::gcd(nn, dd);
                nn /= g, dd /= g;
                if (num[j] == 0) {
                    num[j] = nn, den[j] = dd;
                    comp.push_back(j);
                    q.push(j);
                } else if (num[j] * dd != nn * den[j]) {
                    throw NotSupported("Cartan matrix is not symmetrizable");
                }
            }
        }
        long long l = 1;
        for (auto i : comp) l = std::lcm(l, den[i]);
        long long g = 0;
        for (auto i : comp) g = std::gcd(g, num[i] * (l / den[i]));
        for (auto i : comp) d[i] = num[i] * (l / den[i]) / g;
    }
    return d;
}

namespace detail {

inline std::vector<std::vector<int>> chain(int n) {
    std::vector<std::vector<int>> r(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
        r[i][i] = 2;
        if (i + 1 < n) r[i][i + 1] = r[i + 1][i] = -1;
    }
    return r;
}

inline std::vector<std::vector<int>> named_rows(char family, int n) {
    auto bad = [&] { throw MalformedSpec(std::string(1, family) + std::to_string(n) + " is not a finite type"); };
    std::vector<std::vector<int>> r;
    switch (family) {
        case 'A':
            if (n < 1) bad();
            return chain(n);
        case 'B':
            // Node 1 carries the short root.
            if (n < 2) bad();
            r = chain(n);
            r[0][1] = -2;
            return r;
        case 'C':
            // Node 1 carries the long root.
            if (n < 2) bad();
            r = chain(n);
            r[1][0] = -2;
            return r;
        case 'D':
            if (n < 4) bad();
            r = chain(n);
            r[n - 2][n - 1] = r[n - 1][n - 2] = 0;
            r[n - 3][n - 1] = r[n - 1][n - 3] = -1;
            return r;
        case 'E':
            if (n < 6 || n > 8) bad();
            r.assign(n, std::vector<int>(n, 0));
            for (int i = 0; i < n; ++i) r[i][i] = 2;
            {
                auto link = [&](int x, int y) { r[x - 1][y - 1] = r[y - 1][x - 1] = -1; };
                link(1, 3), link(3, 4), link(4, 2);
                for (int i = 4; i < n; ++i) link(i, i + 1);
            }
            return r;
        case 'F':
            if (n != 4) bad();
            r = chain(4);
            r[2][1] = -2;
            return r;
        case 'G':
            if (n != 2) bad();
            return {{2, -3}, {-1, 2}};
        default:
            bad();
    }
    return r;
}

// Highest root and its coroot for a finite irreducible type, by walking
// positive roots upward.
inline std::pair<std::vector<int>, std::vector<int>> highest_root(const std::vector<std::vector<int>>& a) {
    const std::size_t n = a.size();
    using V = std::vector<int>;
    std::map<V, V> seen;
    std::queue<V> q;
    for (std::size_t i = 0; i < n; ++i) {
        V r(n, 0);
        r[i] = 1;
        seen[r] = r;
        q.push(r);
    }
    while (!q.empty()) {
        V r = q.front();
        q.pop();
        V c = seen[r];
        for (std::size_t i = 0; i < n; ++i) {
            int pair = 0, cpair = 0;  // <a_i^vee, r>, <c, a_i>
            for (std::size_t j = 0; j < n; ++j) pair += a[i][j] * r[j], cpair += c[j] * a[j][i];
            if (pair >= 0) continue;
            V r2 = r, c2 = c;
            r2[i] -= pair;
            c2[i] -= cpair;
            if (!seen.count(r2)) {
                seen[r2] = c2;
                q.push(r2);
            }
        }
    }
    auto height = [](const V& v) { int h = 0; for (int x : v) h += x; return h; };
    auto best = seen.begin();
    for (auto it = seen.begin(); it != seen.end(); ++it)
        if (height(it->first) > height(best->first)) best = it;
    return {best->first, best->second};
}

inline std::vector<std::vector<int>> affine_rows(const std::vector<std::vector<int>>& fin) {
    auto [theta, coth] = highest_root(fin);
    const std::size_t n = fin.size();
    std::vector<std::vector<int>> r(n + 1, std::vector<int>(n + 1, 0));
    r[0][0] = 2;
    for (std::size_t j = 0; j < n; ++j) {
        int a0j = 0, aj0 = 0;
        for (std::size_t k = 0; k < n; ++k) {
            a0j += coth[k] * fin[k][j];
            aj0 += fin[j][k] * theta[k];
        }
        r[0][j + 1] = -a0j;
        r[j + 1][0] = -aj0;
        for (std::size_t k = 0; k < n; ++k) r[j + 1][k + 1] = fin[j][k];
    }
    return r;
}

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\n\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\n\r");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

// Diagram DSL: named types "A2", "B3", "G2", untwisted affine "A1~", sums
// "A1+B2", or an explicit matrix "[[2,-1],[-1,2]]".
inline CartanMatrix parse_diagram(const std::string& text) {
    std::string s = detail::trim(text);
    if (s.empty()) throw MalformedSpec("empty diagram");
    if (s[0] == '[') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(s);
        } catch (const nlohmann::json::exception&) {
            throw MalformedSpec("cannot parse matrix literal '" + s + "'");
        }
        std::vector<std::vector<int>> rows;
        if (!j.is_array() || j.empty()) throw MalformedSpec("matrix literal must be a non-empty list of rows");
        for (const auto& row : j) {
            if (!row.is_array()) throw MalformedSpec("matrix row is not a list");
            std::vector<int> r;
            for (const auto& x : row) {
                if (!x.is_number_integer()) throw MalformedSpec("matrix entry is not an integer");
                r.push_back(x.get<int>());
            }
            rows.push_back(r);
        }
        return CartanMatrix(rows);
    }

    static const std::regex comp_re(R"(([A-Ga-g])\s*(\d+)\s*(~?))");
    std::vector<std::vector<std::vector<int>>> blocks;
    bool single_affine = false;
    std::size_t count = 0;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, '+')) {
        part = detail::trim(part);
        std::smatch m;
        if (!std::regex_match(part, m, comp_re)) throw MalformedSpec("unrecognized diagram component '" + part + "'");
        char fam = static_cast<char>(std::toupper(static_cast<unsigned char>(m[1].str()[0])));
        int n = std::stoi(m[2].str());
        auto rows = detail::named_rows(fam, n);
        if (!m[3].str().empty()) {
            rows = detail::affine_rows(rows);
            single_affine = true;
        }
        blocks.push_back(rows);
        ++count;
    }
    if (blocks.empty()) throw MalformedSpec("empty diagram");
    single_affine = single_affine && count == 1;

    std::size_t total = 0;
    for (const auto& b : blocks) total += b.size();
    std::vector<std::vector<int>> rows(total, std::vector<int>(total, 0));
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) rows[off + i][off + j] = b[i][j];
        off += b.size();
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < total; ++i) names.push_back(std::to_string(single_affine ? i : i + 1));
    return CartanMatrix(rows, names);
}

struct SphericalType {
    char family = 'A';
    int rank = 0;
    std::string to_string() const { return std::string(1, family) + std::to_string(rank); }
    bool operator==(const SphericalType&) const = default;
};

// Connected components of the Coxeter graph (edges where A_ij != 0),
// each sorted, listed by smallest node.
inline std::vector<std::vector<std::size_t>> components(const CartanMatrix& a,
                                                        const std::vector<std::size_t>& nodes) {
    std::vector<std::vector<std::size_t>> out;
    std::set<std::size_t> left(nodes.begin(), nodes.end());
    while (!left.empty()) {
        std::vector<std::size_t> comp;
        std::queue<std::size_t> q;
        q.push(*left.begin());
        left.erase(left.begin());
        while (!q.empty()) {
            auto i = q.front();
            q.pop();
            comp.push_back(i);
            for (auto it = left.begin(); it != left.end();) {
                if (a(i, *it) != 0) {
                    q.push(*it);
                    it = left.erase(it);
                } else {
                    ++it;
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(comp);
    }
    return out;
}

inline std::vector<std::vector<std::size_t>> components(const CartanMatrix& a) {
    std::vector<std::size_t> all(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) all[i] = i;
    return components(a, all);
}

// Catalog match of one connected component.
inline std::optional<SphericalType> classify_component(const CartanMatrix& a, const std::vector<std::size_t>& comp) {
    const int n = static_cast<int>(comp.size());
    std::map<std::size_t, std::vector<std::size_t>> adj;
    std::vector<std::pair<std::size_t, std::size_t>> heavy;  // edges with m = 4 or 6
    int edges = 0, m6 = 0;
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            auto i = comp[x], j = comp[y];
            int m = coxeter_m(a, i, j);
            if (m == 2) continue;
            if (m == kInfiniteM) return std::nullopt;
            ++edges;
            adj[i].push_back(j);
            adj[j].push_back(i);
            if (m == 4 || m == 6) heavy.push_back({i, j});
            if (m == 6) ++m6;
        }
    if (edges != n - 1) return std::nullopt;  // connected with a cycle
    if (n == 1) return SphericalType{'A', 1};
    if (m6 > 0) {
        if (n == 2) return SphericalType{'G', 2};
        return std::nullopt;
    }
    if (heavy.size() > 1) return std::nullopt;

    std::vector<std::size_t> leaves, branch;
    for (auto i : comp) {
        auto d = adj[i].size();
        if (d == 1) leaves.push_back(i);
        if (d == 3) branch.push_back(i);
        if (d > 3) return std::nullopt;
    }

    // Length of the arm starting at leaf, walking away until a branch node.
    auto arm = [&](std::size_t leaf) {
        int len = 0;
        std::size_t prev = leaf, cur = leaf;
        while (true) {
            ++len;
            std::size_t next = cur;
            for (auto y : adj[cur])
                if (y != prev) next = y;
            if (next == cur || adj[next].size() == 3) break;
            prev = cur;
            cur = next;
        }
        return len;
    };

    if (branch.empty()) {
        // Path.
        if (heavy.empty()) return SphericalType{'A', n};
        auto [i, j] = heavy[0];
        bool i_leaf = adj[i].size() == 1, j_leaf = adj[j].size() == 1;
        if (n == 2) return SphericalType{'B', 2};
        std::size_t s = short_node(a, i, j);
        if (i_leaf || j_leaf) {
            std::size_t leaf = i_leaf ? i : j;
            return SphericalType{leaf == s ? 'B' : 'C', n};
        }
        if (n == 4) return SphericalType{'F', 4};
        return std::nullopt;
    }
    if (!heavy.empty() || branch.size() != 1) return std::nullopt;
    std::vector<int> arms;
    for (auto l : leaves) arms.push_back(arm(l));
    std::sort(arms.begin(), arms.end());
    if (arms.size() != 3) return std::nullopt;
    if (arms[0] == 1 && arms[1] == 1) return SphericalType{'D', n};
    if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return SphericalType{'E', n};
    return std::nullopt;
}

struct ComponentClass {
    std::vector<std::size_t> nodes;
    std::optional<SphericalType> type;  // nullopt: not spherical
};

inline std::vector<ComponentClass> classify_components(const CartanMatrix& a) {
    std::vector<ComponentClass> out;
    for (auto& c : components(a)) out.push_back({c, classify_component(a, c)});
    return out;
}

inline bool is_spherical(const CartanMatrix& a, const std::vector<std::size_t>& nodes) {
    for (auto& c : components(a, nodes))
        if (!classify_component(a, c)) return false;
    return true;
}

inline bool is_spherical(const CartanMatrix& a) {
    for (auto& c : classify_components(a))
        if (!c.type) return false;
    return true;
}

// Every subdiagram with at most k nodes is spherical.
inline bool is_k_spherical(const CartanMatrix& a, std::size_t k) {
    const std::size_t n = a.size();
    std::vector<std::size_t> pick;
    bool ok = true;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (!ok) return;
        if (!pick.empty() && !is_spherical(a, pick)) {
            ok = false;
            return;
        }
        if (pick.size() == k) return;
        for (std::size_t i = start; i < n; ++i) {
            pick.push_back(i);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return ok;
}

// Readable type label such as "A1xB2"; "?" marks a non-spherical component.
inline std::string type_label(const CartanMatrix& a) {
    std::string out;
    for (auto& c : classify_components(a)) {
        if (!out.empty()) out += "x";
        out += c.type ? c.type->to_string() : "?";
    }
    return out;
}

struct OddDiagram {
    std::vector<std::vector<std::size_t>> components;
    // parent[j] in the BFS spanning forest; parent of a root is itself.
    std::vector<std::size_t> parent;
    std::vector<std::pair<std::size_t, std::size_t>> tree_edges;
    // Non-tree edges; each closes one basis cycle.
    std::vector<std::pair<std::size_t, std::size_t>> cycle_edges;

    // Node sequence from the root of j's component down to j.
    std::vector<std::size_t> path_from_root(std::size_t j) const {
        std::vector<std::size_t> p{j};
        while (parent[p.back()] != p.back()) p.push_back(parent[p.back()]);
        std::reverse(p.begin(), p.end());
        return p;
    }
};

// Odd diagram rooted at the smallest node of each component, except that
// the component of `root` (if given) is rooted at `root`.
inline OddDiagram odd_diagram(const CartanMatrix& a, std::optional<std::size_t> root = std::nullopt) {
    const std::size_t n = a.size();
    OddDiagram od;
    od.parent.assign(n, n);
    std::vector<std::size_t> order;
    if (root) order.push_back(*root);
    for (std::size_t i = 0; i < n; ++i) order.push_back(i);
    std::set<std::pair<std::size_t, std::size_t>> tree;
    for (auto r : order) {
        if (od.parent[r] != n) continue;
        std::vector<std::size_t> comp;
        std::queue<std::size_t> q;
        q.push(r);
        od.parent[r] = r;
        while (!q.empty()) {
            auto i = q.front();
            q.pop();
            comp.push_back(i);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || coxeter_m(a, i, j) != 3 || od.parent[j] != n) continue;
                od.parent[j] = i;
                od.tree_edges.push_back({std::min(i, j), std::max(i, j)});
                tree.insert({std::min(i, j), std::max(i, j)});
                q.push(j);
            }
        }
        std::sort(comp.begin(), comp.end());
        od.components.push_back(comp);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (coxeter_m(a, i, j) == 3 && !tree.count({i, j})) od.cycle_edges.push_back({i, j});
    return od;
}

}  // namespace amalgam
