#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "builtins.hpp"
#include "surface.hpp"

namespace cuspq {

inline QLaurent cmul(const QLaurent& a, const QLaurent& b) { return (a.classical() * b.classical()).classical(); }

struct ArcEnd {
    std::string cusp;
    int position = 0;  // increasing along the orientation at that cusp
};

inline int sgn(int x) { return (x > 0) - (x < 0); }

inline int incidence_index(const std::array<ArcEnd, 2>& a, const std::array<ArcEnd, 2>& b) {
    int s = 0;
    for (auto& x : a)
        for (auto& y : b)
            if (x.cusp == y.cusp) s += sgn(x.position - y.position);
    return s;
}

namespace detail {

// turn sequence read from one end of the path: 'L', 'R' or 'E' for an edge
struct Reading {
    std::vector<std::pair<char, int>> items;
};

inline Reading read_forward(const FatGraph& g, const GraphPath& p) {
    Reading r;
    for (auto& it : path_items(g, p)) {
        switch (it.kind) {
            case PathItem::Edge: r.items.push_back({'E', it.edge}); break;
            case PathItem::L: r.items.push_back({'L', -1}); break;
            case PathItem::R: r.items.push_back({'R', -1}); break;
            case PathItem::Loop: r.items.push_back({it.wind > 0 ? 'L' : 'R', -1}); break;
        }
    }
    return r;
}

inline Reading reversed(const Reading& a) {
    Reading r;
    for (auto it = a.items.rbegin(); it != a.items.rend(); ++it) {
        char c = it->first == 'L' ? 'R' : it->first == 'R' ? 'L' : 'E';
        r.items.push_back({c, it->second});
    }
    return r;
}

// ends leaving a cusp are ordered by their first differing turn, right before left
inline bool before(const Reading& a, const Reading& b) {
    std::size_t n = std::min(a.items.size(), b.items.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a.items[i] == b.items[i]) continue;
        if (a.items[i].first == 'E' || b.items[i].first == 'E') throw input_error("arc readings diverge on an edge");
        return a.items[i].first == 'R';
    }
    throw input_error("two arc ends coincide");
}

}  // namespace detail

// endpoint labels for every arc of a dual lamination
inline std::vector<std::array<ArcEnd, 2>> endpoint_labels(const FatGraph& g, const DualLamination& lam) {
    struct End {
        int arc, which;
        std::string cusp;
        detail::Reading rd;
    };
    std::vector<End> ends;
    for (std::size_t a = 0; a < lam.arcs.size(); ++a) {
        const auto& p = lam.arcs[a].path;
        auto fw = detail::read_forward(g, p);
        int c0 = g.where(p.steps.front().h).first;
        int c1 = g.where(FatGraph::other(p.steps.back().h)).first;
        ends.push_back({static_cast<int>(a), 0, g.vertices[c0].name, fw});
        ends.push_back({static_cast<int>(a), 1, g.vertices[c1].name, detail::reversed(fw)});
    }
    std::vector<std::array<ArcEnd, 2>> out(lam.arcs.size());
    std::map<std::string, std::vector<int>> by_cusp;
    for (std::size_t i = 0; i < ends.size(); ++i) by_cusp[ends[i].cusp].push_back(static_cast<int>(i));
    for (auto& [c, idx] : by_cusp) {
        std::sort(idx.begin(), idx.end(), [&](int x, int y) { return detail::before(ends[x].rd, ends[y].rd); });
        for (std::size_t k = 0; k < idx.size(); ++k) {
            auto& e = ends[idx[k]];
            out[e.arc][e.which] = {c, static_cast<int>(k)};
        }
    }
    return out;
}

// ---- seeds ----

struct Seed {
    std::vector<std::string> names;
    std::vector<bool> frozen;
    std::vector<std::vector<int>> I;  // incidence matrix
    BasisPtr torus;                   // one generator per arc, lambda = M(e_i)
    BasisPtr shear;                   // shear torus of the spine the seed started from
    std::vector<std::optional<QLaurent>> in_shear;
    BasisPtr initial;                 // torus of the starting seed
    std::vector<std::optional<QLaurent>> in_initial;
    std::vector<std::array<ArcEnd, 2>> ends;  // empty after a mutation
    FatGraph graph;                           // dual spine
    std::map<std::string, std::string> arc_of_edge;

    int index(const std::string& n) const {
        auto it = std::find(names.begin(), names.end(), n);
        if (it == names.end()) throw input_error("unknown arc '" + n + "'");
        return static_cast<int>(it - names.begin());
    }
    int size() const { return static_cast<int>(names.size()); }
    QLaurent lambda(const std::string& n) const {
        std::vector<int> e(names.size(), 0);
        e[index(n)] = 1;
        return QLaurent::monomial(torus, e);
    }
    int edge_of_arc(const std::string& arc) const {
        for (auto& [e, a] : arc_of_edge)
            if (a == arc) return graph.edge_index(e);
        throw input_error("arc '" + arc + "' has no edge");
    }
};

inline BasisPtr seed_torus(const std::vector<std::string>& names, const std::vector<std::vector<int>>& I,
                           const FatGraph& g) {
    std::vector<std::vector<int>> eps(names.size(), std::vector<int>(names.size()));
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = 0; j < names.size(); ++j) eps[i][j] = -I[i][j];
    std::vector<int> ord;
    for (int e : g.loops())
        ord.push_back(g.edges[e].omega_kind == OmegaKind::Orbifold ? g.edges[e].order : 0);
    return make_basis(names, std::vector<GenKind>(names.size(), GenKind::Lambda), eps, g.omega_names(), ord);
}

inline Seed make_seed(const FatGraph& g, std::map<std::string, std::string> arc_names = {}) {
    Seed s;
    s.graph = g;
    s.shear = epsilon_matrix(g);
    auto lam = dual_lamination(g, s.shear);
    for (auto& a : lam.arcs) {
        if (!arc_names.count(a.edge)) arc_names[a.edge] = "l_" + a.edge;
        s.names.push_back(arc_names[a.edge]);
        s.frozen.push_back(a.frozen);
        s.in_shear.push_back(a.lambda);
        s.arc_of_edge[a.edge] = arc_names[a.edge];
    }
    s.ends = endpoint_labels(g, lam);
    const int n = s.size();
    s.I.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s.I[i][j] = incidence_index(s.ends[i], s.ends[j]);
    s.torus = seed_torus(s.names, s.I, g);
    s.initial = s.torus;
    for (int i = 0; i < n; ++i) s.in_initial.push_back(s.lambda(s.names[i]));
    return s;
}

inline Seed builtin_seed(const std::string& name) {
    auto& b = builtin(name);
    return make_seed(parse_surface(b.text), b.arc_names);
}

// I from monomial exponents: -(n eps m)
inline std::optional<int> incidence_from_eps(const Seed& s, int i, int j) {
    if (!s.in_shear[i] || !s.in_shear[j] || !s.in_shear[i]->is_monomial() || !s.in_shear[j]->is_monomial())
        return std::nullopt;
    auto& a = s.in_shear[i]->terms().begin()->first.exp;
    auto& b = s.in_shear[j]->terms().begin()->first.exp;
    return static_cast<int>(-s.shear->pair(a, b));
}

struct PairCheck {
    int i, j, I;
    bool pass;
};

struct HomogeneityReport {
    std::vector<PairCheck> pairs;
    bool ok() const {
        return std::all_of(pairs.begin(), pairs.end(), [](auto& p) { return p.pass; });
    }
    std::vector<std::string> lines() const {
        std::vector<std::string> out;
        for (auto& p : pairs)
            out.push_back("pair <" + std::to_string(p.i) + "," + std::to_string(p.j) + "> I=" + std::to_string(p.I) +
                          " status=" + (p.pass ? "pass" : "fail"));
        return out;
    }
};

// q^{I/4} l_i l_j = q^{-I/4} l_j l_i for all pairs, in the shear torus where the
// lambdas are known there, otherwise in the seed torus
inline HomogeneityReport check_homogeneous(const Seed& s) {
    HomogeneityReport r;
    for (int i = 0; i < s.size(); ++i)
        for (int j = i + 1; j < s.size(); ++j) {
            int I = s.I[i][j];
            bool pass;
            if (s.in_shear[i] && s.in_shear[j]) {
                const QLaurent &a = *s.in_shear[i], &b = *s.in_shear[j];
                pass = (a * b).q_shift(I) == (b * a).q_shift(-I);
                if (auto e = incidence_from_eps(s, i, j)) pass = pass && *e == I;
            } else {
                QLaurent a = s.lambda(s.names[i]), b = s.lambda(s.names[j]);
                pass = (a * b).q_shift(I) == (b * a).q_shift(-I);
            }
            pass = pass && s.I[j][i] == -I;
            r.pairs.push_back({i, j, I, pass});
        }
    return r;
}

// Each shear generator as a Weyl monomial in the seed lambdas: e^{Y} = prod l_a^{c_a}.
inline std::map<std::string, QLaurent> shear_from_lambda(const Seed& s) {
    const Basis& S = *s.shear;
    const int n = s.size(), m = S.size();
    if (n != m) throw input_error("seed and spine sizes differ");
    // V[a][Y]: half-unit exponent of arc a
    std::vector<std::vector<Rat>> A(m, std::vector<Rat>(n + m, Rat(0)));
    for (int a = 0; a < n; ++a) {
        if (!s.in_shear[a] || !s.in_shear[a]->is_monomial()) throw input_error("seed is not monomial in the spine");
        auto& ex = s.in_shear[a]->terms().begin()->first.exp;
        for (int y = 0; y < m; ++y) A[y][a] = ex[y];
    }
    for (int y = 0; y < m; ++y) A[y][n + y] = 2;
    // solve sum_a c_a v_a = 2 e_Y by elimination on [V^T | 2I]
    for (int col = 0, row = 0; col < n; ++col, ++row) {
        int piv = row;
        while (piv < m && A[piv][col].numerator() == 0) ++piv;
        if (piv == m) throw input_error("arc exponents are degenerate");
        std::swap(A[piv], A[row]);
        Rat d = A[row][col];
        for (auto& x : A[row]) x /= d;
        for (int r = 0; r < m; ++r)
            if (r != row && A[r][col].numerator() != 0) {
                Rat f = A[r][col];
                for (int k = 0; k < n + m; ++k) A[r][k] -= f * A[row][k];
            }
    }
    std::map<std::string, QLaurent> out;
    for (int y = 0; y < m; ++y) {
        std::vector<int> c(n);
        for (int a = 0; a < n; ++a) {
            Rat v = A[a][n + y];
            if (v.denominator() != 1) throw input_error("shear generator is not a lambda monomial");
            c[a] = static_cast<int>(v.numerator());
        }
        out.emplace(S.names[y], QLaurent::monomial(s.torus, c));
    }
    return out;
}

inline QLaurent goldman_classical(const QLaurent& f, const QLaurent& g) { return poisson(f, g); }

// Poisson- and q-commutes with every generator
inline bool verify_casimir(const QLaurent& c) {
    const BasisPtr& b = c.basis();
    for (int i = 0; i < b->size(); ++i) {
        std::vector<int> e(b->size(), 0);
        e[i] = 1;
        QLaurent m = QLaurent::monomial(b, e);
        if (!poisson(c.classical(), m).is_zero()) return false;
        if (c * m != m * c) return false;
    }
    return true;
}

}  // namespace cuspq
