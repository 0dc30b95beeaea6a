#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "brackets.hpp"
#include "surface.hpp"

namespace cuspq {

// e^{new Y} = num / den, as Laurent polynomials in the old generators
struct FlipRule {
    QLaurent num, den;    // classical
    QLaurent qnum, qden;  // quantum, factors left of the monomial
};

struct FlipEvent {
    enum Kind { Inner, Loop } kind = Inner;
    std::string edge;
    FatGraph before, after;
    BasisPtr basis_before, basis_after;
    std::map<std::string, FlipRule> rules;
    std::string omega;  // loop flips

    // new coordinates at a numeric point
    NumericPoint apply(const NumericPoint& p) const {
        NumericPoint r = p;
        for (auto& [y, rule] : rules) {
            double n = eval_numeric(rule.num, p.coords, p.omegas).real();
            double d = eval_numeric(rule.den, p.coords, p.omegas).real();
            r.coords[y] = std::log(n / d);
        }
        return r;
    }
};

namespace detail {

// rotate a trivalent vertex so that half-edge h sits in slot 0
inline std::array<int, 3> rotated(const FatGraph& g, int h) {
    auto [v, i] = g.where(h);
    return {g.slot_h(v, i), g.slot_h(v, i + 1), g.slot_h(v, i + 2)};
}

inline QLaurent ex(const BasisPtr& b, const std::string& y, int sign = 1) { return QLaurent::gen(b, y, 2 * sign); }

}  // namespace detail

inline FlipEvent flip_inner(const FatGraph& g, const std::string& edge) {
    int z = g.edge_index(edge);
    if (z < 0) throw input_error("unknown edge '" + edge + "'");
    if (g.edges[z].kind != EdgeKind::Inner) throw input_error("edge '" + edge + "' is not an inner edge");
    auto s1 = detail::rotated(g, FatGraph::half(z, 0));
    auto s2 = detail::rotated(g, FatGraph::half(z, 1));
    int v1 = g.where(s1[0]).first, v2 = g.where(s2[0]).first;
    if (v1 == v2) throw input_error("edge '" + edge + "' closes on itself");
    for (int h : {s1[1], s1[2], s2[1], s2[2]})
        if (g.is_loop_h(h)) throw input_error("edge '" + edge + "' is adjacent to a loop; use a loop flip");

    FlipEvent ev;
    ev.kind = FlipEvent::Inner;
    ev.edge = edge;
    ev.before = g;
    ev.after = g;
    const int A = s1[1], B = s1[2], C = s2[1], D = s2[2];
    ev.after.vertices[v1].slots = {s1[0], B, C};
    ev.after.vertices[v2].slots = {s2[0], D, A};
    ev.after.touch();
    ev.basis_before = epsilon_matrix(g);
    ev.basis_after = epsilon_matrix(ev.after);

    const BasisPtr& b = ev.basis_before;
    QLaurent one = QLaurent::constant(b, 1);
    QLaurent plus = one + detail::ex(b, edge);         // 1 + e^Z
    QLaurent minus = one + detail::ex(b, edge, -1);    // 1 + e^{-Z}
    QLaurent qplus = one + detail::ex(b, edge).q_shift(4);
    QLaurent qminus = one + detail::ex(b, edge, -1).q_shift(-4);
    for (int e : g.generators()) {
        const std::string& y = g.edges[e].name;
        FlipRule r{detail::ex(b, y), one, detail::ex(b, y), one};
        if (e == z) r = {detail::ex(b, y, -1), one, detail::ex(b, y, -1), one};
        ev.rules[y] = r;
    }
    for (int h : {A, C}) {
        auto& r = ev.rules[g.edge(h).name];
        r.num = cmul(plus, r.num);
        r.qnum = qplus * r.qnum;
    }
    for (int h : {B, D}) {
        auto& r = ev.rules[g.edge(h).name];
        r.den = cmul(minus, r.den);
        r.qden = qminus * r.qden;
    }
    return ev;
}

inline FlipEvent flip_loop(const FatGraph& g, const std::string& edge) {
    int z = g.edge_index(edge);
    if (z < 0) throw input_error("unknown edge '" + edge + "'");
    auto y = loop_end(g, z);
    if (!y) throw input_error("edge '" + edge + "' is not adjacent to a loop");
    int x = 1 - *y;
    auto s = detail::rotated(g, FatGraph::half(z, x));
    if (g.is_loop_h(s[1]) || g.is_loop_h(s[2])) throw input_error("edge '" + edge + "' joins two loops");
    auto [lv, li] = g.where(FatGraph::half(z, *y));
    std::string omega = g.edge(g.slot_h(lv, li + 1)).name;

    FlipEvent ev;
    ev.kind = FlipEvent::Loop;
    ev.edge = edge;
    ev.omega = omega;
    ev.before = g;
    ev.after = g;
    int v = g.where(s[0]).first;
    const int A = s[1], B = s[2];
    ev.after.vertices[v].slots = {s[0], B, A};
    ev.after.touch();
    ev.basis_before = epsilon_matrix(g);
    ev.basis_after = epsilon_matrix(ev.after);

    const BasisPtr& b = ev.basis_before;
    QLaurent one = QLaurent::constant(b, 1);
    QLaurent w = QLaurent::omega(b, omega);
    QLaurent plus = one + cmul(w, detail::ex(b, edge)) + QLaurent::gen(b, edge, 4);
    QLaurent minus = one + cmul(w, detail::ex(b, edge, -1)) + QLaurent::gen(b, edge, -4);
    // (1 + q e^{Z+P/2})(1 + q e^{Z-P/2}) with omega = e^{P/2} + e^{-P/2}
    QLaurent qplus = one + (w * detail::ex(b, edge)).q_shift(4) + QLaurent::gen(b, edge, 4).q_shift(8);
    QLaurent qminus = one + (w * detail::ex(b, edge, -1)).q_shift(-4) + QLaurent::gen(b, edge, -4).q_shift(-8);
    for (int e : g.generators()) {
        const std::string& yn = g.edges[e].name;
        FlipRule r{detail::ex(b, yn), one, detail::ex(b, yn), one};
        if (e == z) r = {detail::ex(b, yn, -1), one, detail::ex(b, yn, -1), one};
        ev.rules[yn] = r;
    }
    {
        auto& r = ev.rules[g.edge(A).name];
        r.num = cmul(plus, r.num);
        r.qnum = qplus * r.qnum;
    }
    {
        auto& r = ev.rules[g.edge(B).name];
        r.den = cmul(minus, r.den);
        r.qden = qminus * r.qden;
    }
    return ev;
}

inline FlipEvent flip(const FatGraph& g, const std::string& edge) {
    int z = g.edge_index(edge);
    if (z < 0) throw input_error("unknown edge '" + edge + "'");
    if (g.edges[z].kind != EdgeKind::Inner) throw input_error("only inner edges flip");
    return loop_end(g, z) ? flip_loop(g, edge) : flip_inner(g, edge);
}

// {e^{Y_i'}, e^{Y_j'}} computed through the substitution equals the bracket of the new spine
inline bool flip_preserves_poisson(const FlipEvent& ev) {
    const Basis& nb = *ev.basis_after;
    for (int i = 0; i < nb.size(); ++i)
        for (int j = 0; j < nb.size(); ++j) {
            const FlipRule& ri = ev.rules.at(nb.names[i]);
            const FlipRule& rj = ev.rules.at(nb.names[j]);
            const QLaurent &ni = ri.num, &di = ri.den, &nj = rj.num, &dj = rj.den;
            QLaurent lhs = cmul(poisson(ni, nj), cmul(di, dj)) - cmul(poisson(ni, dj), cmul(di, nj)) -
                           cmul(poisson(di, nj), cmul(ni, dj)) + cmul(poisson(di, dj), cmul(ni, nj));
            // full exponents: {e^Y, e^Y'} = sign * eps e^{Y+Y'}
            QLaurent rhs = Rat(kPoissonSign * nb.eps[i][j]) * cmul(cmul(ni, nj), cmul(di, dj));
            if (lhs != rhs) return false;
        }
    return true;
}

// ---- path transport ----

namespace detail {

inline std::vector<Step> rotate_off(const GraphPath& p, const std::function<bool(const Step&)>& bad) {
    std::vector<Step> st = p.steps;
    if (!p.closed) return st;
    for (std::size_t r = 0; r < st.size(); ++r) {
        if (!bad(st.front())) return st;
        std::rotate(st.begin(), st.begin() + 1, st.end());
    }
    throw input_error("path runs only along the flipped edge");
}

}  // namespace detail

inline GraphPath transport_inner(const FlipEvent& ev, const GraphPath& p) {
    const FatGraph& a = ev.after;
    int z = a.edge_index(ev.edge);
    auto onz = [&](const Step& s) { return FatGraph::edge_of(s.h) == z; };
    auto st = detail::rotate_off(p, onz);
    std::vector<Step> kept;
    for (auto& s : st)
        if (!onz(s)) kept.push_back(s);
        else if (s.wind != 0) throw input_error("winding on a flipped edge");
    GraphPath out;
    out.closed = p.closed;
    const std::size_t m = kept.size();
    for (std::size_t k = 0; k < m; ++k) {
        out.steps.push_back(kept[k]);
        if (!p.closed && k + 1 == m) break;
        int x = FatGraph::other(kept[k].h);
        int y = kept[(k + 1) % m].h;
        if (kept[k].wind != 0) continue;
        int vx = a.where(x).first, vy = a.where(y).first;
        if (vx == vy) {
            if (x == y) throw input_error("transported path backtracks");
            continue;
        }
        int zh = a.where(FatGraph::half(z, 0)).first == vx ? FatGraph::half(z, 0) : FatGraph::half(z, 1);
        out.steps.push_back({zh, 0});
    }
    return out;
}

// winding through the loop at the far end of the flipped edge shifts by one
// between the two sides; v = [Z, A, B] before the flip
inline GraphPath transport_loop(const FlipEvent& ev, const GraphPath& p) {
    const FatGraph& g = ev.before;
    int z = g.edge_index(ev.edge);
    int x = 1 - *loop_end(g, z);
    int zx = FatGraph::half(z, x), zy = FatGraph::half(z, 1 - x);
    auto s = detail::rotated(g, zx);
    const int A = s[1], B = s[2];
    auto onz = [&](const Step& st) { return FatGraph::edge_of(st.h) == z; };
    auto st = detail::rotate_off(p, onz);
    // collapse each pass through v into (arrival, departure, winding)
    GraphPath out;
    out.closed = p.closed;
    const std::size_t m = st.size();
    std::size_t k = 0;
    std::vector<Step> res;
    auto side = [&](int h) { return h == A ? 0 : h == B ? 1 : -1; };
    while (k < m) {
        Step cur = st[k];
        if (onz(cur)) throw input_error("unexpected step on the flipped edge");
        if (!p.closed && k + 1 == m) {
            res.push_back(cur);
            break;
        }
        int arr = FatGraph::other(cur.h);
        std::size_t nk = (k + 1) % m;
        if (side(arr) < 0 || cur.wind != 0) {
            res.push_back(cur);
            ++k;
            continue;
        }
        int w = 0;
        std::size_t dep = nk;
        if (st[nk].h == zx) {
            w = st[nk].wind;
            std::size_t back = (nk + 1) % m;
            if (st[back].h != zy || w == 0) throw input_error("malformed pass through the loop");
            dep = (back + 1) % m;
            if (p.closed && dep < k) {
                // pass wraps the cycle start; rotate_off keeps Z away from the start
                throw input_error("malformed pass through the loop");
            }
        }
        int P = side(arr), Q = side(st[dep].h);
        if (Q < 0) throw input_error("malformed pass through the loop");
        if (P == 0 && Q == 1) w += 1;
        if (P == 1 && Q == 0) w -= 1;
        cur.wind = 0;
        res.push_back(cur);
        if (w != 0) {
            res.push_back({zx, w});
            res.push_back({zy, 0});
        } else if (P == Q) {
            throw input_error("transported path backtracks");
        }
        if (dep == nk) {
            k = k + 1;
        } else {
            k = (dep == 0) ? m : dep;
        }
    }
    out.steps = res;
    return out;
}

inline GraphPath transport(const FlipEvent& ev, const GraphPath& p) {
    return ev.kind == FlipEvent::Inner ? transport_inner(ev, p) : transport_loop(ev, p);
}

// ---- numeric oracle ----

struct OracleOptions {
    unsigned long long seed = 42;
    int points = 10;
    double tol = 1e-9;
};

inline NumericPoint random_point(const FatGraph& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0), w(2.0, 4.0);
    NumericPoint p;
    for (auto& n : g.generator_names()) p.coords[n] = u(rng);
    for (int e : g.loops()) {
        const Edge& ed = g.edges[e];
        p.omegas[ed.name] =
            ed.omega_kind == OmegaKind::Orbifold ? 2 * std::cos(M_PI / ed.order) : w(rng);
    }
    return p;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

struct FlipCheck {
    double max_err = 0;
    bool ok = true;
};

// traces of words before the flip against their transports after it
inline FlipCheck check_flip_invariance(const FlipEvent& ev, const std::vector<PathWord>& words,
                                       const OracleOptions& o) {
    FlipCheck c;
    std::mt19937_64 rng(o.seed);
    std::vector<std::pair<PathWord, PathWord>> pairs;
    for (auto& w : words) pairs.push_back({w, to_word(ev.after, transport(ev, from_word(ev.before, w)))});
    for (int i = 0; i < o.points; ++i) {
        auto p = random_point(ev.before, rng);
        auto q = ev.apply(p);
        for (auto& [w0, w1] : pairs) {
            double e = rel_err(trace_numeric(w0, p), trace_numeric(w1, q));
            c.max_err = std::max(c.max_err, e);
        }
    }
    c.ok = c.max_err < o.tol;
    return c;
}

// flipping twice returns every coordinate
inline FlipCheck check_double_flip(const FatGraph& g, const std::string& edge, const OracleOptions& o) {
    FlipCheck c;
    auto e1 = flip(g, edge);
    auto e2 = flip(e1.after, edge);
    std::mt19937_64 rng(o.seed);
    for (int i = 0; i < o.points; ++i) {
        auto p = random_point(g, rng);
        auto r = e2.apply(e1.apply(p));
        for (auto& [k, v] : p.coords) c.max_err = std::max(c.max_err, rel_err(v, r.coords.at(k)));
    }
    c.ok = c.max_err < o.tol;
    return c;
}

// ---- lambda mutations ----

struct Neighborhood {
    bool monogon = false;
    std::string e;
    std::string a, b, c, d;  // inner: (a,c) and (b,d) opposite; monogon: a, b
    std::string omega;
};

inline Neighborhood neighborhood(const Seed& s, const std::string& arc) {
    int i = s.index(arc);
    if (s.frozen[i]) throw input_error("arc '" + arc + "' is frozen");
    const FatGraph& g = s.graph;
    int z = s.edge_of_arc(arc);
    auto name = [&](int h) {
        auto it = s.arc_of_edge.find(g.edge(h).name);
        if (it == s.arc_of_edge.end()) throw input_error("unresolvable neighborhood of '" + arc + "'");
        return it->second;
    };
    Neighborhood n;
    n.e = arc;
    if (auto y = loop_end(g, z)) {
        auto sv = detail::rotated(g, FatGraph::half(z, 1 - *y));
        auto [lv, li] = g.where(FatGraph::half(z, *y));
        n.monogon = true;
        n.a = name(sv[1]);
        n.b = name(sv[2]);
        n.omega = g.edge(g.slot_h(lv, li + 1)).name;
        return n;
    }
    auto s1 = detail::rotated(g, FatGraph::half(z, 0));
    auto s2 = detail::rotated(g, FatGraph::half(z, 1));
    n.a = name(s1[1]);
    n.b = name(s1[2]);
    n.c = name(s2[1]);
    n.d = name(s2[2]);
    return n;
}

namespace detail {

inline std::vector<int> unit(const Seed& s, const std::string& n) {
    std::vector<int> e(s.size(), 0);
    e[s.index(n)] = 1;
    return e;
}

// ordered product of seed lambdas l_{f0}^{p0} l_{f1}^{p1} ...
using Factors = std::vector<std::pair<std::string, int>>;

inline QLaurent seed_product(const Seed& s, const Factors& f) {
    QLaurent r = QLaurent::constant(s.torus, 1);
    for (auto& [n, p] : f) r = r * QLaurent::monomial(s.torus, unit(s, n)).pow(p);
    return r;
}

// Weyl-normalized product: q-power dropped
inline QLaurent weyl(const Seed& s, const Factors& f) {
    std::vector<int> e(s.size(), 0);
    for (auto& [n, p] : f) e[s.index(n)] += p;
    return QLaurent::monomial(s.torus, e);
}

// the same ordered product carried into another torus through the images
inline std::optional<QLaurent> lift(const Seed& s, const Factors& f, const BasisPtr& target,
                                    const std::vector<std::optional<QLaurent>>& images) {
    int qp = seed_product(s, f).terms().begin()->first.qpow;
    QLaurent r = QLaurent::constant(target, 1);
    for (auto& [n, p] : f) {
        auto& im = images[s.index(n)];
        if (!im) return std::nullopt;
        if (p < 0 && !im->is_monomial()) return std::nullopt;
        r = r * im->pow(p);
    }
    return r.q_shift(-qp);
}

}  // namespace detail

struct MutationTerm {
    detail::Factors factors;
    bool omega = false;
};

inline std::vector<MutationTerm> mutation_terms(const Neighborhood& n) {
    if (n.monogon)
        return {{{{n.a, 1}, {n.e, -1}, {n.a, 1}}, false},
                {{{n.a, 1}, {n.e, -1}, {n.b, 1}}, true},
                {{{n.b, 1}, {n.e, -1}, {n.b, 1}}, false}};
    return {{{{n.a, 1}, {n.e, -1}, {n.c, 1}}, false}, {{{n.b, 1}, {n.e, -1}, {n.d, 1}}, false}};
}

// new lambda in the current seed torus; every term Weyl-normalized
inline QLaurent mutation_expression(const Seed& s, const std::string& arc) {
    auto n = neighborhood(s, arc);
    QLaurent r(s.torus);
    for (auto& t : mutation_terms(n)) {
        QLaurent m = detail::weyl(s, t.factors);
        if (t.omega) m = QLaurent::omega(s.torus, n.omega) * m;
        r += m;
    }
    return r;
}

// omega term of a monogon mutation with the q-power q^{(-I(a,c)+I(b,c))/4}
inline QLaurent monogon_omega_term_from_incidence(const Seed& s, const Neighborhood& n) {
    int ia = s.index(n.a), ib = s.index(n.b), ic = s.index(n.e);
    int qp = -s.I[ia][ic] + s.I[ib][ic];
    return (QLaurent::omega(s.torus, n.omega) * detail::seed_product(s, {{n.a, 1}, {n.e, -1}, {n.b, 1}})).q_shift(qp);
}

inline Seed mutate_lambda(const Seed& s, const std::string& arc, std::string new_name = {}) {
    auto n = neighborhood(s, arc);
    const int i = s.index(arc);
    if (new_name.empty()) new_name = arc + "'";
    if (new_name != arc && std::find(s.names.begin(), s.names.end(), new_name) != s.names.end())
        throw input_error("arc name '" + new_name + "' already used");
    QLaurent f = mutation_expression(s, arc);

    Seed r = s;
    r.names[i] = new_name;
    for (int j = 0; j < s.size(); ++j) {
        if (j == i) continue;
        auto c = q_commutation(f, s.lambda(s.names[j]));
        if (!c) throw input_error("mutated lambda is not homogeneous with '" + s.names[j] + "'");
        if (*c % 2) throw input_error("odd commutation exponent");
        r.I[i][j] = -*c / 2;
        r.I[j][i] = *c / 2;
    }
    r.I[i][i] = 0;

    auto lift_all = [&](const BasisPtr& target, const std::vector<std::optional<QLaurent>>& images)
        -> std::optional<QLaurent> {
        if (!target) return std::nullopt;
        QLaurent acc(target);
        for (auto& t : mutation_terms(n)) {
            auto v = detail::lift(s, t.factors, target, images);
            if (!v) return std::nullopt;
            if (t.omega) {
                if (target->omega_index(n.omega) < 0) return std::nullopt;
                *v = QLaurent::omega(target, n.omega) * *v;
            }
            acc += *v;
        }
        return acc;
    };
    r.in_shear[i] = lift_all(s.shear, s.in_shear);
    r.in_initial[i] = lift_all(s.initial, s.in_initial);
    r.ends.clear();

    auto ev = flip(s.graph, s.graph.edges[s.edge_of_arc(arc)].name);
    r.graph = ev.after;
    for (auto& [e, a] : r.arc_of_edge)
        if (a == arc) a = new_name;
    r.torus = seed_torus(r.names, r.I, r.graph);
    return r;
}

// classical lambda values carried through a mutation
inline std::map<std::string, double> mutate_numeric(const Seed& s, std::map<std::string, double> lam,
                                                   const std::string& arc, const std::string& new_name,
                                                   const std::map<std::string, double>& omegas = {}) {
    QLaurent f = mutation_expression(s, arc);
    std::map<std::string, double> y;
    for (auto& [n, v] : lam) y[n] = 2 * std::log(v);
    double v = eval_numeric(f, y, omegas).real();
    lam.erase(arc);
    lam[new_name] = v;
    return lam;
}

// ---- tropical ----

inline long long tropical_inner(long long a, long long b, long long c, long long d, long long e) {
    return std::max(a + c, b + d) - e;
}
inline long long tropical_loop(long long a, long long b, long long e) { return std::max(2 * a, 2 * b) - e; }

inline long long tropical_mutate(const Seed& s, const std::map<std::string, long long>& len, const std::string& arc) {
    auto n = neighborhood(s, arc);
    auto at = [&](const std::string& k) {
        auto it = len.find(k);
        if (it == len.end()) throw input_error("no length for arc '" + k + "'");
        if (it->second < 0) throw input_error("lengths must be nonnegative");
        return it->second;
    };
    if (n.monogon) return tropical_loop(at(n.a), at(n.b), at(n.e));
    return tropical_inner(at(n.a), at(n.b), at(n.c), at(n.d), at(n.e));
}

// 2 log(lambda_f) / N at lambda = e^{N l / 2}, omega = 1
inline double tropical_scaling(const Seed& s, const std::map<std::string, long long>& len, const std::string& arc,
                               double N) {
    QLaurent f = mutation_expression(s, arc);
    std::map<std::string, double> vals, om;
    for (auto& n : s.names) vals[n] = N * static_cast<double>(len.at(n));
    for (auto& w : s.torus->omegas) om[w] = 1.0;
    double v = eval_numeric(f, vals, om).real();
    return 2 * std::log(v) / N;
}

}  // namespace cuspq
