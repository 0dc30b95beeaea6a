#pragma once

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "brackets.hpp"
#include "builtins.hpp"
#include "moves.hpp"
#include "skein.hpp"

namespace cuspq {

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteResult {
    std::string title;
    std::vector<CheckLine> checks;
    SuiteResult(std::string t = {}) : title(std::move(t)) {}
    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](auto& c) { return c.pass; });
    }
    void add(std::string n, bool p, std::string d = {}) { checks.push_back({std::move(n), p, std::move(d)}); }
};

namespace suite_detail {

// monomial from (generator, half-unit exponent) pairs
inline QLaurent mono(const BasisPtr& b, std::initializer_list<std::pair<const char*, int>> e) {
    std::vector<int> x(b->size(), 0);
    for (auto& [n, v] : e) {
        int i = b->index(n);
        if (i < 0) throw input_error(std::string("unknown generator ") + n);
        x[i] += v;
    }
    return QLaurent::monomial(b, x);
}

inline std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

struct S111 {
    Seed seed;
    FatGraph g;
    std::map<std::string, QLaurent> G;  // classical traces in the shear torus
    S111() : seed(builtin_seed("s111")), g(seed.graph) {
        for (auto& [n, w] : builtin_closed_words("s111")) G.emplace(n, trace(seed.shear, parse_word(w)));
    }
};

inline QLaurent lam(const Seed& s, std::initializer_list<std::pair<const char*, int>> e) {
    std::vector<int> x(s.size(), 0);
    for (auto& [n, v] : e) x[s.index(n)] += v;
    return QLaurent::monomial(s.torus, x);
}

}  // namespace suite_detail

// Sigma_{1,1,1}: arcs as shear monomials
inline SuiteResult criterion_monomials() {
    using suite_detail::mono;
    SuiteResult r{"s111 arc monomials"};
    suite_detail::S111 d;
    const auto& b = d.seed.shear;
    std::map<std::string, QLaurent> want = {
        {"a0", mono(b, {{"pi", 2}, {"Z1", 2}, {"Z2", 2}, {"Z3", 2}, {"Z4", 2}})},
        {"a1", mono(b, {{"pi", 2}, {"Z1", 2}, {"Z2", 4}, {"Z3", 3}, {"Z4", 3}})},
        {"a2", mono(b, {{"pi", 2}, {"Z1", 1}, {"Z2", 3}, {"Z3", 2}, {"Z4", 3}})},
        {"a3", mono(b, {{"pi", 2}, {"Z1", 1}, {"Z2", 3}, {"Z3", 1}, {"Z4", 2}})},
        {"a4", mono(b, {{"pi", 2}, {"Z2", 2}, {"Z3", 1}, {"Z4", 1}})},
    };
    for (auto& [n, w] : want) {
        auto& got = d.seed.in_shear[d.seed.index(n)];
        r.add(n + " = " + to_string(w), got && *got == w, got ? to_string(*got) : "missing");
    }
    r.add("a0 central", verify_casimir(want.at("a0")));
    return r;
}

inline SuiteResult criterion_inversion() {
    using suite_detail::lam;
    SuiteResult r{"s111 shear from arcs"};
    suite_detail::S111 d;
    const Seed& s = d.seed;
    auto img = shear_from_lambda(s);
    std::map<std::string, QLaurent> want = {
        {"pi", lam(s, {{"a0", 1}, {"a4", 1}, {"a1", -1}})},
        {"Z1", lam(s, {{"a0", 1}, {"a3", 1}, {"a2", -1}, {"a4", -1}})},
        {"Z2", lam(s, {{"a1", 1}, {"a3", 1}, {"a0", -1}, {"a2", -1}})},
        {"Z3", lam(s, {{"a1", 1}, {"a4", 1}, {"a3", -2}})},
        {"Z4", lam(s, {{"a2", 2}, {"a1", -1}, {"a4", -1}})},
    };
    for (auto& [y, w] : want) r.add("e^" + y + " = " + to_string(w), img.at(y) == w, to_string(img.at(y)));
    bool round = true;
    for (int i = 0; i < s.size(); ++i) round = round && substitute(*s.in_shear[i], s.torus, img) == s.lambda(s.names[i]);
    std::map<std::string, QLaurent> back;
    for (int i = 0; i < s.size(); ++i) back.emplace(s.names[i], s.in_shear[i]->pow(2));
    for (auto& [y, m] : img) round = round && substitute(m, s.shear, back) == QLaurent::gen(s.shear, y, 2);
    r.add("round trip", round);
    return r;
}

inline SuiteResult criterion_geodesics() {
    using suite_detail::lam;
    SuiteResult r{"s111 geodesics"};
    suite_detail::S111 d;
    const Seed& s = d.seed;
    auto img = shear_from_lambda(s);
    std::map<std::string, QLaurent> want = {
        {"G1", lam(s, {{"a4", 1}, {"a3", -1}}) + lam(s, {{"a3", 1}, {"a4", -1}}) +
                   lam(s, {{"a2", 2}, {"a1", -1}, {"a3", -1}}) + lam(s, {{"a0", 1}, {"a2", 1}, {"a1", -1}, {"a4", -1}})},
        {"G2", lam(s, {{"a2", 1}, {"a1", -1}}) + lam(s, {{"a1", 1}, {"a2", -1}}) +
                   lam(s, {{"a3", 2}, {"a2", -1}, {"a4", -1}}) + lam(s, {{"a0", 1}, {"a3", 1}, {"a1", -1}, {"a4", -1}})},
        {"G3", lam(s, {{"a2", 1}, {"a3", -1}}) + lam(s, {{"a3", 1}, {"a2", -1}}) +
                   lam(s, {{"a1", 1}, {"a4", 1}, {"a2", -1}, {"a3", -1}})},
    };
    for (auto& [n, w] : want) {
        QLaurent got = substitute(d.G.at(n), s.torus, img);
        r.add(n + " in arcs", got == w, to_string(got));
    }
    const QLaurent &G1 = d.G.at("G1"), &G2 = d.G.at("G2"), &G3 = d.G.at("G3"), &g = d.G.at("g");
    auto rel = [&](const QLaurent& x, const QLaurent& y, const QLaurent& z) {
        return poisson(x, y) == Rat(1, 2) * cmul(x, y) - z;
    };
    r.add("{G1,G2} = G1 G2/2 - G3", rel(G1, G2, G3));
    r.add("{G2,G3} = G2 G3/2 - G1", rel(G2, G3, G1));
    r.add("{G3,G1} = G3 G1/2 - G2", rel(G3, G1, G2));
    QLaurent markov = cmul(G1, G1) + cmul(G2, G2) + cmul(G3, G3) - cmul(cmul(G1, G2), G3);
    r.add("G1^2 + G2^2 + G3^2 - G1 G2 G3 = 2 - g", markov == QLaurent::constant(g.basis(), 2) - g);
    bool comm = true;
    for (auto* x : {&G1, &G2, &G3}) comm = comm && poisson(*x, g).is_zero();
    r.add("{G_i, g} = 0", comm);
    return r;
}

inline SuiteResult criterion_quadrangle() {
    using suite_detail::mono;
    SuiteResult r{"quadrangle arcs"};
    Seed s = builtin_seed("quad014");
    const auto& b = s.shear;
    std::map<std::string, QLaurent> want = {
        {"la", mono(b, {{"pi1", 1}, {"pi4", 1}, {"Z", 1}})}, {"lb", mono(b, {{"pi1", 1}, {"pi2", 1}})},
        {"lc", mono(b, {{"pi2", 1}, {"pi3", 1}, {"Z", 1}})}, {"ld", mono(b, {{"pi3", 1}, {"pi4", 1}})},
        {"le", mono(b, {{"pi2", 1}, {"pi4", 1}, {"Z", 1}})},
    };
    for (auto& [n, w] : want) {
        auto& got = s.in_shear[s.index(n)];
        r.add(n + " = " + to_string(w), got && *got == w, got ? to_string(*got) : "missing");
    }
    Seed m = mutate_lambda(s, "le", "lf");
    QLaurent lf = *m.in_shear[m.index("lf")];
    QLaurent wf = mono(b, {{"pi1", 1}, {"pi3", 1}, {"Z", 1}}) + mono(b, {{"pi1", 1}, {"pi3", 1}, {"Z", -1}});
    r.add("lf = " + to_string(wf), lf == wf, to_string(lf));
    const QLaurent &a = want.at("la"), &bb = want.at("lb"), &c = want.at("lc"), &dd = want.at("ld"), &e = want.at("le");
    r.add("le lf = q^{1/2} la lc + q^{-1/2} lb ld", e * lf == (a * c).q_shift(2) + (bb * dd).q_shift(-2));
    r.add("lf le = q^{-1/2} la lc + q^{1/2} lb ld", lf * e == (a * c).q_shift(-2) + (bb * dd).q_shift(2));
    return r;
}

inline SuiteResult criterion_homogeneous() {
    SuiteResult r{"homogeneous commutation"};
    for (auto n : {"s111", "quad014", "tri023"}) {
        Seed s = builtin_seed(n);
        auto h = check_homogeneous(s);
        int checked = 0;
        for (int i = 0; i < s.size(); ++i)
            for (int j = i + 1; j < s.size(); ++j)
                if (incidence_from_eps(s, i, j)) ++checked;
        r.add(std::string(n) + " all pairs", h.ok() && checked == static_cast<int>(h.pairs.size()),
              std::to_string(h.pairs.size()) + " pairs");
    }
    return r;
}

// word of the quadrangle diagonal crossing Z, pi1 to pi3
inline const char* quad_flipped_diagonal() { return "K X(pi3) L X(Z) R X(pi1)"; }

struct DisplayedTerm {
    int qpow;
    bool omega;
    detail::Factors f;
};
struct DisplayedStep {
    std::string from, to;
    std::vector<DisplayedTerm> terms;
};

// the triangle-with-hole cycle; entries 2, 4, 6 carry q^{3/4} in our normalization
inline std::vector<DisplayedStep> triangle_cycle() {
    return {
        {"t11", "t33", {{0, false, {{"t13", 1}, {"t11", -1}, {"t13", 1}}}, {0, true, {{"t13", 1}, {"l13", 1}, {"t11", -1}}}, {0, false, {{"l13", 1}, {"t11", -1}, {"l13", 1}}}}},
        {"t13", "t23", {{3, false, {{"t33", 1}, {"l12", 1}, {"t13", -1}}}, {0, false, {{"l13", 1}, {"t13", -1}, {"l23", 1}}}}},
        {"t33", "t22", {{0, false, {{"t23", 1}, {"t33", -1}, {"t23", 1}}}, {0, true, {{"t23", 1}, {"l23", 1}, {"t33", -1}}}, {0, false, {{"l23", 1}, {"t33", -1}, {"l23", 1}}}}},
        {"t23", "t12", {{3, false, {{"t22", 1}, {"l13", 1}, {"t23", -1}}}, {0, false, {{"l23", 1}, {"t23", -1}, {"l12", 1}}}}},
        {"t22", "t11", {{0, false, {{"t12", 1}, {"t22", -1}, {"t12", 1}}}, {0, true, {{"t12", 1}, {"l12", 1}, {"t22", -1}}}, {0, false, {{"l12", 1}, {"t22", -1}, {"l12", 1}}}}},
        {"t12", "t13", {{3, false, {{"t11", 1}, {"l23", 1}, {"t12", -1}}}, {0, false, {{"l12", 1}, {"t12", -1}, {"l13", 1}}}}},
    };
}

inline QLaurent displayed_value(const Seed& s, const DisplayedStep& st, const std::string& omega) {
    QLaurent v(s.torus);
    for (auto& t : st.terms) {
        QLaurent m = detail::seed_product(s, t.f).q_shift(t.qpow);
        if (t.omega) m = QLaurent::omega(s.torus, omega) * m;
        v += m;
    }
    return v;
}

inline SuiteResult criterion_mutation() {
    SuiteResult r{"quantum mutation"};
    {
        Seed s = builtin_seed("quad014");
        Seed m = mutate_lambda(s, "le", "lf");
        QLaurent t = trace(s.shear, parse_word(quad_flipped_diagonal()), Mode::Quantum);
        r.add("quad014 lf = tr " + std::string(quad_flipped_diagonal()), *m.in_shear[m.index("lf")] == t, to_string(t));
    }
    Seed s = builtin_seed("tri023");
    std::map<std::string, double> val = {{"l23", 1.3}, {"l13", 0.7}, {"l12", 2.1}, {"t11", 1.7}, {"t13", 0.9}};
    const std::map<std::string, double> om = {{"W", 2.6}};
    int k = 1;
    for (auto& st : triangle_cycle()) {
        QLaurent f = mutation_expression(s, st.from);
        bool herm = f.is_hermitian();
        bool disp = displayed_value(s, st, "W") == f;
        val = mutate_numeric(s, val, st.from, st.to, om);
        s = mutate_lambda(s, st.from, st.to);
        bool hom = check_homogeneous(s).ok();
        r.add("tri023 step " + std::to_string(k++) + " " + st.from + " -> " + st.to, herm && disp && hom,
              std::string(herm ? "" : "not hermitian ") + (disp ? "" : "differs from display ") + (hom ? "" : "inhomogeneous"));
    }
    Seed s0 = builtin_seed("tri023");
    bool back = s.names == s0.names && s.I == s0.I && std::abs(val.at("t11") - 1.7) < 1e-12 &&
                std::abs(val.at("t13") - 0.9) < 1e-12;
    r.add("tri023 cycle closes", back);
    return r;
}

inline SuiteResult criterion_matrices(const OracleOptions& o = {}) {
    SuiteResult r{"matrix identities"};
    for (int p : {2, 3}) {
        auto b = make_basis({}, {}, {}, {"w"}, {p});
        Mat2 F = loop_matrix(b, "w"), acc = Mat2::identity(b);
        for (int i = 0; i < p; ++i) acc = acc * F;
        std::vector<int> lower = p == 2 ? std::vector<int>{0} : std::vector<int>{-1};
        for (auto& x : acc.e) x = reduce_omega(x, "w", lower);
        r.add("F^" + std::to_string(p) + " = " + (p % 2 ? "I" : "-I"), acc == Rat(p % 2 ? 1 : -1) * Mat2::identity(b));
    }
    {
        auto b = make_basis({}, {}, {});
        Mat2 R = right_matrix(b);
        r.add("R^3 = -I", R * R * R == Rat(-1) * Mat2::identity(b));
    }
    auto gb = generic_basis(4);
    r.add("FFF n=2", verify_fff({generic_gl2(gb, 0), generic_gl2(gb, 1)}));
    r.add("FFF n=3", verify_fff({generic_gl2(gb, 0), generic_gl2(gb, 1), generic_gl2(gb, 2)}));
    r.add("skein, symbolic", verify_classical_skein(generic_gl2(gb, 0), generic_sl2(gb, 1)));
    r.add("ptolemy skein, symbolic",
          verify_ptolemy_skein(generic_sl2(gb, 0), generic_sl2(gb, 1), generic_sl2(gb, 2), generic_sl2(gb, 3)));
    r.add("ur identity, symbolic",
          verify_ur_identity(generic_sl2(gb, 0), generic_sl2(gb, 1), generic_sl2(gb, 2), generic_sl2(gb, 3)));
    auto n = numeric_skein_residuals(o.seed, o.points);
    const double tol = 1e-10;
    r.add("skein, numeric", n.skein < tol && n.refined < tol, "residual " + suite_detail::fmt(std::max(n.skein, n.refined)));
    r.add("ptolemy skein, numeric", n.ptolemy < tol, "residual " + suite_detail::fmt(n.ptolemy));
    r.add("ur identity, numeric", n.ur < tol, "residual " + suite_detail::fmt(n.ur));
    return r;
}

inline SuiteResult criterion_r_matrices() {
    SuiteResult r{"r-matrices"};
    for (auto& i : r_matrix_identities()) r.add(i.name, i.pass);
    for (auto& i : reidemeister_identities()) r.add(i.name, i.pass);
    auto b = r_matrix_basis();
    r.add("closed empty loop = -2 classically", loop_value(b, LoopKind::ClosedEmpty, Mode::Classical) == QLaurent::constant(b, -2));
    r.add("cusp empty loop = 0", loop_value(b, LoopKind::CuspEmpty, Mode::Quantum).is_zero());
    return r;
}

inline std::vector<PathWord> suite_words(const FatGraph& g, const std::string& name) {
    std::vector<PathWord> w;
    if (g.cusp_count())
        for (auto& a : dual_lamination(g, epsilon_matrix(g)).arcs) w.push_back(a.word);
    for (auto& [n, s] : builtin_closed_words(name)) w.push_back(parse_word(s));
    return w;
}

inline SuiteResult criterion_flips(const OracleOptions& o = {}) {
    SuiteResult r{"flip invariance"};
    for (auto name : {"s111", "tri023"}) {
        FatGraph g = builtin_graph(name);
        auto words = suite_words(g, name);
        for (int e : g.generators()) {
            if (g.edges[e].kind != EdgeKind::Inner) continue;
            const std::string& en = g.edges[e].name;
            auto ev = flip(g, en);
            auto c = check_flip_invariance(ev, words, o);
            auto d = check_double_flip(g, en, o);
            std::string kind = ev.kind == FlipEvent::Loop ? "loop flip " : "flip ";
            r.add(std::string(name) + " " + kind + en, c.ok && d.ok && flip_preserves_poisson(ev),
                  "traces " + suite_detail::fmt(c.max_err) + ", double " + suite_detail::fmt(d.max_err));
        }
    }
    return r;
}

inline SuiteResult criterion_positivity() {
    SuiteResult r{"positivity"};
    for (auto& bs : builtin_surfaces()) {
        FatGraph g = parse_surface(bs.text);
        auto b = epsilon_matrix(g);
        bool ok = true;
        int n = 0;
        for (auto& w : suite_words(g, bs.name)) {
            ok = ok && trace(b, w, Mode::Quantum).positive();
            ++n;
        }
        r.add(bs.name + " traces", ok, std::to_string(n) + " words");
    }
    {
        Seed s = builtin_seed("quad014");
        QLaurent t = trace(s.shear, parse_word(quad_flipped_diagonal()), Mode::Quantum);
        r.add("quad014 flipped diagonal", t.positive());
    }
    Seed s = builtin_seed("tri023");
    bool ok = true;
    for (auto& st : triangle_cycle()) {
        ok = ok && mutation_expression(s, st.from).positive();
        s = mutate_lambda(s, st.from, st.to);
    }
    r.add("tri023 mutations", ok);
    return r;
}

inline SuiteResult criterion_collision() {
    SuiteResult r{"collision limit"};
    for (auto [p1, p2] : {std::pair{0.0, 0.0}, std::pair{0.3, -0.7}}) {
        auto c = collision_limit_check(p1, p2);
        r.add("pi1 = " + suite_detail::fmt(p1) + ", pi2 = " + suite_detail::fmt(p2), c.ok,
              "slope " + suite_detail::fmt(c.slope) + ", skein slope " + suite_detail::fmt(c.ptolemy_slope));
    }
    auto c = collision_limit_check(0, 0);
    r.add("eps = 1e-4 lower-left = 1e-8", std::abs(c.residual.back() - 1e-8) < 1e-15);
    return r;
}

inline SuiteResult criterion_tropical() {
    SuiteResult r{"tropical limit"};
    Seed q = builtin_seed("quad014");
    std::map<std::string, long long> L = {{"la", 3}, {"lb", 1}, {"lc", 2}, {"ld", 6}, {"le", 4}};
    long long t = tropical_mutate(q, L, "le");
    r.add("quad014 max(a+c, b+d) - e", t == std::max(3 + 2, 1 + 6) - 4, std::to_string(t));
    double sc = tropical_scaling(q, L, "le", 50);
    r.add("quad014 N = 50", std::abs(sc - static_cast<double>(t)) < 0.05, suite_detail::fmt(sc));
    Seed tr = builtin_seed("tri023");
    std::map<std::string, long long> M = {{"l23", 1}, {"l13", 2}, {"l12", 3}, {"t11", 4}, {"t13", 5}};
    long long u = tropical_mutate(tr, M, "t11");
    r.add("tri023 max(2a, 2b) - e", u == std::max(2 * 5, 2 * 2) - 4, std::to_string(u));
    double su = tropical_scaling(tr, M, "t11", 50);
    r.add("tri023 N = 50", std::abs(su - static_cast<double>(u)) < 0.05, suite_detail::fmt(su));
    return r;
}

inline SuiteResult torus_suite() {
    SuiteResult r{"torus11 geodesics"};
    FatGraph g = builtin_graph("torus11");
    auto b = epsilon_matrix(g);
    std::map<std::string, QLaurent> G;
    for (auto& [n, w] : builtin_closed_words("torus11")) G.emplace(n, trace(b, parse_word(w)));
    const QLaurent &G1 = G.at("G1"), &G2 = G.at("G2"), &G3 = G.at("G3");
    auto rel = [&](const QLaurent& x, const QLaurent& y, const QLaurent& z) {
        return poisson(x, y) == Rat(1, 2) * cmul(x, y) - z;
    };
    r.add("{G1,G2} = G1 G2/2 - G3", rel(G1, G2, G3));
    r.add("{G2,G3} = G2 G3/2 - G1", rel(G2, G3, G1));
    r.add("{G3,G1} = G3 G1/2 - G2", rel(G3, G1, G2));
    QLaurent c = cmul(G1, G1) + cmul(G2, G2) + cmul(G3, G3) - cmul(cmul(G1, G2), G3);
    r.add("G1^2 + G2^2 + G3^2 - G1 G2 G3 central", verify_casimir(c));
    return r;
}

inline SuiteResult casimir_suite(const std::string& name) {
    SuiteResult r{name + " casimirs"};
    FatGraph g = builtin_graph(name);
    auto b = epsilon_matrix(g);
    for (auto& c : casimirs(g, b)) r.add(to_string(c) + " central", verify_casimir(c));
    return r;
}

inline std::vector<SuiteResult> acceptance(const OracleOptions& o = {}) {
    return {criterion_monomials(),   criterion_inversion(),  criterion_geodesics(),     criterion_quadrangle(),
            criterion_homogeneous(), criterion_mutation(),   criterion_matrices(o),     criterion_r_matrices(),
            criterion_flips(o),      criterion_positivity(), criterion_collision(),     criterion_tropical()};
}

inline std::vector<std::string> suite_names() {
    return {"all", "s111", "quad014", "tri023", "torus11", "matrix", "rmatrix", "flips", "positivity", "collision",
            "tropical"};
}

inline std::vector<SuiteResult> run_suite(const std::string& name, const OracleOptions& o = {}) {
    if (name == "all") {
        auto v = acceptance(o);
        v.push_back(torus_suite());
        return v;
    }
    if (name == "s111")
        return {criterion_monomials(), criterion_inversion(), criterion_geodesics(), casimir_suite("s111")};
    if (name == "quad014") return {criterion_quadrangle(), casimir_suite("quad014")};
    if (name == "tri023") return {criterion_mutation()};
    if (name == "torus11") return {torus_suite()};
    if (name == "matrix") return {criterion_matrices(o)};
    if (name == "rmatrix") return {criterion_r_matrices()};
    if (name == "flips") return {criterion_flips(o)};
    if (name == "positivity") return {criterion_positivity()};
    if (name == "collision") return {criterion_collision()};
    if (name == "tropical") return {criterion_tropical()};
    throw input_error("unknown suite '" + name + "'");
}

}  // namespace cuspq
