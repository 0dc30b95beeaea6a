#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cuspq/moves.hpp>
#include <cuspq/suites.hpp>

using namespace cuspq;

namespace {

QLaurent ex(const BasisPtr& b, std::initializer_list<std::pair<const char*, int>> e) {
    std::vector<int> x(b->size(), 0);
    for (auto& [n, v] : e) x[b->index(n)] += v;
    return QLaurent::monomial(b, x);
}

}  // namespace

TEST_CASE("inner flip rules on the quadrangle") {
    auto g = builtin_graph("quad014");
    auto ev = flip(g, "Z");
    CHECK(ev.kind == FlipEvent::Inner);
    const BasisPtr& b = ev.basis_before;
    QLaurent one = QLaurent::constant(b, 1);
    CHECK(ev.rules.at("Z").num == ex(b, {{"Z", -2}}));
    // opposite pairs: one side gains 1 + e^Z, the other loses 1 + e^-Z
    CHECK(ev.rules.at("pi1").num == (ex(b, {{"pi1", 2}}) * (one + ex(b, {{"Z", 2}}))).classical());
    CHECK(ev.rules.at("pi2").den == one + ex(b, {{"Z", -2}}));
    CHECK(ev.rules.at("pi3").den == one);
    CHECK(ev.rules.at("pi4").num == ex(b, {{"pi4", 2}}));
    CHECK(flip_preserves_poisson(ev));
    CHECK(validate(ev.after).ok());
}

TEST_CASE("quantum flip factors") {
    auto ev = flip(builtin_graph("quad014"), "Z");
    const BasisPtr& b = ev.basis_before;
    QLaurent one = QLaurent::constant(b, 1);
    CHECK(ev.rules.at("pi1").qnum == ex(b, {{"pi1", 2}}) + ex(b, {{"pi1", 2}, {"Z", 2}}).q_shift(8));
    CHECK(ev.rules.at("pi2").qden == one + ex(b, {{"Z", -2}}).q_shift(-4));
    CHECK(ev.rules.at("pi1").qnum.classical() == ev.rules.at("pi1").num);
}

TEST_CASE("loop flip rules") {
    auto g = builtin_graph("tri023");
    auto ev = flip(g, "Z1");
    CHECK(ev.kind == FlipEvent::Loop);
    CHECK(ev.omega == "W");
    const BasisPtr& b = ev.basis_before;
    QLaurent one = QLaurent::constant(b, 1), w = QLaurent::omega(b, "W");
    CHECK(ev.rules.at("p2").num == (ex(b, {{"p2", 2}}) * (one + w * ex(b, {{"Z1", 2}}) + ex(b, {{"Z1", 4}}))).classical());
    CHECK(ev.rules.at("Z2").den == one + w * ex(b, {{"Z1", -2}}) + ex(b, {{"Z1", -4}}));
    CHECK(flip_preserves_poisson(ev));
    CHECK(validate(ev.after).ok());
}

TEST_CASE("open edges do not flip") {
    auto g = builtin_graph("quad014");
    CHECK_THROWS_AS(flip(g, "pi1"), input_error);
}

TEST_CASE("flips keep geodesic functions") {
    OracleOptions o;
    for (auto n : {"s111", "tri023", "torus11"}) {
        FatGraph g = builtin_graph(n);
        auto words = suite_words(g, n);
        for (int e : g.generators()) {
            if (g.edges[e].kind != EdgeKind::Inner) continue;
            CAPTURE(n);
            CAPTURE(g.edges[e].name);
            auto ev = flip(g, g.edges[e].name);
            CHECK(check_flip_invariance(ev, words, o).ok);
            CHECK(check_double_flip(g, g.edges[e].name, o).ok);
        }
    }
}

TEST_CASE("orbifold loop flip") {
    auto g = load_surface(std::string(CUSPQ_TEST_DATA) + "/orbifold.fg");
    auto ev = flip(g, "Z1");
    CHECK(ev.kind == FlipEvent::Loop);
    OracleOptions o;
    CHECK(check_flip_invariance(ev, suite_words(g, ""), o).ok);
    CHECK(check_double_flip(g, "Z1", o).ok);
}

TEST_CASE("quadrangle mutation") {
    Seed s = builtin_seed("quad014");
    Seed m = mutate_lambda(s, "le", "lf");
    const BasisPtr& b = s.shear;
    QLaurent lf = ex(b, {{"pi1", 1}, {"pi3", 1}, {"Z", 1}}) + ex(b, {{"pi1", 1}, {"pi3", 1}, {"Z", -1}});
    CHECK(*m.in_shear[m.index("lf")] == lf);
    QLaurent la = *s.in_shear[s.index("la")], lb = *s.in_shear[s.index("lb")], lc = *s.in_shear[s.index("lc")],
             ld = *s.in_shear[s.index("ld")], le = *s.in_shear[s.index("le")];
    CHECK(le * lf == (la * lc).q_shift(2) + (lb * ld).q_shift(-2));
    CHECK(lf * le == (la * lc).q_shift(-2) + (lb * ld).q_shift(2));
    CHECK(check_homogeneous(m).ok());
    CHECK(m.arc_of_edge.at("Z") == "lf");
    CHECK_THROWS_AS(mutate_lambda(s, "la"), input_error);
    CHECK_THROWS_AS(mutate_lambda(s, "le", "lb"), input_error);
}

TEST_CASE("mutation twice returns the seed") {
    Seed s = builtin_seed("quad014");
    Seed m = mutate_lambda(mutate_lambda(s, "le", "lf"), "lf", "le");
    CHECK(m.I == s.I);
    CHECK(m.names == s.names);
    // 1/lf is not a Laurent monomial, so the shear expansion is dropped
    CHECK(!m.in_shear[m.index("le")]);
    CHECK(m.in_shear[m.index("la")] == s.in_shear[s.index("la")]);
}

TEST_CASE("classical Ptolemy relation numerically") {
    Seed s = builtin_seed("quad014");
    std::map<std::string, double> v = {{"la", 1.5}, {"lb", 0.4}, {"lc", 2.2}, {"ld", 0.9}, {"le", 1.1}};
    auto m = mutate_numeric(s, v, "le", "lf");
    CHECK(m.at("lf") * 1.1 == doctest::Approx(1.5 * 2.2 + 0.4 * 0.9));
}

TEST_CASE("monogon mutation has an omega term") {
    Seed s = builtin_seed("tri023");
    auto n = neighborhood(s, "t11");
    CHECK(n.monogon);
    CHECK(n.omega == "W");
    QLaurent f = mutation_expression(s, "t11");
    CHECK(f.size() == 3);
    CHECK(f.is_hermitian());
    CHECK(f.positive());
}

TEST_CASE("tropical mutation") {
    Seed q = builtin_seed("quad014");
    std::map<std::string, long long> L = {{"la", 3}, {"lb", 1}, {"lc", 2}, {"ld", 6}, {"le", 4}};
    CHECK(tropical_mutate(q, L, "le") == 3);
    CHECK(tropical_scaling(q, L, "le", 50) == doctest::Approx(3).epsilon(0.05));
    CHECK(tropical_inner(1, 1, 1, 1, 0) == 2);
    CHECK(tropical_loop(2, 5, 4) == 6);
    Seed t = builtin_seed("tri023");
    std::map<std::string, long long> M = {{"l23", 1}, {"l13", 2}, {"l12", 3}, {"t11", 4}, {"t13", 5}};
    CHECK(tropical_mutate(t, M, "t11") == 6);
    L.erase("lb");
    CHECK_THROWS_AS(tropical_mutate(q, L, "le"), input_error);
}

TEST_CASE("tropical scaling converges") {
    Seed q = builtin_seed("quad014");
    std::map<std::string, long long> L = {{"la", 3}, {"lb", 1}, {"lc", 2}, {"ld", 6}, {"le", 4}};
    double e10 = std::abs(tropical_scaling(q, L, "le", 10) - 3), e50 = std::abs(tropical_scaling(q, L, "le", 50) - 3);
    CHECK(e50 < e10);
    CHECK(e50 < 1e-3);
}
