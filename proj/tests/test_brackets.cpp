#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cuspq/brackets.hpp>
#include <cuspq/builtins.hpp>

using namespace cuspq;

namespace {

QLaurent lam(const Seed& s, std::initializer_list<std::pair<const char*, int>> e) {
    std::vector<int> x(s.size(), 0);
    for (auto& [n, v] : e) x[s.index(n)] += v;
    return QLaurent::monomial(s.torus, x);
}

QLaurent shear(const Seed& s, std::initializer_list<std::pair<const char*, int>> e) {
    std::vector<int> x(s.shear->size(), 0);
    for (auto& [n, v] : e) x[s.shear->index(n)] += v;
    return QLaurent::monomial(s.shear, x);
}

}  // namespace

TEST_CASE("incidence index of arc ends") {
    std::array<ArcEnd, 2> a{{{"c", 0}, {"d", 2}}}, b{{{"c", 1}, {"d", 1}}};
    CHECK(incidence_index(a, b) == 0);
    CHECK(incidence_index(a, a) == 0);
    std::array<ArcEnd, 2> c{{{"c", 2}, {"e", 0}}};
    CHECK(incidence_index(a, c) == -1);
    CHECK(incidence_index(c, a) == 1);
}

TEST_CASE("quadrangle arcs in shear coordinates") {
    Seed s = builtin_seed("quad014");
    CHECK(*s.in_shear[s.index("la")] == shear(s, {{"pi1", 1}, {"pi4", 1}, {"Z", 1}}));
    CHECK(*s.in_shear[s.index("lb")] == shear(s, {{"pi1", 1}, {"pi2", 1}}));
    CHECK(*s.in_shear[s.index("lc")] == shear(s, {{"pi2", 1}, {"pi3", 1}, {"Z", 1}}));
    CHECK(*s.in_shear[s.index("ld")] == shear(s, {{"pi3", 1}, {"pi4", 1}}));
    CHECK(*s.in_shear[s.index("le")] == shear(s, {{"pi2", 1}, {"pi4", 1}, {"Z", 1}}));
    CHECK(s.frozen == std::vector<bool>{true, true, true, true, false});
}

TEST_CASE("quadrangle incidence matrix") {
    Seed s = builtin_seed("quad014");
    // rows la lb lc ld le
    std::vector<std::vector<int>> want = {
        {0, -1, 0, 1, 1}, {1, 0, -1, 0, -1}, {0, 1, 0, -1, 1}, {-1, 0, 1, 0, -1}, {-1, 1, -1, 1, 0}};
    CHECK(s.I == want);
    for (int i = 0; i < s.size(); ++i)
        for (int j = 0; j < s.size(); ++j) CHECK(incidence_from_eps(s, i, j) == s.I[i][j]);
}

TEST_CASE("shear is the cross ratio of lambda lengths") {
    Seed s = builtin_seed("quad014");
    auto img = shear_from_lambda(s);
    // e^Z = la lc / (lb ld)
    CHECK(img.at("Z") == lam(s, {{"la", 1}, {"lc", 1}, {"lb", -1}, {"ld", -1}}));
    CHECK(img.at("pi1") == lam(s, {{"la", 1}, {"lb", 1}, {"le", -1}}));
    CHECK(img.at("pi4") == lam(s, {{"ld", 1}, {"le", 1}, {"lc", -1}}));
}

TEST_CASE("tri023 incidence includes the doubled end") {
    Seed s = builtin_seed("tri023");
    CHECK(s.I[s.index("t11")][s.index("l13")] == -2);
    CHECK(s.I[s.index("t11")][s.index("l12")] == 2);
    CHECK(s.I[s.index("t13")][s.index("t11")] == -2);
    CHECK(check_homogeneous(s).ok());
}

TEST_CASE("homogeneous commutation for every builtin seed") {
    for (auto n : {"s111", "quad014", "tri023"}) {
        CAPTURE(n);
        auto r = check_homogeneous(builtin_seed(n));
        CHECK(r.ok());
        CHECK(r.lines().size() == r.pairs.size());
        for (auto& l : r.lines()) CHECK(l.find("status=pass") != std::string::npos);
    }
}

TEST_CASE("seed torus commutation") {
    Seed s = builtin_seed("quad014");
    QLaurent a = s.lambda("la"), e = s.lambda("le");
    int I = s.I[s.index("la")][s.index("le")];
    CHECK((a * e).q_shift(I) == (e * a).q_shift(-I));
    CHECK(q_commutation(a, e) == -2 * I);
}

TEST_CASE("torus Poisson relations") {
    auto g = builtin_graph("torus11");
    auto b = epsilon_matrix(g);
    std::map<std::string, QLaurent> G;
    for (auto& [n, w] : builtin_closed_words("torus11")) G.emplace(n, trace(b, parse_word(w)));
    CHECK(poisson(G.at("G1"), G.at("G2")) == Rat(1, 2) * cmul(G.at("G1"), G.at("G2")) - G.at("G3"));
    QLaurent m = cmul(G.at("G1"), G.at("G1")) + cmul(G.at("G2"), G.at("G2")) + cmul(G.at("G3"), G.at("G3")) -
                 cmul(cmul(G.at("G1"), G.at("G2")), G.at("G3"));
    CHECK(verify_casimir(m));
    CHECK(!verify_casimir(G.at("G1")));
}

TEST_CASE("s111 cusp arc is central") {
    Seed s = builtin_seed("s111");
    CHECK(verify_casimir(*s.in_shear[s.index("a0")]));
    CHECK_THROWS_AS(s.index("nope"), input_error);
}
