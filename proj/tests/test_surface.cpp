#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include <cuspq/builtins.hpp>
#include <cuspq/surface.hpp>

using namespace cuspq;

namespace {

std::vector<std::string> sorted(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("builtin generator lists") {
    CHECK(sorted(builtin_graph("quad014").generator_names()) ==
          std::vector<std::string>{"Z", "pi1", "pi2", "pi3", "pi4"});
    CHECK(sorted(builtin_graph("s111").generator_names()) ==
          std::vector<std::string>{"Z1", "Z2", "Z3", "Z4", "pi"});
    CHECK(builtin_graph("tri023").omega_names() == std::vector<std::string>{"W"});
    CHECK(builtin_graph("torus11").generator_names().size() == 3);
    CHECK_THROWS_AS(builtin("nope"), input_error);
}

TEST_CASE("builtins validate") {
    for (auto& b : builtin_surfaces()) {
        CAPTURE(b.name);
        auto r = validate(parse_surface(b.text));
        CHECK(r.ok());
    }
}

TEST_CASE("file surface") {
    auto g = load_surface(std::string(CUSPQ_TEST_DATA) + "/orbifold.fg");
    CHECK(validate(g).ok());
    REQUIRE(g.loops().size() == 1);
    CHECK(g.edges[g.loops()[0]].omega_kind == OmegaKind::Orbifold);
    CHECK(g.edges[g.loops()[0]].order == 3);
    CHECK_THROWS_AS(load_surface(std::string(CUSPQ_TEST_DATA) + "/missing.fg"), input_error);
}

TEST_CASE("parse errors carry line and column") {
    try {
        load_surface(std::string(CUSPQ_TEST_DATA) + "/bad.fg");
        FAIL("no error");
    } catch (const input_error& e) {
        std::string m = e.what();
        CHECK(m.find("line 3") != std::string::npos);
        CHECK(m.find("column") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_surface("vertex a trivalent\n"), input_error);
    CHECK_THROWS_AS(parse_surface("surface g=x s_h=1 s_o=0 n=0\n"), input_error);
}

TEST_CASE("validation rejects wrong counts") {
    std::string t = builtin("quad014").text;
    auto pos = t.find("n=4");
    t.replace(pos, 3, "n=3");
    auto r = validate(parse_surface(t));
    CHECK(!r.ok());
}

TEST_CASE("format_surface round trip") {
    for (auto& b : builtin_surfaces()) {
        CAPTURE(b.name);
        FatGraph g = parse_surface(b.text);
        FatGraph h = parse_surface(format_surface(g));
        CHECK(format_surface(h) == format_surface(g));
        CHECK(h.generator_names() == g.generator_names());
    }
}

TEST_CASE("epsilon is antisymmetric and mirrors negate it") {
    for (auto& b : builtin_surfaces()) {
        CAPTURE(b.name);
        FatGraph g = parse_surface(b.text);
        auto e = epsilon_matrix(g);
        auto m = epsilon_matrix(g.mirrored());
        for (int i = 0; i < e->size(); ++i)
            for (int j = 0; j < e->size(); ++j) {
                CHECK(e->eps[i][j] == -e->eps[j][i]);
                CHECK(m->eps[i][j] == -e->eps[i][j]);
            }
    }
}

TEST_CASE("quadrangle epsilon") {
    auto e = epsilon_matrix(builtin_graph("quad014"));
    int Z = e->index("Z");
    // the diagonal pairs with every boundary coordinate, each open edge with its neighbours
    for (auto p : {"pi1", "pi2", "pi3", "pi4"}) CHECK(std::abs(e->eps[Z][e->index(p)]) == 1);
    CHECK(e->eps[e->index("pi1")][e->index("pi3")] == 0);
}

TEST_CASE("quadrangle casimir is the sum of all coordinates") {
    auto g = builtin_graph("quad014");
    auto b = epsilon_matrix(g);
    auto c = casimirs(g, b);
    REQUIRE(c.size() == 1);
    CHECK(c[0] == parse_qlaurent(b, "1 exp((2*pi1 + 2*pi2 + 2*pi3 + 2*pi4 + 2*Z)/2)"));
    std::vector<int> v(b->size(), 2);
    for (int i = 0; i < b->size(); ++i) {
        std::vector<int> e(b->size(), 0);
        e[i] = 1;
        CHECK(b->pair(e, v) == 0);
    }
}

TEST_CASE("face casimirs") {
    auto g = builtin_graph("tri023");
    auto c = casimirs(g, epsilon_matrix(g));
    CHECK(c.size() == 2);
    CHECK(faces(g).size() == 2);
}

TEST_CASE("dual lamination size") {
    for (auto n : {"s111", "quad014", "tri023"}) {
        CAPTURE(n);
        FatGraph g = builtin_graph(n);
        auto d = dual_lamination(g, epsilon_matrix(g));
        CHECK(static_cast<int>(d.size()) == expected_lamination(g));
        for (auto& a : d.arcs) CHECK(a.frozen == (g.edges[g.edge_index(a.edge)].kind == EdgeKind::Open));
    }
    CHECK_THROWS_AS(dual_lamination(builtin_graph("torus11"), epsilon_matrix(builtin_graph("torus11"))),
                    input_error);
}

TEST_CASE("paths convert to words and back") {
    FatGraph g = builtin_graph("s111");
    for (auto& [n, w] : builtin_closed_words("s111")) {
        CAPTURE(n);
        PathWord pw = parse_word(w);
        CHECK(to_word(g, from_word(g, pw)) == pw);
    }
    CHECK_THROWS_AS(from_word(g, parse_word("L X(Z1) L X(Z1)")), input_error);
}
