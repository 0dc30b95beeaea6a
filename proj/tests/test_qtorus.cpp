#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cuspq/qtorus.hpp>

using namespace cuspq;

namespace {

// x, y with eps(x, y) = 1, plus a central z and one omega
BasisPtr small() {
    return make_basis({"x", "y", "z"}, {GenKind::Inner, GenKind::Inner, GenKind::Inner},
                      {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}, {"w"});
}

}  // namespace

TEST_CASE("weyl monomials multiply with half the pairing") {
    auto b = small();
    QLaurent x = QLaurent::gen(b, "x", 2), y = QLaurent::gen(b, "y", 2);
    QLaurent xy = x * y, yx = y * x;
    CHECK(xy != yx);
    auto c = q_commutation(x, y);
    REQUIRE(c);
    CHECK(xy == yx.q_shift(*c));
    CHECK(*c == 8);  // e^X e^Y = q^2 e^Y e^X
    CHECK((x * y).classical() == (y * x).classical());
}

TEST_CASE("central generator commutes") {
    auto b = small();
    QLaurent x = QLaurent::gen(b, "x"), z = QLaurent::gen(b, "z", 3);
    CHECK(x * z == z * x);
    CHECK(q_commutation(x, z) == 0);
}

TEST_CASE("ring axioms on a few elements") {
    auto b = small();
    QLaurent x = QLaurent::gen(b, "x"), y = QLaurent::gen(b, "y", -1), w = QLaurent::omega(b, "w");
    QLaurent one = QLaurent::constant(b, 1);
    QLaurent f = x + y + w, g = x * y + one.q_shift(2), h = y - w * x;
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * (g + h) == f * g + f * h);
    CHECK(f - f == QLaurent(b));
    CHECK((f * one) == f);
    CHECK(x.monomial_inverse() * x == one);
    CHECK(x.pow(3) == x * x * x);
    CHECK(x.pow(-2) * x.pow(2) == one);
}

TEST_CASE("adjoint flips q and keeps weyl monomials") {
    auto b = small();
    QLaurent x = QLaurent::gen(b, "x"), y = QLaurent::gen(b, "y");
    CHECK(x.is_hermitian());
    QLaurent m = x * y;
    CHECK(!m.is_hermitian());
    CHECK(m.adjoint() == y * x);
    CHECK((x * y + y * x).is_hermitian());
}

TEST_CASE("poisson bracket of exponentials") {
    auto b = small();
    QLaurent x = QLaurent::gen(b, "x", 2), y = QLaurent::gen(b, "y", 2);
    // {e^X, e^Y} = sign * eps e^{X+Y}
    CHECK(poisson(x, y) == Rat(kPoissonSign * b->eps[0][1]) * (x * y).classical());
    CHECK(poisson(y, x) == -poisson(x, y));
    QLaurent f = x + y, g = x * y;
    CHECK(poisson(f, g.classical()) == -poisson(g.classical(), f));
    CHECK_THROWS_AS(poisson(x * y, y), input_error);
}

TEST_CASE("print and parse round trip") {
    auto b = small();
    QLaurent x = QLaurent::gen(b, "x"), y = QLaurent::gen(b, "y", -3), w = QLaurent::omega(b, "w", 2);
    QLaurent f = Rat(3, 2) * x * y + w.q_shift(-1) - Rat(7) * y.pow(2) + QLaurent::constant(b, 5, 3);
    CHECK(parse_qlaurent(b, to_string(f)) == f);
    CHECK(parse_qlaurent(b, "0") == QLaurent(b));
    CHECK(to_lines(f).size() == f.size());
    CHECK_THROWS_AS(parse_qlaurent(b, "1 exp((1*u)/2)"), input_error);
    CHECK_THROWS_AS(parse_qlaurent(b, "1 exp((1*x)/2"), input_error);
}

TEST_CASE("canonical text is stable") {
    auto b = small();
    QLaurent f = QLaurent::gen(b, "x") + QLaurent::gen(b, "y");
    CHECK(to_string(f) == "1 exp((1*y)/2) + 1 exp((1*x)/2)");
    CHECK(to_string(QLaurent::constant(b, Rat(-1, 2), 2)) == "-1/2 q^{2/4}");
}

TEST_CASE("substitute follows a monomial change of basis") {
    auto b = small();
    auto t = make_basis({"u", "v"}, {GenKind::Free, GenKind::Free}, {{0, 1}, {-1, 0}}, {"w"});
    // x -> u, y -> v, z -> 1
    std::map<std::string, QLaurent> img = {{"x", QLaurent::gen(t, "u", 2)},
                                           {"y", QLaurent::gen(t, "v", 2)},
                                           {"z", QLaurent::constant(t, 1)}};
    QLaurent f = QLaurent::gen(b, "x") * QLaurent::gen(b, "y") + QLaurent::gen(b, "z", 4);
    QLaurent g = substitute(f, t, img);
    CHECK(g == QLaurent::gen(t, "u") * QLaurent::gen(t, "v") + QLaurent::constant(t, 1));
}

TEST_CASE("numeric evaluation") {
    auto b = small();
    QLaurent f = QLaurent::gen(b, "x", 2) + Rat(2) * QLaurent::omega(b, "w");
    auto v = eval_numeric(f, {{"x", 0.5}, {"y", 0}, {"z", 0}}, {{"w", 3.0}});
    CHECK(v.real() == doctest::Approx(std::exp(0.5) + 6.0));
}
