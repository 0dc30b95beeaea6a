#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cuspq/skein.hpp>

using namespace cuspq;

TEST_CASE("kron index convention") {
    auto b = make_basis({}, {}, {});
    Mat2 A = Mat2::ints(b, 1, 2, 3, 4), B = Mat2::ints(b, 5, 6, 7, 8);
    TensorMat4 t = kron(A, B);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) CHECK(t(i + 2 * j, k + 2 * l) == A(i, k) * B(j, l));
    CHECK(embed1(A) * embed2(B) == kron(A, B));
    CHECK(embed2(B) * embed1(A) == kron(A, B));
}

TEST_CASE("permutation and Q") {
    auto b = r_matrix_basis();
    auto m = build_r_matrices(b);
    auto I4 = TensorMat4::identity(b);
    CHECK(m.P * m.P == I4);
    CHECK(m.Q * m.Qinv == I4);
    Mat2 A = edge_matrix(b, "S"), R = right_matrix(b);
    CHECK(m.P * kron(A, R) * m.P == kron(R, A));
    CHECK(m.rt.tr12() == QLaurent::constant(b, 1, 4) + QLaurent::constant(b, 1, -4));
}

TEST_CASE("r-matrix identities") {
    for (auto& i : r_matrix_identities()) {
        CAPTURE(i.name);
        CHECK(i.pass);
    }
    CHECK(r_matrix_identities().size() == 13);
}

TEST_CASE("Reidemeister II needs the loop value") {
    for (auto& i : reidemeister_identities()) {
        CAPTURE(i.name);
        CHECK(i.pass);
    }
    auto b = r_matrix_basis();
    CHECK(loop_value(b, LoopKind::ClosedEmpty, Mode::Quantum).classical() == QLaurent::constant(b, -2));
    CHECK(loop_value(b, LoopKind::CuspEmpty, Mode::Quantum).is_zero());
}

TEST_CASE("classical skein identities symbolically") {
    auto gb = generic_basis(4);
    Mat2 A = generic_sl2(gb, 0), B = generic_sl2(gb, 1);
    CHECK(A.det_classical() == QLaurent::constant(gb, 1));
    CHECK(verify_classical_skein(A, B));
    CHECK(verify_classical_skein(generic_gl2(gb, 2), B));
    CHECK(verify_ptolemy_skein(generic_sl2(gb, 0), generic_sl2(gb, 1), generic_sl2(gb, 2), generic_sl2(gb, 3)));
    CHECK(verify_ur_identity(generic_sl2(gb, 0), generic_sl2(gb, 1), generic_sl2(gb, 2), generic_sl2(gb, 3)));
    CHECK(verify_fff({generic_gl2(gb, 0), generic_gl2(gb, 1)}));
    CHECK(verify_fff({generic_gl2(gb, 0), generic_gl2(gb, 1), generic_gl2(gb, 2)}));
}

TEST_CASE("classical skein identities numerically") {
    auto n = numeric_skein_residuals(42, 10);
    CHECK(n.skein < 1e-10);
    CHECK(n.refined < 1e-10);
    CHECK(n.ptolemy < 1e-10);
    CHECK(n.ur < 1e-10);
    auto m = numeric_skein_residuals(7, 25);
    CHECK(std::max({m.skein, m.refined, m.ptolemy, m.ur}) < 1e-10);
}

TEST_CASE("random SL2 points") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 5; ++i) CHECK(random_sl2(rng).determinant() == doctest::Approx(1.0));
}

TEST_CASE("collision limit is quadratic in eps") {
    auto c = collision_limit_check(0.3, -0.7);
    CHECK(c.ok);
    CHECK(c.slope == doctest::Approx(2).epsilon(0.05));
    CHECK(c.ptolemy_slope == doctest::Approx(2).epsilon(0.05));
    REQUIRE(c.residual.size() == 3);
    CHECK(c.residual[0] > c.residual[1]);
    CHECK(c.residual[1] > c.residual[2]);
}
