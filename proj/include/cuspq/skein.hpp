#pragma once

#include <array>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "holonomy.hpp"

namespace cuspq {

// 4x4 matrix on the product of two 2-dim spaces; row/column a = i + 2j with
// i the index in space 1 and j the index in space 2
struct TensorMat4 {
    std::array<QLaurent, 16> e;

    QLaurent& operator()(int a, int b) { return e[4 * a + b]; }
    const QLaurent& operator()(int a, int b) const { return e[4 * a + b]; }

    static TensorMat4 zero(const BasisPtr& b) {
        TensorMat4 m;
        for (auto& x : m.e) x = QLaurent(b);
        return m;
    }
    static TensorMat4 identity(const BasisPtr& b) {
        auto m = zero(b);
        for (int a = 0; a < 4; ++a) m(a, a) = QLaurent::constant(b, 1);
        return m;
    }
    // entries given as (coefficient, quarter q-power) pairs; terms summed
    using Entry = std::vector<std::pair<int, int>>;
    static TensorMat4 from(const BasisPtr& b, const std::array<std::array<Entry, 4>, 4>& rows) {
        auto m = zero(b);
        for (int a = 0; a < 4; ++a)
            for (int c = 0; c < 4; ++c)
                for (auto& [k, qp] : rows[a][c]) m(a, c) += QLaurent::constant(b, k, qp);
        return m;
    }

    friend TensorMat4 operator*(const TensorMat4& x, const TensorMat4& y) {
        TensorMat4 r;
        for (int a = 0; a < 4; ++a)
            for (int c = 0; c < 4; ++c) {
                QLaurent s(x(0, 0).basis());
                for (int k = 0; k < 4; ++k)
                    if (!x(a, k).is_zero() && !y(k, c).is_zero()) s += x(a, k) * y(k, c);
                r(a, c) = s;
            }
        return r;
    }
    friend TensorMat4 operator+(TensorMat4 x, const TensorMat4& y) {
        for (int i = 0; i < 16; ++i) x.e[i] += y.e[i];
        return x;
    }
    friend TensorMat4 operator-(TensorMat4 x, const TensorMat4& y) {
        for (int i = 0; i < 16; ++i) x.e[i] -= y.e[i];
        return x;
    }
    friend TensorMat4 operator*(Rat c, TensorMat4 x) {
        for (auto& v : x.e) v = c * v;
        return x;
    }
    TensorMat4 q_shift(int quarters) const {
        TensorMat4 r = *this;
        for (auto& v : r.e) v = v.q_shift(quarters);
        return r;
    }
    bool operator==(const TensorMat4& o) const { return e == o.e; }

    QLaurent tr12() const {
        QLaurent s = e[0];
        for (int a = 1; a < 4; ++a) s += (*this)(a, a);
        return s;
    }
};

// A (x) B with entries multiplied A first
inline TensorMat4 kron(const Mat2& A, const Mat2& B) {
    TensorMat4 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) r(i + 2 * j, k + 2 * l) = A(i, k) * B(j, l);
    return r;
}
inline TensorMat4 embed1(const Mat2& A) { return kron(A, Mat2::identity(A(0, 0).basis())); }
inline TensorMat4 embed2(const Mat2& B) { return kron(Mat2::identity(B(0, 0).basis()), B); }

struct RMatrices {
    TensorMat4 rt, r, Pq, s, Q, Qinv, P;
};

inline RMatrices build_r_matrices(const BasisPtr& b) {
    using E = TensorMat4::Entry;
    const E z{}, one{{1, 0}}, m1{{-1, 0}};
    RMatrices m;
    m.rt = TensorMat4::from(b, {{{z, z, z, z}, {z, {{1, -4}}, m1, z}, {z, m1, {{1, 4}}, z}, {z, z, z, z}}});
    m.r = TensorMat4::from(
        b, {{{E{{1, 4}}, z, z, z}, {z, {{1, 4}, {-1, -4}}, one, z}, {z, one, z, z}, {z, z, z, {{1, 4}}}}});
    m.Pq = TensorMat4::from(b, {{{one, z, z, z},
                                 {E{{1, 4}, {-1, 0}}, {{1, 4}, {-1, -4}}, one, z},
                                 {z, one, z, z},
                                 {z, E{{1, -4}, {-1, 0}}, z, one}}});
    m.s = TensorMat4::from(b, {{{E{{-1, 2}}, z, z, z},
                                {E{{1, 2}, {-1, -2}}, {{-1, -2}}, z, z},
                                {z, z, {{-1, -2}}, z},
                                {z, z, E{{1, -2}, {-1, 2}}, {{-1, 2}}}}});
    m.Q = TensorMat4::zero(b);
    m.Qinv = TensorMat4::zero(b);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            int a = i + 2 * j, p = i == j ? 2 : -2;
            m.Q(a, a) = QLaurent::constant(b, 1, p);
            m.Qinv(a, a) = QLaurent::constant(b, 1, -p);
        }
    m.P = TensorMat4::zero(b);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m.P(i + 2 * j, j + 2 * i) = QLaurent::constant(b, 1);
    return m;
}

struct Identity {
    std::string name;
    bool pass;
};

// basis with generators X, Y, Z, S: X1 Y2 = Y2 X1 Q needs the pairing 1 between
// successive generators
inline BasisPtr r_matrix_basis() {
    std::vector<std::string> n = {"X", "Y", "Z", "S"};
    std::vector<std::vector<int>> eps = {{0, 1, 1, 0}, {-1, 0, 1, 0}, {-1, -1, 0, 0}, {0, 0, 0, 0}};
    return make_basis(n, std::vector<GenKind>(4, GenKind::Inner), eps);
}

inline std::vector<Identity> r_matrix_identities() {
    auto b = r_matrix_basis();
    auto m = build_r_matrices(b);
    auto I4 = TensorMat4::identity(b);
    Mat2 R = right_matrix(b), L = left_matrix(b);
    Mat2 XS = edge_matrix(b, "S"), XX = edge_matrix(b, "X"), XY = edge_matrix(b, "Y"), XZ = edge_matrix(b, "Z");
    std::vector<Identity> out;
    auto add = [&](std::string n, bool p) { out.push_back({std::move(n), p}); };

    add("r + rt = q I", m.r + m.rt == I4.q_shift(4));
    add("r = -q^{1/2} s Pq", m.r == Rat(-1) * (m.s * m.Pq).q_shift(2));
    add("s = L1 Q^-1 R1", m.s == embed1(L) * m.Qinv * embed1(R));
    add("Pq R1 Q L2 Q = P R1 L2", m.Pq * embed1(R) * m.Q * embed2(L) * m.Q == m.P * kron(R, L));
    add("rt^2 = (q + q^-1) rt", m.rt * m.rt == m.rt.q_shift(4) + m.rt.q_shift(-4));
    add("rt (R X_S)1 Q^-1 = q^{1/2} rt (X_S L)2",
        m.rt * embed1(R * XS) * m.Qinv == (m.rt * embed2(XS * L)).q_shift(2));
    add("rt (L X_S)1 Q = q^{-1/2} rt (X_S R)2",
        m.rt * embed1(L * XS) * m.Q == (m.rt * embed2(XS * R)).q_shift(-2));
    add("Q^-1 (X_S R)1 rt = q^{1/2} (L X_S)2 rt",
        m.Qinv * embed1(XS * R) * m.rt == (embed2(L * XS) * m.rt).q_shift(2));
    add("Q (X_S L)1 rt = q^{-1/2} (R X_S)2 rt",
        m.Q * embed1(XS * L) * m.rt == (embed2(R * XS) * m.rt).q_shift(-2));
    add("X1 Y2 = Y2 X1 Q", embed1(XX) * embed2(XY) == embed2(XY) * embed1(XX) * m.Q);
    add("X1 Y2 = Y2 Q^-1 X1", embed1(XX) * embed2(XY) == embed2(XY) * m.Qinv * embed1(XX));
    add("Z2 s L1 Y1 = -(L Y)1 Z2", embed2(XZ) * m.s * embed1(L) * embed1(XY) == Rat(-1) * kron(L * XY, XZ));
    add("(L Y)1 Z2 = L1 Z2 Q^-1 Y1", kron(L * XY, XZ) == embed1(L) * embed2(XZ) * m.Qinv * embed1(XY));
    return out;
}

enum class LoopKind { ClosedEmpty, CuspEmpty };

inline QLaurent loop_value(const BasisPtr& b, LoopKind k, Mode mode) {
    if (k == LoopKind::CuspEmpty) return QLaurent(b);
    if (mode == Mode::Classical) return QLaurent::constant(b, -2);
    return QLaurent::constant(b, -1, 4) + QLaurent::constant(b, -1, -4);
}

// crossing = q^{1/2} id + q^{-1/2} e, its inverse swaps q, e = -rt the cup-cap;
// the product telescopes to id exactly when the empty loop is -q - q^-1
inline std::vector<Identity> reidemeister_identities() {
    auto b = r_matrix_basis();
    auto m = build_r_matrices(b);
    auto I4 = TensorMat4::identity(b);
    TensorMat4 e = Rat(-1) * m.rt;
    QLaurent d = loop_value(b, LoopKind::ClosedEmpty, Mode::Quantum);
    TensorMat4 dI = TensorMat4::zero(b);
    for (int a = 0; a < 4; ++a) dI(a, a) = d;
    TensorMat4 B = I4.q_shift(2) + e.q_shift(-2);
    TensorMat4 Bp = I4.q_shift(-2) + e.q_shift(2);
    // B B' expanded term by term, the e e term closed by the loop value
    TensorMat4 four = I4 + e.q_shift(4) + e.q_shift(-4) + dI * e;
    return {{"e^2 = loop e", e * e == dI * e},
            {"tr e = loop", e.tr12() == d},
            {"B B' = id", B * Bp == I4},
            {"B' B = id", Bp * B == I4},
            {"four-term sum = id", four == I4}};
}

// ---- classical skein ----

inline Mat2 adj(const Mat2& m) { return m.adjugate(); }

inline QLaurent ctr(const Mat2& m) { return m.trace().classical(); }

inline Mat2 cprod(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = (a(i, 0).classical() * b(0, j).classical() + a(i, 1).classical() * b(1, j).classical()).classical();
    return r;
}

// tr A tr B = tr(AB) + tr(A B^-1), and tr A tr B = tr12(A1 P B2) - tr12(A1 Pt B2)
inline bool verify_classical_skein(const Mat2& A, const Mat2& B) {
    const BasisPtr& b = A(0, 0).basis();
    QLaurent lhs = (ctr(A) * ctr(B)).classical();
    bool ok = lhs == (ctr(cprod(A, B)) + ctr(cprod(A, adj(B)))).classical();
    auto m = build_r_matrices(b);
    TensorMat4 Pt = Rat(-1) * m.rt;
    for (auto& x : Pt.e) x = x.classical();
    TensorMat4 AB = kron(A, B);
    for (auto& x : AB.e) x = x.classical();
    QLaurent t1 = (embed1(A) * m.P * embed2(B)).tr12().classical();
    QLaurent t2 = (embed1(A) * Pt * embed2(B)).tr12().classical();
    return ok && lhs == (t1 - t2).classical();
}

// tr(A1 K A2) tr(B1 K B2) = tr(B2 A1 K) tr(A2 B1 K) - tr(B1^-1 A1 K) tr(A2 B2^-1 K)
inline bool verify_ptolemy_skein(const Mat2& A1, const Mat2& A2, const Mat2& B1, const Mat2& B2) {
    const BasisPtr& b = A1(0, 0).basis();
    Mat2 K = cusp_matrix(b);
    auto t = [&](std::initializer_list<Mat2> ms) {
        Mat2 r = Mat2::identity(b);
        for (auto& m : ms) r = cprod(r, m);
        return ctr(r);
    };
    QLaurent lhs = (t({A1, K, A2}) * t({B1, K, B2})).classical();
    QLaurent rhs = (t({B2, A1, K}) * t({A2, B1, K})).classical() -
                   (t({adj(B1), A1, K}) * t({A2, adj(B2), K})).classical();
    return lhs == rhs;
}

inline QLaurent upper_right(const Mat2& m) { return m(0, 1).classical(); }

// ur(M1 M2) ur(M3 M4) = ur(M1 M4) ur(M3 M2) + ur(M1 M3^-1) ur(M2^-1 M4)
inline bool verify_ur_identity(const Mat2& M1, const Mat2& M2, const Mat2& M3, const Mat2& M4) {
    auto u = [](const Mat2& a, const Mat2& c) { return upper_right(cprod(a, c)); };
    QLaurent lhs = (u(M1, M2) * u(M3, M4)).classical();
    QLaurent rhs = (u(M1, M4) * u(M3, M2)).classical() + (u(M1, adj(M3)) * u(adj(M2), M4)).classical();
    return lhs == rhs;
}

// tr(F1 K F2 K ... Fn K) = prod tr(Fi K)
inline bool verify_fff(const std::vector<Mat2>& F) {
    const BasisPtr& b = F.at(0)(0, 0).basis();
    Mat2 K = cusp_matrix(b);
    Mat2 all = Mat2::identity(b);
    QLaurent prod = QLaurent::constant(b, 1);
    for (auto& f : F) {
        all = cprod(cprod(all, f), K);
        prod = (prod * ctr(cprod(f, K))).classical();
    }
    return ctr(all) == prod;
}

// generic unit-determinant matrices [[a, b], [c, (1 + bc)/a]] on fresh generators
inline BasisPtr generic_basis(int count) {
    std::vector<std::string> n;
    for (int i = 0; i < count; ++i)
        for (char c : {'a', 'b', 'c'}) n.push_back(std::string(1, c) + std::to_string(i + 1));
    std::vector<std::vector<int>> eps(n.size(), std::vector<int>(n.size(), 0));
    return make_basis(n, std::vector<GenKind>(n.size(), GenKind::Free), eps);
}

inline Mat2 generic_sl2(const BasisPtr& b, int i) {
    std::string k = std::to_string(i + 1);
    QLaurent a = QLaurent::gen(b, "a" + k, 2), c = QLaurent::gen(b, "b" + k, 2), d = QLaurent::gen(b, "c" + k, 2);
    Mat2 m;
    m(0, 0) = a;
    m(0, 1) = c;
    m(1, 0) = d;
    m(1, 1) = ((QLaurent::constant(b, 1) + c * d) * a.monomial_inverse()).classical();
    return m;
}

// fully generic matrix: four independent generators
inline Mat2 generic_gl2(const BasisPtr& b, int i) {
    std::string k = std::to_string(i + 1);
    Mat2 m = generic_sl2(b, i);
    m(1, 1) = QLaurent::gen(b, "c" + k, 2) * QLaurent::gen(b, "a" + k, 2);
    return m;
}

// ---- numeric ----

inline Eigen::Matrix2d random_sl2(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0), pos(0.5, 2.0);
    double a = pos(rng), b = u(rng), c = u(rng);
    Eigen::Matrix2d m;
    m << a, b, c, (1 + b * c) / a;
    return m;
}

inline Eigen::Matrix2d adj(const Eigen::Matrix2d& m) {
    Eigen::Matrix2d r;
    r << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return r;
}

struct NumericSkein {
    double skein = 0, refined = 0, ptolemy = 0, ur = 0;
};

inline NumericSkein numeric_skein_residuals(unsigned long long seed, int points) {
    std::mt19937_64 rng(seed);
    Eigen::Matrix2d K;
    K << 0, 0, -1, 0;
    NumericSkein r;
    auto up = [](const Eigen::Matrix2d& m) { return m(0, 1); };
    for (int p = 0; p < points; ++p) {
        Eigen::Matrix2d A1 = random_sl2(rng), A2 = random_sl2(rng), B1 = random_sl2(rng), B2 = random_sl2(rng);
        double s = std::abs(A1.trace() * A2.trace() - (A1 * A2).trace() - (A1 * adj(A2)).trace());
        r.skein = std::max(r.skein, s);
        // refined form through the explicit 4x4 matrices
        Eigen::Matrix4d P = Eigen::Matrix4d::Zero(), Pt = Eigen::Matrix4d::Zero();
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) P(i + 2 * j, j + 2 * i) = 1;
        Pt(1, 1) = -1;
        Pt(2, 2) = -1;
        Pt(1, 2) = 1;
        Pt(2, 1) = 1;
        auto e1 = [](const Eigen::Matrix2d& a) {
            Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int k = 0; k < 2; ++k) m(i + 2 * j, k + 2 * j) = a(i, k);
            return m;
        };
        auto e2 = [](const Eigen::Matrix2d& a) {
            Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int l = 0; l < 2; ++l) m(i + 2 * j, i + 2 * l) = a(j, l);
            return m;
        };
        double rf = std::abs(A1.trace() * A2.trace() - ((e1(A1) * P * e2(A2)).trace() - (e1(A1) * Pt * e2(A2)).trace()));
        r.refined = std::max(r.refined, rf);
        double lhs = (A1 * K * A2).trace() * (B1 * K * B2).trace();
        double rhs = (B2 * A1 * K).trace() * (A2 * B1 * K).trace() - (adj(B1) * A1 * K).trace() * (A2 * adj(B2) * K).trace();
        r.ptolemy = std::max(r.ptolemy, std::abs(lhs - rhs));
        double ul = up(A1 * A2) * up(B1 * B2);
        double ur = up(A1 * B2) * up(B1 * A2) + up(A1 * adj(B1)) * up(adj(A2) * B2);
        r.ur = std::max(r.ur, std::abs(ul - ur));
    }
    return r;
}

// ---- collision limit ----

struct CollisionReport {
    std::vector<double> eps, residual;
    double slope = 0;
    double ptolemy_slope = 0;
    bool ok = false;
};

// eps X_P with e^{P/2} = e^{(p1+p2)/2} / eps tends to X_{p1} K X_{p2}
inline CollisionReport collision_limit_check(double p1, double p2, unsigned long long seed = 42) {
    CollisionReport r;
    Eigen::Matrix2d K;
    K << 0, 0, -1, 0;
    Eigen::Matrix2d M = numeric_edge(p1) * K * numeric_edge(p2);
    std::mt19937_64 rng(seed);
    Eigen::Matrix2d A1 = random_sl2(rng), A2 = random_sl2(rng);
    std::vector<double> pres;
    for (double e : {1e-2, 1e-3, 1e-4}) {
        double P = p1 + p2 - 2 * std::log(e);
        Eigen::Matrix2d X = e * numeric_edge(P);
        r.eps.push_back(e);
        r.residual.push_back((X - M).cwiseAbs().maxCoeff());
        // closed curves through the colliding edge: eps^2 tr A tr B against tr(M A1) tr(M A2)
        Eigen::Matrix2d XP = numeric_edge(P);
        double lhs = e * e * (XP * A1).trace() * (XP * A2).trace();
        double lim = (M * A1).trace() * (M * A2).trace();
        pres.push_back(std::abs(lhs - lim));
    }
    auto slope = [&](const std::vector<double>& v) {
        return (std::log(v.front()) - std::log(v.back())) / (std::log(r.eps.front()) - std::log(r.eps.back()));
    };
    r.slope = slope(r.residual);
    r.ptolemy_slope = slope(pres);
    r.ok = std::abs(r.slope - 2) < 0.1 && std::abs(r.ptolemy_slope - 2) < 0.1;
    return r;
}

}  // namespace cuspq
