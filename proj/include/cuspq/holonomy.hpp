#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qtorus.hpp"

namespace cuspq {

enum class Mode { Classical, Quantum };

struct Token {
    enum Kind { X, L, R, F, Finv, K, Q } kind;
    std::string name;  // generator for X, omega for F/Finv
    int k = 1;         // power for F/Finv, quarter powers of q for Q
    bool operator==(const Token&) const = default;
};

struct PathWord {
    std::vector<Token> tokens;
    bool closed() const {
        return std::none_of(tokens.begin(), tokens.end(), [](const Token& t) { return t.kind == Token::K; });
    }
    bool operator==(const PathWord&) const = default;
};

inline std::string to_string(const Token& t) {
    switch (t.kind) {
        case Token::X: return "X(" + t.name + ")";
        case Token::L: return "L";
        case Token::R: return "R";
        case Token::K: return "K";
        case Token::F: return "F(" + t.name + "," + std::to_string(t.k) + ")";
        case Token::Finv: return "Finv(" + t.name + "," + std::to_string(t.k) + ")";
        case Token::Q: return "q(" + std::to_string(t.k) + ")";
    }
    return {};
}

inline std::string to_string(const PathWord& w) {
    std::string s;
    for (auto& t : w.tokens) {
        if (!s.empty()) s += ' ';
        s += to_string(t);
    }
    return s;
}

inline PathWord parse_word(const std::string& text) {
    PathWord w;
    std::size_t p = 0;
    auto fail = [&](const std::string& m) -> void {
        throw input_error("word column " + std::to_string(p + 1) + ": " + m);
    };
    auto ident = [&]() {
        std::size_t q = p;
        while (q < text.size() && (std::isalnum(static_cast<unsigned char>(text[q])) || text[q] == '_')) ++q;
        if (q == p) fail("expected name");
        std::string r = text.substr(p, q - p);
        p = q;
        return r;
    };
    auto integer = [&]() {
        std::size_t q = p;
        if (q < text.size() && text[q] == '-') ++q;
        std::size_t d = q;
        while (q < text.size() && std::isdigit(static_cast<unsigned char>(text[q]))) ++q;
        if (q == d) fail("expected integer");
        int v = std::stoi(text.substr(p, q - p));
        p = q;
        return v;
    };
    auto expect = [&](char c) {
        if (p >= text.size() || text[p] != c) fail(std::string("expected '") + c + "'");
        ++p;
    };
    while (true) {
        while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
        if (p >= text.size()) break;
        std::size_t start = p;
        std::string head = ident();
        Token t{Token::X, "", 1};
        if (head == "L" || head == "R" || head == "K") {
            t.kind = head == "L" ? Token::L : head == "R" ? Token::R : Token::K;
        } else if (head == "X") {
            expect('(');
            t.name = ident();
            expect(')');
        } else if (head == "F" || head == "Finv") {
            t.kind = head == "F" ? Token::F : Token::Finv;
            expect('(');
            t.name = ident();
            expect(',');
            t.k = integer();
            expect(')');
            if (t.k < 1) {
                p = start;
                fail("loop power must be positive");
            }
        } else if (head == "q") {
            t.kind = Token::Q;
            expect('(');
            t.k = integer();
            expect(')');
        } else {
            p = start;
            fail("unknown token '" + head + "'");
        }
        if (p < text.size() && !std::isspace(static_cast<unsigned char>(text[p]))) fail("junk after token");
        w.tokens.push_back(std::move(t));
    }
    if (w.tokens.empty()) throw input_error("empty word");
    return w;
}

// ---- matrices ----

struct Mat2 {
    std::array<QLaurent, 4> e;  // row major

    QLaurent& operator()(int i, int j) { return e[2 * i + j]; }
    const QLaurent& operator()(int i, int j) const { return e[2 * i + j]; }

    static Mat2 scalar(const BasisPtr& b, Rat a, int qpow = 0) {
        Mat2 m;
        for (auto& x : m.e) x = QLaurent(b);
        m(0, 0) = QLaurent::constant(b, a, qpow);
        m(1, 1) = QLaurent::constant(b, a, qpow);
        return m;
    }
    static Mat2 identity(const BasisPtr& b) { return scalar(b, 1); }
    static Mat2 ints(const BasisPtr& b, int a, int c, int d, int f, int qpow = 0) {
        Mat2 m;
        int v[4] = {a, c, d, f};
        for (int i = 0; i < 4; ++i) m.e[i] = QLaurent::constant(b, v[i], qpow);
        return m;
    }

    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
        return r;
    }
    friend Mat2 operator+(const Mat2& a, const Mat2& b) {
        Mat2 r;
        for (int i = 0; i < 4; ++i) r.e[i] = a.e[i] + b.e[i];
        return r;
    }
    friend Mat2 operator-(const Mat2& a, const Mat2& b) {
        Mat2 r;
        for (int i = 0; i < 4; ++i) r.e[i] = a.e[i] - b.e[i];
        return r;
    }
    friend Mat2 operator*(Rat c, Mat2 a) {
        for (auto& x : a.e) x = c * x;
        return a;
    }
    Mat2 q_shift(int quarters) const {
        Mat2 r = *this;
        for (auto& x : r.e) x = x.q_shift(quarters);
        return r;
    }
    QLaurent trace() const { return e[0] + e[3]; }
    // commutative specialization
    QLaurent det_classical() const {
        return e[0].classical() * e[3].classical() - e[1].classical() * e[2].classical();
    }
    // adjugate; the inverse for unit determinant
    Mat2 adjugate() const {
        Mat2 r;
        r.e = {e[3], -e[1], -e[2], e[0]};
        return r;
    }
    bool operator==(const Mat2& o) const { return e == o.e; }
};

inline Mat2 edge_matrix(const BasisPtr& b, const std::string& gen) {
    Mat2 m;
    for (auto& x : m.e) x = QLaurent(b);
    m(0, 1) = -QLaurent::gen(b, gen, 1);
    m(1, 0) = QLaurent::gen(b, gen, -1);
    return m;
}
inline Mat2 right_matrix(const BasisPtr& b, Mode mode = Mode::Classical) {
    return Mat2::ints(b, 1, 1, -1, 0, mode == Mode::Quantum ? -1 : 0);
}
inline Mat2 left_matrix(const BasisPtr& b, Mode mode = Mode::Classical) {
    return Mat2::ints(b, 0, 1, -1, -1, mode == Mode::Quantum ? 1 : 0);
}
inline Mat2 cusp_matrix(const BasisPtr& b) { return Mat2::ints(b, 0, 0, -1, 0); }

inline Mat2 loop_matrix(const BasisPtr& b, const std::string& omega) {
    Mat2 m = Mat2::ints(b, 0, 1, -1, 0);
    m(1, 1) = -QLaurent::omega(b, omega);
    return m;
}
// F^{-1} = [[-w,-1],[1,0]]
inline Mat2 loop_matrix_inv(const BasisPtr& b, const std::string& omega) {
    Mat2 m = Mat2::ints(b, 0, -1, 1, 0);
    m(0, 0) = -QLaurent::omega(b, omega);
    return m;
}

// F^j for any integer j; orbifold omegas of order p use F^p = (-1)^{p-1}
inline Mat2 loop_power(const BasisPtr& b, const std::string& omega, int j) {
    int wi = b->omega_index(omega);
    if (wi < 0) throw input_error("unknown omega symbol '" + omega + "'");
    int p = b->omega_orders.empty() ? 0 : b->omega_orders[wi];
    Rat sign = 1;
    if (p >= 2) {
        int blocks = j >= 0 ? j / p : -((-j + p - 1) / p);
        int rem = j - blocks * p;
        if ((static_cast<long long>(blocks) * (p - 1)) % 2) sign = -1;
        j = rem;
    }
    Mat2 r = Mat2::identity(b);
    Mat2 f = j >= 0 ? loop_matrix(b, omega) : loop_matrix_inv(b, omega);
    for (int i = 0; i < std::abs(j); ++i) r = r * f;
    return sign * r;
}

inline Mat2 token_matrix(const BasisPtr& b, const Token& t, Mode mode) {
    switch (t.kind) {
        case Token::X: return edge_matrix(b, t.name);
        case Token::L: return left_matrix(b, mode);
        case Token::R: return right_matrix(b, mode);
        case Token::K: return cusp_matrix(b);
        case Token::F: return Rat(t.k % 2 ? 1 : -1) * loop_power(b, t.name, t.k);
        case Token::Finv: return Rat(t.k % 2 ? -1 : 1) * loop_power(b, t.name, -t.k);
        case Token::Q: return Mat2::scalar(b, 1, t.k);
    }
    throw input_error("bad token");
}

inline void check_word(const BasisPtr& b, const PathWord& w) {
    if (w.tokens.empty()) throw input_error("empty word");
    for (auto& t : w.tokens) {
        if (t.kind == Token::X && b->index(t.name) < 0) throw input_error("unknown generator '" + t.name + "'");
        if ((t.kind == Token::F || t.kind == Token::Finv) && b->omega_index(t.name) < 0)
            throw input_error("unknown omega symbol '" + t.name + "'");
    }
}

// product of token matrices in word order
inline Mat2 compile(const BasisPtr& b, const PathWord& w, Mode mode = Mode::Classical) {
    check_word(b, w);
    Mat2 m = Mat2::identity(b);
    for (auto& t : w.tokens) m = m * token_matrix(b, t, mode);
    return m;
}

inline QLaurent trace(const BasisPtr& b, const PathWord& w, Mode mode = Mode::Classical) {
    QLaurent t = compile(b, w, mode).trace();
    return mode == Mode::Classical ? t.classical() : t;
}

// quarter powers k with q^{k/4} a bar-invariant, if any
inline std::optional<int> hermitian_shift(const QLaurent& a) {
    if (a.is_zero()) return 0;
    int lo = a.terms().begin()->first.qpow, hi = lo;
    for (auto& [k, c] : a.terms()) lo = std::min(lo, k.qpow), hi = std::max(hi, k.qpow);
    for (int k = -hi; k <= -lo; ++k)
        if (a.q_shift(k).is_hermitian()) return k;
    return std::nullopt;
}

// entry signs [[+,-],[-,+]] with omegas read as positive
inline bool has_sign_structure(const Mat2& m) {
    const int want[4] = {1, -1, -1, 1};
    for (int i = 0; i < 4; ++i)
        for (auto& [k, c] : m.e[i].terms())
            if ((c.numerator() > 0 ? 1 : -1) != want[i]) return false;
    return true;
}

// Reduce omega powers with a monic minimal polynomial x^m + c_{m-1} x^{m-1} + ... + c_0.
inline QLaurent reduce_omega(const QLaurent& a, const std::string& omega, const std::vector<int>& lower) {
    int wi = a.basis()->omega_index(omega);
    if (wi < 0) throw input_error("unknown omega symbol '" + omega + "'");
    const int m = static_cast<int>(lower.size());
    QLaurent cur = a;
    while (true) {
        QLaurent next(a.basis());
        bool changed = false;
        for (auto& [k, c] : cur.terms()) {
            if (k.omega[wi] < m) {
                next.add_term(k, c);
                continue;
            }
            changed = true;
            for (int i = 0; i < m; ++i) {
                Key kk = k;
                kk.omega[wi] = k.omega[wi] - m + i;
                next.add_term(kk, -c * lower[i]);
            }
        }
        cur = next;
        if (!changed) return cur;
    }
}

// ---- numeric ----

struct NumericPoint {
    std::map<std::string, double> coords;
    std::map<std::string, double> omegas;
};

inline Eigen::Matrix2d numeric_edge(double z) {
    Eigen::Matrix2d m;
    m << 0, -std::exp(z / 2), std::exp(-z / 2), 0;
    return m;
}

inline Eigen::Matrix2d compile_numeric(const PathWord& w, const NumericPoint& pt) {
    Eigen::Matrix2d m = Eigen::Matrix2d::Identity();
    Eigen::Matrix2d R, L, K;
    R << 1, 1, -1, 0;
    L << 0, 1, -1, -1;
    K << 0, 0, -1, 0;
    for (auto& t : w.tokens) {
        switch (t.kind) {
            case Token::X: {
                auto it = pt.coords.find(t.name);
                if (it == pt.coords.end()) throw input_error("no value for " + t.name);
                m = m * numeric_edge(it->second);
                break;
            }
            case Token::L: m = m * L; break;
            case Token::R: m = m * R; break;
            case Token::K: m = m * K; break;
            case Token::Q: break;
            case Token::F:
            case Token::Finv: {
                auto it = pt.omegas.find(t.name);
                if (it == pt.omegas.end()) throw input_error("no value for " + t.name);
                Eigen::Matrix2d f;
                f << 0, 1, -1, -it->second;
                Eigen::Matrix2d g = t.kind == Token::F ? f : Eigen::Matrix2d(-f.inverse());
                Eigen::Matrix2d p = Eigen::Matrix2d::Identity();
                for (int i = 0; i < t.k; ++i) p = p * g;
                if (t.kind == Token::F && t.k % 2 == 0) p = -p;
                m = m * p;
                break;
            }
        }
    }
    return m;
}

inline double trace_numeric(const PathWord& w, const NumericPoint& pt) { return compile_numeric(w, pt).trace(); }

}  // namespace cuspq
