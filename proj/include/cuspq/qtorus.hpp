#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace cuspq {

using Rat = boost::rational<long long>;

struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Classical bracket is {e^u, e^v} = kPoissonSign * (u eps v) e^{u+v}.
// The minus sign is what makes the Goldman relations of the s111 example and
// the arc bracket {l1,l2} = (I/4) l1 l2 agree with the q-commutation rule.
inline constexpr int kPoissonSign = -1;

enum class GenKind { Inner, Cusp, Lambda, Free };

struct Basis {
    std::vector<std::string> names;
    std::vector<GenKind> kinds;
    std::vector<std::vector<int>> eps;
    std::vector<std::string> omegas;
    std::vector<int> omega_orders;  // p for orbifold omegas, 0 for holes

    int size() const { return static_cast<int>(names.size()); }
    int index(const std::string& n) const {
        auto it = std::find(names.begin(), names.end(), n);
        return it == names.end() ? -1 : static_cast<int>(it - names.begin());
    }
    int omega_index(const std::string& n) const {
        auto it = std::find(omegas.begin(), omegas.end(), n);
        return it == omegas.end() ? -1 : static_cast<int>(it - omegas.begin());
    }
    // n . eps . m, exponents in half units; result counts quarter powers of q
    long long pair(const std::vector<int>& n, const std::vector<int>& m) const {
        long long s = 0;
        for (int i = 0; i < size(); ++i) {
            if (!n[i]) continue;
            for (int j = 0; j < size(); ++j)
                if (m[j] && eps[i][j]) s += static_cast<long long>(n[i]) * eps[i][j] * m[j];
        }
        return s;
    }
};
using BasisPtr = std::shared_ptr<const Basis>;

inline BasisPtr make_basis(std::vector<std::string> names, std::vector<GenKind> kinds,
                           std::vector<std::vector<int>> eps, std::vector<std::string> omegas = {},
                           std::vector<int> omega_orders = {}) {
    const std::size_t n = names.size();
    if (kinds.size() != n) throw input_error("basis: kinds/names size mismatch");
    if (eps.empty()) eps.assign(n, std::vector<int>(n, 0));
    if (eps.size() != n) throw input_error("basis: eps size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (eps[i].size() != n) throw input_error("basis: eps not square");
        for (std::size_t j = 0; j < n; ++j)
            if (eps[i][j] != -eps[j][i]) throw input_error("basis: eps not antisymmetric");
    }
    auto b = std::make_shared<Basis>();
    b->names = std::move(names);
    b->kinds = std::move(kinds);
    b->eps = std::move(eps);
    b->omegas = std::move(omegas);
    if (omega_orders.empty()) omega_orders.assign(b->omegas.size(), 0);
    if (omega_orders.size() != b->omegas.size()) throw input_error("basis: omega orders size mismatch");
    b->omega_orders = std::move(omega_orders);
    return b;
}

struct Key {
    std::vector<int> exp;    // half units
    int qpow = 0;            // quarter units
    std::vector<int> omega;  // nonnegative powers

    bool operator<(const Key& o) const {
        if (exp != o.exp) return exp < o.exp;
        if (qpow != o.qpow) return qpow < o.qpow;
        return omega < o.omega;
    }
    bool operator==(const Key& o) const = default;
};

class QLaurent {
public:
    using TermMap = std::map<Key, Rat>;

    QLaurent() = default;
    explicit QLaurent(BasisPtr b) : basis_(std::move(b)) {}

    static QLaurent constant(BasisPtr b, Rat c, int qpow = 0) {
        QLaurent r(b);
        r.add_term(r.zero_key(qpow), c);
        return r;
    }
    static QLaurent monomial(BasisPtr b, std::vector<int> exp, Rat c = 1, int qpow = 0,
                             std::vector<int> omega = {}) {
        QLaurent r(b);
        Key k = r.zero_key(qpow);
        if (exp.size() != k.exp.size()) throw input_error("monomial: exponent length mismatch");
        k.exp = std::move(exp);
        if (!omega.empty()) {
            if (omega.size() != k.omega.size()) throw input_error("monomial: omega length mismatch");
            k.omega = std::move(omega);
        }
        r.add_term(k, c);
        return r;
    }
    // e^{half * Y / 2}
    static QLaurent gen(BasisPtr b, const std::string& name, int half = 1) {
        int i = b->index(name);
        if (i < 0) throw input_error("unknown generator '" + name + "'");
        std::vector<int> e(b->size(), 0);
        e[i] = half;
        return monomial(b, e);
    }
    static QLaurent omega(BasisPtr b, const std::string& name, int power = 1) {
        int i = b->omega_index(name);
        if (i < 0) throw input_error("unknown omega symbol '" + name + "'");
        QLaurent r(b);
        Key k = r.zero_key(0);
        k.omega[i] = power;
        r.add_term(k, 1);
        return r;
    }

    const BasisPtr& basis() const { return basis_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    bool is_monomial() const { return terms_.size() == 1; }
    bool is_classical() const {
        return std::all_of(terms_.begin(), terms_.end(), [](auto& t) { return t.first.qpow == 0; });
    }

    QLaurent& operator+=(const QLaurent& o) {
        adopt(o);
        for (auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    QLaurent& operator-=(const QLaurent& o) {
        adopt(o);
        for (auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    friend QLaurent operator+(QLaurent a, const QLaurent& b) { return a += b; }
    friend QLaurent operator-(QLaurent a, const QLaurent& b) { return a -= b; }
    QLaurent operator-() const {
        QLaurent r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }
    friend QLaurent operator*(Rat c, QLaurent a) {
        if (c.numerator() == 0) return QLaurent(a.basis_);
        for (auto& t : a.terms_) t.second *= c;
        return a;
    }

    // natural-order product in the quantum torus
    friend QLaurent operator*(const QLaurent& a, const QLaurent& b) {
        QLaurent r(a.basis_ ? a.basis_ : b.basis_);
        if (a.is_zero() || b.is_zero()) return r;
        check_same(a, b);
        const Basis& B = *r.basis_;
        for (auto& [ka, ca] : a.terms_)
            for (auto& [kb, cb] : b.terms_) {
                Key k;
                k.exp.resize(ka.exp.size());
                for (std::size_t i = 0; i < k.exp.size(); ++i) k.exp[i] = ka.exp[i] + kb.exp[i];
                k.qpow = ka.qpow + kb.qpow + static_cast<int>(B.pair(ka.exp, kb.exp));
                k.omega.resize(ka.omega.size());
                for (std::size_t i = 0; i < k.omega.size(); ++i) k.omega[i] = ka.omega[i] + kb.omega[i];
                r.add_term(k, ca * cb);
            }
        return r;
    }
    QLaurent& operator*=(const QLaurent& o) { return *this = *this * o; }

    QLaurent q_shift(int quarters) const {
        QLaurent r(basis_);
        for (auto& [k, c] : terms_) {
            Key kk = k;
            kk.qpow += quarters;
            r.terms_.emplace(std::move(kk), c);
        }
        return r;
    }

    // exponents kept, q -> 1/q
    QLaurent adjoint() const {
        QLaurent r(basis_);
        for (auto& [k, c] : terms_) {
            Key kk = k;
            kk.qpow = -kk.qpow;
            r.add_term(kk, c);
        }
        return r;
    }
    bool is_hermitian() const { return adjoint() == *this; }

    // q = 1
    QLaurent classical() const {
        QLaurent r(basis_);
        for (auto& [k, c] : terms_) {
            Key kk = k;
            kk.qpow = 0;
            r.add_term(kk, c);
        }
        return r;
    }

    QLaurent monomial_inverse() const {
        if (!is_monomial()) throw input_error("division by a non-monomial element");
        auto& [k, c] = *terms_.begin();
        if (std::any_of(k.omega.begin(), k.omega.end(), [](int x) { return x != 0; }))
            throw input_error("omega symbols are not invertible");
        // (c q^a M(u))^{-1} = c^{-1} q^{-a} M(-u)
        Key kk = k;
        for (auto& x : kk.exp) x = -x;
        kk.qpow = -k.qpow;
        QLaurent r(basis_);
        r.add_term(kk, 1 / c);
        return r;
    }

    QLaurent pow(int n) const {
        if (n < 0) return monomial_inverse().pow(-n);
        QLaurent r = constant(basis_, 1);
        for (int i = 0; i < n; ++i) r = r * *this;
        return r;
    }

    bool operator==(const QLaurent& o) const { return terms_ == o.terms_; }
    bool operator!=(const QLaurent& o) const { return !(*this == o); }

    // every coefficient is a nonnegative integer
    bool positive() const {
        return std::all_of(terms_.begin(), terms_.end(),
                           [](auto& t) { return t.second.numerator() > 0 && t.second.denominator() == 1; });
    }

    Key zero_key(int qpow = 0) const {
        if (!basis_) throw input_error("element without basis");
        Key k;
        k.exp.assign(basis_->size(), 0);
        k.qpow = qpow;
        k.omega.assign(basis_->omegas.size(), 0);
        return k;
    }

    void add_term(const Key& k, Rat c) {
        if (c.numerator() == 0) return;
        auto [it, fresh] = terms_.emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second.numerator() == 0) terms_.erase(it);
        }
    }

private:
    static void check_same(const QLaurent& a, const QLaurent& b) {
        if (a.basis_ && b.basis_ && a.basis_ != b.basis_) throw input_error("basis mismatch");
    }
    void adopt(const QLaurent& o) {
        if (!basis_) basis_ = o.basis_;
        else check_same(*this, o);
    }

    BasisPtr basis_;
    TermMap terms_;
};

inline QLaurent poisson(const QLaurent& a, const QLaurent& b) {
    if (!a.is_classical() || !b.is_classical()) throw input_error("poisson: quantum input");
    QLaurent r(a.basis() ? a.basis() : b.basis());
    if (a.is_zero() || b.is_zero()) return r;
    if (a.basis() != b.basis()) throw input_error("basis mismatch");
    const Basis& B = *r.basis();
    for (auto& [ka, ca] : a.terms())
        for (auto& [kb, cb] : b.terms()) {
            long long p = B.pair(ka.exp, kb.exp);
            if (!p) continue;
            Key k = ka;
            for (std::size_t i = 0; i < k.exp.size(); ++i) k.exp[i] += kb.exp[i];
            for (std::size_t i = 0; i < k.omega.size(); ++i) k.omega[i] += kb.omega[i];
            r.add_term(k, ca * cb * Rat(kPoissonSign * p, 4));
        }
    return r;
}

// q-commutation exponent c with x y = q^{c/4} y x, if it exists
inline std::optional<int> q_commutation(const QLaurent& x, const QLaurent& y) {
    QLaurent xy = x * y, yx = y * x;
    if (xy.is_zero()) return yx.is_zero() ? std::optional<int>(0) : std::nullopt;
    if (yx.is_zero()) return std::nullopt;
    int c = xy.terms().begin()->first.qpow - yx.terms().begin()->first.qpow;
    if (xy == yx.q_shift(c)) return c;
    return std::nullopt;
}

// Each generator of a.basis() maps to the Weyl monomial representing e^{Y} in the target.
// M(n) goes to M(sum n_i v_i / 2).
inline QLaurent substitute(const QLaurent& a, const BasisPtr& target,
                           const std::map<std::string, QLaurent>& images) {
    const Basis& S = *a.basis();
    const Basis& T = *target;
    std::vector<std::vector<int>> v(S.size());
    for (int i = 0; i < S.size(); ++i) {
        auto it = images.find(S.names[i]);
        if (it == images.end()) throw input_error("substitute: no image for " + S.names[i]);
        const QLaurent& m = it->second;
        if (m.basis() != target) throw input_error("substitute: image in wrong basis");
        if (!m.is_monomial()) throw input_error("substitute: image of " + S.names[i] + " is not a monomial");
        auto& [k, c] = *m.terms().begin();
        if (c != Rat(1) || k.qpow != 0 || std::any_of(k.omega.begin(), k.omega.end(), [](int x) { return x; }))
            throw input_error("substitute: image of " + S.names[i] + " is not a Weyl monomial");
        v[i] = k.exp;
    }
    // pushforward of eps must reproduce the source eps
    for (int i = 0; i < S.size(); ++i)
        for (int j = 0; j < S.size(); ++j)
            if (T.pair(v[i], v[j]) != 4LL * S.eps[i][j])
                throw input_error("substitute: inconsistent eps pushforward at (" + S.names[i] + "," +
                                  S.names[j] + ")");
    std::vector<int> om(S.omegas.size());
    for (std::size_t i = 0; i < S.omegas.size(); ++i) {
        om[i] = T.omega_index(S.omegas[i]);
        if (om[i] < 0) throw input_error("substitute: omega " + S.omegas[i] + " missing in target");
    }
    QLaurent r(target);
    for (auto& [k, c] : a.terms()) {
        Key kk;
        kk.exp.assign(T.size(), 0);
        for (int i = 0; i < S.size(); ++i)
            if (k.exp[i])
                for (int j = 0; j < T.size(); ++j) kk.exp[j] += k.exp[i] * v[i][j];
        for (auto& x : kk.exp) {
            if (x % 2) throw input_error("substitute: image exponent is not in the half-unit lattice");
            x /= 2;
        }
        kk.qpow = k.qpow;
        kk.omega.assign(T.omegas.size(), 0);
        for (std::size_t i = 0; i < om.size(); ++i) kk.omega[om[i]] += k.omega[i];
        r.add_term(kk, c);
    }
    return r;
}

inline std::complex<double> eval_numeric(const QLaurent& a, const std::map<std::string, double>& values,
                                         const std::map<std::string, double>& omegas = {},
                                         std::complex<double> q = 1.0) {
    std::complex<double> s = 0;
    if (a.is_zero()) return s;
    const Basis& B = *a.basis();
    const double qarg = std::arg(q);
    for (auto& [k, c] : a.terms()) {
        double x = 0;
        for (int i = 0; i < B.size(); ++i)
            if (k.exp[i]) {
                auto it = values.find(B.names[i]);
                if (it == values.end()) throw input_error("eval: missing value for " + B.names[i]);
                x += 0.5 * k.exp[i] * it->second;
            }
        double w = 1;
        for (std::size_t i = 0; i < k.omega.size(); ++i)
            if (k.omega[i]) {
                auto it = omegas.find(B.omegas[i]);
                if (it == omegas.end()) throw input_error("eval: missing value for " + B.omegas[i]);
                w *= std::pow(it->second, k.omega[i]);
            }
        std::complex<double> qp = k.qpow ? std::polar(1.0, qarg * k.qpow / 4.0) : 1.0;
        s += boost::rational_cast<double>(c) * w * std::exp(x) * qp;
    }
    return s;
}

// ---- text form ----

inline std::string format_rat(Rat c) {
    std::string s = std::to_string(c.numerator());
    if (c.denominator() != 1) s += "/" + std::to_string(c.denominator());
    return s;
}

inline std::string format_term(const Basis& B, const Key& k, Rat c) {
    std::string s = format_rat(c);
    if (k.qpow) s += " q^{" + std::to_string(k.qpow) + "/4}";
    for (std::size_t i = 0; i < k.omega.size(); ++i)
        if (k.omega[i]) s += " " + B.omegas[i] + "^" + std::to_string(k.omega[i]);
    bool any = std::any_of(k.exp.begin(), k.exp.end(), [](int x) { return x; });
    if (any) {
        s += " exp((";
        bool first = true;
        for (int i = 0; i < B.size(); ++i) {
            int n = k.exp[i];
            if (!n) continue;
            if (first) s += std::to_string(n) + "*" + B.names[i];
            else s += (n < 0 ? " - " : " + ") + std::to_string(std::abs(n)) + "*" + B.names[i];
            first = false;
        }
        s += ")/2)";
    }
    return s;
}

inline std::string to_string(const QLaurent& a) {
    if (a.is_zero()) return "0";
    std::string s;
    for (auto& [k, c] : a.terms()) {
        if (!s.empty()) s += " + ";
        s += format_term(*a.basis(), k, c);
    }
    return s;
}

inline std::vector<std::string> to_lines(const QLaurent& a) {
    std::vector<std::string> out;
    for (auto& [k, c] : a.terms()) out.push_back(format_term(*a.basis(), k, c));
    if (out.empty()) out.push_back("0");
    return out;
}

namespace detail {

struct Lexer {
    const std::string& s;
    std::size_t p = 0;

    void ws() {
        while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
    }
    bool eat(const std::string& t) {
        ws();
        if (s.compare(p, t.size(), t) == 0) {
            p += t.size();
            return true;
        }
        return false;
    }
    void need(const std::string& t) {
        if (!eat(t)) fail("expected '" + t + "'");
    }
    [[noreturn]] void fail(const std::string& m) const {
        throw input_error("parse error at column " + std::to_string(p + 1) + ": " + m);
    }
    long long integer() {
        ws();
        std::size_t q = p;
        if (q < s.size() && (s[q] == '-' || s[q] == '+')) ++q;
        std::size_t d = q;
        while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) ++q;
        if (q == d) fail("expected integer");
        long long v = std::stoll(s.substr(p, q - p));
        p = q;
        return v;
    }
    std::string ident() {
        ws();
        std::size_t q = p;
        while (q < s.size() && (std::isalnum(static_cast<unsigned char>(s[q])) || s[q] == '_')) ++q;
        if (q == p) fail("expected name");
        std::string r = s.substr(p, q - p);
        p = q;
        return r;
    }
    bool done() {
        ws();
        return p >= s.size();
    }
};

}  // namespace detail

inline QLaurent parse_qlaurent(const BasisPtr& b, const std::string& text) {
    detail::Lexer lx{text};
    QLaurent r(b);
    if (lx.eat("0") && lx.done()) return r;
    lx.p = 0;
    while (true) {
        long long num = lx.integer();
        long long den = 1;
        if (lx.eat("/")) den = lx.integer();
        Key k = r.zero_key(0);
        if (lx.eat("q^{")) {
            k.qpow = static_cast<int>(lx.integer());
            lx.need("/4}");
        }
        while (true) {
            lx.ws();
            std::size_t save = lx.p;
            if (lx.eat("exp((")) {
                int sign = 1;
                while (true) {
                    int n = static_cast<int>(lx.integer()) * sign;
                    lx.need("*");
                    std::string g = lx.ident();
                    int i = b->index(g);
                    if (i < 0) lx.fail("unknown generator '" + g + "'");
                    k.exp[i] += n;
                    if (lx.eat("+")) sign = 1;
                    else if (lx.eat("-")) sign = -1;
                    else break;
                }
                lx.need(")/2)");
                continue;
            }
            lx.p = save;
            if (lx.p < text.size() && std::isalpha(static_cast<unsigned char>(text[lx.p]))) {
                std::string w = lx.ident();
                int i = b->omega_index(w);
                if (i < 0) lx.fail("unknown omega symbol '" + w + "'");
                lx.need("^");
                k.omega[i] += static_cast<int>(lx.integer());
                continue;
            }
            break;
        }
        r.add_term(k, Rat(num, den));
        if (lx.done()) break;
        lx.need("+");
    }
    return r;
}

}  // namespace cuspq
