#pragma once

#include <limits>
#include <sstream>
#include <vector>

#include "poly.hpp"

namespace memb {

inline constexpr long VAL_INF = std::numeric_limits<long>::max();

// Element of K = k(z), kept canonical: gcd(num, den) = 1, den monic, zero is
// 0/1.  The z-adic valuation, Laurent-series views and the text grammar used
// by the CLI all live here.
template <class F>
struct RatFunc {
    Poly<F> num;
    Poly<F> den = Poly<F>(mk_one());

    static F mk_one() {
        if constexpr (std::is_same_v<F, mpq_class>) return mpq_class(1);
        else return F{};
    }

    RatFunc() = default;
    explicit RatFunc(F a) : num(Poly<F>(std::move(a))) {}
    explicit RatFunc(Poly<F> n) : num(std::move(n)) {
        if (!num.is_zero()) den = Poly<F>(FieldTraits<F>::one(num.c[0]));
    }
    RatFunc(Poly<F> n, Poly<F> d) : num(std::move(n)), den(std::move(d)) { canonicalize(); }

    static RatFunc z_power(long k, const F& one) {
        if (k >= 0) return RatFunc(Poly<F>::monomial(one, (int)k));
        return RatFunc(Poly<F>(one), Poly<F>::monomial(one, (int)-k));
    }

    void canonicalize() {
        if (den.is_zero()) fail(errc::bad_input, "zero denominator");
        if (num.is_zero()) {
            den = Poly<F>(FieldTraits<F>::one(den.lead()));
            return;
        }
        // strip the common power of z first; a full gcd is then only needed
        // when both sides have at least two terms
        int strip = std::min(num.low(), den.low());
        if (strip > 0) {
            num.c.erase(num.c.begin(), num.c.begin() + strip);
            den.c.erase(den.c.begin(), den.c.begin() + strip);
        }
        if (!num.is_monomial() && !den.is_monomial()) {
            auto g = poly_gcd(num, den);
            if (g.deg() > 0) {
                num = num / g;
                den = den / g;
            }
        }
        F s = FieldTraits<F>::inv(den.lead());
        for (auto& x : num.c) x *= s;
        for (auto& x : den.c) x *= s;
    }

    bool is_zero() const { return num.is_zero(); }

    long val() const {
        if (num.is_zero()) return VAL_INF;
        return (long)num.low() - (long)den.low();
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num * b.num, a.den * b.den);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) fail(errc::singular_matrix, "division by zero in K");
        return RatFunc(a.num * b.den, a.den * b.num);
    }
    RatFunc operator-() const {
        RatFunc r = *this;
        r.num = -r.num;
        return r;
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    static int cmp(const RatFunc& a, const RatFunc& b) {
        if (int s = Poly<F>::cmp(a.num, b.num); s != 0) return s;
        return Poly<F>::cmp(a.den, b.den);
    }
    friend bool operator<(const RatFunc& a, const RatFunc& b) { return cmp(a, b) < 0; }

    // Laurent coefficients c_a for val(s) <= a < val(s) + prec; the tail
    // s - sum has valuation >= val(s) + prec.
    std::vector<std::pair<long, F>> series(int prec) const {
        std::vector<std::pair<long, F>> out;
        if (num.is_zero() || prec <= 0) return out;
        long v = val();
        int nl = num.low(), dl = den.low();
        // power-series division of shifted numerator by shifted denominator
        std::vector<F> n0(prec, FieldTraits<F>::zero(num.c[nl]));
        std::vector<F> d0(prec, FieldTraits<F>::zero(num.c[nl]));
        for (int i = 0; i < prec; ++i) {
            if (nl + i <= num.deg()) n0[i] = num.c[nl + i];
            if (dl + i <= den.deg()) d0[i] = den.c[dl + i];
        }
        F dinv = FieldTraits<F>::inv(d0[0]);
        std::vector<F> c(prec, FieldTraits<F>::zero(num.c[nl]));
        for (int k = 0; k < prec; ++k) {
            F acc = n0[k];
            for (int j = 0; j < k; ++j) acc -= c[j] * d0[k - j];
            c[k] = acc * dinv;
            out.emplace_back(v + k, c[k]);
        }
        return out;
    }

    // the part of the Laurent expansion with exponent < e (a Laurent polynomial)
    RatFunc truncate_below(long e) const {
        if (is_zero()) return *this;
        long v = val();
        if (e <= v) return RatFunc{};
        RatFunc r;
        for (auto& [a, cf] : series((int)(e - v))) {
            if (FieldTraits<F>::is_zero(cf)) continue;
            r += RatFunc::z_power(a, FieldTraits<F>::one(cf)) * RatFunc(cf);
        }
        return r;
    }

    // value at z = 0; requires val >= 0
    F at_zero() const {
        long v = val();
        if (v < 0) fail(errc::bad_input, "pole at z=0");
        F one = mk_one();
        if (num.is_zero()) return FieldTraits<F>::zero(one);
        if (v > 0) return FieldTraits<F>::zero(num.c[num.low()]);
        return num.c[num.low()] * FieldTraits<F>::inv(den.c[den.low()]);
    }
};

template <class F>
struct FieldTraits<RatFunc<F>> {
    static RatFunc<F> zero(const RatFunc<F>&) { return RatFunc<F>{}; }
    static RatFunc<F> one(const RatFunc<F>&) {
        return RatFunc<F>(Poly<F>(RatFunc<F>::mk_one()));
    }
    static bool is_zero(const RatFunc<F>& x) { return x.is_zero(); }
    static RatFunc<F> inv(const RatFunc<F>& x) { return one(x) / x; }
    static int cmp(const RatFunc<F>& a, const RatFunc<F>& b) { return RatFunc<F>::cmp(a, b); }
    static std::string str(const RatFunc<F>& x) { return "ratfunc"; }
};

using Scalar = RatFunc<mpq_class>; // the field K of the library at desk scale

// ---------------------------------------------------------------------------
// text grammar: signed sums of terms `c`, `c*z^k`, `z^k`, with c = a/b or a,
// plus an optional single top-level quotient `(<sum>)/(<sum>)`.

namespace detail {

struct ScalarLexer {
    const std::string& s;
    size_t i = 0;
    explicit ScalarLexer(const std::string& str) : s(str) {}
    void skip() {
        while (i < s.size() && isspace((unsigned char)s[i])) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) { ++i; return true; }
        return false;
    }
    bool peek(char c) {
        skip();
        return i < s.size() && s[i] == c;
    }
    bool done() {
        skip();
        return i >= s.size();
    }
    mpz_class integer() {
        skip();
        size_t j = i;
        if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
        size_t k = j;
        while (k < s.size() && isdigit((unsigned char)s[k])) ++k;
        if (k == j) fail(errc::parse_error, "expected integer in '" + s + "'");
        mpz_class r(s.substr(i, k - i));
        i = k;
        return r;
    }
};

inline Scalar parse_scalar_sum(ScalarLexer& lx) {
    Scalar acc;
    bool first = true;
    while (true) {
        lx.skip();
        int sign = 1;
        if (lx.eat('+')) sign = 1;
        else if (lx.eat('-')) sign = -1;
        else if (!first) break;
        lx.skip();
        if (lx.done()) fail(errc::parse_error, "dangling sign in '" + lx.s + "'");
        mpq_class coef = 1;
        bool saw_coef = false;
        if (isdigit((unsigned char)lx.s[lx.i])) {
            mpz_class a = lx.integer();
            if (lx.peek('/')) {
                // fraction, unless this is the quotient of a parenthesised sum
                lx.eat('/');
                mpz_class b = lx.integer();
                if (b == 0) fail(errc::parse_error, "zero denominator");
                coef = mpq_class(a, b);
                coef.canonicalize();
            } else {
                coef = mpq_class(a);
            }
            saw_coef = true;
            lx.eat('*'); // optional explicit product
        }
        long k = 0;
        lx.skip();
        if (!lx.done() && (lx.s[lx.i] == 'z' || lx.s[lx.i] == 'Z')) {
            ++lx.i;
            k = 1;
            if (lx.eat('^')) k = lx.integer().get_si();
        } else if (!saw_coef) {
            fail(errc::parse_error, "expected term in '" + lx.s + "'");
        }
        if (sign < 0) coef = -coef;
        acc += Scalar::z_power(k, mpq_class(1)) * Scalar(coef);
        first = false;
    }
    return acc;
}

} // namespace detail

inline Scalar parse_scalar(const std::string& text) {
    detail::ScalarLexer lx(text);
    lx.skip();
    Scalar r;
    if (lx.peek('(')) {
        lx.eat('(');
        Scalar a = detail::parse_scalar_sum(lx);
        if (!lx.eat(')')) fail(errc::parse_error, "missing ')' in '" + text + "'");
        if (lx.eat('/')) {
            if (!lx.eat('(')) fail(errc::parse_error, "expected '(' after '/'");
            Scalar b = detail::parse_scalar_sum(lx);
            if (!lx.eat(')')) fail(errc::parse_error, "missing ')' in '" + text + "'");
            r = a / b;
        } else {
            r = a;
        }
    } else {
        r = detail::parse_scalar_sum(lx);
    }
    if (!lx.done()) fail(errc::parse_error, "trailing input in '" + text + "'");
    return r;
}

namespace detail {

inline std::string fmt_term(const mpq_class& c, long k, bool leading) {
    std::string sign = sgn(c) < 0 ? (leading ? "-" : " - ") : (leading ? "" : " + ");
    mpq_class a = abs(c);
    std::string body;
    bool unit = (a == 1);
    if (k == 0) body = a.get_str();
    else {
        std::string zpart = (k == 1) ? "z" : "z^" + std::to_string(k);
        body = unit ? zpart : a.get_str() + "*" + zpart;
    }
    return sign + body;
}

inline std::string fmt_laurent(const std::vector<std::pair<long, mpq_class>>& terms) {
    if (terms.empty()) return "0";
    std::string out;
    bool leading = true;
    for (auto& [k, c] : terms) {
        out += fmt_term(c, k, leading);
        leading = false;
    }
    return out;
}

inline std::string fmt_poly(const Poly<mpq_class>& p, long shift = 0) {
    std::vector<std::pair<long, mpq_class>> terms;
    for (int i = 0; i <= p.deg(); ++i)
        if (sgn(p.c[i]) != 0) terms.emplace_back(i + shift, p.c[i]);
    return fmt_laurent(terms);
}

} // namespace detail

// Canonical text form, inverse to parse_scalar.  Polynomials and Laurent
// polynomials print as sums; a genuine quotient prints as (num)/(den).
inline std::string to_string(const Scalar& s) {
    if (s.is_zero()) return "0";
    if (s.den.is_one()) return detail::fmt_poly(s.num);
    if (s.den.is_monomial()) {
        long k = s.den.deg();
        mpq_class lc = s.den.lead();
        Poly<mpq_class> n = s.num;
        if (lc != 1)
            for (auto& x : n.c) x /= lc;
        return detail::fmt_poly(n, -k);
    }
    return "(" + detail::fmt_poly(s.num) + ")/(" + detail::fmt_poly(s.den) + ")";
}

} // namespace memb
