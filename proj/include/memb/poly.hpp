#pragma once

#include <vector>

#include "field.hpp"

namespace memb {

// Dense polynomial in z over a coefficient field F.  Coefficients are stored
// by ascending exponent with no trailing zeros; the zero polynomial has an
// empty coefficient vector.
template <class F>
struct Poly {
    std::vector<F> c;

    Poly() = default;
    explicit Poly(F a) {
        if (!FieldTraits<F>::is_zero(a)) c.push_back(std::move(a));
    }

    static Poly monomial(F a, int k) {
        Poly p;
        if (FieldTraits<F>::is_zero(a)) return p;
        p.c.assign(k + 1, FieldTraits<F>::zero(a));
        p.c[k] = std::move(a);
        return p;
    }

    bool is_zero() const { return c.empty(); }
    int deg() const { return (int)c.size() - 1; } // -1 for zero
    // lowest nonzero exponent; -1 for zero
    int low() const {
        for (int i = 0; i < (int)c.size(); ++i)
            if (!FieldTraits<F>::is_zero(c[i])) return i;
        return -1;
    }
    const F& lead() const { return c.back(); }

    void trim() {
        while (!c.empty() && FieldTraits<F>::is_zero(c.back())) c.pop_back();
    }

    F coeff(int k) const {
        if (k < 0 || k >= (int)c.size()) return c.empty() ? F{} : FieldTraits<F>::zero(c[0]);
        return c[k];
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r;
        r.c.resize(std::max(a.c.size(), b.c.size()));
        for (size_t i = 0; i < r.c.size(); ++i) {
            if (i < a.c.size() && i < b.c.size()) r.c[i] = a.c[i] + b.c[i];
            else if (i < a.c.size()) r.c[i] = a.c[i];
            else r.c[i] = b.c[i];
        }
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r;
        r.c.resize(std::max(a.c.size(), b.c.size()));
        for (size_t i = 0; i < r.c.size(); ++i) {
            if (i < a.c.size() && i < b.c.size()) r.c[i] = a.c[i] - b.c[i];
            else if (i < a.c.size()) r.c[i] = a.c[i];
            else r.c[i] = -b.c[i];
        }
        r.trim();
        return r;
    }
    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly{};
        Poly r;
        F z = FieldTraits<F>::zero(a.c[0]);
        r.c.assign(a.c.size() + b.c.size() - 1, z);
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (FieldTraits<F>::is_zero(a.c[i])) continue;
            for (size_t j = 0; j < b.c.size(); ++j)
                r.c[i + j] += a.c[i] * b.c[j];
        }
        r.trim();
        return r;
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    // quotient/remainder by a nonzero divisor
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) fail(errc::bad_input, "polynomial division by zero");
        Poly q, r = a;
        F binv = FieldTraits<F>::inv(b.lead());
        if (r.deg() >= b.deg()) q.c.assign(r.deg() - b.deg() + 1, FieldTraits<F>::zero(b.lead()));
        while (!r.is_zero() && r.deg() >= b.deg()) {
            F f = r.lead() * binv;
            int sh = r.deg() - b.deg();
            q.c[sh] = f;
            for (int i = 0; i <= b.deg(); ++i) r.c[sh + i] -= f * b.c[i];
            r.trim();
        }
        q.trim();
        return {q, r};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    Poly monic() const {
        if (is_zero()) return *this;
        Poly r = *this;
        F s = FieldTraits<F>::inv(r.lead());
        for (auto& x : r.c) x *= s;
        return r;
    }

    bool is_one() const {
        return c.size() == 1 && !FieldTraits<F>::is_zero(c[0]) &&
               FieldTraits<F>::is_zero(c[0] - FieldTraits<F>::one(c[0]));
    }

    // true iff the polynomial is a single term c*z^k
    bool is_monomial() const {
        if (is_zero()) return false;
        for (int i = 0; i + 1 < (int)c.size(); ++i)
            if (!FieldTraits<F>::is_zero(c[i])) return false;
        return true;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.c.size() != b.c.size()) return false;
        for (size_t i = 0; i < a.c.size(); ++i)
            if (!FieldTraits<F>::is_zero(a.c[i] - b.c[i])) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    static int cmp(const Poly& a, const Poly& b) {
        if (a.c.size() != b.c.size()) return a.c.size() < b.c.size() ? -1 : 1;
        for (size_t i = 0; i < a.c.size(); ++i)
            if (int s = FieldTraits<F>::cmp(a.c[i], b.c[i]); s != 0) return s;
        return 0;
    }
};

template <class F>
Poly<F> poly_gcd(Poly<F> a, Poly<F> b) {
    while (!b.is_zero()) {
        auto r = a % b;
        a = std::move(b);
        b = std::move(r).monic();
    }
    return a.monic();
}

} // namespace memb
