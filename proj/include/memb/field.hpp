#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "errors.hpp"

namespace memb {

// Prime field element with runtime modulus.
struct Fp {
    long v = 0; // canonical in [0, p)
    long p = 0;

    Fp() = default;
    Fp(long value, long mod) : p(mod) {
        if (mod <= 1) fail(errc::bad_input, "Fp modulus must be >= 2");
        v = value % mod;
        if (v < 0) v += mod;
    }

    static long merge_mod(const Fp& a, const Fp& b) {
        if (a.p == 0) return b.p;
        if (b.p == 0 || a.p == b.p) return a.p;
        fail(errc::bad_input, "Fp modulus mismatch");
    }

    friend Fp operator+(const Fp& a, const Fp& b) {
        long m = merge_mod(a, b);
        if (m == 0) return Fp{};
        return Fp(a.v + b.v, m);
    }
    friend Fp operator-(const Fp& a, const Fp& b) {
        long m = merge_mod(a, b);
        if (m == 0) return Fp{};
        return Fp(a.v - b.v, m);
    }
    friend Fp operator*(const Fp& a, const Fp& b) {
        long m = merge_mod(a, b);
        if (m == 0) return Fp{};
        return Fp(a.v * b.v % m, m);
    }
    Fp operator-() const { return p ? Fp(-v, p) : Fp{}; }
    Fp inv() const {
        if (v == 0) fail(errc::singular_matrix, "inverse of 0 in Fp");
        // extended euclid
        long a = v, m = p, x0 = 1, x1 = 0;
        while (m) {
            long q = a / m;
            a -= q * m; std::swap(a, m);
            x0 -= q * x1; std::swap(x0, x1);
        }
        return Fp(x0, p);
    }
    friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inv(); }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    Fp& operator/=(const Fp& o) { return *this = *this / o; }
    friend bool operator==(const Fp& a, const Fp& b) { return a.v == b.v; }
    friend bool operator!=(const Fp& a, const Fp& b) { return a.v != b.v; }
    friend bool operator<(const Fp& a, const Fp& b) { return a.v < b.v; }
};

// Uniform access to 0/1/inverse for the coefficient fields we use.  Fp needs
// the modulus carried over from a sample element, so everything takes one.
template <class F> struct FieldTraits;

template <> struct FieldTraits<mpq_class> {
    static mpq_class zero(const mpq_class&) { return mpq_class(0); }
    static mpq_class one(const mpq_class&) { return mpq_class(1); }
    static bool is_zero(const mpq_class& x) { return sgn(x) == 0; }
    static mpq_class inv(const mpq_class& x) {
        if (sgn(x) == 0) fail(errc::singular_matrix, "inverse of 0");
        return mpq_class(1) / x;
    }
    static int cmp(const mpq_class& a, const mpq_class& b) { return ::cmp(a, b); }
    static std::string str(const mpq_class& x) { return x.get_str(); }
};

template <> struct FieldTraits<Fp> {
    static Fp zero(const Fp& like) { return like.p ? Fp(0, like.p) : Fp{}; }
    static Fp one(const Fp& like) { return like.p ? Fp(1, like.p) : Fp{}; }
    static bool is_zero(const Fp& x) { return x.v == 0; }
    static Fp inv(const Fp& x) { return x.inv(); }
    static int cmp(const Fp& a, const Fp& b) { return a.v < b.v ? -1 : a.v > b.v ? 1 : 0; }
    static std::string str(const Fp& x) { return std::to_string(x.v); }
};

} // namespace memb
