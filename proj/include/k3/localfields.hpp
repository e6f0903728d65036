#pragma once

// Local arithmetic over R and Q_p: valuations, square tests, certified
// square roots by Hensel lifting, Hilbert symbols, and the associated
// invariants in (1/2)Z/Z.

#include <string>

#include "k3/errors.hpp"
#include "k3/integers.hpp"

namespace k3 {

struct Place {
    bool real = false;
    Int p = 0; // the prime when finite
    static Place archimedean() { return Place{true, 0}; }
    static Place finite(Int prime) {
        if (prime < 2 || !is_probable_prime(prime))
            throw InvalidInput("finite place requires a prime, got " + prime.get_str());
        return Place{false, std::move(prime)};
    }
    std::string to_string() const { return real ? "real" : p.get_str(); }
    bool operator==(const Place& o) const { return real == o.real && p == o.p; }
};

inline long padic_valuation(const Rat& a, const Int& p) {
    if (a == 0) throw InvalidInput("valuation of zero is undefined");
    return valuation(a.get_num(), p) - valuation(a.get_den(), p);
}

// Unit part of a in Q_p^*: a / p^v(a), an element of Z_p^* written as a
// p-integral rational.
inline Rat padic_unit_part(const Rat& a, const Int& p) {
    long v = padic_valuation(a, p);
    Rat u = a;
    Int pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(v < 0 ? -v : v));
    if (v >= 0)
        u /= Rat(pk);
    else
        u *= Rat(pk);
    return u;
}

// a mod p^k for a p-integral rational a.
inline Int padic_residue(const Rat& a, const Int& p, unsigned long k) {
    Int pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);
    if (mpz_divisible_p(a.get_den().get_mpz_t(), p.get_mpz_t()))
        throw NotPIntegral("denominator divisible by " + p.get_str());
    return mod_reduce(mod_reduce(a.get_num(), pk) * mod_inverse(mod_reduce(a.get_den(), pk), pk),
                      pk);
}

inline bool is_square_local(const Rat& a, const Place& v) {
    if (a == 0) throw InvalidInput("square test of zero");
    if (v.real) return a > 0;
    long val = padic_valuation(a, v.p);
    if (val % 2 != 0) return false;
    Rat u = padic_unit_part(a, v.p);
    if (v.p == 2) return padic_residue(u, 2, 3) == 1; // unit square in Z_2 <=> u = 1 mod 8
    return legendre(padic_residue(u, v.p, 1), v.p) == 1;
}

namespace detail {

// Square root mod an odd prime by Tonelli-Shanks with a deterministically
// chosen non-residue.
inline Int sqrt_mod_p(const Int& a0, const Int& p) {
    Int a = mod_reduce(a0, p);
    if (a == 0) return 0;
    if (legendre(a, p) != 1) throw NotASquare(a0.get_str() + " is not a square mod " + p.get_str());
    if (mod_reduce(p, 4) == 3) return mod_pow(a, (p + 1) / 4, p);
    Int q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    Int z = 2;
    while (legendre(z, p) != -1) ++z;
    Int m(static_cast<unsigned long>(s));
    Int c = mod_pow(z, q, p);
    Int t = mod_pow(a, q, p);
    Int r = mod_pow(a, (q + 1) / 2, p);
    while (t != 1) {
        Int t2 = t;
        long i = 0;
        while (t2 != 1) {
            t2 = mod_reduce(t2 * t2, p);
            ++i;
        }
        Int b = c;
        for (long j = 0; j < m.get_si() - i - 1; ++j) b = mod_reduce(b * b, p);
        m = i;
        c = mod_reduce(b * b, p);
        t = mod_reduce(t * c, p);
        r = mod_reduce(r * b, p);
    }
    return r;
}

} // namespace detail

// A certified p-adic square root: value^2 = a mod p^precision.
struct PAdicSqrt {
    Int prime;
    unsigned long precision; // exponent k; congruence holds mod p^k
    Int value;               // 0 <= value < p^k
};

// Square root of a p-adic unit square u to precision p^k, by Newton lifting
// (odd p) or bit-by-bit lifting (p = 2).  Throws NotASquare otherwise.
inline PAdicSqrt hensel_sqrt(const Rat& u, const Int& p, unsigned long k) {
    if (k == 0) throw InvalidInput("precision must be positive");
    if (!is_square_local(u, Place{false, p}) || padic_valuation(u, p) != 0)
        throw NotASquare("not a unit square in Z_" + p.get_str());
    Int pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);
    Int a = padic_residue(u, p, k);
    Int r;
    if (p == 2) {
        r = 1; // r^2 = a mod 8 for any a = 1 mod 8
        Int mod = 8;
        for (unsigned long j = 3; j < k; ++j) {
            Int next = mod * 2;
            if (mod_reduce(r * r - a, next) != 0) {
                Int half = mod / 2; // adding 2^(j-1) flips the 2^j bit of r^2
                r = mod_reduce(r + half, mod);
            }
            mod = next;
        }
        r = mod_reduce(r, pk);
    } else {
        r = detail::sqrt_mod_p(a, p);
        Int mod = p;
        while (mod < pk) {
            mod = mod * mod;
            if (mod > pk) mod = pk;
            Int inv = mod_inverse(mod_reduce(2 * r, mod), mod);
            r = mod_reduce(r - (r * r - a) * inv, mod);
        }
    }
    PAdicSqrt out{p, k, r};
    if (mod_reduce(out.value * out.value - a, pk) != 0)
        throw InvalidState("Hensel lift failed to verify");
    return out;
}

// Hilbert symbol (a, b)_v in {+1, -1}.
inline int hilbert_symbol(const Rat& a, const Rat& b, const Place& v) {
    if (a == 0 || b == 0) throw InvalidInput("Hilbert symbol requires nonzero arguments");
    if (v.real) return (a < 0 && b < 0) ? -1 : 1;
    const Int& p = v.p;
    long alpha = padic_valuation(a, p);
    long beta = padic_valuation(b, p);
    Rat u = padic_unit_part(a, p);
    Rat w = padic_unit_part(b, p);
    if (p == 2) {
        auto eps = [](const Int& n) { return mod_reduce((n - 1) / 2, 2).get_si(); };
        auto omega = [](const Int& n) { return mod_reduce((n * n - 1) / 8, 2).get_si(); };
        Int ur = padic_residue(u, 2, 3), wr = padic_residue(w, 2, 3);
        long e = eps(ur) * eps(wr) + (alpha % 2 != 0 ? omega(wr) : 0) +
                 (beta % 2 != 0 ? omega(ur) : 0);
        return e % 2 != 0 ? -1 : 1;
    }
    int lu = legendre(padic_residue(u, p, 1), p);
    int lw = legendre(padic_residue(w, p, 1), p);
    int sign = 1;
    if (beta % 2 != 0) sign *= lu;
    if (alpha % 2 != 0) sign *= lw;
    if (alpha % 2 != 0 && beta % 2 != 0 && mod_reduce(p, 4) == 3) sign = -sign;
    return sign;
}

// Element of (1/2)Z/Z: the local invariant attached to a quaternion symbol.
struct LocalInvariant {
    int half = 0; // 0 or 1; the invariant is half/2 in Q/Z
    bool is_zero() const { return half == 0; }
    std::string to_string() const { return half == 0 ? "0" : "1/2"; }
    bool operator==(const LocalInvariant& o) const { return half == o.half; }
};

inline LocalInvariant invariant_of_symbol(int sym) {
    if (sym != 1 && sym != -1) throw InvalidInput("symbol value must be +1 or -1");
    return LocalInvariant{sym == 1 ? 0 : 1};
}

} // namespace k3
