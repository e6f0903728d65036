#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "k3/errors.hpp"

namespace k3 {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// v_p(n) for n != 0.  Call sites guard the n == 0 case themselves.
inline long valuation(const Int& n, const Int& p) {
    if (n == 0) throw InvalidInput("valuation of 0 is +infinity");
    Int q = n;
    long v = 0;
    while (mpz_divisible_p(q.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

// Strips all factors of p from n and returns the (signed) unit part.
inline Int unit_part(const Int& n, const Int& p, long* val_out = nullptr) {
    if (n == 0) throw InvalidInput("unit_part of 0");
    Int q = n;
    long v = 0;
    while (mpz_divisible_p(q.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    if (val_out) *val_out = v;
    return q;
}

// Legendre symbol (a|p) for odd prime p; 0 when p | a.
inline int legendre(const Int& a, const Int& p) {
    Int r = a % p;
    if (r == 0) return 0;
    return mpz_jacobi(r.get_mpz_t(), p.get_mpz_t());
}

inline bool is_perfect_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline Int mod_reduce(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

inline Int mod_inverse(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw InvalidInput("element not invertible mod " + m.get_str());
    return r;
}

inline Int mod_pow(const Int& base, const Int& e, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Miller-Rabin with the stated round count (GMP also front-loads a BPSW test).
inline bool is_probable_prime(const Int& n, int rounds = 64) {
    return mpz_probab_prime_p(n.get_mpz_t(), rounds) != 0;
}

// Deterministic xorshift generator; keeps certificates reproducible.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform-ish element of [0, m)
    Int next_below(const Int& m) {
        std::size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
        Int r = 0;
        for (std::size_t got = 0; got < bits + 64; got += 32) {
            r <<= 32;
            r += static_cast<unsigned long>(next() & 0xffffffffULL);
        }
        return r % m;
    }

  private:
    std::uint64_t state_;
};

// Odd primes below `bound`, plus 2, via a plain sieve.
inline std::vector<std::uint64_t> primes_below(std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    if (bound <= 2) return out;
    std::vector<bool> comp(bound, false);
    for (std::uint64_t i = 2; i < bound; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j < bound; j += i) comp[j] = true;
    }
    return out;
}

} // namespace k3
