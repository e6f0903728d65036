#pragma once

// Sylvester resultants via fraction-free (Bareiss) elimination, generically
// over an integral domain so the same code serves Z, Q[s], and F_p[s].

#include <vector>

#include "k3/errors.hpp"
#include "k3/integers.hpp"
#include "k3/upoly.hpp"

namespace k3 {

struct IntRing {
    using Elem = Int;
    Elem zero() const { return Int(0); }
    Elem one() const { return Int(1); }
    bool is_zero(const Elem& a) const { return a == 0; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem divexact(const Elem& a, const Elem& b) const {
        Elem r;
        mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return r;
    }
};

// Univariate polynomials over a coefficient field, viewed as a ring with
// exact division (exactness is guaranteed by the Bareiss recurrence).
template <class F>
struct PolyRing {
    const F& K;
    using Elem = UPoly<F>;
    Elem zero() const { return {}; }
    Elem one() const { return {K.one()}; }
    bool is_zero(const Elem& a) const { return a.empty(); }
    Elem mul(const Elem& a, const Elem& b) const { return poly_mul(K, a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return poly_sub(K, a, b); }
    Elem neg(const Elem& a) const { return poly_scale(K, a, K.neg(K.one())); }
    Elem divexact(const Elem& a, const Elem& b) const {
        Elem q, r;
        poly_divmod(K, a, b, q, r);
        if (!r.empty()) throw InvalidInput("inexact division in Bareiss elimination");
        return q;
    }
};

template <class R>
typename R::Elem bareiss_det(const R& ring, std::vector<std::vector<typename R::Elem>> m) {
    const std::size_t n = m.size();
    if (n == 0) return ring.one();
    int sign = 1;
    typename R::Elem prev = ring.one();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && ring.is_zero(m[piv][k])) ++piv;
        if (piv == n) return ring.zero();
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                auto t = ring.sub(ring.mul(m[i][j], m[k][k]), ring.mul(m[i][k], m[k][j]));
                m[i][j] = ring.divexact(t, prev);
            }
            m[i][k] = ring.zero();
        }
        prev = m[k][k];
    }
    auto det = m[n - 1][n - 1];
    return sign < 0 ? ring.neg(det) : det;
}

// Resultant of f (degree m) and g (degree n) as the determinant of the
// (m+n) x (m+n) Sylvester matrix.  Coefficient vectors are low-to-high.
template <class R>
typename R::Elem sylvester_resultant(const R& ring, const std::vector<typename R::Elem>& f,
                                     const std::vector<typename R::Elem>& g) {
    const int m = static_cast<int>(f.size()) - 1;
    const int n = static_cast<int>(g.size()) - 1;
    if (m < 0 && n < 0) throw InvalidInput("resultant of two zero polynomials");
    if (m < 0 || n < 0) return ring.zero();
    const int size = m + n;
    if (size == 0) return ring.one();
    std::vector<std::vector<typename R::Elem>> mat(
        static_cast<std::size_t>(size),
        std::vector<typename R::Elem>(static_cast<std::size_t>(size), ring.zero()));
    for (int row = 0; row < n; ++row)
        for (int j = 0; j <= m; ++j) mat[row][row + j] = f[static_cast<std::size_t>(m - j)];
    for (int row = 0; row < m; ++row)
        for (int j = 0; j <= n; ++j) mat[n + row][row + j] = g[static_cast<std::size_t>(n - j)];
    return bareiss_det(ring, std::move(mat));
}

// Resultant of two univariate polynomials with rational coefficients:
// denominators are cleared, the Sylvester determinant is computed
// fraction-free over Z, and the scaling is corrected exactly.
inline Rat resultant_uni(const std::vector<Rat>& f, const std::vector<Rat>& g) {
    auto trimmed = [](std::vector<Rat> v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
        return v;
    };
    std::vector<Rat> ft = trimmed(f), gt = trimmed(g);
    if (ft.empty() && gt.empty()) throw InvalidInput("resultant of two zero polynomials");
    if (ft.empty() || gt.empty()) return Rat(0);
    auto clear = [](const std::vector<Rat>& v, Int& den) {
        den = 1;
        for (const auto& c : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
        std::vector<Int> out;
        out.reserve(v.size());
        for (const auto& c : v) {
            Rat s = c * Rat(den);
            s.canonicalize();
            out.push_back(s.get_num());
        }
        return out;
    };
    Int df, dg;
    std::vector<Int> fi = clear(ft, df), gi = clear(gt, dg);
    IntRing Z;
    Int res = sylvester_resultant(Z, fi, gi);
    const int m = static_cast<int>(fi.size()) - 1;
    const int n = static_cast<int>(gi.size()) - 1;
    Rat scale(Int(1), int_pow(df, static_cast<unsigned long>(n)) *
                          int_pow(dg, static_cast<unsigned long>(m)));
    scale.canonicalize();
    return Rat(res) * scale;
}

} // namespace k3
