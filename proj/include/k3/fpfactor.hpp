#pragma once

// Univariate factorization over F_p: squarefree decomposition, distinct-degree
// splitting, and Cantor-Zassenhaus equal-degree splitting (odd p).  The random
// choices come from a seeded generator so every run factors identically.

#include <algorithm>
#include <utility>
#include <vector>

#include "k3/errors.hpp"
#include "k3/integers.hpp"
#include "k3/upoly.hpp"

namespace k3 {

inline UPoly<GFp> poly_pth_root(const GFp& K, const UPoly<GFp>& f) {
    // f = u(x^p) with coefficients in F_p, so u just re-indexes them.
    unsigned long p = K.p().get_ui();
    UPoly<GFp> u;
    for (std::size_t i = 0; i < f.size(); i += p) u.push_back(f[i]);
    poly_trim(K, u);
    return u;
}

inline std::vector<std::pair<UPoly<GFp>, int>> squarefree_decomposition(const GFp& K,
                                                                        UPoly<GFp> f) {
    std::vector<std::pair<UPoly<GFp>, int>> out;
    f = poly_monic(K, f);
    if (poly_deg<GFp>(f) <= 0) return out;
    UPoly<GFp> fp = poly_derivative(K, f);
    if (fp.empty()) {
        // f is a p-th power
        for (auto& [fac, m] : squarefree_decomposition(K, poly_pth_root(K, f)))
            out.emplace_back(fac, m * static_cast<int>(K.p().get_ui()));
        return out;
    }
    UPoly<GFp> c = poly_gcd(K, f, fp);
    UPoly<GFp> w, rem;
    poly_divmod(K, f, c, w, rem);
    int i = 1;
    while (poly_deg<GFp>(w) > 0) {
        UPoly<GFp> y = poly_gcd(K, w, c);
        UPoly<GFp> z, r2;
        poly_divmod(K, w, y, z, r2);
        if (poly_deg<GFp>(z) > 0) out.emplace_back(z, i);
        w = std::move(y);
        UPoly<GFp> c2;
        poly_divmod(K, c, w, c2, r2);
        c = std::move(c2);
        ++i;
    }
    if (poly_deg<GFp>(c) > 0) {
        for (auto& [fac, m] : squarefree_decomposition(K, poly_pth_root(K, c)))
            out.emplace_back(fac, m * static_cast<int>(K.p().get_ui()));
    }
    return out;
}

// Product of the distinct irreducible factors of f.
inline UPoly<GFp> squarefree_part(const GFp& K, const UPoly<GFp>& f) {
    UPoly<GFp> rad{K.one()};
    for (const auto& [fac, m] : squarefree_decomposition(K, f)) rad = poly_mul(K, rad, fac);
    return rad;
}

// (product of irreducible factors of degree d, d) for squarefree monic f.
inline std::vector<std::pair<UPoly<GFp>, int>> distinct_degree_split(const GFp& K, UPoly<GFp> f) {
    std::vector<std::pair<UPoly<GFp>, int>> out;
    UPoly<GFp> x{K.zero(), K.one()};
    UPoly<GFp> h = poly_rem(K, x, f);
    int d = 0;
    while (poly_deg<GFp>(f) >= 2 * (d + 1)) {
        ++d;
        h = poly_powmod(K, h, K.p(), f);
        UPoly<GFp> g = poly_gcd(K, poly_sub(K, h, x), f);
        if (poly_deg<GFp>(g) > 0) {
            out.emplace_back(g, d);
            UPoly<GFp> q, r;
            poly_divmod(K, f, g, q, r);
            f = std::move(q);
            h = poly_rem(K, h, f);
        }
    }
    if (poly_deg<GFp>(f) > 0) out.emplace_back(f, poly_deg<GFp>(f));
    return out;
}

namespace detail {

inline void equal_degree_split(const GFp& K, const UPoly<GFp>& f, int d, SplitMix64& rng,
                               std::vector<UPoly<GFp>>& out) {
    if (poly_deg<GFp>(f) == d) {
        out.push_back(poly_monic(K, f));
        return;
    }
    if (K.p() == 2) throw InvalidInput("equal-degree splitting not supported in characteristic 2");
    Int q;
    mpz_pow_ui(q.get_mpz_t(), K.p().get_mpz_t(), static_cast<unsigned long>(d));
    Int e = (q - 1) / 2;
    while (true) {
        UPoly<GFp> a(static_cast<std::size_t>(poly_deg<GFp>(f)), K.zero());
        for (auto& c : a) c = rng.next_below(K.p());
        poly_trim(K, a);
        if (poly_deg<GFp>(a) < 1) continue;
        UPoly<GFp> g = poly_gcd(K, a, f);
        if (poly_deg<GFp>(g) == 0) {
            UPoly<GFp> b = poly_powmod(K, a, e, f);
            b = poly_sub(K, b, UPoly<GFp>{K.one()});
            g = poly_gcd(K, b, f);
        }
        if (poly_deg<GFp>(g) > 0 && poly_deg<GFp>(g) < poly_deg<GFp>(f)) {
            UPoly<GFp> h, r;
            poly_divmod(K, f, g, h, r);
            equal_degree_split(K, g, d, rng, out);
            equal_degree_split(K, h, d, rng, out);
            return;
        }
    }
}

} // namespace detail

// Monic irreducible factors with multiplicities.
inline std::vector<std::pair<UPoly<GFp>, int>> factor_mod_p(const GFp& K, const UPoly<GFp>& f) {
    std::vector<std::pair<UPoly<GFp>, int>> out;
    SplitMix64 rng(0x0f1e2d3c4b5a6978ULL ^ K.p().get_ui() ^
                   (static_cast<std::uint64_t>(f.size()) << 32));
    for (const auto& [sq, mult] : squarefree_decomposition(K, f)) {
        for (const auto& [prod, d] : distinct_degree_split(K, sq)) {
            std::vector<UPoly<GFp>> irr;
            detail::equal_degree_split(K, prod, d, rng, irr);
            for (auto& fac : irr) out.emplace_back(std::move(fac), mult);
        }
    }
    return out;
}

// Roots of f in F_p (without multiplicity), ascending.
inline std::vector<Int> roots_mod_p(const GFp& K, const UPoly<GFp>& f) {
    std::vector<Int> roots;
    if (poly_deg<GFp>(f) < 1) return roots;
    UPoly<GFp> x{K.zero(), K.one()};
    UPoly<GFp> xp = poly_powmod_x(K, K.p(), f);
    UPoly<GFp> lin = poly_gcd(K, poly_sub(K, xp, x), f);
    if (poly_deg<GFp>(lin) < 1) return roots;
    if (poly_deg<GFp>(lin) == 1) {
        roots.push_back(K.neg(lin[0]));
        return roots;
    }
    if (K.p() == 2) {
        for (Int a = 0; a < 2; ++a)
            if (K.is_zero(poly_eval(K, lin, a))) roots.push_back(a);
        return roots;
    }
    SplitMix64 rng(0xa5b35705faf03d21ULL ^ K.p().get_ui());
    std::vector<UPoly<GFp>> irr;
    detail::equal_degree_split(K, lin, 1, rng, irr);
    for (const auto& fac : irr) roots.push_back(K.neg(fac[0]));
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace k3
