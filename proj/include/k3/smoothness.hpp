#pragma once

// Jacobian smoothness certificates for plane sextics, singular-point
// detection mod p (including over extensions of F_p), ordinary-double-point
// tests, and bad-reduction prime discovery by resultant elimination.
//
// The elimination pattern is always the same: shear coordinates until the
// three partials have unit leading coefficients in x2, eliminate x2 by
// pairwise Sylvester resultants, then intersect the resulting binary forms.
// Points on the sheared line x0 = 0 are handled by direct binary-form gcds.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "k3/divisor.hpp"
#include "k3/errors.hpp"
#include "k3/fpfactor.hpp"
#include "k3/homopoly.hpp"
#include "k3/integers.hpp"
#include "k3/resultant.hpp"
#include "k3/upoly.hpp"

namespace k3 {

// Fixed shear sequence; certificates are deterministic because every caller
// walks this list in order.
inline const std::vector<std::pair<int, int>>& shear_sequence() {
    static const std::vector<std::pair<int, int>> seq = [] {
        std::vector<std::pair<int, int>> s{{0, 0}};
        for (int radius = 1; radius <= 8; ++radius)
            for (int a = -radius; a <= radius; ++a)
                for (int b = -radius; b <= radius; ++b)
                    if (std::max(std::abs(a), std::abs(b)) == radius) s.emplace_back(a, b);
        return s;
    }();
    return seq;
}

// p(x0 + a*x2, x1 + b*x2, x2); a unimodular substitution, so singular points
// transform bijectively over every field.
inline HomPoly apply_shear(const HomPoly& p, int a, int b) {
    if (a == 0 && b == 0) return p;
    std::vector<HomPoly> pow0{HomPoly::monomial(1, {0, 0, 0})};
    std::vector<HomPoly> pow1{HomPoly::monomial(1, {0, 0, 0})};
    HomPoly l0 = HomPoly::monomial(1, {1, 0, 0}) + HomPoly::monomial(Rat(a), {0, 0, 1});
    HomPoly l1 = HomPoly::monomial(1, {0, 1, 0}) + HomPoly::monomial(Rat(b), {0, 0, 1});
    for (int i = 1; i <= p.degree(); ++i) {
        pow0.push_back(pow0.back() * l0);
        pow1.push_back(pow1.back() * l1);
    }
    HomPoly out = HomPoly::zero(p.degree());
    for (const auto& [e, c] : p.terms()) {
        HomPoly term = pow0[static_cast<std::size_t>(e[0])] * pow1[static_cast<std::size_t>(e[1])];
        term = term * HomPoly::monomial(c, {0, 0, e[2]});
        out = out + term;
    }
    return out;
}

struct ProjPointModP {
    Int x0, x1, x2;
    bool operator==(const ProjPointModP& o) const {
        return x0 == o.x0 && x1 == o.x1 && x2 == o.x2;
    }
    bool operator<(const ProjPointModP& o) const {
        if (x0 != o.x0) return x0 < o.x0;
        if (x1 != o.x1) return x1 < o.x1;
        return x2 < o.x2;
    }
};

namespace detail {

template <class F>
typename F::Elem from_rat(const F& K, const Rat& c) {
    return K.mul(K.from_int(c.get_num()), K.inv(K.from_int(c.get_den())));
}

inline Rat from_rat(const QField&, const Rat& c) { return c; }

// View p (homogeneous, 3 vars) at x0 = 1 as a polynomial in x2 whose
// coefficients are univariate polynomials in s = x1.
template <class F>
std::vector<UPoly<F>> coeffs_in_x2(const F& K, const HomPoly& p) {
    std::vector<UPoly<F>> out(static_cast<std::size_t>(p.degree()) + 1);
    for (const auto& [e, c] : p.terms()) {
        auto& u = out[static_cast<std::size_t>(e[2])];
        if (static_cast<int>(u.size()) <= e[1]) u.resize(static_cast<std::size_t>(e[1]) + 1, K.zero());
        u[static_cast<std::size_t>(e[1])] = K.add(u[static_cast<std::size_t>(e[1])],
                                                  from_rat(K, c));
    }
    for (auto& u : out) poly_trim(K, u);
    while (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

// Restriction to the line x0 = 0, dehomogenized at x1 = 1: a polynomial in x2.
template <class F>
UPoly<F> restrict_line(const F& K, const HomPoly& p) {
    UPoly<F> u(static_cast<std::size_t>(p.degree()) + 1, K.zero());
    for (const auto& [e, c] : p.terms()) {
        if (e[0] != 0) continue;
        u[static_cast<std::size_t>(e[2])] = K.add(u[static_cast<std::size_t>(e[2])],
                                                  from_rat(K, c));
    }
    poly_trim(K, u);
    return u;
}

// p(1, t, x2) over an extension field containing t.
inline UPoly<GFpExt> specialize_at(const GFpExt& K, const HomPoly& p, const GFpExt::Elem& t) {
    std::vector<GFpExt::Elem> tpow{K.one()};
    for (int i = 1; i <= p.degree(); ++i) tpow.push_back(K.mul(tpow.back(), t));
    UPoly<GFpExt> u(static_cast<std::size_t>(p.degree()) + 1, K.zero());
    for (const auto& [e, c] : p.terms()) {
        auto v = K.mul(from_rat(K, c), tpow[static_cast<std::size_t>(e[1])]);
        u[static_cast<std::size_t>(e[2])] = K.add(u[static_cast<std::size_t>(e[2])], v);
    }
    poly_trim(K, u);
    return u;
}

template <class F>
typename F::Elem elem_pow(const F& K, typename F::Elem a, Int e) {
    auto acc = K.one();
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = K.mul(acc, a);
        a = K.mul(a, a);
        e >>= 1;
    }
    return acc;
}

// Product of distinct irreducible factors, valid in characteristic p.  The
// coefficient p-th root in F_{p^d} is c -> c^(p^(d-1)).
template <class F>
UPoly<F> squarefree_part_charp(const F& K, UPoly<F> f, const Int& p, const Int& coeff_root_exp) {
    f = poly_monic(K, f);
    if (poly_deg<F>(f) <= 1) return f;
    UPoly<F> fp = poly_derivative(K, f);
    if (fp.empty()) {
        // f = v(x^p)
        unsigned long pu = p.get_ui();
        UPoly<F> v;
        for (std::size_t i = 0; i < f.size(); i += pu)
            v.push_back(elem_pow(K, f[i], coeff_root_exp));
        poly_trim(K, v);
        return squarefree_part_charp(K, v, p, coeff_root_exp);
    }
    UPoly<F> d = poly_gcd(K, f, fp);
    UPoly<F> w, r;
    poly_divmod(K, f, d, w, r);
    if (poly_deg<F>(d) == 0) return w;
    // factors of multiplicity divisible by p survive in d with full power
    UPoly<F> rest = squarefree_part_charp(K, d, p, coeff_root_exp);
    UPoly<F> g = poly_gcd(K, w, rest);
    UPoly<F> extra, r2;
    poly_divmod(K, rest, g, extra, r2);
    return poly_mul(K, w, extra);
}

// Pairwise resultants eliminating x2; zero resultants (shared factors) are
// dropped, so the returned gcd cuts out a superset of the singular x1-coords.
template <class F>
bool pair_resultant_gcd(const F& K, const std::vector<std::vector<UPoly<F>>>& polys,
                        UPoly<F>& h_out) {
    PolyRing<F> ring{K};
    std::vector<UPoly<F>> rs;
    for (std::size_t i = 0; i < polys.size(); ++i)
        for (std::size_t j = i + 1; j < polys.size(); ++j) {
            if (polys[i].size() <= 1 && polys[j].size() <= 1) {
                // neither involves x2: their common zeros are cut out by the
                // gcd in x1, which the Sylvester convention (resultant 1)
                // would wrongly discard
                if (polys[i].empty() && polys[j].empty()) continue;
                UPoly<F> a = polys[i].empty() ? UPoly<F>{} : polys[i][0];
                UPoly<F> b = polys[j].empty() ? UPoly<F>{} : polys[j][0];
                UPoly<F> r = a.empty() ? b : (b.empty() ? a : poly_gcd(K, a, b));
                if (!r.empty()) rs.push_back(std::move(r));
                continue;
            }
            auto r = sylvester_resultant(ring, polys[i], polys[j]);
            if (!r.empty()) rs.push_back(std::move(r));
        }
    if (rs.empty()) return false;
    UPoly<F> h = rs[0];
    for (std::size_t i = 1; i < rs.size() && poly_deg<F>(h) > 0; ++i) h = poly_gcd(K, h, rs[i]);
    h_out = poly_monic(K, h);
    return true;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Smoothness over Q

struct SmoothnessCertificate {
    bool smooth = false;
    std::pair<int, int> shear{0, 0};
    // smooth: the nonzero final elimination resultant (with the line and
    // leading-coefficient checks folded into the boolean).
    Int chain_resultant = 0;
    // not smooth: a rational singular point when one exists at small height,
    // otherwise the elimination gcd describing the extension carrying one.
    std::optional<std::array<Rat, 3>> singular_point;
    std::string extension_witness;
};

namespace detail {

inline std::optional<std::array<Rat, 3>> find_rational_singular_point(const HomPoly& g,
                                                                      int bound = 6) {
    std::array<HomPoly, 3> d{g.partial(0), g.partial(1), g.partial(2)};
    for (int a = -bound; a <= bound; ++a)
        for (int b = -bound; b <= bound; ++b)
            for (int c = -bound; c <= bound; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                Rat r0(a), r1(b), r2(c);
                if (g.eval(r0, r1, r2) != 0) continue;
                if (d[0].eval(r0, r1, r2) == 0 && d[1].eval(r0, r1, r2) == 0 &&
                    d[2].eval(r0, r1, r2) == 0)
                    return std::array<Rat, 3>{r0, r1, r2};
            }
    return std::nullopt;
}

} // namespace detail

inline SmoothnessCertificate is_smooth_sextic(const HomPoly& g) {
    if (g.is_zero()) throw InvalidInput("smoothness of the zero polynomial");
    QField K;
    SmoothnessCertificate cert;
    int usable_shears = 0;
    UPoly<QField> last_gcd;
    std::pair<int, int> last_shear{0, 0};
    for (const auto& [a, b] : shear_sequence()) {
        HomPoly G = apply_shear(g, a, b);
        std::array<HomPoly, 3> P{G.partial(0), G.partial(1), G.partial(2)};
        bool leading_ok = true;
        for (const auto& p : P)
            if (p.eval(0, 0, 1) == 0) leading_ok = false;
        if (!leading_ok) continue;

        // line x0 = 0: common roots of the restricted partials
        UPoly<QField> lg = poly_gcd(K, detail::restrict_line(K, P[0]),
                                    detail::restrict_line(K, P[1]));
        lg = poly_gcd(K, lg, detail::restrict_line(K, P[2]));
        bool line_clean = poly_deg<QField>(lg) <= 0;
        bool inf_clean = !(P[0].eval(0, 1, 0) == 0 && P[1].eval(0, 1, 0) == 0 &&
                           P[2].eval(0, 1, 0) == 0);

        std::vector<std::vector<UPoly<QField>>> sys{detail::coeffs_in_x2(K, P[0]),
                                                    detail::coeffs_in_x2(K, P[1]),
                                                    detail::coeffs_in_x2(K, P[2])};
        UPoly<QField> h;
        if (!detail::pair_resultant_gcd(K, sys, h)) {
            // every pairwise resultant vanishes identically: the partials
            // share factors, so smoothness can never be certified this way
            ++usable_shears;
            last_gcd.clear();
            last_shear = {a, b};
            if (usable_shears >= 5) break;
            continue;
        }
        if (line_clean && inf_clean && poly_deg<QField>(h) == 0) {
            PolyRing<QField> ring{K};
            Rat res = resultant_uni(sylvester_resultant(ring, sys[0], sys[1]),
                                    sylvester_resultant(ring, sys[0], sys[2]));
            cert.smooth = true;
            cert.shear = {a, b};
            cert.chain_resultant = res.get_num();
            return cert;
        }
        ++usable_shears;
        last_gcd = h;
        last_shear = {a, b};
        if (usable_shears >= 5) break; // persistent gcd across shears: singular
    }
    if (usable_shears == 0)
        throw NonGenericCoordinates("no shear produced unit leading coefficients");
    cert.smooth = false;
    cert.shear = last_shear;
    cert.singular_point = detail::find_rational_singular_point(g);
    if (!cert.singular_point && last_gcd.empty()) {
        cert.extension_witness =
            "all pairwise elimination resultants vanish identically "
            "(the partials share factors; positive-dimensional singular locus)";
    } else if (!cert.singular_point) {
        std::string desc = "x1-coordinates (x0=1, sheared) satisfy: ";
        bool first = true;
        for (auto it = last_gcd.rbegin(); it != last_gcd.rend(); ++it) {
            if (!first) desc += " , ";
            first = false;
            desc += it->get_str();
        }
        cert.extension_witness = desc;
    }
    return cert;
}

// ---------------------------------------------------------------------------
// Singular points mod p

// Exhaustive scan of P^2(F_p); p must fit an unsigned long.
inline std::vector<ProjPointModP> singular_points_scan(const HomPoly& g, const Int& prime) {
    PolyModP gp = reduce_mod_p(g, prime);
    if (gp.is_zero()) throw DegenerateReduction("sextic vanishes identically mod " + prime.get_str());
    std::array<PolyModP, 3> d{reduce_mod_p(g.partial(0), prime), reduce_mod_p(g.partial(1), prime),
                              reduce_mod_p(g.partial(2), prime)};
    const std::uint64_t p = prime.get_ui();
    // dense term list for fast evaluation: (e0,e1,e2, residue)
    struct Term {
        int e0, e1, e2;
        std::uint64_t c;
    };
    auto pack = [&](const PolyModP& q) {
        std::vector<Term> t;
        for (const auto& [e, c] : q.terms()) t.push_back({e[0], e[1], e[2], c.get_ui()});
        return t;
    };
    std::array<std::vector<Term>, 4> polys{pack(gp), pack(d[0]), pack(d[1]), pack(d[2])};
    std::vector<ProjPointModP> out;
    const int deg = g.degree();
    std::vector<std::uint64_t> powb(static_cast<std::size_t>(deg) + 1),
        powc(static_cast<std::size_t>(deg) + 1);
    auto eval = [&](const std::vector<Term>& t, std::uint64_t a) {
        unsigned __int128 acc = 0;
        for (const auto& m : t) {
            unsigned __int128 v = m.c;
            if (m.e0) {
                std::uint64_t ap = 1;
                for (int i = 0; i < m.e0; ++i) ap = static_cast<std::uint64_t>(
                                                   static_cast<unsigned __int128>(ap) * a % p);
                v = v * ap % p;
            }
            v = v * powb[static_cast<std::size_t>(m.e1)] % p;
            v = v * powc[static_cast<std::size_t>(m.e2)] % p;
            acc += static_cast<std::uint64_t>(v);
        }
        return static_cast<std::uint64_t>(acc % p);
    };
    auto consider = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) {
        powb[0] = 1;
        powc[0] = 1;
        for (int i = 1; i <= deg; ++i) {
            powb[static_cast<std::size_t>(i)] =
                static_cast<std::uint64_t>(static_cast<unsigned __int128>(powb[i - 1]) * b % p);
            powc[static_cast<std::size_t>(i)] =
                static_cast<std::uint64_t>(static_cast<unsigned __int128>(powc[i - 1]) * c % p);
        }
        for (const auto& t : polys)
            if (eval(t, a) != 0) return;
        out.push_back(ProjPointModP{Int(static_cast<unsigned long>(a)),
                                    Int(static_cast<unsigned long>(b)),
                                    Int(static_cast<unsigned long>(c))});
    };
    for (std::uint64_t b = 0; b < p; ++b)
        for (std::uint64_t c = 0; c < p; ++c) consider(1, b, c);
    for (std::uint64_t c = 0; c < p; ++c) consider(0, 1, c);
    consider(0, 0, 1);
    return out;
}

// Geometric singular-locus summary of the reduction mod an odd prime:
// number of F_pbar-points, whether each is an ordinary double point, and the
// F_p-rational ones among them.
struct GeometricSingularReport {
    Int prime;
    bool degenerate = false; // elimination collapsed; treat as (badly) singular
    long geometric_count = 0;
    bool all_nodes = true;
    std::vector<ProjPointModP> rational_points;
};

// Cyclic variable rotation: the returned polynomial satisfies
// G(y0,y1,y2) = g(x) with x[(i + r) % 3] = y[i].
inline HomPoly rotate_vars(const HomPoly& g, int r) {
    HomPoly out(g.degree());
    for (const auto& [e, c] : g.terms()) {
        Exp3 f{0, 0, 0};
        for (int i = 0; i < 3; ++i)
            f[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>((i + r) % 3)];
        out.set_coeff(f, c);
    }
    return out;
}

inline GeometricSingularReport geometric_singular_report(const HomPoly& g0, const Int& prime) {
    if (prime == 2) throw InvalidInput("geometric report requires an odd prime");
    GeometricSingularReport rep;
    rep.prime = prime;
    GFp K(prime);
    {
        PolyModP gp = reduce_mod_p(g0, prime);
        if (gp.is_zero())
            throw DegenerateReduction("sextic vanishes identically mod " + prime.get_str());
    }
    Int root_exp = 1; // p^(d-1) is computed per extension below

    // small primes leave few distinct shears mod p, so widen the coordinate
    // family with the three cyclic variable rotations
    std::vector<std::pair<int, std::pair<int, int>>> frames;
    for (int r = 0; r < 3; ++r)
        for (const auto& sh : shear_sequence()) frames.emplace_back(r, sh);
    std::sort(frames.begin(), frames.end(), [](const auto& u, const auto& v) {
        auto norm = [](const auto& f) {
            return std::max({std::abs(f.second.first), std::abs(f.second.second), f.first});
        };
        return norm(u) < norm(v);
    });

    for (const auto& [rot, sh] : frames) {
        const auto& [a, b] = sh;
        HomPoly g = rotate_vars(g0, rot);
        HomPoly G = apply_shear(g, a, b);
        std::array<HomPoly, 3> P{G.partial(0), G.partial(1), G.partial(2)};
        std::array<HomPoly, 3> H2; // Hessian entries for the x0=1 chart
        H2[0] = G.partial(1).partial(1);
        H2[1] = G.partial(1).partial(2);
        H2[2] = G.partial(2).partial(2);

        // No unit-leading-coefficient requirement: a shared x2-root always
        // kills the specialized resultant (columns degenerate with the lcs),
        // so the gcd below cuts out a superset of the singular x1-coords and
        // the per-fiber gcds (which include G itself) do the exact counting.
        std::vector<std::vector<UPoly<GFp>>> sys{
            detail::coeffs_in_x2(K, G), detail::coeffs_in_x2(K, P[0]),
            detail::coeffs_in_x2(K, P[1]), detail::coeffs_in_x2(K, P[2])};
        UPoly<GFp> h;
        if (!detail::pair_resultant_gcd(K, sys, h)) continue; // all pair resultants vanished

        long count = 0;
        bool nodes = true;
        std::vector<ProjPointModP> rational;
        bool frame_ok = true;

        // the point [0,0,1] sits outside both charts below
        {
            auto at = [&](const HomPoly& f) { return mod_reduce(f.eval(0, 0, 1).get_num(), prime); };
            if (at(G) == 0 && at(P[0]) == 0 && at(P[1]) == 0 && at(P[2]) == 0) {
                count += 1;
                rational.push_back(ProjPointModP{Int(0), Int(0), Int(1)});
                HomPoly h00 = G.partial(0).partial(0), h01 = G.partial(0).partial(1),
                        h11 = G.partial(1).partial(1);
                Int det = mod_reduce(at(h00) * at(h11) - at(h01) * at(h01), prime);
                if (det == 0) nodes = false;
            }
        }

        // --- line x0 = 0 (in sheared coordinates) ---------------------------
        {
            UPoly<GFp> lg = poly_gcd(K, detail::restrict_line(K, P[0]),
                                     detail::restrict_line(K, P[1]));
            lg = poly_gcd(K, lg, detail::restrict_line(K, P[2]));
            lg = poly_gcd(K, lg, detail::restrict_line(K, G));
            if (lg.empty()) frame_ok = false; // the whole line is singular
            if (poly_deg<GFp>(lg) > 0) {
                UPoly<GFp> lsq = squarefree_part(K, lg);
                count += poly_deg<GFp>(lsq);
                // nodes on the line, chart x1 = 1 with coordinates (x0, x2)
                HomPoly h00 = G.partial(0).partial(0);
                HomPoly h02 = G.partial(0).partial(2);
                HomPoly h22 = G.partial(2).partial(2);
                UPoly<GFp> hd = poly_sub(
                    K,
                    poly_mul(K, detail::restrict_line(K, h00), detail::restrict_line(K, h22)),
                    poly_mul(K, detail::restrict_line(K, h02), detail::restrict_line(K, h02)));
                UPoly<GFp> common = poly_gcd(K, lsq, hd);
                if (poly_deg<GFp>(common) > 0) nodes = false;
                for (const auto& z : roots_mod_p(K, lsq))
                    rational.push_back(ProjPointModP{Int(0), Int(1), z});
            }
        }

        // --- main chart x0 = 1 ----------------------------------------------
        if (poly_deg<GFp>(h) > 0) {
            UPoly<GFp> hsq = squarefree_part(K, h);
            for (const auto& [fac, mult] : factor_mod_p(K, hsq)) {
                (void)mult;
                int d = poly_deg<GFp>(fac);
                GFpExt F(K, fac);
                auto t = F.generator();
                UPoly<GFpExt> w = detail::specialize_at(F, P[0], t);
                w = poly_gcd(F, w, detail::specialize_at(F, P[1], t));
                w = poly_gcd(F, w, detail::specialize_at(F, P[2], t));
                w = poly_gcd(F, w, detail::specialize_at(F, G, t));
                if (w.empty()) { // a whole fiber line is singular
                    frame_ok = false;
                    break;
                }
                if (poly_deg<GFpExt>(w) <= 0) continue; // spurious elimination factor
                mpz_pow_ui(root_exp.get_mpz_t(), prime.get_mpz_t(),
                           static_cast<unsigned long>(d > 0 ? d - 1 : 0));
                UPoly<GFpExt> wsq = detail::squarefree_part_charp(F, w, prime, root_exp);
                count += d * poly_deg<GFpExt>(wsq);
                // node condition: Hessian determinant (chart x0=1) coprime to wsq
                UPoly<GFpExt> hd = poly_sub(
                    F,
                    poly_mul(F, detail::specialize_at(F, H2[0], t),
                             detail::specialize_at(F, H2[2], t)),
                    poly_mul(F, detail::specialize_at(F, H2[1], t),
                             detail::specialize_at(F, H2[1], t)));
                UPoly<GFpExt> commonext = poly_gcd(F, wsq, hd);
                if (poly_deg<GFpExt>(commonext) > 0) nodes = false;
                if (d == 1) {
                    // rational x1-coordinate: extract rational x2 roots
                    Int s = K.neg(fac[0]);
                    UPoly<GFp> wp;
                    for (const auto& cext : wsq)
                        wp.push_back(cext.empty() ? K.zero() : cext[0]);
                    poly_trim(K, wp);
                    for (const auto& z : roots_mod_p(K, wp))
                        rational.push_back(ProjPointModP{Int(1), s, z});
                }
            }
        }

        if (!frame_ok) continue;

        // map rational points back through the shear, then the rotation
        for (auto& pt : rational) {
            std::array<Int, 3> y{mod_reduce(pt.x0 + a * pt.x2, prime),
                                 mod_reduce(pt.x1 + b * pt.x2, prime), pt.x2};
            std::array<Int, 3> x;
            for (int i = 0; i < 3; ++i) x[static_cast<std::size_t>((i + rot) % 3)] = y[static_cast<std::size_t>(i)];
            // renormalize to the scan convention: first nonzero coordinate 1
            int lead = x[0] != 0 ? 0 : (x[1] != 0 ? 1 : 2);
            Int inv = mod_inverse(x[static_cast<std::size_t>(lead)], prime);
            for (auto& c : x) c = mod_reduce(c * inv, prime);
            pt = ProjPointModP{x[0], x[1], x[2]};
        }
        std::sort(rational.begin(), rational.end());
        rep.geometric_count = count;
        rep.all_nodes = nodes && count > 0;
        rep.rational_points = std::move(rational);
        return rep;
    }
    rep.degenerate = true;
    rep.all_nodes = false;
    return rep;
}

// All P^2(F_p) points where g and its partials vanish: exhaustive scan below
// the threshold, elimination above it.
inline std::vector<ProjPointModP> singular_points_mod_p(const HomPoly& g, const Int& prime,
                                                        unsigned long scan_threshold = 1024) {
    if (prime <= Int(static_cast<unsigned long>(scan_threshold)))
        return singular_points_scan(g, prime);
    return geometric_singular_report(g, prime).rational_points;
}

inline bool is_ordinary_double_point(const HomPoly& g, const Int& prime, const ProjPointModP& pt) {
    if (prime == 2) throw InvalidInput("node test requires an odd prime");
    std::array<Int, 3> x{mod_reduce(pt.x0, prime), mod_reduce(pt.x1, prime),
                         mod_reduce(pt.x2, prime)};
    PolyModP gp = reduce_mod_p(g, prime);
    std::array<PolyModP, 3> d{reduce_mod_p(g.partial(0), prime), reduce_mod_p(g.partial(1), prime),
                              reduce_mod_p(g.partial(2), prime)};
    if (gp.eval(x[0], x[1], x[2]) != 0 || d[0].eval(x[0], x[1], x[2]) != 0 ||
        d[1].eval(x[0], x[1], x[2]) != 0 || d[2].eval(x[0], x[1], x[2]) != 0)
        throw InvalidInput("point is not a singular point of g mod p");
    int chart = x[0] != 0 ? 0 : (x[1] != 0 ? 1 : 2);
    int u = (chart + 1) % 3, v = (chart + 2) % 3;
    auto second = [&](int i, int j) {
        PolyModP hij = reduce_mod_p(g.partial(i).partial(j), prime);
        return hij.eval(x[0], x[1], x[2]);
    };
    Int det = mod_reduce(second(u, u) * second(v, v) - second(u, v) * second(u, v), prime);
    return det != 0;
}

// ---------------------------------------------------------------------------
// Bad-reduction primes

struct BadPrimeEntry {
    Int prime;
    std::optional<ProjPointModP> point; // an F_p-rational singular point, if any
    long geometric_count = 0;
    bool all_nodes = false;
};

struct BadPrimeReport {
    std::vector<BadPrimeEntry> certified_bad;
    Int candidate_integer;
    std::uint64_t search_bound = 0;
};

namespace detail {

// One elimination chain over Z: the final resultant times the line
// contributions and the leading coefficients.  Every bad prime divides it.
inline std::optional<Int> candidate_chain(const HomPoly& g, int a, int b) {
    QField K;
    HomPoly G = apply_shear(g, a, b);
    std::array<HomPoly, 3> P{G.partial(0), G.partial(1), G.partial(2)};
    Int acc = 1;
    for (const auto& p : P) {
        Rat lc = p.eval(0, 0, 1);
        if (lc == 0) return std::nullopt;
        acc *= lc.get_num();
    }
    std::vector<std::vector<UPoly<QField>>> sys{coeffs_in_x2(K, P[0]), coeffs_in_x2(K, P[1]),
                                                coeffs_in_x2(K, P[2])};
    PolyRing<QField> ring{K};
    UPoly<QField> r1 = sylvester_resultant(ring, sys[0], sys[1]);
    UPoly<QField> r2 = sylvester_resultant(ring, sys[0], sys[2]);
    if (r1.empty() || r2.empty()) return std::nullopt;
    Rat rmain = resultant_uni(r1, r2);
    if (rmain == 0) return std::nullopt;
    acc *= rmain.get_num();
    // line x0 = 0: pairwise resultants of the restricted quintics
    std::array<UPoly<QField>, 3> l{restrict_line(K, P[0]), restrict_line(K, P[1]),
                                   restrict_line(K, P[2])};
    Int line_acc = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            if (l[static_cast<std::size_t>(i)].empty() || l[static_cast<std::size_t>(j)].empty())
                continue;
            Rat r = resultant_uni(l[static_cast<std::size_t>(i)], l[static_cast<std::size_t>(j)]);
            Int n = abs(r.get_num());
            mpz_gcd(line_acc.get_mpz_t(), line_acc.get_mpz_t(), n.get_mpz_t());
        }
    if (line_acc == 0) return std::nullopt;
    acc *= line_acc;
    // direction (0,1,0): values of the partials there
    Int inf_acc = 0;
    for (const auto& p : P) {
        Int n = abs(p.eval(0, 1, 0).get_num());
        mpz_gcd(inf_acc.get_mpz_t(), inf_acc.get_mpz_t(), n.get_mpz_t());
    }
    if (inf_acc == 0) return std::nullopt;
    acc *= inf_acc;
    return abs(acc);
}

} // namespace detail

// Certifies bad primes for the model w^2 = g: 2 by convention, every prime
// up to `search_bound` dividing the elimination integer, and every externally
// supplied factor; each odd candidate is confirmed or refuted geometrically.
inline BadPrimeReport bad_prime_candidates(const HomPoly& g, std::uint64_t search_bound,
                                           const std::vector<Int>& extra_primes = {}) {
    HomPoly gz = g.primitive_part();
    BadPrimeReport rep;
    rep.search_bound = search_bound;

    std::vector<Int> chains;
    for (const auto& [a, b] : shear_sequence()) {
        auto c = detail::candidate_chain(gz, a, b);
        if (c) chains.push_back(*c);
        if (chains.size() == 2) break;
    }
    if (chains.empty()) throw NonGenericCoordinates("all elimination chains degenerated");
    Int cand = chains[0];
    for (std::size_t i = 1; i < chains.size(); ++i)
        mpz_gcd(cand.get_mpz_t(), cand.get_mpz_t(), chains[i].get_mpz_t());
    rep.candidate_integer = cand;

    std::vector<Int> to_check;
    for (std::uint64_t p : primes_below(search_bound)) {
        if (p == 2) continue;
        Int ip(static_cast<unsigned long>(p));
        if (mpz_divisible_p(cand.get_mpz_t(), ip.get_mpz_t())) to_check.push_back(ip);
    }
    for (const auto& p : extra_primes) {
        if (!is_probable_prime(p))
            throw InvalidInput("externally supplied factor " + p.get_str() +
                               " failed the primality test");
        if (p != 2) to_check.push_back(p);
    }
    std::sort(to_check.begin(), to_check.end());
    to_check.erase(std::unique(to_check.begin(), to_check.end()), to_check.end());

    // p = 2: the double cover is inseparable in characteristic 2
    rep.certified_bad.push_back(BadPrimeEntry{Int(2), std::nullopt, 0, false});
    for (const auto& p : to_check) {
        GeometricSingularReport gr = geometric_singular_report(gz, p);
        if (gr.degenerate || gr.geometric_count > 0) {
            BadPrimeEntry e;
            e.prime = p;
            e.geometric_count = gr.degenerate ? -1 : gr.geometric_count;
            e.all_nodes = gr.all_nodes;
            if (!gr.rational_points.empty()) e.point = gr.rational_points.front();
            rep.certified_bad.push_back(std::move(e));
        }
    }
    return rep;
}

} // namespace k3
