#pragma once

// Univariate polynomial arithmetic over an abstract coefficient field, plus
// the concrete fields used in the toolkit: Q, F_p, and F_{p^d} = F_p[t]/(f).
//
// A field object carries its context (the prime, the modulus); polynomials
// are plain coefficient vectors with no trailing zeros.

#include <vector>

#include "k3/errors.hpp"
#include "k3/integers.hpp"

namespace k3 {

struct QField {
    using Elem = Rat;
    Elem zero() const { return Rat(0); }
    Elem one() const { return Rat(1); }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw InvalidInput("division by zero in Q");
        return 1 / a;
    }
    Elem from_int(const Int& n) const { return Rat(n); }
};

class GFp {
  public:
    using Elem = Int;
    explicit GFp(Int p) : p_(std::move(p)) {
        if (p_ < 2) throw InvalidInput("characteristic must be >= 2");
    }
    const Int& p() const { return p_; }
    Elem zero() const { return Int(0); }
    Elem one() const { return Int(1); }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem add(const Elem& a, const Elem& b) const {
        Int r = a + b;
        if (r >= p_) r -= p_;
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Int r = a - b;
        if (r < 0) r += p_;
        return r;
    }
    Elem mul(const Elem& a, const Elem& b) const { return a * b % p_; }
    Elem neg(const Elem& a) const { return a == 0 ? a : Int(p_ - a); }
    Elem inv(const Elem& a) const { return mod_inverse(a, p_); }
    Elem from_int(const Int& n) const { return mod_reduce(n, p_); }

  private:
    Int p_;
};

template <class F>
using UPoly = std::vector<typename F::Elem>;

template <class F>
void poly_trim(const F& K, UPoly<F>& f) {
    while (!f.empty() && K.is_zero(f.back())) f.pop_back();
}

template <class F>
bool poly_is_zero(const UPoly<F>& f) {
    return f.empty();
}

template <class F>
int poly_deg(const UPoly<F>& f) {
    return static_cast<int>(f.size()) - 1; // -1 for the zero polynomial
}

template <class F>
typename F::Elem poly_lc(const F& K, const UPoly<F>& f) {
    return f.empty() ? K.zero() : f.back();
}

template <class F>
UPoly<F> poly_add(const F& K, const UPoly<F>& a, const UPoly<F>& b) {
    UPoly<F> r(std::max(a.size(), b.size()), K.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = K.add(r[i], b[i]);
    poly_trim(K, r);
    return r;
}

template <class F>
UPoly<F> poly_sub(const F& K, const UPoly<F>& a, const UPoly<F>& b) {
    UPoly<F> r(std::max(a.size(), b.size()), K.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = K.sub(r[i], b[i]);
    poly_trim(K, r);
    return r;
}

template <class F>
UPoly<F> poly_mul(const F& K, const UPoly<F>& a, const UPoly<F>& b) {
    if (a.empty() || b.empty()) return {};
    UPoly<F> r(a.size() + b.size() - 1, K.zero());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = K.add(r[i + j], K.mul(a[i], b[j]));
    poly_trim(K, r);
    return r;
}

template <class F>
UPoly<F> poly_scale(const F& K, const UPoly<F>& a, const typename F::Elem& s) {
    UPoly<F> r;
    r.reserve(a.size());
    for (const auto& c : a) r.push_back(K.mul(c, s));
    poly_trim(K, r);
    return r;
}

template <class F>
void poly_divmod(const F& K, UPoly<F> num, const UPoly<F>& den, UPoly<F>& q, UPoly<F>& rem) {
    if (den.empty()) throw InvalidInput("polynomial division by zero");
    q.assign(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, K.zero());
    auto lc_inv = K.inv(den.back());
    while (num.size() >= den.size()) {
        std::size_t shift = num.size() - den.size();
        auto c = K.mul(num.back(), lc_inv);
        q[shift] = c;
        for (std::size_t i = 0; i < den.size(); ++i)
            num[shift + i] = K.sub(num[shift + i], K.mul(c, den[i]));
        poly_trim(K, num);
        if (num.size() < den.size()) break;
        // after cancellation num strictly shrank, loop terminates
    }
    poly_trim(K, q);
    rem = std::move(num);
}

template <class F>
UPoly<F> poly_rem(const F& K, const UPoly<F>& a, const UPoly<F>& b) {
    UPoly<F> q, r;
    poly_divmod(K, a, b, q, r);
    return r;
}

template <class F>
UPoly<F> poly_monic(const F& K, const UPoly<F>& f) {
    if (f.empty()) return f;
    return poly_scale(K, f, K.inv(f.back()));
}

// Monic gcd via the Euclidean algorithm.
template <class F>
UPoly<F> poly_gcd(const F& K, UPoly<F> a, UPoly<F> b) {
    while (!b.empty()) {
        UPoly<F> r = poly_rem(K, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(K, a);
}

// Extended gcd: g = gcd(a,b) monic with g = u*a + v*b.
template <class F>
UPoly<F> poly_ext_gcd(const F& K, UPoly<F> a, UPoly<F> b, UPoly<F>& u, UPoly<F>& v) {
    UPoly<F> u0{K.one()}, v0{}, u1{}, v1{K.one()};
    while (!b.empty()) {
        UPoly<F> q, r;
        poly_divmod(K, a, b, q, r);
        UPoly<F> u2 = poly_sub(K, u0, poly_mul(K, q, u1));
        UPoly<F> v2 = poly_sub(K, v0, poly_mul(K, q, v1));
        a = std::move(b);
        b = std::move(r);
        u0 = std::move(u1);
        u1 = std::move(u2);
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    if (a.empty()) {
        u = {};
        v = {};
        return a;
    }
    auto s = K.inv(a.back());
    u = poly_scale(K, u0, s);
    v = poly_scale(K, v0, s);
    return poly_scale(K, a, s);
}

template <class F>
UPoly<F> poly_derivative(const F& K, const UPoly<F>& f) {
    UPoly<F> r;
    for (std::size_t i = 1; i < f.size(); ++i)
        r.push_back(K.mul(f[i], K.from_int(Int(static_cast<long>(i)))));
    poly_trim(K, r);
    return r;
}

template <class F>
typename F::Elem poly_eval(const F& K, const UPoly<F>& f, const typename F::Elem& x) {
    auto acc = K.zero();
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = K.add(K.mul(acc, x), *it);
    return acc;
}

// x^e mod f by square and multiply, e an arbitrary-precision exponent.
template <class F>
UPoly<F> poly_powmod_x(const F& K, const Int& e, const UPoly<F>& f) {
    UPoly<F> base{K.zero(), K.one()}; // x
    base = poly_rem(K, base, f);
    UPoly<F> acc{K.one()};
    for (long i = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; i >= 0; --i) {
        acc = poly_rem(K, poly_mul(K, acc, acc), f);
        if (mpz_tstbit(e.get_mpz_t(), static_cast<unsigned long>(i)))
            acc = poly_rem(K, poly_mul(K, acc, base), f);
    }
    return acc;
}

template <class F>
UPoly<F> poly_powmod(const F& K, UPoly<F> base, const Int& e, const UPoly<F>& f) {
    base = poly_rem(K, base, f);
    UPoly<F> acc{K.one()};
    for (long i = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; i >= 0; --i) {
        acc = poly_rem(K, poly_mul(K, acc, acc), f);
        if (mpz_tstbit(e.get_mpz_t(), static_cast<unsigned long>(i)))
            acc = poly_rem(K, poly_mul(K, acc, base), f);
    }
    return acc;
}

// F_{p^d} presented as F_p[t]/(modulus); elements are reduced coefficient
// vectors.  The modulus must be irreducible for this to be a field.
class GFpExt {
  public:
    using Elem = UPoly<GFp>;

    GFpExt(GFp base, UPoly<GFp> modulus) : base_(std::move(base)), mod_(std::move(modulus)) {
        if (poly_deg<GFp>(mod_) < 1) throw InvalidInput("extension modulus must be nonconstant");
        mod_ = poly_monic(base_, mod_);
    }

    const GFp& base() const { return base_; }
    const UPoly<GFp>& modulus() const { return mod_; }
    int extension_degree() const { return poly_deg<GFp>(mod_); }

    Elem zero() const { return {}; }
    Elem one() const { return {base_.one()}; }
    bool is_zero(const Elem& a) const { return a.empty(); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem add(const Elem& a, const Elem& b) const { return poly_add(base_, a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return poly_sub(base_, a, b); }
    Elem mul(const Elem& a, const Elem& b) const {
        return poly_rem(base_, poly_mul(base_, a, b), mod_);
    }
    Elem neg(const Elem& a) const { return poly_scale(base_, a, base_.neg(base_.one())); }
    Elem inv(const Elem& a) const {
        if (a.empty()) throw InvalidInput("division by zero in extension field");
        UPoly<GFp> u, v;
        UPoly<GFp> g = poly_ext_gcd(base_, a, mod_, u, v);
        if (poly_deg<GFp>(g) != 0)
            throw InvalidInput("non-invertible element: extension modulus not irreducible");
        return poly_scale(base_, u, base_.inv(g[0]));
    }
    Elem from_int(const Int& n) const {
        Int r = mod_reduce(n, base_.p());
        if (r == 0) return {};
        return {r};
    }
    // the residue class of t itself
    Elem generator() const {
        Elem t{base_.zero(), base_.one()};
        return poly_rem(base_, t, mod_);
    }
    // lift an F_p scalar into the extension
    Elem embed(const Int& c) const { return from_int(c); }

  private:
    GFp base_;
    UPoly<GFp> mod_;
};

} // namespace k3
