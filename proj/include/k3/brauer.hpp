#pragma once

// The six Hilbert-symbol representatives of the Brauer class of a double
// sextic, their evaluation at local points, and the coefficient lemmas that
// pin down the real and 2-adic invariants.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "k3/divisor.hpp"
#include "k3/errors.hpp"
#include "k3/homopoly.hpp"
#include "k3/integers.hpp"
#include "k3/localfields.hpp"

namespace k3 {

struct SymbolRep {
    HomPoly left;  // one of -M_F, -M_D, -M_A (degree 4)
    HomPoly right; // one of A, D, F (degree 2)
    std::string label;
};

// The six representatives, ordered so that entries 0,1,2 are the pairs the
// unit-coordinate argument uses for x0, x1, x2 respectively:
// (B^2-4AD, A), (E^2-4DF, D), (C^2-4AF, F), then the remaining three.
inline std::vector<SymbolRep> brauer_reps(const QuadricSextet& q) {
    MinorTriple m = minors(q);
    auto neg = [](const HomPoly& p) { return -p; };
    return {
        SymbolRep{neg(m.M_F), q.A(), "(-M_F, A)"}, SymbolRep{neg(m.M_A), q.D(), "(-M_A, D)"},
        SymbolRep{neg(m.M_D), q.F(), "(-M_D, F)"}, SymbolRep{neg(m.M_D), q.A(), "(-M_D, A)"},
        SymbolRep{neg(m.M_F), q.D(), "(-M_F, D)"}, SymbolRep{neg(m.M_A), q.F(), "(-M_A, F)"},
    };
}

// A point of w^2 = g in P(1,1,1,3) given by a primitive integer triple; w is
// carried implicitly through wsq = g(x), a square (or zero) in the relevant
// completion.
struct WeightedPoint {
    Int x0, x1, x2;
    Rat wsq;
    bool w_is_zero = false;
};

inline WeightedPoint weighted_point(const HomPoly& g, Int a, Int b, Int c) {
    if (a == 0 && b == 0 && c == 0) throw InvalidInput("zero triple is not projective");
    Int d;
    mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_gcd(d.get_mpz_t(), d.get_mpz_t(), c.get_mpz_t());
    a /= d;
    b /= d;
    c /= d;
    Rat w = g.eval(Rat(a), Rat(b), Rat(c));
    return WeightedPoint{a, b, c, w, w == 0};
}

struct EvaluatedInvariant {
    LocalInvariant invariant;
    std::string representative; // label of the symbol actually used
    int symbol = 1;
};

// Evaluate the class at a local point.  Representatives are tried in the
// order keyed to which coordinate is a unit at the place; every representative
// with both entries nonzero must agree, and if none is usable the evaluation
// is reported Indeterminate.
inline EvaluatedInvariant eval_invariant(const std::vector<SymbolRep>& reps,
                                         const WeightedPoint& pt, const Place& v) {
    if (reps.size() != 6) throw InvalidInput("expected the six standard representatives");
    if (!pt.w_is_zero && !is_square_local(pt.wsq, v))
        throw InvalidInput("point does not lie on the surface over " + v.to_string());
    std::array<Rat, 3> x{Rat(pt.x0), Rat(pt.x1), Rat(pt.x2)};
    int unit_coord = 0;
    if (!v.real) {
        unit_coord = -1;
        for (int i = 0; i < 3; ++i)
            if (x[static_cast<std::size_t>(i)] != 0 &&
                padic_valuation(x[static_cast<std::size_t>(i)], v.p) == 0) {
                unit_coord = i;
                break;
            }
        if (unit_coord < 0) throw InvalidInput("triple is not primitive at " + v.p.get_str());
    }
    std::vector<std::size_t> order{static_cast<std::size_t>(unit_coord)};
    for (std::size_t i = 0; i < 6; ++i)
        if (i != order[0]) order.push_back(i);

    std::optional<EvaluatedInvariant> result;
    for (std::size_t idx : order) {
        const SymbolRep& r = reps[idx];
        Rat lv = r.left.eval(x[0], x[1], x[2]);
        Rat rv = r.right.eval(x[0], x[1], x[2]);
        if (lv == 0 || rv == 0) continue;
        int sym = hilbert_symbol(lv, rv, v);
        if (!result) {
            result = EvaluatedInvariant{invariant_of_symbol(sym), r.label, sym};
        } else if (result->symbol != sym) {
            throw InvalidState("representatives disagree at the point: " +
                               result->representative + " vs " + r.label);
        }
    }
    if (!result)
        throw Indeterminate("all six representatives degenerate at the point");
    return *result;
}

// ---------------------------------------------------------------------------
// Coefficient lemmas

struct LemmaChecklist {
    bool real_ok = false;
    bool two_adic_ok = false;
    std::map<std::string, bool> detail;
};

namespace detail {

// Leading principal minors of the (rational) Gram matrix of a ternary form.
inline std::array<Rat, 3> gram_minors(const HomPoly& q) {
    if (q.degree() != 2) throw InvalidInput("definiteness test requires a quadratic form");
    auto c = [&](int i, int j) {
        Exp3 e{0, 0, 0};
        e[static_cast<std::size_t>(i)] += 1;
        e[static_cast<std::size_t>(j)] += 1;
        Rat v = q.coeff(e);
        return i == j ? v : v / 2;
    };
    std::array<std::array<Rat, 3>, 3> G;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) G[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c(i, j);
    Rat m1 = G[0][0];
    Rat m2 = G[0][0] * G[1][1] - G[0][1] * G[0][1];
    Rat m3 = G[0][0] * (G[1][1] * G[2][2] - G[1][2] * G[1][2]) -
             G[0][1] * (G[0][1] * G[2][2] - G[1][2] * G[0][2]) +
             G[0][2] * (G[0][1] * G[1][2] - G[1][1] * G[0][2]);
    return {m1, m2, m3};
}

} // namespace detail

inline bool is_positive_definite(const HomPoly& q) {
    auto m = detail::gram_minors(q);
    return m[0] > 0 && m[1] > 0 && m[2] > 0;
}

inline bool is_negative_definite(const HomPoly& q) {
    auto m = detail::gram_minors(q);
    return m[0] < 0 && m[1] > 0 && m[2] < 0;
}

// Real-place lemma: A, D, F negative definite and B, C, E positive definite
// force invariant 1/2 at every real point.
inline LemmaChecklist check_real_lemma(const QuadricSextet& q) {
    LemmaChecklist out;
    out.detail["A negative definite"] = is_negative_definite(q.A());
    out.detail["D negative definite"] = is_negative_definite(q.D());
    out.detail["F negative definite"] = is_negative_definite(q.F());
    out.detail["B positive definite"] = is_positive_definite(q.B());
    out.detail["C positive definite"] = is_positive_definite(q.C());
    out.detail["E positive definite"] = is_positive_definite(q.E());
    out.real_ok = true;
    for (const auto& [k, v] : out.detail) out.real_ok = out.real_ok && v;
    return out;
}

// 2-adic lemma: the six marked coefficients (A_1, B_1, C_6, D_4, E_4, F_6 in
// the slot order x0^2, x0x1, x0x2, x1^2, x1x2, x2^2) are 2-adic units and the
// other thirty have positive valuation.  Each of the 36 conditions is
// reported individually.
inline LemmaChecklist check_2adic_lemma(const QuadricSextet& q) {
    static const char* names = "ABCDEF";
    // slot index of the unit coefficient per quadric: A_1, B_1, C_6, D_4, E_4, F_6
    static const std::array<int, 6> unit_slot{0, 0, 5, 3, 3, 5};
    LemmaChecklist out;
    out.two_adic_ok = true;
    for (int qi = 0; qi < 6; ++qi) {
        const HomPoly& f = q.q[static_cast<std::size_t>(qi)];
        for (int slot = 0; slot < 6; ++slot) {
            Rat c = f.coeff(kQuadricMonomials[static_cast<std::size_t>(slot)]);
            bool want_unit = slot == unit_slot[static_cast<std::size_t>(qi)];
            bool ok;
            if (want_unit)
                ok = c != 0 && padic_valuation(c, 2) == 0;
            else
                ok = c == 0 || padic_valuation(c, 2) > 0;
            std::string key{names[qi]};
            key += "_" + std::to_string(slot + 1) + (want_unit ? " unit" : " even");
            out.detail[key] = ok;
            out.two_adic_ok = out.two_adic_ok && ok;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Place-level conclusions

enum class ReductionStatus { Good, Bad };

struct BadReductionCertificate {
    long node_count = 0; // geometric singular points, all ordinary double points
    bool all_nodes = false;
};

// Promotes a single sample evaluation to every Q_p-point: good reduction at
// odd p gives 0 outright; bad reduction needs the mild-singularity
// certificate (< 8 nodes) plus one evaluated sample.
inline LocalInvariant conclude_finite_place(const Int& p, ReductionStatus status,
                                            const std::optional<BadReductionCertificate>& cert,
                                            const std::optional<LocalInvariant>& sample) {
    if (p == 2) throw InvalidInput("the 2-adic place is handled by the coefficient lemma");
    if (status == ReductionStatus::Good) return LocalInvariant{0};
    if (!cert)
        throw CannotConclude("bad prime " + p.get_str() + " lacks a singularity certificate");
    if (!(cert->all_nodes && cert->node_count > 0 && cert->node_count < 8))
        throw CannotConclude("singularities at " + p.get_str() +
                             " are not certified mild (need < 8 ordinary double points)");
    if (!sample) throw CannotConclude("no evaluated sample point at " + p.get_str());
    return *sample;
}

// A constant class from Br(Q), stored by its local invariants; the total must
// vanish in Q/Z (reciprocity), i.e. the number of places with invariant 1/2
// is even.
struct ConstantClass {
    std::vector<std::pair<Place, LocalInvariant>> local;
    ConstantClass() = default;
    explicit ConstantClass(std::vector<std::pair<Place, LocalInvariant>> l) : local(std::move(l)) {
        int total = 0;
        for (const auto& [v, inv] : local) total += inv.half;
        if (total % 2 != 0) throw InvalidInput("constant class violates reciprocity");
    }
    LocalInvariant at(const Place& v) const {
        for (const auto& [w, inv] : local)
            if (w == v) return inv;
        return LocalInvariant{0};
    }
};

inline LocalInvariant twist(const LocalInvariant& a, const ConstantClass& beta, const Place& v) {
    return LocalInvariant{(a.half + beta.at(v).half) % 2};
}

} // namespace k3
