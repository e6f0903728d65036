#pragma once

// End-to-end orchestration: divisor file -> surfaces -> smoothness -> bad
// primes -> local points -> lemma checks -> local invariants -> Brauer-Manin
// verdict, with a deterministic plain-text certificate.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "k3/brauer.hpp"
#include "k3/divisor.hpp"
#include "k3/localfields.hpp"
#include "k3/pointsearch.hpp"
#include "k3/smoothness.hpp"
#include "k3/sod.hpp"

namespace k3 {

struct Certificate {
    std::vector<std::string> lines;
    void kv(const std::string& k, const std::string& v) { lines.push_back(k + ": " + v); }
    void blank() { lines.emplace_back(); }
    std::string str() const {
        std::string out;
        for (const auto& l : lines) {
            out += l;
            out += '\n';
        }
        return out;
    }
};

struct PipelineOptions {
    SearchConfig search{};
    std::uint64_t bad_prime_bound = 1000000;
    std::vector<Int> extra_primes;
    unsigned long hensel_precision = 64;
};

struct PlaceConclusion {
    Place place;
    LocalInvariant inv;
    std::string basis; // which lemma/proposition justifies constancy
};

struct VerdictRun {
    QuadricSextet qx, qy;
    DoubleSexticSurface X1, X2;
    SmoothnessCertificate smooth1, smooth2;
    BadPrimeReport bad;
    LemmaChecklist real_lemma, two_adic_lemma;
    AdelicReport adelic;
    std::vector<PlaceConclusion> conclusions;
    ObstructionVerdict verdict;
};

// Search Q_p-points until one admits a non-degenerate representative, and
// return its invariant.
inline std::optional<EvaluatedInvariant> sample_invariant_at(const HomPoly& g,
                                                             const std::vector<SymbolRep>& reps,
                                                             const Int& p,
                                                             const SearchConfig& cfg) {
    std::optional<EvaluatedInvariant> out;
    Place v = Place::finite(p);
    for_each_primitive_triple(cfg.height_bound, [&](long a, long b, long c) {
        Rat w = g.eval(Rat(a), Rat(b), Rat(c));
        if (!(w == 0 || is_square_local(w, v))) return true;
        WeightedPoint pt{Int(a), Int(b), Int(c), w, w == 0};
        try {
            out = eval_invariant(reps, pt, v);
            return false;
        } catch (const Indeterminate&) {
            return true;
        }
    });
    return out;
}

inline VerdictRun run_verdict_pipeline(const BiForm22& z, const PipelineOptions& opt) {
    VerdictRun run;
    run.qx = extract_quadrics(z, Side::X);
    run.qy = extract_quadrics(z, Side::Y);
    run.X1 = k3_equation(discriminant_matrix(run.qx), Side::X);
    run.X2 = k3_equation(discriminant_matrix(run.qy), Side::Y);

    run.smooth1 = is_smooth_sextic(run.X1.g);
    run.smooth2 = is_smooth_sextic(run.X2.g);
    if (!run.smooth1.smooth || !run.smooth2.smooth)
        throw CannotConclude("a discriminant sextic is singular; no twisted K3 surface");

    run.bad = bad_prime_candidates(run.X1.g, opt.bad_prime_bound, opt.extra_primes);

    run.real_lemma = check_real_lemma(run.qx);
    run.two_adic_lemma = check_2adic_lemma(run.qx);
    if (!run.real_lemma.real_ok)
        throw CannotConclude("definiteness hypotheses fail; real invariant not constant");
    if (!run.two_adic_lemma.two_adic_ok)
        throw CannotConclude("2-adic coefficient hypotheses fail; 2-adic invariant unknown");

    std::vector<Int> bad_primes;
    for (const auto& e : run.bad.certified_bad) bad_primes.push_back(e.prime);
    run.adelic = adelic_existence(run.X1.g, bad_primes, opt.search);

    run.conclusions.push_back(
        {Place::archimedean(), LocalInvariant{1}, "definiteness lemma (real place)"});
    run.conclusions.push_back({Place::finite(2), LocalInvariant{0}, "2-adic coefficient lemma"});
    std::vector<SymbolRep> reps = brauer_reps(run.qx);
    for (const auto& e : run.bad.certified_bad) {
        if (e.prime == 2) continue;
        BadReductionCertificate cert{e.geometric_count, e.all_nodes};
        auto sample = sample_invariant_at(run.X1.g, reps, e.prime, opt.search);
        std::optional<LocalInvariant> si;
        if (sample) si = sample->invariant;
        LocalInvariant inv =
            conclude_finite_place(e.prime, ReductionStatus::Bad, cert, si);
        run.conclusions.push_back(
            {Place::finite(e.prime), inv, "bad-reduction constancy + sample evaluation"});
    }
    // all remaining odd places have good reduction: invariant 0 by the
    // good-reduction lemma; they contribute nothing to the sum.

    std::vector<std::pair<Place, LocalInvariant>> consts;
    for (const auto& c : run.conclusions) consts.emplace_back(c.place, c.inv);
    run.verdict = bm_verdict(run.adelic, consts);
    return run;
}

// Fixed checks for the companion surface X2: a rational point at height 1,
// a 2-adic point with nontrivial class, and a real point with trivial class.
struct CompanionChecks {
    bool rational_point_found = false; // [1,1,1] with w = 0
    WeightedPoint rational_point{};
    EvaluatedInvariant two_adic_eval{};  // at [-3,-1,1] over Q_2
    PAdicSqrt hensel{};                  // certified sqrt of the unit part of g(-3,-1,1)
    long hensel_valuation = 0;           // 2-adic valuation of g(-3,-1,1)
    EvaluatedInvariant real_eval{};      // at [4,3,3] over R
};

inline CompanionChecks check_companion_surface(const QuadricSextet& qy, const HomPoly& g2,
                                               unsigned long precision) {
    CompanionChecks c;
    WeightedPoint p1 = weighted_point(g2, 1, 1, 1);
    c.rational_point = p1;
    c.rational_point_found = p1.w_is_zero;
    std::vector<SymbolRep> reps = brauer_reps(qy);

    WeightedPoint p2 = weighted_point(g2, -3, -1, 1);
    c.two_adic_eval = eval_invariant(reps, p2, Place::finite(2));
    c.hensel_valuation = padic_valuation(p2.wsq, 2);
    if (c.hensel_valuation % 2 != 0) throw NotASquare("odd 2-adic valuation at [-3,-1,1]");
    c.hensel = hensel_sqrt(padic_unit_part(p2.wsq, 2), 2, precision);

    WeightedPoint p3 = weighted_point(g2, 4, 3, 3);
    c.real_eval = eval_invariant(reps, p3, Place::archimedean());
    return c;
}

// ---------------------------------------------------------------------------
// Certificate rendering (deterministic, diffable)

inline std::string point_str(const WeightedPoint& p) {
    return "[" + p.x0.get_str() + "," + p.x1.get_str() + "," + p.x2.get_str() + "]";
}

inline Certificate render_certificate(const VerdictRun& run) {
    Certificate c;
    c.kv("stage", "derive");
    c.kv("X1", "w^2 = " + run.X1.g.to_string(run.X1.var));
    c.kv("X2", "w^2 = " + run.X2.g.to_string(run.X2.var));
    c.blank();
    c.kv("stage", "smoothness");
    c.kv("D1 smooth", run.smooth1.smooth ? "true" : "false");
    c.kv("D1 shear", "(" + std::to_string(run.smooth1.shear.first) + "," +
                         std::to_string(run.smooth1.shear.second) + ")");
    c.kv("D2 smooth", run.smooth2.smooth ? "true" : "false");
    c.blank();
    c.kv("stage", "bad-primes");
    c.kv("search bound", std::to_string(run.bad.search_bound));
    c.kv("candidate digits", std::to_string(run.bad.candidate_integer.get_str().size()));
    for (const auto& e : run.bad.certified_bad) {
        std::string v = "bad";
        if (e.prime != 2) {
            v += ", nodes=" + std::to_string(e.geometric_count);
            v += e.all_nodes ? ", all ordinary double points" : ", not all nodes";
        } else {
            v += " (residue characteristic 2)";
        }
        c.kv("p=" + e.prime.get_str(), v);
    }
    c.blank();
    c.kv("stage", "lemmas");
    c.kv("real-place hypotheses", run.real_lemma.real_ok ? "true" : "false");
    c.kv("2-adic hypotheses", run.two_adic_lemma.two_adic_ok ? "true" : "false");
    c.blank();
    c.kv("stage", "adelic");
    for (const auto& [place, f] : run.adelic.per_place) {
        std::string v;
        switch (f.status) {
            case PlaceStatus::PointFound:
                v = "point " + point_str(*f.point);
                break;
            case PlaceStatus::WeilBound:
                v = "Weil bound";
                break;
            default:
                v = "unknown";
        }
        c.kv("v=" + place.to_string(), v);
    }
    c.kv("other good places", run.adelic.weil_for_remaining ? "Weil bound" : "unknown");
    c.kv("adelic points", run.adelic.has_adelic_points ? "true" : "false");
    c.blank();
    c.kv("stage", "invariants");
    for (const auto& pc : run.conclusions)
        c.kv("inv at v=" + pc.place.to_string(), pc.inv.to_string() + "  [" + pc.basis + "]");
    c.kv("inv at all other places", "0  [good reduction]");
    c.blank();
    c.kv("stage", "verdict");
    c.kv("invariant sum", run.verdict.invariant_sum_constant.to_string());
    c.kv("obstructed", run.verdict.obstructed ? "true" : "false");
    return c;
}

inline Certificate render_companion_certificate(const CompanionChecks& c) {
    Certificate out;
    out.kv("stage", "companion-surface");
    out.kv("rational point", point_str(c.rational_point) +
                                 (c.rational_point_found ? " with w = 0" : " NOT on the surface"));
    out.kv("2-adic point class", c.two_adic_eval.invariant.to_string() + "  via " +
                                     c.two_adic_eval.representative);
    out.kv("hensel", "sqrt exists: value^2 = unit mod 2^" + std::to_string(c.hensel.precision) +
                         ", valuation " + std::to_string(c.hensel_valuation));
    out.kv("real point class",
           c.real_eval.invariant.to_string() + "  via " + c.real_eval.representative);
    return out;
}

inline Certificate render_sod_certificate() {
    Certificate out;
    MutationTrace t = mutation_identity_trace();
    out.kv("stage", "mutation-identity");
    for (std::size_t i = 0; i < t.steps.size(); ++i)
        out.kv("step " + std::to_string(i + 1), t.steps[i]);
    std::string set1;
    for (const auto& p : t.residual_1) set1 += p.to_string();
    std::string set2;
    for (const auto& p : t.residual_2) set2 += p.to_string();
    out.kv("residual 1", set1);
    out.kv("residual 2", set2);
    out.kv("identical", t.identical ? "true" : "false");
    return out;
}

} // namespace k3
