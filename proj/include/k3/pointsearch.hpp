#pragma once

// Point search on double sextics w^2 = g over F_p, Q_p, R, and Q, adelic
// existence reports, and the Brauer-Manin verdict.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3/brauer.hpp"
#include "k3/errors.hpp"
#include "k3/homopoly.hpp"
#include "k3/integers.hpp"
#include "k3/localfields.hpp"

namespace k3 {

struct SearchConfig {
    long height_bound = 64;
    unsigned long padic_precision = 64;
    std::uint64_t prime_enumeration_bound = 22;
    void validate() const {
        if (height_bound <= 0 || padic_precision == 0 || prime_enumeration_bound == 0)
            throw InvalidInput("search bounds must be positive");
    }
};

// Deterministic enumeration of primitive triples: max-norm shells, then
// lexicographic; one representative per antipodal pair (first nonzero
// coordinate positive).
template <class Fn>
void for_each_primitive_triple(long height, Fn&& fn) {
    for (long h = 1; h <= height; ++h)
        for (long a = -h; a <= h; ++a)
            for (long b = -h; b <= h; ++b)
                for (long c = -h; c <= h; ++c) {
                    if (std::max({std::abs(a), std::abs(b), std::abs(c)}) != h) continue;
                    long first = a != 0 ? a : (b != 0 ? b : c);
                    if (first < 0) continue;
                    long g = std::abs(a);
                    g = std::gcd(g, std::abs(b));
                    g = std::gcd(g, std::abs(c));
                    if (g != 1) continue;
                    if (!fn(a, b, c)) return;
                }
}

// #{[x0,x1,x2,w] in P(1,1,1,3)(F_p) : w^2 = g}, computed as
// sum over P^2(F_p) of (1 + chi(g)) with chi the quadratic character,
// chi(0) = 0 (branch points count once).
inline long count_points_mod_p(const HomPoly& g, const Int& prime) {
    if (prime == 2 || !is_probable_prime(prime)) throw InvalidInput("need an odd prime");
    if (prime > Int(1000000)) throw InvalidInput("counting is exhaustive; prime too large");
    PolyModP gp = reduce_mod_p(g, prime);
    const std::uint64_t p = prime.get_ui();
    // quadratic-residue table
    std::vector<signed char> chi(p, -1);
    chi[0] = 0;
    for (std::uint64_t t = 1; t < p; ++t)
        chi[static_cast<std::size_t>(static_cast<unsigned __int128>(t) * t % p)] = 1;
    struct Term {
        int e0, e1, e2;
        std::uint64_t c;
    };
    std::vector<Term> terms;
    for (const auto& [e, c] : gp.terms()) terms.push_back({e[0], e[1], e[2], c.get_ui()});
    const int deg = g.degree();
    std::vector<std::uint64_t> powa(static_cast<std::size_t>(deg) + 1),
        powb(static_cast<std::size_t>(deg) + 1), powc(static_cast<std::size_t>(deg) + 1);
    auto val = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) {
        powa[0] = powb[0] = powc[0] = 1;
        for (int i = 1; i <= deg; ++i) {
            powa[static_cast<std::size_t>(i)] =
                static_cast<std::uint64_t>(static_cast<unsigned __int128>(powa[i - 1]) * a % p);
            powb[static_cast<std::size_t>(i)] =
                static_cast<std::uint64_t>(static_cast<unsigned __int128>(powb[i - 1]) * b % p);
            powc[static_cast<std::size_t>(i)] =
                static_cast<std::uint64_t>(static_cast<unsigned __int128>(powc[i - 1]) * c % p);
        }
        unsigned __int128 acc = 0;
        for (const auto& t : terms) {
            unsigned __int128 v = t.c;
            v = v * powa[static_cast<std::size_t>(t.e0)] % p;
            v = v * powb[static_cast<std::size_t>(t.e1)] % p;
            v = v * powc[static_cast<std::size_t>(t.e2)] % p;
            acc += static_cast<std::uint64_t>(v);
        }
        return static_cast<std::uint64_t>(acc % p);
    };
    long count = 0;
    auto tally = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) {
        count += 1 + chi[static_cast<std::size_t>(val(a, b, c))];
    };
    for (std::uint64_t b = 0; b < p; ++b)
        for (std::uint64_t c = 0; c < p; ++c) tally(1, b, c);
    for (std::uint64_t c = 0; c < p; ++c) tally(0, 1, c);
    tally(0, 0, 1);
    return count;
}

// First primitive triple (in enumeration order) whose g-value is zero or a
// p-adic square; the returned point is re-verified through is_square_local.
inline WeightedPoint find_qp_point(const HomPoly& g, const Int& prime, const SearchConfig& cfg) {
    cfg.validate();
    Place v = Place::finite(prime);
    std::optional<WeightedPoint> found;
    for_each_primitive_triple(cfg.height_bound, [&](long a, long b, long c) {
        Rat w = g.eval(Rat(a), Rat(b), Rat(c));
        if (w == 0 || is_square_local(w, v)) {
            found = WeightedPoint{Int(a), Int(b), Int(c), w, w == 0};
            return false;
        }
        return true;
    });
    if (!found)
        throw NotFound("no Q_" + prime.get_str() + "-point found up to height " +
                       std::to_string(cfg.height_bound) + " (not a proof of emptiness)");
    return *found;
}

// All primitive triples up to the height bound whose g-value is a rational
// square (including 0).
inline std::vector<WeightedPoint> find_rational_points(const HomPoly& g, const SearchConfig& cfg) {
    cfg.validate();
    std::vector<WeightedPoint> out;
    for_each_primitive_triple(cfg.height_bound, [&](long a, long b, long c) {
        Rat w = g.eval(Rat(a), Rat(b), Rat(c));
        if (w == 0 || (w > 0 && is_perfect_square(w.get_num()) && is_perfect_square(w.get_den())))
            out.push_back(WeightedPoint{Int(a), Int(b), Int(c), w, w == 0});
        return true;
    });
    return out;
}

// A real point exists iff g takes a nonnegative value on R^3 \ {0}; searched
// on the deterministic grid.  Failure is reported as unknown, never as
// nonexistence.
inline std::optional<WeightedPoint> find_real_point(const HomPoly& g, const SearchConfig& cfg) {
    cfg.validate();
    std::optional<WeightedPoint> found;
    for_each_primitive_triple(cfg.height_bound, [&](long a, long b, long c) {
        Rat w = g.eval(Rat(a), Rat(b), Rat(c));
        if (w >= 0) {
            found = WeightedPoint{Int(a), Int(b), Int(c), w, w == 0};
            return false;
        }
        return true;
    });
    return found;
}

enum class PlaceStatus { PointFound, WeilBound, Unknown };

struct PlaceFinding {
    PlaceStatus status = PlaceStatus::Unknown;
    std::optional<WeightedPoint> point;
};

struct AdelicReport {
    std::vector<std::pair<Place, PlaceFinding>> per_place;
    bool weil_for_remaining = false; // all other good odd p > prime bound
    bool has_adelic_points = false;
    std::string failing_place; // named when the verdict is false
};

// Adelic existence: the real place by sign search, every p below the
// enumeration bound and every certified bad prime by explicit Q_p-points, and
// the remaining good places by the Weil-bound certificate (valid once both
// smoothness over Q and the bad-prime list are certified, which the caller
// attests by supplying that list).
inline AdelicReport adelic_existence(const HomPoly& g, const std::vector<Int>& bad_primes,
                                     const SearchConfig& cfg) {
    cfg.validate();
    AdelicReport rep;
    rep.weil_for_remaining = true;
    rep.has_adelic_points = true;
    auto record = [&](const Place& v, PlaceFinding f) {
        if (f.status == PlaceStatus::Unknown && rep.has_adelic_points) {
            rep.has_adelic_points = false;
            rep.failing_place = v.to_string();
        }
        rep.per_place.emplace_back(v, std::move(f));
    };
    {
        PlaceFinding f;
        if (auto pt = find_real_point(g, cfg)) {
            f.status = PlaceStatus::PointFound;
            f.point = *pt;
        }
        record(Place::archimedean(), f);
    }
    std::vector<Int> finite;
    for (std::uint64_t p : primes_below(cfg.prime_enumeration_bound))
        finite.push_back(Int(static_cast<unsigned long>(p)));
    for (const Int& p : bad_primes)
        if (std::find(finite.begin(), finite.end(), p) == finite.end()) finite.push_back(p);
    std::sort(finite.begin(), finite.end());
    for (const Int& p : finite) {
        PlaceFinding f;
        try {
            WeightedPoint pt = find_qp_point(g, p, cfg);
            f.status = PlaceStatus::PointFound;
            f.point = pt;
        } catch (const NotFound&) {
            f.status = PlaceStatus::Unknown;
        }
        record(Place::finite(p), f);
    }
    return rep;
}

struct ObstructionVerdict {
    LocalInvariant invariant_sum_constant; // sum of the constant local invariants
    bool obstructed = false;               // adelic points exist and the sum is nonzero
};

// Sums constant per-place invariants (all unlisted places contribute 0).
inline ObstructionVerdict bm_verdict(const AdelicReport& adelic,
                                     const std::vector<std::pair<Place, LocalInvariant>>& constants) {
    ObstructionVerdict v;
    int total = 0;
    for (const auto& [place, inv] : constants) total += inv.half;
    v.invariant_sum_constant = LocalInvariant{total % 2};
    v.obstructed = adelic.has_adelic_points && !v.invariant_sum_constant.is_zero();
    return v;
}

} // namespace k3
