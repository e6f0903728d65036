// End-to-end acceptance gate.  Each top-level criterion prints exactly one
// PASS/FAIL line; the binary fails if any criterion fails.

#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "k3/k3.hpp"

using namespace k3;

namespace {

BiForm22 load_divisor() {
    std::ifstream in(K3_DATA_DIR "/divisor_22.txt");
    REQUIRE(in.good());
    return BiForm22::parse_file(in);
}

std::vector<Int> load_extra_primes() {
    std::ifstream in(K3_DATA_DIR "/extra_primes.txt");
    REQUIRE(in.good());
    std::vector<Int> out;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t a = line.find_first_not_of(" \t");
        if (a == std::string::npos || line[a] == '#') continue;
        std::size_t b = line.find_last_not_of(" \t\r");
        out.emplace_back(line.substr(a, b - a + 1));
    }
    return out;
}

struct TableRow {
    Int p;
    long x0, x1, x2;
};

std::vector<TableRow> load_qp_table() {
    std::ifstream in(K3_DATA_DIR "/qp_points.txt");
    REQUIRE(in.good());
    std::vector<TableRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string p;
        TableRow r;
        ls >> p >> r.x0 >> r.x1 >> r.x2;
        REQUIRE(!ls.fail());
        r.p = Int(p);
        rows.push_back(r);
    }
    return rows;
}

void report(int n, const std::string& label, bool ok) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", n, label.c_str());
    std::fflush(stdout);
    CHECK(ok);
}

// exponent order: descending lex on (e0, e1, e2), matching canonical printing
const std::array<Exp3, 28> kExps{{{6, 0, 0}, {5, 1, 0}, {5, 0, 1}, {4, 2, 0}, {4, 1, 1},
                                  {4, 0, 2}, {3, 3, 0}, {3, 2, 1}, {3, 1, 2}, {3, 0, 3},
                                  {2, 4, 0}, {2, 3, 1}, {2, 2, 2}, {2, 1, 3}, {2, 0, 4},
                                  {1, 5, 0}, {1, 4, 1}, {1, 3, 2}, {1, 2, 3}, {1, 1, 4},
                                  {1, 0, 5}, {0, 6, 0}, {0, 5, 1}, {0, 4, 2}, {0, 3, 3},
                                  {0, 2, 4}, {0, 1, 5}, {0, 0, 6}}};
const std::array<long, 28> kX1{-4,  -308, 18,  -190, 460, -25,  -278, 276,  -820, 20,
                               -203, 474, -247, 652,  -20, -40,  40,   -374, 14,   -562,
                               -8,   -28, 98,   -2,   270, -105, 166,  -4};
const std::array<long, 28> kX2{236,  -740, -616, 1268, 416,  1236, -1092, -96,  -456, -1332,
                               624,  -976, 1484, -804, 1036, -164, 548,   -356, -372, 768,
                               -472, 32,   -288, 676,  -1024, 812, -388,  40};

HomPoly from_table(const std::array<long, 28>& coeffs) {
    HomPoly g(6);
    for (std::size_t i = 0; i < 28; ++i) g.set_coeff(kExps[i], Rat(coeffs[i]));
    return g;
}

struct Shared {
    BiForm22 z;
    QuadricSextet qx, qy;
    HomPoly g1, g2;
};

Shared& shared() {
    static Shared s = [] {
        Shared t;
        t.z = load_divisor();
        t.qx = extract_quadrics(t.z, Side::X);
        t.qy = extract_quadrics(t.z, Side::Y);
        t.g1 = k3_equation(discriminant_matrix(t.qx), Side::X).g;
        t.g2 = k3_equation(discriminant_matrix(t.qy), Side::Y).g;
        return t;
    }();
    return s;
}

} // namespace

TEST_CASE("criterion 1: derived equations match the published coefficients") {
    auto& s = shared();
    HomPoly e1 = from_table(kX1), e2 = from_table(kX2);
    bool ok = (s.g1 == e1) && (s.g2 == e2) && s.g1.to_string("x") == e1.to_string("x") &&
              s.g2.to_string("y") == e2.to_string("y") &&
              s.g1.to_string("x").rfind("-4*x0^6 - 308*x0^5*x1", 0) == 0 &&
              s.g2.to_string("y").rfind("236*y0^6 - 740*y0^5*y1", 0) == 0;
    report(1, "both derived sextics match all 28+28 published coefficients", ok);
}

TEST_CASE("criterion 2: both sextics certified smooth over Q") {
    auto& s = shared();
    auto t0 = std::chrono::steady_clock::now();
    SmoothnessCertificate c1 = is_smooth_sextic(s.g1);
    SmoothnessCertificate c2 = is_smooth_sextic(s.g2);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = c1.smooth && c2.smooth && c1.chain_resultant != 0 && c2.chain_resultant != 0 &&
              secs < 30.0;
    report(2, "smoothness certificates for both surfaces within 30s", ok);
}

TEST_CASE("criterion 3: the bad-prime list") {
    auto& s = shared();
    std::vector<Int> extra = load_extra_primes();
    bool ok = extra.size() == 5;

    BadPrimeReport small = bad_prime_candidates(s.g1, 1000000, {});
    std::set<Int> found_small;
    for (const auto& e : small.certified_bad) found_small.insert(e.prime);
    std::set<Int> want_small{Int(2), Int(5), Int(7), Int(307), Int(4591), Int(27077), Int(371857)};
    ok = ok && found_small == want_small;

    BadPrimeReport full = bad_prime_candidates(s.g1, 1000000, extra);
    std::set<Int> found_full;
    for (const auto& e : full.certified_bad) found_full.insert(e.prime);
    std::set<Int> want_full = want_small;
    for (const auto& p : extra) want_full.insert(p);
    ok = ok && found_full == want_full && found_full.size() == 12;
    report(3, "trial division finds {2,5,7,307,4591,27077,371857}; with external factors all 12",
           ok);
}

TEST_CASE("criterion 4: all 17 local-point table rows verify") {
    auto& s = shared();
    std::vector<TableRow> rows = load_qp_table();
    bool ok = rows.size() == 17;
    for (const auto& r : rows) {
        Rat w = s.g1.eval(Rat(r.x0), Rat(r.x1), Rat(r.x2));
        bool row_ok = (w == 0) || is_square_local(w, Place::finite(r.p));
        if (!row_ok) UNSCOPED_INFO("row fails at p = " << r.p.get_str());
        ok = ok && row_ok;
    }
    report(4, "all 17 tabulated Q_p-points lie on the first surface", ok);
}

TEST_CASE("criterion 5: coefficient lemmas and node certificates") {
    auto& s = shared();
    bool ok = check_real_lemma(s.qx).real_ok && check_2adic_lemma(s.qx).two_adic_ok;
    std::vector<Int> extra = load_extra_primes();
    BadPrimeReport full = bad_prime_candidates(s.g1, 1000000, extra);
    int odd_checked = 0;
    for (const auto& e : full.certified_bad) {
        if (e.prime == 2) continue;
        ++odd_checked;
        bool mild = e.all_nodes && e.geometric_count > 0 && e.geometric_count < 8;
        if (!mild) UNSCOPED_INFO("no mild-singularity certificate at " << e.prime.get_str());
        ok = ok && mild;
    }
    ok = ok && odd_checked == 11;
    report(5, "real + 2-adic lemmas hold; <8 ordinary double points at every odd bad prime", ok);
}

TEST_CASE("criterion 6: the obstruction verdict") {
    auto& s = shared();
    PipelineOptions opt;
    opt.extra_primes = load_extra_primes();
    VerdictRun run = run_verdict_pipeline(s.z, opt);
    bool ok = run.verdict.obstructed && run.adelic.has_adelic_points &&
              run.verdict.invariant_sum_constant.half == 1;
    for (const auto& c : run.conclusions) {
        if (c.place.real)
            ok = ok && c.inv.half == 1;
        else
            ok = ok && c.inv.half == 0;
    }
    ok = ok && run.conclusions.size() == 13; // real + 2 + 11 odd bad primes
    report(6, "invariant 0 at finite places, 1/2 at the real place; sum 1/2; obstructed", ok);
}

TEST_CASE("criterion 7: the companion surface") {
    auto& s = shared();
    CompanionChecks c = check_companion_surface(s.qy, s.g2, 64);
    bool ok = c.rational_point_found && c.rational_point.x0 == 1 && c.rational_point.x1 == 1 &&
              c.rational_point.x2 == 1;
    ok = ok && c.two_adic_eval.invariant.half == 1; // alpha_2 = 1/2 at [-3,-1,1] over Q_2
    ok = ok && c.real_eval.invariant.half == 0;     // alpha_2 = 0 at [4,3,3] over R
    ok = ok && c.hensel.prime == 2 && c.hensel_valuation == 4;
    Int pk;
    mpz_pow_ui(pk.get_mpz_t(), Int(2).get_mpz_t(), c.hensel.precision);
    ok = ok && mod_reduce(c.hensel.value * c.hensel.value - Int(22313), pk) == 0;
    report(7, "Q-point [1,1,1] on the companion; 2-adic 1/2 and real 0 samples; Hensel 357008",
           ok);
}

TEST_CASE("criterion 8: property suites") {
    bool ok = true;
    // (a) >= 1000 Hilbert pairs: symmetry, bimultiplicativity, (a,-a)=1, product formula
    {
        SplitMix64 rng(777);
        auto rnd = [&] {
            static const long ps[] = {2, 3, 5, 7, 11, 13};
            Rat r(1);
            for (long q : ps) {
                int e = static_cast<int>(rng.next() % 5) - 2;
                for (int i = 0; i < e; ++i) r *= Rat(q);
                for (int i = 0; i < -e; ++i) r /= Rat(q);
            }
            return rng.next() % 2 ? -r : r;
        };
        std::vector<Place> places{Place::archimedean()};
        for (long q : {2L, 3L, 5L, 7L, 11L, 13L}) places.push_back(Place::finite(q));
        int pairs = 0;
        for (int t = 0; t < 160 && ok; ++t) {
            Rat a = rnd(), b = rnd(), c = rnd();
            int prod = 1;
            for (const auto& v : places) {
                int ab = hilbert_symbol(a, b, v);
                ok = ok && ab == hilbert_symbol(b, a, v);
                ok = ok && hilbert_symbol(a * c, b, v) == ab * hilbert_symbol(c, b, v);
                ok = ok && hilbert_symbol(a, -a, v) == 1;
                prod *= ab;
                ++pairs;
            }
            ok = ok && prod == 1;
        }
        ok = ok && pairs >= 1000;
    }
    // (b) >= 500 pairs against the conic-solvability oracle at p in {2,3,5,7}
    {
        SplitMix64 rng(888);
        int pairs = 0;
        for (long pl : {2L, 3L, 5L, 7L}) {
            Int p(pl);
            unsigned long N = pl == 2 ? 5 : 3;
            Int pn;
            mpz_pow_ui(pn.get_mpz_t(), p.get_mpz_t(), N);
            unsigned long M = pn.get_ui(), pu = static_cast<unsigned long>(pl);
            std::vector<char> sq(M, 0), squ(M, 0);
            for (unsigned long zz = 0; zz < M; ++zz) {
                unsigned long t = static_cast<unsigned long>(
                    static_cast<unsigned long long>(zz) * zz % M);
                sq[t] = 1;
                if (zz % pu != 0) squ[t] = 1;
            }
            auto reduce = [&](const Rat& r) {
                Rat u = padic_unit_part(r, p);
                Int rep = u.get_num() * u.get_den();
                if (padic_valuation(r, p) % 2 != 0) rep *= p;
                return mod_reduce(rep, pn).get_ui();
            };
            auto oracle = [&](const Rat& a, const Rat& b) {
                unsigned long am = reduce(a), bm = reduce(b);
                for (unsigned long x = 0; x < M; ++x) {
                    unsigned long ax = static_cast<unsigned long>(
                        static_cast<unsigned long long>(am) * (x * x % M) % M);
                    for (unsigned long y = 0; y < M; ++y) {
                        unsigned long t = static_cast<unsigned long>(
                            (ax + static_cast<unsigned long long>(bm) * (y * y % M)) % M);
                        if ((x % pu != 0 || y % pu != 0) ? sq[t] : squ[t]) return 1;
                    }
                }
                return -1;
            };
            for (int t = 0; t < 130 && ok; ++t) {
                long an = static_cast<long>(rng.next() % 4000) - 2000;
                long bn = static_cast<long>(rng.next() % 4000) - 2000;
                if (an == 0) an = 1;
                if (bn == 0) bn = -1;
                Rat a(an), b(bn);
                ok = ok && hilbert_symbol(a, b, Place::finite(p)) == oracle(a, b);
                ++pairs;
            }
        }
        ok = ok && pairs >= 500;
    }
    // (c) >= 200 pairs: resultant vanishes iff the gcd is nontrivial
    {
        SplitMix64 rng(999);
        QField K;
        PolyRing<QField> ring{K};
        auto rnd_poly = [&](int deg) {
            UPoly<QField> f(static_cast<std::size_t>(deg) + 1);
            for (auto& c : f) c = Rat(static_cast<long>(rng.next() % 11) - 5);
            f[static_cast<std::size_t>(deg)] = Rat(static_cast<long>(rng.next() % 5) + 1);
            return f;
        };
        for (int t = 0; t < 210 && ok; ++t) {
            UPoly<QField> f = rnd_poly(3 + static_cast<int>(rng.next() % 3));
            UPoly<QField> g = rnd_poly(2 + static_cast<int>(rng.next() % 3));
            if (t % 3 == 0) {
                UPoly<QField> common = rnd_poly(1);
                f = poly_mul(K, f, common);
                g = poly_mul(K, g, common);
            }
            Rat res = resultant_uni(f, g);
            UPoly<QField> d = poly_gcd(K, f, g);
            ok = ok && ((res == 0) == (poly_deg<QField>(d) > 0));
        }
    }
    // (d) character-sum point counts vs exhaustive enumeration, p <= 31
    {
        SplitMix64 rng(1234);
        const long primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
        for (int t = 0; t < 20 && ok; ++t) {
            HomPoly g(6);
            for (int e0 = 0; e0 <= 6; ++e0)
                for (int e1 = 0; e0 + e1 <= 6; ++e1) {
                    long c = static_cast<long>(rng.next() % 19) - 9;
                    if (c != 0) g.set_coeff({e0, e1, 6 - e0 - e1}, Rat(c));
                }
            long p = primes[t % 10];
            PolyModP gp = reduce_mod_p(g, Int(p));
            long affine = 0;
            for (long a = 0; a < p; ++a)
                for (long b = 0; b < p; ++b)
                    for (long cc = 0; cc < p; ++cc) {
                        if (a == 0 && b == 0 && cc == 0) continue;
                        Int v = gp.eval(Int(a), Int(b), Int(cc));
                        long vl = v.get_si();
                        for (long w = 0; w < p; ++w)
                            if ((w * w - vl) % p == 0) ++affine;
                    }
            ok = ok && affine % (p - 1) == 0 && count_points_mod_p(g, Int(p)) == affine / (p - 1);
        }
    }
    report(8, "Hilbert-symbol axioms, solvability oracle, resultant/gcd, and point-count suites",
           ok);
}

TEST_CASE("criterion 9: the mutation identity") {
    MutationTrace t = mutation_identity_trace();
    std::set<PicClass> expect{PicClass{1, 0}, PicClass{0, 1}, PicClass{1, 1},
                              PicClass{2, 1}, PicClass{1, 2}, PicClass{2, 2}};
    bool ok = verify_mutation_identity() && t.identical && t.residual_1 == expect &&
              t.residual_2 == expect;
    report(9, "residual categories match: {(1,0),(0,1),(1,1),(2,1),(1,2),(2,2)}", ok);
}
