#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <fstream>

#include "k3/divisor.hpp"
#include "k3/smoothness.hpp"

using namespace k3;

namespace {

HomPoly sextic(const std::string& text) {
    HomPoly p = HomPoly::parse(text, "x");
    REQUIRE(p.degree() == 6);
    return p;
}

bool contains(const std::vector<ProjPointModP>& pts, long a, long b, long c) {
    return std::find(pts.begin(), pts.end(), ProjPointModP{Int(a), Int(b), Int(c)}) != pts.end();
}

} // namespace

TEST_CASE("shear sequence starts at the identity and has distinct entries") {
    const auto& s = shear_sequence();
    REQUIRE(s.size() >= 20);
    CHECK(s[0] == std::make_pair(0, 0));
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) CHECK(s[i] != s[j]);
}

TEST_CASE("shear is a substitution homomorphism") {
    HomPoly g = sextic("x0^6 - 2*x0^3*x1^2*x2 + 7*x1^6 + x2^6");
    HomPoly sheared = apply_shear(g, 2, -1);
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b)
            for (long c = -2; c <= 2; ++c)
                CHECK(sheared.eval(Rat(a), Rat(b), Rat(c)) ==
                      g.eval(Rat(a) + 2 * Rat(c), Rat(b) - Rat(c), Rat(c)));
}

TEST_CASE("Fermat sextic is smooth") {
    SmoothnessCertificate cert = is_smooth_sextic(sextic("x0^6 + x1^6 + x2^6"));
    CHECK(cert.smooth);
    CHECK(cert.chain_resultant != 0);
}

TEST_CASE("visibly singular sextics are rejected with a witness") {
    SECTION("x0^2 * x1^4 is singular at [0,0,1]") {
        SmoothnessCertificate cert = is_smooth_sextic(sextic("x0^2*x1^4"));
        CHECK(!cert.smooth);
        REQUIRE(cert.singular_point.has_value());
        auto [a, b, c] = *cert.singular_point;
        HomPoly g = sextic("x0^2*x1^4");
        CHECK(g.eval(a, b, c) == 0);
        CHECK(g.partial(0).eval(a, b, c) == 0);
        CHECK(g.partial(1).eval(a, b, c) == 0);
        CHECK(g.partial(2).eval(a, b, c) == 0);
    }
    SECTION("an isolated double point over Q") {
        // x2^6 + x0^3 x1^3 is singular at [1,0,0] and [0,1,0]
        SmoothnessCertificate cert = is_smooth_sextic(sextic("x2^6 + x0^3*x1^3"));
        CHECK(!cert.smooth);
    }
}

TEST_CASE("singular points mod p by scan and by elimination agree") {
    // g = x0^2 x1^4 has singular locus {x0 = 0} union {x1 = 0} minus overlaps;
    // use a curve with isolated singularities instead:
    // g = x2^6 + x0^3 x1^3 is singular exactly at [1,0,0] and [0,1,0]
    HomPoly g = sextic("x2^6 + x0^3*x1^3");
    for (long pl : {5L, 7L, 11L, 13L}) {
        Int p(pl);
        auto scan = singular_points_scan(g, p);
        std::sort(scan.begin(), scan.end());
        CHECK(scan.size() == 2);
        CHECK(contains(scan, 1, 0, 0));
        CHECK(contains(scan, 0, 1, 0));
        auto elim = singular_points_mod_p(g, p, /*scan_threshold=*/0);
        std::sort(elim.begin(), elim.end());
        CHECK(scan == elim);
    }
}

TEST_CASE("ordinary double point recognition") {
    // x2^6 + x0^3 x1^3: at [1,0,0] the local equation is x2^6 + x1^3 -- not a node
    HomPoly cusp = sextic("x2^6 + x0^3*x1^3");
    CHECK(!is_ordinary_double_point(cusp, Int(7), ProjPointModP{1, 0, 0}));
    // x0^4 (x1^2 - x2^2) + x1^6 + x1^5 x2: at [1,0,0] local equation starts
    // with x1^2 - x2^2, a nondegenerate quadratic: a node
    HomPoly node = sextic("x0^4*x1^2 - x0^4*x2^2 + x1^6 + x1^5*x2");
    CHECK(is_ordinary_double_point(node, Int(7), ProjPointModP{1, 0, 0}));
    CHECK(is_ordinary_double_point(node, Int(11), ProjPointModP{1, 0, 0}));
    // degenerate quadratic part x1^2 only: not a node
    HomPoly notnode = sextic("x0^4*x1^2 + x1^6 + x2^6");
    CHECK(!is_ordinary_double_point(notnode, Int(7), ProjPointModP{1, 0, 0}));
}

TEST_CASE("geometric singular count sees points outside the prime field") {
    // x2^6 + x0^3 x1^3 mod p: singulars at [1,0,0], [0,1,0] only (geometric)
    HomPoly g = sextic("x2^6 + x0^3*x1^3");
    GeometricSingularReport rep = geometric_singular_report(g, Int(7));
    CHECK(!rep.degenerate);
    CHECK(rep.geometric_count == 2);
    CHECK(rep.rational_points.size() == 2);

    // x0^6 + x1^6 + x2^6 mod 7: gradient zero forces x^5 terms... the Fermat
    // sextic is smooth mod 7 (7 does not divide 6), count 0
    GeometricSingularReport sm = geometric_singular_report(sextic("x0^6 + x1^6 + x2^6"), Int(7));
    CHECK(sm.geometric_count == 0);

    // a conjugate pair not rational over F_5: g with singular points at
    // x1^2 = 2 x0^2 (2 is a non-square mod 5).  Take g = (x1^2 - 2 x0^2)^2 x2^2 + x0^6 + c...
    // simpler: verify count parity via an extension-only example
    HomPoly e = sextic("x2^6 + x0^6 - 4*x0^3*x1^3 + x1^6");
    // singular where grad = 0: 6x0^5 = 12 x0^2 x1^3, 6 x1^5 = 12 x1^2 x0^3, x2 = 0
    GeometricSingularReport er = geometric_singular_report(e, Int(5));
    auto brute = singular_points_scan(e, Int(5));
    CHECK(er.rational_points.size() == brute.size());
    CHECK(er.geometric_count >= static_cast<long>(brute.size()));
}

TEST_CASE("geometric report rejects even primes and vanishing reductions") {
    HomPoly g = sextic("x2^6 + x0^3*x1^3");
    CHECK_THROWS_AS(geometric_singular_report(g, Int(2)), InvalidInput);
    HomPoly h = sextic("7*x0^6 + 7*x1^6 + 7*x2^6");
    CHECK_THROWS_AS(geometric_singular_report(h, Int(7)), DegenerateReduction);
}

TEST_CASE("bad prime candidates for a diagonal sextic") {
    // w^2 = x0^6 + x1^6 + x2^6 has bad reduction within {2, 3} (the surface
    // needs p | 6 for the sextic to go singular); candidates must certify
    // nothing outside the divisors of the discriminant chain
    HomPoly g = sextic("x0^6 + x1^6 + x2^6");
    BadPrimeReport rep = bad_prime_candidates(g, 100000, {});
    REQUIRE(!rep.certified_bad.empty());
    CHECK(rep.certified_bad.front().prime == 2); // always listed by convention
    for (const auto& e : rep.certified_bad) {
        if (e.prime == 2) continue;
        GeometricSingularReport gr = geometric_singular_report(g, e.prime);
        CHECK((gr.degenerate || gr.geometric_count > 0));
    }
    SECTION("a prime with singular reduction is reported") {
        // h = x0^6 + x1^6 + x2^6 + 7 x0^4 x1 x2 reduces mod 7 to the Fermat
        // sextic (smooth), but h mod 5 gains singular points iff the scan
        // says so; the report must agree with the scan at 5
        HomPoly h = sextic("x0^6 + x1^6 + x2^6 + 7*x0^4*x1*x2");
        auto sing5 = singular_points_scan(h, Int(5));
        BadPrimeReport hr = bad_prime_candidates(h, 100000, {});
        bool has5 = false;
        for (const auto& e : hr.certified_bad) has5 = has5 || e.prime == 5;
        if (!sing5.empty()) CHECK(has5); // F_5-rational singulars force 5 into the report
    }
}

TEST_CASE("external primes must be prime and above the bound is allowed") {
    HomPoly g = sextic("x0^6 + x1^6 + x2^6");
    CHECK_THROWS_AS(bad_prime_candidates(g, 1000, {Int(1000003) * Int(1000033)}), InvalidInput);
}
