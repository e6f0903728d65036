#include <catch2/catch_amalgamated.hpp>

#include "k3/homopoly.hpp"
#include "k3/integers.hpp"

using namespace k3;

namespace {

HomPoly random_poly(SplitMix64& rng, int degree, int coeff_range = 9) {
    HomPoly p(degree);
    for (int e0 = 0; e0 <= degree; ++e0)
        for (int e1 = 0; e0 + e1 <= degree; ++e1) {
            int e2 = degree - e0 - e1;
            long c = static_cast<long>(rng.next() % (2 * static_cast<unsigned>(coeff_range) + 1)) -
                     coeff_range;
            if (c != 0) p.set_coeff({e0, e1, e2}, Rat(c));
        }
    return p;
}

} // namespace

TEST_CASE("monomial construction and canonical string") {
    HomPoly p(6);
    p.set_coeff({6, 0, 0}, Rat(-4));
    p.set_coeff({5, 1, 0}, Rat(-308));
    CHECK(p.to_string() == "-4*x0^6 - 308*x0^5*x1");
    CHECK(HomPoly::parse(p.to_string()).terms() == p.terms());
}

TEST_CASE("parse accepts signs, coefficients, and powers") {
    HomPoly p = HomPoly::parse("x0^2 - 3*x1*x2 + 2*x2^2");
    CHECK(p.degree() == 2);
    CHECK(p.coeff({2, 0, 0}) == 1);
    CHECK(p.coeff({0, 1, 1}) == -3);
    CHECK(p.coeff({0, 0, 2}) == 2);
    CHECK_THROWS_AS(HomPoly::parse("x0 + x1^2"), ParseError); // inhomogeneous
    CHECK_THROWS_AS(HomPoly::parse(""), ParseError);
}

TEST_CASE("ring laws on random polynomials") {
    SplitMix64 rng(12345);
    for (int trial = 0; trial < 50; ++trial) {
        HomPoly a = random_poly(rng, 2), b = random_poly(rng, 2), c = random_poly(rng, 2);
        CHECK((a + b).terms() == (b + a).terms());
        CHECK((a * b).terms() == (b * a).terms());
        CHECK((a * (b + c)).terms() == (a * b + a * c).terms());
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    SplitMix64 rng(777);
    for (int trial = 0; trial < 40; ++trial) {
        HomPoly a = random_poly(rng, 3), b = random_poly(rng, 3);
        Rat v0(static_cast<long>(rng.next() % 13) - 6), v1(static_cast<long>(rng.next() % 13) - 6),
            v2(static_cast<long>(rng.next() % 13) - 6);
        CHECK((a + b).eval(v0, v1, v2) == a.eval(v0, v1, v2) + b.eval(v0, v1, v2));
        CHECK((a * b).eval(v0, v1, v2) == a.eval(v0, v1, v2) * b.eval(v0, v1, v2));
    }
}

TEST_CASE("Euler identity: sum of x_i * dP/dx_i = deg * P") {
    SplitMix64 rng(999);
    for (int trial = 0; trial < 30; ++trial) {
        int deg = 2 + static_cast<int>(rng.next() % 5);
        HomPoly p = random_poly(rng, deg);
        HomPoly euler = p.partial(0) * HomPoly::monomial(1, {1, 0, 0}) +
                        p.partial(1) * HomPoly::monomial(1, {0, 1, 0}) +
                        p.partial(2) * HomPoly::monomial(1, {0, 0, 1});
        CHECK(euler.terms() == (p * Rat(deg)).terms());
    }
}

TEST_CASE("content and primitive part") {
    HomPoly p = HomPoly::parse("6*x0^2 - 9*x1^2 + 12*x2^2");
    CHECK(p.content() == 3);
    CHECK(p.primitive_part().coeff({2, 0, 0}) == 2);
    CHECK(p.is_integral());
    HomPoly h = p * Rat(1, 2);
    CHECK(!h.is_integral());
}

TEST_CASE("reduction mod p and PolyModP evaluation") {
    HomPoly p = HomPoly::parse("7*x0^2 + 3*x1*x2 - 5*x2^2");
    PolyModP q = reduce_mod_p(p, Int(7));
    CHECK(q.eval(Int(1), Int(0), Int(0)) == 0);
    CHECK(q.eval(Int(0), Int(1), Int(1)) == mod_reduce(Int(3 - 5), Int(7)));
    HomPoly half = p * Rat(1, 7);
    CHECK_THROWS_AS(reduce_mod_p(half, Int(7)), NotPIntegral);
}
