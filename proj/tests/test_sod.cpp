#include <catch2/catch_amalgamated.hpp>

#include "k3/sod.hpp"

using namespace k3;

TEST_CASE("Serre mutation moves the last bundle to the front, twisted by K") {
    ExceptionalList coll{SodEntry::marker("C"), SodEntry::line(1, 1), SodEntry::line(3, 2)};
    ExceptionalList out = serre_mutate_last_to_front(coll, canonical_class());
    REQUIRE(out.size() == 3);
    CHECK(!out[0].is_marker());
    CHECK(*out[0].cls == PicClass{1, 0});
    CHECK(out[1].is_marker());
    CHECK(*out[2].cls == PicClass{1, 1});

    SECTION("trivial canonical class is the cyclic rotation") {
        ExceptionalList rot = serre_mutate_last_to_front(coll, PicClass{0, 0});
        CHECK(*rot[0].cls == PicClass{3, 2});
    }
    SECTION("mutating a marker is rejected") {
        ExceptionalList bad{SodEntry::line(0, 0), SodEntry::marker("C")};
        CHECK_THROWS_AS(serre_mutate_last_to_front(bad, canonical_class()), InvalidInput);
        CHECK_THROWS_AS(serre_mutate_last_to_front({}, canonical_class()), InvalidInput);
    }
}

TEST_CASE("seven Serre mutations with K then -K restore the collection") {
    ExceptionalList coll = fibration_decomposition(false);
    ExceptionalList fwd = coll;
    // the marker blocks a full cycle; mutate the six line bundles forward...
    for (int i = 0; i < 6; ++i) fwd = serre_mutate_last_to_front(fwd, canonical_class());
    // ...then undo: move fronts to the back untwisted
    ExceptionalList back = fwd;
    for (int i = 0; i < 6; ++i) {
        SodEntry front = back.front();
        REQUIRE(!front.is_marker());
        back.erase(back.begin());
        back.push_back(SodEntry{*front.cls + PicClass{2, 2}, {}});
    }
    REQUIRE(back.size() == coll.size());
    for (std::size_t i = 0; i < coll.size(); ++i) {
        CHECK(back[i].is_marker() == coll[i].is_marker());
        if (!coll[i].is_marker()) CHECK(*back[i].cls == *coll[i].cls);
    }
}

TEST_CASE("marker mutation is bookkept with a renamed marker") {
    ExceptionalList coll{SodEntry::line(1, 0), SodEntry::marker("C1"), SodEntry::line(0, 1)};
    ExceptionalList out = mutate_marker_past_front(coll);
    CHECK(out[0].is_marker());
    CHECK(out[0].marker_name == "L_{O(1,0)}(C1)");
    CHECK(*out[1].cls == PicClass{1, 0});
    CHECK_THROWS_AS(mutate_marker_past_front({SodEntry::marker("C"), SodEntry::marker("D")}),
                    InvalidState);
    CHECK_THROWS_AS(mutate_marker_past_front({SodEntry::line(0, 0), SodEntry::line(1, 1)}),
                    InvalidState);
}

TEST_CASE("residual orthogonal extraction") {
    ExceptionalList coll{SodEntry::marker("C"), SodEntry::line(1, 0), SodEntry::line(0, 1)};
    auto s = residual_orthogonal(coll);
    CHECK(s == std::set<PicClass>{PicClass{1, 0}, PicClass{0, 1}});
    CHECK_THROWS_AS(residual_orthogonal({SodEntry::line(0, 0)}), InvalidState);
    CHECK_THROWS_AS(
        residual_orthogonal({SodEntry::marker("C"), SodEntry::marker("D")}), InvalidState);
}

TEST_CASE("the two fibration decompositions are H1 <-> H2 mirror images") {
    ExceptionalList a = fibration_decomposition(false);
    ExceptionalList b = fibration_decomposition(true);
    REQUIRE(a.size() == b.size());
    CHECK(a[0].marker_name == "C1");
    CHECK(b[0].marker_name == "C2");
    for (std::size_t i = 1; i < a.size(); ++i) {
        CHECK(a[i].cls->a == b[i].cls->b);
        CHECK(a[i].cls->b == b[i].cls->a);
    }
}

TEST_CASE("mutation identity holds with the expected residual set") {
    MutationTrace t = mutation_identity_trace();
    CHECK(t.identical);
    std::set<PicClass> expect{PicClass{1, 0}, PicClass{0, 1}, PicClass{1, 1},
                              PicClass{2, 1}, PicClass{1, 2}, PicClass{2, 2}};
    CHECK(t.residual_1 == expect);
    CHECK(t.residual_2 == expect);
    CHECK(t.steps.size() == 6);
    CHECK(verify_mutation_identity());

    SECTION("a perturbed collection breaks the identity") {
        ExceptionalList coll = fibration_decomposition(false);
        coll.back() = SodEntry::line(3, 1); // (3,2) -> (3,1)
        coll = serre_mutate_last_to_front(coll, canonical_class());
        coll = mutate_marker_past_front(coll);
        CHECK(residual_orthogonal(coll) != expect);
    }
}
