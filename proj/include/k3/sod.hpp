#pragma once

// Picard-class bookkeeping for the semiorthogonal-decomposition mutation
// argument: line bundles on a (2,2) divisor in P^2 x P^2 are tracked as pairs
// (a, b) meaning O(a*H_1 + b*H_2), residual categories as opaque markers.
// Serre mutation of the last exceptional object to the front twists by the
// canonical class K_Y = -2H_1 - 2H_2.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "k3/errors.hpp"

namespace k3 {

struct PicClass {
    long a = 0, b = 0;
    PicClass operator+(const PicClass& o) const { return {a + o.a, b + o.b}; }
    bool operator==(const PicClass& o) const { return a == o.a && b == o.b; }
    bool operator<(const PicClass& o) const { return a != o.a ? a < o.a : b < o.b; }
    std::string to_string() const {
        return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    }
};

inline constexpr long canonical_H1 = -2, canonical_H2 = -2;
inline PicClass canonical_class() { return PicClass{canonical_H1, canonical_H2}; }

// One slot of an exceptional collection: a line-bundle class or an opaque
// marker for a non-line-bundle component.
struct SodEntry {
    std::optional<PicClass> cls; // nullopt => marker
    std::string marker_name;
    bool is_marker() const { return !cls.has_value(); }
    static SodEntry line(long a, long b) { return SodEntry{PicClass{a, b}, {}}; }
    static SodEntry marker(std::string name) { return SodEntry{std::nullopt, std::move(name)}; }
    std::string to_string() const { return is_marker() ? marker_name : cls->to_string(); }
};

using ExceptionalList = std::vector<SodEntry>;

// Serre mutation: remove the last entry (must be a line bundle) and reinsert
// it at the front twisted by the canonical class.
inline ExceptionalList serre_mutate_last_to_front(ExceptionalList coll, const PicClass& canonical) {
    if (coll.empty()) throw InvalidInput("empty collection");
    if (coll.back().is_marker()) throw InvalidInput("last entry is a marker, not a line bundle");
    SodEntry moved = SodEntry{*coll.back().cls + canonical, {}};
    coll.pop_back();
    coll.insert(coll.begin(), moved);
    return coll;
}

// Left mutation of the marker through the line bundle directly in front of
// it: pure bookkeeping, swapping the two and renaming the marker.
inline ExceptionalList mutate_marker_past_front(ExceptionalList coll) {
    if (coll.size() < 2 || !coll[1].is_marker() || coll[0].is_marker())
        throw InvalidState("expected [line bundle, marker, ...]");
    SodEntry line = coll[0];
    coll[1].marker_name = "L_{O" + line.cls->to_string() + "}(" + coll[1].marker_name + ")";
    std::swap(coll[0], coll[1]);
    return coll;
}

// The line-bundle classes to the right of the single front marker.
inline std::set<PicClass> residual_orthogonal(const ExceptionalList& coll) {
    if (coll.empty() || !coll.front().is_marker())
        throw InvalidState("marker is not in front position");
    std::set<PicClass> out;
    for (std::size_t i = 1; i < coll.size(); ++i) {
        if (coll[i].is_marker()) throw InvalidState("more than one marker in the collection");
        out.insert(*coll[i].cls);
    }
    return out;
}

// The two decompositions of D^b(Y) obtained from the quadric-fibration
// decomposition by inserting the twisted Beilinson collections; swap = false
// is the H_1-fibration side, swap = true the H_2 side.
inline ExceptionalList fibration_decomposition(bool swap) {
    auto L = [&](long a, long b) { return swap ? SodEntry::line(b, a) : SodEntry::line(a, b); };
    return ExceptionalList{SodEntry::marker(swap ? "C2" : "C1"),
                           L(0, 1), L(1, 1), L(2, 1), L(1, 2), L(2, 2), L(3, 2)};
}

struct MutationTrace {
    std::vector<std::string> steps;
    std::set<PicClass> residual_1, residual_2;
    bool identical = false;
};

namespace detail {

inline std::string render(const ExceptionalList& coll) {
    std::string s = "< ";
    for (std::size_t i = 0; i < coll.size(); ++i) {
        if (i) s += ", ";
        s += coll[i].to_string();
    }
    return s + " >";
}

inline std::set<PicClass> run_side(bool swap, std::vector<std::string>& steps) {
    ExceptionalList coll = fibration_decomposition(swap);
    steps.push_back("start:  " + render(coll));
    coll = serre_mutate_last_to_front(coll, canonical_class());
    steps.push_back("serre:  " + render(coll));
    coll = mutate_marker_past_front(coll);
    steps.push_back("left:   " + render(coll));
    return residual_orthogonal(coll);
}

} // namespace detail

// Replays both mutation chains and checks the residual orthogonal sets agree.
inline MutationTrace mutation_identity_trace() {
    MutationTrace t;
    t.residual_1 = detail::run_side(false, t.steps);
    t.residual_2 = detail::run_side(true, t.steps);
    t.identical = t.residual_1 == t.residual_2;
    return t;
}

inline bool verify_mutation_identity() { return mutation_identity_trace().identical; }

} // namespace k3
