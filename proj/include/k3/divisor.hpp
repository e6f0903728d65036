#pragma once

// The (2,2) divisor on P^2 x P^2 and its computational shadow: the two
// quadric sextets, the 3x3 discriminant Gram matrices, the double-sextic
// surface equations w^2 = -det(M)/2, and the degree-4 minors feeding the
// symbol representatives.

#include <array>
#include <fstream>
#include <sstream>
#include <string>

#include "k3/errors.hpp"
#include "k3/homopoly.hpp"
#include "k3/integers.hpp"

namespace k3 {

// Quadric monomial slots, in the fixed order (s0^2, s0s1, s0s2, s1^2, s1s2, s2^2).
inline constexpr std::array<Exp3, 6> kQuadricMonomials{
    Exp3{2, 0, 0}, Exp3{1, 1, 0}, Exp3{1, 0, 1}, Exp3{0, 2, 0}, Exp3{0, 1, 1}, Exp3{0, 0, 2}};

inline int quadric_slot(const Exp3& e) {
    for (int i = 0; i < 6; ++i)
        if (kQuadricMonomials[static_cast<std::size_t>(i)] == e) return i;
    throw InvalidInput("not a degree-2 monomial");
}

enum class Side { X, Y };

// Z as a 6x6 integer coefficient grid: coeff(i, j) multiplies
// (x-monomial i) * (y-monomial j).
class BiForm22 {
  public:
    BiForm22() {
        for (auto& row : c_)
            for (auto& v : row) v = 0;
    }

    const Int& coeff(int xmon, int ymon) const {
        return c_[static_cast<std::size_t>(xmon)][static_cast<std::size_t>(ymon)];
    }
    void set_coeff(int xmon, int ymon, Int v) {
        c_[static_cast<std::size_t>(xmon)][static_cast<std::size_t>(ymon)] = std::move(v);
    }

    bool is_zero() const {
        for (const auto& row : c_)
            for (const auto& v : row)
                if (v != 0) return false;
        return true;
    }

    bool operator==(const BiForm22& o) const { return c_ == o.c_; }

    static BiForm22 parse_file(std::istream& in);
    static BiForm22 load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open divisor file: " + path);
        return parse_file(in);
    }
    std::string serialize() const;

  private:
    std::array<std::array<Int, 6>, 6> c_;
};

// The six quadrics of one fibration direction.  For Side::X these are the
// A..F with Z = A y0^2 + B y0y1 + C y0y2 + D y1^2 + E y1y2 + F y2^2; for
// Side::Y the primed sextet with the roles of x and y exchanged.
struct QuadricSextet {
    std::array<HomPoly, 6> q; // A, B, C, D, E, F in slot order
    Side side = Side::X;

    const HomPoly& A() const { return q[0]; }
    const HomPoly& B() const { return q[1]; }
    const HomPoly& C() const { return q[2]; }
    const HomPoly& D() const { return q[3]; }
    const HomPoly& E() const { return q[4]; }
    const HomPoly& F() const { return q[5]; }
};

struct DiscriminantMatrix {
    std::array<std::array<HomPoly, 3>, 3> entries;
};

struct DoubleSexticSurface {
    HomPoly g;       // degree 6; the surface is w^2 = g in P(1,1,1,3)
    std::string var; // "x" or "y"
};

struct MinorTriple {
    HomPoly M_A, M_D, M_F; // 4DF - E^2, 4AF - C^2, 4AD - B^2
};

inline QuadricSextet extract_quadrics(const BiForm22& z, Side side) {
    QuadricSextet out;
    out.side = side;
    for (int slot = 0; slot < 6; ++slot) {
        HomPoly q(2);
        for (int other = 0; other < 6; ++other) {
            const Int& c = side == Side::X ? z.coeff(other, slot) : z.coeff(slot, other);
            if (c != 0) q.set_coeff(kQuadricMonomials[static_cast<std::size_t>(other)], Rat(c));
        }
        out.q[static_cast<std::size_t>(slot)] = q;
    }
    return out;
}

// Inverse of extract_quadrics; used for the round-trip invariant.
inline BiForm22 recombine(const QuadricSextet& s) {
    BiForm22 z;
    for (int slot = 0; slot < 6; ++slot) {
        for (const auto& [e, c] : s.q[static_cast<std::size_t>(slot)].terms()) {
            if (c.get_den() != 1) throw InvalidInput("recombine requires integer quadrics");
            int other = quadric_slot(e);
            if (s.side == Side::X)
                z.set_coeff(other, slot, c.get_num());
            else
                z.set_coeff(slot, other, c.get_num());
        }
    }
    return z;
}

inline DiscriminantMatrix discriminant_matrix(const QuadricSextet& s) {
    DiscriminantMatrix m;
    const Rat two(2);
    m.entries[0][0] = s.A() * two;
    m.entries[1][1] = s.D() * two;
    m.entries[2][2] = s.F() * two;
    m.entries[0][1] = m.entries[1][0] = s.B();
    m.entries[0][2] = m.entries[2][0] = s.C();
    m.entries[1][2] = m.entries[2][1] = s.E();
    return m;
}

inline HomPoly det3(const DiscriminantMatrix& m) {
    const auto& e = m.entries;
    return e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1]) -
           e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0]) +
           e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0]);
}

inline DoubleSexticSurface k3_equation(const DiscriminantMatrix& m, Side side = Side::X) {
    HomPoly det = det3(m);
    HomPoly g = det * Rat(-1, 2);
    // With an integral sextet det(M) must have even coefficients.
    bool integral_input = true;
    for (int i = 0; i < 3 && integral_input; ++i)
        for (int j = 0; j < 3 && integral_input; ++j)
            integral_input = m.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                                 .is_integral();
    if (integral_input && !g.is_integral())
        throw IntegralityViolation("-det(M)/2 has a non-integral coefficient");
    return DoubleSexticSurface{g, side == Side::X ? "x" : "y"};
}

inline MinorTriple minors(const QuadricSextet& s) {
    const Rat four(4);
    MinorTriple m;
    m.M_A = s.D() * s.F() * four - s.E() * s.E();
    m.M_D = s.A() * s.F() * four - s.C() * s.C();
    m.M_F = s.A() * s.D() * four - s.B() * s.B();
    return m;
}

// --- divisor file I/O -------------------------------------------------------
//
// Plain text, one coefficient per line:  `x0^2 y0^2 : -5`.  Missing monomial
// pairs are zero; `#` starts a comment.

namespace detail {

inline Exp3 parse_monomial(const std::string& tok, char var, int line_no) {
    Exp3 e{0, 0, 0};
    std::size_t i = 0;
    auto fail = [&](const std::string& what) {
        throw ParseError("line " + std::to_string(line_no) + ", col " + std::to_string(i + 1) +
                         ": " + what);
    };
    while (i < tok.size()) {
        if (tok[i] == '*') {
            ++i;
            continue;
        }
        if (tok[i] != var) fail(std::string("expected variable '") + var + "'");
        ++i;
        if (i >= tok.size() || !std::isdigit(static_cast<unsigned char>(tok[i])))
            fail("expected variable index");
        int idx = tok[i++] - '0';
        if (idx > 2) fail("variable index out of range");
        int exp = 1;
        if (i < tok.size() && tok[i] == '^') {
            ++i;
            if (i >= tok.size() || !std::isdigit(static_cast<unsigned char>(tok[i])))
                fail("expected exponent");
            exp = tok[i++] - '0';
        }
        e[idx] += exp;
    }
    if (e[0] + e[1] + e[2] != 2) fail("monomial must have degree 2");
    return e;
}

} // namespace detail

inline BiForm22 BiForm22::parse_file(std::istream& in) {
    BiForm22 z;
    std::string line;
    int line_no = 0;
    bool any = false;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string xtok, ytok, colon, ctok;
        if (!(ls >> xtok)) continue; // blank line
        if (!(ls >> ytok >> colon) || colon != ":" || !(ls >> ctok))
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected `x-monomial y-monomial : coefficient`");
        Exp3 xe = detail::parse_monomial(xtok, 'x', line_no);
        Exp3 ye = detail::parse_monomial(ytok, 'y', line_no);
        Int c;
        try {
            c = Int(ctok);
        } catch (const std::invalid_argument&) {
            throw ParseError("line " + std::to_string(line_no) + ": bad integer coefficient `" +
                             ctok + "`");
        }
        z.set_coeff(quadric_slot(xe), quadric_slot(ye), c);
        any = true;
    }
    if (!any) throw ParseError("divisor file contains no coefficients");
    if (z.is_zero()) throw ParseError("divisor is identically zero");
    return z;
}

inline std::string BiForm22::serialize() const {
    std::ostringstream out;
    auto mono = [](char var, const Exp3& e) {
        std::string s;
        for (int i = 0; i < 3; ++i) {
            if (e[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += var;
            s += static_cast<char>('0' + i);
            if (e[i] > 1) s += "^" + std::to_string(e[i]);
        }
        return s;
    };
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            const Int& c = coeff(i, j);
            if (c == 0) continue;
            out << mono('x', kQuadricMonomials[static_cast<std::size_t>(i)]) << " "
                << mono('y', kQuadricMonomials[static_cast<std::size_t>(j)]) << " : " << c.get_str()
                << "\n";
        }
    return out.str();
}

} // namespace k3
