#pragma once

#include <array>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "k3/errors.hpp"
#include "k3/integers.hpp"

namespace k3 {

using Exp3 = std::array<int, 3>;

// Descending lexicographic exponent order; this is the canonical term order
// for serialization, so map iteration order is print order.
struct ExpDescLex {
    bool operator()(const Exp3& a, const Exp3& b) const { return a > b; }
};

// Homogeneous polynomial in three variables with exact rational coefficients.
// Invariants: stored coefficients are nonzero and every exponent triple sums
// to degree().  The zero polynomial has an empty term map (degree is then a
// formal marker only).
class HomPoly {
  public:
    using TermMap = std::map<Exp3, Rat, ExpDescLex>;

    HomPoly() : degree_(0) {}
    explicit HomPoly(int degree) : degree_(degree) {}

    static HomPoly zero(int degree = 0) { return HomPoly(degree); }

    static HomPoly monomial(const Rat& c, Exp3 e) {
        HomPoly p(e[0] + e[1] + e[2]);
        p.set_coeff(e, c);
        return p;
    }

    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    Rat coeff(Exp3 e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    void set_coeff(Exp3 e, const Rat& c) {
        if (e[0] + e[1] + e[2] != degree_)
            throw InvalidInput("exponent triple does not sum to degree");
        if (c == 0)
            terms_.erase(e);
        else {
            Rat cc = c;
            cc.canonicalize();
            terms_[e] = cc;
        }
    }

    HomPoly operator-() const {
        HomPoly r(degree_);
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    HomPoly operator+(const HomPoly& o) const {
        if (!is_zero() && !o.is_zero() && degree_ != o.degree_)
            throw InvalidInput("adding forms of different degrees");
        HomPoly r(is_zero() ? o.degree_ : degree_);
        r.terms_ = terms_;
        for (const auto& [e, c] : o.terms_) {
            Rat s = r.coeff(e) + c;
            if (s == 0)
                r.terms_.erase(e);
            else
                r.terms_[e] = s;
        }
        return r;
    }

    HomPoly operator-(const HomPoly& o) const { return *this + (-o); }

    HomPoly operator*(const HomPoly& o) const {
        HomPoly r(degree_ + o.degree_);
        if (is_zero() || o.is_zero()) return HomPoly::zero(degree_ + o.degree_);
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_) {
                Exp3 e{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]};
                Rat s = r.coeff(e) + c1 * c2;
                if (s == 0)
                    r.terms_.erase(e);
                else
                    r.terms_[e] = s;
            }
        return r;
    }

    HomPoly operator*(const Rat& s) const {
        HomPoly r(degree_);
        if (s == 0) return r;
        for (const auto& [e, c] : terms_) r.terms_[e] = c * s;
        return r;
    }

    bool operator==(const HomPoly& o) const {
        return terms_ == o.terms_ && (is_zero() || o.is_zero() || degree_ == o.degree_);
    }

    Rat eval(const Rat& v0, const Rat& v1, const Rat& v2) const {
        Rat acc = 0;
        for (const auto& [e, c] : terms_) {
            Rat t = c;
            for (int i = 0; i < e[0]; ++i) t *= v0;
            for (int i = 0; i < e[1]; ++i) t *= v1;
            for (int i = 0; i < e[2]; ++i) t *= v2;
            acc += t;
        }
        return acc;
    }

    Int eval_int(const Int& v0, const Int& v1, const Int& v2) const {
        Int acc = 0;
        for (const auto& [e, c] : terms_) {
            if (c.get_den() != 1)
                throw InvalidInput("eval_int on a non-integral polynomial");
            Int t = c.get_num();
            for (int i = 0; i < e[0]; ++i) t *= v0;
            for (int i = 0; i < e[1]; ++i) t *= v1;
            for (int i = 0; i < e[2]; ++i) t *= v2;
            acc += t;
        }
        return acc;
    }

    // Formal partial derivative; degree-0 input yields the zero polynomial.
    HomPoly partial(int var) const {
        if (var < 0 || var > 2) throw InvalidInput("variable index out of range");
        if (degree_ == 0) return HomPoly::zero(0);
        HomPoly r(degree_ - 1);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exp3 d = e;
            d[var] -= 1;
            r.set_coeff(d, c * e[var]);
        }
        return r;
    }

    bool is_integral() const {
        for (const auto& [e, c] : terms_)
            if (c.get_den() != 1) return false;
        return true;
    }

    // gcd of integer coefficients (content), positive; zero polynomial -> 0.
    Int content() const {
        Int g = 0;
        for (const auto& [e, c] : terms_) {
            if (c.get_den() != 1) throw InvalidInput("content of non-integral polynomial");
            Int a = abs(c.get_num());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
        }
        return g;
    }

    // Clears denominators and divides by the content.  Returns the primitive
    // integer polynomial; sign is kept as-is.
    HomPoly primitive_part() const {
        if (is_zero()) return *this;
        Int den = 1;
        for (const auto& [e, c] : terms_)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
        HomPoly scaled = *this * Rat(den);
        Int cont = scaled.content();
        return scaled * Rat(Int(1), cont);
    }

    std::string to_string(const std::string& var = "x") const;

    static HomPoly parse(const std::string& text, const std::string& var = "x");

  private:
    int degree_;
    TermMap terms_;
};

inline std::string HomPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rat a = c;
        bool neg = a < 0;
        if (neg) a = -a;
        if (first) {
            if (neg) out << "-";
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        std::string mono;
        for (int i = 0; i < 3; ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += var + std::to_string(i);
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty()) {
            out << a.get_str();
        } else {
            if (a != 1) out << a.get_str() << "*";
            out << mono;
        }
    }
    return out.str();
}

inline HomPoly HomPoly::parse(const std::string& text, const std::string& var) {
    struct Scanner {
        const std::string& s;
        std::size_t i = 0;
        void skip_ws() {
            while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        }
        bool done() {
            skip_ws();
            return i >= s.size();
        }
        char peek() {
            skip_ws();
            return i < s.size() ? s[i] : '\0';
        }
    } sc{text};

    struct Term {
        Rat coeff;
        Exp3 exp;
    };
    std::vector<Term> parsed;

    auto fail = [&](const std::string& what) {
        throw ParseError("polynomial parse error at offset " + std::to_string(sc.i) + ": " + what);
    };

    while (!sc.done()) {
        int sign = 1;
        char c = sc.peek();
        if (c == '+' || c == '-') {
            sign = (c == '-') ? -1 : 1;
            ++sc.i;
        }
        Rat coeff = 1;
        bool saw_number = false;
        Exp3 e{0, 0, 0};
        bool saw_factor = false;
        while (true) {
            char p = sc.peek();
            if (std::isdigit(static_cast<unsigned char>(p))) {
                std::string num;
                while (sc.i < sc.s.size() &&
                       (std::isdigit(static_cast<unsigned char>(sc.s[sc.i])) || sc.s[sc.i] == '/'))
                    num += sc.s[sc.i++];
                coeff *= Rat(num);
                coeff.canonicalize();
                saw_number = true;
            } else if (p == var[0]) {
                sc.i += var.size();
                if (sc.i >= sc.s.size() || !std::isdigit(static_cast<unsigned char>(sc.s[sc.i])))
                    fail("expected variable index");
                int idx = sc.s[sc.i++] - '0';
                if (idx > 2) fail("variable index out of range");
                int exp = 1;
                if (sc.peek() == '^') {
                    ++sc.i;
                    std::string num;
                    while (sc.i < sc.s.size() && std::isdigit(static_cast<unsigned char>(sc.s[sc.i])))
                        num += sc.s[sc.i++];
                    if (num.empty()) fail("expected exponent");
                    exp = std::stoi(num);
                }
                e[idx] += exp;
            } else {
                fail("expected coefficient or variable");
            }
            saw_factor = true;
            if (sc.peek() == '*') {
                ++sc.i;
                continue;
            }
            break;
        }
        if (!saw_factor && !saw_number) fail("empty term");
        parsed.push_back({coeff * sign, e});
    }

    if (parsed.empty()) throw ParseError("empty polynomial text");
    int deg = parsed[0].exp[0] + parsed[0].exp[1] + parsed[0].exp[2];
    HomPoly out(deg);
    for (const auto& t : parsed) {
        if (t.exp[0] + t.exp[1] + t.exp[2] != deg)
            throw ParseError("non-homogeneous polynomial text");
        out.set_coeff(t.exp, out.coeff(t.exp) + t.coeff);
    }
    return out;
}

// Coefficientwise reduction of an integral-at-p polynomial.
class PolyModP {
  public:
    using TermMap = std::map<Exp3, Int, ExpDescLex>;

    PolyModP(Int prime, int degree) : prime_(std::move(prime)), degree_(degree) {}

    const Int& prime() const { return prime_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    Int coeff(Exp3 e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Int(0) : it->second;
    }

    void set_coeff(Exp3 e, const Int& c) {
        Int r = mod_reduce(c, prime_);
        if (r == 0)
            terms_.erase(e);
        else
            terms_[e] = r;
    }

    PolyModP operator+(const PolyModP& o) const {
        PolyModP r(prime_, degree_);
        r.terms_ = terms_;
        for (const auto& [e, c] : o.terms_) r.set_coeff(e, r.coeff(e) + c);
        return r;
    }

    PolyModP operator*(const PolyModP& o) const {
        PolyModP r(prime_, degree_ + o.degree_);
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_) {
                Exp3 e{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]};
                r.set_coeff(e, r.coeff(e) + c1 * c2);
            }
        return r;
    }

    bool operator==(const PolyModP& o) const {
        return prime_ == o.prime_ && terms_ == o.terms_;
    }

    Int eval(const Int& v0, const Int& v1, const Int& v2) const {
        Int acc = 0;
        for (const auto& [e, c] : terms_) {
            Int t = c;
            for (int i = 0; i < e[0]; ++i) t = t * v0 % prime_;
            for (int i = 0; i < e[1]; ++i) t = t * v1 % prime_;
            for (int i = 0; i < e[2]; ++i) t = t * v2 % prime_;
            acc = (acc + t) % prime_;
        }
        return mod_reduce(acc, prime_);
    }

  private:
    Int prime_;
    int degree_;
    TermMap terms_;
};

inline PolyModP reduce_mod_p(const HomPoly& p, const Int& prime) {
    if (prime < 2) throw InvalidInput("modulus must be a prime >= 2");
    PolyModP r(prime, p.degree());
    for (const auto& [e, c] : p.terms()) {
        if (mpz_divisible_p(c.get_den().get_mpz_t(), prime.get_mpz_t()))
            throw NotPIntegral("coefficient denominator divisible by " + prime.get_str());
        Int num = mod_reduce(c.get_num(), prime);
        Int den_inv = mod_inverse(mod_reduce(c.get_den(), prime), prime);
        r.set_coeff(e, num * den_inv);
    }
    return r;
}

} // namespace k3
