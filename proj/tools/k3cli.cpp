// Command-line front end: derives twisted K3 double sextics from a (2,2)
// divisor, certifies smoothness and bad primes, searches local/rational
// points, evaluates Brauer invariants, and renders the obstruction verdict.
//
// Exit codes: 0 success, 1 computational failure, 2 input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "k3/k3.hpp"

namespace {

using namespace k3;

std::vector<Int> load_extra_primes(const std::string& path) {
    if (path.empty()) return {};
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open extra-primes file: " + path);
    std::vector<Int> out;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) out.emplace_back(tok);
    }
    return out;
}

Place parse_place(const std::string& s) {
    if (s == "real" || s == "inf" || s == "oo") return Place::archimedean();
    return Place::finite(Int(s));
}

struct TableRow {
    Int p, x0, x1, x2;
};

std::vector<TableRow> load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open table file: " + path);
    std::vector<TableRow> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string a, b, c, d;
        if (!(ls >> a)) continue;
        if (!(ls >> b >> c >> d))
            throw ParseError("table line " + std::to_string(line_no) +
                             ": expected `p x0 x1 x2`");
        rows.push_back(TableRow{Int(a), Int(b), Int(c), Int(d)});
    }
    return rows;
}

DoubleSexticSurface surface_for(const BiForm22& z, const std::string& side) {
    Side s = side == "y" ? Side::Y : Side::X;
    return k3_equation(discriminant_matrix(extract_quadrics(z, s)), s);
}

int cmd_derive(const std::string& divisor) {
    BiForm22 z = BiForm22::load(divisor);
    auto X1 = surface_for(z, "x");
    auto X2 = surface_for(z, "y");
    auto qx = extract_quadrics(z, Side::X);
    auto qy = extract_quadrics(z, Side::Y);
    std::cout << "X1: w^2 = " << X1.g.to_string("x") << "\n";
    std::cout << "X2: w^2 = " << X2.g.to_string("y") << "\n";
    std::cout << "D1: " << det3(discriminant_matrix(qx)).to_string("x") << " = 0\n";
    std::cout << "D2: " << det3(discriminant_matrix(qy)).to_string("y") << " = 0\n";
    return 0;
}

int cmd_smooth(const std::string& divisor) {
    BiForm22 z = BiForm22::load(divisor);
    bool all = true;
    for (const std::string side : {"x", "y"}) {
        auto X = surface_for(z, side);
        SmoothnessCertificate c = is_smooth_sextic(X.g);
        std::cout << "D" << (side == "x" ? "1" : "2") << " smooth: "
                  << (c.smooth ? "true" : "false");
        if (c.smooth)
            std::cout << "  (shear (" << c.shear.first << "," << c.shear.second
                      << "), chain resultant nonzero, " << c.chain_resultant.get_str().size()
                      << " digits)";
        else if (c.singular_point)
            std::cout << "  singular point [" << (*c.singular_point)[0] << ","
                      << (*c.singular_point)[1] << "," << (*c.singular_point)[2] << "]";
        else
            std::cout << "  " << c.extension_witness;
        std::cout << "\n";
        all = all && c.smooth;
    }
    return all ? 0 : 1;
}

int cmd_badprimes(const std::string& divisor, const std::string& extra, std::uint64_t bound) {
    BiForm22 z = BiForm22::load(divisor);
    auto X1 = surface_for(z, "x");
    BadPrimeReport rep = bad_prime_candidates(X1.g, bound, load_extra_primes(extra));
    std::cout << "candidate integer: " << rep.candidate_integer.get_str().size() << " digits\n";
    std::cout << "trial division bound: " << rep.search_bound << "\n";
    for (const auto& e : rep.certified_bad) {
        std::cout << "p=" << e.prime.get_str() << " bad";
        if (e.prime != 2) {
            std::cout << ", nodes=" << e.geometric_count
                      << (e.all_nodes ? " (all ordinary double points)" : " (NOT all nodes)");
            if (e.point)
                std::cout << ", rational singular point [" << e.point->x0.get_str() << ","
                          << e.point->x1.get_str() << "," << e.point->x2.get_str() << "]";
        }
        std::cout << "\n";
    }
    return 0;
}

int cmd_search(const std::string& divisor, const std::string& side, const std::string& place,
               long height) {
    BiForm22 z = BiForm22::load(divisor);
    auto X = surface_for(z, side);
    SearchConfig cfg;
    cfg.height_bound = height;
    if (place == "rational") {
        auto pts = find_rational_points(X.g, cfg);
        for (const auto& p : pts)
            std::cout << point_str(p) << " wsq=" << p.wsq << "\n";
        std::cout << pts.size() << " rational points up to height " << height << "\n";
        return 0;
    }
    if (place == "real") {
        auto pt = find_real_point(X.g, cfg);
        if (!pt) {
            std::cout << "unknown: no nonnegative value found up to height " << height << "\n";
            return 1;
        }
        std::cout << "real point " << point_str(*pt) << " wsq=" << pt->wsq << "\n";
        return 0;
    }
    WeightedPoint pt = find_qp_point(X.g, Int(place), cfg);
    std::cout << "Q_" << place << " point " << point_str(pt) << " wsq=" << pt.wsq << "\n";
    return 0;
}

int cmd_invariants(const std::string& divisor, const std::string& side, const std::string& point,
                   const std::string& place) {
    BiForm22 z = BiForm22::load(divisor);
    Side s = side == "y" ? Side::Y : Side::X;
    auto q = extract_quadrics(z, s);
    auto X = k3_equation(discriminant_matrix(q), s);
    std::istringstream ps(point);
    std::string a, b, c;
    if (!std::getline(ps, a, ',') || !std::getline(ps, b, ',') || !std::getline(ps, c, ','))
        throw InvalidInput("--point expects x0,x1,x2");
    WeightedPoint pt = weighted_point(X.g, Int(a), Int(b), Int(c));
    Place v = parse_place(place);
    EvaluatedInvariant ev = eval_invariant(brauer_reps(q), pt, v);
    std::cout << "point " << point_str(pt) << " wsq=" << pt.wsq << "\n";
    std::cout << "representative: " << ev.representative << "\n";
    std::cout << "symbol: " << (ev.symbol > 0 ? "+1" : "-1") << "\n";
    std::cout << "invariant: " << ev.invariant.to_string() << "\n";
    return 0;
}

int cmd_verdict(const std::string& divisor, const std::string& extra, long height,
                std::uint64_t bound) {
    BiForm22 z = BiForm22::load(divisor);
    PipelineOptions opt;
    opt.search.height_bound = height;
    opt.bad_prime_bound = bound;
    opt.extra_primes = load_extra_primes(extra);
    VerdictRun run = run_verdict_pipeline(z, opt);
    std::cout << render_certificate(run).str();
    return 0;
}

int cmd_verify_table(const std::string& divisor, const std::string& table,
                     const std::string& side) {
    BiForm22 z = BiForm22::load(divisor);
    Side s = side == "y" ? Side::Y : Side::X;
    auto q = extract_quadrics(z, s);
    auto X = k3_equation(discriminant_matrix(q), s);
    auto reps = brauer_reps(q);
    auto rows = load_table(table);
    if (rows.empty()) {
        std::cout << "warning: empty table, vacuous pass\n";
        return 0;
    }
    bool all = true;
    for (const auto& r : rows) {
        std::cout << "p=" << r.p.get_str() << " [" << r.x0.get_str() << "," << r.x1.get_str()
                  << "," << r.x2.get_str() << "]: ";
        try {
            WeightedPoint pt = weighted_point(X.g, r.x0, r.x1, r.x2);
            Place v = Place::finite(r.p);
            bool on = pt.w_is_zero || is_square_local(pt.wsq, v);
            if (!on) {
                std::cout << "FAIL (g-value not a square in Q_" << r.p.get_str() << ")\n";
                all = false;
                continue;
            }
            EvaluatedInvariant ev = eval_invariant(reps, pt, v);
            std::cout << "pass, invariant " << ev.invariant.to_string() << " via "
                      << ev.representative << "\n";
        } catch (const std::exception& e) {
            std::cout << "FAIL (" << e.what() << ")\n";
            all = false;
        }
    }
    return all ? 0 : 1;
}

int cmd_sod_check() {
    std::cout << render_sod_certificate().str();
    return verify_mutation_identity() ? 0 : 1;
}

int cmd_symbol(const std::string& a, const std::string& b, const std::string& place) {
    Rat ra(a), rb(b);
    ra.canonicalize();
    rb.canonicalize();
    Place v = parse_place(place);
    int s = hilbert_symbol(ra, rb, v);
    std::cout << "(" << a << ", " << b << ")_" << v.to_string() << " = " << (s > 0 ? "+1" : "-1")
              << "  invariant " << invariant_of_symbol(s).to_string() << "\n";
    return 0;
}

int cmd_reproduce(const std::string& divisor, const std::string& extra, long height,
                  unsigned long precision, const std::string& place_filter) {
    BiForm22 z = BiForm22::load(divisor);
    PipelineOptions opt;
    opt.search.height_bound = height;
    opt.extra_primes = load_extra_primes(extra);
    opt.hensel_precision = precision;

    auto qy = extract_quadrics(z, Side::Y);
    auto X2 = k3_equation(discriminant_matrix(qy), Side::Y);
    CompanionChecks comp = check_companion_surface(qy, X2.g, precision);
    if (place_filter == "2") {
        std::cout << "2-adic point [-3,-1,1,sqrt(" << comp.two_adic_eval.invariant.to_string()
                  << " class)]: alpha_2 invariant " << comp.two_adic_eval.invariant.to_string()
                  << " (nontrivial: "
                  << (comp.two_adic_eval.invariant.is_zero() ? "false" : "true") << ")\n";
        return 0;
    }
    if (place_filter == "real") {
        std::cout << "real point [4,3,3]: alpha_2 invariant "
                  << comp.real_eval.invariant.to_string() << " (trivial: "
                  << (comp.real_eval.invariant.is_zero() ? "true" : "false") << ")\n";
        return 0;
    }
    VerdictRun run = run_verdict_pipeline(z, opt);
    std::cout << render_certificate(run).str();
    std::cout << "\n" << render_companion_certificate(comp).str();
    std::cout << "\n" << render_sod_certificate().str();
    return run.verdict.obstructed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"twisted K3 double-sextic toolkit"};
    app.require_subcommand(1);

    std::string divisor = "data/divisor_22.txt";
    std::string extra;
    std::string side = "x";
    std::string place;
    std::string point;
    std::string table;
    std::string fmt = "human";
    long height = 8;
    std::uint64_t bound = 1000000;
    unsigned long precision = 64;
    std::string sym_a, sym_b, sym_v;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--divisor", divisor, "divisor coefficient file");
        sub->add_option("--format", fmt, "human|certificate");
    };
    auto* derive = app.add_subcommand("derive", "print the twisted K3 equations");
    add_common(derive);
    auto* smooth = app.add_subcommand("smooth", "certify smoothness of the discriminant sextics");
    add_common(smooth);
    auto* badp = app.add_subcommand("badprimes", "certify bad-reduction primes");
    add_common(badp);
    badp->add_option("--extra-primes", extra, "file of large prime factors");
    badp->add_option("--bound", bound, "trial-division bound");
    auto* search = app.add_subcommand("search", "find local or rational points");
    add_common(search);
    search->add_option("--side", side, "x|y");
    search->add_option("--place", place, "p|real|rational")->required();
    search->add_option("--height", height, "max-norm height bound");
    auto* inv = app.add_subcommand("invariants", "evaluate the Brauer class at a point");
    add_common(inv);
    inv->add_option("--side", side, "x|y");
    inv->add_option("--point", point, "x0,x1,x2")->required();
    inv->add_option("--place", place, "p|real")->required();
    auto* verdict = app.add_subcommand("verdict", "full Brauer-Manin pipeline");
    add_common(verdict);
    verdict->add_option("--extra-primes", extra, "file of large prime factors");
    verdict->add_option("--height", height, "search height");
    verdict->add_option("--bound", bound, "trial-division bound");
    auto* vtable = app.add_subcommand("verify-table", "re-verify a Q_p-point table");
    add_common(vtable);
    vtable->add_option("--side", side, "x|y");
    vtable->add_option("--table", table, "table file: rows `p x0 x1 x2`")->required();
    app.add_subcommand("sod-check", "replay the mutation identity");
    auto* repro = app.add_subcommand("reproduce-paper", "run every stage on the bundled data");
    add_common(repro);
    repro->add_option("--extra-primes", extra, "file of large prime factors");
    repro->add_option("--height", height, "search height");
    repro->add_option("--precision", precision, "Hensel precision (power of 2)");
    repro->add_option("--place", place, "restrict to one companion check: 2|real");
    auto* sym = app.add_subcommand("symbol", "Hilbert symbol (a, b)_v");
    sym->add_option("a", sym_a)->required();
    sym->add_option("b", sym_b)->required();
    sym->add_option("v", sym_v, "p or `real`")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (derive->parsed()) return cmd_derive(divisor);
        if (smooth->parsed()) return cmd_smooth(divisor);
        if (badp->parsed()) return cmd_badprimes(divisor, extra, bound);
        if (search->parsed()) return cmd_search(divisor, side, place, height);
        if (inv->parsed()) return cmd_invariants(divisor, side, point, place);
        if (verdict->parsed()) return cmd_verdict(divisor, extra, height, bound);
        if (vtable->parsed()) return cmd_verify_table(divisor, table, side);
        if (app.get_subcommand("sod-check")->parsed()) return cmd_sod_check();
        if (repro->parsed()) return cmd_reproduce(divisor, extra, height, precision, place);
        if (sym->parsed()) return cmd_symbol(sym_a, sym_b, sym_v);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidInput& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
