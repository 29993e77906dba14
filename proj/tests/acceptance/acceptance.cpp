// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "foldcheck/char_engine.hpp"
#include "foldcheck/cli.hpp"
#include "foldcheck/expression.hpp"
#include "foldcheck/fold_decider.hpp"

#include "closure.hpp"
#include "oracles.hpp"

using namespace foldcheck;
using foldcheck::testing::closure;

namespace {

using Failures = std::vector<std::string>;

void expect(Failures& f, bool ok, const std::string& what)
{
    if (!ok)
        f.push_back(what);
}

const TraceEntry* deciding(const Verdict& v) { return v.deciding_entry(); }

std::string cite_of(const Verdict& v)
{
    const TraceEntry* e = deciding(v);
    return e ? e->citation : "<none>";
}

// Criterion 1: verdict table.
Failures verdict_table()
{
    struct Row {
        std::string expr;
        int p;
        bool tame;
        Outcome outcome;
        std::string citation;  // exact, or a prefix when it ends in '*'
    };
    std::vector<Row> rows = {
        {"RP4", 4, false, Outcome::NotExists, "Cor 3.5(ii)"},
        {"K3", 4, false, Outcome::NotExists, "Cor 3.5(i)"},
        {"CP2 # CP2~", 4, false, Outcome::NotExists, "Cor 3.5"},
        {"2#RP4", 4, false, Outcome::Exists, "Cor 3.5(ii)"},
        {"3#RP4", 3, true, Outcome::NotExists, "Thm 5.1"},
        {"2#RP4 # (S2 x S2) # (S1 x S3)", 3, true, Outcome::Exists, "Thm 5.1"},
        {"RP4", 2, false, Outcome::NotExists, "Thom-Levine"},
        {"S7", 5, false, Outcome::Exists, "Eliashberg (stably parallelizable)"},
    };
    for (int k = 0; k <= 2; ++k) {
        for (int g = 0; g <= 2; ++g) {
            const std::string sigma = " x Sigma" + std::to_string(g);
            // N(0) is read as the sphere.
            const std::string even = k == 0 ? "S2" : "N" + std::to_string(2 * k);
            rows.push_back({even + sigma, 4, false, Outcome::Exists, "Cor 3.5*"});
            rows.push_back({"N" + std::to_string(2 * k + 1) + sigma, 4, false, Outcome::NotExists, "Cor 3.5"});
        }
    }
    Failures f;
    for (const auto& r : rows) {
        const Verdict v = decide_fold(parse_expression(r.expr), Target::euclidean(r.p), r.tame);
        const std::string c = cite_of(v);
        const bool prefix = !r.citation.empty() && r.citation.back() == '*';
        const bool cite_ok = prefix ? c.rfind(r.citation.substr(0, r.citation.size() - 1), 0) == 0 : c == r.citation;
        expect(f, v.outcome == r.outcome,
               r.expr + " -> R" + std::to_string(r.p) + ": got " + to_string(v.outcome));
        expect(f, cite_ok, r.expr + " -> R" + std::to_string(r.p) + ": cites " + c + ", want " + r.citation);
    }
    return f;
}

// Criterion 2: Thom polynomials of RP4 x S^(n-4).
Failures thom_vanishing()
{
    Failures f;
    for (int n = 5; n <= 7; ++n) {
        const std::string expr = "RP4 x S" + std::to_string(n - 4);
        const Manifold m = parse_expression(expr);
        const auto table = thom_polynomials(m);
        int zero_seen = 0;
        for (const auto& e : table) {
            if (e.singularity == "fold")
                expect(f, e.status == Tri::Nonzero, expr + ": fold entry not nonzero");
            for (const char* s : {"cusp (A_2)", "swallowtail (A_3)", "butterfly (A_4)", "Sigma^{2,0} mod 2"})
                if (e.singularity == s) {
                    expect(f, e.status == Tri::Zero, expr + ": " + s + " = " + e.value);
                    ++zero_seen;
                }
        }
        expect(f, zero_seen == 4, expr + ": missing table entries");
        expect(f, !m.w[4].is_zero(), expr + ": w_4 vanishes");
        const Verdict v = decide_fold(m, Target::euclidean(n), false);
        expect(f, v.outcome == Outcome::NotExists, expr + " -> R" + std::to_string(n) + ": " + to_string(v.outcome));
    }
    return f;
}

// Criterion 3: Wu engine against the exhaustive oracle.
Failures wu_oracle()
{
    Failures f;
    for (const auto& s : closure()) {
        const GradedAlgebra& a = s.manifold.ring();
        const TotalClass v = foldcheck::testing::brute_wu(a);
        expect(f, wu_classes(a) == v, s.expression + ": Wu classes differ");
        expect(f, stiefel_whitney_from_wu(a) == s.manifold.w, s.expression + ": Sq(v) differs from stored w");
        expect(f, foldcheck::testing::total_square(a, v) == s.manifold.w, s.expression + ": oracle Sq(v) differs");
    }
    for (int n = 1; n <= 10; ++n) {
        const Manifold m = real_projective(n);
        for (int k = 0; k <= n; ++k)
            expect(f, m.w[k].is_zero() != foldcheck::testing::pascal_mod2(n + 1, k),
                   "RP" + std::to_string(n) + ": w_" + std::to_string(k));
    }
    expect(f, parse_expression("K3").w[2].is_zero(), "K3: w_2 nonzero");
    return f;
}

// Criterion 4: invariant suites over the closure.
Failures invariant_suites()
{
    Failures f;
    std::size_t sq2_instances = 0, spin4_instances = 0;
    for (const auto& s : closure()) {
        const Manifold& m = s.manifold;
        const GradedAlgebra& a = m.ring();
        const int n = m.dim;
        const std::string& e = s.expression;
        bool cartan = true, axioms = true;
        for (int d1 = 0; d1 <= n; ++d1) {
            for (std::size_t i = 0; i < a.rank(d1); ++i) {
                const ClassZ2 x = a.basis_class(d1, i);
                axioms &= a.steenrod_square(0, x) == x;
                if (2 * d1 <= n)
                    axioms &= a.steenrod_square(d1, x) == a.multiply(x, x);
                axioms &= a.steenrod_square(d1 + 1, x).is_zero();
                if (d1 + 2 <= n)
                    axioms &= a.steenrod_square(1, a.steenrod_square(1, x)).is_zero();
                if (d1 + 3 <= n)
                    axioms &= a.steenrod_square(1, a.steenrod_square(2, x)) == a.steenrod_square(3, x);
                for (int d2 = d1; d1 + d2 <= n; ++d2) {
                    for (std::size_t j = 0; j < a.rank(d2); ++j) {
                        const ClassZ2 y = a.basis_class(d2, j);
                        const ClassZ2 xy = a.multiply(x, y);
                        for (int k = 1; d1 + d2 + k <= n; ++k) {
                            ClassZ2 rhs = a.zero(d1 + d2 + k);
                            for (int t = 0; t <= k; ++t)
                                rhs = rhs + a.multiply(a.steenrod_square(t, x), a.steenrod_square(k - t, y));
                            cartan &= a.steenrod_square(k, xy) == rhs;
                        }
                    }
                }
            }
        }
        expect(f, cartan, e + ": Cartan formula");
        expect(f, axioms, e + ": Steenrod axioms");
        for (int d = 0; d <= n; ++d) {
            foldcheck::testing::Dense rows;
            for (const auto& r : pairing_matrix(a, d)) {
                std::vector<char> row;
                for (int b : r.to_bits())
                    row.push_back(static_cast<char>(b));
                rows.push_back(row);
            }
            expect(f, foldcheck::testing::dense_rank(rows) == a.rank(d) && a.rank(d) == a.rank(n - d),
                   e + ": pairing degenerate in degree " + std::to_string(d));
        }
        expect(f, a.multiply_total(m.w, dual_classes(m)) == a.unit_total(), e + ": w wbar != 1");
        expect(f, a.evaluate_top(m.w[n]) == (m.euler % 2 != 0), e + ": w_n against Euler characteristic");
        if (n % 4 == 2 && n >= 6) {
            const ClassZ2& w4k = m.w[n - 2];
            expect(f, a.steenrod_square(2, w4k) == a.multiply(m.w[2], w4k) + m.w[n], e + ": Sq^2 w_4k");
            ++sq2_instances;
        }
        if (n == 4 && m.orientable) {
            const bool integral = m.p1.kind == P1Data::Kind::Integer && m.signature;
            expect(f, integral && m.p1.value == 3 * *m.signature, e + ": p_1 != 3 sigma");
            if (integral && m.w[2].is_zero()) {
                const long long k = m.p1.value;
                expect(f, k % 2 == 0 && (((k / 2) % 2 != 0) == a.evaluate_top(m.w[4])), e + ": z parity");
                ++spin4_instances;
            }
        }
    }
    expect(f, sq2_instances > 0 && spin4_instances > 0, "suites saw no instances");
    return f;
}

// Criterion 5: span bounds, monotonicity, consistency.
Failures span_bounds()
{
    Failures f;
    auto bounds_are = [&](const std::string& expr, int lo, int hi) {
        const SpanBounds b = stable_span_bounds(parse_expression(expr));
        expect(f, b.lower == lo && b.upper == hi,
               expr + ": (" + std::to_string(b.lower) + ", " + std::to_string(b.upper) + ")");
    };
    bounds_are("RP4", 0, 0);
    bounds_are("K3", 1, 2);
    for (int n = 1; n <= 12; ++n)
        bounds_are("S" + std::to_string(n), n, n);
    for (const auto& s : closure()) {
        const Manifold& m = s.manifold;
        std::vector<Outcome> tame(static_cast<std::size_t>(m.dim) + 1, Outcome::Unknown);
        for (int p = 2; p <= m.dim; ++p)
            tame[p] = decide_fold(m, Target::euclidean(p), true).outcome;
        for (int p = 2; p <= m.dim; ++p)
            for (int q = 2; q < p; ++q)
                expect(f, !(tame[p] == Outcome::Exists && tame[q] == Outcome::NotExists),
                       s.expression + ": tame monotonicity at " + std::to_string(q) + " < " + std::to_string(p));
        const SpanBounds b = stable_span_bounds(m);
        expect(f, b.lower <= b.upper, s.expression + ": crossed bounds");
        if (m.dim == 4 && !m.orientable && decide_fold(m, Target::euclidean(4), false).outcome == Outcome::Exists)
            expect(f, tame[3] == Outcome::Exists, s.expression + ": folds into R4 but not tamely into R3");
    }
    return f;
}

// Criterion 6: dimension gates and the sufficiency audit.
Failures dimension_gates()
{
    Failures f;
    std::size_t dim8 = 0, dim6 = 0;
    for (const auto& s : closure()) {
        const Manifold& m = s.manifold;
        for (int p = 1; p <= m.dim; ++p) {
            for (bool tame : {false, true}) {
                const Verdict v = decide_fold(m, Target::euclidean(p), tame);
                for (const auto& t : v.trace) {
                    if (t.effect == Outcome::NotExists)
                        expect(f, t.kind == RuleKind::Exact || t.kind == RuleKind::Necessary,
                               s.expression + ": NotExists from " + t.rule);
                    if (t.effect == Outcome::Exists)
                        expect(f, t.kind == RuleKind::Exact || t.kind == RuleKind::Sufficient,
                               s.expression + ": Exists from " + t.rule);
                }
                const TraceEntry* d = deciding(v);
                expect(f, d != nullptr, s.expression + ": verdict without a deciding entry");
                if (!d)
                    continue;
                if (m.dim == 8 && m.orientable && p == 4) {
                    ++dim8;
                    bool gate = false;
                    for (const auto& t : v.trace)
                        gate |= t.rule == "dim8_gap";
                    expect(f, gate, s.expression + ": dim 8 query skipped the exclusion");
                    if (v.outcome == Outcome::Unknown)
                        expect(f, d->citation == "Rem 4.4", s.expression + ": Unknown cites " + d->citation);
                    // Past the gate only the stable-span chain may decide: Eliashberg,
                    // the span bounds, or the chi = 0 three-frame criterion behind them.
                    if (v.outcome == Outcome::Exists)
                        expect(f, d->rule == "eliashberg" || d->rule == "span_lower" || d->rule == "frame_4k.sigma",
                               s.expression + ": Exists via " + d->rule);
                    if (v.outcome == Outcome::NotExists)
                        expect(f, d->rule == "span_upper" || d->rule == "frame_4k.w" || d->rule == "frame_4k.sigma",
                               s.expression + ": NotExists via " + d->rule);
                }
                if (m.dim == 6 && !m.orientable && p == 3) {
                    ++dim6;
                    if (v.outcome == Outcome::Exists)
                        expect(f, d->rule == "six_R3.w4", s.expression + ": dim 6 Exists via " + d->rule);
                    if (v.outcome == Outcome::NotExists)
                        expect(f, tame && d->rule == "span_upper", s.expression + ": dim 6 NotExists via " + d->rule);
                }
            }
        }
    }
    expect(f, dim8 > 0 && dim6 > 0, "no gated instances in the closure");
    return f;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Criterion 7: CLI golden files and malformed input.
Failures cli_contract()
{
    struct Case {
        std::string stem;
        cli::Request req;
    };
    auto req = [](std::string cmd, std::string m, std::optional<std::string> t, bool tame, std::string format) {
        cli::Request r;
        r.command = std::move(cmd);
        r.manifold = std::move(m);
        r.target = std::move(t);
        r.tame = tame;
        r.format = std::move(format);
        return r;
    };
    const std::vector<Case> cases = {
        {"decide_rp4_r4_json", req("decide", "RP4", "R4", false, "json")},
        {"decide_3rp4_r3_tame", req("decide", "3#RP4", "R3", true, "text")},
        {"thom_rp4_s1", req("thom", "RP4 x S1", std::nullopt, false, "text")},
        {"decide_rp4_s3_r3", req("decide", "RP4 # S3", "R3", false, "text")},
    };
    Failures f;
    const std::string dir = FOLDCHECK_GOLDEN_DIR;
    for (const auto& c : cases) {
        const cli::Response a = cli::run(c.req);
        const cli::Response b = cli::run(c.req);
        expect(f, a.out == b.out && a.err == b.err, c.stem + ": output not stable");
        const std::string base = dir + "/" + c.stem;
        expect(f, a.out == slurp(base + ".out"), c.stem + ": stdout differs from golden file");
        expect(f, a.err == slurp(base + ".err"), c.stem + ": stderr differs from golden file");
        expect(f, std::to_string(a.exit_code) + "\n" == slurp(base + ".code"), c.stem + ": exit code differs");
    }
    for (const char* bad : {"RP4 # S3", "RP(4)", "S2 x", "Q7", "3#", "(S2 x S2"}) {
        const cli::Response r = cli::run(req("invariants", bad, std::nullopt, false, "text"));
        expect(f, r.exit_code == 2, std::string(bad) + ": exit " + std::to_string(r.exit_code));
        expect(f, r.err.find("position") != std::string::npos, std::string(bad) + ": no position in " + r.err);
    }
    return f;
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Failures()>>> criteria = {
        {"golden verdict table", verdict_table},
        {"Thom polynomial vanishing on RP4 x S^k", thom_vanishing},
        {"Wu engine agrees with the exhaustive oracle", wu_oracle},
        {"invariant suites over the catalog closure", invariant_suites},
        {"stable span bounds", span_bounds},
        {"dimension gates and sufficiency audit", dimension_gates},
        {"CLI contract", cli_contract},
    };
    std::cout << "catalog closure: " << closure().size() << " manifolds\n";
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Failures f;
        try {
            f = criteria[i].second();
        } catch (const std::exception& e) {
            f.push_back(std::string("exception: ") + e.what());
        }
        std::cout << (f.empty() ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << "\n";
        const std::size_t shown = std::min<std::size_t>(f.size(), 10);
        for (std::size_t k = 0; k < shown; ++k)
            std::cout << "    " << f[k] << "\n";
        if (f.size() > shown)
            std::cout << "    ... " << f.size() - shown << " more\n";
        failed += !f.empty();
    }
    return failed == 0 ? 0 : 1;
}
