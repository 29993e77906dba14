#include "foldcheck/fold_decider.hpp"

#include <algorithm>
#include <map>

#include "foldcheck/errors.hpp"

namespace foldcheck {

const char* to_string(Outcome o) noexcept
{
    switch (o) {
    case Outcome::Exists:
        return "exists";
    case Outcome::NotExists:
        return "not_exists";
    case Outcome::Unknown:
        break;
    }
    return "unknown";
}

const char* to_string(RuleKind k) noexcept
{
    switch (k) {
    case RuleKind::Exact:
        return "exact";
    case RuleKind::Sufficient:
        return "sufficient";
    case RuleKind::Necessary:
        return "necessary";
    case RuleKind::Gap:
        return "gap";
    case RuleKind::Note:
        break;
    }
    return "note";
}

const std::vector<Rule>& rule_registry()
{
    using K = RuleKind;
    static const std::vector<Rule> rules = {
        {"morse", "Morse", K::Exact},
        {"thom_levine", "Thom-Levine", K::Exact},
        {"odd_dim_R2", "Cor 2.4", K::Sufficient},
        {"tame_even_codim", "Cor 2.4", K::Note},
        {"sphere_target", "TS^p stably trivial", K::Note},
        {"eliashberg", "Eliashberg (stably parallelizable)", K::Sufficient},
        {"span_lower", "Cor 2.4", K::Sufficient},
        {"span_upper", "Cor 2.4", K::Necessary},
        {"dim4_R4.w2", "Cor 3.5", K::Exact},
        {"dim4_R4.p1", "Cor 3.5(i)", K::Exact},
        {"dim4_R4.p1_unknown", "Cor 3.5(i)", K::Gap},
        {"dim4_R4.w4", "Cor 3.5(ii)", K::Exact},
        {"equidim4.w2", "Thm 3.4", K::Exact},
        {"equidim4.p1", "Thm 3.4(i)", K::Exact},
        {"equidim4.p1_unknown", "Thm 3.4(i)", K::Gap},
        {"equidim4.w4", "Thm 3.4(ii)", K::Exact},
        {"equidim.w2", "Thm 3.7", K::Exact},
        {"equidim.z", "Thm 3.7", K::Exact},
        {"equidim.z_unknown", "Thm 3.7", K::Gap},
        {"equidim.dim_gap", "Thm 3.7", K::Gap},
        {"highdim_4k.w", "Thm 4.3", K::Exact},
        {"highdim_4k.sigma", "Thm 4.3", K::Exact},
        {"highdim_4k.orientation", "Thm 4.3", K::Gap},
        {"highdim_4k2.w", "Thm 4.6", K::Exact},
        {"dim8_gap", "Rem 4.4", K::Gap},
        {"dim6_gap", "Rem 4.7", K::Gap},
        {"frame_4k.chi", "Thm 4.2; Thm 4.1", K::Note},
        {"frame_4k.w", "Thm 4.2; Thm 4.1", K::Exact},
        {"frame_4k.sigma", "Thm 4.2; Thm 4.1", K::Exact},
        {"frame_4k2.chi", "Thm 4.5; Thm 4.1", K::Note},
        {"frame_4k2.w", "Thm 4.5; Thm 4.1", K::Exact},
        {"tame_R3.w3", "Thm 5.1", K::Exact},
        {"tame_R3.w4", "Thm 5.1", K::Exact},
        {"tame_R3.w3_unknown", "Thm 5.1", K::Gap},
        {"fold_R3.via_tame", "Thm 5.1", K::Sufficient},
        {"fold_R3.gap", "Rem 5.5", K::Gap},
        {"oriented4_R3", "external criterion for oriented 4-manifolds into R^3", K::Gap},
        {"odd_R3", "Rem 5.10", K::Exact},
        {"even_R3.oriented", "Rem 5.10", K::Sufficient},
        {"even_R3.tame_gap", "Rem 5.10", K::Gap},
        {"even_R3.nonorientable_gap", "Rem 5.10", K::Gap},
        {"six_R3.oriented", "Thm 5.8", K::Sufficient},
        {"six_R3.w4", "Thm 5.8", K::Sufficient},
        {"six_R3.gap", "Thm 5.8", K::Gap},
        {"no_criterion", "no applicable result", K::Gap},
    };
    return rules;
}

const Rule& find_rule(const std::string& id)
{
    static const std::map<std::string, const Rule*> index = [] {
        std::map<std::string, const Rule*> out;
        for (const auto& r : rule_registry())
            out[r.id] = &r;
        return out;
    }();
    auto it = index.find(id);
    if (it == index.end())
        throw Error("unregistered rule " + id);
    return *it->second;
}

void Verdict::add(const std::string& rule, std::string obstruction, std::string value, std::optional<Outcome> effect)
{
    const Rule& r = find_rule(rule);
    if (effect) {
        const bool ok = (r.kind == RuleKind::Exact) || (r.kind == RuleKind::Sufficient && *effect == Outcome::Exists) ||
                        (r.kind == RuleKind::Necessary && *effect == Outcome::NotExists) ||
                        (r.kind == RuleKind::Gap && *effect == Outcome::Unknown);
        if (!ok)
            throw RuleConflict("rule " + rule + " (" + to_string(r.kind) + ") cannot conclude " + to_string(*effect));
    }
    trace.push_back({r.id, r.citation, std::move(obstruction), std::move(value), r.kind, effect});
}

void Verdict::conclude(const std::string& rule, std::string obstruction, std::string value, Outcome o)
{
    add(rule, std::move(obstruction), std::move(value), o);
    outcome = o;
}

const TraceEntry* Verdict::deciding_entry() const
{
    for (auto it = trace.rbegin(); it != trace.rend(); ++it)
        if (it->effect == outcome)
            return &*it;
    return nullptr;
}

Target Target::euclidean(int p) { return {Kind::Euclidean, p, std::nullopt, "R" + std::to_string(p)}; }

Target Target::sphere(int p) { return {Kind::Sphere, p, std::nullopt, "sphere:" + std::to_string(p)}; }

Target Target::pullback(int n, BundleDescriptor xi, std::string label)
{
    return {Kind::Pullback, n, std::move(xi), std::move(label)};
}

Target Target::self(const Manifold& m) { return pullback(m.dim, tangent_descriptor(m), "self"); }

namespace {

std::string fmt(const Manifold& m, const ClassZ2& c) { return m.ring().format(c); }

std::string wname(int k) { return "w_" + std::to_string(k); }

Outcome zero_means_exists(bool zero) { return zero ? Outcome::Exists : Outcome::NotExists; }

long long mod8(long long s) { return ((s % 8) + 8) % 8; }

void require_dim(const Manifold& m, bool ok, const std::string& what)
{
    if (!ok)
        throw PreconditionError(what + " (dim " + std::to_string(m.dim) + ")");
}

// The 3-frame criteria, valid when chi = 0. Returns nullopt when the
// hypotheses of neither theorem hold.
std::optional<bool> frame_criterion(const Manifold& m, Verdict* v)
{
    const int n = m.dim;
    if (m.euler != 0 || n % 2 != 0)
        return std::nullopt;
    if (n % 4 == 0 && n >= 8 && m.orientable && m.signature) {
        const bool w = m.w_at(n - 2).is_zero();
        const bool s = mod8(*m.signature) == 0;
        if (v) {
            v->add("frame_4k.chi", "chi", "0");
            if (!w)
                v->conclude("frame_4k.w", wname(n - 2), fmt(m, m.w_at(n - 2)), Outcome::NotExists);
            else
                v->conclude("frame_4k.sigma", "sigma mod 8", std::to_string(mod8(*m.signature)),
                            zero_means_exists(s));
        }
        return w && s;
    }
    if (n % 4 == 2 && ((m.orientable && n >= 6) || (!m.orientable && n >= 10))) {
        const bool w = m.w_at(n - 2).is_zero();
        if (v) {
            v->add("frame_4k2.chi", "chi", "0");
            v->conclude("frame_4k2.w", wname(n - 2), fmt(m, m.w_at(n - 2)), zero_means_exists(w));
        }
        return w;
    }
    return std::nullopt;
}

}  // namespace

Verdict decide_low_codim(const Manifold& m, int p, bool tame)
{
    Verdict v;
    v.tame = tame;
    if (p == 1) {
        require_dim(m, m.dim >= 1, "Morse functions need dim >= 1");
        v.conclude("morse", "critical points", "nondegenerate", Outcome::Exists);
        return v;
    }
    if (p != 2)
        throw PreconditionError("low codimension decider handles p = 1, 2");
    require_dim(m, m.dim >= 2, "fold maps into R^2 need dim >= 2");
    if (tame && m.dim % 2 == 1) {
        v.conclude("odd_dim_R2", "chi", "0 (odd dimension, span^0 >= 1)", Outcome::Exists);
        return v;
    }
    const bool even = m.euler % 2 == 0;
    v.conclude("thom_levine", "chi", std::to_string(m.euler) + (even ? " (even)" : " (odd)"),
               zero_means_exists(even));
    return v;
}

Verdict decide_dim4_to_R4(const Manifold& m)
{
    require_dim(m, m.dim == 4, "needs a 4-manifold");
    Verdict v;
    v.tame = true;
    const ClassZ2 w2 = m.w_at(2);
    if (!w2.is_zero()) {
        v.conclude("dim4_R4.w2", "w_2", fmt(m, w2), Outcome::NotExists);
        return v;
    }
    v.add("dim4_R4.w2", "w_2", "0");
    if (m.orientable) {
        if (m.p1.is_unknown())
            v.conclude("dim4_R4.p1_unknown", "p_1", "unknown", Outcome::Unknown);
        else
            v.conclude("dim4_R4.p1", "p_1", m.p1.to_string(), zero_means_exists(m.p1.vanishes()));
    } else {
        v.conclude("dim4_R4.w4", "w_4", fmt(m, m.w_at(4)), zero_means_exists(m.w_at(4).is_zero()));
    }
    return v;
}

Verdict decide_equidim(const Manifold& m, const Target& target)
{
    const int n = m.dim;
    if (target.p != n)
        throw DimensionMismatch("equidimensional decider needs target dimension " + std::to_string(n) + ", got " +
                                std::to_string(target.p));
    require_dim(m, n >= 1, "needs dim >= 1");
    const BundleDescriptor xi = target.kind == Target::Kind::Pullback ? *target.xi : trivial_descriptor(m, n);
    const VirtualBundle diff = virtual_difference(m, xi);

    Verdict v;
    v.tame = true;
    if (n >= 8) {
        v.conclude("equidim.dim_gap", "n", std::to_string(n) + " (criterion needs n < 8)", Outcome::Unknown);
        return v;
    }
    const bool four = n == 4;
    const ClassZ2 w2 = n >= 2 ? diff.w[2] : m.ring().zero(2);
    if (!w2.is_zero()) {
        v.conclude(four ? "equidim4.w2" : "equidim.w2", "w_2(TM - g*TN)", fmt(m, w2), Outcome::NotExists);
        return v;
    }
    v.add(four ? "equidim4.w2" : "equidim.w2", "w_2(TM - g*TN)", "0");
    if (four && m.orientable) {
        if (diff.p1.is_unknown())
            v.conclude("equidim4.p1_unknown", "p_1(TM - g*TN)", "unknown", Outcome::Unknown);
        else
            v.conclude("equidim4.p1", "p_1(TM - g*TN)", diff.p1.to_string(), zero_means_exists(diff.p1.vanishes()));
        return v;
    }
    if (four) {
        v.conclude("equidim4.w4", "w_4(TM - g*TN)", fmt(m, diff.w[4]), zero_means_exists(diff.w[4].is_zero()));
        return v;
    }
    const TriState z = z_status(m, diff);
    if (z.is_unknown())
        v.conclude("equidim.z_unknown", "z(TM - g*TN)", "unknown: " + z.note, Outcome::Unknown);
    else
        v.conclude("equidim.z", "z(TM - g*TN)", std::string(to_string(z.value)) + " (" + z.note + ")",
                   zero_means_exists(z.is_zero()));
    return v;
}

Verdict decide_highdim_to_R4(const Manifold& m)
{
    const int n = m.dim;
    require_dim(m, n >= 6 && n % 2 == 0, "needs even dimension >= 6");
    Verdict v;
    v.tame = true;
    const ClassZ2 w = m.w_at(n - 2);
    if (n % 4 == 0) {
        if (!m.orientable)
            throw PreconditionError("dimension 4k criterion needs an oriented manifold");
        const int k = n / 4;
        if (k > 2) {
            if (!w.is_zero()) {
                v.conclude("highdim_4k.w", wname(n - 2), fmt(m, w), Outcome::NotExists);
                return v;
            }
            v.add("highdim_4k.w", wname(n - 2), "0");
            const long long s = m.signature.value_or(0);
            v.conclude("highdim_4k.sigma", "sigma mod 8", std::to_string(mod8(s)) + " (sigma = " +
                                                               std::to_string(s) + ")",
                       zero_means_exists(mod8(s) == 0));
            return v;
        }
        v.add("dim8_gap", "n", "8 (technique excluded)", Outcome::Unknown);
    } else {
        const int k = (n - 2) / 4;
        if (k > 1) {
            v.conclude("highdim_4k2.w", wname(n - 2), fmt(m, w), zero_means_exists(w.is_zero()));
            return v;
        }
        v.add("dim6_gap", "n", "6 (technique excluded)", Outcome::Unknown);
    }
    if (m.stably_parallelizable) {
        v.conclude("eliashberg", "w", "1 (stably parallelizable)", Outcome::Exists);
        return v;
    }
    frame_criterion(m, &v);
    return v;
}

Verdict decide_to_R3(const Manifold& m, bool tame)
{
    const int n = m.dim;
    require_dim(m, n >= 3, "fold maps into R^3 need dim >= 3");
    if (n == 3)
        return decide_equidim(m, Target::euclidean(3));
    Verdict v;
    v.tame = tame;
    if (n == 4 && !m.orientable) {
        const TriState w3 = w3_twisted_status(m);
        const ClassZ2 w4 = m.w_at(4);
        const std::string w3_text = std::string(to_string(w3.value)) + " (" + w3.note + ")";
        if (!tame) {
            if (w3.is_zero() && w4.is_zero()) {
                v.add("tame_R3.w3", "W_3", w3_text);
                v.conclude("fold_R3.via_tame", "w_4", "0", Outcome::Exists);
            } else {
                v.conclude("fold_R3.gap", "W_3, w_4", w3_text + ", " + fmt(m, w4), Outcome::Unknown);
            }
            return v;
        }
        if (w3.is_nonzero()) {
            v.conclude("tame_R3.w3", "W_3", w3_text, Outcome::NotExists);
            return v;
        }
        if (!w4.is_zero()) {
            v.add("tame_R3.w3", "W_3", w3_text);
            v.conclude("tame_R3.w4", "w_4", fmt(m, w4), Outcome::NotExists);
            return v;
        }
        if (w3.is_unknown()) {
            v.add("tame_R3.w4", "w_4", "0");
            v.conclude("tame_R3.w3_unknown", "W_3", w3_text, Outcome::Unknown);
            return v;
        }
        v.add("tame_R3.w3", "W_3", w3_text);
        v.conclude("tame_R3.w4", "w_4", "0", Outcome::Exists);
        return v;
    }
    if (n == 4) {
        v.conclude("oriented4_R3", "criterion", "not stated here", Outcome::Unknown);
        return v;
    }
    if (n % 2 == 1) {
        const ClassZ2 w = m.w_at(n - 1);
        v.conclude("odd_R3", wname(n - 1), fmt(m, w), zero_means_exists(w.is_zero()));
        return v;
    }
    if (n == 6) {
        if (m.orientable) {
            v.conclude("six_R3.oriented", "orientable", "yes", Outcome::Exists);
        } else if (m.w_at(4).is_zero()) {
            v.conclude("six_R3.w4", "W_5", "0 (twisted Bockstein of w_4 = 0)", Outcome::Exists);
        } else {
            v.conclude("six_R3.gap", "W_5", "not determined (w_4 = " + fmt(m, m.w_at(4)) + ")", Outcome::Unknown);
        }
        return v;
    }
    if (!m.orientable)
        v.conclude("even_R3.nonorientable_gap", "orientable", "no", Outcome::Unknown);
    else if (tame)
        v.conclude("even_R3.tame_gap", "tame", "stated for fold maps only", Outcome::Unknown);
    else
        v.conclude("even_R3.oriented", "orientable", "yes", Outcome::Exists);
    return v;
}

namespace {

Verdict base_verdict(const Manifold& m, const Target& target, bool tame)
{
    const int n = m.dim, p = target.p;
    if (target.kind == Target::Kind::Pullback)
        return decide_equidim(m, target);
    if (p == 1 || p == 2)
        return decide_low_codim(m, p, tame);
    if (p == n)
        return n == 4 ? decide_dim4_to_R4(m) : decide_equidim(m, Target::euclidean(n));
    if (p == 3)
        return decide_to_R3(m, tame);
    Verdict v;
    v.tame = tame;
    if (p == 4 && n % 2 == 0 && n >= 6) {
        if (n % 4 == 0 && !m.orientable) {
            v.conclude("highdim_4k.orientation", "orientable", "no", Outcome::Unknown);
            return v;
        }
        return decide_highdim_to_R4(m);
    }
    v.conclude("no_criterion", "(n, p)", "(" + std::to_string(n) + ", " + std::to_string(p) + ")", Outcome::Unknown);
    return v;
}

void check_target(const Manifold& m, const Target& t)
{
    if (t.kind == Target::Kind::Pullback) {
        if (!t.xi)
            throw PreconditionError("pullback target needs a bundle descriptor");
        if (t.p != m.dim)
            throw DimensionMismatch("pullback target needs N of dimension " + std::to_string(m.dim));
        return;
    }
    if (t.p < 1)
        throw PreconditionError("target dimension must be at least 1");
    if (t.p > m.dim)
        throw PreconditionError("target dimension " + std::to_string(t.p) + " exceeds dim M = " +
                                std::to_string(m.dim));
}

}  // namespace

Verdict decide_fold(const Manifold& m, const Target& target, bool tame)
{
    check_target(m, target);
    const int n = m.dim, p = target.p;
    Verdict v;
    v.tame = tame;
    if (target.kind == Target::Kind::Sphere)
        v.add("sphere_target", "target", "S^" + std::to_string(p) + " treated as R^" + std::to_string(p));
    const bool even_codim = (n - p) % 2 == 0;
    if (even_codim && !tame)
        v.add("tame_even_codim", "n - p", std::to_string(n - p) + " (even: every fold map is tame)");
    const bool as_tame = tame || even_codim;

    Verdict base = base_verdict(m, target, as_tame);
    v.trace.insert(v.trace.end(), base.trace.begin(), base.trace.end());
    v.outcome = base.outcome;
    if (target.kind == Target::Kind::Pullback)
        return v;

    const SpanBounds span = stable_span_bounds(m);
    const bool chain_exists = m.stably_parallelizable || span.lower >= p - 1;
    const bool chain_not = as_tame && span.upper < p - 1;
    if (chain_exists && chain_not)
        throw RuleConflict(m.name + ": sufficiency and necessity rules disagree for " + target.label);
    if ((v.outcome == Outcome::Exists && chain_not) || (v.outcome == Outcome::NotExists && chain_exists))
        throw RuleConflict(m.name + ": " + target.label + " verdict contradicts the stable span bounds");
    if (v.outcome != Outcome::Unknown)
        return v;

    if (m.stably_parallelizable)
        v.conclude("eliashberg", "w", "1 (stably parallelizable)", Outcome::Exists);
    else if (chain_exists)
        v.conclude("span_lower", "span^0", ">= " + std::to_string(span.lower) + " >= p - 1 = " +
                                               std::to_string(p - 1),
                   Outcome::Exists);
    else if (chain_not)
        v.conclude("span_upper", "span^0", "<= " + std::to_string(span.upper) + " < p - 1 = " +
                                               std::to_string(p - 1),
                   Outcome::NotExists);
    return v;
}

SpanBounds stable_span_bounds(const Manifold& m)
{
    const int n = m.dim;
    require_dim(m, n >= 1, "stable span needs dim >= 1");
    SpanBounds b;
    b.lower = 0;
    b.upper = n;
    auto cite = [&](const std::string& c) {
        if (std::find(b.provenance.begin(), b.provenance.end(), c) == b.provenance.end())
            b.provenance.push_back(c);
    };
    if (m.stably_parallelizable) {
        b.lower = n;
        cite(find_rule("eliashberg").citation);
    }
    for (int p = 2; p <= n; ++p) {
        const Verdict v = base_verdict(m, Target::euclidean(p), true);
        const TraceEntry* e = v.deciding_entry();
        if (v.outcome == Outcome::Exists && p - 1 > b.lower) {
            b.lower = p - 1;
            cite(e->citation);
            cite(find_rule("span_lower").citation);
        } else if (v.outcome == Outcome::NotExists && p - 2 < b.upper) {
            b.upper = p - 2;
            cite(e->citation);
            cite(find_rule("span_upper").citation);
        }
    }
    if (auto frame = frame_criterion(m, nullptr)) {
        Verdict v;
        frame_criterion(m, &v);
        if (*frame)
            b.lower = std::max(b.lower, 3);
        else
            b.upper = std::min(b.upper, 2);
        cite(v.trace.back().citation);
    }
    if (b.lower > b.upper)
        throw RuleConflict(m.name + ": stable span bounds cross (" + std::to_string(b.lower) + " > " +
                           std::to_string(b.upper) + ")");
    return b;
}

std::vector<ThomEntry> thom_polynomials(const Manifold& m, const std::optional<BundleDescriptor>& xi)
{
    const int n = m.dim;
    if (n < 4 || n > 7)
        throw PreconditionError("Thom polynomial table covers dimensions 4 to 7, got " + std::to_string(n));
    const GradedAlgebra& a = m.ring();
    VirtualBundle bundle{m.w, m.p1, false};
    if (xi)
        bundle = virtual_difference(m, *xi);
    const TotalClass& w = bundle.w;
    const TotalClass wb = a.invert_total(w);
    auto mul = [&](const ClassZ2& x, const ClassZ2& y) { return a.multiply(x, y); };

    std::vector<ThomEntry> out;
    auto mod2 = [&](const std::string& name, const std::string& formula, const ClassZ2& dual, const ClassZ2& plain) {
        if (dual.coords != plain.coords)
            throw InvariantViolation("thom_identity", name + ": " + a.format(dual) + " != " + a.format(plain));
        out.push_back({name, formula, plain.is_zero() ? Tri::Zero : Tri::Nonzero, a.format(plain), plain});
    };
    mod2("fold", "wbar_1 = w_1", wb[1], w[1]);
    mod2("cusp (A_2)", "wbar_1^2 + wbar_2 = w_2", mul(wb[1], wb[1]) + wb[2], w[2]);
    mod2("swallowtail (A_3)", "wbar_1^3 + wbar_1 wbar_2 = w_1 w_2",
         mul(mul(wb[1], wb[1]), wb[1]) + mul(wb[1], wb[2]), mul(w[1], w[2]));
    mod2("butterfly (A_4)", "wbar_1^4 + wbar_1 wbar_3 = w_1 w_3",
         mul(mul(wb[1], wb[1]), mul(wb[1], wb[1])) + mul(wb[1], wb[3]), mul(w[1], w[3]));
    mod2("Sigma^{2,0} mod 2", "wbar_2^2 + wbar_1 wbar_3 = w_2^2 + w_1 w_3", mul(wb[2], wb[2]) + mul(wb[1], wb[3]),
         mul(w[2], w[2]) + mul(w[1], w[3]));

    ThomEntry integral;
    integral.singularity = "Sigma^{2,0} integral";
    if (n == 4) {
        integral.formula = "pbar_1 = -p_1";
        const P1Data& p = bundle.p1;
        if (p.kind == P1Data::Kind::Integer)
            integral.value = std::to_string(-p.value);
        else
            integral.value = p.to_string();
        integral.status = p.vanishes() ? Tri::Zero : p.nonvanishing() ? Tri::Nonzero : Tri::Unknown;
    } else {
        integral.formula = "p_1 + beta w_3";
        Tri beta = Tri::Unknown;
        if (w[3].is_zero())
            beta = Tri::Zero;
        else if (!mul(w[1], w[3]).is_zero())
            beta = Tri::Nonzero;
        const P1Data& p = bundle.p1;
        if (p.vanishes() && beta == Tri::Zero)
            integral.status = Tri::Zero;
        else if ((p.nonvanishing() && beta == Tri::Zero) || (p.vanishes() && beta == Tri::Nonzero))
            integral.status = Tri::Nonzero;
        else
            integral.status = Tri::Unknown;
        integral.value = integral.status == Tri::Zero ? "0"
                                                      : "p_1 " + p.to_string() + ", beta w_3 " + to_string(beta);
    }
    out.push_back(std::move(integral));
    return out;
}

}  // namespace foldcheck
