#pragma once

#include <optional>
#include <string>
#include <vector>

#include "foldcheck/char_engine.hpp"
#include "foldcheck/manifold.hpp"

namespace foldcheck {

enum class Outcome { Exists, NotExists, Unknown };

const char* to_string(Outcome o) noexcept;  // "exists", "not_exists", "unknown"

// Exact: an if-and-only-if criterion. Sufficient: may only conclude Exists.
// Necessary: may only conclude NotExists. Gap: blocks a conclusion.
// Note: informational.
enum class RuleKind { Exact, Sufficient, Necessary, Gap, Note };

const char* to_string(RuleKind k) noexcept;

struct Rule {
    std::string id;
    std::string citation;
    RuleKind kind;
};

const std::vector<Rule>& rule_registry();
const Rule& find_rule(const std::string& id);

struct TraceEntry {
    std::string rule;
    std::string citation;
    std::string obstruction;
    std::string value;
    RuleKind kind = RuleKind::Note;
    // The conclusion this entry supports, if it is decisive.
    std::optional<Outcome> effect;
};

struct Verdict {
    Outcome outcome = Outcome::Unknown;
    bool tame = false;
    std::vector<TraceEntry> trace;

    // Rejects effects the rule kind cannot carry.
    void add(const std::string& rule, std::string obstruction, std::string value,
             std::optional<Outcome> effect = std::nullopt);
    // Appends a decisive entry and sets the outcome.
    void conclude(const std::string& rule, std::string obstruction, std::string value, Outcome outcome);

    // Last entry supporting the outcome (the last gap entry for Unknown).
    const TraceEntry* deciding_entry() const;
};

struct Target {
    enum class Kind { Euclidean, Sphere, Pullback };

    Kind kind = Kind::Euclidean;
    int p = 1;
    std::optional<BundleDescriptor> xi;  // Pullback only
    std::string label;                   // display form, e.g. "R4"

    static Target euclidean(int p);
    static Target sphere(int p);
    static Target pullback(int n, BundleDescriptor xi, std::string label = "pullback");
    static Target self(const Manifold& m);
};

Verdict decide_low_codim(const Manifold& m, int p, bool tame = false);
Verdict decide_dim4_to_R4(const Manifold& m);
Verdict decide_equidim(const Manifold& m, const Target& target);
Verdict decide_highdim_to_R4(const Manifold& m);
Verdict decide_to_R3(const Manifold& m, bool tame);

// Routes to the specialised decider, then the sufficiency chain. Throws
// PreconditionError when p is out of range and RuleConflict when two rules
// disagree.
Verdict decide_fold(const Manifold& m, const Target& target, bool tame);

struct SpanBounds {
    int lower = 0;
    int upper = 0;
    std::vector<std::string> provenance;
};

SpanBounds stable_span_bounds(const Manifold& m);

struct ThomEntry {
    std::string singularity;
    std::string formula;  // dual form = simplified form
    Tri status = Tri::Unknown;
    std::string value;
    std::optional<ClassZ2> mod2;
};

// Thom polynomials of the stable singularities of maps M -> N with
// dim N = dim M, evaluated on TM (or TM - xi). Dimensions 4..7.
std::vector<ThomEntry> thom_polynomials(const Manifold& m, const std::optional<BundleDescriptor>& xi = std::nullopt);

}  // namespace foldcheck
