#include "foldcheck/cli.hpp"

#include <sstream>

#include "foldcheck/char_engine.hpp"
#include "foldcheck/document.hpp"
#include "foldcheck/errors.hpp"
#include "foldcheck/expression.hpp"

namespace foldcheck::cli {

namespace {

class UsageError : public Error {
public:
    using Error::Error;
};

const char* upper(Outcome o)
{
    switch (o) {
    case Outcome::Exists:
        return "EXISTS";
    case Outcome::NotExists:
        return "NOT EXISTS";
    case Outcome::Unknown:
        break;
    }
    return "UNKNOWN";
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json total_json(const TotalClass& t)
{
    Json out = Json::array();
    for (const auto& c : t.components)
        out.push_back(coords_to_json(c.coords));
    return out;
}

TriState z_or_none(const Manifold& m, bool& defined)
{
    defined = m.dim < 2 || m.w[2].is_zero();
    return defined ? z_status(m) : TriState::unknown("w_2 != 0");
}

Json entry_json(const TraceEntry& e)
{
    return Json{{"rule", e.rule}, {"citation", e.citation}, {"obstruction", e.obstruction}, {"value", e.value}};
}

std::vector<const TraceEntry*> shown_entries(const Verdict& v, bool explain)
{
    std::vector<const TraceEntry*> out;
    if (explain) {
        for (const auto& e : v.trace)
            out.push_back(&e);
    } else if (const TraceEntry* e = v.deciding_entry()) {
        out.push_back(e);
    }
    if (out.empty() && !v.trace.empty())
        out.push_back(&v.trace.back());
    return out;
}

int parse_positive(const std::string& s, const std::string& what)
{
    if (s.empty() || s.size() > 6 || s.find_first_not_of("0123456789") != std::string::npos)
        throw UsageError("invalid " + what + " '" + s + "'");
    return std::stoi(s);
}

}  // namespace

bool names_file(const std::string& argument)
{
    const std::string ext = ".json";
    return argument.find('/') != std::string::npos ||
           (argument.size() >= ext.size() && argument.compare(argument.size() - ext.size(), ext.size(), ext) == 0);
}

Manifold resolve_manifold(const std::string& argument)
{
    return names_file(argument) ? load_manifold_file(argument) : parse_expression(argument);
}

Target parse_target(const std::string& text, const Manifold& m)
{
    if (text == "self")
        return Target::self(m);
    if (text.size() > 1 && text[0] == 'R')
        return Target::euclidean(parse_positive(text.substr(1), "target dimension"));
    const std::string sphere = "sphere:", pullback = "pullback:";
    if (text.rfind(sphere, 0) == 0)
        return Target::sphere(parse_positive(text.substr(sphere.size()), "target dimension"));
    if (text.rfind(pullback, 0) == 0) {
        const std::string path = text.substr(pullback.size());
        if (path.empty())
            throw UsageError("pullback target needs a descriptor file");
        BundleDescriptor xi = load_descriptor_file(path, m);
        return Target::pullback(m.dim, std::move(xi), text);
    }
    throw UsageError("unrecognised target '" + text + "' (expected R<p>, sphere:<p>, self or pullback:<file>)");
}

std::string render_entry(const TraceEntry& e)
{
    const bool relation = !e.value.empty() && (e.value[0] == '<' || e.value[0] == '>');
    std::string s = "[" + e.citation + "] " + e.obstruction + (relation ? " " : " = ") + e.value;
    if (e.effect)
        s += std::string(" => ") + upper(*e.effect);
    return s;
}

std::string render_text(const Manifold& m)
{
    const GradedAlgebra& a = m.ring();
    std::ostringstream os;
    os << "manifold: " << m.name << "\n";
    os << "dim: " << m.dim << "\n";
    os << "orientable: " << (m.orientable ? "yes" : "no") << "\n";
    os << "euler: " << m.euler << "\n";
    os << "signature: " << (m.signature ? std::to_string(*m.signature) : std::string("none")) << "\n";
    os << "betti mod 2:";
    for (int d = 0; d <= m.dim; ++d)
        os << " " << a.rank(d);
    os << "\n";
    os << "w = " << a.format(m.w) << "\n";
    for (int d = 1; d <= m.dim; ++d)
        os << "  w_" << d << " = " << a.format(m.w[d]) << "\n";
    os << "wbar = " << a.format(dual_classes(m)) << "\n";
    os << "v = " << a.format(wu_classes(m)) << "\n";
    os << "p1: " << m.p1.to_string() << "\n";
    const TriState w3 = w3_twisted_status(m);
    os << "W3: " << to_string(w3.value) << " (" << w3.note << ")\n";
    bool defined = false;
    const TriState z = z_or_none(m, defined);
    if (defined)
        os << "z: " << to_string(z.value) << " (" << z.note << ")\n";
    else
        os << "z: undefined (w_2 != 0)\n";
    const StructureFlags f = structure_flags(m);
    os << "pin: " << (f.pin ? "yes" : "no") << "\n";
    os << "spin: " << (f.spin ? "yes" : "no") << "\n";
    os << "stably parallelizable: " << (m.stably_parallelizable ? "yes" : "no") << "\n";
    return os.str();
}

std::string render_text(const Manifold& m, const Target& t, const Verdict& v, bool explain)
{
    std::ostringstream os;
    os << "manifold: " << m.name << "\n";
    os << "target: " << t.label << "\n";
    os << "tame: " << (v.tame ? "yes" : "no") << "\n";
    os << "verdict: " << upper(v.outcome) << "\n";
    for (const TraceEntry* e : shown_entries(v, explain))
        os << render_entry(*e) << "\n";
    return os.str();
}

std::string render_text(const Manifold& m, const std::vector<ThomEntry>& table)
{
    std::ostringstream os;
    os << "manifold: " << m.name << "\n";
    for (const auto& e : table)
        os << e.singularity << ": " << e.value << " (" << to_string(e.status) << ")  [" << e.formula << "]\n";
    return os.str();
}

std::string render_text(const Manifold& m, const SpanBounds& b)
{
    std::ostringstream os;
    os << "manifold: " << m.name << "\n";
    os << "span^0 in [" << b.lower << ", " << b.upper << "]\n";
    os << "rules:";
    for (const auto& c : b.provenance)
        os << " [" << c << "]";
    os << "\n";
    return os.str();
}

namespace {

Json invariants_json(const Manifold& m)
{
    const GradedAlgebra& a = m.ring();
    Json j;
    j["manifold"] = m.name;
    j["dim"] = m.dim;
    j["orientable"] = m.orientable;
    j["euler"] = m.euler;
    j["signature"] = m.signature ? Json(*m.signature) : Json(nullptr);
    j["basis"] = a.basis();
    j["w"] = total_json(m.w);
    j["w_text"] = a.format(m.w);
    j["wbar"] = total_json(dual_classes(m));
    j["wu"] = total_json(wu_classes(m));
    j["p1"] = p1_to_json(m.p1);
    j["w3_twisted"] = to_string(w3_twisted_status(m).value);
    bool defined = false;
    const TriState z = z_or_none(m, defined);
    j["z"] = defined ? Json(to_string(z.value)) : Json(nullptr);
    const StructureFlags f = structure_flags(m);
    j["pin"] = f.pin;
    j["spin"] = f.spin;
    j["stably_parallelizable"] = m.stably_parallelizable;
    return j;
}

Response catalog(const Request& req)
{
    Response r;
    if (!req.manifold.empty()) {
        r.out = dump(to_document(resolve_manifold(req.manifold)));
        return r;
    }
    const char* names[] = {"S1", "S2", "S3", "S4", "RP2", "RP3", "RP4", "CP2", "CP2~", "K3",
                           "Sigma1", "Sigma2", "N1", "N2", "N3"};
    Json list = Json::array();
    std::ostringstream os;
    for (const char* n : names) {
        const Manifold m = parse_expression(n);
        list.push_back(Json{{"name", m.name},
                            {"dim", m.dim},
                            {"orientable", m.orientable},
                            {"euler", m.euler},
                            {"signature", m.signature ? Json(*m.signature) : Json(nullptr)}});
        os << m.name << "  dim " << m.dim << "  chi " << m.euler
           << (m.signature ? "  sigma " + std::to_string(*m.signature) : std::string()) << "  "
           << (m.orientable ? "orientable" : "non-orientable") << "\n";
    }
    os << "atoms: S<n> (n >= 1), RP<n>, CP<n>, CP2~, K3, Sigma<g>, N<k>; operators: x, #, k#T\n";
    r.out = req.format == "json" ? dump(list) : os.str();
    return r;
}

Response dispatch(const Request& req)
{
    if (req.format != "text" && req.format != "json")
        throw UsageError("format must be text or json");
    if (req.command == "catalog")
        return catalog(req);
    if (req.command != "invariants" && req.command != "decide" && req.command != "thom" && req.command != "span")
        throw UsageError("unknown command '" + req.command + "'");
    if (req.manifold.empty())
        throw UsageError(req.command + " needs a manifold");
    if (req.command == "decide" && !req.target)
        throw UsageError("decide needs --target");

    const Manifold m = resolve_manifold(req.manifold);
    const bool json = req.format == "json";
    Response r;

    if (req.command == "invariants") {
        r.out = json ? dump(invariants_json(m)) : render_text(m);
    } else if (req.command == "decide") {
        const Target t = parse_target(*req.target, m);
        Verdict v;
        try {
            v = decide_fold(m, t, req.tame);
        } catch (const PreconditionError& e) {
            throw UsageError(e.what());
        } catch (const DimensionMismatch& e) {
            throw UsageError(e.what());
        }
        if (json) {
            Json j;
            j["manifold"] = m.name;
            j["dim"] = m.dim;
            j["target"] = t.label;
            j["tame"] = v.tame;
            j["verdict"] = to_string(v.outcome);
            Json trace = Json::array();
            for (const TraceEntry* e : shown_entries(v, req.explain))
                trace.push_back(entry_json(*e));
            j["trace"] = trace;
            r.out = dump(j);
        } else {
            r.out = render_text(m, t, v, req.explain);
        }
    } else if (req.command == "thom") {
        std::optional<BundleDescriptor> xi;
        if (req.target) {
            const Target t = parse_target(*req.target, m);
            if (t.kind != Target::Kind::Pullback)
                throw UsageError("thom accepts only self or pullback:<file> targets");
            xi = t.xi;
        }
        std::vector<ThomEntry> table;
        try {
            table = thom_polynomials(m, xi);
        } catch (const PreconditionError& e) {
            throw UsageError(e.what());
        }
        if (json) {
            Json j;
            j["manifold"] = m.name;
            j["dim"] = m.dim;
            Json entries = Json::array();
            for (const auto& e : table)
                entries.push_back(Json{{"singularity", e.singularity},
                                       {"formula", e.formula},
                                       {"status", to_string(e.status)},
                                       {"value", e.value}});
            j["entries"] = entries;
            r.out = dump(j);
        } else {
            r.out = render_text(m, table);
        }
    } else {
        if (m.dim < 1)
            throw UsageError("span needs dim >= 1");
        const SpanBounds b = stable_span_bounds(m);
        if (json) {
            Json j;
            j["manifold"] = m.name;
            j["dim"] = m.dim;
            j["lower"] = b.lower;
            j["upper"] = b.upper;
            j["provenance"] = b.provenance;
            r.out = dump(j);
        } else {
            r.out = render_text(m, b);
        }
    }
    return r;
}

}  // namespace

Response run(const Request& request)
{
    try {
        return dispatch(request);
    } catch (const UsageError& e) {
        return {1, "", std::string("usage error: ") + e.what() + "\n"};
    } catch (const ExpressionError& e) {
        return {2, "", std::string("error: ") + e.what() + "\n"};
    } catch (const SchemaError& e) {
        return {2, "", std::string("error: ") + e.what() + "\n"};
    } catch (const InvariantViolation& e) {
        return {2, "", std::string("error: ") + e.what() + "\n"};
    } catch (const Error& e) {
        return {1, "", std::string("error: ") + e.what() + "\n"};
    }
}

}  // namespace foldcheck::cli
