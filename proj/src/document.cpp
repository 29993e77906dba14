#include "foldcheck/document.hpp"

#include <fstream>
#include <sstream>

#include "foldcheck/errors.hpp"

namespace foldcheck {

namespace {

[[noreturn]] void schema(const std::string& msg) { throw SchemaError(msg); }

const Json& field(const Json& doc, const char* key)
{
    auto it = doc.find(key);
    if (it == doc.end())
        schema(std::string("missing field \"") + key + "\"");
    return *it;
}

long long as_int(const Json& j, const std::string& where)
{
    if (!j.is_number_integer())
        schema(where + " must be an integer");
    return j.get<long long>();
}

std::size_t as_index(const Json& j, const std::string& where)
{
    const long long v = as_int(j, where);
    if (v < 0)
        schema(where + " must be non-negative");
    return static_cast<std::size_t>(v);
}

bool as_bool(const Json& j, const std::string& where)
{
    if (!j.is_boolean())
        schema(where + " must be a boolean");
    return j.get<bool>();
}

BitVec as_coords(const Json& j, const std::string& where)
{
    if (!j.is_array())
        schema(where + " must be a list of 0/1 entries");
    BitVec v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_integer() || (j[i].get<long long>() != 0 && j[i].get<long long>() != 1))
            schema(where + " entry " + std::to_string(i) + " must be 0 or 1");
        if (j[i].get<long long>() == 1)
            v.set(i);
    }
    return v;
}

P1Data as_p1(const Json& j)
{
    if (j.is_object()) {
        if (j.size() != 1 || !j.contains("int"))
            schema("p1 object must be {\"int\": k}");
        return P1Data::integer(as_int(j["int"], "p1.int"), "from document");
    }
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "zero")
            return P1Data::zero_class("from document");
        if (s == "nonzero")
            return P1Data::nonzero_class("from document");
        if (s == "unknown")
            return P1Data::unknown("from document");
    }
    schema("p1 must be {\"int\": k}, \"zero\", \"nonzero\" or \"unknown\"");
}

TriState as_tristate(const Json& j, const std::string& where)
{
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "zero")
            return TriState::zero("from document");
        if (s == "nonzero")
            return TriState::nonzero("from document");
        if (s == "unknown")
            return TriState::unknown("from document");
    }
    schema(where + " must be \"zero\", \"nonzero\" or \"unknown\"");
}

TotalClass as_total(const Json& j, const GradedAlgebra& a, const std::string& where)
{
    if (!j.is_array() || j.size() != static_cast<std::size_t>(a.top_degree()) + 1)
        schema(where + " must list one coordinate vector per degree 0.." + std::to_string(a.top_degree()));
    TotalClass t;
    for (int d = 0; d <= a.top_degree(); ++d) {
        const std::string at = where + "[" + std::to_string(d) + "]";
        BitVec v = as_coords(j[d], at);
        if (v.size() != a.rank(d))
            schema(at + " has " + std::to_string(v.size()) + " entries, expected " + std::to_string(a.rank(d)));
        t.components.push_back(a.make_class(d, std::move(v)));
    }
    return t;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        schema("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Json parse_json(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ExpressionError(e.byte, std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

Manifold load_manifold(const Json& doc)
{
    if (!doc.is_object())
        schema("manifold document must be an object");

    Manifold m;
    m.name = doc.contains("name") ? (doc["name"].is_string() ? doc["name"].get<std::string>() : "")
                                  : std::string("document");
    if (m.name.empty())
        schema("name must be a non-empty string");
    const long long dim = as_int(field(doc, "dim"), "dim");
    if (dim < 0 || dim > 64)
        schema("dim must lie in 0..64");
    m.dim = static_cast<int>(dim);
    m.orientable = as_bool(field(doc, "orientable"), "orientable");
    m.euler = as_int(field(doc, "euler"), "euler");
    if (doc.contains("signature"))
        m.signature = as_int(doc["signature"], "signature");

    const Json& jb = field(doc, "basis");
    if (!jb.is_array() || jb.size() != static_cast<std::size_t>(m.dim) + 1)
        schema("basis must list degrees 0.." + std::to_string(m.dim));
    Basis basis;
    for (std::size_t d = 0; d < jb.size(); ++d) {
        if (!jb[d].is_array())
            schema("basis[" + std::to_string(d) + "] must be a list of labels");
        std::vector<std::string> labels;
        for (const auto& l : jb[d]) {
            if (!l.is_string())
                schema("basis labels must be strings");
            labels.push_back(l.get<std::string>());
        }
        basis.push_back(std::move(labels));
    }

    AlgebraBuilder builder(basis);
    if (doc.contains("mult")) {
        const Json& jm = doc["mult"];
        if (!jm.is_array())
            schema("mult must be a list");
        for (std::size_t e = 0; e < jm.size(); ++e) {
            const std::string at = "mult[" + std::to_string(e) + "]";
            if (!jm[e].is_array() || jm[e].size() != 5)
                schema(at + " must be [deg1, idx1, deg2, idx2, coords]");
            try {
                builder.set_product(static_cast<int>(as_int(jm[e][0], at)), as_index(jm[e][1], at),
                                    static_cast<int>(as_int(jm[e][2], at)), as_index(jm[e][3], at),
                                    as_coords(jm[e][4], at));
            } catch (const SchemaError&) {
                throw;
            } catch (const Error& err) {
                schema(at + ": " + err.what());
            }
        }
    }
    if (doc.contains("sq")) {
        const Json& js = doc["sq"];
        if (!js.is_array())
            schema("sq must be a list");
        for (std::size_t e = 0; e < js.size(); ++e) {
            const std::string at = "sq[" + std::to_string(e) + "]";
            if (!js[e].is_array() || js[e].size() != 4)
                schema(at + " must be [k, deg, idx, coords]");
            try {
                builder.set_square(static_cast<int>(as_int(js[e][0], at)), static_cast<int>(as_int(js[e][1], at)),
                                   as_index(js[e][2], at), as_coords(js[e][3], at));
            } catch (const SchemaError&) {
                throw;
            } catch (const Error& err) {
                schema(at + ": " + err.what());
            }
        }
    }
    GradedAlgebra algebra = builder.build();
    require_valid(algebra);
    m.algebra = std::make_shared<const GradedAlgebra>(std::move(algebra));
    const GradedAlgebra& a = m.ring();

    m.w = doc.contains("w") ? as_total(doc["w"], a, "w") : stiefel_whitney_from_wu(a);
    m.p1 = as_p1(field(doc, "p1"));
    if (m.dim == 4 && m.orientable && m.p1.kind == P1Data::Kind::ZeroClass)
        m.p1 = P1Data::integer(0, m.p1.note);
    if (doc.contains("w3_twisted")) {
        m.w3_twisted = as_tristate(doc["w3_twisted"], "w3_twisted");
    } else if (m.dim < 3 || m.w_at(2).is_zero()) {
        m.w3_twisted = TriState::zero("w2 = 0");
    } else if (!w3_shadow(a, m.w).is_zero()) {
        m.w3_twisted = TriState::nonzero("w3 shadow nonzero");
    } else {
        m.w3_twisted = TriState::unknown("not recorded");
    }
    if (doc.contains("stably_parallelizable"))
        m.stably_parallelizable = as_bool(doc["stably_parallelizable"], "stably_parallelizable");
    if (doc.contains("h4_torsion_free"))
        m.h4_torsion_free = as_bool(doc["h4_torsion_free"], "h4_torsion_free");

    require_invariants(m);
    return m;
}

Manifold load_manifold_text(const std::string& text) { return load_manifold(parse_json(text)); }

Manifold load_manifold_file(const std::string& path) { return load_manifold_text(read_file(path)); }

Json coords_to_json(const BitVec& v)
{
    Json out = Json::array();
    for (int b : v.to_bits())
        out.push_back(b);
    return out;
}

Json p1_to_json(const P1Data& p)
{
    switch (p.kind) {
    case P1Data::Kind::Integer:
        return Json{{"int", p.value}};
    case P1Data::Kind::ZeroClass:
        return "zero";
    case P1Data::Kind::NonzeroClass:
        return "nonzero";
    case P1Data::Kind::Unknown:
        break;
    }
    return "unknown";
}

Json to_document(const Manifold& m)
{
    const GradedAlgebra& a = m.ring();
    Json doc;
    doc["name"] = m.name;
    doc["dim"] = m.dim;
    doc["orientable"] = m.orientable;
    doc["euler"] = m.euler;
    if (m.signature)
        doc["signature"] = *m.signature;
    doc["basis"] = a.basis();

    Json mult = Json::array();
    for (int d1 = 1; d1 <= m.dim; ++d1)
        for (int d2 = d1; d1 + d2 <= m.dim; ++d2)
            for (std::size_t i = 0; i < a.rank(d1); ++i)
                for (std::size_t j = d1 == d2 ? i : 0; j < a.rank(d2); ++j) {
                    const BitVec& v = a.product(d1, i, d2, j);
                    if (v.any())
                        mult.push_back(Json{d1, i, d2, j, coords_to_json(v)});
                }
    doc["mult"] = mult;

    Json sq = Json::array();
    for (int d = 1; d <= m.dim; ++d)
        for (std::size_t i = 0; i < a.rank(d); ++i)
            for (int k = 1; k < d && d + k <= m.dim; ++k) {
                const BitVec v = a.square(k, d, i);
                if (v.any())
                    sq.push_back(Json{k, d, i, coords_to_json(v)});
            }
    doc["sq"] = sq;

    Json w = Json::array();
    for (const auto& c : m.w.components)
        w.push_back(coords_to_json(c.coords));
    doc["w"] = w;
    doc["p1"] = p1_to_json(m.p1);
    doc["w3_twisted"] = to_string(m.w3_twisted.value);
    doc["stably_parallelizable"] = m.stably_parallelizable;
    if (m.h4_torsion_free)
        doc["h4_torsion_free"] = *m.h4_torsion_free;
    return doc;
}

BundleDescriptor load_descriptor(const Json& doc, const Manifold& base)
{
    if (!doc.is_object())
        schema("descriptor document must be an object");
    BundleDescriptor xi;
    const long long rank = as_int(field(doc, "rank"), "rank");
    if (rank < 0)
        schema("rank must be non-negative");
    xi.rank = static_cast<int>(rank);
    xi.w_total = as_total(field(doc, "w"), base.ring(), "w");
    xi.p1 = as_p1(field(doc, "p1"));
    xi.orientable = as_bool(field(doc, "orientable"), "orientable");
    try {
        check_descriptor(base, xi);
    } catch (const PreconditionError& e) {
        schema(std::string("descriptor: ") + e.what());
    } catch (const DimensionMismatch& e) {
        schema(std::string("descriptor: ") + e.what());
    }
    return xi;
}

BundleDescriptor load_descriptor_file(const std::string& path, const Manifold& base)
{
    return load_descriptor(parse_json(read_file(path)), base);
}

}  // namespace foldcheck
