#pragma once

#include <string>

#include "json.hpp"

#include "foldcheck/char_engine.hpp"
#include "foldcheck/manifold.hpp"

namespace foldcheck {

using Json = nlohmann::ordered_json;

// Manifold documents:
//   { "name"?, "dim", "orientable", "euler", "signature"?, "basis",
//     "mult": [[d1, i1, d2, i2, coords]...], "sq": [[k, d, i, coords]...],
//     "w"?, "p1", "w3_twisted"?, "stably_parallelizable"?, "h4_torsion_free"? }
// Unlisted products and squares take the AlgebraBuilder defaults. A missing
// "w" is derived from the Wu classes. Throws SchemaError for malformed
// documents and InvariantViolation for inconsistent ones.
Manifold load_manifold(const Json& doc);
Manifold load_manifold_text(const std::string& text);
Manifold load_manifold_file(const std::string& path);

Json to_document(const Manifold& m);

// Descriptor documents: { "rank", "w", "p1", "orientable" }, classes in the
// algebra of `base`.
BundleDescriptor load_descriptor(const Json& doc, const Manifold& base);
BundleDescriptor load_descriptor_file(const std::string& path, const Manifold& base);

Json p1_to_json(const P1Data& p);
Json coords_to_json(const BitVec& v);

}  // namespace foldcheck
