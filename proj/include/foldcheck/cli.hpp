#pragma once

#include <optional>
#include <string>
#include <vector>

#include "foldcheck/fold_decider.hpp"
#include "foldcheck/manifold.hpp"

namespace foldcheck::cli {

struct Request {
    std::string command;  // invariants | decide | thom | span | catalog
    std::string manifold;  // expression or document path; may be empty for catalog
    std::optional<std::string> target;
    bool tame = false;
    std::string format = "text";
    bool explain = false;
};

struct Response {
    int exit_code = 0;
    std::string out;
    std::string err;
};

// 0: success, including Unknown verdicts. 1: usage error. 2: malformed
// expression or document.
Response run(const Request& request);

// A manifold argument names a document when it ends in ".json" or contains '/'.
bool names_file(const std::string& argument);

Manifold resolve_manifold(const std::string& argument);
Target parse_target(const std::string& text, const Manifold& m);

std::string render_text(const Manifold& m);
std::string render_text(const Manifold& m, const Target& t, const Verdict& v, bool explain);
std::string render_text(const Manifold& m, const std::vector<ThomEntry>& table);
std::string render_text(const Manifold& m, const SpanBounds& b);
std::string render_entry(const TraceEntry& e);

}  // namespace foldcheck::cli
