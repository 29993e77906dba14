#pragma once

#include <string>

#include "foldcheck/manifold.hpp"

namespace foldcheck {

// Grammar:
//   sum    := prod ( "#" prod )*
//   prod   := factor ( "x" factor )*
//   factor := INT "#" factor | atom | "(" sum ")"
//   atom   := S<n> | RP<n> | CP<n> | CP2~ | K3 | Sigma<g> | N<k>
// Whitespace is ignored. Errors carry a 1-based position into `text`.
Manifold parse_expression(const std::string& text);

}  // namespace foldcheck
