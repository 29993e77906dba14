#pragma once

#include <string>
#include <vector>

#include "foldcheck/manifold.hpp"

namespace foldcheck::testing {

struct Sample {
    std::string expression;
    Manifold manifold;
};

// Catalog atoms used by the property suites.
const std::vector<Sample>& atoms();

// Atoms plus every pairwise product and connected sum, capped at
// dimension 12 and total Betti number 128. Built once.
const std::vector<Sample>& closure();

}  // namespace foldcheck::testing
