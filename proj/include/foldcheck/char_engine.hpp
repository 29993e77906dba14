#pragma once

#include "foldcheck/manifold.hpp"

namespace foldcheck {

// Stable data of a bundle over a manifold (typically g^*TN).
struct BundleDescriptor {
    int rank = 0;
    TotalClass w_total;
    P1Data p1;
    bool orientable = true;
    // Set by the constructors below; a descriptor read from a file has neither.
    bool trivial = false;
    bool tangent = false;
};

struct StructureFlags {
    bool orientable = true;
    bool spin = false;
    bool pin = false;
};

// v_k characterised by <v_k x, [M]> = <Sq^k x, [M]> for all x of degree n-k.
TotalClass wu_classes(const GradedAlgebra& a);
TotalClass wu_classes(const Manifold& m);

// Sq(v).
TotalClass stiefel_whitney_from_wu(const GradedAlgebra& a);
TotalClass stiefel_whitney_from_wu(const Manifold& m);

TotalClass dual_classes(const Manifold& m);

StructureFlags structure_flags(const TotalClass& w);
StructureFlags structure_flags(const Manifold& m);
StructureFlags structure_flags(const BundleDescriptor& xi);

// Sq^1 w_2 + w_1 w_2, the mod-2 image of the twisted Bockstein of w_2.
ClassZ2 w3_shadow(const GradedAlgebra& a, const TotalClass& w);

TriState w3_twisted_status(const Manifold& m);

BundleDescriptor trivial_descriptor(const Manifold& m, int rank);
BundleDescriptor tangent_descriptor(const Manifold& m);

// Throws on malformed descriptors (wrong algebra, missing unit, w_1 against orientability).
void check_descriptor(const Manifold& m, const BundleDescriptor& xi);

struct VirtualBundle {
    TotalClass w;
    P1Data p1;
    // Known to be stably trivial (TM - TM, or TM - trivial with M stably parallelizable).
    bool stably_trivial = false;
};

// TM - xi.
VirtualBundle virtual_difference(const Manifold& m, const BundleDescriptor& xi);

// The z-class of TM (or of a virtual bundle over M); needs w_2 = 0.
TriState z_status(const Manifold& m);
TriState z_status(const Manifold& m, const VirtualBundle& bundle);

}  // namespace foldcheck
