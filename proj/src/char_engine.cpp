#include "foldcheck/char_engine.hpp"

#include "foldcheck/errors.hpp"
#include "foldcheck/gf2.hpp"

namespace foldcheck {

TotalClass wu_classes(const GradedAlgebra& a)
{
    const int n = a.top_degree();
    TotalClass v;
    for (int k = 0; k <= n; ++k) {
        if (2 * k > n) {
            v.components.push_back(a.zero(k));
            continue;
        }
        // One equation per basis element x of degree n-k: <v x> = <Sq^k x>.
        const gf2::Matrix rows = pairing_matrix(a, n - k);
        BitVec rhs(a.rank(n - k));
        for (std::size_t j = 0; j < a.rank(n - k); ++j)
            if (a.square(k, n - k, j).test(0))
                rhs.set(j);
        auto sol = gf2::solve_unique(rows, rhs, a.rank(k));
        if (!sol)
            throw InvariantViolation("poincare_duality",
                                     "Wu system in degree " + std::to_string(k) + " has no unique solution");
        v.components.push_back(a.make_class(k, *sol));
    }
    return v;
}

TotalClass wu_classes(const Manifold& m) { return wu_classes(m.ring()); }

TotalClass stiefel_whitney_from_wu(const GradedAlgebra& a) { return a.total_sq(wu_classes(a)); }

TotalClass stiefel_whitney_from_wu(const Manifold& m)
{
    TotalClass w = stiefel_whitney_from_wu(m.ring());
    for (int d = 0; d <= m.dim; ++d)
        if (w[d].coords != m.w[d].coords)
            throw InvariantViolation("wu_formula", "stored w_" + std::to_string(d) + " = " +
                                                       m.ring().format(m.w[d]) + " differs from Sq(v) = " +
                                                       m.ring().format(w[d]));
    return w;
}

TotalClass dual_classes(const Manifold& m) { return m.ring().invert_total(m.w); }

StructureFlags structure_flags(const TotalClass& w)
{
    StructureFlags f;
    f.orientable = w.top_degree() < 1 || w[1].is_zero();
    f.pin = w.top_degree() < 2 || w[2].is_zero();
    f.spin = f.orientable && f.pin;
    return f;
}

StructureFlags structure_flags(const Manifold& m) { return structure_flags(m.w); }

StructureFlags structure_flags(const BundleDescriptor& xi) { return structure_flags(xi.w_total); }

ClassZ2 w3_shadow(const GradedAlgebra& a, const TotalClass& w)
{
    if (a.top_degree() < 3)
        return a.zero(3);
    return a.steenrod_square(1, w[2]) + a.multiply(w[1], w[2]);
}

TriState w3_twisted_status(const Manifold& m)
{
    if (m.dim < 2 || m.w[2].is_zero())
        return TriState::zero("W3 is the twisted Bockstein of w2 = 0");
    if (m.w3_twisted.is_zero())
        return m.w3_twisted;
    if (!w3_shadow(m.ring(), m.w).is_zero())
        return TriState::nonzero("mod-2 reduction Sq^1 w2 + w1 w2 = w3 is nonzero");
    if (m.w3_twisted.note.empty())
        return TriState{m.w3_twisted.value, "no rule applies"};
    return m.w3_twisted;
}

BundleDescriptor trivial_descriptor(const Manifold& m, int rank)
{
    BundleDescriptor xi;
    xi.rank = rank;
    xi.w_total = m.ring().unit_total();
    xi.p1 = P1Data::zero_class("trivial bundle");
    xi.orientable = true;
    xi.trivial = true;
    return xi;
}

BundleDescriptor tangent_descriptor(const Manifold& m)
{
    BundleDescriptor xi;
    xi.rank = m.dim;
    xi.w_total = m.w;
    xi.p1 = m.p1;
    xi.orientable = m.orientable;
    xi.tangent = true;
    return xi;
}

void check_descriptor(const Manifold& m, const BundleDescriptor& xi)
{
    if (xi.rank < 0)
        throw PreconditionError("bundle rank must be non-negative");
    if (xi.w_total.top_degree() != m.dim)
        throw DimensionMismatch("descriptor classes must cover degrees 0.." + std::to_string(m.dim));
    for (int d = 0; d <= m.dim; ++d) {
        m.ring().check_owned(xi.w_total[d]);
        if (xi.w_total[d].degree != d)
            throw PreconditionError("descriptor component " + std::to_string(d) + " has the wrong degree");
        if (d > xi.rank && !xi.w_total[d].is_zero())
            throw PreconditionError("w_" + std::to_string(d) + " of a rank-" + std::to_string(xi.rank) +
                                    " bundle must vanish");
    }
    if (xi.w_total[0] != m.ring().one())
        throw PreconditionError("descriptor needs w_0 = 1");
    if (m.dim >= 1 && xi.w_total[1].is_zero() != xi.orientable)
        throw PreconditionError("descriptor w_1 disagrees with its orientability");
}

namespace {

P1Data p1_difference(const P1Data& a, const P1Data& b)
{
    using K = P1Data::Kind;
    if (a.kind == K::Integer && b.kind == K::Integer)
        return P1Data::integer(a.value - b.value, "difference of evaluations");
    if (a.kind == K::Integer && b.vanishes())
        return P1Data::integer(a.value, "subtracting a vanishing class");
    if (b.kind == K::Integer && a.vanishes())
        return P1Data::integer(-b.value, "subtracting from a vanishing class");
    if (a.vanishes() && b.vanishes())
        return P1Data::zero_class("both classes vanish");
    if ((a.vanishes() && b.kind == K::NonzeroClass) || (a.kind == K::NonzeroClass && b.vanishes()))
        return P1Data::nonzero_class("exactly one class vanishes");
    return P1Data::unknown("difference of classes not determined");
}

}  // namespace

VirtualBundle virtual_difference(const Manifold& m, const BundleDescriptor& xi)
{
    check_descriptor(m, xi);
    VirtualBundle out;
    out.w = m.ring().multiply_total(m.w, m.ring().invert_total(xi.w_total));
    out.stably_trivial = xi.tangent || (xi.trivial && m.stably_parallelizable);
    if (xi.tangent)
        out.p1 = m.dim == 4 && m.orientable ? P1Data::integer(0, "TM - TM") : P1Data::zero_class("TM - TM");
    else
        out.p1 = p1_difference(m.p1, xi.p1);
    return out;
}

TriState z_status(const Manifold& m)
{
    VirtualBundle self{m.w, m.p1, m.stably_parallelizable};
    return z_status(m, self);
}

TriState z_status(const Manifold& m, const VirtualBundle& bundle)
{
    if (m.dim >= 2 && !bundle.w[2].is_zero())
        throw PreconditionError("pin structure required");
    if (m.dim < 4)
        return TriState::zero("H^4 vanishes");
    if (bundle.stably_trivial)
        return TriState::zero("stably trivial bundle");
    const bool w4 = !bundle.w[4].is_zero();
    if (m.dim == 4) {
        if (!m.orientable)
            return w4 ? TriState::nonzero("z = w4 under H^4(M;Z) = H^4(M;Z2)")
                      : TriState::zero("z = w4 under H^4(M;Z) = H^4(M;Z2)");
        if (bundle.p1.vanishes())
            return TriState::zero("2z = p1 = 0 in H^4(M;Z) = Z");
        if (bundle.p1.nonvanishing())
            return TriState::nonzero("2z = p1 != 0");
        return TriState::unknown("p1 unknown");
    }
    if (w4)
        return TriState::nonzero("z reduces to w4 != 0");
    if (bundle.p1.nonvanishing())
        return TriState::nonzero("2z = p1 != 0");
    if (bundle.p1.vanishes() && m.h4_torsion_free == true)
        return TriState::zero("2z = p1 = 0 and H^4(M;Z) is torsion-free");
    if (bundle.p1.vanishes())
        return TriState::unknown("p1 = 0 and w4 = 0, but torsion in H^4(M;Z) is not recorded as absent");
    return TriState::unknown("p1 unknown");
}

}  // namespace foldcheck
