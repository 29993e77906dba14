#include "doctest.h"

#include "foldcheck/char_engine.hpp"
#include "foldcheck/errors.hpp"
#include "foldcheck/expression.hpp"

#include "closure.hpp"
#include "oracles.hpp"

using namespace foldcheck;
using foldcheck::testing::brute_wu;
using foldcheck::testing::closure;
using foldcheck::testing::pascal_mod2;
using foldcheck::testing::recursive_inverse;
using foldcheck::testing::total_square;

namespace {

// Generalised binomial mod 2 for a possibly negative upper entry.
bool coefficient(int top, int k)
{
    if (k == 0)
        return true;
    if (top < 0)
        return pascal_mod2(k - top - 1, k);  // C(-r, k) = (-1)^k C(r + k - 1, k)
    return pascal_mod2(top, k);
}

}  // namespace

TEST_CASE("Wu classes agree with the exhaustive solve")
{
    for (const auto& s : closure()) {
        INFO(s.expression);
        const GradedAlgebra& a = s.manifold.ring();
        const TotalClass v = brute_wu(a);
        CHECK(wu_classes(a) == v);
        CHECK(stiefel_whitney_from_wu(a) == total_square(a, v));
        CHECK(total_square(a, v) == s.manifold.w);
    }
}

TEST_CASE("dual classes invert w")
{
    for (const auto& s : closure()) {
        INFO(s.expression);
        const GradedAlgebra& a = s.manifold.ring();
        const TotalClass wbar = dual_classes(s.manifold);
        CHECK(wbar == recursive_inverse(a, s.manifold.w));
        CHECK(a.multiply_total(s.manifold.w, wbar) == a.unit_total());
    }
}

TEST_CASE("top Stiefel-Whitney class is the Euler characteristic mod 2")
{
    for (const auto& s : closure()) {
        INFO(s.expression);
        const Manifold& m = s.manifold;
        CHECK(m.ring().evaluate_top(m.w[m.dim]) == (m.euler % 2 != 0));
    }
}

TEST_CASE("Wu's formula for Sq^1 and Sq^2 on w_m")
{
    // Sq^k w_m = sum_t C(m - k + t - 1, t) w_{k-t} w_{m+t}
    for (const auto& s : closure()) {
        INFO(s.expression);
        const Manifold& m = s.manifold;
        const GradedAlgebra& a = m.ring();
        for (int k = 1; k <= 2; ++k) {
            for (int deg = k; deg + k <= m.dim; ++deg) {
                ClassZ2 rhs = a.zero(deg + k);
                for (int t = 0; t <= k; ++t)
                    if (coefficient(deg - k + t - 1, t))
                        rhs = rhs + a.multiply(m.w_at(k - t), m.w_at(deg + t));
                CHECK(a.steenrod_square(k, m.w[deg]) == rhs);
            }
        }
    }
}

TEST_CASE("Sq^2 w_4k = w_2 w_4k + w_4k+2 in dimensions 4k + 2")
{
    int instances = 0;
    for (const auto& s : closure()) {
        const Manifold& m = s.manifold;
        if (m.dim % 4 != 2 || m.dim < 6)
            continue;
        const GradedAlgebra& a = m.ring();
        const int d = m.dim - 2;
        INFO(s.expression);
        CHECK(a.steenrod_square(2, m.w[d]) == a.multiply(m.w[2], m.w[d]) + m.w[d + 2]);
        ++instances;
    }
    CHECK(instances > 20);
}

TEST_CASE("structure flags")
{
    const auto rp4 = structure_flags(parse_expression("RP4"));
    CHECK_FALSE(rp4.orientable);
    CHECK(rp4.pin);
    CHECK_FALSE(rp4.spin);
    const auto k3 = structure_flags(parse_expression("K3"));
    CHECK(k3.spin);
    CHECK(k3.pin);
    const auto cp2 = structure_flags(parse_expression("CP2"));
    CHECK(cp2.orientable);
    CHECK_FALSE(cp2.pin);
    CHECK(structure_flags(parse_expression("RP3")).spin);
}

TEST_CASE("W3 shadow")
{
    for (const auto& s : closure()) {
        const Manifold& m = s.manifold;
        if (m.dim < 3)
            continue;
        INFO(s.expression);
        const GradedAlgebra& a = m.ring();
        const ClassZ2 expect = a.steenrod_square(1, m.w[2]) + a.multiply(m.w[1], m.w[2]);
        CHECK(w3_shadow(a, m.w) == expect);
        const TriState st = w3_twisted_status(m);
        if (!expect.is_zero())
            CHECK(st.is_nonzero());
        if (m.w[2].is_zero())
            CHECK(st.is_zero());
    }
    CHECK(w3_twisted_status(parse_expression("RP4")).is_zero());
    CHECK(w3_twisted_status(parse_expression("3#RP4")).is_zero());
}

TEST_CASE("z-class")
{
    CHECK(z_status(parse_expression("K3")).is_nonzero());
    CHECK(z_status(parse_expression("S4")).is_zero());
    CHECK(z_status(parse_expression("RP4")).is_nonzero());
    CHECK(z_status(parse_expression("2#RP4")).is_zero());
    CHECK(z_status(parse_expression("S2 x S2")).is_zero());
    CHECK(z_status(parse_expression("RP3")).is_zero());
    CHECK_THROWS_AS(z_status(parse_expression("CP2")), PreconditionError);
    CHECK(z_status(parse_expression("RP4 x S1")).is_nonzero());
}

TEST_CASE("z parity on oriented spin 4-manifolds")
{
    for (const auto& s : closure()) {
        const Manifold& m = s.manifold;
        if (m.dim != 4 || !m.orientable || !m.w[2].is_zero())
            continue;
        INFO(s.expression);
        REQUIRE(m.p1.kind == P1Data::Kind::Integer);
        CHECK(m.p1.value == 3 * *m.signature);
        CHECK(m.p1.value % 2 == 0);
        CHECK(((m.p1.value / 2) % 2 != 0) == m.ring().evaluate_top(m.w[4]));
    }
}

TEST_CASE("p1 = 3 sigma on oriented 4-manifolds")
{
    for (const auto& s : closure()) {
        const Manifold& m = s.manifold;
        if (m.dim == 4 && m.orientable) {
            INFO(s.expression);
            REQUIRE(m.p1.kind == P1Data::Kind::Integer);
            CHECK(m.p1.value == 3 * *m.signature);
        }
    }
}

TEST_CASE("virtual differences")
{
    const Manifold k3 = parse_expression("K3");
    const VirtualBundle zero = virtual_difference(k3, tangent_descriptor(k3));
    CHECK(zero.stably_trivial);
    CHECK(zero.w == k3.ring().unit_total());
    CHECK(z_status(k3, zero).is_zero());

    const VirtualBundle tm = virtual_difference(k3, trivial_descriptor(k3, 4));
    CHECK_FALSE(tm.stably_trivial);
    CHECK(tm.w == k3.w);
    CHECK(z_status(k3, tm).is_nonzero());

    const Manifold s5 = parse_expression("S5");
    CHECK(virtual_difference(s5, trivial_descriptor(s5, 5)).stably_trivial);
}

TEST_CASE("descriptor validation")
{
    const Manifold rp4 = parse_expression("RP4");
    BundleDescriptor xi = trivial_descriptor(rp4, 4);
    CHECK_NOTHROW(check_descriptor(rp4, xi));
    xi.w_total.components[1] = rp4.ring().basis_class(1, 0);
    CHECK_THROWS_AS(check_descriptor(rp4, xi), PreconditionError);
    xi.orientable = false;
    CHECK_NOTHROW(check_descriptor(rp4, xi));
    BundleDescriptor small = trivial_descriptor(rp4, 1);
    small.w_total.components[2] = rp4.ring().basis_class(2, 0);
    CHECK_THROWS_AS(check_descriptor(rp4, small), PreconditionError);
    BundleDescriptor foreign = trivial_descriptor(parse_expression("RP4"), 4);
    CHECK_THROWS(check_descriptor(rp4, foreign));
}
