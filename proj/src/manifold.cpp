#include "foldcheck/manifold.hpp"

#include <sstream>

#include "foldcheck/char_engine.hpp"
#include "foldcheck/errors.hpp"

namespace foldcheck {

const char* to_string(Tri t) noexcept
{
    switch (t) {
    case Tri::Zero:
        return "zero";
    case Tri::Nonzero:
        return "nonzero";
    case Tri::Unknown:
        break;
    }
    return "unknown";
}

std::string P1Data::to_string() const
{
    switch (kind) {
    case Kind::Integer:
        return std::to_string(value);
    case Kind::ZeroClass:
        return "zero";
    case Kind::NonzeroClass:
        return "nonzero";
    case Kind::Unknown:
        break;
    }
    return "unknown";
}

ClassZ2 Manifold::w_at(int k) const
{
    if (k >= 0 && k <= dim)
        return w[k];
    return algebra->zero(k);
}

bool same_invariants(const Manifold& a, const Manifold& b)
{
    if (a.dim != b.dim || a.orientable != b.orientable || a.euler != b.euler || a.signature != b.signature ||
        !(a.p1 == b.p1) || !(a.w3_twisted == b.w3_twisted) || a.stably_parallelizable != b.stably_parallelizable ||
        a.h4_torsion_free != b.h4_torsion_free)
        return false;
    if (!a.algebra->same_structure(*b.algebra))
        return false;
    for (int d = 0; d <= a.dim; ++d)
        if (a.w[d].coords != b.w[d].coords)
            return false;
    return true;
}

namespace {

TotalClass total_from(const GradedAlgebra& a, const std::vector<BitVec>& coords)
{
    TotalClass t;
    for (int d = 0; d <= a.top_degree(); ++d)
        t.components.push_back(a.make_class(d, coords[d]));
    return t;
}

// Normal form of p1 data: Integer only for oriented 4-manifolds.
void normalize(Manifold& m)
{
    if (m.dim == 4 && m.orientable && m.p1.kind == P1Data::Kind::ZeroClass)
        m.p1 = P1Data::integer(0, m.p1.note);
}

Manifold finish(Manifold m)
{
    normalize(m);
    require_invariants(m);
    return m;
}

std::string power_label(const std::string& gen, int m)
{
    if (m == 0)
        return "1";
    if (m == 1)
        return gen;
    return gen + "^" + std::to_string(m);
}

// Truncated polynomial ring on one generator of degree g up to the m-th power,
// with Sq^{g j} gen^i = C(i, j) gen^{i+j}.
GradedAlgebra truncated_polynomial(const std::string& gen, int g, int top_power)
{
    const int n = g * top_power;
    Basis basis(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= top_power; ++i)
        basis[g * i].push_back(power_label(gen, i));
    AlgebraBuilder b(basis);
    for (int i = 1; i <= top_power; ++i)
        for (int j = 1; j <= top_power; ++j) {
            const std::size_t size = g * (i + j) <= n ? 1 : 0;
            BitVec v(size);
            if (size)
                v.set(0);
            b.set_product(g * i, 0, g * j, 0, v);
        }
    for (int i = 1; i <= top_power; ++i)
        for (int k = 0; k <= g * i; ++k) {
            const int target = g * i + k;
            BitVec v(target <= n && target % g == 0 ? 1 : 0);
            if (v.size() && k % g == 0 && binomial_mod2(i, k / g))
                v.set(0);
            b.set_square(k, g * i, 0, v);
        }
    return b.build();
}

// (1 + gen)^e in the truncated ring.
std::vector<BitVec> binomial_total(const GradedAlgebra& a, int g, long long e)
{
    std::vector<BitVec> coords;
    for (int d = 0; d <= a.top_degree(); ++d) {
        BitVec v(a.rank(d));
        if (d % g == 0 && v.size() && binomial_mod2(e, d / g))
            v.set(0);
        coords.push_back(v);
    }
    return coords;
}

std::vector<BitVec> unit_coords(const GradedAlgebra& a)
{
    std::vector<BitVec> coords;
    for (int d = 0; d <= a.top_degree(); ++d)
        coords.push_back(d == 0 ? BitVec::unit(1, 0) : BitVec(a.rank(d)));
    return coords;
}

Manifold shell(std::string name, int dim, bool orientable, long long euler, GradedAlgebra a)
{
    Manifold m;
    m.name = std::move(name);
    m.dim = dim;
    m.orientable = orientable;
    m.euler = euler;
    m.algebra = std::make_shared<const GradedAlgebra>(std::move(a));
    return m;
}

bool top_value(const Manifold& m, const ClassZ2& x) { return m.ring().evaluate_top(x); }

ClassZ2 w2_squared(const Manifold& m) { return m.ring().multiply(m.w_at(2), m.w_at(2)); }

}  // namespace

Manifold point()
{
    Manifold m = shell("pt", 0, true, 1, point_algebra());
    m.w = m.ring().unit_total();
    m.signature = 1;
    m.p1 = P1Data::zero_class("H^4 vanishes");
    m.w3_twisted = TriState::zero("H^3 vanishes");
    m.stably_parallelizable = true;
    m.h4_torsion_free = true;
    return finish(std::move(m));
}

Manifold sphere(int n)
{
    if (n < 1)
        throw OutOfRange("sphere dimension must be at least 1 (S0 is disconnected)");
    Basis basis(static_cast<std::size_t>(n) + 1);
    basis[0] = {"1"};
    basis[n] = {"s"};
    Manifold m = shell("S" + std::to_string(n), n, true, n % 2 == 0 ? 2 : 0, AlgebraBuilder(basis).build());
    m.w = m.ring().unit_total();
    if (n % 4 == 0)
        m.signature = 0;
    m.p1 = P1Data::zero_class("spheres are stably parallelizable");
    m.w3_twisted = TriState::zero(n == 3 ? "H^3 is torsion-free" : "H^3 vanishes");
    m.stably_parallelizable = true;
    m.h4_torsion_free = true;
    return finish(std::move(m));
}

Manifold real_projective(int n)
{
    if (n < 1)
        throw OutOfRange("RP(n) needs n >= 1");
    Manifold m = shell("RP" + std::to_string(n), n, n % 2 == 1, n % 2 == 0 ? 1 : 0, truncated_polynomial("a", 1, n));
    m.w = total_from(m.ring(), binomial_total(m.ring(), 1, n + 1));
    if (n < 4)
        m.p1 = P1Data::zero_class("H^4 vanishes");
    else if (binomial_mod2(n + 1, 2) == 0)
        m.p1 = P1Data::zero_class("p1 = C(n+1,2) times the generator of H^4 = Z/2");
    else
        m.p1 = P1Data::nonzero_class("p1 = C(n+1,2) times the generator of H^4 = Z/2");
    if (n < 3)
        m.w3_twisted = TriState::zero("H^3 vanishes");
    else if (n % 2 == 1)
        m.w3_twisted = TriState::zero("torsion of H^3 vanishes for odd RP(n)");
    else if (m.w_at(2).is_zero())
        m.w3_twisted = TriState::zero("w2 = 0");
    else
        m.w3_twisted = TriState::nonzero("w3 shadow nonzero");
    m.stably_parallelizable = n == 1 || n == 3 || n == 7;
    m.h4_torsion_free = n < 4;
    return finish(std::move(m));
}

Manifold complex_projective(int n)
{
    if (n < 1)
        throw OutOfRange("CP(n) needs n >= 1");
    Manifold m = shell("CP" + std::to_string(n), 2 * n, true, n + 1, truncated_polynomial("h", 2, n));
    m.w = total_from(m.ring(), binomial_total(m.ring(), 2, n + 1));
    if (n % 2 == 0)
        m.signature = 1;
    if (n == 1)
        m.p1 = P1Data::zero_class("H^4 vanishes");
    else if (n == 2)
        m.p1 = P1Data::integer(3, "p1 = 3h^2");
    else
        m.p1 = P1Data::nonzero_class("p1 = (n+1)h^2");
    m.w3_twisted = TriState::zero("H^3 vanishes");
    m.stably_parallelizable = n == 1;
    m.h4_torsion_free = true;
    return finish(std::move(m));
}

Manifold complex_projective_bar()
{
    Manifold m = shell("CP2~", 4, true, 3, truncated_polynomial("h", 2, 2));
    m.w = total_from(m.ring(), binomial_total(m.ring(), 2, 3));
    m.signature = -1;
    m.p1 = P1Data::integer(-3, "orientation reversed");
    m.w3_twisted = TriState::zero("H^3 vanishes");
    m.h4_torsion_free = true;
    return finish(std::move(m));
}

Manifold k3()
{
    Basis basis(5);
    basis[0] = {"1"};
    for (int i = 1; i <= 22; ++i)
        basis[2].push_back("x" + std::to_string(i));
    basis[4] = {"u"};

    // Mod-2 intersection form: two E8 blocks, then three hyperbolic planes.
    std::vector<std::pair<int, int>> edges;
    const std::pair<int, int> e8[] = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 7}};
    for (int block = 0; block < 2; ++block)
        for (auto [i, j] : e8)
            edges.emplace_back(8 * block + i, 8 * block + j);
    for (int h = 0; h < 3; ++h)
        edges.emplace_back(16 + 2 * h, 17 + 2 * h);

    AlgebraBuilder b(basis);
    for (auto [i, j] : edges)
        b.set_product(2, static_cast<std::size_t>(i), 2, static_cast<std::size_t>(j), BitVec::unit(1, 0));
    Manifold m = shell("K3", 4, true, 24, b.build());
    m.w = m.ring().unit_total();
    m.signature = -16;
    m.p1 = P1Data::integer(-48, "signature theorem");
    m.w3_twisted = TriState::zero("H^3 vanishes");
    m.h4_torsion_free = true;
    return finish(std::move(m));
}

Manifold orientable_surface(int genus)
{
    if (genus < 0)
        throw OutOfRange("genus must be non-negative");
    Basis basis(3);
    basis[0] = {"1"};
    for (int i = 1; i <= genus; ++i) {
        basis[1].push_back("x" + std::to_string(i));
        basis[1].push_back("y" + std::to_string(i));
    }
    basis[2] = {"u"};
    AlgebraBuilder b(basis);
    for (int i = 0; i < genus; ++i)
        b.set_product(1, 2 * i, 1, 2 * i + 1, BitVec::unit(1, 0));
    Manifold m = shell("Sigma" + std::to_string(genus), 2, true, 2 - 2 * genus, b.build());
    m.w = m.ring().unit_total();
    m.p1 = P1Data::zero_class("H^4 vanishes");
    m.w3_twisted = TriState::zero("H^3 vanishes");
    m.stably_parallelizable = true;
    m.h4_torsion_free = true;
    return finish(std::move(m));
}

Manifold nonorientable_surface(int k)
{
    if (k < 1)
        throw OutOfRange("N(k) needs k >= 1");
    Basis basis(3);
    basis[0] = {"1"};
    for (int i = 1; i <= k; ++i)
        basis[1].push_back("c" + std::to_string(i));
    basis[2] = {"u"};
    AlgebraBuilder b(basis);
    for (int i = 0; i < k; ++i)
        b.set_product(1, i, 1, i, BitVec::unit(1, 0));
    Manifold m = shell("N" + std::to_string(k), 2, false, 2 - k, b.build());
    std::vector<BitVec> coords = unit_coords(m.ring());
    for (int i = 0; i < k; ++i)
        coords[1].set(i);
    if (k % 2)
        coords[2].set(0);
    m.w = total_from(m.ring(), coords);
    m.p1 = P1Data::zero_class("H^4 vanishes");
    m.w3_twisted = TriState::zero("H^3 vanishes");
    m.h4_torsion_free = true;
    return finish(std::move(m));
}

namespace {

TriState additive(const TriState& a, const TriState& b, const std::string& what)
{
    if (a.is_zero() && b.is_zero())
        return TriState::zero(what + " of both summands vanish");
    if (a.is_nonzero() || b.is_nonzero())
        return TriState::nonzero(what + " of a summand is nonzero");
    return TriState::unknown(what + " of a summand is unknown");
}

// Rules valid for any closed manifold, given stored information is absent.
TriState w3_by_rules(const Manifold& m)
{
    if (m.dim < 3)
        return TriState::zero("H^3 vanishes");
    if (m.w_at(2).is_zero())
        return TriState::zero("w2 = 0");
    if (!w3_shadow(m.ring(), m.w).is_zero())
        return TriState::nonzero("w3 shadow nonzero");
    return TriState::unknown("twisted Bockstein not computed");
}

std::string operand(const Manifold& m, bool wrap) { return wrap ? "(" + m.name + ")" : m.name; }

}  // namespace

Manifold connected_sum(const Manifold& m, const Manifold& n)
{
    if (m.dim != n.dim)
        throw DimensionMismatch("connected sum of dimensions " + std::to_string(m.dim) + " and " +
                                std::to_string(n.dim));
    if (m.dim < 1)
        throw PreconditionError("connected sum needs dimension at least 1");
    const int dim = m.dim;
    const long long sphere_euler = dim % 2 == 0 ? 2 : 0;

    Manifold s = shell(m.name + " # " + operand(n, n.form == NameForm::Sum), dim, m.orientable && n.orientable,
                       m.euler + n.euler - sphere_euler, connected_sum_algebra(m.ring(), n.ring()));
    s.form = NameForm::Sum;

    std::vector<BitVec> coords = unit_coords(s.ring());
    for (int d = 1; d < dim; ++d) {
        const std::size_t offset = m.ring().rank(d);
        m.w[d].coords.for_each_set([&](std::size_t i) { coords[d].set(i); });
        n.w[d].coords.for_each_set([&](std::size_t i) { coords[d].set(offset + i); });
    }
    if (s.euler % 2 != 0)
        coords[dim].set(0);
    s.w = total_from(s.ring(), coords);

    if (s.orientable && dim % 4 == 0 && m.signature && n.signature)
        s.signature = *m.signature + *n.signature;

    if (dim < 4) {
        s.p1 = P1Data::zero_class("H^4 vanishes");
    } else if (dim == 4 && s.orientable) {
        if (m.p1.kind == P1Data::Kind::Integer && n.p1.kind == P1Data::Kind::Integer)
            s.p1 = P1Data::integer(m.p1.value + n.p1.value, "additive under connected sum");
        else
            s.p1 = P1Data::unknown("p1 of a summand is unknown");
    } else if (dim == 4) {
        s.p1 = top_value(s, w2_squared(s)) ? P1Data::nonzero_class("reduces to w2^2 != 0")
                                           : P1Data::zero_class("reduces to w2^2 = 0");
    } else if (m.p1.vanishes() && n.p1.vanishes()) {
        s.p1 = P1Data::zero_class("p1 of both summands vanish");
    } else if (m.p1.nonvanishing() || n.p1.nonvanishing()) {
        s.p1 = P1Data::nonzero_class("p1 of a summand is nonzero");
    } else {
        s.p1 = P1Data::unknown("p1 of a summand is unknown");
    }

    if (dim >= 4)
        s.w3_twisted = additive(m.w3_twisted, n.w3_twisted, "W3");
    else
        s.w3_twisted = w3_by_rules(s);

    s.stably_parallelizable = m.stably_parallelizable && n.stably_parallelizable;
    if (m.h4_torsion_free == true && n.h4_torsion_free == true)
        s.h4_torsion_free = true;
    else if (m.h4_torsion_free == false || n.h4_torsion_free == false)
        s.h4_torsion_free = false;
    return finish(std::move(s));
}

Manifold product(const Manifold& m, const Manifold& n)
{
    const GradedAlgebra& a = m.ring();
    const GradedAlgebra& b = n.ring();
    Manifold p = shell(operand(m, m.form == NameForm::Sum) + " x " + operand(n, n.form != NameForm::Atom),
                       m.dim + n.dim, m.orientable && n.orientable, m.euler * n.euler, kunneth(a, b));
    p.form = NameForm::Product;
    const GradedAlgebra& ab = p.ring();

    TotalClass w;
    for (int k = 0; k <= p.dim; ++k) {
        ClassZ2 c = ab.zero(k);
        for (int i = std::max(0, k - n.dim); i <= std::min(k, m.dim); ++i)
            c.coords ^= cross(ab, a, m.w[i], b, n.w[k - i]).coords;
        w.components.push_back(std::move(c));
    }
    p.w = std::move(w);

    if (m.dim % 4 == 0 && n.dim % 4 == 0 && m.signature && n.signature)
        p.signature = *m.signature * *n.signature;
    else if (p.orientable && p.dim % 4 == 0)
        p.signature = 0;

    const Manifold* other = m.stably_parallelizable ? &n : n.stably_parallelizable ? &m : nullptr;
    if (p.dim < 4) {
        p.p1 = P1Data::zero_class("H^4 vanishes");
    } else if (p.dim == 4 && p.orientable) {
        p.p1 = P1Data::integer(3 * p.signature.value_or(0), "signature theorem");
    } else if (p.dim == 4) {
        p.p1 = top_value(p, w2_squared(p)) ? P1Data::nonzero_class("reduces to w2^2 != 0")
                                           : P1Data::zero_class("reduces to w2^2 = 0");
    } else if (other) {
        if (other->p1.vanishes())
            p.p1 = P1Data::zero_class("pulled back from a factor; the other is stably parallelizable");
        else if (other->p1.nonvanishing())
            p.p1 = P1Data::nonzero_class("pulled back from a factor; the other is stably parallelizable");
        else
            p.p1 = P1Data::unknown("p1 of a factor is unknown");
    } else {
        p.p1 = P1Data::unknown("integral cross terms not computed");
    }

    if (m.dim == 0)
        p.w3_twisted = n.w3_twisted;
    else if (n.dim == 0)
        p.w3_twisted = m.w3_twisted;
    else
        p.w3_twisted = w3_by_rules(p);

    p.stably_parallelizable = m.stably_parallelizable && n.stably_parallelizable;
    if (m.dim == 0)
        p.h4_torsion_free = n.h4_torsion_free;
    else if (n.dim == 0)
        p.h4_torsion_free = m.h4_torsion_free;
    return finish(std::move(p));
}

std::vector<Violation> check_invariants(const Manifold& m)
{
    std::vector<Violation> out;
    auto flag = [&](const std::string& name, const std::string& detail) { out.push_back({name, detail, 1}); };

    if (!m.algebra) {
        flag("algebra", "no cohomology algebra");
        return out;
    }
    const GradedAlgebra& a = m.ring();
    for (auto& v : validate_algebra(a).violations)
        out.push_back(v);
    if (!out.empty())
        return out;
    if (a.top_degree() != m.dim) {
        flag("dimension", "algebra top degree " + std::to_string(a.top_degree()) + " differs from dim " +
                              std::to_string(m.dim));
        return out;
    }
    if (m.w.top_degree() != m.dim) {
        flag("wu_formula", "total Stiefel-Whitney class must have components in degrees 0.." +
                               std::to_string(m.dim));
        return out;
    }
    for (int d = 0; d <= m.dim; ++d)
        if (m.w[d].algebra_id != a.id() || m.w[d].degree != d || m.w[d].coords.size() != a.rank(d)) {
            flag("wu_formula", "w_" + std::to_string(d) + " is not a class of this algebra in degree " +
                                   std::to_string(d));
            return out;
        }

    if (m.w[0] != a.one())
        flag("wu_formula", "w_0 must be 1");
    if (m.dim >= 1 && m.w[1].is_zero() != m.orientable)
        flag("orientability", m.orientable ? "orientable but w_1 != 0" : "non-orientable but w_1 = 0");
    if (top_value(m, m.w[m.dim]) != (m.euler % 2 != 0))
        flag("euler_parity", "Euler parity: <w_" + std::to_string(m.dim) + ", [M]> differs from chi = " +
                                 std::to_string(m.euler) + " mod 2");
    if (m.dim % 2 == 1 && m.euler != 0)
        flag("euler_parity", "Euler parity: odd-dimensional closed manifolds have chi = 0");

    const bool needs_sigma = m.orientable && m.dim % 4 == 0;
    if (needs_sigma && !m.signature)
        flag("signature_presence", "oriented manifold of dimension divisible by 4 needs a signature");
    if (m.signature && !needs_sigma && !(m.orientable && m.dim % 4 == 2 && *m.signature == 0))
        flag("signature_presence", "signature is only defined for oriented manifolds of dimension 4k");
    if (m.signature && needs_sigma && (*m.signature - m.euler) % 2 != 0)
        flag("signature_presence", "signature and Euler characteristic must have the same parity");

    const bool dim4_oriented = m.dim == 4 && m.orientable;
    if (m.p1.kind == P1Data::Kind::Integer && !dim4_oriented)
        flag("p1_kind", "integer p1 is only meaningful for oriented 4-manifolds");
    if (dim4_oriented && m.p1.kind == P1Data::Kind::Integer && m.signature && m.p1.value != 3 * *m.signature)
        flag("signature_theorem", "p1 = " + std::to_string(m.p1.value) + " but 3 sigma = " +
                                      std::to_string(3 * *m.signature));
    if (dim4_oriented && m.p1.kind == P1Data::Kind::Integer && m.w[2].is_zero()) {
        const long long k = m.p1.value;
        const bool w4 = top_value(m, m.w[4]);
        if (k % 2 != 0 || (((k / 2) % 2) != 0) != w4)
            flag("z_parity", "2z = p1 with z = w_4 mod 2 fails: p1 = " + std::to_string(k));
    }

    if (m.dim >= 4) {
        const ClassZ2 sq = w2_squared(m);
        if (m.p1.vanishes() && !sq.is_zero())
            flag("p1_mod2", "p1 vanishes but w_2^2 != 0");
        if (m.p1.kind == P1Data::Kind::Integer && (m.p1.value % 2 != 0) != top_value(m, sq))
            flag("p1_mod2", "p1 = " + std::to_string(m.p1.value) + " does not reduce to w_2^2");
        if (m.dim == 4 && !m.orientable && !m.p1.is_unknown() && m.p1.nonvanishing() != top_value(m, sq))
            flag("p1_mod2", "H^4 = Z/2 maps isomorphically to F_2, so p1 vanishes iff w_2^2 = 0");
    } else if (m.p1.nonvanishing()) {
        flag("p1_mod2", "H^4 vanishes below dimension 4");
    }

    const TotalClass derived = stiefel_whitney_from_wu(a);
    for (int d = 0; d <= m.dim; ++d)
        if (derived[d].coords != m.w[d].coords) {
            flag("wu_formula", "w_" + std::to_string(d) + " = " + a.format(m.w[d]) + " but Sq(v) gives " +
                                   a.format(derived[d]));
            break;
        }

    if (m.dim >= 3) {
        const bool shadow = !w3_shadow(a, m.w).is_zero();
        if (m.w3_twisted.is_zero() && shadow)
            flag("w3_shadow", "W3 recorded zero but Sq^1 w_2 + w_1 w_2 != 0");
    }
    if (m.w3_twisted.is_nonzero() && (m.dim < 3 || m.w_at(2).is_zero()))
        flag("w3_shadow", "W3 recorded nonzero but it is the Bockstein of w_2 = 0");

    if (m.stably_parallelizable) {
        for (int d = 1; d <= m.dim; ++d)
            if (!m.w[d].is_zero()) {
                flag("stably_parallelizable", "stably parallelizable but w_" + std::to_string(d) + " != 0");
                break;
            }
        if (m.p1.nonvanishing())
            flag("stably_parallelizable", "stably parallelizable but p1 != 0");
    }
    return out;
}

void require_invariants(const Manifold& m)
{
    const auto v = check_invariants(m);
    if (v.empty())
        return;
    std::ostringstream os;
    os << (m.name.empty() ? std::string("manifold") : m.name) << ": " << v.front().detail;
    throw InvariantViolation(v.front().axiom, os.str());
}

}  // namespace foldcheck
