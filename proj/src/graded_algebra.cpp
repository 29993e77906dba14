#include "foldcheck/graded_algebra.hpp"

#include <atomic>
#include <cctype>
#include <set>
#include <sstream>

#include "foldcheck/errors.hpp"
#include "foldcheck/gf2.hpp"

namespace foldcheck {

namespace {

std::uint64_t next_algebra_id()
{
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1);
}

// Generator names inside a label: maximal runs starting with a letter.
std::set<std::string> identifiers(const std::string& label)
{
    std::set<std::string> out;
    for (std::size_t i = 0; i < label.size();) {
        if (std::isalpha(static_cast<unsigned char>(label[i]))) {
            std::size_t j = i;
            while (j < label.size() &&
                   (std::isalnum(static_cast<unsigned char>(label[j])) || label[j] == '_' || label[j] == '\''))
                ++j;
            out.insert(label.substr(i, j - i));
            i = j;
        } else {
            ++i;
        }
    }
    return out;
}

std::string prime_identifiers(const std::string& label)
{
    std::string out;
    for (std::size_t i = 0; i < label.size();) {
        if (std::isalpha(static_cast<unsigned char>(label[i]))) {
            std::size_t j = i;
            while (j < label.size() &&
                   (std::isalnum(static_cast<unsigned char>(label[j])) || label[j] == '_' || label[j] == '\''))
                ++j;
            out += label.substr(i, j - i);
            out += '\'';
            i = j;
        } else {
            out += label[i++];
        }
    }
    return out;
}

std::set<std::string> basis_identifiers(const Basis& basis)
{
    std::set<std::string> out;
    for (const auto& deg : basis)
        for (const auto& l : deg) {
            auto ids = identifiers(l);
            out.insert(ids.begin(), ids.end());
        }
    return out;
}

// Primes the generator names of `right` until they are disjoint from `left`.
Basis disambiguate(const Basis& left, Basis right)
{
    const auto taken = basis_identifiers(left);
    for (;;) {
        bool clash = false;
        for (const auto& id : basis_identifiers(right))
            if (taken.count(id))
                clash = true;
        if (!clash)
            return right;
        for (auto& deg : right)
            for (auto& l : deg)
                if (l != "1")
                    l = prime_identifiers(l);
    }
}

// Bilinear extension of basis products: x (degree d1) times y (degree d2).
BitVec multiply_vectors(const GradedAlgebra& a, int d1, const BitVec& x, int d2, const BitVec& y)
{
    BitVec out(a.rank(d1 + d2));
    if (d1 + d2 > a.top_degree())
        return out;
    x.for_each_set([&](std::size_t i) { y.for_each_set([&](std::size_t j) { out ^= a.product(d1, i, d2, j); }); });
    return out;
}

BitVec square_vector(const GradedAlgebra& a, int k, int d, const BitVec& x)
{
    BitVec out(a.rank(d + k));
    x.for_each_set([&](std::size_t i) { out ^= a.square(k, d, i); });
    return out;
}

// Index of basis pair (i in A^e, j in B^{d-e}) inside (A (x) B)^d.
std::size_t kunneth_index(const GradedAlgebra& a, const GradedAlgebra& b, int d, int e, std::size_t i,
                          std::size_t j)
{
    std::size_t offset = 0;
    for (int f = 0; f < e; ++f)
        offset += a.rank(f) * b.rank(d - f);
    return offset + i * b.rank(d - e) + j;
}

}  // namespace

long long binomial_mod2(long long n, long long k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    return (k & ~n) == 0 ? 1 : 0;
}

ClassZ2 operator+(const ClassZ2& x, const ClassZ2& y)
{
    if (x.algebra_id != y.algebra_id)
        throw AlgebraMismatch("adding classes from different algebras");
    if (x.degree != y.degree)
        throw PreconditionError("adding classes of degrees " + std::to_string(x.degree) + " and " +
                                std::to_string(y.degree));
    return ClassZ2{x.algebra_id, x.degree, x.coords ^ y.coords};
}

std::size_t GradedAlgebra::rank(int degree) const noexcept
{
    if (degree < 0 || degree > top_degree_)
        return 0;
    return basis_[static_cast<std::size_t>(degree)].size();
}

const BitVec& GradedAlgebra::product(int d1, std::size_t i, int d2, std::size_t j) const
{
    return mult_[global(d1, i) * total_rank_ + global(d2, j)];
}

BitVec GradedAlgebra::square(int k, int d, std::size_t i) const
{
    if (k < 0 || k > d)
        return BitVec(rank(d + std::max(k, 0)));
    return sq_[global(d, i)][static_cast<std::size_t>(k)];
}

void GradedAlgebra::check_owned(const ClassZ2& x) const
{
    if (x.algebra_id != id_)
        throw AlgebraMismatch("class does not belong to this algebra");
    if (x.coords.size() != rank(x.degree))
        throw PreconditionError("coordinate length does not match the basis size in degree " +
                                std::to_string(x.degree));
}

ClassZ2 GradedAlgebra::zero(int degree) const { return ClassZ2{id_, degree, BitVec(rank(degree))}; }

ClassZ2 GradedAlgebra::one() const { return basis_class(0, 0); }

ClassZ2 GradedAlgebra::basis_class(int degree, std::size_t index) const
{
    return ClassZ2{id_, degree, BitVec::unit(rank(degree), index)};
}

ClassZ2 GradedAlgebra::top_class() const { return basis_class(top_degree_, 0); }

ClassZ2 GradedAlgebra::make_class(int degree, BitVec coords) const
{
    if (coords.size() != rank(degree))
        throw PreconditionError("expected " + std::to_string(rank(degree)) + " coordinates in degree " +
                                std::to_string(degree) + ", got " + std::to_string(coords.size()));
    return ClassZ2{id_, degree, std::move(coords)};
}

ClassZ2 GradedAlgebra::multiply(const ClassZ2& x, const ClassZ2& y) const
{
    check_owned(x);
    check_owned(y);
    return ClassZ2{id_, x.degree + y.degree, multiply_vectors(*this, x.degree, x.coords, y.degree, y.coords)};
}

ClassZ2 GradedAlgebra::steenrod_square(int k, const ClassZ2& x) const
{
    check_owned(x);
    if (k < 0)
        throw PreconditionError("negative Steenrod square index");
    return ClassZ2{id_, x.degree + k, square_vector(*this, k, x.degree, x.coords)};
}

bool GradedAlgebra::evaluate_top(const ClassZ2& x) const
{
    check_owned(x);
    if (x.degree != top_degree_)
        throw PreconditionError("evaluation needs a class of degree " + std::to_string(top_degree_) + ", got " +
                                std::to_string(x.degree));
    return x.coords.test(0);
}

TotalClass GradedAlgebra::unit_total() const
{
    TotalClass u;
    for (int d = 0; d <= top_degree_; ++d)
        u.components.push_back(d == 0 ? one() : zero(d));
    return u;
}

TotalClass GradedAlgebra::multiply_total(const TotalClass& u, const TotalClass& v) const
{
    TotalClass out;
    for (int d = 0; d <= top_degree_; ++d) {
        ClassZ2 c = zero(d);
        for (int i = 0; i <= d; ++i)
            c.coords ^= multiply(u[i], v[d - i]).coords;
        out.components.push_back(std::move(c));
    }
    return out;
}

TotalClass GradedAlgebra::total_sq(const TotalClass& v) const
{
    TotalClass out;
    for (int d = 0; d <= top_degree_; ++d) {
        ClassZ2 c = zero(d);
        for (int j = 0; j <= d; ++j)
            c.coords ^= steenrod_square(d - j, v[j]).coords;
        out.components.push_back(std::move(c));
    }
    return out;
}

TotalClass GradedAlgebra::invert_total(const TotalClass& u) const
{
    if (u.top_degree() != top_degree_)
        throw PreconditionError("total class has the wrong number of components");
    if (u[0] != one())
        throw PreconditionError("formal inverse needs degree-0 component 1");
    TotalClass inv;
    inv.components.push_back(one());
    for (int d = 1; d <= top_degree_; ++d) {
        ClassZ2 c = zero(d);
        for (int i = 1; i <= d; ++i)
            c.coords ^= multiply(u[i], inv[d - i]).coords;
        inv.components.push_back(std::move(c));
    }
    return inv;
}

std::string GradedAlgebra::format(const ClassZ2& x) const
{
    check_owned(x);
    std::string out;
    x.coords.for_each_set([&](std::size_t i) {
        if (!out.empty())
            out += " + ";
        out += label(x.degree, i);
    });
    return out.empty() ? "0" : out;
}

std::string GradedAlgebra::format(const TotalClass& u) const
{
    std::string out;
    for (const auto& c : u.components) {
        if (c.is_zero())
            continue;
        if (!out.empty())
            out += " + ";
        out += format(c);
    }
    return out.empty() ? "0" : out;
}

bool GradedAlgebra::same_structure(const GradedAlgebra& other) const
{
    if (top_degree_ != other.top_degree_)
        return false;
    for (int d = 0; d <= top_degree_; ++d)
        if (rank(d) != other.rank(d))
            return false;
    return mult_ == other.mult_ && sq_ == other.sq_;
}

AlgebraBuilder::AlgebraBuilder(Basis basis) : basis_(std::move(basis))
{
    if (basis_.empty())
        throw PreconditionError("basis must cover at least degree 0");
}

AlgebraBuilder& AlgebraBuilder::set_product(int d1, std::size_t i, int d2, std::size_t j, BitVec value)
{
    const int n = static_cast<int>(basis_.size()) - 1;
    if (d1 < 0 || d2 < 0 || d1 > n || d2 > n || i >= basis_[d1].size() || j >= basis_[d2].size())
        throw OutOfRange("product entry refers to a missing basis element");
    const std::size_t target = d1 + d2 <= n ? basis_[d1 + d2].size() : 0;
    if (value.size() != target)
        throw PreconditionError("product entry has " + std::to_string(value.size()) + " coordinates, expected " +
                                std::to_string(target));
    products_[{d1, i, d2, j}] = std::move(value);
    return *this;
}

AlgebraBuilder& AlgebraBuilder::set_square(int k, int d, std::size_t i, BitVec value)
{
    const int n = static_cast<int>(basis_.size()) - 1;
    if (d < 0 || d > n || i >= basis_[d].size() || k < 0 || k > d)
        throw OutOfRange("square entry must satisfy 0 <= k <= deg and refer to a basis element");
    const std::size_t target = d + k <= n ? basis_[d + k].size() : 0;
    if (value.size() != target)
        throw PreconditionError("square entry has " + std::to_string(value.size()) + " coordinates, expected " +
                                std::to_string(target));
    squares_[{k, d, i}] = std::move(value);
    return *this;
}

GradedAlgebra AlgebraBuilder::build() const
{
    GradedAlgebra a;
    a.top_degree_ = static_cast<int>(basis_.size()) - 1;
    a.basis_ = basis_;
    a.offsets_.assign(basis_.size() + 1, 0);
    for (std::size_t d = 0; d < basis_.size(); ++d)
        a.offsets_[d + 1] = a.offsets_[d] + basis_[d].size();
    a.total_rank_ = a.offsets_.back();
    a.id_ = next_algebra_id();

    const int n = a.top_degree_;
    const std::size_t total = a.total_rank_;
    a.mult_.assign(total * total, BitVec());
    for (int d1 = 0; d1 <= n; ++d1)
        for (std::size_t i = 0; i < basis_[d1].size(); ++i)
            for (int d2 = 0; d2 <= n; ++d2)
                for (std::size_t j = 0; j < basis_[d2].size(); ++j) {
                    const std::size_t target = d1 + d2 <= n ? basis_[d1 + d2].size() : 0;
                    BitVec v(target);
                    if (auto it = products_.find({d1, i, d2, j}); it != products_.end())
                        v = it->second;
                    else if (auto mirror = products_.find({d2, j, d1, i}); mirror != products_.end())
                        v = mirror->second;
                    else if (d1 == 0 && i == 0 && target)
                        v.set(j);
                    else if (d2 == 0 && j == 0 && target)
                        v.set(i);
                    a.mult_[a.global(d1, i) * total + a.global(d2, j)] = std::move(v);
                }

    a.sq_.assign(total, {});
    for (int d = 0; d <= n; ++d)
        for (std::size_t i = 0; i < basis_[d].size(); ++i) {
            auto& table = a.sq_[a.global(d, i)];
            for (int k = 0; k <= d; ++k) {
                const std::size_t target = d + k <= n ? basis_[d + k].size() : 0;
                BitVec v(target);
                if (auto it = squares_.find({k, d, i}); it != squares_.end())
                    v = it->second;
                else if (k == 0)
                    v.set(i);
                else if (k == d)
                    v = a.product(d, i, d, i);
                table.push_back(std::move(v));
            }
        }
    return a;
}

bool ValidationReport::violates(const std::string& axiom) const
{
    for (const auto& v : violations)
        if (v.axiom == axiom)
            return true;
    return false;
}

std::string ValidationReport::summary() const
{
    std::ostringstream os;
    for (std::size_t k = 0; k < violations.size(); ++k) {
        if (k)
            os << "; ";
        os << violations[k].axiom << ": " << violations[k].detail;
        if (violations[k].occurrences > 1)
            os << " (" << violations[k].occurrences << " occurrences)";
    }
    return os.str();
}

std::vector<BitVec> pairing_matrix(const GradedAlgebra& a, int degree)
{
    const int n = a.top_degree();
    std::vector<BitVec> rows;
    for (std::size_t i = 0; i < a.rank(degree); ++i) {
        BitVec row(a.rank(n - degree));
        for (std::size_t j = 0; j < a.rank(n - degree); ++j) {
            const BitVec& p = a.product(degree, i, n - degree, j);
            if (p.size() && p.test(0))
                row.set(j);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ValidationReport validate_algebra(const GradedAlgebra& a)
{
    ValidationReport report;
    auto flag = [&](const std::string& axiom, const std::string& detail) {
        for (auto& v : report.violations)
            if (v.axiom == axiom) {
                ++v.occurrences;
                return;
            }
        report.violations.push_back({axiom, detail, 1});
    };
    auto name = [&](int d, std::size_t i) { return a.label(d, i) + " (degree " + std::to_string(d) + ")"; };

    const int n = a.top_degree();
    if (a.rank(0) != 1)
        flag("degree0_rank", "degree 0 must have exactly one basis element");
    if (a.rank(n) != 1)
        flag("top_rank", "top degree must have exactly one basis element");
    if (!report.ok())
        return report;

    for (int d = 0; d <= n; ++d)
        for (std::size_t i = 0; i < a.rank(d); ++i) {
            const BitVec e = BitVec::unit(a.rank(d), i);
            if (a.product(0, 0, d, i) != e || a.product(d, i, 0, 0) != e)
                flag("unit", "1 is not a two-sided unit on " + name(d, i));
        }

    for (int d1 = 1; d1 <= n; ++d1)
        for (int d2 = d1; d1 + d2 <= n; ++d2)
            for (std::size_t i = 0; i < a.rank(d1); ++i)
                for (std::size_t j = 0; j < a.rank(d2); ++j)
                    if (a.product(d1, i, d2, j) != a.product(d2, j, d1, i))
                        flag("commutativity", name(d1, i) + " and " + name(d2, j) + " do not commute");

    for (int d1 = 1; d1 <= n; ++d1)
        for (int d2 = 1; d1 + d2 <= n; ++d2)
            for (int d3 = 1; d1 + d2 + d3 <= n; ++d3)
                for (std::size_t i = 0; i < a.rank(d1); ++i)
                    for (std::size_t j = 0; j < a.rank(d2); ++j) {
                        const BitVec& xy = a.product(d1, i, d2, j);
                        for (std::size_t k = 0; k < a.rank(d3); ++k) {
                            const BitVec left =
                                multiply_vectors(a, d1 + d2, xy, d3, BitVec::unit(a.rank(d3), k));
                            const BitVec right = multiply_vectors(a, d1, BitVec::unit(a.rank(d1), i), d2 + d3,
                                                                  a.product(d2, j, d3, k));
                            if (left != right)
                                flag("associativity", "(xy)z != x(yz) for x = " + name(d1, i) +
                                                          ", y = " + name(d2, j) + ", z = " + name(d3, k));
                        }
                    }

    for (int d = 0; d <= n; ++d)
        for (std::size_t i = 0; i < a.rank(d); ++i) {
            if (a.square(0, d, i) != BitVec::unit(a.rank(d), i))
                flag("sq0_identity", "Sq^0 is not the identity on " + name(d, i));
            if (d > 0 && a.square(d, d, i) != a.product(d, i, d, i))
                flag("sq_top_square", "Sq^k x = x^2 at k = deg x fails for x = " + name(d, i));
        }

    for (int d1 = 0; d1 <= n; ++d1)
        for (int d2 = d1; d1 + d2 <= n; ++d2)
            for (std::size_t i = 0; i < a.rank(d1); ++i)
                for (std::size_t j = 0; j < a.rank(d2); ++j) {
                    const BitVec& xy = a.product(d1, i, d2, j);
                    for (int k = 1; k <= d1 + d2 && d1 + d2 + k <= n; ++k) {
                        const BitVec lhs = square_vector(a, k, d1 + d2, xy);
                        BitVec rhs(a.rank(d1 + d2 + k));
                        for (int s = 0; s <= k; ++s) {
                            if (s > d1 || k - s > d2)
                                continue;
                            rhs ^= multiply_vectors(a, d1 + s, a.square(s, d1, i), d2 + k - s,
                                                    a.square(k - s, d2, j));
                        }
                        if (lhs != rhs)
                            flag("cartan", "Sq^" + std::to_string(k) + "(xy) fails the Cartan formula for x = " +
                                               name(d1, i) + ", y = " + name(d2, j));
                    }
                }

    for (int d = 0; d <= n; ++d) {
        const auto p = pairing_matrix(a, d);
        if (a.rank(d) != a.rank(n - d) || !gf2::invertible(p))
            flag("poincare_duality", "pairing H^" + std::to_string(d) + " x H^" + std::to_string(n - d) +
                                         " -> F_2 is degenerate");
    }
    return report;
}

void require_valid(const GradedAlgebra& a)
{
    const auto report = validate_algebra(a);
    if (!report.ok())
        throw InvariantViolation(report.violations.front().axiom, report.summary());
}

GradedAlgebra point_algebra() { return AlgebraBuilder(Basis{{"1"}}).build(); }

ClassZ2 cross(const GradedAlgebra& product, const GradedAlgebra& a, const ClassZ2& x, const GradedAlgebra& b,
              const ClassZ2& y)
{
    a.check_owned(x);
    b.check_owned(y);
    const int d = x.degree + y.degree;
    BitVec out(product.rank(d));
    if (d <= product.top_degree())
        x.coords.for_each_set([&](std::size_t i) {
            y.coords.for_each_set([&](std::size_t j) { out.set(kunneth_index(a, b, d, x.degree, i, j)); });
        });
    return ClassZ2{product.id(), d, std::move(out)};
}

GradedAlgebra kunneth(const GradedAlgebra& a, const GradedAlgebra& b)
{
    const int na = a.top_degree(), nb = b.top_degree(), n = na + nb;
    const Basis rb = disambiguate(a.basis(), b.basis());

    Basis basis(static_cast<std::size_t>(n) + 1);
    for (int d = 0; d <= n; ++d)
        for (int e = std::max(0, d - nb); e <= std::min(d, na); ++e)
            for (std::size_t i = 0; i < a.rank(e); ++i)
                for (std::size_t j = 0; j < b.rank(d - e); ++j) {
                    const std::string& l = a.label(e, i);
                    const std::string& r = rb[d - e][j];
                    basis[d].push_back(l == "1" ? r : r == "1" ? l : l + "*" + r);
                }
    auto tensor = [&](int da, const BitVec& va, int db, const BitVec& vb, std::size_t size) {
        BitVec out(size);
        va.for_each_set([&](std::size_t i) {
            vb.for_each_set([&](std::size_t j) { out.set(kunneth_index(a, b, da + db, da, i, j)); });
        });
        return out;
    };

    AlgebraBuilder builder(basis);
    for (int d1 = 0; d1 <= n; ++d1)
        for (int e1 = std::max(0, d1 - nb); e1 <= std::min(d1, na); ++e1)
            for (std::size_t i1 = 0; i1 < a.rank(e1); ++i1)
                for (std::size_t j1 = 0; j1 < b.rank(d1 - e1); ++j1) {
                    const std::size_t x = kunneth_index(a, b, d1, e1, i1, j1);
                    for (int d2 = 0; d1 + d2 <= n; ++d2)
                        for (int e2 = std::max(0, d2 - nb); e2 <= std::min(d2, na); ++e2)
                            for (std::size_t i2 = 0; i2 < a.rank(e2); ++i2)
                                for (std::size_t j2 = 0; j2 < b.rank(d2 - e2); ++j2) {
                                    const std::size_t y = kunneth_index(a, b, d2, e2, i2, j2);
                                    BitVec v(basis[d1 + d2].size());
                                    if (e1 + e2 <= na && d1 - e1 + d2 - e2 <= nb)
                                        v = tensor(e1 + e2, a.product(e1, i1, e2, i2), d1 - e1 + d2 - e2,
                                                   b.product(d1 - e1, j1, d2 - e2, j2), basis[d1 + d2].size());
                                    builder.set_product(d1, x, d2, y, std::move(v));
                                }
                    for (int k = 0; k <= d1; ++k) {
                        const std::size_t size = d1 + k <= n ? basis[d1 + k].size() : 0;
                        BitVec v(size);
                        if (size)
                            for (int s = 0; s <= k; ++s) {
                                if (s > e1 || k - s > d1 - e1 || e1 + s > na || d1 - e1 + k - s > nb)
                                    continue;
                                v ^= tensor(e1 + s, a.square(s, e1, i1), d1 - e1 + k - s,
                                            b.square(k - s, d1 - e1, j1), size);
                            }
                        builder.set_square(k, d1, x, std::move(v));
                    }
                }
    GradedAlgebra out = builder.build();
    require_valid(out);
    return out;
}

GradedAlgebra connected_sum_algebra(const GradedAlgebra& a, const GradedAlgebra& b)
{
    const int n = a.top_degree();
    if (b.top_degree() != n)
        throw DimensionMismatch("connected sum of algebras with top degrees " + std::to_string(n) + " and " +
                                std::to_string(b.top_degree()));
    if (n < 1)
        throw PreconditionError("connected sum needs top degree at least 1");
    if (a.rank(0) != 1 || b.rank(0) != 1 || a.rank(n) != 1 || b.rank(n) != 1)
        throw PreconditionError("connected sum needs rank-one degree 0 and top degree");

    const Basis rb = disambiguate(a.basis(), b.basis());
    bool a_has_middle = false;
    for (int d = 1; d < n; ++d)
        a_has_middle = a_has_middle || a.rank(d) > 0;

    Basis basis(static_cast<std::size_t>(n) + 1);
    basis[0] = {"1"};
    for (int d = 1; d < n; ++d) {
        basis[d] = a.basis()[d];
        basis[d].insert(basis[d].end(), rb[d].begin(), rb[d].end());
    }
    basis[n] = {a_has_middle ? a.label(n, 0) : rb[n][0]};

    // Positions of summand classes inside the sum; degree 0 and n collapse.
    auto place = [&](bool from_b, int d, const BitVec& v) {
        BitVec out(basis[d].size());
        if (d == 0 || d == n)
            return v.none() ? out : BitVec::unit(1, 0);
        const std::size_t offset = from_b ? a.rank(d) : 0;
        v.for_each_set([&](std::size_t i) { out.set(offset + i); });
        return out;
    };

    AlgebraBuilder builder(basis);
    for (int part = 0; part < 2; ++part) {
        const GradedAlgebra& s = part ? b : a;
        for (int d1 = 1; d1 < n; ++d1)
            for (std::size_t i = 0; i < s.rank(d1); ++i) {
                const std::size_t x = (part ? a.rank(d1) : 0) + i;
                for (int d2 = 1; d1 + d2 <= n; ++d2)
                    for (std::size_t j = 0; j < s.rank(d2); ++j) {
                        const std::size_t y = (part ? a.rank(d2) : 0) + j;
                        builder.set_product(d1, x, d2, y, place(part, d1 + d2, s.product(d1, i, d2, j)));
                    }
                for (int k = 0; k <= d1; ++k) {
                    if (d1 + k > n) {
                        builder.set_square(k, d1, x, BitVec());
                        continue;
                    }
                    builder.set_square(k, d1, x, place(part, d1 + k, s.square(k, d1, i)));
                }
            }
    }
    // Cross-summand products stay at the zero default.
    GradedAlgebra out = builder.build();
    require_valid(out);
    return out;
}

}  // namespace foldcheck
