#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "foldcheck/bitvec.hpp"

namespace foldcheck {

// A homogeneous mod-2 class, tied to the algebra that produced it.
struct ClassZ2 {
    std::uint64_t algebra_id = 0;
    int degree = 0;
    BitVec coords;

    bool is_zero() const noexcept { return coords.none(); }
    bool operator==(const ClassZ2&) const = default;
};

ClassZ2 operator+(const ClassZ2& x, const ClassZ2& y);

// Components in degrees 0..n, no gaps.
struct TotalClass {
    std::vector<ClassZ2> components;

    int top_degree() const noexcept { return static_cast<int>(components.size()) - 1; }
    const ClassZ2& operator[](int degree) const { return components.at(static_cast<std::size_t>(degree)); }
    bool operator==(const TotalClass&) const = default;
};

using Basis = std::vector<std::vector<std::string>>;

// Finite graded commutative algebra over the two-element field with a
// Steenrod-square action and evaluation on the top degree.
//
// Immutable once built. Structure constants are dense: the product of two
// basis elements and the square of a basis element are coordinate vectors in
// the target degree (of length zero past the top degree).
class GradedAlgebra {
public:
    int top_degree() const noexcept { return top_degree_; }
    std::size_t rank(int degree) const noexcept;
    std::size_t total_rank() const noexcept { return total_rank_; }
    const Basis& basis() const noexcept { return basis_; }
    const std::string& label(int degree, std::size_t index) const { return basis_.at(degree).at(index); }
    std::uint64_t id() const noexcept { return id_; }

    // Structure constants on basis elements.
    const BitVec& product(int d1, std::size_t i, int d2, std::size_t j) const;
    // Sq^k of a basis element; zero vector of the right length when k > d.
    BitVec square(int k, int d, std::size_t i) const;

    ClassZ2 zero(int degree) const;
    ClassZ2 one() const;
    ClassZ2 basis_class(int degree, std::size_t index) const;
    ClassZ2 top_class() const;
    ClassZ2 make_class(int degree, BitVec coords) const;

    ClassZ2 multiply(const ClassZ2& x, const ClassZ2& y) const;
    ClassZ2 steenrod_square(int k, const ClassZ2& x) const;
    bool evaluate_top(const ClassZ2& x) const;

    TotalClass unit_total() const;
    TotalClass multiply_total(const TotalClass& u, const TotalClass& v) const;
    TotalClass total_sq(const TotalClass& v) const;
    TotalClass invert_total(const TotalClass& u) const;

    // Sum of basis labels, "0" for the zero class.
    std::string format(const ClassZ2& x) const;
    std::string format(const TotalClass& u) const;

    // Equality of structure constants, ignoring labels and identity.
    bool same_structure(const GradedAlgebra& other) const;

    void check_owned(const ClassZ2& x) const;

private:
    friend class AlgebraBuilder;

    std::size_t global(int degree, std::size_t index) const { return offsets_[degree] + index; }

    int top_degree_ = 0;
    Basis basis_;
    std::vector<std::size_t> offsets_;
    std::size_t total_rank_ = 0;
    std::vector<BitVec> mult_;               // total_rank_^2 entries
    std::vector<std::vector<BitVec>> sq_;   // per basis element, k = 0..degree
    std::uint64_t id_ = 0;
};

// Collects structure constants. Unset entries default as follows: products
// with the degree-0 basis element act as the identity, a product set in one
// order is mirrored to the other, Sq^0 is the identity and Sq^d on degree d
// is squaring; everything else is zero.
class AlgebraBuilder {
public:
    explicit AlgebraBuilder(Basis basis);

    AlgebraBuilder& set_product(int d1, std::size_t i, int d2, std::size_t j, BitVec value);
    AlgebraBuilder& set_square(int k, int d, std::size_t i, BitVec value);

    GradedAlgebra build() const;

private:
    Basis basis_;
    std::map<std::tuple<int, std::size_t, int, std::size_t>, BitVec> products_;
    std::map<std::tuple<int, int, std::size_t>, BitVec> squares_;
};

struct Violation {
    std::string axiom;
    std::string detail;
    std::size_t occurrences = 1;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    bool violates(const std::string& axiom) const;
    std::string summary() const;
};

// Checks rank-one ends, unit, commutativity, associativity, Sq^0 = id,
// Sq^deg = squaring, Cartan formula and nondegeneracy of the top pairing.
ValidationReport validate_algebra(const GradedAlgebra& a);

// Throws InvariantViolation naming the first violated axiom.
void require_valid(const GradedAlgebra& a);

// Pairing matrix H^d x H^{n-d} -> F_2 (rows indexed by degree d).
std::vector<BitVec> pairing_matrix(const GradedAlgebra& a, int degree);

GradedAlgebra point_algebra();

// Products of classes from distinct factors carry no signs mod 2; squares
// follow the Cartan formula; validated on construction.
GradedAlgebra kunneth(const GradedAlgebra& a, const GradedAlgebra& b);

// Cohomology of a connected sum: ends identified, middle degrees summed,
// cross-summand products zero; validated on construction.
GradedAlgebra connected_sum_algebra(const GradedAlgebra& a, const GradedAlgebra& b);

// Embeds classes of one factor into the Kunneth product.
ClassZ2 cross(const GradedAlgebra& product, const GradedAlgebra& a, const ClassZ2& x, const GradedAlgebra& b,
              const ClassZ2& y);

long long binomial_mod2(long long n, long long k);

}  // namespace foldcheck
