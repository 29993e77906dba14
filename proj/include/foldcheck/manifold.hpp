#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "foldcheck/graded_algebra.hpp"

namespace foldcheck {

enum class Tri { Zero, Nonzero, Unknown };

const char* to_string(Tri t) noexcept;

struct TriState {
    Tri value = Tri::Unknown;
    std::string note;

    static TriState zero(std::string note) { return {Tri::Zero, std::move(note)}; }
    static TriState nonzero(std::string note) { return {Tri::Nonzero, std::move(note)}; }
    static TriState unknown(std::string note) { return {Tri::Unknown, std::move(note)}; }

    bool is_zero() const noexcept { return value == Tri::Zero; }
    bool is_nonzero() const noexcept { return value == Tri::Nonzero; }
    bool is_unknown() const noexcept { return value == Tri::Unknown; }

    // Notes are provenance only.
    bool operator==(const TriState& o) const noexcept { return value == o.value; }
};

// First Pontrjagin data. Integer(k) is the evaluation on the fundamental
// class and only occurs for oriented 4-manifolds.
struct P1Data {
    enum class Kind { Integer, ZeroClass, NonzeroClass, Unknown };

    Kind kind = Kind::Unknown;
    long long value = 0;
    std::string note;

    static P1Data integer(long long k, std::string note) { return {Kind::Integer, k, std::move(note)}; }
    static P1Data zero_class(std::string note) { return {Kind::ZeroClass, 0, std::move(note)}; }
    static P1Data nonzero_class(std::string note) { return {Kind::NonzeroClass, 0, std::move(note)}; }
    static P1Data unknown(std::string note) { return {Kind::Unknown, 0, std::move(note)}; }

    bool vanishes() const noexcept { return kind == Kind::ZeroClass || (kind == Kind::Integer && value == 0); }
    bool nonvanishing() const noexcept
    {
        return kind == Kind::NonzeroClass || (kind == Kind::Integer && value != 0);
    }
    bool is_unknown() const noexcept { return kind == Kind::Unknown; }

    // "-48", "zero", "nonzero" or "unknown".
    std::string to_string() const;

    bool operator==(const P1Data& o) const noexcept { return kind == o.kind && value == o.value; }
};

// How a display name was built; drives parenthesization.
enum class NameForm { Atom, Product, Sum };

struct Manifold {
    std::string name;
    NameForm form = NameForm::Atom;
    int dim = 0;
    bool orientable = true;
    long long euler = 0;
    std::optional<long long> signature;
    std::shared_ptr<const GradedAlgebra> algebra;
    TotalClass w;
    P1Data p1;
    TriState w3_twisted;
    bool stably_parallelizable = false;
    // Whether H^4(M; Z) has no torsion; absent when not recorded.
    std::optional<bool> h4_torsion_free;

    const GradedAlgebra& ring() const { return *algebra; }
    // w_k, or the zero class past the dimension.
    ClassZ2 w_at(int k) const;
};

// Equality of every stored invariant. Labels, names and notes are ignored;
// algebras are compared by structure constants.
bool same_invariants(const Manifold& a, const Manifold& b);

Manifold point();
Manifold sphere(int n);
Manifold real_projective(int n);
Manifold complex_projective(int n);
Manifold complex_projective_bar();
Manifold k3();
Manifold orientable_surface(int genus);
Manifold nonorientable_surface(int k);

Manifold connected_sum(const Manifold& m, const Manifold& n);
Manifold product(const Manifold& m, const Manifold& n);

// Named manifold invariants: orientability, euler_parity, signature_presence,
// signature_theorem, z_parity, p1_mod2, p1_kind, wu_formula, w3_shadow,
// stably_parallelizable, plus the algebra axioms.
std::vector<Violation> check_invariants(const Manifold& m);

// Throws InvariantViolation for the first failure.
void require_invariants(const Manifold& m);

}  // namespace foldcheck
