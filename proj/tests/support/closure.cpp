#include "closure.hpp"

#include "foldcheck/expression.hpp"

namespace foldcheck::testing {

namespace {

constexpr int max_dim = 12;
constexpr std::size_t max_betti = 128;

std::vector<Sample> build_atoms()
{
    std::vector<std::string> names;
    for (int n = 1; n <= 8; ++n)
        names.push_back("S" + std::to_string(n));
    for (int n = 1; n <= 6; ++n)
        names.push_back("RP" + std::to_string(n));
    for (const char* s : {"CP1", "CP2", "CP2~", "CP3", "K3", "Sigma0", "Sigma1", "Sigma2", "N1", "N2", "N3"})
        names.emplace_back(s);
    std::vector<Sample> out;
    for (const auto& n : names)
        out.push_back({n, parse_expression(n)});
    return out;
}

std::string wrap(const std::string& s) { return "(" + s + ")"; }

std::vector<Sample> build_closure()
{
    std::vector<Sample> out = atoms();
    const auto& at = atoms();
    for (std::size_t i = 0; i < at.size(); ++i) {
        for (std::size_t j = i; j < at.size(); ++j) {
            const Manifold& a = at[i].manifold;
            const Manifold& b = at[j].manifold;
            if (a.dim + b.dim <= max_dim && a.ring().total_rank() * b.ring().total_rank() <= max_betti) {
                const std::string e = wrap(at[i].expression) + " x " + wrap(at[j].expression);
                out.push_back({e, product(a, b)});
            }
            if (a.dim == b.dim && a.ring().total_rank() + b.ring().total_rank() <= max_betti + 2) {
                const std::string e = wrap(at[i].expression) + " # " + wrap(at[j].expression);
                out.push_back({e, connected_sum(a, b)});
            }
        }
    }
    for (const char* e : {"2#RP4", "3#RP4", "2#RP4 # (S2 x S2) # (S1 x S3)", "RP4 x S1", "RP4 x S2", "RP4 x S3",
                          "CP2 # CP2~", "K3 x S2", "RP2 x RP2 x S2", "RP3 x RP3"})
        out.push_back({e, parse_expression(e)});
    return out;
}

}  // namespace

const std::vector<Sample>& atoms()
{
    static const std::vector<Sample> a = build_atoms();
    return a;
}

const std::vector<Sample>& closure()
{
    static const std::vector<Sample> c = build_closure();
    return c;
}

}  // namespace foldcheck::testing
