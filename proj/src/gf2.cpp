#include "foldcheck/gf2.hpp"

namespace foldcheck::gf2 {

std::size_t rank(Matrix rows)
{
    if (rows.empty())
        return 0;
    const std::size_t cols = rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < rows.size() && !rows[pivot].test(c))
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[r], rows[pivot]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r && rows[i].test(c))
                rows[i] ^= rows[r];
        ++r;
    }
    return r;
}

bool invertible(const Matrix& square)
{
    if (square.empty())
        return true;
    if (square.front().size() != square.size())
        return false;
    return rank(square) == square.size();
}

std::optional<BitVec> solve_unique(const Matrix& a, const BitVec& b, std::size_t columns)
{
    // Augmented matrix: bit `columns` holds the right-hand side.
    Matrix aug;
    aug.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        BitVec row(columns + 1);
        a[i].for_each_set([&](std::size_t j) { row.set(j); });
        if (b.test(i))
            row.set(columns);
        aug.push_back(std::move(row));
    }

    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < columns && r < aug.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < aug.size() && !aug[pivot].test(c))
            ++pivot;
        if (pivot == aug.size())
            continue;
        std::swap(aug[r], aug[pivot]);
        for (std::size_t i = 0; i < aug.size(); ++i)
            if (i != r && aug[i].test(c))
                aug[i] ^= aug[r];
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < aug.size(); ++i)
        if (aug[i].test(columns))
            return std::nullopt;
    if (r != columns)
        return std::nullopt;

    BitVec x(columns);
    for (std::size_t i = 0; i < r; ++i)
        if (aug[i].test(columns))
            x.set(pivot_col[i]);
    return x;
}

}  // namespace foldcheck::gf2
