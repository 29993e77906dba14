#include "foldcheck/expression.hpp"

#include <cctype>
#include <vector>

#include "foldcheck/errors.hpp"

namespace foldcheck {

namespace {

class Parser {
public:
    explicit Parser(const std::string& text)
    {
        for (std::size_t i = 0; i < text.size(); ++i)
            if (!std::isspace(static_cast<unsigned char>(text[i]))) {
                chars_.push_back(text[i]);
                pos_.push_back(i + 1);
            }
        end_ = text.size() + 1;
    }

    Manifold run()
    {
        if (chars_.empty())
            fail("empty expression");
        Manifold m = sum();
        if (at_ < chars_.size())
            fail(std::string("unexpected '") + chars_[at_] + "'");
        return m;
    }

private:
    std::size_t here() const { return at_ < chars_.size() ? pos_[at_] : end_; }

    [[noreturn]] void fail(const std::string& msg, std::size_t at = 0) const
    {
        throw ExpressionError(at ? at : here(), msg);
    }

    bool peek(char c) const { return at_ < chars_.size() && chars_[at_] == c; }

    bool match(const std::string& word)
    {
        if (chars_.size() - at_ < word.size())
            return false;
        for (std::size_t k = 0; k < word.size(); ++k)
            if (chars_[at_ + k] != word[k])
                return false;
        at_ += word.size();
        return true;
    }

    bool digit() const { return at_ < chars_.size() && std::isdigit(static_cast<unsigned char>(chars_[at_])); }

    long long integer()
    {
        if (!digit())
            fail("expected an integer");
        long long v = 0;
        while (digit()) {
            v = v * 10 + (chars_[at_++] - '0');
            if (v > 1000000)
                fail("integer too large");
        }
        return v;
    }

    Manifold sum()
    {
        Manifold m = prod();
        while (peek('#')) {
            const std::size_t op = here();
            ++at_;
            m = join(m, prod(), op);
        }
        return m;
    }

    Manifold prod()
    {
        Manifold m = factor();
        while (peek('x')) {
            ++at_;
            m = product(m, factor());
        }
        return m;
    }

    Manifold factor()
    {
        if (digit()) {
            const std::size_t start = here();
            const long long k = integer();
            if (!peek('#'))
                fail("expected '#' after repetition count");
            const std::size_t op = here();
            ++at_;
            if (k < 1)
                fail("repetition count must be at least 1", start);
            const Manifold t = factor();
            Manifold m = t;
            for (long long i = 1; i < k; ++i)
                m = join(m, t, op);
            return m;
        }
        if (peek('(')) {
            const std::size_t open = here();
            ++at_;
            Manifold m = sum();
            if (!peek(')'))
                fail("missing ')' for '(' at position " + std::to_string(open));
            ++at_;
            return m;
        }
        return atom();
    }

    Manifold atom()
    {
        const std::size_t start = here();
        try {
            if (match("Sigma"))
                return orientable_surface(static_cast<int>(integer()));
            if (match("RP"))
                return real_projective(static_cast<int>(integer()));
            if (match("CP2~"))
                return complex_projective_bar();
            if (match("CP"))
                return complex_projective(static_cast<int>(integer()));
            if (match("K3"))
                return k3();
            if (match("S"))
                return sphere(static_cast<int>(integer()));
            if (match("N"))
                return nonorientable_surface(static_cast<int>(integer()));
        } catch (const OutOfRange& e) {
            fail(e.what(), start);
        }
        if (at_ >= chars_.size())
            fail("unexpected end of expression");
        fail(std::string("unknown atom starting with '") + chars_[at_] + "'");
    }

    static Manifold join(const Manifold& a, const Manifold& b, std::size_t op)
    {
        try {
            return connected_sum(a, b);
        } catch (const DimensionMismatch& e) {
            throw ExpressionError(op, std::string("dimension mismatch: ") + e.what());
        }
    }

    std::vector<char> chars_;
    std::vector<std::size_t> pos_;
    std::size_t at_ = 0;
    std::size_t end_ = 1;
};

}  // namespace

Manifold parse_expression(const std::string& text) { return Parser(text).run(); }

}  // namespace foldcheck
