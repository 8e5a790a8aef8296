#include "copos/combinatorics.hpp"

#include <numeric>
#include <stdexcept>

namespace copos
{

int ExponentVector::degree() const
{
    return std::accumulate(alpha.begin(), alpha.end(), 0);
}

ExponentVector operator+(const ExponentVector& a, const ExponentVector& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("exponent length mismatch");
    ExponentVector out = a;
    for (int i = 0; i < a.size(); ++i)
        out[i] += b[i];
    return out;
}

ExponentVector operator-(const ExponentVector& a, const ExponentVector& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("exponent length mismatch");
    ExponentVector out = a;
    for (int i = 0; i < a.size(); ++i)
        out[i] -= b[i];
    return out;
}

ExponentVector unit_exponent(int n, int i)
{
    ExponentVector e(std::vector<int>(static_cast<std::size_t>(n), 0));
    e[i] = 1;
    return e;
}

ExponentVector exponent_of(std::span<const int> tuple, int n)
{
    ExponentVector e(std::vector<int>(static_cast<std::size_t>(n), 0));
    for (int i : tuple)
    {
        if (i < 0 || i >= n)
            throw std::out_of_range("index component out of range");
        ++e[i];
    }
    return e;
}

BigInt factorial(int k)
{
    if (k < 0)
        throw std::invalid_argument("factorial of negative number");
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

BigInt binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

BigInt multinomial(std::span<const int> alpha)
{
    int total = 0;
    for (int a : alpha)
    {
        if (a < 0)
            return 0;
        total += a;
    }
    // Product of binomials avoids the large intermediate total!.
    BigInt r = 1;
    int running = 0;
    for (int a : alpha)
    {
        running += a;
        r *= binomial(running, a);
    }
    return r;
}

namespace
{

void compositions(int n, int remaining, std::vector<int>& cur, std::vector<ExponentVector>& out)
{
    auto pos = cur.size();
    if (static_cast<int>(pos) == n - 1)
    {
        cur.push_back(remaining);
        out.emplace_back(cur);
        cur.pop_back();
        return;
    }
    for (int v = 0; v <= remaining; ++v)
    {
        cur.push_back(v);
        compositions(n, remaining - v, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<ExponentVector> enumerate_exponents(int n, int d)
{
    if (n < 1 || d < 0)
        throw std::invalid_argument("enumerate_exponents requires n >= 1 and d >= 0");
    std::vector<ExponentVector> out;
    std::vector<int> cur;
    cur.reserve(static_cast<std::size_t>(n));
    compositions(n, d, cur, out);
    return out;
}

BigInt elementary_symmetric(int k, int m)
{
    if (k < 0 || k > m)
        return 0;
    // e[j] holds e_j over the prefix {1..i}.
    std::vector<BigInt> e(static_cast<std::size_t>(k) + 1, 0);
    e[0] = 1;
    for (int i = 1; i <= m; ++i)
        for (int j = std::min(i, k); j >= 1; --j)
            e[static_cast<std::size_t>(j)] += e[static_cast<std::size_t>(j) - 1] * i;
    return e[static_cast<std::size_t>(k)];
}

BigInt CoefficientTable::get(const ExponentVector& alpha)
{
    std::lock_guard lock(mutex_);
    auto it = cache_.find(alpha);
    if (it != cache_.end())
        return it->second;
    BigInt v = multinomial(alpha);
    cache_.emplace(alpha, v);
    return v;
}

std::size_t CoefficientTable::size() const
{
    std::lock_guard lock(mutex_);
    return cache_.size();
}

} // namespace copos
