#include "copos/polycone.hpp"

#include <stdexcept>

namespace copos
{

namespace
{

void require_level(int r)
{
    if (r < 0)
        throw std::invalid_argument("hierarchy level must be non-negative");
}

BigInt falling(int s, int d)
{
    BigInt p = 1;
    for (int j = 0; j < d; ++j)
        p *= s - j;
    return p;
}

BigInt power(int x, int e)
{
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(x), static_cast<unsigned long>(e));
    return r;
}

/// (x)_m = x (x-1) ... (x-m+1) through its elementary-symmetric expansion.
BigInt falling_expanded(int x, int m)
{
    BigInt total = 0;
    for (int k = 0; k < m; ++k)
    {
        BigInt term = elementary_symmetric(k, m - 1) * power(x, m - k);
        if (k % 2 == 0)
            total += term;
        else
            total -= term;
    }
    return total;
}

} // namespace

PolyExpansion expand_Pr(const SymTensor& A, int r)
{
    require_level(r);
    PolyExpansion out{A.n(), A.d(), r, {}};
    const auto& table = A.table();
    const auto& vals = A.canonical_values();

    std::vector<ExponentVector> shifts;
    shifts.reserve(table.size());
    for (const auto& t : table.tuples())
        shifts.push_back(exponent_of(t, A.n()));

    for (auto& theta : enumerate_exponents(A.n(), out.s()))
    {
        Rational sum = 0;
        for (std::size_t k = 0; k < table.size(); ++k)
        {
            if (vals[k] == 0)
                continue;
            BigInt c = multinomial(theta - shifts[k]);
            if (c != 0)
                sum += Rational(c * table.multiplicity(k)) * vals[k];
        }
        out.coeffs.emplace(std::move(theta), std::move(sum));
    }
    return out;
}

PolyExpansion expand_Pr_convolution(const SymTensor& A, int r)
{
    require_level(r);
    const int n = A.n();
    const auto& table = A.table();
    const auto& vals = A.canonical_values();

    std::map<ExponentVector, Rational> level;
    for (std::size_t k = 0; k < table.size(); ++k)
        level.emplace(exponent_of(table.tuple(k), n), Rational(table.multiplicity(k)) * vals[k]);

    for (int step = 0; step < r; ++step)
    {
        std::map<ExponentVector, Rational> next;
        for (auto theta : enumerate_exponents(n, A.d() + step + 1))
        {
            Rational sum = 0;
            for (int i = 0; i < n; ++i)
            {
                if (theta[i] == 0)
                    continue;
                --theta[i];
                sum += level.at(theta);
                ++theta[i];
            }
            next.emplace(std::move(theta), std::move(sum));
        }
        level = std::move(next);
    }
    return PolyExpansion{n, A.d(), r, std::move(level)};
}

PolyExpansion expand_Pr_closed_form(const SymTensor& A, int r)
{
    require_level(r);
    if (A.d() < 2)
        throw std::invalid_argument("closed form requires order d >= 2");
    const int n = A.n();
    const int d = A.d();
    PolyExpansion out{n, d, r, {}};
    const auto& table = A.table();
    const auto& vals = A.canonical_values();
    const BigInt denom = falling(out.s(), d);

    std::vector<ExponentVector> counts;
    counts.reserve(table.size());
    for (const auto& t : table.tuples())
        counts.push_back(exponent_of(t, n));

    for (auto& theta : enumerate_exponents(n, out.s()))
    {
        Rational inner = 0;
        for (std::size_t k = 0; k < table.size(); ++k)
        {
            if (vals[k] == 0)
                continue;
            BigInt weight = table.multiplicity(k);
            for (int i = 0; i < n && weight != 0; ++i)
                if (counts[k][i] > 0)
                    weight *= falling_expanded(theta[i], counts[k][i]);
            if (weight != 0)
                inner += Rational(weight) * vals[k];
        }
        Rational scale(multinomial(theta), denom);
        scale.canonicalize();
        Rational coeff = scale * inner;
        out.coeffs.emplace(std::move(theta), std::move(coeff));
    }
    return out;
}

PolyExpansion expand_Pr_diagonal_closed_form(const SymTensor& A, int r)
{
    require_level(r);
    if (A.d() < 2)
        throw std::invalid_argument("closed form requires order d >= 2");
    const int n = A.n();
    const int d = A.d();
    PolyExpansion out{n, d, r, {}};
    const BigInt denom = falling(out.s(), d);
    const auto diag = diag_vector(A);

    std::vector<BigInt> beta(static_cast<std::size_t>(d));
    for (int k = 1; k < d; ++k)
        beta[static_cast<std::size_t>(k)] = elementary_symmetric(k, d - 1);

    for (auto& theta : enumerate_exponents(n, out.s()))
    {
        std::vector<Rational> th(theta.alpha.begin(), theta.alpha.end());
        Rational bracket = eval(A, th);
        for (int k = 1; k < d; ++k)
        {
            // <A, Diag(theta o ... o theta)> with d-k factors.
            Rational diag_term = 0;
            for (int i = 0; i < n; ++i)
                diag_term += diag[static_cast<std::size_t>(i)] * Rational(power(theta[i], d - k));
            Rational term = Rational(beta[static_cast<std::size_t>(k)]) * diag_term;
            if (k % 2 == 0)
                bracket += term;
            else
                bracket -= term;
        }
        Rational scale(multinomial(theta), denom);
        scale.canonicalize();
        Rational coeff = scale * bracket;
        out.coeffs.emplace(std::move(theta), std::move(coeff));
    }
    return out;
}

CoefficientVerdict member_C_r(const SymTensor& A, int r)
{
    CoefficientVerdict v;
    v.expansion = expand_Pr_convolution(A, r);
    for (const auto& [theta, c] : v.expansion.coeffs)
    {
        if (c < 0 && (!v.worst_value || c < *v.worst_value))
        {
            v.worst_theta = theta;
            v.worst_value = c;
        }
    }
    v.member = !v.worst_value.has_value();
    return v;
}

} // namespace copos
