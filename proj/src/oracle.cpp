#include "copos/oracle.hpp"

#include "copos/limits.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>

namespace copos
{

namespace
{

/// Calls fn(tuple) for every one of the n^d index tuples.
template <class Fn>
void for_each_tuple(int n, int d, Fn&& fn)
{
    std::vector<int> t(static_cast<std::size_t>(d), 0);
    while (true)
    {
        fn(t);
        int k = 0;
        while (k < d && ++t[static_cast<std::size_t>(k)] == n)
            t[static_cast<std::size_t>(k++)] = 0;
        if (k == d)
            return;
    }
}

template <class T>
T naive_eval_impl(const SymTensor& A, std::span<const T> x)
{
    if (static_cast<int>(x.size()) != A.n())
        throw std::invalid_argument("dimension mismatch in oracle evaluation");
    T total = 0;
    for_each_tuple(A.n(), A.d(), [&](const std::vector<int>& t) {
        T term;
        if constexpr (std::is_same_v<T, double>)
            term = A.get(t).get_d();
        else
            term = A.get(t);
        for (int i : t)
            term *= x[static_cast<std::size_t>(i)];
        total += term;
    });
    return total;
}

void grid_compositions(int n, int remaining, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& fn)
{
    if (static_cast<int>(cur.size()) == n - 1)
    {
        cur.push_back(remaining);
        fn(cur);
        cur.pop_back();
        return;
    }
    for (int v = 0; v <= remaining; ++v)
    {
        cur.push_back(v);
        grid_compositions(n, remaining - v, cur, fn);
        cur.pop_back();
    }
}

} // namespace

Rational naive_eval(const SymTensor& A, std::span<const Rational> x)
{
    return naive_eval_impl<Rational>(A, x);
}

double naive_eval(const SymTensor& A, std::span<const double> x)
{
    return naive_eval_impl<double>(A, x);
}

GridOracleReport simplex_grid_min(const SymTensor& A, int resolution)
{
    if (resolution < 1)
        throw std::invalid_argument("grid resolution must be >= 1");
    const int n = A.n();
    check_size(binomial(n + resolution - 1, resolution).get_d(), "oracle grid size");

    // Full n^d table, looked up once.
    std::vector<std::pair<std::vector<int>, Rational>> terms;
    for_each_tuple(n, A.d(), [&](const std::vector<int>& t) {
        if (A.get(t) != 0)
            terms.emplace_back(t, A.get(t));
    });

    GridOracleReport report;
    report.resolution = resolution;
    bool first = true;
    std::vector<int> cur;
    grid_compositions(n, resolution, cur, [&](const std::vector<int>& counts) {
        ++report.points;
        RationalPoint x(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
        {
            x[static_cast<std::size_t>(i)] = Rational(counts[static_cast<std::size_t>(i)], resolution);
            x[static_cast<std::size_t>(i)].canonicalize();
        }
        Rational value = 0;
        for (const auto& [t, a] : terms)
        {
            Rational term = a;
            for (int i : t)
                term *= x[static_cast<std::size_t>(i)];
            value += term;
        }
        if (first || value < report.min_value)
        {
            report.min_value = value;
            report.argmin = x;
            first = false;
        }
    });
    return report;
}

std::map<ExponentVector, Rational> expand_bruteforce(const SymTensor& A, int r)
{
    if (r < 0)
        throw std::invalid_argument("level must be non-negative");
    const int n = A.n();
    check_size(std::pow(static_cast<double>(n), A.d()) * binomial(n + A.d() + r - 1, r).get_d(),
               "brute-force expansion");

    std::map<ExponentVector, Rational> poly;
    for_each_tuple(n, A.d(), [&](const std::vector<int>& t) {
        ExponentVector e(std::vector<int>(static_cast<std::size_t>(n), 0));
        for (int i : t)
            e[i] += 2;
        poly[e] += A.get(t);
    });

    for (int step = 0; step < r; ++step)
    {
        std::map<ExponentVector, Rational> next;
        for (const auto& [e, c] : poly)
            for (int k = 0; k < n; ++k)
            {
                ExponentVector f = e;
                f[k] += 2;
                next[f] += c;
            }
        poly = std::move(next);
    }

    std::erase_if(poly, [](const auto& kv) { return kv.second == 0; });
    return poly;
}

SampleOracleReport fullspace_sample_min(const SymTensor& A, std::size_t trials, std::uint64_t seed,
                                        std::span<const std::vector<double>> probes)
{
    if (trials + probes.size() < 1)
        throw std::invalid_argument("need at least one sample or probe");
    const int n = A.n();
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    SampleOracleReport report;
    report.seed = seed;
    report.min_value = std::numeric_limits<double>::infinity();

    auto consider = [&](std::vector<double> x) {
        double norm = 0.0;
        for (double v : x)
            norm += v * v;
        norm = std::sqrt(norm);
        if (norm == 0.0)
            return;
        for (double& v : x)
            v /= norm;
        double value = naive_eval(A, x);
        ++report.samples;
        if (value < report.min_value)
        {
            report.min_value = value;
            report.argmin = std::move(x);
        }
    };

    for (std::size_t k = 0; k < trials; ++k)
    {
        std::vector<double> x(static_cast<std::size_t>(n));
        for (double& v : x)
            v = normal(gen);
        consider(std::move(x));
    }
    for (const auto& p : probes)
    {
        if (static_cast<int>(p.size()) != n)
            throw std::invalid_argument("probe dimension mismatch");
        consider(p);
    }
    return report;
}

} // namespace copos
