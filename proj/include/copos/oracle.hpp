#ifndef COPOS_ORACLE_HPP
#define COPOS_ORACLE_HPP

// Brute-force ground truth. Nothing here shares code paths with the hierarchy
// modules beyond SymTensor::get.

#include "copos/combinatorics.hpp"
#include "copos/tensor.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace copos
{

/// Default seed for all randomized paths.
inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct GridOracleReport
{
    Rational min_value;
    RationalPoint argmin;
    int resolution = 0;
    std::size_t points = 0;
};

/// Literal sum of a_t x_{t1}..x_{td} over all n^d tuples.
Rational naive_eval(const SymTensor& A, std::span<const Rational> x);
double naive_eval(const SymTensor& A, std::span<const double> x);

/// Exact minimum of f_A over {x in simplex : m x integral}. Throws SizeLimitError
/// when binomial(n+m-1, m) exceeds the size cap.
GridOracleReport simplex_grid_min(const SymTensor& A, int resolution);

/// P^(r)(y) by literal term-by-term polynomial multiplication of f_A(y o y)
/// with (sum y_k^2)^r. Keys are full exponents (all even); zero terms are dropped.
std::map<ExponentVector, Rational> expand_bruteforce(const SymTensor& A, int r);

struct SampleOracleReport
{
    double min_value = 0.0;
    std::vector<double> argmin;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

/// Minimum of f_A over seeded points uniform on the unit sphere (normalised
/// standard normal draws from std::mt19937_64), followed by the normalised probes.
SampleOracleReport fullspace_sample_min(const SymTensor& A, std::size_t trials, std::uint64_t seed,
                                        std::span<const std::vector<double>> probes = {});

} // namespace copos

#endif
