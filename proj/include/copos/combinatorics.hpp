#ifndef COPOS_COMBINATORICS_HPP
#define COPOS_COMBINATORICS_HPP

#include "copos/rational.hpp"

#include <compare>
#include <map>
#include <mutex>
#include <span>
#include <vector>

namespace copos
{

/// Multi-index alpha in N_0^n. Indexes monomials x^alpha and the coefficients
/// of the Polya expansion.
struct ExponentVector
{
    std::vector<int> alpha;

    ExponentVector() = default;
    explicit ExponentVector(std::vector<int> a) : alpha(std::move(a)) {}
    ExponentVector(std::initializer_list<int> a) : alpha(a) {}

    int size() const { return static_cast<int>(alpha.size()); }
    int degree() const;
    int operator[](int i) const { return alpha[static_cast<std::size_t>(i)]; }
    int& operator[](int i) { return alpha[static_cast<std::size_t>(i)]; }

    auto operator<=>(const ExponentVector&) const = default;
};

ExponentVector operator+(const ExponentVector& a, const ExponentVector& b);
ExponentVector operator-(const ExponentVector& a, const ExponentVector& b);

/// Unit vector e_i of length n.
ExponentVector unit_exponent(int n, int i);

/// Exponent (count) vector of a 0-based index tuple over {0..n-1}.
ExponentVector exponent_of(std::span<const int> tuple, int n);

BigInt factorial(int k);
BigInt binomial(int n, int k);

/// |alpha|! / prod(alpha_i!), or 0 when some component is negative.
BigInt multinomial(std::span<const int> alpha);
inline BigInt multinomial(const ExponentVector& alpha) { return multinomial(std::span<const int>(alpha.alpha)); }

/// All compositions of d into n non-negative parts, lexicographically ascending.
std::vector<ExponentVector> enumerate_exponents(int n, int d);

/// e_k(1, 2, ..., m). Zero when k > m or k < 0.
BigInt elementary_symmetric(int k, int m);

/// Thread-safe memo of multinomial coefficients.
class CoefficientTable
{
  public:
    BigInt get(const ExponentVector& alpha);
    std::size_t size() const;

  private:
    mutable std::mutex mutex_;
    std::map<ExponentVector, BigInt> cache_;
};

} // namespace copos

#endif
