#ifndef COPOS_POLYCONE_HPP
#define COPOS_POLYCONE_HPP

#include "copos/combinatorics.hpp"
#include "copos/tensor.hpp"

#include <map>
#include <optional>

namespace copos
{

/// Coefficients of P^(r)(y) = f_A(y o y) (sum_k y_k^2)^r, keyed by theta where
/// the monomial is y^(2 theta). The key set is exactly I^n(r + d).
struct PolyExpansion
{
    int n = 0;
    int d = 0;
    int r = 0;
    std::map<ExponentVector, Rational> coeffs;

    int s() const { return r + d; }
    bool operator==(const PolyExpansion&) const = default;
};

/// Direct route: A_theta = sum over tuples of multinomial(theta - e_{i1} - ... - e_{id}) a_{i1..id}.
PolyExpansion expand_Pr(const SymTensor& A, int r);

/// Repeated multiplication of the level-0 coefficients by sum_k y_k^2.
PolyExpansion expand_Pr_convolution(const SymTensor& A, int r);

/// Closed form through falling factorials:
///   A_theta = c(theta) / (s)_d * sum_t a_t prod_i (theta_i)_{m_i(t)},
/// with each falling factorial (x)_m expanded as sum_k (-1)^k e_k(1..m-1) x^{m-k}.
/// On diagonal tuples this is the beta_k = e_k(1..d-1) correction. Requires d >= 2.
PolyExpansion expand_Pr_closed_form(const SymTensor& A, int r);

/// The closed form with the beta_k correction applied to diagonal entries only:
///   c(theta)/(s)_d [<A, theta^d> + sum_k (-1)^k beta_k <A, Diag(theta^(d-k))>].
/// Exact for d = 2 and for tensors whose partially repeated entries vanish; kept
/// for comparison, not used for membership.
PolyExpansion expand_Pr_diagonal_closed_form(const SymTensor& A, int r);

struct CoefficientVerdict
{
    bool member = false;
    PolyExpansion expansion;
    /// Most negative coefficient (first in lexicographic order on ties).
    std::optional<ExponentVector> worst_theta;
    std::optional<Rational> worst_value;
};

/// Membership in C^(r): every coefficient of P^(r) is non-negative. Exact.
CoefficientVerdict member_C_r(const SymTensor& A, int r);

} // namespace copos

#endif
