#ifndef COPOS_SOSCONE_HPP
#define COPOS_SOSCONE_HPP

#include "copos/combinatorics.hpp"
#include "copos/polycone.hpp"
#include "copos/tensor.hpp"

#include <map>
#include <optional>
#include <vector>

namespace copos
{

/// Basis monomials sharing one exponent parity pattern. Products of two
/// members always have an all-even exponent.
struct ParityBlock
{
    std::vector<int> parity;
    std::vector<ExponentVector> monomials;
};

/// Gram feasibility problem for P^(r)(y): find PSD G_b with
/// sum_b m_b^T G_b m_b = P^(r).
struct GramProblem
{
    int n = 0;
    int d = 0;
    int r = 0;
    /// All monomials of degree d + r.
    std::vector<ExponentVector> basis;
    std::vector<ParityBlock> blocks;
    /// Coefficient of y^gamma for each gamma = 2 theta, theta in I^n(d + r).
    std::map<ExponentVector, Rational> targets;
};

GramProblem build_gram_problem(const PolyExpansion& expansion);
GramProblem build_gram_problem(const SymTensor& A, int r);

/// Same problem with the whole basis as one block. Cross-parity products then
/// produce odd exponents, constrained to zero.
GramProblem single_block(const GramProblem& problem);

/// Dense symmetric matrix, row-major.
struct SymMatrix
{
    int dim = 0;
    std::vector<double> data;

    SymMatrix() = default;
    explicit SymMatrix(int k) : dim(k), data(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), 0.0) {}

    double& operator()(int i, int j) { return data[static_cast<std::size_t>(i * dim + j)]; }
    double operator()(int i, int j) const { return data[static_cast<std::size_t>(i * dim + j)]; }
};

struct EigenDecomposition
{
    std::vector<double> values;
    /// Eigenvectors as columns.
    SymMatrix vectors;
};

/// Cyclic Jacobi rotations.
EigenDecomposition jacobi_eigen(const SymMatrix& m);

struct GramCertificate
{
    /// One matrix per block of the problem, same order.
    std::vector<SymMatrix> blocks;
    double residual = 0.0;
    double min_eig = 0.0;
    std::size_t iterations = 0;
};

struct SolveOptions
{
    double eig_tol = 1e-8;
    double match_tol = 1e-8;
    std::size_t max_iters = 20000;
    /// Dykstra correction on the PSD step; plain alternating projections otherwise.
    bool dykstra = true;
};

enum class SosStatus
{
    Certified,
    Unknown,
};

struct SosResult
{
    SosStatus status = SosStatus::Unknown;
    std::optional<GramCertificate> certificate;
    /// Smallest coefficient mismatch seen on a PSD iterate.
    double best_residual = 0.0;
    /// Largest minimum eigenvalue seen on a coefficient-matching iterate.
    double best_min_eig = 0.0;
    std::size_t iterations = 0;
    bool fast_path = false;
    /// Levels the certificate was lifted through (0 when found directly).
    int lifted = 0;
};

struct GramCheck
{
    bool ok = false;
    double residual = 0.0;
    double min_eig = 0.0;
};

/// Independent re-check of a certificate: recomputes every coefficient of
/// sum_b m_b^T G_b m_b against the targets and the smallest eigenvalue (Eigen's
/// self-adjoint solver, not the Jacobi routine used by the solver).
GramCheck verify_gram_certificate(const GramProblem& problem, const GramCertificate& cert, double eig_tol,
                                  double match_tol);

/// Alternating projections between the coefficient-matching affine set and the
/// PSD cone. Certified results have passed verify_gram_certificate; Unknown is
/// not evidence of non-membership.
SosResult solve_gram(const GramProblem& problem, const SolveOptions& options = {});

/// Diagonal certificate G_theta,theta = A_theta, valid when every A_theta >= 0.
GramCertificate diagonal_certificate(const GramProblem& problem);

/// Gram matrices for level r + 1 from a level-r certificate, through
/// P^(r+1) = sum_k (y_k m)^T G (y_k m). Exact up to floating-point addition.
GramCertificate lift_certificate(const GramProblem& from, const GramCertificate& cert, const GramProblem& to);

/// Membership in K^(r). Members of C^(r) are certified by diagonal_certificate
/// without running the solver. When the solver stops at Unknown, a certificate
/// for level r - 1 (found the same way) is lifted and re-verified.
SosResult member_K_r(const SymTensor& A, int r, const SolveOptions& options = {});

} // namespace copos

#endif
