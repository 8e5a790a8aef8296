#include "copos/soscone.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace copos
{

GramProblem build_gram_problem(const PolyExpansion& expansion)
{
    GramProblem p;
    p.n = expansion.n;
    p.d = expansion.d;
    p.r = expansion.r;
    p.basis = enumerate_exponents(p.n, expansion.s());

    std::map<std::vector<int>, std::size_t> block_of;
    for (const auto& m : p.basis)
    {
        std::vector<int> parity(m.alpha.size());
        for (std::size_t i = 0; i < parity.size(); ++i)
            parity[i] = m.alpha[i] % 2;
        block_of.emplace(parity, 0);
    }
    // Blocks in lexicographic parity order.
    for (auto& [parity, idx] : block_of)
    {
        idx = p.blocks.size();
        p.blocks.push_back(ParityBlock{parity, {}});
    }
    for (const auto& m : p.basis)
    {
        std::vector<int> parity(m.alpha.size());
        for (std::size_t i = 0; i < parity.size(); ++i)
            parity[i] = m.alpha[i] % 2;
        p.blocks[block_of.at(parity)].monomials.push_back(m);
    }

    for (const auto& [theta, c] : expansion.coeffs)
        p.targets.emplace(theta + theta, c);
    return p;
}

GramProblem build_gram_problem(const SymTensor& A, int r)
{
    return build_gram_problem(expand_Pr_convolution(A, r));
}

GramProblem single_block(const GramProblem& problem)
{
    GramProblem out = problem;
    out.blocks.clear();
    out.blocks.push_back(ParityBlock{{}, problem.basis});
    return out;
}

EigenDecomposition jacobi_eigen(const SymMatrix& input)
{
    const int k = input.dim;
    SymMatrix a = input;
    SymMatrix v(k);
    for (int i = 0; i < k; ++i)
        v(i, i) = 1.0;

    double scale = 0.0;
    for (double x : a.data)
        scale += x * x;
    const double stop = 1e-30 * std::max(scale, 1e-300);

    for (int sweep = 0; sweep < 100; ++sweep)
    {
        double off = 0.0;
        for (int p = 0; p < k; ++p)
            for (int q = p + 1; q < k; ++q)
                off += a(p, q) * a(p, q);
        if (off <= stop)
            break;

        for (int p = 0; p < k; ++p)
            for (int q = p + 1; q < k; ++q)
            {
                double apq = a(p, q);
                if (apq == 0.0)
                    continue;
                double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int j = 0; j < k; ++j)
                {
                    double apj = a(p, j);
                    double aqj = a(q, j);
                    a(p, j) = c * apj - s * aqj;
                    a(q, j) = s * apj + c * aqj;
                }
                for (int j = 0; j < k; ++j)
                {
                    double ajp = a(j, p);
                    double ajq = a(j, q);
                    a(j, p) = c * ajp - s * ajq;
                    a(j, q) = s * ajp + c * ajq;
                }
                for (int j = 0; j < k; ++j)
                {
                    double vjp = v(j, p);
                    double vjq = v(j, q);
                    v(j, p) = c * vjp - s * vjq;
                    v(j, q) = s * vjp + c * vjq;
                }
            }
    }

    EigenDecomposition out;
    out.values.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        out.values[static_cast<std::size_t>(i)] = a(i, i);
    out.vectors = std::move(v);
    return out;
}

namespace
{

struct Slot
{
    int block;
    int i;
    int j;
    double weight;
};

struct Constraint
{
    double target;
    double weight_sum = 0.0;
    std::vector<Slot> slots;
};

/// One constraint per exponent reachable from a pair of basis monomials in a block.
std::vector<Constraint> constraints_of(const GramProblem& problem, double scale)
{
    std::map<ExponentVector, Constraint> by_exponent;
    for (int b = 0; b < static_cast<int>(problem.blocks.size()); ++b)
    {
        const auto& mons = problem.blocks[static_cast<std::size_t>(b)].monomials;
        for (int i = 0; i < static_cast<int>(mons.size()); ++i)
            for (int j = i; j < static_cast<int>(mons.size()); ++j)
            {
                auto gamma = mons[static_cast<std::size_t>(i)] + mons[static_cast<std::size_t>(j)];
                auto& c = by_exponent[gamma];
                double w = i == j ? 1.0 : 2.0;
                c.slots.push_back(Slot{b, i, j, w});
                c.weight_sum += w;
            }
    }
    for (const auto& [gamma, value] : problem.targets)
        if (value != 0 && !by_exponent.contains(gamma))
            throw std::logic_error("target exponent not reachable from the basis");

    std::vector<Constraint> out;
    out.reserve(by_exponent.size());
    for (auto& [gamma, c] : by_exponent)
    {
        auto it = problem.targets.find(gamma);
        c.target = it == problem.targets.end() ? 0.0 : it->second.get_d() / scale;
        out.push_back(std::move(c));
    }
    return out;
}

void project_affine(std::vector<SymMatrix>& x, const std::vector<Constraint>& cons)
{
    for (const auto& c : cons)
    {
        double sum = 0.0;
        for (const auto& s : c.slots)
            sum += s.weight * x[static_cast<std::size_t>(s.block)](s.i, s.j);
        double delta = (c.target - sum) / c.weight_sum;
        for (const auto& s : c.slots)
        {
            auto& m = x[static_cast<std::size_t>(s.block)];
            m(s.i, s.j) += delta;
            if (s.i != s.j)
                m(s.j, s.i) += delta;
        }
    }
}

double max_residual(const std::vector<SymMatrix>& x, const std::vector<Constraint>& cons)
{
    double worst = 0.0;
    for (const auto& c : cons)
    {
        double sum = 0.0;
        for (const auto& s : c.slots)
            sum += s.weight * x[static_cast<std::size_t>(s.block)](s.i, s.j);
        worst = std::max(worst, std::abs(sum - c.target));
    }
    return worst;
}

/// Returns the smallest eigenvalue of the input.
double project_psd(SymMatrix& m)
{
    if (m.dim == 0)
        return 0.0;
    auto eig = jacobi_eigen(m);
    double min_eig = *std::min_element(eig.values.begin(), eig.values.end());
    SymMatrix out(m.dim);
    for (int e = 0; e < m.dim; ++e)
    {
        double lambda = eig.values[static_cast<std::size_t>(e)];
        if (lambda <= 0.0)
            continue;
        for (int i = 0; i < m.dim; ++i)
            for (int j = 0; j < m.dim; ++j)
                out(i, j) += lambda * eig.vectors(i, e) * eig.vectors(j, e);
    }
    m = std::move(out);
    return min_eig;
}

double min_eigenvalue(const std::vector<SymMatrix>& x)
{
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& m : x)
    {
        if (m.dim == 0)
            continue;
        auto eig = jacobi_eigen(m);
        worst = std::min(worst, *std::min_element(eig.values.begin(), eig.values.end()));
    }
    return worst;
}

GramCertificate scaled(const std::vector<SymMatrix>& x, double scale, std::size_t iters)
{
    GramCertificate cert;
    cert.iterations = iters;
    for (auto m : x)
    {
        for (double& v : m.data)
            v *= scale;
        cert.blocks.push_back(std::move(m));
    }
    return cert;
}

} // namespace

GramCheck verify_gram_certificate(const GramProblem& problem, const GramCertificate& cert, double eig_tol,
                                  double match_tol)
{
    GramCheck check;
    if (cert.blocks.size() != problem.blocks.size())
        return check;

    std::map<ExponentVector, double> poly;
    double min_eig = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < problem.blocks.size(); ++b)
    {
        const auto& mons = problem.blocks[b].monomials;
        const auto& g = cert.blocks[b];
        const int k = static_cast<int>(mons.size());
        if (g.dim != k)
            return check;
        Eigen::MatrixXd m(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
            {
                if (g(i, j) != g(j, i))
                    return check;
                m(i, j) = g(i, j);
                poly[mons[static_cast<std::size_t>(i)] + mons[static_cast<std::size_t>(j)]] += g(i, j);
            }
        if (k > 0)
        {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
            min_eig = std::min(min_eig, solver.eigenvalues().minCoeff());
        }
    }

    double residual = 0.0;
    for (const auto& [gamma, value] : poly)
    {
        auto it = problem.targets.find(gamma);
        double want = it == problem.targets.end() ? 0.0 : it->second.get_d();
        residual = std::max(residual, std::abs(value - want));
    }
    for (const auto& [gamma, value] : problem.targets)
        if (!poly.contains(gamma))
            residual = std::max(residual, std::abs(value.get_d()));

    check.residual = residual;
    check.min_eig = std::isfinite(min_eig) ? min_eig : 0.0;
    check.ok = residual <= match_tol && check.min_eig >= -eig_tol;
    return check;
}

GramCertificate diagonal_certificate(const GramProblem& problem)
{
    GramCertificate cert;
    for (const auto& block : problem.blocks)
    {
        SymMatrix m(static_cast<int>(block.monomials.size()));
        for (int i = 0; i < m.dim; ++i)
        {
            const auto& theta = block.monomials[static_cast<std::size_t>(i)];
            auto it = problem.targets.find(theta + theta);
            m(i, i) = it == problem.targets.end() ? 0.0 : it->second.get_d();
        }
        cert.blocks.push_back(std::move(m));
    }
    return cert;
}

SosResult solve_gram(const GramProblem& problem, const SolveOptions& options)
{
    if (options.eig_tol <= 0 || options.match_tol <= 0)
        throw std::invalid_argument("solver tolerances must be positive");

    double scale = 0.0;
    for (const auto& [gamma, value] : problem.targets)
        scale = std::max(scale, std::abs(value.get_d()));

    SosResult result;
    result.best_residual = std::numeric_limits<double>::infinity();
    result.best_min_eig = -std::numeric_limits<double>::infinity();

    std::vector<SymMatrix> x;
    for (const auto& b : problem.blocks)
        x.emplace_back(static_cast<int>(b.monomials.size()));

    auto accept = [&](const std::vector<SymMatrix>& candidate, double s, std::size_t iters) {
        auto cert = scaled(candidate, s, iters);
        auto check = verify_gram_certificate(problem, cert, options.eig_tol, options.match_tol);
        if (!check.ok)
            return false;
        cert.residual = check.residual;
        cert.min_eig = check.min_eig;
        result.status = SosStatus::Certified;
        result.certificate = std::move(cert);
        result.iterations = iters;
        return true;
    };

    if (scale == 0.0)
    {
        result.best_residual = 0.0;
        result.best_min_eig = 0.0;
        accept(x, 1.0, 0);
        return result;
    }

    const auto cons = constraints_of(problem, scale);
    const double match_tol = 0.5 * options.match_tol / scale;
    const double eig_tol = 0.5 * options.eig_tol / scale;

    std::vector<SymMatrix> q = x;
    for (std::size_t it = 1; it <= options.max_iters; ++it)
    {
        // Affine step; no correction is needed for an affine set.
        project_affine(x, cons);

        if (it % 10 == 1)
        {
            double me = min_eigenvalue(x);
            result.best_min_eig = std::max(result.best_min_eig, me * scale);
            if (me >= -eig_tol && accept(x, scale, it))
                return result;
        }

        std::vector<SymMatrix> y = x;
        for (std::size_t b = 0; b < x.size(); ++b)
        {
            if (options.dykstra)
                for (std::size_t e = 0; e < y[b].data.size(); ++e)
                    y[b].data[e] += q[b].data[e];
            SymMatrix before = y[b];
            project_psd(y[b]);
            if (options.dykstra)
                for (std::size_t e = 0; e < y[b].data.size(); ++e)
                    q[b].data[e] = before.data[e] - y[b].data[e];
        }
        x = std::move(y);

        double res = max_residual(x, cons);
        result.best_residual = std::min(result.best_residual, res * scale);
        if (res <= match_tol && accept(x, scale, it))
            return result;
    }
    result.iterations = options.max_iters;
    return result;
}

GramCertificate lift_certificate(const GramProblem& from, const GramCertificate& cert, const GramProblem& to)
{
    if (to.n != from.n || to.d != from.d || to.r != from.r + 1 || cert.blocks.size() != from.blocks.size())
        throw std::invalid_argument("lift_certificate: problems are not consecutive levels of one tensor");
    std::map<ExponentVector, std::pair<std::size_t, int>> where;
    GramCertificate out;
    for (std::size_t b = 0; b < to.blocks.size(); ++b)
    {
        const auto& mons = to.blocks[b].monomials;
        for (std::size_t i = 0; i < mons.size(); ++i)
            where[mons[i]] = {b, static_cast<int>(i)};
        out.blocks.emplace_back(static_cast<int>(mons.size()));
    }
    // P^(r+1) = sum_k (y_k m)^T G (y_k m)
    for (int k = 0; k < from.n; ++k)
    {
        const ExponentVector ek = unit_exponent(from.n, k);
        for (std::size_t b = 0; b < from.blocks.size(); ++b)
        {
            const auto& mons = from.blocks[b].monomials;
            const auto& g = cert.blocks[b];
            for (int i = 0; i < g.dim; ++i)
            {
                auto [bi, ii] = where.at(mons[static_cast<std::size_t>(i)] + ek);
                for (int j = 0; j < g.dim; ++j)
                {
                    auto [bj, jj] = where.at(mons[static_cast<std::size_t>(j)] + ek);
                    if (bi != bj)
                        throw std::logic_error("lift_certificate: parity blocks do not match");
                    out.blocks[bi](ii, jj) += g(i, j);
                }
            }
        }
    }
    out.iterations = cert.iterations;
    return out;
}

SosResult member_K_r(const SymTensor& A, int r, const SolveOptions& options)
{
    auto coef = member_C_r(A, r);
    auto problem = build_gram_problem(coef.expansion);
    if (coef.member)
    {
        auto cert = diagonal_certificate(problem);
        auto check = verify_gram_certificate(problem, cert, options.eig_tol, options.match_tol);
        if (check.ok)
        {
            cert.residual = check.residual;
            cert.min_eig = check.min_eig;
            SosResult result;
            result.status = SosStatus::Certified;
            result.certificate = std::move(cert);
            result.fast_path = true;
            result.best_residual = check.residual;
            result.best_min_eig = check.min_eig;
            return result;
        }
    }
    auto result = solve_gram(problem, options);
    if (result.status == SosStatus::Certified || r == 0)
        return result;

    // K^(r-1) is contained in K^(r): lift a lower certificate if there is one.
    auto lower = member_K_r(A, r - 1, options);
    if (lower.status != SosStatus::Certified)
        return result;
    auto cert = lift_certificate(build_gram_problem(A, r - 1), *lower.certificate, problem);
    auto check = verify_gram_certificate(problem, cert, options.eig_tol, options.match_tol);
    if (!check.ok)
        return result;
    cert.residual = check.residual;
    cert.min_eig = check.min_eig;
    result.status = SosStatus::Certified;
    result.certificate = std::move(cert);
    result.lifted = lower.lifted + 1;
    result.best_residual = check.residual;
    result.best_min_eig = check.min_eig;
    return result;
}

} // namespace copos
