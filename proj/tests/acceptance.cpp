// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "copos/grid_cone.hpp"
#include "copos/io.hpp"
#include "copos/oracle.hpp"
#include "copos/polycone.hpp"
#include "copos/simplex_partition.hpp"
#include "copos/soscone.hpp"

#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace copos;
using copos::testing::random_tensor;

namespace
{

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SymTensor load(const std::string& name)
{
    return parse_tensor(read_file(std::string(COPOS_DATA_DIR) + "/" + name));
}

struct Outcome
{
    bool pass = true;
    std::string detail;
    std::vector<std::string> failures;

    void require(bool ok, const std::string& what)
    {
        if (!ok)
        {
            pass = false;
            if (failures.size() < 5)
                failures.push_back(what);
        }
    }
};

bool nonnegative_entries(const SymTensor& A)
{
    for (const auto& v : A.canonical_values())
        if (v < 0)
            return false;
    return true;
}

// Entries k/20 in [-1, 1] with positive diagonal and mostly positive
// off-diagonal entries, so that copositive instances are common.
SymTensor biased_tensor(std::mt19937_64& rng, int n, int d, int off_lo)
{
    std::uniform_int_distribution<int> diag(10, 20);
    std::uniform_int_distribution<int> off(off_lo, 20);
    std::map<Index, Rational> entries;
    for (const auto& t : TupleTable::get(n, d)->tuples())
    {
        bool is_diag = t.front() == t.back();
        Rational q(is_diag ? diag(rng) : off(rng), 20);
        q.canonicalize();
        entries[t] = q;
    }
    return SymTensor(n, d, 0, std::move(entries));
}

std::string describe(const SymTensor& A)
{
    return "n=" + std::to_string(A.n()) + " d=" + std::to_string(A.d()) + " " + tensor_digest(A).substr(0, 19);
}

// --- criterion 1 -----------------------------------------------------------

Outcome copositive_not_psd_example()
{
    Outcome o;
    auto A = load("copositive_not_psd.json");
    o.require(A == copos::testing::copositive_not_psd(), "parsed tensor differs from the stated entries");
    o.require(necessary_screen(A).pass, "screen fails");
    o.require(member_C_r(A, 0).member, "not a member of C^(0)");
    auto cert = certify_copositivity(A);
    o.require(cert.verdict == Verdict::Copositive, "branch and bound does not certify");
    o.require(cert.stats.max_depth_reached == 0, "certified only at depth " + std::to_string(cert.stats.max_depth_reached));
    std::vector<std::vector<double>> probe{{-2, 0, 1}};
    auto s = fullspace_sample_min(A, 10000, kDefaultSeed, probe);
    o.require(s.min_value < 0, "full-space sampling finds no negative value");
    RationalPoint x{-2, 0, 1};
    Rational exact = naive_eval(A, x);
    o.require(exact < 0, "value at (-2,0,1) is not negative");
    o.detail = "f(-2,0,1) = " + to_string(exact) + " (direct sum), sampled min on sphere " + std::to_string(s.min_value);
    return o;
}

// --- criterion 2 -----------------------------------------------------------

Outcome expansion_equivalence()
{
    Outcome o;
    std::mt19937_64 rng(kDefaultSeed);
    std::size_t compared = 0;
    for (int n = 1; n <= 3; ++n)
        for (int d = 2; d <= 4; ++d)
            for (int trial = 0; trial < 50; ++trial)
            {
                auto A = random_tensor(rng, n, d);
                for (int r = 0; r <= 3; ++r)
                {
                    auto direct = expand_Pr(A, r);
                    auto closed = expand_Pr_closed_form(A, r);
                    auto brute = expand_bruteforce(A, r);
                    std::map<ExponentVector, Rational> direct_nz;
                    for (const auto& [theta, c] : direct.coeffs)
                        if (c != 0)
                        {
                            ExponentVector g = theta;
                            for (auto& a : g.alpha)
                                a *= 2;
                            direct_nz[g] = c;
                        }
                    o.require(direct_nz == brute, "expand_Pr differs from brute force: " + describe(A) +
                                                      " r=" + std::to_string(r));
                    o.require(closed == direct, "closed form differs: " + describe(A) + " r=" + std::to_string(r));
                    ++compared;
                }
            }
    o.detail = std::to_string(compared) + " (tensor, r) pairs, 50 tensors per (n, d)";
    return o;
}

// --- criterion 3 -----------------------------------------------------------

Outcome containment_suite()
{
    Outcome o;
    std::mt19937_64 rng(kDefaultSeed + 3);
    std::size_t instances = 0, c_members = 0, refinements = 0, edge_only_d_gt_2 = 0;
    for (int trial = 0; trial < 240; ++trial)
    {
        const int n = 2 + trial % 2;
        const int d = 2 + (trial / 2) % 3;
        auto A = trial % 3 == 0 ? random_tensor(rng, n, d) : biased_tensor(rng, n, d, -12);
        ++instances;
        const std::string id = describe(A);

        // (a), (b), (c)
        bool prev_c = false;
        for (int r = 0; r <= 3; ++r)
        {
            bool c = member_C_r(A, r).member;
            if (prev_c)
                o.require(c, "C^(r) not nested: " + id);
            prev_c = c;
            if (!c)
                continue;
            ++c_members;
            auto k = member_K_r(A, r);
            o.require(k.status == SosStatus::Certified, "C^(r) member not K^(r)-certified: " + id);
            if (k.certificate)
                o.require(verify_gram_certificate(build_gram_problem(A, r), *k.certificate, 1e-8, 1e-8).ok,
                          "diagonal certificate fails the checker: " + id);
            auto P = grid_partition(n, r + d);
            o.require(member_I_P(A, P), "C^(r) member outside I^{P_r}: " + id);
            o.require(member_I_P_full(A, P), "C^(r) member fails the vertex-tuple test on P_r: " + id);
        }

        // (d)
        bool prev_o = true;
        for (int r = 0; r <= 6; ++r)
        {
            bool m = member_O_r(A, r).member;
            if (!prev_o)
                o.require(!m, "O^(r) not nested: " + id);
            prev_o = m;
        }

        // (e)
        auto P = Partition::trivial(n);
        for (int step = 0; step < 6; ++step)
        {
            auto Q = P.refine(static_cast<std::size_t>(trial * 7 + step) % P.simplices().size());
            ++refinements;
            bool ip = member_I_P(A, P), iq = member_I_P(A, Q);
            if (d == 2 || n == 2)
                o.require(!ip || iq, "I^P not monotone under refinement: " + id);
            else if (ip && !iq)
                ++edge_only_d_gt_2;
            o.require(!member_I_P_full(A, P) || member_I_P_full(A, Q),
                      "vertex-tuple I^P not monotone under refinement: " + id);
            o.require(!member_O_P(A, Q) || member_O_P(A, P), "O^P not anti-monotone under refinement: " + id);
            P = std::move(Q);
        }
    }
    o.require(c_members >= 50, "too few C^(r) members to exercise (b) and (c)");
    o.detail = std::to_string(instances) + " instances, " + std::to_string(c_members) + " C^(r) memberships, " +
               std::to_string(refinements) + " refinements; edge-only I^P with n=3, d>2 lost membership " +
               std::to_string(edge_only_d_gt_2) + " times (vertex-tuple form used there)";
    return o;
}

// --- criterion 4 -----------------------------------------------------------

Outcome strict_containment()
{
    Outcome o;
    auto B = load("psd_pair.json");
    auto k = member_K_r(B, 0);
    o.require(k.status == SosStatus::Certified && !k.fast_path, "[[1,-1],[-1,1]] not certified by the solver");
    if (k.certificate)
        o.require(verify_gram_certificate(build_gram_problem(B, 0), *k.certificate, 1e-8, 1e-8).ok,
                  "Gram certificate fails the checker");
    for (int r = 0; r <= 5; ++r)
        o.require(!member_C_r(B, r).member, "[[1,-1],[-1,1]] is a member of C^(" + std::to_string(r) + ")");

    auto S = load("sextic_cross.json");
    o.require(!member_C_r(S, 0).member, "degree-six example is a member of C^(0)");
    o.require(!nonnegative_entries(S), "degree-six example has no negative entry");
    o.require(!member_I_P_full(S, Partition::trivial(3)), "degree-six example passes the entrywise test");
    o.require(!member_I_P(S, Partition::trivial(3)), "degree-six example is in I^P for the trivial partition");

    // K^(0) membership of the degree-six example: explicit Gram matrix for
    // (y2^6 - y3^6)^2 + y1^12 + 2 (y1^3 y2^3)^2 + 2 (y1^3 y3^3)^2.
    auto p = build_gram_problem(S, 0);
    GramCertificate g;
    for (const auto& b : p.blocks)
        g.blocks.emplace_back(static_cast<int>(b.monomials.size()));
    auto set = [&](const ExponentVector& u, const ExponentVector& v, double x) {
        for (std::size_t b = 0; b < p.blocks.size(); ++b)
        {
            const auto& m = p.blocks[b].monomials;
            auto iu = std::find(m.begin(), m.end(), u) - m.begin();
            auto iv = std::find(m.begin(), m.end(), v) - m.begin();
            if (iu < static_cast<long>(m.size()) && iv < static_cast<long>(m.size()))
            {
                g.blocks[b](static_cast<int>(iu), static_cast<int>(iv)) = x;
                g.blocks[b](static_cast<int>(iv), static_cast<int>(iu)) = x;
            }
        }
    };
    set({6, 0, 0}, {6, 0, 0}, 1);
    set({0, 6, 0}, {0, 6, 0}, 1);
    set({0, 0, 6}, {0, 0, 6}, 1);
    set({0, 6, 0}, {0, 0, 6}, -1);
    set({3, 3, 0}, {3, 3, 0}, 2);
    set({3, 0, 3}, {3, 0, 3}, 2);
    auto check = verify_gram_certificate(p, g, 1e-8, 1e-8);
    o.require(check.ok, "explicit Gram matrix of the degree-six example fails the checker");
    auto solver = member_K_r(S, 0);
    o.detail = std::string("[[1,-1],[-1,1]] certified in ") + std::to_string(k.iterations) +
               " iterations; degree-six example: explicit Gram verified, solver " +
               (solver.status == SosStatus::Certified ? "Certified" : "Unknown") + " (best residual " +
               std::to_string(solver.best_residual) + ")";
    return o;
}

// --- criteria 5 and 6 share the suite ---------------------------------------

struct SuiteCase
{
    SymTensor A;
    Rational oracle_min;
};

std::vector<SuiteCase> branch_and_bound_suite(std::size_t per_class)
{
    std::mt19937_64 rng(kDefaultSeed + 5);
    std::vector<SuiteCase> out;
    std::size_t pos = 0, neg = 0;
    const Rational margin(1, 20);
    for (int trial = 0; pos < per_class || neg < per_class; ++trial)
    {
        const int n = 2 + trial % 2;
        const int d = 2 + (trial / 2) % 3;
        auto A = trial % 2 == 0 ? random_tensor(rng, n, d) : biased_tensor(rng, n, d, -20);
        Rational m = simplex_grid_min(A, 50).min_value;
        if (m >= margin && pos < per_class)
        {
            ++pos;
            out.push_back({std::move(A), m});
        }
        else if (m <= -margin && neg < per_class)
        {
            ++neg;
            out.push_back({std::move(A), m});
        }
    }
    return out;
}

Outcome branch_and_bound(const std::vector<SuiteCase>& suite)
{
    Outcome o;
    double worst = 0.0;
    int deepest = 0;
    std::size_t pos = 0, neg = 0;
    for (const auto& c : suite)
    {
        auto t0 = Clock::now();
        auto cert = certify_copositivity(c.A);
        double t = seconds_since(t0);
        worst = std::max(worst, t);
        o.require(t < 5.0, "runtime " + std::to_string(t) + " s: " + describe(c.A));
        if (c.oracle_min > 0)
        {
            ++pos;
            deepest = std::max(deepest, cert.stats.max_depth_reached);
            o.require(cert.verdict == Verdict::Copositive, "not certified: " + describe(c.A));
        }
        else
        {
            ++neg;
            o.require(cert.verdict == Verdict::NotCopositive, "not refuted: " + describe(c.A));
            o.require(cert.witness && cert.witness_value && eval(c.A, *cert.witness) == *cert.witness_value &&
                          *cert.witness_value < 0,
                      "witness does not verify: " + describe(c.A));
            if (cert.witness)
            {
                Rational sum = 0;
                bool nonneg = true;
                for (const auto& x : *cert.witness)
                {
                    sum += x;
                    nonneg = nonneg && x >= 0;
                }
                o.require(nonneg && sum == 1, "witness off the simplex: " + describe(c.A));
            }
        }
    }
    o.detail = std::to_string(pos) + " with oracle min >= 0.05, " + std::to_string(neg) +
               " with oracle min <= -0.05; deepest certificate " + std::to_string(deepest) + ", slowest " +
               std::to_string(worst) + " s";
    return o;
}

Outcome grid_convergence(const std::vector<SuiteCase>& suite)
{
    Outcome o;
    std::size_t refuted_levels = 0, neg = 0, pos = 0;
    int worst_level = 0;
    for (const auto& c : suite)
    {
        if (c.oracle_min < 0)
        {
            ++neg;
            int found = -1;
            for (int r = 0; r <= 12 && found < 0; ++r)
                if (!member_O_r(c.A, r).member)
                    found = r;
            o.require(found >= 0, "still a member of O^(12): " + describe(c.A));
            worst_level = std::max(worst_level, found);
            refuted_levels += static_cast<std::size_t>(std::max(found, 0));
        }
        else
        {
            ++pos;
            auto v = member_O_r(c.A, 12); // cumulative: covers every r <= 12
            o.require(v.member, "copositive tensor outside O^(12): " + describe(c.A));
        }
    }
    o.detail = std::to_string(neg) + " refuted by r <= " + std::to_string(worst_level) + ", " + std::to_string(pos) +
               " members through r = 12";
    return o;
}

// --- criterion 7 -----------------------------------------------------------

Outcome z_tensor_psd()
{
    Outcome o;
    std::mt19937_64 rng(kDefaultSeed + 7);
    std::uniform_int_distribution<int> diag(4, 20);
    std::size_t accepted = 0, tried = 0;
    double lowest = std::numeric_limits<double>::infinity();
    while (accepted < 60 && tried < 5000)
    {
        ++tried;
        const int n = 2 + static_cast<int>(tried % 2);
        const int d = tried % 3 == 0 ? 4 : 2;
        std::uniform_int_distribution<int> off(d == 2 ? -20 : -4, 0);
        std::map<Index, Rational> entries;
        for (const auto& t : TupleTable::get(n, d)->tuples())
        {
            Rational q(t.front() == t.back() ? diag(rng) : off(rng), 20);
            q.canonicalize();
            entries[t] = q;
        }
        SymTensor A(n, d, 0, std::move(entries));
        if (certify_copositivity(A).verdict != Verdict::Copositive)
            continue;
        ++accepted;
        auto s = fullspace_sample_min(A, 10000, kDefaultSeed + tried);
        lowest = std::min(lowest, s.min_value);
        o.require(s.min_value >= -1e-9, "negative full-space sample " + std::to_string(s.min_value) + ": " +
                                            describe(A));
    }
    o.require(accepted >= 50, "only " + std::to_string(accepted) + " certified instances");
    o.detail = std::to_string(accepted) + " certified Z-tensors (d = 2, 4), 10^4 samples each, lowest sample " +
               std::to_string(lowest);
    return o;
}

// --- criterion 8 -----------------------------------------------------------

Outcome sos_self_verification()
{
    Outcome o;
    std::mt19937_64 rng(kDefaultSeed + 8);
    std::size_t runs = 0, certified = 0, solver_certified = 0;
    SolveOptions opts;
    for (int trial = 0; trial < 120; ++trial)
    {
        const int n = 2 + trial % 2;
        const int d = 2 + (trial / 2) % 2;
        auto A = trial % 2 == 0 ? random_tensor(rng, n, d) : biased_tensor(rng, n, d, -20);
        for (int r = 0; r <= 1; ++r)
        {
            auto p = build_gram_problem(A, r);
            for (auto res : {solve_gram(p, opts), member_K_r(A, r, opts)})
            {
                ++runs;
                if (res.status != SosStatus::Certified)
                    continue;
                ++certified;
                if (!res.fast_path)
                    ++solver_certified;
                auto check = verify_gram_certificate(p, *res.certificate, 1e-8, 1e-8);
                o.require(check.ok && check.residual <= 1e-8 && check.min_eig >= -1e-8,
                          "certificate fails the checker: " + describe(A));
            }
        }
    }
    o.require(solver_certified > 0, "the solver certified nothing");
    o.detail = std::to_string(certified) + " of " + std::to_string(runs) + " runs certified (" +
               std::to_string(solver_certified) + " by the solver), all re-verified";
    return o;
}

} // namespace

int main()
{
    struct Criterion
    {
        int id;
        const char* name;
        double limit;
        std::function<Outcome()> run;
    };

    std::vector<SuiteCase> suite;
    const std::vector<Criterion> criteria = {
        {1, "copositive-but-not-PSD example", 1.0, copositive_not_psd_example},
        {2, "expansion oracle equivalence", 60.0, expansion_equivalence},
        {3, "containment suite", 0.0, containment_suite},
        {4, "strict containment witnesses", 10.0, strict_containment},
        {5, "branch-and-bound convergence", 0.0,
         [&] {
             suite = branch_and_bound_suite(100);
             return branch_and_bound(suite);
         }},
        {6, "grid outer convergence", 0.0, [&] { return grid_convergence(suite); }},
        {7, "Z-tensor copositive implies PSD", 0.0, z_tensor_psd},
        {8, "SOS self-verification", 0.0, sos_self_verification},
    };

    int failed = 0;
    for (const auto& c : criteria)
    {
        auto t0 = Clock::now();
        Outcome out;
        try
        {
            out = c.run();
        }
        catch (const std::exception& e)
        {
            out.pass = false;
            out.failures.push_back(std::string("exception: ") + e.what());
        }
        double t = seconds_since(t0);
        if (c.limit > 0 && t >= c.limit)
            out.require(false, "runtime " + std::to_string(t) + " s exceeds " + std::to_string(c.limit) + " s");
        std::printf("criterion %d %s: %s (%.2f s) %s\n", c.id, out.pass ? "PASS" : "FAIL", c.name, t,
                    out.detail.c_str());
        for (const auto& f : out.failures)
            std::printf("    %s\n", f.c_str());
        std::fflush(stdout);
        if (!out.pass)
            ++failed;
    }
    return failed == 0 ? 0 : 1;
}
