#include "copos/simplex_partition.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <thread>

namespace copos
{

Simplex standard_simplex(int n)
{
    if (n < 1)
        throw std::invalid_argument("standard simplex needs n >= 1");
    Simplex s;
    for (int i = 0; i < n; ++i)
    {
        RationalPoint e(static_cast<std::size_t>(n), Rational(0));
        e[static_cast<std::size_t>(i)] = 1;
        s.vertices.push_back(std::move(e));
    }
    return s;
}

Rational squared_distance(const RationalPoint& u, const RationalPoint& v)
{
    Rational total = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
    {
        Rational diff = u[i] - v[i];
        total += diff * diff;
    }
    return total;
}

std::pair<int, int> longest_edge(const Simplex& s)
{
    const int k = static_cast<int>(s.vertices.size());
    if (k < 2)
        throw std::invalid_argument("simplex has no edges");
    std::pair<int, int> best{0, 1};
    Rational best_len = -1;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
        {
            Rational len = squared_distance(s.vertices[static_cast<std::size_t>(i)],
                                            s.vertices[static_cast<std::size_t>(j)]);
            if (len > best_len)
            {
                best_len = std::move(len);
                best = {i, j};
            }
        }
    return best;
}

std::pair<Simplex, Simplex> bisect_longest_edge(const Simplex& s)
{
    auto [i, j] = longest_edge(s);
    const auto& vi = s.vertices[static_cast<std::size_t>(i)];
    const auto& vj = s.vertices[static_cast<std::size_t>(j)];
    if (squared_distance(vi, vj) == 0)
        throw std::invalid_argument("cannot bisect a degenerate simplex");

    RationalPoint mid(vi.size());
    for (std::size_t k = 0; k < vi.size(); ++k)
        mid[k] = (vi[k] + vj[k]) / 2;

    Simplex first = s;
    Simplex second = s;
    first.vertices[static_cast<std::size_t>(i)] = mid;
    second.vertices[static_cast<std::size_t>(j)] = std::move(mid);
    first.depth = second.depth = s.depth + 1;
    return {std::move(first), std::move(second)};
}

Partition::Partition(std::vector<Simplex> simplices) : simplices_(std::move(simplices))
{
    for (const auto& s : simplices_)
    {
        for (std::size_t a = 0; a < s.vertices.size(); ++a)
        {
            vertices_.insert(s.vertices[a]);
            for (std::size_t b = a + 1; b < s.vertices.size(); ++b)
            {
                if (s.vertices[a] < s.vertices[b])
                    edges_.emplace(s.vertices[a], s.vertices[b]);
                else
                    edges_.emplace(s.vertices[b], s.vertices[a]);
            }
        }
    }
}

Partition Partition::trivial(int n)
{
    return Partition({standard_simplex(n)});
}

Partition Partition::refine(std::size_t index) const
{
    if (index >= simplices_.size())
        throw std::out_of_range("no simplex at that position");
    std::vector<Simplex> next;
    next.reserve(simplices_.size() + 1);
    for (std::size_t k = 0; k < simplices_.size(); ++k)
    {
        if (k == index)
        {
            auto [a, b] = bisect_longest_edge(simplices_[k]);
            next.push_back(std::move(a));
            next.push_back(std::move(b));
        }
        else
        {
            next.push_back(simplices_[k]);
        }
    }
    return Partition(std::move(next));
}

Partition Partition::refine_all() const
{
    std::vector<Simplex> next;
    next.reserve(2 * simplices_.size());
    for (const auto& s : simplices_)
    {
        auto [a, b] = bisect_longest_edge(s);
        next.push_back(std::move(a));
        next.push_back(std::move(b));
    }
    return Partition(std::move(next));
}

Partition grid_partition(int n, int m)
{
    if (n < 1 || m < 1)
        throw std::invalid_argument("grid partition needs n >= 1 and m >= 1");
    if (n == 1)
        return Partition::trivial(1);

    // Cumulative coordinates z_k = x_1 + ... + x_k (numerators over m) turn the
    // simplex into {0 <= z_1 <= ... <= z_{n-1} <= m}, a union of Kuhn simplices.
    const int dim = n - 1;
    auto to_point = [&](const std::vector<int>& z) {
        RationalPoint x(static_cast<std::size_t>(n));
        int prev = 0;
        for (int k = 0; k < dim; ++k)
        {
            x[static_cast<std::size_t>(k)] = Rational(z[static_cast<std::size_t>(k)] - prev, m);
            prev = z[static_cast<std::size_t>(k)];
        }
        x[static_cast<std::size_t>(dim)] = Rational(m - prev, m);
        for (auto& c : x)
            c.canonicalize();
        return x;
    };
    auto inside = [&](const std::vector<int>& z) {
        int prev = 0;
        for (int v : z)
        {
            if (v < prev)
                return false;
            prev = v;
        }
        return prev <= m;
    };

    std::vector<Simplex> simplices;
    std::vector<int> base(static_cast<std::size_t>(dim), 0);
    std::vector<int> perm(static_cast<std::size_t>(dim));
    while (true)
    {
        for (int k = 0; k < dim; ++k)
            perm[static_cast<std::size_t>(k)] = k;
        do
        {
            std::vector<std::vector<int>> zs{base};
            for (int k = 0; k < dim; ++k)
            {
                auto z = zs.back();
                ++z[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
                zs.push_back(std::move(z));
            }
            if (std::all_of(zs.begin(), zs.end(), inside))
            {
                Simplex s;
                for (const auto& z : zs)
                    s.vertices.push_back(to_point(z));
                simplices.push_back(std::move(s));
            }
        } while (std::next_permutation(perm.begin(), perm.end()));

        int k = 0;
        while (k < dim && ++base[static_cast<std::size_t>(k)] == m)
            base[static_cast<std::size_t>(k++)] = 0;
        if (k == dim)
            break;
    }
    return Partition(std::move(simplices));
}

Rational squared_diameter(const Partition& P)
{
    Rational best = 0;
    for (const auto& [u, v] : P.edges())
    {
        Rational len = squared_distance(u, v);
        if (len > best)
            best = std::move(len);
    }
    return best;
}

double diameter(const Partition& P)
{
    return std::sqrt(squared_diameter(P).get_d());
}

bool inner_test_full(const SymTensor& A, const Simplex& s)
{
    if (static_cast<int>(s.vertices.size()) != A.n())
        throw std::invalid_argument("simplex must have n vertices");
    std::vector<const RationalPoint*> factors(static_cast<std::size_t>(A.d()));
    for (const auto& t : A.table().tuples())
    {
        for (std::size_t k = 0; k < t.size(); ++k)
            factors[k] = &s.vertices[static_cast<std::size_t>(t[k])];
        if (multilinear(A, factors) < 0)
            return false;
    }
    return true;
}

bool member_O_P(const SymTensor& A, const Partition& P)
{
    for (const auto& v : P.vertices())
        if (eval(A, v) < 0)
            return false;
    return true;
}

bool member_I_P(const SymTensor& A, const Partition& P)
{
    if (!member_O_P(A, P))
        return false;
    for (const auto& [u, v] : P.edges())
        for (int a = 1; a < A.d(); ++a)
            if (mixed_form(A, u, v, a) < 0)
                return false;
    return true;
}

bool member_I_P_full(const SymTensor& A, const Partition& P)
{
    return std::all_of(P.simplices().begin(), P.simplices().end(),
                       [&](const Simplex& s) { return inner_test_full(A, s); });
}

std::string to_string(Verdict v)
{
    switch (v)
    {
    case Verdict::Copositive:
        return "Copositive";
    case Verdict::NotCopositive:
        return "NotCopositive";
    case Verdict::StrictlyIndeterminate:
        return "StrictlyIndeterminate";
    }
    return "?";
}

namespace
{

struct WorkItem
{
    Simplex simplex;
    /// Position of the only vertex not yet evaluated, or -1 for all of them.
    int fresh = -1;
};

struct Outcome
{
    enum class Kind
    {
        Negative,
        Pruned,
        Split,
        Capped,
    };
    Kind kind = Kind::Capped;
    RationalPoint witness;
    Rational value;
    WorkItem first;
    WorkItem second;
};

Outcome process(const SymTensor& A, const WorkItem& item, int max_depth)
{
    Outcome out;
    const auto& verts = item.simplex.vertices;
    for (std::size_t k = 0; k < verts.size(); ++k)
    {
        if (item.fresh >= 0 && static_cast<int>(k) != item.fresh)
            continue;
        Rational value = eval(A, verts[k]);
        if (value < 0)
        {
            out.kind = Outcome::Kind::Negative;
            out.witness = verts[k];
            out.value = std::move(value);
            return out;
        }
    }
    if (inner_test_full(A, item.simplex))
    {
        out.kind = Outcome::Kind::Pruned;
        return out;
    }
    if (item.simplex.depth >= max_depth)
    {
        out.kind = Outcome::Kind::Capped;
        return out;
    }
    auto [i, j] = longest_edge(item.simplex);
    auto [a, b] = bisect_longest_edge(item.simplex);
    out.kind = Outcome::Kind::Split;
    out.first = WorkItem{std::move(a), i};
    out.second = WorkItem{std::move(b), j};
    return out;
}

Rational longest_squared(const Simplex& s)
{
    auto [i, j] = longest_edge(s);
    return squared_distance(s.vertices[static_cast<std::size_t>(i)], s.vertices[static_cast<std::size_t>(j)]);
}

class Search
{
  public:
    Search(const SymTensor& A, const CertifyOptions& options) : A_(A), options_(options) {}

    Certificate run()
    {
        std::deque<WorkItem> work;
        work.push_back(WorkItem{standard_simplex(A_.n()), -1});

        while (!work.empty() && !cert_.witness)
        {
            std::size_t left = options_.simplex_budget - cert_.stats.simplices_processed;
            if (left == 0)
                break;

            std::vector<WorkItem> batch;
            if (options_.order == WorkOrder::Lifo)
            {
                batch.push_back(std::move(work.back()));
                work.pop_back();
            }
            else
            {
                std::size_t take = std::min(left, work.size());
                for (std::size_t k = 0; k < take; ++k)
                {
                    batch.push_back(std::move(work.front()));
                    work.pop_front();
                }
            }

            auto outcomes = evaluate(batch);
            for (std::size_t k = 0; k < outcomes.size(); ++k)
            {
                auto& o = outcomes[k];
                ++cert_.stats.simplices_processed;
                cert_.stats.max_depth_reached = std::max(cert_.stats.max_depth_reached, batch[k].simplex.depth);
                switch (o.kind)
                {
                case Outcome::Kind::Negative:
                    cert_.witness = std::move(o.witness);
                    cert_.witness_value = std::move(o.value);
                    // the rest of the batch stays part of the partition
                    for (std::size_t rest = k; rest < batch.size(); ++rest)
                        leaf(batch[rest].simplex);
                    break;
                case Outcome::Kind::Pruned:
                    ++cert_.stats.pruned;
                    leaf(batch[k].simplex);
                    break;
                case Outcome::Kind::Capped:
                    ++cert_.stats.remaining;
                    leaf(batch[k].simplex);
                    break;
                case Outcome::Kind::Split:
                    if (options_.order == WorkOrder::Lifo)
                    {
                        work.push_back(std::move(o.second));
                        work.push_back(std::move(o.first));
                    }
                    else
                    {
                        work.push_back(std::move(o.first));
                        work.push_back(std::move(o.second));
                    }
                    break;
                }
                if (cert_.witness)
                    break;
            }
        }

        for (const auto& item : work)
            leaf(item.simplex);
        if (cert_.witness)
        {
            cert_.verdict = Verdict::NotCopositive;
        }
        else
        {
            cert_.stats.remaining += work.size();
            cert_.verdict = cert_.stats.remaining == 0 ? Verdict::Copositive : Verdict::StrictlyIndeterminate;
        }
        cert_.stats.delta = std::sqrt(leaf_sq_.get_d());
        return std::move(cert_);
    }

  private:
    std::vector<Outcome> evaluate(const std::vector<WorkItem>& batch)
    {
        std::vector<Outcome> outcomes(batch.size());
        unsigned workers = std::max(1u, std::min<unsigned>(options_.threads, static_cast<unsigned>(batch.size())));
        if (workers == 1)
        {
            for (std::size_t k = 0; k < batch.size(); ++k)
                outcomes[k] = process(A_, batch[k], options_.max_depth);
            return outcomes;
        }
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t k = w; k < batch.size(); k += workers)
                    outcomes[k] = process(A_, batch[k], options_.max_depth);
            });
        for (auto& t : pool)
            t.join();
        return outcomes;
    }

    void leaf(const Simplex& s)
    {
        if (s.vertices.size() < 2)
            return;
        Rational sq = longest_squared(s);
        if (sq > leaf_sq_)
            leaf_sq_ = std::move(sq);
    }

    const SymTensor& A_;
    CertifyOptions options_;
    Certificate cert_;
    Rational leaf_sq_ = 0;
};

} // namespace

Certificate certify_copositivity(const SymTensor& A, const CertifyOptions& options)
{
    if (options.max_depth < 0 || options.simplex_budget == 0)
        throw std::invalid_argument("certify budgets must be positive");

    if (A.d() == 1)
    {
        // A linear form is copositive exactly when its coefficients are non-negative.
        auto screen = necessary_screen(A);
        Certificate cert;
        cert.method = "screen";
        cert.verdict = screen.pass ? Verdict::Copositive : Verdict::NotCopositive;
        cert.witness = std::move(screen.witness);
        cert.witness_value = std::move(screen.witness_value);
        return cert;
    }
    return Search(A, options).run();
}

} // namespace copos
