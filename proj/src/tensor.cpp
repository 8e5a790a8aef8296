#include "copos/tensor.hpp"

#include "copos/limits.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace copos
{

Index canonicalize(Index idx, int n)
{
    for (int i : idx)
        if (i < 0 || i >= n)
            throw std::out_of_range("index component " + std::to_string(i) + " outside [0, " +
                                    std::to_string(n) + ")");
    std::sort(idx.begin(), idx.end());
    return idx;
}

namespace
{

void sorted_tuples(int n, int d, int lo, Index& cur, std::vector<Index>& out)
{
    if (static_cast<int>(cur.size()) == d)
    {
        out.push_back(cur);
        return;
    }
    for (int i = lo; i < n; ++i)
    {
        cur.push_back(i);
        sorted_tuples(n, d, i, cur, out);
        cur.pop_back();
    }
}

} // namespace

TupleTable::TupleTable(int n, int d) : n_(n), d_(d)
{
    if (n < 1 || d < 1)
        throw std::invalid_argument("tensor dimension and order must be positive");
    check_size(std::pow(static_cast<double>(n), d), "dense tensor size n^d");

    Index cur;
    sorted_tuples(n, d, 0, cur, tuples_);
    multiplicity_.reserve(tuples_.size());
    std::map<Index, std::size_t> rank_of;
    for (std::size_t k = 0; k < tuples_.size(); ++k)
    {
        multiplicity_.push_back(multinomial(exponent_of(tuples_[k], n)));
        rank_of.emplace(tuples_[k], k);
    }

    std::size_t full = 1;
    for (int k = 0; k < d; ++k)
        full *= static_cast<std::size_t>(n);
    full_to_canonical_.resize(full);
    Index digits(static_cast<std::size_t>(d));
    for (std::size_t lin = 0; lin < full; ++lin)
    {
        std::size_t rest = lin;
        for (int k = 0; k < d; ++k)
        {
            digits[static_cast<std::size_t>(k)] = static_cast<int>(rest % static_cast<std::size_t>(n));
            rest /= static_cast<std::size_t>(n);
        }
        Index sorted = digits;
        std::sort(sorted.begin(), sorted.end());
        full_to_canonical_[lin] = rank_of.at(sorted);
    }
}

std::shared_ptr<const TupleTable> TupleTable::get(int n, int d)
{
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const TupleTable>> cache;
    std::lock_guard lock(mutex);
    auto key = std::make_pair(n, d);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    auto table = std::make_shared<const TupleTable>(n, d);
    cache.emplace(key, table);
    return table;
}

std::size_t TupleTable::rank(std::span<const int> idx) const
{
    if (static_cast<int>(idx.size()) != d_)
        throw std::invalid_argument("index tuple has length " + std::to_string(idx.size()) +
                                    ", expected " + std::to_string(d_));
    std::size_t lin = 0;
    std::size_t stride = 1;
    for (int i : idx)
    {
        if (i < 0 || i >= n_)
            throw std::out_of_range("index component " + std::to_string(i) + " outside [0, " +
                                    std::to_string(n_) + ")");
        lin += static_cast<std::size_t>(i) * stride;
        stride *= static_cast<std::size_t>(n_);
    }
    return full_to_canonical_[lin];
}

SymTensor::SymTensor(int n, int d, Rational default_value, std::map<Index, Rational> explicit_entries)
    : n_(n), d_(d), default_(std::move(default_value)), explicit_(std::move(explicit_entries)),
      table_(TupleTable::get(n, d))
{
    values_.assign(table_->size(), default_);
    for (const auto& [idx, v] : explicit_)
    {
        if (!std::is_sorted(idx.begin(), idx.end()))
            throw std::invalid_argument("stored index tuple is not canonical (sorted)");
        values_[table_->rank(idx)] = v;
    }
}

const Rational& SymTensor::get(std::span<const int> idx) const
{
    return values_[table_->rank(idx)];
}

Rational SymTensor::max_abs_entry() const
{
    Rational m = 0;
    for (const auto& v : values_)
        if (abs(v) > m)
            m = abs(v);
    return m;
}

bool SymTensor::operator==(const SymTensor& other) const
{
    return n_ == other.n_ && d_ == other.d_ && values_ == other.values_;
}

SymTensorBuilder::SymTensorBuilder(int n, int d, Rational default_value)
    : n_(n), d_(d), default_(std::move(default_value))
{
    if (n < 1 || d < 1)
        throw std::invalid_argument("tensor dimension and order must be positive");
}

SymTensorBuilder& SymTensorBuilder::set(std::span<const int> idx, Rational v)
{
    if (static_cast<int>(idx.size()) != d_)
        throw std::invalid_argument("index tuple has wrong length");
    entries_[canonicalize(Index(idx.begin(), idx.end()), n_)] = std::move(v);
    return *this;
}

SymTensor SymTensorBuilder::build() const
{
    return SymTensor(n_, d_, default_, entries_);
}

namespace
{

void require_length(const SymTensor& A, std::size_t len)
{
    if (static_cast<int>(len) != A.n())
        throw std::invalid_argument("vector length " + std::to_string(len) + " does not match dimension " +
                                    std::to_string(A.n()));
}

template <class T>
T eval_impl(const SymTensor& A, std::span<const T> x)
{
    require_length(A, x.size());
    const auto& table = A.table();
    const auto& vals = A.canonical_values();
    T total = 0;
    for (std::size_t k = 0; k < table.size(); ++k)
    {
        if (vals[k] == 0)
            continue;
        T term = 1;
        for (int i : table.tuple(k))
            term *= x[static_cast<std::size_t>(i)];
        if (term == 0)
            continue;
        if constexpr (std::is_same_v<T, double>)
            total += table.multiplicity(k).get_d() * vals[k].get_d() * term;
        else
            total += Rational(table.multiplicity(k)) * vals[k] * term;
    }
    return total;
}

} // namespace

Rational eval(const SymTensor& A, std::span<const Rational> x)
{
    return eval_impl<Rational>(A, x);
}

double eval(const SymTensor& A, std::span<const double> x)
{
    return eval_impl<double>(A, x);
}

Rational inner_product(const SymTensor& A, const SymTensor& B)
{
    if (A.n() != B.n() || A.d() != B.d())
        throw std::invalid_argument("inner product of tensors with different shapes");
    const auto& table = A.table();
    const auto& a = A.canonical_values();
    const auto& b = B.canonical_values();
    Rational total = 0;
    for (std::size_t k = 0; k < table.size(); ++k)
        if (a[k] != 0 && b[k] != 0)
            total += Rational(table.multiplicity(k)) * a[k] * b[k];
    return total;
}

SymTensor rank_one(std::span<const Rational> x, int d)
{
    int n = static_cast<int>(x.size());
    auto table = TupleTable::get(n, d);
    std::map<Index, Rational> entries;
    for (const auto& t : table->tuples())
    {
        Rational p = 1;
        for (int i : t)
            p *= x[static_cast<std::size_t>(i)];
        if (p != 0)
            entries.emplace(t, p);
    }
    return SymTensor(n, d, 0, std::move(entries));
}

SymTensor mixed_rank_one(std::span<const Rational> u, std::span<const Rational> v, int a, int d)
{
    if (a < 1 || a > d - 1)
        throw std::invalid_argument("split must satisfy 1 <= a <= d-1");
    if (u.size() != v.size())
        throw std::invalid_argument("mixed_rank_one factors differ in length");
    int n = static_cast<int>(u.size());
    auto table = TupleTable::get(n, d);
    Rational norm(BigInt(1), binomial(d, a));
    std::map<Index, Rational> entries;
    for (const auto& t : table->tuples())
    {
        // Average over which a positions carry u.
        Rational sum = 0;
        for (unsigned mask = 0; mask < (1u << d); ++mask)
        {
            if (std::popcount(mask) != a)
                continue;
            Rational p = 1;
            for (int k = 0; k < d; ++k)
            {
                auto i = static_cast<std::size_t>(t[static_cast<std::size_t>(k)]);
                p *= (mask >> k & 1u) ? u[i] : v[i];
            }
            sum += p;
        }
        if (sum != 0)
            entries.emplace(t, sum * norm);
    }
    return SymTensor(n, d, 0, std::move(entries));
}

Rational multilinear(const SymTensor& A, std::span<const RationalPoint* const> factors)
{
    const int n = A.n();
    const int d = A.d();
    if (static_cast<int>(factors.size()) != d)
        throw std::invalid_argument("multilinear form needs exactly d factors");
    for (const auto* f : factors)
        require_length(A, f->size());

    const auto& table = A.table();
    const auto& vals = A.canonical_values();
    const auto un = static_cast<std::size_t>(n);

    // Contract the first index against factors[0] straight from canonical storage.
    std::size_t rest = table.full_size() / un;
    std::vector<Rational> cur(rest);
    const RationalPoint& f0 = *factors[0];
    for (std::size_t j = 0; j < rest; ++j)
        for (std::size_t i = 0; i < un; ++i)
            if (f0[i] != 0)
            {
                const Rational& a = vals[table.canonical_rank_of_full(i + un * j)];
                if (a != 0)
                    cur[j] += a * f0[i];
            }

    for (int k = 1; k < d; ++k)
    {
        const RationalPoint& f = *factors[static_cast<std::size_t>(k)];
        rest /= un;
        std::vector<Rational> next(rest);
        for (std::size_t j = 0; j < rest; ++j)
            for (std::size_t i = 0; i < un; ++i)
                if (f[i] != 0 && cur[i + un * j] != 0)
                    next[j] += cur[i + un * j] * f[i];
        cur = std::move(next);
    }
    return cur[0];
}

Rational mixed_form(const SymTensor& A, const RationalPoint& u, const RationalPoint& v, int a)
{
    std::vector<const RationalPoint*> factors(static_cast<std::size_t>(A.d()), &v);
    for (int k = 0; k < a; ++k)
        factors[static_cast<std::size_t>(k)] = &u;
    return multilinear(A, factors);
}

std::vector<Rational> diag_vector(const SymTensor& A)
{
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(A.n()));
    for (int i = 0; i < A.n(); ++i)
    {
        Index t(static_cast<std::size_t>(A.d()), i);
        out.push_back(A.get(t));
    }
    return out;
}

SymTensor diag_tensor(std::span<const Rational> theta, int d)
{
    int n = static_cast<int>(theta.size());
    std::map<Index, Rational> entries;
    for (int i = 0; i < n; ++i)
        if (theta[static_cast<std::size_t>(i)] != 0)
            entries.emplace(Index(static_cast<std::size_t>(d), i), theta[static_cast<std::size_t>(i)]);
    return SymTensor(n, d, 0, std::move(entries));
}

ScreenResult necessary_screen(const SymTensor& A)
{
    const int n = A.n();
    const int d = A.d();
    ScreenResult result;
    const auto diag = diag_vector(A);

    for (int i = 0; i < n; ++i)
    {
        if (diag[static_cast<std::size_t>(i)] < 0)
        {
            result.pass = false;
            result.reason = "negative diagonal entry at index " + std::to_string(i + 1);
            RationalPoint e(static_cast<std::size_t>(n), Rational(0));
            e[static_cast<std::size_t>(i)] = 1;
            result.witness_value = eval(A, e);
            result.witness = std::move(e);
            return result;
        }
    }
    if (d == 1)
        return result;

    for (int i = 0; i < n; ++i)
    {
        if (diag[static_cast<std::size_t>(i)] != 0)
            continue;
        for (int j = 0; j < n; ++j)
        {
            if (j == i)
                continue;
            Index t(static_cast<std::size_t>(d - 1), i);
            t.push_back(j);
            if (A.get(t) >= 0)
                continue;
            // f(e_i + eps e_j) = d eps a_{i..ij} + O(eps^2), so halving eps must
            // eventually give a negative value.
            Rational eps = 1;
            for (int iter = 0; iter < 4096; ++iter, eps /= 2)
            {
                RationalPoint x(static_cast<std::size_t>(n), Rational(0));
                x[static_cast<std::size_t>(i)] = Rational(1) / (1 + eps);
                x[static_cast<std::size_t>(j)] = eps / (1 + eps);
                Rational value = eval(A, x);
                if (value < 0)
                {
                    result.pass = false;
                    result.reason = "zero diagonal entry at index " + std::to_string(i + 1) +
                                    " with negative first-order entry towards index " + std::to_string(j + 1);
                    result.witness = std::move(x);
                    result.witness_value = std::move(value);
                    return result;
                }
            }
            throw std::logic_error("necessary_screen: failed to construct witness");
        }
    }
    return result;
}

} // namespace copos
