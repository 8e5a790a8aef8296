#ifndef COPOS_TENSOR_HPP
#define COPOS_TENSOR_HPP

#include "copos/combinatorics.hpp"
#include "copos/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace copos
{

/// 0-based index tuple. External formats are 1-based; conversion happens in io.
using Index = std::vector<int>;

/// Sorted copy of idx. Throws std::out_of_range if a component is outside [0, n).
Index canonicalize(Index idx, int n);

/// Shared enumeration of the canonical tuples of an (n, d) tensor space.
///
/// Tuples are sorted non-decreasing and listed lexicographically. The table
/// also maps every one of the n^d full index tuples (linearised with the first
/// index fastest) onto the rank of its canonical representative.
class TupleTable
{
  public:
    static std::shared_ptr<const TupleTable> get(int n, int d);

    int n() const { return n_; }
    int d() const { return d_; }
    std::size_t size() const { return tuples_.size(); }
    std::size_t full_size() const { return full_to_canonical_.size(); }

    const std::vector<Index>& tuples() const { return tuples_; }
    const Index& tuple(std::size_t rank) const { return tuples_[rank]; }
    /// d! / prod(counts!) for the tuple at rank.
    const BigInt& multiplicity(std::size_t rank) const { return multiplicity_[rank]; }
    std::size_t canonical_rank_of_full(std::size_t linear) const { return full_to_canonical_[linear]; }

    /// Rank of the canonical representative of idx (any order). Range checked.
    std::size_t rank(std::span<const int> idx) const;

    TupleTable(int n, int d);

  private:
    int n_;
    int d_;
    std::vector<Index> tuples_;
    std::vector<BigInt> multiplicity_;
    std::vector<std::size_t> full_to_canonical_;
};

/// Symmetric tensor of order d and dimension n with exact rational entries.
///
/// Storage is the sparse map of explicitly given canonical entries plus a
/// default for everything else; a dense vector indexed by canonical rank is
/// materialised at construction. Instances are immutable.
class SymTensor
{
  public:
    /// Keys of explicit must be canonical (sorted) and in range.
    SymTensor(int n, int d, Rational default_value = 0, std::map<Index, Rational> explicit_entries = {});

    int n() const { return n_; }
    int d() const { return d_; }

    const Rational& get(std::span<const int> idx) const;
    const Rational& get(std::initializer_list<int> idx) const
    {
        return get(std::span<const int>(idx.begin(), idx.size()));
    }

    const Rational& default_value() const { return default_; }
    const std::map<Index, Rational>& explicit_entries() const { return explicit_; }

    const TupleTable& table() const { return *table_; }
    /// Entry value per canonical rank.
    const std::vector<Rational>& canonical_values() const { return values_; }

    /// Largest absolute entry.
    Rational max_abs_entry() const;

    bool operator==(const SymTensor& other) const;

  private:
    int n_;
    int d_;
    Rational default_;
    std::map<Index, Rational> explicit_;
    std::shared_ptr<const TupleTable> table_;
    std::vector<Rational> values_;
};

/// Mutable staging area for a SymTensor.
class SymTensorBuilder
{
  public:
    SymTensorBuilder(int n, int d, Rational default_value = 0);

    /// Sets the entry for every permutation of idx.
    SymTensorBuilder& set(std::span<const int> idx, Rational v);
    SymTensorBuilder& set(std::initializer_list<int> idx, Rational v)
    {
        return set(std::span<const int>(idx.begin(), idx.size()), std::move(v));
    }

    SymTensor build() const;

  private:
    int n_;
    int d_;
    Rational default_;
    std::map<Index, Rational> entries_;
};

/// f_A(x) = sum over all n^d tuples of a_t x_{t1} ... x_{td}.
Rational eval(const SymTensor& A, std::span<const Rational> x);
double eval(const SymTensor& A, std::span<const double> x);

/// <A, B> over all n^d tuples.
Rational inner_product(const SymTensor& A, const SymTensor& B);

/// x tensored with itself d times.
SymTensor rank_one(std::span<const Rational> x, int d);

/// Symmetrisation of u^{(a)} (x) v^{(d-a)}; requires 1 <= a <= d-1.
SymTensor mixed_rank_one(std::span<const Rational> u, std::span<const Rational> v, int a, int d);

/// <A, f_1 (x) f_2 (x) ... (x) f_d> for d factor vectors.
Rational multilinear(const SymTensor& A, std::span<const RationalPoint* const> factors);

/// <A, u^{(a)} (x) v^{(d-a)}> without building the mixed tensor.
Rational mixed_form(const SymTensor& A, const RationalPoint& u, const RationalPoint& v, int a);

std::vector<Rational> diag_vector(const SymTensor& A);
SymTensor diag_tensor(std::span<const Rational> theta, int d);

struct ScreenResult
{
    bool pass = true;
    std::string reason;
    /// For a failure: a point of the standard simplex where f_A < 0.
    std::optional<RationalPoint> witness;
    std::optional<Rational> witness_value;
};

/// Necessary conditions for copositivity on diagonal and first-order entries.
///
/// Fails when some a_{(i)^d} < 0, or when a_{(i)^d} = 0 and a_{(i)^{d-1} j} < 0
/// for some j != i. Every failure carries an exact witness.
ScreenResult necessary_screen(const SymTensor& A);

} // namespace copos

#endif
