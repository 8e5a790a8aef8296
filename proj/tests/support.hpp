#ifndef COPOS_TESTS_SUPPORT_HPP
#define COPOS_TESTS_SUPPORT_HPP

#include "copos/tensor.hpp"

#include <map>
#include <random>

namespace copos::testing
{

// Entries k/20 with k uniform in [lo, hi].
inline SymTensor random_tensor(std::mt19937_64& rng, int n, int d, int lo = -20, int hi = 20)
{
    std::uniform_int_distribution<int> pick(lo, hi);
    std::map<Index, Rational> entries;
    for (const auto& t : TupleTable::get(n, d)->tuples())
    {
        Rational q(pick(rng), 20);
        q.canonicalize();
        entries[t] = q;
    }
    return SymTensor(n, d, 0, std::move(entries));
}

// n = 3, d = 4: zero at (1,1,1,1), one at (2,2,2,2) and (3,3,3,3), five elsewhere.
inline SymTensor copositive_not_psd()
{
    return SymTensorBuilder(3, 4, 5).set({0, 0, 0, 0}, 0).set({1, 1, 1, 1}, 1).set({2, 2, 2, 2}, 1).build();
}

inline SymTensor matrix(const Rational& a11, const Rational& a12, const Rational& a22)
{
    return SymTensorBuilder(2, 2).set({0, 0}, a11).set({0, 1}, a12).set({1, 1}, a22).build();
}

// Degree-6 form in three variables with cube cross terms; scale multiplies the
// three off-diagonal entries (1/10 gives cross coefficients +-2 in f_A).
inline SymTensor sextic_cross(const Rational& scale)
{
    return SymTensorBuilder(3, 6)
        .set({0, 0, 0, 0, 0, 0}, 1)
        .set({1, 1, 1, 1, 1, 1}, 1)
        .set({2, 2, 2, 2, 2, 2}, 1)
        .set({0, 0, 0, 1, 1, 1}, scale)
        .set({0, 0, 0, 2, 2, 2}, scale)
        .set({1, 1, 1, 2, 2, 2}, -scale)
        .build();
}

} // namespace copos::testing

#endif
