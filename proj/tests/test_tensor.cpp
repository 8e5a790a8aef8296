#include "copos/oracle.hpp"
#include "copos/simplex_partition.hpp"
#include "copos/tensor.hpp"

#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace copos;
using copos::testing::copositive_not_psd;
using copos::testing::matrix;
using copos::testing::random_tensor;

TEST_CASE("canonical tuple table")
{
    auto t = TupleTable::get(3, 2);
    REQUIRE(t->size() == 6);
    CHECK((t->tuple(0) == Index{0, 0}));
    CHECK((t->tuple(1) == Index{0, 1}));
    CHECK((t->tuple(5) == Index{2, 2}));
    CHECK(t->multiplicity(1) == 2);
    CHECK(t->multiplicity(0) == 1);
    CHECK(t->full_size() == 9);
    std::vector<int> idx{2, 0};
    CHECK(t->rank(idx) == 2);
    CHECK(TupleTable::get(3, 2) == t);

    // multiplicities add up to n^d
    for (int n = 1; n <= 4; ++n)
        for (int d = 1; d <= 5; ++d)
        {
            auto tt = TupleTable::get(n, d);
            BigInt sum = 0;
            for (std::size_t k = 0; k < tt->size(); ++k)
                sum += tt->multiplicity(k);
            CHECK(BigInt(tt->full_size()) == sum);
        }
}

TEST_CASE("canonicalize sorts and range checks")
{
    CHECK((canonicalize({2, 0, 1}, 3) == Index{0, 1, 2}));
    CHECK_THROWS_AS(canonicalize({3, 0}, 3), std::out_of_range);
    CHECK_THROWS_AS(canonicalize({-1, 0}, 3), std::out_of_range);
}

TEST_CASE("get is permutation invariant")
{
    auto A = SymTensorBuilder(3, 3, Rational(1, 2)).set({2, 0, 1}, -3).set({1, 1, 0}, 7).build();
    CHECK(A.get({0, 1, 2}) == -3);
    CHECK(A.get({2, 1, 0}) == -3);
    CHECK(A.get({1, 0, 2}) == -3);
    CHECK(A.get({0, 1, 1}) == 7);
    CHECK(A.get({1, 0, 1}) == 7);
    CHECK(A.get({2, 2, 2}) == Rational(1, 2));
    CHECK(A.explicit_entries().size() == 2);
    CHECK_THROWS(A.get({0, 1}));
}

TEST_CASE("explicit entries must be canonical")
{
    std::map<Index, Rational> bad{{Index{1, 0}, Rational(1)}};
    CHECK_THROWS(SymTensor(2, 2, 0, bad));
}

TEST_CASE("equality compares values, not storage")
{
    auto A = SymTensorBuilder(2, 2, 1).set({0, 1}, 0).build();
    auto B = SymTensorBuilder(2, 2, 0).set({0, 0}, 1).set({1, 1}, 1).build();
    CHECK(A == B);
    CHECK_FALSE(A == matrix(1, 1, 1));
}

TEST_CASE("evaluation of the copositive non-PSD example")
{
    auto A = copositive_not_psd();
    // 5 (x1 + x3)^4 - 5 x1^4 - 4 x3^4 at (-2, 0, 1)
    RationalPoint x{-2, 0, 1};
    CHECK(eval(A, x) == -79);
    CHECK(naive_eval(A, x) == -79);
    RationalPoint e1{1, 0, 0};
    CHECK(eval(A, e1) == 0);
    RationalPoint c{Rational(1, 3), Rational(1, 3), Rational(1, 3)};
    CHECK(eval(A, c) == naive_eval(A, c));
}

TEST_CASE("eval agrees with the literal n^d sum")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial)
    {
        int n = 1 + trial % 4;
        int d = 1 + trial % 5;
        auto A = random_tensor(rng, n, d);
        RationalPoint x;
        std::vector<double> xd;
        for (int i = 0; i < n; ++i)
        {
            x.push_back(Rational(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4)));
            x.back().canonicalize();
            xd.push_back(x.back().get_d());
        }
        CHECK(eval(A, x) == naive_eval(A, x));
        CHECK(eval(A, xd) == doctest::Approx(naive_eval(A, xd)).epsilon(1e-9));
    }
}

TEST_CASE("rank-one and mixed tensors")
{
    RationalPoint u{1, 2};
    RationalPoint v{3, -1};
    auto A = matrix(2, Rational(-1, 2), 1);
    auto T = rank_one(u, 2);
    CHECK(T.get({0, 1}) == 2);
    CHECK(inner_product(A, T) == eval(A, u));

    // <A, sym(u (x) v)> = u^T A v for d = 2
    auto M = mixed_rank_one(u, v, 1, 2);
    CHECK(M.get({0, 1}) == Rational(5, 2));
    CHECK(inner_product(A, M) == mixed_form(A, u, v, 1));
    // 2*1*3 + (-1/2)(1*(-1) + 2*3) + 1*2*(-1)
    CHECK(mixed_form(A, u, v, 1) == Rational(3, 2));

    std::mt19937_64 rng(11);
    for (int d = 2; d <= 4; ++d)
    {
        auto B = random_tensor(rng, 3, d);
        RationalPoint p{1, Rational(1, 2), 0};
        RationalPoint q{0, Rational(1, 3), Rational(2, 3)};
        for (int a = 1; a < d; ++a)
        {
            CHECK(mixed_form(B, p, q, a) == inner_product(B, mixed_rank_one(p, q, a, d)));
            std::vector<const RationalPoint*> f;
            for (int k = 0; k < a; ++k)
                f.push_back(&p);
            for (int k = a; k < d; ++k)
                f.push_back(&q);
            CHECK(multilinear(B, f) == mixed_form(B, p, q, a));
        }
        CHECK(inner_product(B, rank_one(p, d)) == eval(B, p));
    }
    CHECK_THROWS(mixed_rank_one(u, v, 0, 2));
}

TEST_CASE("diagonal helpers")
{
    auto A = copositive_not_psd();
    CHECK((diag_vector(A) == std::vector<Rational>{0, 1, 1}));
    RationalPoint th{1, 2};
    auto D = diag_tensor(th, 3);
    CHECK(D.get({1, 1, 1}) == 2);
    CHECK(D.get({0, 1, 1}) == 0);
}

TEST_CASE("necessary screen")
{
    CHECK(necessary_screen(copositive_not_psd()).pass);
    CHECK(necessary_screen(matrix(1, -1, 1)).pass);

    auto neg = necessary_screen(matrix(1, 0, -1));
    CHECK_FALSE(neg.pass);
    REQUIRE(neg.witness);
    CHECK((*neg.witness == RationalPoint{0, 1}));
    CHECK(*neg.witness_value == -1);

    auto zero = necessary_screen(matrix(0, -1, 0));
    CHECK_FALSE(zero.pass);
    REQUIRE(zero.witness);
    CHECK((*zero.witness == RationalPoint{Rational(1, 2), Rational(1, 2)}));
    CHECK(*zero.witness_value == Rational(-1, 2));

    // tiny first-order entry against large positive rest still needs a small step
    auto B = SymTensorBuilder(2, 3, 100).set({0, 0, 0}, 0).set({0, 0, 1}, Rational(-1, 1000)).build();
    auto s = necessary_screen(B);
    CHECK_FALSE(s.pass);
    REQUIRE(s.witness);
    CHECK(eval(B, *s.witness) < 0);
    Rational sum = 0;
    for (const auto& c : *s.witness)
        sum += c;
    CHECK(sum == 1);
}

TEST_CASE("max_abs_entry")
{
    CHECK(matrix(1, Rational(-7, 2), 3).max_abs_entry() == Rational(7, 2));
}

TEST_CASE("screen never rejects a tensor with non-negative grid minimum")
{
    std::mt19937_64 rng(71);
    int checked = 0;
    for (int trial = 0; trial < 150; ++trial)
    {
        int n = 2 + trial % 2;
        int d = 2 + trial % 3;
        auto A = random_tensor(rng, n, d, -4, 20);
        // make some diagonal entries vanish so the first-order rule is exercised
        SymTensorBuilder b(n, d);
        for (std::size_t k = 0; k < A.table().size(); ++k)
            b.set(A.table().tuple(k), A.canonical_values()[k]);
        Index diag(static_cast<std::size_t>(d), 0);
        b.set(diag, 0);
        auto B = b.build();
        if (simplex_grid_min(B, 50).min_value < 0)
            continue;
        ++checked;
        CHECK(necessary_screen(B).pass);
    }
    CHECK(checked > 20);
}

TEST_CASE("negative entries beyond first order do not fail the screen")
{
    // a_111 = 0 and a_123 < 0, but 3 x1^2 (x2 + x3) dominates 6 a_123 x1 x2 x3 near e1
    auto A = SymTensorBuilder(3, 3, 1).set({0, 0, 0}, 0).set({0, 1, 2}, -1).build();
    CHECK(necessary_screen(A).pass);
    CHECK(certify_copositivity(A).verdict == Verdict::Copositive);
}
