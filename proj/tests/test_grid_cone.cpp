#include "copos/grid_cone.hpp"
#include "copos/oracle.hpp"
#include "copos/simplex_partition.hpp"

#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace copos;
using copos::testing::copositive_not_psd;
using copos::testing::matrix;
using copos::testing::random_tensor;

TEST_CASE("level grids")
{
    auto g0 = grid_points(3, 0);
    CHECK(g0.denominator == 2);
    CHECK(g0.points.size() == 6);
    CHECK((g0.points.front() == RationalPoint{0, 0, 1}));

    for (int n = 1; n <= 4; ++n)
        for (int r = 0; r <= 5; ++r)
        {
            auto g = grid_points(n, r);
            CHECK(BigInt(g.points.size()) == binomial(n + r + 1, r + 2));
            for (const auto& p : g.points)
            {
                Rational sum = 0;
                for (const auto& c : p)
                {
                    CHECK(c >= 0);
                    sum += c;
                }
                CHECK(sum == 1);
            }
        }
}

TEST_CASE("cumulative grid is the deduplicated union")
{
    auto c = cumulative_grid(2, 2);
    CHECK(c.cumulative);
    // denominators 2, 3, 4 on the segment: 0, 1/4, 1/3, 1/2, 2/3, 3/4, 1
    CHECK(c.points.size() == 7);
    std::set<RationalPoint> unique(c.points.begin(), c.points.end());
    CHECK(unique.size() == c.points.size());
    // first level comes first
    CHECK((c.points[0] == RationalPoint{0, 1}));
    CHECK((c.points[1] == RationalPoint{Rational(1, 2), Rational(1, 2)}));
}

TEST_CASE("O^(r) membership and witness")
{
    auto v = member_O_r(matrix(0, -1, 0), 0);
    CHECK_FALSE(v.member);
    REQUIRE(v.witness);
    CHECK((*v.witness == RationalPoint{Rational(1, 2), Rational(1, 2)}));
    CHECK(*v.value == Rational(-1, 2));

    for (int r = 0; r <= 6; ++r)
        CHECK(member_O_r(copositive_not_psd(), r).member);

    // f(t, 1 - t) = (3t - 1)(5t - 1), negative for 1/5 < t < 1/3
    auto A = matrix(Rational(8, 1), -3, 1);
    // f(1/4, 3/4) = 8/16 - 18/16 + 9/16 < 0
    CHECK(member_O_r(A, 0).member);
    auto w = member_O_r(A, 2);
    CHECK_FALSE(w.member);
    CHECK(*w.value < 0);
}

TEST_CASE("O^(r) is nested and contains copositive tensors")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 60; ++trial)
    {
        auto A = random_tensor(rng, 2 + trial % 2, 2 + trial % 3, -6, 20);
        bool prev = true;
        for (int r = 0; r <= 6; ++r)
        {
            bool now = member_O_r(A, r).member;
            if (!prev)
                CHECK_FALSE(now);
            prev = now;
        }
        if (simplex_grid_min(A, 60).min_value >= 0)
            CHECK(member_O_r(A, 2).member); // denominators 2, 3, 4 divide 60
    }
}

TEST_CASE("more test points give the smaller outer cone")
{
    // grid_partition(n, r + 2) has exactly the level-r grid as vertex set, which
    // lies inside the cumulative grid: O^(r) is contained in O^{P}.
    std::mt19937_64 rng(67);
    for (int n = 2; n <= 3; ++n)
        for (int r = 0; r <= 3; ++r)
        {
            auto P = grid_partition(n, r + 2);
            auto level = grid_points(n, r);
            std::set<RationalPoint> lv(level.points.begin(), level.points.end());
            CHECK(lv == P.vertices());
            auto cum = cumulative_grid(n, r);
            std::set<RationalPoint> cv(cum.points.begin(), cum.points.end());
            CHECK(std::includes(cv.begin(), cv.end(), lv.begin(), lv.end()));
            for (int trial = 0; trial < 15; ++trial)
            {
                auto A = random_tensor(rng, n, 2 + trial % 3, -6, 20);
                if (member_O_r(A, r).member)
                    CHECK(member_O_P(A, P));
            }
        }
}
