#include "copos/grid_cone.hpp"

#include "copos/limits.hpp"

#include <set>
#include <stdexcept>

namespace copos
{

RationalGrid grid_points(int n, int r)
{
    if (n < 1 || r < 0)
        throw std::invalid_argument("grid requires n >= 1 and r >= 0");
    const int m = r + 2;
    check_size(binomial(n + m - 1, m).get_d(), "rational grid");

    RationalGrid grid{n, r, m, false, {}};
    for (const auto& counts : enumerate_exponents(n, m))
    {
        RationalPoint x(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
        {
            x[static_cast<std::size_t>(i)] = Rational(counts[i], m);
            x[static_cast<std::size_t>(i)].canonicalize();
        }
        grid.points.push_back(std::move(x));
    }
    return grid;
}

RationalGrid cumulative_grid(int n, int r)
{
    RationalGrid out{n, r, r + 2, true, {}};
    std::set<RationalPoint> seen;
    for (int k = 0; k <= r; ++k)
        for (auto& p : grid_points(n, k).points)
            if (seen.insert(p).second)
                out.points.push_back(std::move(p));
    return out;
}

GridVerdict member_O_r(const SymTensor& A, int r)
{
    GridVerdict v;
    std::set<RationalPoint> seen;
    for (int k = 0; k <= r; ++k)
    {
        for (auto& p : grid_points(A.n(), k).points)
        {
            if (!seen.insert(p).second)
                continue;
            ++v.points_checked;
            Rational value = eval(A, p);
            if (value < 0)
            {
                v.member = false;
                v.witness = std::move(p);
                v.value = std::move(value);
                return v;
            }
        }
    }
    return v;
}

} // namespace copos
