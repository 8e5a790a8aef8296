#ifndef COPOS_GRID_CONE_HPP
#define COPOS_GRID_CONE_HPP

#include "copos/tensor.hpp"

#include <optional>
#include <vector>

namespace copos
{

/// Rational points of the standard simplex.
///
/// A single level r holds all x with (r+2) x in N_0^n. The cumulative grid at
/// level r is the union of levels 0..r, listed level by level with duplicates
/// dropped; points keep their first occurrence.
struct RationalGrid
{
    int n = 0;
    int r = 0;
    /// m(r) = r + 2, the common denominator of the finest level.
    int denominator = 0;
    bool cumulative = false;
    std::vector<RationalPoint> points;
};

/// Level-r grid, lexicographic in the numerator vectors. Size binomial(n+r+1, r+2).
RationalGrid grid_points(int n, int r);

/// delta_n^(r): union of grid_points(n, k) for k = 0..r.
RationalGrid cumulative_grid(int n, int r);

struct GridVerdict
{
    bool member = true;
    std::optional<RationalPoint> witness;
    std::optional<Rational> value;
    std::size_t points_checked = 0;
};

/// Membership in O^(r): f_A >= 0 at every point of delta_n^(r). The witness is
/// the first negative point in enumeration order.
GridVerdict member_O_r(const SymTensor& A, int r);

} // namespace copos

#endif
