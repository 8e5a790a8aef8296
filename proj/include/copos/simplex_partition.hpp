#ifndef COPOS_SIMPLEX_PARTITION_HPP
#define COPOS_SIMPLEX_PARTITION_HPP

#include "copos/tensor.hpp"

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace copos
{

/// Sub-simplex of the standard simplex with exact rational vertices.
struct Simplex
{
    std::vector<RationalPoint> vertices;
    /// Number of bisections that produced this simplex.
    int depth = 0;

    int dim() const { return vertices.empty() ? 0 : static_cast<int>(vertices.front().size()); }
};

/// conv{e_1, ..., e_n}.
Simplex standard_simplex(int n);

Rational squared_distance(const RationalPoint& u, const RationalPoint& v);

/// Vertex positions (i < j) of the longest edge; the lexicographically first
/// pair wins ties.
std::pair<int, int> longest_edge(const Simplex& s);

/// Splits s at the midpoint u of its longest edge {v_i, v_j}. The first child
/// replaces v_i with u, the second replaces v_j. Throws on a degenerate simplex.
std::pair<Simplex, Simplex> bisect_longest_edge(const Simplex& s);

using Edge = std::pair<RationalPoint, RationalPoint>;

/// Simplicial partition of the standard simplex with its vertex set V_P and
/// edge set E_P (unordered pairs stored with first < second).
class Partition
{
  public:
    explicit Partition(std::vector<Simplex> simplices);

    /// {standard simplex}.
    static Partition trivial(int n);

    const std::vector<Simplex>& simplices() const { return simplices_; }
    const std::set<RationalPoint>& vertices() const { return vertices_; }
    const std::set<Edge>& edges() const { return edges_; }

    /// Replaces simplex `index` with its two bisection children.
    Partition refine(std::size_t index) const;
    /// Bisects every simplex once.
    Partition refine_all() const;

  private:
    std::vector<Simplex> simplices_;
    std::set<RationalPoint> vertices_;
    std::set<Edge> edges_;
};

/// Uniform triangulation of the standard simplex whose vertices are the grid
/// points {x : m x in N_0^n}. Built from the Kuhn (Freudenthal) triangulation in
/// cumulative coordinates; contains m^(n-1) simplices.
Partition grid_partition(int n, int m);

/// Longest edge over E_P, squared and exact.
Rational squared_diameter(const Partition& P);
/// delta(P). Reporting only.
double diameter(const Partition& P);

/// <A, v_{i1} (x) ... (x) v_{id}> >= 0 for every multiset of vertex positions.
bool inner_test_full(const SymTensor& A, const Simplex& s);

/// I^P: f_A(v) >= 0 on V_P and <A, u^(a) (x) v^(d-a)> >= 0 for every edge {u, v}
/// of E_P and every split 1 <= a <= d-1.
bool member_I_P(const SymTensor& A, const Partition& P);

/// inner_test_full on every simplex of P.
bool member_I_P_full(const SymTensor& A, const Partition& P);

/// O^P: f_A(v) >= 0 for all v in V_P.
bool member_O_P(const SymTensor& A, const Partition& P);

enum class Verdict
{
    Copositive,
    NotCopositive,
    StrictlyIndeterminate,
};

std::string to_string(Verdict v);

enum class WorkOrder
{
    Fifo,
    Lifo,
};

struct CertifyOptions
{
    int max_depth = 32;
    std::size_t simplex_budget = 1'000'000;
    WorkOrder order = WorkOrder::Fifo;
    /// Workers for FIFO mode. 1 is the single-threaded reference.
    unsigned threads = 1;
};

struct PartitionStats
{
    int max_depth_reached = 0;
    std::size_t simplices_processed = 0;
    std::size_t pruned = 0;
    /// Simplices left undecided (depth cap or budget).
    std::size_t remaining = 0;
    /// Longest edge among the leaves of the final partition.
    double delta = 0.0;
};

struct Certificate
{
    Verdict verdict = Verdict::StrictlyIndeterminate;
    std::optional<RationalPoint> witness;
    std::optional<Rational> witness_value;
    PartitionStats stats;
    std::string method = "partition";
};

/// Simplicial branch and bound on the standard simplex.
///
/// Every processed simplex first has its new vertices evaluated; a negative
/// value ends the search with that vertex as witness. A simplex passing
/// inner_test_full is pruned; otherwise it is bisected along its longest edge
/// until max_depth. An exhausted work list proves copositivity.
Certificate certify_copositivity(const SymTensor& A, const CertifyOptions& options = {});

} // namespace copos

#endif
