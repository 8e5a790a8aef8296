#ifndef COPOS_COMPARE_HPP
#define COPOS_COMPARE_HPP

#include "copos/simplex_partition.hpp"
#include "copos/soscone.hpp"
#include "copos/tensor.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace copos
{

/// Verdicts of every hierarchy at one level r. Partition cones use the grid
/// partition with denominator r + d.
struct CompareRow
{
    int level = 0;
    std::string coef;           ///< C^(r)
    std::string sos;            ///< K^(r)
    std::string inner_edges;    ///< I^{P_r}, vertex and edge conditions
    std::string inner_full;     ///< every simplex of P_r passes the full vertex-tuple test
    std::string outer_partition; ///< O^{P_r}
    std::string grid;           ///< O^(r)
};

struct CompareReport
{
    int n = 0;
    int d = 0;
    std::string screen;
    std::string certify;
    std::vector<CompareRow> rows;
};

CompareReport compare_hierarchies(const SymTensor& A, int max_level, const SolveOptions& sos = {},
                                  const CertifyOptions& certify = {});

nlohmann::json compare_to_json(const CompareReport& report);
std::string compare_to_table(const CompareReport& report);

} // namespace copos

#endif
