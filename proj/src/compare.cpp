#include "copos/compare.hpp"

#include "copos/grid_cone.hpp"
#include "copos/polycone.hpp"

#include <iomanip>
#include <sstream>

namespace copos
{

namespace
{

const char* member(bool yes)
{
    return yes ? "Member" : "NotMember";
}

} // namespace

CompareReport compare_hierarchies(const SymTensor& A, int max_level, const SolveOptions& sos,
                                  const CertifyOptions& certify)
{
    CompareReport report;
    report.n = A.n();
    report.d = A.d();
    report.screen = necessary_screen(A).pass ? "Pass" : "Fail";
    report.certify = to_string(certify_copositivity(A, certify).verdict);

    for (int r = 0; r <= max_level; ++r)
    {
        CompareRow row;
        row.level = r;
        row.coef = member(member_C_r(A, r).member);
        row.sos = member_K_r(A, r, sos).status == SosStatus::Certified ? "Certified" : "Unknown";
        Partition P = grid_partition(A.n(), r + A.d());
        row.inner_edges = member(member_I_P(A, P));
        row.inner_full = member(member_I_P_full(A, P));
        row.outer_partition = member(member_O_P(A, P));
        row.grid = member(member_O_r(A, r).member);
        report.rows.push_back(std::move(row));
    }
    return report;
}

nlohmann::json compare_to_json(const CompareReport& report)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows)
        rows.push_back({{"level", r.level},
                        {"C_r", r.coef},
                        {"K_r", r.sos},
                        {"I_P", r.inner_edges},
                        {"I_P_full", r.inner_full},
                        {"O_P", r.outer_partition},
                        {"O_r", r.grid}});
    return {{"n", report.n},
            {"d", report.d},
            {"screen", report.screen},
            {"certify", report.certify},
            {"levels", std::move(rows)}};
}

std::string compare_to_table(const CompareReport& report)
{
    std::ostringstream out;
    out << "n = " << report.n << ", d = " << report.d << "\n";
    out << "screen:  " << report.screen << "\n";
    out << "certify: " << report.certify << "\n\n";
    const int w = 12;
    out << std::left << std::setw(6) << "r" << std::setw(w) << "C^(r)" << std::setw(w) << "K^(r)" << std::setw(w)
        << "I^P" << std::setw(w) << "I^P(full)" << std::setw(w) << "O^P" << std::setw(w) << "O^(r)" << "\n";
    for (const auto& r : report.rows)
        out << std::left << std::setw(6) << r.level << std::setw(w) << r.coef << std::setw(w) << r.sos
            << std::setw(w) << r.inner_edges << std::setw(w) << r.inner_full << std::setw(w) << r.outer_partition
            << std::setw(w) << r.grid << "\n";
    return out.str();
}

} // namespace copos
